"""The n = 3 bigon catalogue: type D4 combinatorics.

Twenty cluster variables live in the bigon algebra: eighteen stated corner
arcs b_ij / b~ij (b~ = orientation reversed) of which four are frozen
(b13, b~13, b31, b~31), plus the two normalized webs alpha and alpha~.
Each exchangeable variable corresponds to a tagged arc of the once
punctured quadrilateral; clusters correspond to tagged triangulations and
to maximal compatible systems of labeled arcs.

Compatibility of labeled arcs follows the sign conditions on endpoint
labels; geometric isotopy never enters.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product
from typing import Iterable, Mapping

from .polygon import build_extended
from .qseed import QuantumSeed, enumerate_exchange_graph
from .qtorus import TorusElement


@dataclass(frozen=True, order=True)
class LabeledArc:
    """Oriented arc from left point `left` to right point `right`;
    orientation 'lr' is left-to-right (a b arc), 'rl' reversed (b~)."""
    left: int
    right: int
    orientation: str

    def __post_init__(self):
        if self.left not in (1, 2, 3) or self.right not in (1, 2, 3):
            raise ValueError("endpoint labels must be 1, 2 or 3")
        if self.orientation not in ("lr", "rl"):
            raise ValueError("orientation must be 'lr' or 'rl'")

    def __str__(self):
        tilde = "" if self.orientation == "lr" else "~"
        return f"b{tilde}{self.left}{self.right}"


def all_labeled_arcs() -> list[LabeledArc]:
    return [LabeledArc(l, r, o)
            for l in (1, 2, 3) for r in (1, 2, 3) for o in ("lr", "rl")]


def arc_compatible(c1: LabeledArc, c2: LabeledArc, strong: bool = False) -> bool:
    """Endpoint-sign compatibility of two labeled arcs.

    Disjoint (product < 0) pairs are compatible; boundary-touching pairs
    (product = 0) are compatible unless they meet at a point labeled 2
    with opposite orientations; interior crossings (product > 0) need
    opposite orientations, and in the strong variant additionally a label
    2 endpoint on one of the arcs.
    """
    d = (c1.left - c2.left) * (c1.right - c2.right)
    if d < 0:
        return True
    if d == 0:
        if c1.orientation != c2.orientation:
            if c1.left == c2.left and c1.left == 2:
                return False
            if c1.right == c2.right and c1.right == 2:
                return False
        return True
    if c1.orientation == c2.orientation:
        return False
    if strong:
        return 2 in (c1.left, c1.right, c2.left, c2.right)
    return True


FROZEN_IDS = ("b13", "b~13", "b31", "b~31")
ALPHA = "alpha"
ALPHA_REV = "alpha~"


def arc_id(arc: LabeledArc) -> str:
    return str(arc)


def id_arc(var_id: str) -> LabeledArc:
    body = var_id[1:]
    if body.startswith("~"):
        return LabeledArc(int(body[1]), int(body[2]), "rl")
    return LabeledArc(int(body[0]), int(body[1]), "lr")


def all_variable_ids() -> list[str]:
    return [arc_id(a) for a in all_labeled_arcs()] + [ALPHA, ALPHA_REV]


def exchangeable_variable_ids() -> list[str]:
    return [v for v in all_variable_ids() if v not in FROZEN_IDS]


def corner_set(var_id: str) -> list[LabeledArc]:
    """C(A): the labeled arcs standing in for a variable."""
    if var_id == ALPHA:
        return [id_arc("b~33"), id_arc("b11")]
    if var_id == ALPHA_REV:
        return [id_arc("b33"), id_arc("b~11")]
    return [id_arc(var_id)]


def variables_compatible(a1: str, a2: str) -> bool:
    """Two variables share a cluster iff strongly compatible (both corner
    arcs) or pairwise compatible through their C(.) sets otherwise."""
    both_corner = a1 not in (ALPHA, ALPHA_REV) and a2 not in (ALPHA, ALPHA_REV)
    if both_corner:
        return arc_compatible(id_arc(a1), id_arc(a2), strong=True)
    return all(arc_compatible(c1, c2, strong=False)
               for c1 in corner_set(a1) for c2 in corner_set(a2))


def enumerate_arc_systems() -> list[frozenset[LabeledArc]]:
    """All maximal pairwise-compatible sets of labeled arcs (42 of them:
    each crossing 1/3-pair set supports two clusters)."""
    arcs = all_labeled_arcs()
    compat = {(a, b): arc_compatible(a, b) for a in arcs for b in arcs}
    systems: list[frozenset] = []

    def extend(current: list[LabeledArc], candidates: list[LabeledArc]):
        extendable = False
        for i, c in enumerate(candidates):
            if all(compat[(c, x)] for x in current):
                extendable = True
                extend(current + [c], candidates[i + 1:])
        if not extendable:
            full = [a for a in arcs
                    if a not in current and all(compat[(a, x)] for x in current)]
            if not full:
                s = frozenset(current)
                if s not in systems:
                    systems.append(s)

    extend([], arcs)
    return systems


@dataclass(frozen=True, order=False)
class System:
    """A maximal compatible arc set plus, when it contains a crossing
    1/3-pair, the resolution marker: which corner arc survives next to
    the web in the associated cluster."""
    arcs: frozenset[LabeledArc]
    resolution: str | None = None

    def __iter__(self):
        return iter(self.arcs)

    def case(self) -> str:
        return system_case(self.arcs)

    def __hash__(self):
        return hash((self.arcs, self.resolution))

    def __eq__(self, other):
        return (isinstance(other, System) and self.arcs == other.arcs
                and self.resolution == other.resolution)


def enumerate_systems() -> list[System]:
    """The 50 systems in bijection with clusters: maximal compatible arc
    sets, with crossing-pair sets split by their two resolutions."""
    out: list[System] = []
    for arcs in enumerate_arc_systems():
        s = set(arcs)
        split = None
        for pair in (("b11", "b~33"), ("b~11", "b33")):
            if {id_arc(pair[0]), id_arc(pair[1])} <= s:
                split = pair
        if split is None:
            out.append(System(arcs))
        else:
            out.append(System(arcs, split[0]))
            out.append(System(arcs, split[1]))
    return out


def system_case(system: Iterable[LabeledArc]) -> str:
    """Appendix split: 'alpha' systems contain a crossing pair at corners
    1/3 feeding a web; plain systems split by interior crossings."""
    s = set(system)
    if {id_arc("b11"), id_arc("b~33")} <= s or {id_arc("b~11"), id_arc("b33")} <= s:
        return "case2"
    crossing = any((a.left - b.left) * (a.right - b.right) > 0
                   for a, b in combinations(s, 2))
    return "case1-crossing" if crossing else "case1-plain"


def enumerate_clusters_combinatorial() -> list[frozenset[str]]:
    """Maximal sets of pairwise compatible variables (frozen included)."""
    ids = all_variable_ids()
    compat = {(a, b): variables_compatible(a, b) for a in ids for b in ids}
    out: list[frozenset] = []

    def extend(current: list[str], candidates: list[str]):
        extendable = False
        for i, c in enumerate(candidates):
            if all(compat[(c, x)] for x in current):
                extendable = True
                extend(current + [c], candidates[i + 1:])
        if not extendable:
            full = [a for a in ids
                    if a not in current and all(compat[(a, x)] for x in current)]
            if not full:
                s = frozenset(current)
                if s not in out:
                    out.append(s)

    extend([], ids)
    return out


def cluster_to_system(cluster: Iterable[str]) -> System:
    """Image of a cluster under C(.): its system of labeled arcs, with the
    surviving corner arc as the resolution when a web is present."""
    arcs: set[LabeledArc] = set()
    resolution = None
    cluster = set(cluster)
    for v in cluster:
        arcs.update(corner_set(v))
    if ALPHA in cluster:
        resolution = "b11" if "b11" in cluster else "b~33"
    elif ALPHA_REV in cluster:
        resolution = "b~11" if "b~11" in cluster else "b33"
    return System(frozenset(arcs), resolution)


# -- weighted systems and cluster monomials -----------------------------------


def weighted_system_to_cluster_monomial(system: Iterable[LabeledArc],
                                        weights: Mapping[LabeledArc, int],
                                        check: bool = True
                                        ) -> tuple[frozenset[str],
                                                   dict[str, int]]:
    """The pair (A(S), f_S): the cluster of variable ids and exponents.

    When the system contains a crossing pair at corners 1/3 the pair is
    traded for the corresponding web with the minimum weight; the excess
    stays on the more frequent corner arc.
    """
    s = set(system)
    if check:
        for a in s:
            if weights.get(a, 0) < 0:
                raise ValueError("weights must be nonnegative")
        for a, b in combinations(s, 2):
            if not arc_compatible(a, b):
                raise ValueError("not a compatible system")

    def plain() -> tuple[frozenset[str], dict[str, int]]:
        cluster = frozenset(arc_id(a) for a in s)
        return cluster, {arc_id(a): weights.get(a, 0) for a in s}

    for pair, web, keep_hi, keep_lo in (
            ((id_arc("b11"), id_arc("b~33")), ALPHA, "b11", "b~33"),
            ((id_arc("b~11"), id_arc("b33")), ALPHA_REV, "b~11", "b33")):
        x, y = pair
        if x in s and y in s:
            wx, wy = weights.get(x, 0), weights.get(y, 0)
            rest = {arc_id(a): weights.get(a, 0) for a in s if a not in pair}
            if wx >= wy:
                extra, extra_w = keep_hi, wx - wy
            else:
                extra, extra_w = keep_lo, wy - wx
            cluster = frozenset(rest) | {web, extra}
            exps = dict(rest)
            exps[web] = min(wx, wy)
            exps[extra] = extra_w
            return cluster, exps
    return plain()


def weighted_systems_upto(max_weight: int):
    """Canonical weighted compatible sets: every pairwise-compatible arc
    set with all weights in 1..max_weight (a weighted system modulo its
    zero-weight arcs).  Feeds the injectivity check of the monomial map."""
    arcs = all_labeled_arcs()
    compat = {(a, b): arc_compatible(a, b) for a in arcs for b in arcs}
    cliques: list[list[LabeledArc]] = [[]]

    def extend(current: list[LabeledArc], candidates: list[LabeledArc]):
        for i, c in enumerate(candidates):
            if all(compat[(c, x)] for x in current):
                cliques.append(current + [c])
                extend(current + [c], candidates[i + 1:])

    extend([], arcs)
    for clique in cliques:
        for combo in product(range(1, max_weight + 1), repeat=len(clique)):
            yield clique, dict(zip(clique, combo))


# -- tagged arcs of the once-punctured quadrilateral ---------------------------


@dataclass(frozen=True, order=True)
class TaggedArc:
    """kind 'plain'/'notched': arc 0-i; 'diag': corner arc a -> a+2;
    'wrap': arc a -> a+1 enclosing the puncture."""
    kind: str
    a: int
    b: int = 0

    def __str__(self):
        if self.kind == "plain":
            return f"g{self.a}"
        if self.kind == "notched":
            return f"g{self.a}^tag"
        return f"g{self.a}{self.b}"


def all_tagged_arcs() -> list[TaggedArc]:
    out = [TaggedArc("plain", i) for i in range(1, 5)]
    out += [TaggedArc("notched", i) for i in range(1, 5)]
    out += [TaggedArc("diag", a, a % 4 + 2 if a + 2 <= 4 else a - 2)
            for a in range(1, 5)]
    out += [TaggedArc("wrap", a, a % 4 + 1) for a in range(1, 5)]
    return out


def _mod4(x: int) -> int:
    return (x - 1) % 4 + 1


def tagged_arc_compatible(t1: TaggedArc, t2: TaggedArc) -> bool:
    """FST compatibility on the once-punctured quadrilateral, encoded
    combinatorially (no curves drawn)."""
    if t1 == t2:
        return True
    k1, k2 = t1.kind, t2.kind
    if {k1, k2} <= {"plain", "notched"}:
        if k1 == k2:
            return True
        return t1.a == t2.a
    if k1 in ("plain", "notched") or k2 in ("plain", "notched"):
        rad, other = (t1, t2) if k1 in ("plain", "notched") else (t2, t1)
        if other.kind == "wrap":
            return rad.a in (other.a, _mod4(other.a + 1))
        # diagonal a -> a+2 bulges toward a+3: blocks only that corner
        return rad.a != _mod4(other.a + 3)
    if k1 == "diag" and k2 == "diag":
        return {t1.a, t1.b} == {t2.a, t2.b}
    if k1 == "wrap" and k2 == "wrap":
        return False
    diag, wrap = (t1, t2) if k1 == "diag" else (t2, t1)
    return diag.a == wrap.a or _mod4(diag.a + 2) == _mod4(wrap.a + 1)


def enumerate_tagged_triangulations() -> list[frozenset[TaggedArc]]:
    arcs = all_tagged_arcs()
    compat = {(a, b): tagged_arc_compatible(a, b) for a in arcs for b in arcs}
    out: list[frozenset] = []

    def extend(current: list[TaggedArc], candidates: list[TaggedArc]):
        extendable = False
        for i, c in enumerate(candidates):
            if all(compat[(c, x)] for x in current):
                extendable = True
                extend(current + [c], candidates[i + 1:])
        if not extendable:
            full = [a for a in arcs
                    if a not in current and all(compat[(a, x)] for x in current)]
            if not full:
                s = frozenset(current)
                if s not in out:
                    out.append(s)

    extend([], arcs)
    return out


# -- the catalogue: mutation words for all 16 exchangeable variables -----------

# seed vertices of the extended bigon carry the grid labels 11, 21, 22, 12,
# matching gamma_1 .. gamma_4
GAMMA_VERTEX = {"g1": "11", "g2": "21", "g3": "22", "g4": "12"}

# variable id -> (tagged arc name, mutation word, vertex read after the word)
CATALOGUE: dict[str, tuple[str, tuple[str, ...], str]] = {
    "b~33": ("g1", (), "11"),
    "b~32": ("g2", (), "21"),
    "b33": ("g3", (), "22"),
    "b23": ("g4", (), "12"),
    "b~23": ("g13", ("12",), "12"),
    "b32": ("g31", ("21",), "21"),
    "b~12": ("g24", ("11",), "11"),
    "b21": ("g42", ("22",), "22"),
    "b12": ("g1^tag", ("12", "21", "22"), "22"),
    "b~21": ("g3^tag", ("21", "12", "11"), "11"),
    "b11": ("g2^tag", ("11", "22", "12"), "12"),
    "b~11": ("g4^tag", ("22", "11", "21"), "21"),
    "b~22": ("g23", ("12", "11"), "11"),
    "b22": ("g41", ("21", "22"), "22"),
    ALPHA: ("g12", ("12", "22"), "22"),
    ALPHA_REV: ("g34", ("21", "11"), "11"),
}

TAGGED_BY_NAME = {str(t): t for t in all_tagged_arcs()}


def bigon_seed() -> QuantumSeed:
    """The extended quantum seed of the bigon at n = 3."""
    return build_extended(0, 3).extended_seed()


def bigon_catalogue(seed: QuantumSeed | None = None
                    ) -> dict[str, tuple[TaggedArc, tuple[str, ...],
                                         TorusElement]]:
    """Realize all 16 exchangeable variables by their mutation words."""
    seed = seed if seed is not None else bigon_seed()
    out = {}
    for var_id, (arc_name, word, vertex) in CATALOGUE.items():
        s = seed.mutate_word(word)
        out[var_id] = (TAGGED_BY_NAME[arc_name], word, s.vars[vertex])
    return out


def catalogue_json(seed: QuantumSeed | None = None) -> list[dict]:
    cat = bigon_catalogue(seed)
    out = []
    for var_id in sorted(cat):
        arc, word, element = cat[var_id]
        out.append({
            "variable_id": var_id,
            "tagged_arc": str(arc),
            "mutation_word": list(word),
            "exponent_support": sorted({v for kvec, _ in element.items()
                                        for v, _ in kvec.items()}),
        })
    return out
