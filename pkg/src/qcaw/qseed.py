"""Quantum seeds and their mutation.

A seed packages an ice quiver Q, a quasi-commutation matrix Pi, and the
cluster variables as Laurent expansions inside the torus of the INITIAL
seed.  Mutation follows Berenstein-Zelevinsky:

    A'_k = A_k^{-1} ( xi^{e_k Pi b+ / 2} M(b+) + xi^{e_k Pi b- / 2} M(b-) )

with b+/- the positive/negative parts of the exchange column at k, M the
current seed's Weyl monomial map, and the product realized by exact left
division in the initial torus.  Pi mutates by the closed-form column
update and is re-checked against quasi-commutation exponents of the new
variables, which catches prefactor sign bugs immediately.

g-vectors are tracked through the framed quiver by the standard exchange
recurrence and graded degrees deg(A_v) = e_v, deg(A_v') = -Q(-, v).
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .qtorus import (CommutationContext, ExponentVector, TorusElement,
                     quasi_commutation_exponent, torus_left_divide,
                     weyl_monomial)
from .quiver import (FrozenVertexError, WeightedQuiver, framed_quiver,
                     is_frame_vertex, mutate_quiver)
from .scalar import LaurentScalar


class IncompatibleSeed(ValueError):
    """The (Q, Pi) pair violates the compatibility relation."""


class NegativeMutableExponent(ValueError):
    """Cluster monomial with a negative exponent where none is allowed."""


@dataclass(frozen=True)
class CompatibilityReport:
    ok: bool
    d: dict[str, int]
    violations: list[str]

    def __bool__(self) -> bool:
        return self.ok


class QuantumSeed:
    """Immutable quantum seed; mutation returns a new seed."""

    __slots__ = ("quiver", "ctx", "vars", "pi", "gvecs", "framed",
                 "frame_deg", "history")

    def __init__(self, quiver: WeightedQuiver, ctx: CommutationContext,
                 vars: Mapping[str, TorusElement],
                 pi: Mapping[tuple[str, str], int],
                 gvecs: Mapping[str, ExponentVector],
                 framed: WeightedQuiver,
                 frame_deg: Mapping[str, ExponentVector],
                 history: tuple[str, ...]):
        self.quiver = quiver
        self.ctx = ctx
        self.vars = dict(vars)
        self.pi = {k: v for k, v in pi.items() if v}
        self.gvecs = dict(gvecs)
        self.framed = framed
        self.frame_deg = dict(frame_deg)
        self.history = history

    # -- construction ------------------------------------------------------

    @staticmethod
    def initial(quiver: WeightedQuiver, pi: Mapping[tuple[str, str], int],
                rank_n: int = 1, check: bool = True) -> "QuantumSeed":
        """Seed in its own torus: vars are the generators M(e_v)."""
        ctx = CommutationContext(quiver.vertices, rank_n, pi)
        vars = {v: weyl_monomial(ctx, ExponentVector.unit(v))
                for v in quiver.vertices}
        gvecs = {v: ExponentVector.unit(v) for v in quiver.vertices}
        fq = framed_quiver(quiver)
        # degree of the frame variable at v': -Q0(-, v) on the framed base,
        # where frozen-frozen arrows have been deleted (entries integral)
        frame_deg = {}
        for v in quiver.vertices:
            col = {u: w for u, w in fq.column(v).items()
                   if not is_frame_vertex(u)}
            frame_deg[v] = ExponentVector({u: -w for u, w in col.items()})
        seed = QuantumSeed(quiver, ctx, vars, dict(ctx_pi_table(ctx)),
                           gvecs, fq, frame_deg, ())
        if check:
            rep = check_compatibility(seed)
            if not rep.ok:
                raise IncompatibleSeed("; ".join(rep.violations[:3]))
        return seed

    @staticmethod
    def from_variables(quiver: WeightedQuiver, ctx: CommutationContext,
                       vars: Mapping[str, TorusElement],
                       pi: Mapping[tuple[str, str], int] | None = None,
                       check: bool = True) -> "QuantumSeed":
        """Seed whose variables live in an ambient torus (e.g. monomials in
        another seed's variables).  Pi is computed from quasi-commutation
        exponents when not supplied; g-vectors restart at e_v."""
        if pi is None:
            pi = {}
            verts = quiver.vertices
            for i, a in enumerate(verts):
                for b in verts[i + 1:]:
                    w = quasi_commutation_exponent(vars[a], vars[b])
                    if w:
                        pi[(a, b)] = w
                        pi[(b, a)] = -w
        gvecs = {v: ExponentVector.unit(v) for v in quiver.vertices}
        fq = framed_quiver(quiver)
        frame_deg = {v: ExponentVector({u: -w for u, w in fq.column(v).items()
                                        if not is_frame_vertex(u)})
                     for v in quiver.vertices}
        seed = QuantumSeed(quiver, ctx, vars, dict(pi), gvecs, fq,
                           frame_deg, ())
        if check:
            rep = check_compatibility(seed)
            if not rep.ok:
                raise IncompatibleSeed("; ".join(rep.violations[:3]))
        return seed

    # -- basic views -------------------------------------------------------

    def pi_entry(self, a: str, b: str) -> int:
        return self.pi.get((a, b), 0)

    def d_values(self) -> dict[str, int]:
        return check_compatibility(self).d

    def variable(self, v: str) -> TorusElement:
        return self.vars[v]

    def cluster_key(self) -> frozenset:
        """Identity of the cluster: unordered set of variable expansions."""
        return frozenset(self.vars.values())

    def exchangeable_key(self) -> frozenset:
        return frozenset(self.vars[v] for v in self.quiver.mutable)

    def weyl_of(self, k: ExponentVector) -> TorusElement:
        """The current seed's monomial M(k), expanded in the initial torus.

        Computed as the ordered product of vars with the Weyl prefactor
        read from the tracked Pi, so it is order independent.
        """
        order = [v for v in self.quiver.vertices if k.get(v)]
        half = 0
        for i, a in enumerate(order):
            for b in order[i + 1:]:
                half += k.get(a) * k.get(b) * self.pi_entry(a, b)
        out = TorusElement.one(self.ctx)
        for v in order:
            out = out * self.vars[v] ** k.get(v)
        return out.shift_u(-self.ctx.rank_n * half)

    # -- mutation ----------------------------------------------------------

    def mutate(self, k: str, verify_pi: bool = True) -> "QuantumSeed":
        return mutate_seed(self, k, verify_pi=verify_pi)

    def mutate_word(self, word: Iterable[str], verify_pi: bool = True
                    ) -> "QuantumSeed":
        seed = self
        for k in word:
            seed = mutate_seed(seed, k, verify_pi=verify_pi)
        return seed

    # -- serialization -----------------------------------------------------

    def to_json(self) -> dict:
        return {
            "schema": "qcaw/1",
            "vertices": list(self.quiver.vertices),
            "mutable": sorted(self.quiver.mutable),
            "adj2": [[a, b, w] for (a, b, w) in self.quiver.arrows()],
            "pi": sorted([a, b, w] for (a, b), w in self.pi.items()
                         if self.quiver._index[a] < self.quiver._index[b]),
            "vars": {v: self.vars[v].to_json() for v in self.quiver.vertices},
            "gvecs": {v: dict(sorted(self.gvecs[v].items()))
                      for v in self.quiver.vertices},
            "history": list(self.history),
        }


def ctx_pi_table(ctx: CommutationContext) -> dict[tuple[str, str], int]:
    table = {}
    for a in ctx.vertex_ids:
        for b in ctx.vertex_ids:
            p = ctx.pi(a, b)
            if p:
                table[(a, b)] = p
    return table


def seed_from_matrices(vertices: Sequence[str], mutable: Iterable[str],
                       adj2: Mapping[tuple[str, str], int],
                       pi: Mapping[tuple[str, str], int],
                       rank_n: int = 1, check: bool = True) -> QuantumSeed:
    """Convenience: initial seed from raw matrix data."""
    return QuantumSeed.initial(WeightedQuiver(vertices, mutable, adj2), pi,
                               rank_n=rank_n, check=check)


def check_compatibility(seed: QuantumSeed) -> CompatibilityReport:
    """Verify sum_l Q(l,u) Pi(l,v) = delta_{u,v} d_u with d_u > 0."""
    q = seed.quiver
    d: dict[str, int] = {}
    violations: list[str] = []
    for u in sorted(q.mutable):
        col = q.column(u)
        for v in q.vertices:
            total = sum(qlu * seed.pi_entry(l, v) for l, qlu in col.items())
            if v == u:
                if total <= 0:
                    violations.append(f"d_{u} = {total} is not positive")
                else:
                    d[u] = total
            elif total != 0:
                violations.append(
                    f"sum_l Q(l,{u}) Pi(l,{v}) = {total}, expected 0")
    return CompatibilityReport(not violations, d, violations)


def mutate_seed(seed: QuantumSeed, k: str, verify_pi: bool = True) -> QuantumSeed:
    """Berenstein-Zelevinsky mutation at a mutable vertex."""
    q = seed.quiver
    if k not in q.mutable:
        raise FrozenVertexError(f"vertex {k!r} is not mutable")
    ctx = seed.ctx
    n = ctx.rank_n
    col = q.column(k)  # l -> Q(l, k)
    b_plus = ExponentVector({l: w for l, w in col.items() if w > 0})
    b_minus = ExponentVector({l: -w for l, w in col.items() if w < 0})

    def half_pair(b: ExponentVector) -> int:
        # e_k Pi b^T
        return sum(seed.pi_entry(k, l) * c for l, c in b.items())

    s_plus = seed.weyl_of(b_plus).shift_u(n * half_pair(b_plus))
    s_minus = seed.weyl_of(b_minus).shift_u(n * half_pair(b_minus))
    new_var = torus_left_divide(seed.vars[k], s_plus + s_minus)

    new_quiver = mutate_quiver(q, k)
    new_framed = mutate_quiver(seed.framed, k)

    new_pi = {key: val for key, val in seed.pi.items()
              if k not in key}
    for j in q.vertices:
        if j == k:
            continue
        val = -seed.pi_entry(k, j) + sum(
            w * seed.pi_entry(l, j) for l, w in col.items() if w > 0)
        if val:
            new_pi[(k, j)] = val
            new_pi[(j, k)] = -val

    new_vars = dict(seed.vars)
    new_vars[k] = new_var

    # g-vector recurrence on the positive side of the framed quiver
    new_gvecs = dict(seed.gvecs)
    acc = ExponentVector()
    for w in seed.framed.vertices:
        c = seed.framed.adj2(w, k)
        if c > 0:
            acc = acc + _framed_degree(seed, w).scale(c // 2)
    new_gvecs[k] = acc - seed.gvecs[k]

    out = QuantumSeed(new_quiver, ctx, new_vars, new_pi, new_gvecs,
                      new_framed, seed.frame_deg, seed.history + (k,))
    if verify_pi:
        # the paper pins Pi' only implicitly; cross-check the updated row
        # against the quasi-commutation exponents of the new variables
        for j in q.vertices:
            if j == k:
                continue
            got = quasi_commutation_exponent(out.vars[k], out.vars[j])
            if got != out.pi_entry(k, j):
                raise IncompatibleSeed(
                    f"Pi'({k},{j}) = {out.pi_entry(k, j)} but variables "
                    f"quasi-commute with exponent {got}")
    return out


def _framed_degree(seed: QuantumSeed, w: str) -> ExponentVector:
    """deg of the framed-quiver variable at w: tracked g-vector at a base
    vertex, the fixed -Q0(-, v) at a frame vertex v'."""
    if not is_frame_vertex(w):
        return seed.gvecs[w]
    return seed.frame_deg[w[:-1]]


def cluster_monomial(seed: QuantumSeed, k: ExponentVector | Mapping[str, int],
                     variant: str = "plus") -> TorusElement:
    """Weyl-ordered product of the current cluster with exponents k.

    variant "plus" needs k >= 0 everywhere; "frozen_inverted" allows
    negative exponents on frozen vertices only.
    """
    if not isinstance(k, ExponentVector):
        k = ExponentVector(k)
    if variant not in ("plus", "frozen_inverted"):
        raise ValueError(f"unknown variant {variant!r}")
    for v, c in k.items():
        if c < 0:
            if variant == "plus":
                raise NegativeMutableExponent(
                    f"exponent {c} at {v} with variant 'plus'")
            if v in seed.quiver.mutable:
                raise NegativeMutableExponent(
                    f"negative exponent at mutable vertex {v}")
    return seed.weyl_of(k)


@dataclass
class ExchangeGraph:
    clusters: list[frozenset]
    variables: set[TorusElement]
    graph: dict[int, dict[str, int]]
    seeds: list[QuantumSeed]
    truncated: bool = False

    @property
    def num_clusters(self) -> int:
        return len(self.clusters)

    def exchangeable_variables(self) -> set[TorusElement]:
        frozen_vars = {self.seeds[0].vars[v]
                       for v in self.seeds[0].quiver.frozen()}
        return self.variables - frozen_vars


def enumerate_exchange_graph(seed: QuantumSeed, max_seeds: int = 200,
                             verify_pi: bool = False) -> ExchangeGraph:
    """Breadth-first closure under mutation at all mutable vertices.

    Seeds are identified by the unordered set of their exchangeable
    variables (Laurent expansions in the initial torus).  Deterministic:
    the queue is ordered by mutation word, vertices in quiver order.
    """
    if max_seeds < 1:
        raise ValueError("max_seeds must be >= 1")
    mut_order = [v for v in seed.quiver.vertices if v in seed.quiver.mutable]
    start_key = seed.exchangeable_key()
    index: dict[frozenset, int] = {start_key: 0}
    seeds = [seed]
    graph: dict[int, dict[str, int]] = {0: {}}
    variables: set[TorusElement] = set(seed.vars.values())
    queue = deque([0])
    truncated = False
    while queue:
        i = queue.popleft()
        s = seeds[i]
        for v in mut_order:
            t = s.mutate(v, verify_pi=verify_pi)
            key = t.exchangeable_key()
            j = index.get(key)
            if j is None:
                if len(seeds) >= max_seeds:
                    truncated = True
                    continue
                j = len(seeds)
                index[key] = j
                seeds.append(t)
                graph[j] = {}
                variables.update(t.vars.values())
                queue.append(j)
            graph[i][v] = j
    return ExchangeGraph(clusters=list(index), variables=variables,
                         graph=graph, seeds=seeds, truncated=truncated)


@dataclass(frozen=True)
class QuasiHomReport:
    cond1: bool
    cond2: bool
    cond3: bool
    cond4: bool
    detail: tuple[str, ...] = ()

    @property
    def ok(self) -> bool:
        return self.cond1 and self.cond2 and self.cond3 and self.cond4

    def __bool__(self) -> bool:
        return self.ok


def check_quasi_homomorphism(src: QuantumSeed, dst: QuantumSeed,
                             image: Mapping[str, ExponentVector]
                             ) -> QuasiHomReport:
    """Check the four quasi-homomorphism conditions for v -> M'(f_v).

    `image` maps each vertex v of src to the exponent vector f_v over
    dst's vertices.  Requires equal mutable subquivers as a precondition.
    """
    detail: list[str] = []
    mut = src.quiver.mutable
    if mut != dst.quiver.mutable:
        raise ValueError("seeds have different mutable vertex sets")
    for a in mut:
        for b in mut:
            if src.quiver.adj2(a, b) != dst.quiver.adj2(a, b):
                raise ValueError(
                    f"mutable subquivers differ at ({a},{b})")
    missing = [v for v in src.quiver.vertices if v not in image]
    if missing:
        raise ValueError(f"image missing vertices: {missing}")

    cond1 = True
    for v in mut:
        f = image[v]
        if f.get(v) != 1 or any(w in mut and w != v and c != 0
                                for w, c in f.items()):
            cond1 = False
            detail.append(f"(1) fails at {v}: f_v = {f!r}")
    cond2 = True
    for v in src.quiver.vertices:
        if v in mut:
            continue
        f = image[v]
        if any(w in mut and c != 0 for w, c in f.items()):
            cond2 = False
            detail.append(f"(2) fails at frozen {v}: f_v = {f!r}")
    cond3 = True
    for v in sorted(mut):
        lhs = ExponentVector()
        for w, qwv in src.quiver.column(v).items():
            lhs = lhs + image[w].scale(qwv)
        rhs = ExponentVector()
        for w, qwv in dst.quiver.column(v).items():
            rhs = rhs + ExponentVector.unit(w).scale(qwv)
        if lhs != rhs:
            cond3 = False
            detail.append(f"(3) fails at {v}: {lhs!r} != {rhs!r}")
    cond4 = True
    verts = src.quiver.vertices
    for i, v1 in enumerate(verts):
        for v2 in verts[i + 1:]:
            lhs = src.pi_entry(v1, v2)
            rhs = _pi_of_vectors(dst, image[v1], image[v2])
            if lhs != rhs:
                cond4 = False
                detail.append(
                    f"(4) fails at ({v1},{v2}): {lhs} != {rhs}")
    return QuasiHomReport(cond1, cond2, cond3, cond4, tuple(detail))


def _pi_of_vectors(seed: QuantumSeed, f1: ExponentVector,
                   f2: ExponentVector) -> int:
    total = 0
    for a, c1 in f1.items():
        for b, c2 in f2.items():
            total += c1 * c2 * seed.pi_entry(a, b)
    return total


def commutative_principal_seed(quiver: WeightedQuiver) -> QuantumSeed:
    """Principal-coefficient commutative seed over the framed quiver.

    The commutation matrix is zero (u plays no role), giving the classical
    cluster algebra with principal coefficients; serves as the independent
    oracle for tracked g-vectors.  The framed quiver doubles as its own
    frame, so no second layer of frame vertices is added.
    """
    fq = framed_quiver(quiver)
    ctx = CommutationContext(fq.vertices, 1, {})
    vars = {v: weyl_monomial(ctx, ExponentVector.unit(v))
            for v in fq.vertices}
    gvecs = {v: ExponentVector.unit(v) for v in fq.vertices}
    frame_deg = {v: ExponentVector({u: -w for u, w in fq.column(v).items()
                                    if not is_frame_vertex(u)})
                 for v in quiver.vertices}
    return QuantumSeed(fq, ctx, vars, {}, gvecs, fq, frame_deg, ())


def gvector_oracle(quiver: WeightedQuiver, word: Sequence[str]
                   ) -> dict[str, ExponentVector]:
    """g-vectors via the commutative principal-coefficient specialization.

    Mutates the commutative principal seed along `word` and reads, for each
    base vertex, the multidegree of its variable under deg(A_v) = e_v,
    deg(A_v') = -Q(-, v).  Raises if some variable is not homogeneous,
    which would indicate a mutation bug.
    """
    fq0 = framed_quiver(quiver)
    # frozen-frozen arrows are deleted in the framed base, so every column
    # entry is integral
    base_cols = {v: {u: w for u, w in fq0.column(v).items()
                     if not is_frame_vertex(u)}
                 for v in quiver.vertices}
    seed = commutative_principal_seed(quiver)
    seed = seed.mutate_word(word, verify_pi=False)
    out: dict[str, ExponentVector] = {}
    for v in quiver.vertices:
        out[v] = _multidegree(seed.vars[v], base_cols)
    return out


def _multidegree(x: TorusElement,
                 base_cols: Mapping[str, Mapping[str, int]]) -> ExponentVector:
    deg: ExponentVector | None = None
    for k, _ in x.items():
        d = ExponentVector()
        for w, c in k.items():
            if is_frame_vertex(w):
                col = base_cols[w[:-1]]
                d = d + ExponentVector({u: -q for u, q in col.items()}).scale(c)
            else:
                d = d + ExponentVector.unit(w).scale(c)
        if deg is None:
            deg = d
        elif deg != d:
            raise ValueError("variable is not multihomogeneous")
    if deg is None:
        raise ValueError("zero variable has no degree")
    return deg
