"""Weighted quivers with frozen vertices, mutation, and framed quivers.

The signed adjacency matrix is stored doubled (`adj2[u][v] = 2*Q(u,v)`) so
that half-arrows between frozen vertices stay exact integers.  Mutation
follows the standard rule

    Q'(u,v) = -Q(u,v)                                    if k in {u, v},
    Q'(u,v) = Q(u,v) + (Q(u,k)|Q(k,v)| + |Q(u,k)|Q(k,v))/2   otherwise,

applied verbatim to all pairs, including frozen-frozen ones.  Because
arrows at a mutable vertex always have integer weight, the update never
creates half-arrows at mutable vertices.

Also provides the three row-quiver families Q1/Q2/Q3 with concatenation
and stacking used by the star-triangulation subquiver identities.
"""

from __future__ import annotations

from typing import Iterable, Mapping, Sequence


class FrozenVertexError(ValueError):
    """Mutation requested at a frozen vertex."""


class SizeMismatch(ValueError):
    """Row stacking with incompatible level sizes."""


class WeightedQuiver:
    """Immutable ice quiver; `adj2` holds twice the signed adjacency."""

    __slots__ = ("vertices", "mutable", "_adj2", "_index")

    def __init__(self, vertices: Sequence[str], mutable: Iterable[str],
                 adj2: Mapping[tuple[str, str], int]):
        self.vertices = tuple(vertices)
        self._index = {v: i for i, v in enumerate(self.vertices)}
        if len(self._index) != len(self.vertices):
            raise ValueError("duplicate vertex ids")
        self.mutable = frozenset(mutable)
        unknown = self.mutable - set(self.vertices)
        if unknown:
            raise ValueError(f"mutable ids not among vertices: {sorted(unknown)}")
        table: dict[tuple[str, str], int] = {}
        for (a, b), w in adj2.items():
            if w == 0:
                continue
            if a == b:
                raise ValueError(f"loop at {a}")
            if a not in self._index or b not in self._index:
                raise ValueError(f"unknown vertex in arrow ({a},{b})")
            if (b, a) in table and table[(b, a)] != -w:
                raise ValueError(f"adj2 not skew-symmetric at ({a},{b})")
            if (a, b) in table and table[(a, b)] != w:
                raise ValueError(f"conflicting adj2 entries at ({a},{b})")
            if w % 2 and (a in self.mutable or b in self.mutable):
                raise ValueError(
                    f"half-arrow at mutable vertex: ({a},{b}) weight {w}/2")
            table[(a, b)] = w
            table[(b, a)] = -w
        self._adj2 = table

    # -- queries -----------------------------------------------------------

    def adj2(self, u: str, v: str) -> int:
        return self._adj2.get((u, v), 0)

    def q(self, u: str, v: str) -> int:
        """Q(u,v) for pairs where it is integral (anything touching a
        mutable vertex); raises on a stray half-arrow."""
        w = self._adj2.get((u, v), 0)
        if w % 2:
            raise ValueError(f"Q({u},{v}) is a half-integer")
        return w // 2

    def frozen(self) -> tuple[str, ...]:
        return tuple(v for v in self.vertices if v not in self.mutable)

    def arrows(self) -> list[tuple[str, str, int]]:
        """Positive-direction arrows as (src, dst, adj2-weight)."""
        out = []
        for (a, b), w in self._adj2.items():
            if w > 0:
                out.append((a, b, w))
        out.sort(key=lambda t: (self._index[t[0]], self._index[t[1]]))
        return out

    def neighbors(self, v: str) -> set[str]:
        return {b for (a, b) in self._adj2 if a == v}

    def column(self, v: str) -> dict[str, int]:
        """The map u -> Q(u, v) over nonzero entries (integral entries only)."""
        out = {}
        for (a, b), w in self._adj2.items():
            if b == v and w:
                if w % 2:
                    raise ValueError(f"column {v} has half-integer entry at {a}")
                out[a] = w // 2
        return out

    def restrict(self, keep: Iterable[str], mutable: Iterable[str] | None = None
                 ) -> "WeightedQuiver":
        """Submatrix on `keep` (entries are copied, not recomputed)."""
        keep_set = set(keep)
        verts = tuple(v for v in self.vertices if v in keep_set)
        mut = (self.mutable & keep_set) if mutable is None else set(mutable)
        adj = {(a, b): w for (a, b), w in self._adj2.items()
               if a in keep_set and b in keep_set}
        return WeightedQuiver(verts, mut, adj)

    def relabel(self, mapping: Mapping[str, str]) -> "WeightedQuiver":
        verts = tuple(mapping.get(v, v) for v in self.vertices)
        mut = {mapping.get(v, v) for v in self.mutable}
        adj = {(mapping.get(a, a), mapping.get(b, b)): w
               for (a, b), w in self._adj2.items()}
        return WeightedQuiver(verts, mut, adj)

    def with_mutable(self, mutable: Iterable[str]) -> "WeightedQuiver":
        return WeightedQuiver(self.vertices, mutable, self._adj2)

    def delete_vertices(self, drop: Iterable[str]) -> "WeightedQuiver":
        drop_set = set(drop)
        return self.restrict([v for v in self.vertices if v not in drop_set])

    def mutate(self, k: str) -> "WeightedQuiver":
        return mutate_quiver(self, k)


def mutate_quiver(q: WeightedQuiver, k: str) -> WeightedQuiver:
    """Mutation at a mutable vertex; involutive."""
    if k not in q.mutable:
        raise FrozenVertexError(f"vertex {k!r} is not mutable")
    # Q(a,k) for all a with an arrow to/from k (integral since k mutable).
    qk: dict[str, int] = {}
    for a in q.vertices:
        w = q.adj2(a, k)
        if w:
            qk[a] = w // 2
    new_adj: dict[tuple[str, str], int] = {}
    for (a, b), w in q._adj2.items():
        new_adj[(a, b)] = -w if (a == k or b == k) else w
    nbrs = list(qk)
    for i, a in enumerate(nbrs):
        qa = qk[a]
        for b in nbrs[i + 1:]:
            qkb = -qk[b]  # Q(k,b)
            # doubled increment: 2 * (1/2)(Q(a,k)|Q(k,b)| + |Q(a,k)|Q(k,b))
            delta2 = qa * abs(qkb) + abs(qa) * qkb
            if delta2:
                val = new_adj.get((a, b), 0) + delta2
                if val:
                    new_adj[(a, b)] = val
                    new_adj[(b, a)] = -val
                else:
                    new_adj.pop((a, b), None)
                    new_adj.pop((b, a), None)
    return WeightedQuiver(q.vertices, q.mutable, new_adj)


def mutate_word(q: WeightedQuiver, word: Iterable[str]) -> WeightedQuiver:
    for k in word:
        q = mutate_quiver(q, k)
    return q


PRIME_SUFFIX = "'"


def framed_quiver(q: WeightedQuiver) -> WeightedQuiver:
    """Framed quiver: all base vertices mutable, frozen-frozen arrows
    deleted, plus one frozen copy v' with a single arrow v' -> v."""
    frozen = set(q.frozen())
    adj: dict[tuple[str, str], int] = {}
    for (a, b), w in q._adj2.items():
        if a in frozen and b in frozen:
            continue
        adj[(a, b)] = w
    verts = list(q.vertices) + [v + PRIME_SUFFIX for v in q.vertices]
    for v in q.vertices:
        adj[(v + PRIME_SUFFIX, v)] = 2
        adj[(v, v + PRIME_SUFFIX)] = -2
    return WeightedQuiver(verts, set(q.vertices), adj)


def mutate_framed(fq: WeightedQuiver, k: str) -> WeightedQuiver:
    """Standard mutation applied to the full framed matrix (base plus
    coframe); sign coherence of the coframe columns is preserved along
    green sequences."""
    return mutate_quiver(fq, k)


def is_frame_vertex(v: str) -> bool:
    return v.endswith(PRIME_SUFFIX)


def quiver_to_json(q: WeightedQuiver) -> dict:
    return {"vertices": list(q.vertices), "mutable": sorted(q.mutable),
            "adj2": [[a, b, w] for (a, b, w) in q.arrows()]}


def quiver_to_dot(q: WeightedQuiver) -> str:
    """DOT export: frozen vertices boxed, weights as labels, half-arrows
    dashed."""
    lines = ["digraph quiver {"]
    for v in q.vertices:
        shape = "ellipse" if v in q.mutable else "box"
        lines.append(f'  "{v}" [shape={shape}];')
    for a, b, w in q.arrows():
        label = str(w // 2) if w % 2 == 0 else f"{w}/2"
        style = "" if w % 2 == 0 else ", style=dashed"
        lines.append(f'  "{a}" -> "{b}" [label="{label}"{style}];')
    lines.append("}")
    return "\n".join(lines)


def coframe_column(fq: WeightedQuiver, v: str) -> dict[str, int]:
    """c-vector data: map w -> Q(w', v) over frame vertices w'."""
    out = {}
    for w in fq.vertices:
        if is_frame_vertex(w):
            val = fq.adj2(w, v)
            if val:
                out[w[:-len(PRIME_SUFFIX)]] = val // 2
    return out


def is_green(fq: WeightedQuiver, v: str) -> bool:
    """Green iff every frame arrow into v is nonnegative."""
    if v not in fq.mutable:
        raise ValueError(f"{v!r} is not a base vertex")
    return all(c >= 0 for c in coframe_column(fq, v).values())


def is_red(fq: WeightedQuiver, v: str) -> bool:
    return all(c <= 0 for c in coframe_column(fq, v).values())


def sign_coherent(fq: WeightedQuiver) -> bool:
    """Every coframe column entirely >= 0 or entirely <= 0."""
    for v in fq.mutable:
        col = list(coframe_column(fq, v).values())
        if any(c > 0 for c in col) and any(c < 0 for c in col):
            return False
    return True


# -- the row-quiver families  -----------------------------------------------


def _level_name(level: int, idx: int, part: int | None = None) -> str:
    base = f"{level}_{idx}"
    return base if part is None else f"{base}[{part}]"


def build_family_quiver(kind: str, size: int, part: int | None = None
                        ) -> WeightedQuiver:
    """One of the three row quivers: two horizontal levels, right to left.

    Level 1 holds vertices 1_1..1_size, level 2 holds 2_0..2_size (Q2 drops
    2_0; Q3 adds one extra arrow 1_size <- 2_size).  `part` tags vertex
    names with a component index for use inside concatenations.
    """
    if kind not in ("Q1", "Q2", "Q3"):
        raise ValueError(f"unknown family kind {kind!r}")
    if size < 0:
        raise ValueError("size must be >= 0")
    lvl1 = [_level_name(1, i, part) for i in range(1, size + 1)]
    lo = 1 if kind == "Q2" else 0
    lvl2 = [_level_name(2, i, part) for i in range(lo, size + 1)]
    adj: dict[tuple[str, str], int] = {}

    def arrow(src: str, dst: str) -> None:
        adj[(src, dst)] = adj.get((src, dst), 0) + 2
        adj[(dst, src)] = -adj[(src, dst)]

    for i in range(1, size):
        arrow(_level_name(1, i, part), _level_name(1, i + 1, part))
    for i in range(lo, size):
        arrow(_level_name(2, i, part), _level_name(2, i + 1, part))
    for i in range(lo, size):
        arrow(_level_name(1, i + 1, part), _level_name(2, i, part))
    for i in range(1, size):
        arrow(_level_name(2, i, part), _level_name(1, i, part))
    if kind == "Q3" and size >= 1:
        arrow(_level_name(2, size, part), _level_name(1, size, part))
    return WeightedQuiver(lvl1 + lvl2, set(lvl1 + lvl2), adj)


def level_vertices(q: WeightedQuiver, level: int) -> list[str]:
    """Vertices named `level_i[...]` in creation order (right to left)."""
    return [v for v in q.vertices if v.startswith(f"{level}_")]


def concat_quivers(parts: Sequence[tuple[str, int]]) -> WeightedQuiver:
    """Concatenation Q^{i_k}(n_k) # ... # Q^{i_1}(n_1).

    `parts` lists (kind, size) from RIGHT to LEFT, i.e. parts[0] is the
    rightmost component.  Junction arrows per consecutive pair:
        1_1[s+1] <- 1_{n_s}[s],  2_{d}[s+1] <- 2_{n_s}[s],
        2_{d}[s+1] -> 1_{n_s}[s],   d = 0 if kind_{s+1} in {Q1,Q3} else 1.
    """
    if not parts:
        raise ValueError("concatenation of an empty part list")
    comps = [build_family_quiver(kind, size, part=s + 1)
             for s, (kind, size) in enumerate(parts)]
    verts: list[str] = []
    mut: set[str] = set()
    adj: dict[tuple[str, str], int] = {}
    for comp in comps:
        verts.extend(comp.vertices)
        mut |= comp.mutable
        adj.update(comp._adj2)

    def arrow(src: str, dst: str) -> None:
        adj[(src, dst)] = adj.get((src, dst), 0) + 2
        adj[(dst, src)] = -adj[(src, dst)]

    have = set(verts)
    for s in range(len(parts) - 1):
        kind_next, _ = parts[s + 1]
        _, size_s = parts[s]
        d = 0 if kind_next in ("Q1", "Q3") else 1
        last1 = _level_name(1, size_s, s + 1)
        last2 = _level_name(2, size_s, s + 1)
        first1_next = _level_name(1, 1, s + 2)
        first2_next = _level_name(2, d, s + 2)
        # junction arrows whose endpoints do not exist (size-0 parts)
        # are omitted
        if last1 in have and first1_next in have:
            arrow(last1, first1_next)
        if last2 in have and first2_next in have:
            arrow(last2, first2_next)
        if first2_next in have and last1 in have:
            arrow(first2_next, last1)
    return WeightedQuiver(verts, mut, adj)


def stack_quivers(rows: Sequence[WeightedQuiver]) -> WeightedQuiver:
    """Identify each level-2 vertex of row s with the matching level-1
    vertex of row s+1, left to right, working top down."""
    if not rows:
        raise SizeMismatch("stack of an empty row list")
    out = rows[0].relabel({v: f"r1|{v}" for v in rows[0].vertices})
    for s in range(1, len(rows)):
        nxt = rows[s].relabel({v: f"r{s + 1}|{v}" for v in rows[s].vertices})
        upper2 = _stack_level2(out, s)
        lower1 = [v for v in nxt.vertices if v.startswith(f"r{s + 1}|1_")]
        if len(upper2) != len(lower1):
            raise SizeMismatch(
                f"row {s} has {len(upper2)} level-2 vertices, row {s + 1} "
                f"has {len(lower1)} level-1 vertices")
        # identification left to right; vertex lists run right to left
        mapping = dict(zip(reversed(lower1), reversed(upper2)))
        nxt = nxt.relabel(mapping)
        shared = set(mapping.values())
        adj = dict(out._adj2)
        for (a, b), w in nxt._adj2.items():
            if a in shared and b in shared:
                # the glued row's internal arrows coincide in both quivers
                cur = adj.get((a, b), 0)
                if cur != w:
                    raise SizeMismatch(
                        f"glued-row arrows disagree at ({a},{b}): {cur} vs {w}")
                continue
            cur = adj.get((a, b), 0) + w
            if cur:
                adj[(a, b)] = cur
            elif (a, b) in adj:
                del adj[(a, b)]
        verts = list(out.vertices) + [v for v in nxt.vertices
                                      if v not in out._index]
        mut = set(out.mutable) | set(nxt.mutable)
        out = WeightedQuiver(verts, mut, adj)
    return out


def _stack_level2(q: WeightedQuiver, row: int) -> list[str]:
    """Level-2 vertices of stack row `row` in right-to-left creation order."""
    return [v for v in q.vertices if v.startswith(f"r{row}|2_")]
