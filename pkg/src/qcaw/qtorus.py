"""Based quantum torus over Z[u, u^-1].

Elements are finite sums of Weyl-ordered monomials M(k) over an exponent
lattice indexed by a fixed vertex set, with relations

    M(k) * M(t) = xi^(kPt/2) * M(k + t),        xi = u^(2n),

for a skew-symmetric integer matrix P.  Since P is integral, every
prefactor is an integer power of u^n, so arithmetic stays in Z[u, u^-1].

Exact one-sided division (`torus_left_divide`) is the engine behind the
Laurent phenomenon checks: a cluster variable divides its exchange binomial
exactly, and a failed division signals an invalid seed or a bug.
"""

from __future__ import annotations

from typing import Iterable, Iterator, Mapping, Sequence

from .scalar import LaurentScalar


class NotExactlyDivisible(ArithmeticError):
    """Left division left a remainder or exceeded its step cap."""


class NotQuasiCommutative(ArithmeticError):
    """No single integer k satisfies a*b = xi^k * b*a termwise."""


class ContextMismatch(ValueError):
    """Operands live over different commutation contexts."""


class CommutationContext:
    """Vertex set with a skew-symmetric integer commutation matrix.

    `pi[(u, v)]` holds the exponent Pi(u, v); missing keys mean 0.  The
    vertex order fixes the graded-lexicographic monomial order used for
    division and for deterministic rendering.
    """

    __slots__ = ("vertex_ids", "rank_n", "_pi", "_index")

    def __init__(self, vertex_ids: Sequence[str], rank_n: int,
                 pi: Mapping[tuple[str, str], int]):
        if rank_n < 1:
            raise ValueError("rank_n must be >= 1")
        self.vertex_ids = tuple(vertex_ids)
        if len(set(self.vertex_ids)) != len(self.vertex_ids):
            raise ValueError("duplicate vertex ids")
        self.rank_n = rank_n
        self._index = {v: i for i, v in enumerate(self.vertex_ids)}
        table: dict[tuple[str, str], int] = {}
        for (a, b), val in pi.items():
            if val == 0:
                continue
            if a == b:
                raise ValueError(f"Pi({a},{a}) must be 0")
            if a not in self._index or b not in self._index:
                raise ValueError(f"unknown vertex in Pi entry ({a},{b})")
            if (b, a) in table and table[(b, a)] != -val:
                raise ValueError(f"Pi not skew-symmetric at ({a},{b})")
            if (a, b) in table and table[(a, b)] != val:
                raise ValueError(f"conflicting Pi entries at ({a},{b})")
            table[(a, b)] = val
            table[(b, a)] = -val
        self._pi = table

    def pi(self, a: str, b: str) -> int:
        return self._pi.get((a, b), 0)

    def index(self, v: str) -> int:
        return self._index[v]

    def pi_pairing(self, k: "ExponentVector", t: "ExponentVector") -> int:
        """The integer k P t^T."""
        total = 0
        for a, ka in k.items():
            if not ka:
                continue
            for b, tb in t.items():
                if tb:
                    p = self._pi.get((a, b))
                    if p:
                        total += ka * tb * p
        return total

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, CommutationContext)
                and self.vertex_ids == other.vertex_ids
                and self.rank_n == other.rank_n
                and self._pi == other._pi)

    def __hash__(self) -> int:
        return hash((self.vertex_ids, self.rank_n))

    def __repr__(self) -> str:
        return (f"CommutationContext({len(self.vertex_ids)} vertices, "
                f"n={self.rank_n})")


class ExponentVector:
    """Sparse integer vector over vertex ids; immutable and hashable."""

    __slots__ = ("_entries", "_hash")

    def __init__(self, entries: Mapping[str, int] | Iterable[tuple[str, int]] = ()):
        items = entries.items() if isinstance(entries, Mapping) else entries
        self._entries = {v: e for v, e in items if e}
        self._hash: int | None = None

    @staticmethod
    def unit(v: str) -> "ExponentVector":
        return ExponentVector({v: 1})

    def get(self, v: str) -> int:
        return self._entries.get(v, 0)

    def items(self) -> Iterator[tuple[str, int]]:
        return iter(self._entries.items())

    def support(self) -> frozenset[str]:
        return frozenset(self._entries)

    def grade(self) -> int:
        return sum(self._entries.values())

    def is_zero(self) -> bool:
        return not self._entries

    def __add__(self, other: "ExponentVector") -> "ExponentVector":
        acc = dict(self._entries)
        for v, e in other._entries.items():
            s = acc.get(v, 0) + e
            if s:
                acc[v] = s
            elif v in acc:
                del acc[v]
        return ExponentVector(acc)

    def __sub__(self, other: "ExponentVector") -> "ExponentVector":
        return self + (-other)

    def __neg__(self) -> "ExponentVector":
        return ExponentVector({v: -e for v, e in self._entries.items()})

    def scale(self, c: int) -> "ExponentVector":
        if c == 0:
            return ExponentVector()
        return ExponentVector({v: c * e for v, e in self._entries.items()})

    def __eq__(self, other: object) -> bool:
        return isinstance(other, ExponentVector) and self._entries == other._entries

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._entries.items()))
        return self._hash

    def __repr__(self) -> str:
        if not self._entries:
            return "e{}"
        body = ",".join(f"{v}:{e}" for v, e in sorted(self._entries.items()))
        return "e{" + body + "}"


def _monomial_key(ctx: CommutationContext, k: ExponentVector) -> tuple:
    """Graded-lexicographic key; larger key = larger monomial."""
    dense = tuple(k.get(v) for v in ctx.vertex_ids)
    return (k.grade(), dense)


class TorusElement:
    """Finite sum  sum_k c_k M(k)  with c_k nonzero LaurentScalars."""

    __slots__ = ("ctx", "_terms", "_hash")

    def __init__(self, ctx: CommutationContext,
                 terms: Mapping[ExponentVector, LaurentScalar]
                 | Iterable[tuple[ExponentVector, LaurentScalar]] = ()):
        self.ctx = ctx
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[ExponentVector, LaurentScalar] = {}
        for k, c in items:
            if c.is_zero():
                continue
            if k in acc:
                s = acc[k] + c
                if s.is_zero():
                    del acc[k]
                else:
                    acc[k] = s
            else:
                acc[k] = c
        self._terms = acc
        self._hash: int | None = None

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero(ctx: CommutationContext) -> "TorusElement":
        return TorusElement(ctx)

    @staticmethod
    def one(ctx: CommutationContext) -> "TorusElement":
        return TorusElement(ctx, {ExponentVector(): LaurentScalar.one()})

    @staticmethod
    def scalar(ctx: CommutationContext, c: LaurentScalar) -> "TorusElement":
        return TorusElement(ctx, {ExponentVector(): c})

    # -- queries -----------------------------------------------------------

    def items(self) -> Iterator[tuple[ExponentVector, LaurentScalar]]:
        return iter(self._terms.items())

    def is_zero(self) -> bool:
        return not self._terms

    def num_terms(self) -> int:
        return len(self._terms)

    def coeff(self, k: ExponentVector) -> LaurentScalar:
        return self._terms.get(k, LaurentScalar.zero())

    def leading(self) -> tuple[ExponentVector, LaurentScalar]:
        """Leading term under the graded-lex monomial order."""
        if not self._terms:
            raise ValueError("zero element has no leading term")
        k = max(self._terms, key=lambda k: _monomial_key(self.ctx, k))
        return k, self._terms[k]

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def monomial_data(self) -> tuple[ExponentVector, LaurentScalar]:
        if len(self._terms) != 1:
            raise ValueError("not a monomial")
        return next(iter(self._terms.items()))

    def all_coeffs_nonneg(self) -> bool:
        return all(c.is_nonneg() for c in self._terms.values())

    def sorted_terms(self) -> list[tuple[ExponentVector, LaurentScalar]]:
        return sorted(self._terms.items(),
                      key=lambda kc: _monomial_key(self.ctx, kc[0]),
                      reverse=True)

    # -- ring operations ---------------------------------------------------

    def _check_ctx(self, other: "TorusElement") -> None:
        if self.ctx is not other.ctx and self.ctx != other.ctx:
            raise ContextMismatch("operands from different contexts")

    def __add__(self, other: "TorusElement") -> "TorusElement":
        self._check_ctx(other)
        acc = dict(self._terms)
        for k, c in other._terms.items():
            s = acc.get(k)
            if s is None:
                acc[k] = c
            else:
                s = s + c
                if s.is_zero():
                    del acc[k]
                else:
                    acc[k] = s
        return TorusElement(self.ctx, acc)

    def __neg__(self) -> "TorusElement":
        return TorusElement(self.ctx, {k: -c for k, c in self._terms.items()})

    def __sub__(self, other: "TorusElement") -> "TorusElement":
        return self + (-other)

    def __mul__(self, other: "TorusElement") -> "TorusElement":
        self._check_ctx(other)
        ctx = self.ctx
        n = ctx.rank_n
        acc: dict[ExponentVector, LaurentScalar] = {}
        for k, ck in self._terms.items():
            for t, ct in other._terms.items():
                # M(k) M(t) = xi^{kPt/2} M(k+t); xi^{1/2} = u^n, so the
                # prefactor is u^{n * kPt}: always an integer power of u.
                pref = ctx.pi_pairing(k, t)
                coeff = (ck * ct).shift(n * pref)
                key = k + t
                s = acc.get(key)
                if s is None:
                    if not coeff.is_zero():
                        acc[key] = coeff
                else:
                    s = s + coeff
                    if s.is_zero():
                        del acc[key]
                    else:
                        acc[key] = s
        return TorusElement(ctx, acc)

    def scale(self, c: LaurentScalar) -> "TorusElement":
        if c.is_zero():
            return TorusElement(self.ctx)
        return TorusElement(self.ctx, {k: ck * c for k, ck in self._terms.items()})

    def shift_u(self, exponent: int) -> "TorusElement":
        """Multiply every coefficient by u^exponent."""
        if exponent == 0:
            return self
        return TorusElement(self.ctx,
                            {k: c.shift(exponent) for k, c in self._terms.items()})

    def __pow__(self, m: int) -> "TorusElement":
        if m < 0:
            k, c = self.monomial_data()
            inv = TorusElement(self.ctx, {-k: LaurentScalar.one().exact_div_unit(c)})
            # M(k)M(-k) = 1 exactly (kPk = 0), so monomial inverse is exact.
            return inv ** (-m)
        out = TorusElement.one(self.ctx)
        base = self
        while m:
            if m & 1:
                out = out * base
            base = base * base
            m >>= 1
        return out

    def bar_u(self) -> "TorusElement":
        """Apply u -> u^-1 to every coefficient (the bar involution on
        coefficients; exponent vectors are untouched)."""
        return TorusElement(self.ctx, {k: c.bar() for k, c in self._terms.items()})

    def substitute_one(self) -> dict[ExponentVector, int]:
        """Commutative specialization u -> 1, as exponent -> int coefficient."""
        return {k: c.substitute_one() for k, c in self._terms.items()}

    # -- protocol ----------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, TorusElement)
                and self.ctx == other.ctx and self._terms == other._terms)

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(
                (k, c) for k, c in self._terms.items()))
        return self._hash

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __repr__(self) -> str:
        if not self._terms:
            return "0"
        parts = [f"({c})*M({k})" for k, c in self.sorted_terms()]
        return " + ".join(parts)

    def to_json(self) -> list[dict]:
        return [{"exponents": dict(sorted(k.items())), "coeff": c.to_json()}
                for k, c in self.sorted_terms()]


def weyl_monomial(ctx: CommutationContext, k: ExponentVector
                  | Mapping[str, int]) -> TorusElement:
    """The basis monomial M(k), coefficient 1."""
    if not isinstance(k, ExponentVector):
        k = ExponentVector(k)
    for v, _ in k.items():
        if v not in ctx.vertex_ids:
            raise ValueError(f"exponent on unknown vertex {v!r}")
    return TorusElement(ctx, {k: LaurentScalar.one()})


def torus_mul(a: TorusElement, b: TorusElement) -> TorusElement:
    return a * b


def torus_left_divide(divisor: TorusElement, dividend: TorusElement,
                      step_cap: int = 10 ** 6) -> TorusElement:
    """Solve divisor * q = dividend exactly.

    Requires the divisor's leading coefficient (graded-lex order) to be a
    unit +-u^e.  Raises NotExactlyDivisible when the cancellation loop
    exceeds `step_cap` or the division cannot be exact; on valid cluster
    data this never happens (Laurent phenomenon).
    """
    if divisor.is_zero():
        raise ZeroDivisionError("division by zero torus element")
    ctx = divisor.ctx
    if dividend.is_zero():
        return TorusElement.zero(ctx)
    dividend._check_ctx(divisor)
    lead_k, lead_c = divisor.leading()
    if not lead_c.is_unit_monomial():
        raise NotExactlyDivisible(
            f"divisor leading coefficient {lead_c} is not a unit monomial")
    n = ctx.rank_n
    quotient: dict[ExponentVector, LaurentScalar] = {}
    remainder = dividend
    steps = 0
    while not remainder.is_zero():
        steps += 1
        if steps > step_cap:
            raise NotExactlyDivisible(
                f"cancellation loop exceeded step cap {step_cap}")
        rk, rc = remainder.leading()
        qk = rk - lead_k
        # LT(divisor * c M(qk)) = lead_c * c * u^{n * (lead_k P qk)} M(rk):
        # graded-lex order is translation invariant, so leading terms match.
        pref = ctx.pi_pairing(lead_k, qk)
        qc = rc.exact_div_unit(lead_c.shift(n * pref))
        quotient[qk] = quotient.get(qk, LaurentScalar.zero()) + qc
        remainder = remainder - divisor * TorusElement(ctx, {qk: qc})
    return TorusElement(ctx, quotient)


def quasi_commutation_exponent(a: TorusElement, b: TorusElement) -> int:
    """The integer k with a*b = xi^k * b*a, if one exists."""
    if a.is_zero() or b.is_zero():
        raise ValueError("quasi-commutation undefined for zero elements")
    a._check_ctx(b)
    ctx = a.ctx
    ka, _ = a.leading()
    kb, _ = b.leading()
    k = ctx.pi_pairing(ka, kb)
    # xi^k = u^{2nk}
    if a * b != (b * a).shift_u(2 * ctx.rank_n * k):
        raise NotQuasiCommutative(
            "no single exponent works for all term pairs")
    return k


def weyl_product(ctx: CommutationContext,
                 factors: Sequence[tuple[TorusElement, int]],
                 pair_exp=None) -> TorusElement:
    """Weyl-ordered product [prod_i A_i^{k_i}] of quasi-commuting factors.

    The normalization prefactor is xi^{-1/2 sum_{i<j} k_i k_j P(i,j)} where
    P(i,j) is the quasi-commutation exponent of the factor pair: read from
    `pair_exp(i, j)` (indices into `factors`) when given, computed from the
    factors otherwise.  The result is independent of the factor order.
    """
    items = [(i, f, k) for i, (f, k) in enumerate(factors) if k != 0]
    half_sum = 0
    for a in range(len(items)):
        ia, fa, ka = items[a]
        for b in range(a + 1, len(items)):
            ib, fb, kb = items[b]
            p = pair_exp(ia, ib) if pair_exp is not None \
                else quasi_commutation_exponent(fa, fb)
            half_sum += ka * kb * p
    total = TorusElement.one(ctx)
    for _, f, k in items:
        total = total * f ** k
    return total.shift_u(-ctx.rank_n * half_sum)
