"""Exact coefficient ring Z[u, u^-1].

Every quantization parameter in this package is an integer power of the
formal half-power u: the deformation parameter is u^2, its n-th root
version scales as xi = u^(2n) and q = u^(2n^2).  Coefficients are Python
ints (arbitrary precision), so all arithmetic is exact.
"""

from __future__ import annotations

from typing import Iterable, Iterator, Mapping


class LaurentScalar:
    """A Laurent polynomial in u with integer coefficients.

    Immutable and hashable.  Zero coefficients are never stored.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[int, int] | Iterable[tuple[int, int]] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[int, int] = {}
        for e, c in items:
            if c:
                acc[e] = acc.get(e, 0) + c
                if not acc[e]:
                    del acc[e]
        self._terms = dict(sorted(acc.items()))
        self._hash: int | None = None

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero() -> "LaurentScalar":
        return _ZERO

    @staticmethod
    def one() -> "LaurentScalar":
        return _ONE

    @staticmethod
    def u_power(exponent: int, coeff: int = 1) -> "LaurentScalar":
        """coeff * u^exponent."""
        return LaurentScalar({exponent: coeff})

    @staticmethod
    def from_int(c: int) -> "LaurentScalar":
        return LaurentScalar({0: c})

    # -- queries -----------------------------------------------------------

    def items(self) -> Iterator[tuple[int, int]]:
        return iter(self._terms.items())

    def is_zero(self) -> bool:
        return not self._terms

    def is_one(self) -> bool:
        return self._terms == {0: 1}

    def is_unit_monomial(self) -> bool:
        """True iff the scalar is +-u^e for some e."""
        return len(self._terms) == 1 and abs(next(iter(self._terms.values()))) == 1

    def is_nonneg(self) -> bool:
        """True iff every coefficient is >= 0."""
        return all(c >= 0 for c in self._terms.values())

    def num_terms(self) -> int:
        return len(self._terms)

    def coeff(self, exponent: int) -> int:
        return self._terms.get(exponent, 0)

    def min_exponent(self) -> int:
        if not self._terms:
            raise ValueError("zero scalar has no exponents")
        return min(self._terms)

    def max_exponent(self) -> int:
        if not self._terms:
            raise ValueError("zero scalar has no exponents")
        return max(self._terms)

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other: "LaurentScalar") -> "LaurentScalar":
        if not isinstance(other, LaurentScalar):
            return NotImplemented
        acc = dict(self._terms)
        for e, c in other._terms.items():
            s = acc.get(e, 0) + c
            if s:
                acc[e] = s
            elif e in acc:
                del acc[e]
        return LaurentScalar(acc)

    def __neg__(self) -> "LaurentScalar":
        return LaurentScalar({e: -c for e, c in self._terms.items()})

    def __sub__(self, other: "LaurentScalar") -> "LaurentScalar":
        return self + (-other)

    def __mul__(self, other: "LaurentScalar") -> "LaurentScalar":
        if isinstance(other, int):
            other = LaurentScalar.from_int(other)
        if not isinstance(other, LaurentScalar):
            return NotImplemented
        acc: dict[int, int] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = e1 + e2
                s = acc.get(e, 0) + c1 * c2
                if s:
                    acc[e] = s
                elif e in acc:
                    del acc[e]
        return LaurentScalar(acc)

    __rmul__ = __mul__

    def shift(self, exponent: int) -> "LaurentScalar":
        """Multiply by u^exponent."""
        if exponent == 0:
            return self
        return LaurentScalar({e + exponent: c for e, c in self._terms.items()})

    def exact_div_unit(self, other: "LaurentScalar") -> "LaurentScalar":
        """Divide by a unit monomial +-u^e."""
        if not other.is_unit_monomial():
            raise ValueError(f"divisor {other} is not a unit monomial")
        (e, c) = next(iter(other._terms.items()))
        out = self.shift(-e)
        return out if c == 1 else -out

    def __pow__(self, k: int) -> "LaurentScalar":
        if k < 0:
            if not self.is_unit_monomial():
                raise ValueError("negative power of a non-unit scalar")
            (e, c) = next(iter(self._terms.items()))
            return LaurentScalar({e * k: c if k % 2 else 1})
        out = _ONE
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def substitute_one(self) -> int:
        """Evaluate at u = 1."""
        return sum(self._terms.values())

    def bar(self) -> "LaurentScalar":
        """The involution u -> u^-1."""
        return LaurentScalar({-e: c for e, c in self._terms.items()})

    # -- protocol ----------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        return isinstance(other, LaurentScalar) and self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(tuple(self._terms.items()))
        return self._hash

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __repr__(self) -> str:
        return f"LaurentScalar({self})"

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for e, c in self._terms.items():
            if e == 0:
                parts.append(f"{c}")
            elif c == 1:
                parts.append(f"u^{e}")
            elif c == -1:
                parts.append(f"-u^{e}")
            else:
                parts.append(f"{c}*u^{e}")
        out = " + ".join(parts)
        return out.replace("+ -", "- ")

    # -- serialization -----------------------------------------------------

    def to_json(self) -> list[list[int]]:
        return [[e, c] for e, c in self._terms.items()]

    @staticmethod
    def from_json(data: Iterable[Iterable[int]]) -> "LaurentScalar":
        return LaurentScalar({int(e): int(c) for e, c in data})


_ZERO = LaurentScalar()
_ONE = LaurentScalar({0: 1})


def scalar_pow_xi(n: int, half_steps: int) -> LaurentScalar:
    """xi^(half_steps/2) at rank n, i.e. u^(n*half_steps); xi = u^(2n)."""
    if n < 1:
        raise ValueError("rank must be >= 1")
    return LaurentScalar.u_power(n * half_steps)


def scalar_is_nonneg(s: LaurentScalar) -> bool:
    return s.is_nonneg()
