import random

import pytest

from qcaw.scalar import LaurentScalar, scalar_is_nonneg, scalar_pow_xi


def rand_scalar(rng, max_terms=4, max_exp=6, max_coeff=9):
    return LaurentScalar({rng.randint(-max_exp, max_exp): rng.randint(-max_coeff, max_coeff)
                          for _ in range(rng.randint(0, max_terms))})


def test_zero_coefficients_dropped():
    s = LaurentScalar({3: 0, 1: 2, -1: 0})
    assert list(s.items()) == [(1, 2)]
    assert LaurentScalar({2: 1}) - LaurentScalar({2: 1}) == LaurentScalar.zero()


def test_pow_xi_values():
    assert scalar_pow_xi(3, 2) == LaurentScalar.u_power(6)
    assert scalar_pow_xi(3, 0) == LaurentScalar.one()
    assert scalar_pow_xi(2, -3) == LaurentScalar.u_power(-6)


def test_pow_xi_additivity():
    rng = random.Random(7)
    for _ in range(50):
        n = rng.randint(1, 5)
        h1 = rng.randint(-6, 6)
        h2 = rng.randint(-6, 6)
        assert scalar_pow_xi(n, h1) * scalar_pow_xi(n, h2) == scalar_pow_xi(n, h1 + h2)


def test_is_nonneg():
    assert scalar_is_nonneg(LaurentScalar({0: 1, 2: 1}))
    assert not scalar_is_nonneg(LaurentScalar({-1: 1, 1: -1}))
    assert scalar_is_nonneg(LaurentScalar.zero())


def test_ring_axioms_random():
    rng = random.Random(11)
    for _ in range(100):
        a, b, c = (rand_scalar(rng) for _ in range(3))
        assert (a + b) + c == a + (b + c)
        assert a * b == b * a
        assert a * (b + c) == a * b + a * c
        assert (a * b) * c == a * (b * c)


def test_unit_division_and_pow():
    u2 = LaurentScalar.u_power(2)
    s = LaurentScalar({0: 3, 4: -1})
    assert s.shift(2) == s * u2
    assert (s * u2).exact_div_unit(u2) == s
    assert (s * -u2).exact_div_unit(LaurentScalar.u_power(2, -1)) == s
    assert u2 ** -3 == LaurentScalar.u_power(-6)
    assert LaurentScalar.u_power(1, -1) ** -3 == LaurentScalar.u_power(-3, -1)
    with pytest.raises(ValueError):
        s.exact_div_unit(LaurentScalar({0: 2}))


def test_render_and_json_roundtrip():
    s = LaurentScalar({-1: -2, 0: 1, 3: 1})
    assert str(s) == "-2*u^-1 + 1 + u^3"
    assert LaurentScalar.from_json(s.to_json()) == s
