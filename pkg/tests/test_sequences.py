import pytest

from qcaw.polygon import InvalidParams
from qcaw.sequences import (canon_star_word, i_delta_order, leftarrow_mu,
                            leftarrow_mu_delta, leftarrow_mu_prec, mu_diamond,
                            mu_diamond_ij, mu_kj, mu_l, mu_r, mu_tilde_diamond,
                            mu_triangle, mu_up, mu1_jd, mubar_kt,
                            named_sequence, row_path)


def test_mu_kj_single():
    assert mu_kj(4, 1) == ["41"]
    assert mu_kj(4, 3) == ["41", "42", "43"]
    with pytest.raises(InvalidParams):
        mu_kj(3, 3)


def test_mubar_kt_order():
    assert mubar_kt(1, 2, 4) == ["13~", "12~"]
    with pytest.raises(InvalidParams):
        mubar_kt(2, 2, 4)


def test_mu_r_and_l():
    assert mu_r(3, 2) == ["31", "32"]
    assert mu_r(3, 0) == []
    assert mu_l(2, 2, 5) == ["24", "23"]
    with pytest.raises(InvalidParams):
        mu_r(3, 3)


def test_mu_diamond_identity_at_one():
    assert mu_diamond(1, 4) == []
    assert mu_diamond(2, 4) == ["21", "32"]
    assert mu_triangle(3, 4) == []
    assert mu_triangle(1, 4) == ["13", "12", "23"]


def test_mu_diamond_ij_convention():
    # i = j leaves only the triangle part
    assert mu_diamond_ij(2, 2, 4) == mu_triangle(2, 4)
    assert mu_diamond_ij(1, 2, 4) == mu_l(1, 1, 4) + mu_triangle(2, 4)


def test_mu_tilde_diamond_s2_expansion():
    # at s = 2 the sweep is the single column mu_{n-1,1} ... mu_{j,1}
    n = 5
    for j in range(2, n):
        assert mu_tilde_diamond(j, 2, n) == [f"{r}1" for r in range(j, n)]
    assert mu_tilde_diamond(3, 3, 4) == ["21", "32"]
    with pytest.raises(InvalidParams):
        mu_tilde_diamond(3, 1, 4)


def test_row_path_and_leftarrow():
    assert row_path(2, 2) == ["21^1", "22^1", "21^2", "22^2"]
    # (j1^1)* is the second-to-last vertex of the row
    w = leftarrow_mu(2, 1, 1, 3, 2)
    assert w == ["21^1", "22^1", "21^2"]
    assert leftarrow_mu(2, 2, 2, 3, 2) == []  # frozen jj^k
    assert canon_star_word(w, 2) == ["21^1", "20^2", "21^2"]


def test_i_delta_order_matches_reduced_word():
    assert i_delta_order(4, 1, 1) == ["31^1", "21^1", "11^1",
                                      "32^1", "22^1", "33^1"]


def test_leftarrow_prec_stops_before_target():
    w1 = leftarrow_mu_prec(2, 1, 1, 3, 2)
    assert w1 == []  # 21^1 is the minimum
    w2 = leftarrow_mu_prec(1, 1, 1, 3, 2)
    assert w2 == leftarrow_mu(2, 1, 1, 3, 2)


def test_mu_up_composition():
    assert mu1_jd(3, 2) == ["31^1", "32^1"]
    assert mu_up(1, 4) == ["31^1", "32^1", "21^1"]
    assert mu_up(2, 4) == ["31^1"]
    with pytest.raises(InvalidParams):
        mu_up(3, 4)


def test_named_sequence_dispatch():
    assert named_sequence("mu_kj", k=3, j=1) == ["31"]
    assert named_sequence("mu_diamond", j=1, n=4) == []
    with pytest.raises(KeyError):
        named_sequence("nope")


def test_leftarrow_mu_delta_covers_triangle():
    w = leftarrow_mu_delta(1, 3, 2)
    assert w[:3] == leftarrow_mu(2, 1, 1, 3, 2)
