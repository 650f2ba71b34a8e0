import random

import pytest

from qcaw.qseed import (IncompatibleSeed, NegativeMutableExponent, QuantumSeed,
                        check_compatibility, check_quasi_homomorphism,
                        cluster_monomial, enumerate_exchange_graph,
                        gvector_oracle, mutate_seed, seed_from_matrices)
from qcaw.qtorus import ExponentVector, quasi_commutation_exponent, weyl_monomial
from qcaw.quiver import FrozenVertexError, WeightedQuiver
from qcaw.scalar import LaurentScalar


def arrows(*pairs):
    adj = {}
    for a, b in pairs:
        adj[(a, b)] = adj.get((a, b), 0) + 2
        adj[(b, a)] = -adj[(a, b)]
    return adj


def rank1_seed(d=2):
    # one mutable vertex k, one frozen f; Q(f,k)=1, Pi(f,k)=d
    return seed_from_matrices(("f", "k"), ("k",), arrows(("f", "k")),
                              {("f", "k"): d})


def principal_seed(b_adj2, vertices):
    """vertices plus one frozen copy each with Pi = [[0,-dI],[dI,-dB]]."""
    verts = list(vertices) + [v + "f" for v in vertices]
    adj = dict(b_adj2)
    for v in vertices:
        adj[(v + "f", v)] = 2
        adj[(v, v + "f")] = -2
    pi = {}
    d = 1
    for v in vertices:
        pi[(v, v + "f")] = -d
        pi[(v + "f", v)] = d
    for i, a in enumerate(vertices):
        for b in vertices[i + 1:]:
            w = b_adj2.get((a, b), 0) // 2
            if w:
                pi[(a + "f", b + "f")] = -d * w
                pi[(b + "f", a + "f")] = d * w
    return seed_from_matrices(verts, vertices, adj, pi)


def a2_seed():
    return principal_seed(arrows(("1", "2")), ("1", "2"))


def test_compatibility_rank1():
    seed = rank1_seed(d=2)
    rep = check_compatibility(seed)
    assert rep.ok and rep.d == {"k": 2}


def test_compatibility_failure_zero_pi():
    with pytest.raises(IncompatibleSeed):
        seed_from_matrices(("a", "b"), ("a",), arrows(("a", "b")), {})
    seed = seed_from_matrices(("a", "b"), ("a",), arrows(("a", "b")), {},
                              check=False)
    rep = check_compatibility(seed)
    assert not rep.ok


def test_rank1_mutation_formula():
    seed = rank1_seed(d=2)
    out = mutate_seed(seed, "k")
    ek = ExponentVector.unit("k")
    ef = ExponentVector.unit("f")
    expect = weyl_monomial(seed.ctx, ef - ek) + weyl_monomial(seed.ctx, -ek)
    assert out.vars["k"] == expect


def test_mutation_involution_full_state():
    seed = a2_seed()
    back = mutate_seed(mutate_seed(seed, "1"), "1")
    assert back.vars == seed.vars
    assert back.pi == seed.pi
    assert back.gvecs == seed.gvecs
    assert back.quiver._adj2 == seed.quiver._adj2


def test_frozen_mutation_rejected():
    seed = rank1_seed()
    with pytest.raises(FrozenVertexError):
        mutate_seed(seed, "f")


def test_d_preserved_and_pi_consistent_along_words():
    rng = random.Random(23)
    seed = a2_seed()
    d0 = check_compatibility(seed).d
    s = seed
    for _ in range(6):
        k = rng.choice(["1", "2"])
        s = mutate_seed(s, k)  # verify_pi on by default
        rep = check_compatibility(s)
        assert rep.ok and rep.d == d0
        for a in s.quiver.vertices:
            for b in s.quiver.vertices:
                if a != b:
                    got = quasi_commutation_exponent(s.vars[a], s.vars[b])
                    assert got == s.pi_entry(a, b)


def test_laurent_phenomenon_a2_positivity():
    seed = a2_seed()
    s = seed
    for k in ("1", "2", "1", "2", "1"):
        s = mutate_seed(s, k)
        for v in s.quiver.mutable:
            assert s.vars[v].all_coeffs_nonneg()


def test_cluster_monomial():
    seed = a2_seed()
    ev = ExponentVector({"1": 1, "1f": 1})
    m = cluster_monomial(seed, ev, variant="plus")
    for v in seed.quiver.vertices:
        assert quasi_commutation_exponent(m, seed.vars[v]) == \
            seed.pi_entry("1", v) + seed.pi_entry("1f", v)
    assert cluster_monomial(seed, ExponentVector.unit("2")) == seed.vars["2"]
    with pytest.raises(NegativeMutableExponent):
        cluster_monomial(seed, ExponentVector({"1f": -1}), variant="plus")
    # frozen inversion allowed under the other variant
    cluster_monomial(seed, ExponentVector({"1f": -1}), variant="frozen_inverted")
    with pytest.raises(NegativeMutableExponent):
        cluster_monomial(seed, ExponentVector({"1": -1}),
                         variant="frozen_inverted")


def test_exchange_graph_a1():
    seed = seed_from_matrices(("x", "xf"), ("x",), arrows(("xf", "x")),
                              {("xf", "x"): 1})
    g = enumerate_exchange_graph(seed, max_seeds=10)
    assert g.num_clusters == 2
    assert len(g.variables) == 3  # two exchangeable plus the frozen one
    assert len(g.exchangeable_variables()) == 2
    assert not g.truncated


def test_exchange_graph_a2_pentagon():
    g = enumerate_exchange_graph(a2_seed(), max_seeds=20)
    assert g.num_clusters == 5
    assert len(g.exchangeable_variables()) == 5
    assert not g.truncated


def test_exchange_graph_truncation():
    g = enumerate_exchange_graph(a2_seed(), max_seeds=2)
    assert g.truncated and g.num_clusters == 2


def test_gvectors_match_commutative_oracle_a2():
    rng = random.Random(31)
    seed = a2_seed()
    for _ in range(10):
        word = [rng.choice(["1", "2"]) for _ in range(rng.randint(0, 6))]
        s = seed.mutate_word(word)
        oracle = gvector_oracle(seed.quiver, word)
        for v in seed.quiver.vertices:
            assert s.gvecs[v] == oracle[v], (word, v)


def test_quasi_homomorphism_identity():
    seed = a2_seed()
    image = {v: ExponentVector.unit(v) for v in seed.quiver.vertices}
    rep = check_quasi_homomorphism(seed, seed, image)
    assert rep.ok


def test_quasi_homomorphism_detects_perturbation():
    seed = a2_seed()
    image = {v: ExponentVector.unit(v) for v in seed.quiver.vertices}
    image["1"] = image["1"] + ExponentVector.unit("2f")
    rep = check_quasi_homomorphism(seed, seed, image)
    assert not rep.cond3 or not rep.cond4
    assert not rep.ok


def test_seed_json_shape():
    seed = rank1_seed()
    js = seed.to_json()
    assert js["schema"] == "qcaw/1"
    assert js["vertices"] == ["f", "k"]
    assert js["mutable"] == ["k"]
    assert js["history"] == []
