from collections import Counter

import pytest

from qcaw.qseed import enumerate_exchange_graph
from qcaw.sl3bigon import (ALPHA, ALPHA_REV, CATALOGUE, FROZEN_IDS,
                           LabeledArc, all_labeled_arcs, all_tagged_arcs,
                           all_variable_ids, arc_compatible, bigon_catalogue,
                           bigon_seed, catalogue_json, cluster_to_system,
                           corner_set, enumerate_arc_systems,
                           enumerate_clusters_combinatorial,
                           enumerate_systems, enumerate_tagged_triangulations,
                           id_arc, system_case, tagged_arc_compatible,
                           variables_compatible,
                           weighted_system_to_cluster_monomial)


def test_arc_inventory():
    assert len(all_labeled_arcs()) == 18
    assert len(all_variable_ids()) == 20
    assert len([v for v in all_variable_ids() if v not in FROZEN_IDS]) == 16


def test_arc_compatibility_basics():
    b13, b31 = id_arc("b13"), id_arc("b31")
    assert arc_compatible(b13, b31)
    b22, rb22 = id_arc("b22"), id_arc("b~22")
    assert not arc_compatible(b22, rb22)  # state-2 boundary exception
    for a in all_labeled_arcs():
        assert arc_compatible(a, a)
        for b in all_labeled_arcs():
            assert arc_compatible(a, b) == arc_compatible(b, a)


def test_strong_vs_weak():
    b11, rb33 = id_arc("b11"), id_arc("b~33")
    assert arc_compatible(b11, rb33)
    assert not arc_compatible(b11, rb33, strong=True)
    b12, rb21 = id_arc("b12"), id_arc("b~21")
    if (b12.left - rb21.left) * (b12.right - rb21.right) > 0:
        assert arc_compatible(b12, rb21, strong=True)


def test_variables_compatible_examples():
    assert variables_compatible("b13", "b31")
    assert variables_compatible(ALPHA, "b11")
    assert variables_compatible(ALPHA, "b~33")
    assert not variables_compatible(ALPHA, ALPHA_REV)
    assert not variables_compatible("b11", "b~33")
    for f in FROZEN_IDS:
        for g in all_variable_ids():
            assert variables_compatible(f, g)


def test_system_counts_and_breakdown():
    arc_systems = enumerate_arc_systems()
    assert len(arc_systems) == 42
    systems = enumerate_systems()
    assert len(systems) == 50
    cases = Counter(s.case() for s in systems)
    assert cases["case1-crossing"] == 26
    assert cases["case1-plain"] == 8
    assert cases["case2"] == 16
    for s in systems:
        assert len(s.arcs) == 8
        for f in FROZEN_IDS:
            assert id_arc(f) in s.arcs


def test_clusters_and_bijections():
    clusters = enumerate_clusters_combinatorial()
    assert len(clusters) == 50
    imgs = {cluster_to_system(c) for c in clusters}
    assert imgs == set(enumerate_systems())
    for c in clusters:
        assert len(c) == 8
        assert sum(1 for v in c if v in FROZEN_IDS) == 4


def test_tagged_triangulations():
    assert len(all_tagged_arcs()) == 16
    tts = enumerate_tagged_triangulations()
    assert len(tts) == 50
    assert all(len(t) == 4 for t in tts)
    by_name = {str(t): t for t in all_tagged_arcs()}
    assert tagged_arc_compatible(by_name["g1"], by_name["g1^tag"])
    assert not tagged_arc_compatible(by_name["g1"], by_name["g2^tag"])
    assert tagged_arc_compatible(by_name["g13"], by_name["g31"])
    assert not tagged_arc_compatible(by_name["g13"], by_name["g24"])


def test_weighted_system_monomials():
    sys0 = next(s for s in enumerate_arc_systems()
                if system_case(s) == "case1-plain")
    weights = {a: 0 for a in sys0}
    cluster, exps = weighted_system_to_cluster_monomial(sys0, weights)
    assert all(e == 0 for e in exps.values())
    weights = {a: 2 for a in sys0}
    cluster, exps = weighted_system_to_cluster_monomial(sys0, weights)
    assert all(e == 2 for e in exps.values())  # strong-only: raw weights

    sys2 = next(s for s in enumerate_arc_systems()
                if id_arc("b11") in s and id_arc("b~33") in s)
    weights = {a: 0 for a in sys2}
    weights[id_arc("b11")] = 3
    weights[id_arc("b~33")] = 1
    cluster, exps = weighted_system_to_cluster_monomial(sys2, weights)
    assert exps[ALPHA] == 1
    assert exps["b11"] == 2
    assert "b~33" not in exps
    with pytest.raises(ValueError):
        weighted_system_to_cluster_monomial(sys2, {id_arc("b11"): -1})


def test_corner_sets():
    assert corner_set(ALPHA) == [id_arc("b~33"), id_arc("b11")]
    assert corner_set(ALPHA_REV) == [id_arc("b33"), id_arc("b~11")]
    assert corner_set("b12") == [id_arc("b12")]


def test_catalogue_realizes_all_variables():
    seed = bigon_seed()
    cat = bigon_catalogue(seed)
    assert len(cat) == 16
    elements = [el for (_, _, el) in cat.values()]
    assert len(set(elements)) == 16
    g = enumerate_exchange_graph(seed, max_seeds=200)
    assert set(elements) == g.exchangeable_variables()
    arcs = {str(arc) for (arc, _, _) in cat.values()}
    assert len(arcs) == 16


def test_catalogue_initial_assignments():
    seed = bigon_seed()
    cat = bigon_catalogue(seed)
    assert cat["b~33"][2] == seed.vars["11"]
    assert cat["b~32"][2] == seed.vars["21"]
    assert cat["b33"][2] == seed.vars["22"]
    assert cat["b23"][2] == seed.vars["12"]
    assert cat["b~23"][0].kind == "diag"


def test_catalogue_json_shape():
    data = catalogue_json()
    assert len(data) == 16
    row = data[0]
    assert set(row) == {"variable_id", "tagged_arc", "mutation_word",
                        "exponent_support"}


def test_catalogue_matches_committed_golden():
    import json
    import pathlib
    golden = json.loads((pathlib.Path(__file__).parent / "goldens"
                         / "bigon_catalogue.json").read_text())
    assert catalogue_json() == golden
