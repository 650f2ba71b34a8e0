import random

import pytest

from qcaw.quiver import (FrozenVertexError, SizeMismatch, WeightedQuiver,
                         build_family_quiver, concat_quivers, coframe_column,
                         framed_quiver, is_green, is_red, level_vertices,
                         mutate_quiver, mutate_word, sign_coherent,
                         stack_quivers)


def simple(vertices, arrows, mutable=None):
    adj = {}
    for a, b in arrows:
        adj[(a, b)] = adj.get((a, b), 0) + 2
        adj[(b, a)] = -adj[(a, b)]
    return WeightedQuiver(vertices, vertices if mutable is None else mutable, adj)


def test_single_arrow_flip():
    q = simple(("1", "2"), [("1", "2")])
    m = mutate_quiver(q, "1")
    assert m.adj2("2", "1") == 2 and m.adj2("1", "2") == -2


def test_path_mutation_creates_shortcut():
    q = simple(("1", "2", "3"), [("1", "2"), ("2", "3")])
    m = mutate_quiver(q, "2")
    assert m.adj2("2", "1") == 2
    assert m.adj2("3", "2") == 2
    assert m.adj2("1", "3") == 2


def test_involution_random():
    rng = random.Random(2)
    ids = tuple("abcdef")
    for _ in range(50):
        adj = {}
        for i, a in enumerate(ids):
            for b in ids[i + 1:]:
                w = rng.randint(-2, 2) * 2
                if w:
                    adj[(a, b)] = w
                    adj[(b, a)] = -w
        q = WeightedQuiver(ids, ids[:4], adj)
        k = rng.choice(ids[:4])
        assert mutate_quiver(mutate_quiver(q, k), k)._adj2 == q._adj2


def test_half_arrow_parity_and_skewness_preserved():
    adj = {("f", "g"): 1, ("g", "f"): -1, ("f", "m"): 2, ("m", "f"): -2,
           ("m", "g"): 2, ("g", "m"): -2}
    q = WeightedQuiver(("f", "g", "m"), {"m"}, adj)
    m = mutate_quiver(q, "m")
    for a in m.vertices:
        for b in m.vertices:
            assert m.adj2(a, b) == -m.adj2(b, a)
            if m.adj2(a, b) % 2:
                assert a not in m.mutable and b not in m.mutable


def test_frozen_vertex_error():
    q = simple(("1", "2"), [("1", "2")], mutable=("1",))
    with pytest.raises(FrozenVertexError):
        mutate_quiver(q, "2")


def test_framed_quiver_initially_green_and_mu_turns_red():
    q = simple(("1", "2"), [("1", "2")])
    fq = framed_quiver(q)
    assert all(is_green(fq, v) for v in ("1", "2"))
    fq1 = mutate_quiver(fq, "1")
    assert is_red(fq1, "1") and not is_green(fq1, "1")


def test_a2_maximal_green_sequences():
    # brute-force the A2 pattern: for arrow x -> y the source-first word
    # [x, y, x] is the length-3 maximal green sequence, sink-first [y, x]
    # the length-2 one
    for x, y in (("1", "2"), ("2", "1")):
        q = simple(("1", "2"), [(x, y)])
        for word in ([x, y, x], [y, x]):
            fq = framed_quiver(q)
            for k in word:
                assert is_green(fq, k)
                fq = mutate_quiver(fq, k)
            assert all(is_red(fq, v) for v in ("1", "2"))


def test_sign_coherence_random_green_walks():
    rng = random.Random(17)
    checked = 0
    for _ in range(60):
        nverts = rng.randint(2, 6)
        ids = tuple(str(i) for i in range(nverts))
        adj = {}
        for i, a in enumerate(ids):
            for b in ids[i + 1:]:
                w = rng.randint(-2, 2) * 2
                if w:
                    adj[(a, b)] = w
                    adj[(b, a)] = -w
        fq = framed_quiver(WeightedQuiver(ids, ids, adj))
        for _ in range(rng.randint(1, 10)):
            greens = [v for v in ids if is_green(fq, v)]
            if not greens:
                break
            fq = mutate_quiver(fq, rng.choice(greens))
            assert sign_coherent(fq)
            checked += 1
    assert checked >= 100


def test_family_q1_1():
    q = build_family_quiver("Q1", 1)
    assert set(q.vertices) == {"1_1", "2_0", "2_1"}
    assert q.adj2("2_0", "2_1") == 2
    assert q.adj2("1_1", "2_0") == 2
    assert len(q.arrows()) == 2


def test_family_q2_0_empty_and_q3_extra_arrow():
    q2 = build_family_quiver("Q2", 0)
    assert q2.vertices == ()
    q1 = build_family_quiver("Q1", 2)
    q3 = build_family_quiver("Q3", 2)
    assert len(q3.arrows()) == len(q1.arrows()) + 1
    assert q3.adj2("2_2", "1_2") == 2


def test_concat_single_part_is_family():
    q = concat_quivers([("Q1", 2)])
    base = build_family_quiver("Q1", 2, part=1)
    assert q._adj2 == base._adj2


def test_concat_junction_arrows():
    q = concat_quivers([("Q1", 1), ("Q1", 1)])
    assert q.adj2("1_1[1]", "1_1[2]") == 2
    assert q.adj2("2_1[1]", "2_0[2]") == 2
    assert q.adj2("2_0[2]", "1_1[1]") == 2
    assert len(q.arrows()) == 2 * 2 + 3


def test_stack_identifies_levels():
    top = concat_quivers([("Q1", 1)])
    bottom = concat_quivers([("Q1", 2)])
    s = stack_quivers([top, bottom])
    # top level-2 has 2 vertices, bottom level-1 has 2: identified pairwise
    assert len(s.vertices) == len(top.vertices) + len(bottom.vertices) - 2
    with pytest.raises(SizeMismatch):
        stack_quivers([top, top])
    with pytest.raises(SizeMismatch):
        stack_quivers([])


def test_stack_single_row_unchanged():
    row = concat_quivers([("Q1", 2)])
    s = stack_quivers([row])
    assert len(s.arrows()) == len(row.arrows())


def test_level_vertices_order():
    q = build_family_quiver("Q1", 3)
    assert level_vertices(q, 1) == ["1_1", "1_2", "1_3"]
    assert level_vertices(q, 2) == ["2_0", "2_1", "2_2", "2_3"]


def test_mutate_word_and_coframe():
    q = simple(("1", "2", "3"), [("1", "2"), ("2", "3")])
    fq = framed_quiver(q)
    fq = mutate_word(fq, ["1", "2"])
    col = coframe_column(fq, "2")
    assert col and sign_coherent(fq)
