import itertools

import pytest

from qcaw.polygon import (BlockIdentityViolated, NoRotationApplies,
                          NotFlippable, PolygonTriangulation, angle_chart,
                          attach_triangles, build_extended, build_pbar,
                          build_qbar, extended_qc_data, flip_identification,
                          flip_layers, flip_sequence, grid_labels,
                          interior_vertex_ids, parse_star_label, pbar_p3,
                          qc_star_data, quad_chart, reduced_seed, skeleton,
                          star_flip_arc, star_labels)
from qcaw.qseed import (check_compatibility, check_quasi_homomorphism,
                        enumerate_exchange_graph)
from qcaw.quiver import mutate_word


def all_triangulations(m):
    """Every triangulation of P_m by brute force over diagonal sets."""
    cands = [(a, b) for a in range(1, m + 1) for b in range(a + 2, m + 1)
             if not (a == 1 and b == m)]
    out = []
    for combo in itertools.combinations(cands, m - 3):
        try:
            out.append(PolygonTriangulation(m, combo))
        except ValueError:
            continue
    return out


def test_triangulation_counts():
    assert len(all_triangulations(3)) == 1
    assert len(all_triangulations(4)) == 2
    assert len(all_triangulations(5)) == 5


def test_faces_and_flip():
    tri = PolygonTriangulation(4, [(1, 3)])
    assert len(tri.faces) == 2
    new_tri, new_diag = tri.flip((1, 3))
    assert new_diag == (2, 4)
    assert new_tri.diagonals == frozenset({(2, 4)})
    with pytest.raises(NotFlippable):
        tri.quad_corners((1, 2))


def test_quad_corners_clockwise():
    tri = PolygonTriangulation(5, [(1, 3), (1, 4)])
    assert tri.quad_corners((1, 3)) == (1, 2, 3, 4)
    assert tri.quad_corners((1, 4)) == (1, 3, 4, 5)


def test_single_triangle_n2_quiver():
    # three edge vertices joined by a weight-1 cycle of interior arrows
    tri = PolygonTriangulation(3, [])
    q = build_qbar(tri, 2)
    assert len(q.vertices) == 3
    assert not q.mutable
    arrows = q.arrows()
    assert len(arrows) == 3
    assert all(w == 2 for (_, _, w) in arrows)


def test_p4_mutable_counts():
    tri = PolygonTriangulation(4, [(1, 3)])
    assert len(interior_vertex_ids(tri, 2)) == 1
    assert len(interior_vertex_ids(tri, 3)) == 4


def test_qbar_half_arrows_only_between_frozen():
    for m, diags in ((4, [(1, 3)]), (5, [(1, 3), (1, 4)])):
        tri = PolygonTriangulation(m, diags)
        for n in (2, 3):
            q = build_qbar(tri, n)
            for (a, b, w) in q.arrows():
                if w % 2:
                    assert a not in q.mutable and b not in q.mutable


def test_pbar_p3_values():
    assert pbar_p3(3, (1, 1, 1), (1, 1, 1)) == 0
    assert pbar_p3(3, (1, 1, 1), (2, 1, 0)) == 3
    assert pbar_p3(3, (2, 1, 0), (1, 1, 1)) == -3


def test_pbar_p3_antisymmetry_everywhere():
    pts = [(i, j, 4 - i - j) for i in range(5) for j in range(5 - i)
           if (i, j, 4 - i - j) not in ((4, 0, 0), (0, 4, 0), (0, 0, 4))]
    for v in pts:
        for w in pts:
            assert pbar_p3(4, v, w) == -pbar_p3(4, w, v)
            assert pbar_p3(4, v, w) % 4 == 0


def test_skeleton_single_face_is_main_segment():
    tri = PolygonTriangulation(3, [])
    for vid in build_qbar(tri, 3).vertices:
        contributions = skeleton(tri, 3, vid, 0)
        assert len(contributions) == 1


def test_pbar_block_identity_all_small_cases():
    for m in (4, 5):
        for tri in all_triangulations(m):
            for n in (2, 3):
                build_pbar(tri, n, check=True)  # raises on violation


def test_reduced_seed_compatibility_2n():
    for m, n in ((4, 2), (4, 3), (5, 3)):
        for tri in all_triangulations(m):
            rep = check_compatibility(reduced_seed(tri, n))
            assert rep.ok and set(rep.d.values()) == {2 * n}


def test_flip_sequence_lengths():
    tri = PolygonTriangulation(4, [(1, 3)])
    for n, r in ((2, 1), (3, 4), (4, 10)):
        assert len(flip_sequence(tri, n, (1, 3))) == r
    assert [len(l) for l in flip_layers(3)] == [2, 2]


def test_flip_matches_flipped_quiver():
    cases = [(4, [(1, 3)], (1, 3), (2, 3, 4)),
             (5, [(1, 3), (1, 4)], (1, 3), (2, 3)),
             (5, [(1, 3), (1, 4)], (1, 4), (2, 3)),
             (5, [(2, 5), (3, 5)], (3, 5), (2, 3))]
    for m, diags, e, ns in cases:
        tri = PolygonTriangulation(m, diags)
        for n in ns:
            q1 = mutate_word(build_qbar(tri, n), flip_sequence(tri, n, e))
            new_tri, ident = flip_identification(tri, n, e)
            target = build_qbar(new_tri, n)
            relab = q1.relabel(ident)
            assert set(relab.vertices) == set(target.vertices)
            for a in target.vertices:
                for b in target.vertices:
                    assert relab.adj2(a, b) == target.adj2(a, b)


def test_double_flip_restores_quiver_and_pi():
    tri = PolygonTriangulation(4, [(1, 3)])
    n = 3
    seed = reduced_seed(tri, n, labels={})
    word = flip_sequence(tri, n, (1, 3))
    s1 = seed.mutate_word(word)
    new_tri, ident = flip_identification(tri, n, (1, 3))
    back_word_new = flip_sequence(new_tri, n, (2, 4))
    inv = {v: k for k, v in ident.items()}
    back_word = [inv[v] for v in back_word_new]
    s2 = s1.mutate_word(back_word)
    assert s2.quiver._adj2 == seed.quiver._adj2
    assert s2.pi == seed.pi


def test_star_labels_seams_and_rows():
    tri = PolygonTriangulation.star(5)
    labels = star_labels(tri, 3)
    vals = sorted(labels.values())
    assert "10^2" in vals and "11^1" not in vals  # seam keeps j0^(i+1)
    assert "22^3" in vals and "21^2" in vals
    assert len(vals) == len(set(vals))


def test_grid_labels_bigon_vprime():
    ext = build_extended(0, 3)
    assert sorted(ext.vprime) == ["01", "02", "11", "12", "21", "22",
                                  "31", "32"]
    assert sorted(ext.quiver.mutable) == ["11", "12", "21", "22"]


def test_extended_attaches_one_triangle_per_edge():
    star, attach_edges = attach_triangles(2)
    assert star.num_punctures == 8
    assert len(attach_edges) == 4
    star0, edges0 = attach_triangles(0)
    assert star0.num_punctures == 4 and edges0 == [(1, 3)]


def test_extended_compatibility_pair():
    for k in (0, 1):
        for n in (2, 3):
            ext = build_extended(k, n)
            seed = ext.extended_seed()
            for u in seed.quiver.mutable:
                for v in seed.quiver.vertices:
                    total = sum(seed.quiver.adj2(v1, u) // 2
                                * ext.p_ext.get((v1, v), 0)
                                for v1 in seed.quiver.vertices)
                    assert total == (2 * n * n if u == v else 0)


def test_bigon_exchange_graph_counts():
    seed = build_extended(0, 3).extended_seed()
    g = enumerate_exchange_graph(seed, max_seeds=200)
    assert g.num_clusters == 50
    assert len(g.exchangeable_variables()) == 16
    assert not g.truncated


def test_qc_star_seed_unchanged_rows():
    qc, red, image = qc_star_data(2, 3)
    for v in red.quiver.vertices:
        j, s, i = parse_star_label(v)
        if j == 3 or (s == 0 and i == 1):
            assert qc.vars[v] == red.vars[v]


def test_qc_quasi_homomorphism_and_compat():
    for k in (1, 2, 3):
        qc, red, image = qc_star_data(k, 3)
        assert check_quasi_homomorphism(qc, red, image).ok
        rep = check_compatibility(qc)
        assert rep.ok and set(rep.d.values()) == {6}


def test_extended_qc_bigon_quasi_iso():
    for n in (2, 3):
        ext = build_extended(0, n)
        qc, red, image = extended_qc_data(ext)
        assert check_quasi_homomorphism(qc, red, image).ok


def test_angle_chart_diagonal_positions():
    k, n = 2, 3
    tri = PolygonTriangulation.star(k + 2)
    labels = star_labels(tri, n)
    ang = angle_chart(tri, n, k, 2, labels)
    assert set(ang) == {"11", "21", "22"}
    assert len(set(ang.values())) == 3


def test_quad_chart_covers_quadrilateral():
    tri = PolygonTriangulation(4, [(1, 3)])
    chart = quad_chart(tri, 3, (1, 3))
    sts = set(chart.values())
    for s in range(1, 3):
        for t in range(1, 3):
            assert (s, t) in sts
    assert (0, 1) in sts and (3, 2) in sts


def test_apply_flip_runs_full_word():
    from qcaw.polygon import apply_flip
    tri = PolygonTriangulation(4, [(1, 3)])
    seed = reduced_seed(tri, 3, labels={})
    out = apply_flip(seed, tri, 3, (1, 3))
    assert len(out.history) == 4
    assert all(out.vars[v].all_coeffs_nonneg() for v in out.quiver.vertices)
