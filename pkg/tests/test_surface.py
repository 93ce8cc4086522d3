import numpy as np
import pytest

from qskein.surface import (
    SurfaceError,
    Triangulation,
    annulus,
    polygon,
    sphere_three_marked,
    torus_one_marked,
)


def test_polygon_counts():
    T3 = polygon(3)
    assert len(T3.triangles) == 1 and len(T3.inner_edges) == 0
    T5 = polygon(5)
    assert len(T5.triangles) == 3 and len(T5.inner_edges) == 2
    for n in range(3, 9):
        T = polygon(n)
        T.validate(require_marked=True)
        assert len(T.edges) == 2 * n - 3
        assert len(T.vertices) == n
    with pytest.raises(SurfaceError):
        polygon(2)


def test_annulus_counts():
    A = annulus()
    A.validate(require_marked=True)
    assert len(A.triangles) == 2
    assert sorted(A.inner_edges) == ["d1", "d2"]
    assert sorted(A.boundary_edges) == ["b1", "b2"]
    assert len(A.vertices) == 2


def test_face_matrix_single_triangle():
    T = polygon(3)
    Q = T.face_matrix()
    idx = T.edge_index()
    a, b, c = (idx[e] for e in ("e0_1", "e1_2", "e0_2"))
    # counterclockwise cycle 0 -> 1 -> 2 -> 0
    assert Q[a, b] == 1 and Q[b, c] == 1 and Q[c, a] == 1
    assert np.array_equal(Q, -Q.T)


def test_face_matrix_is_sum_of_triangles():
    T = polygon(4)
    total = sum(T.triangle_face_matrix(t) for t in range(len(T.triangles)))
    assert np.array_equal(T.face_matrix(), total)


def test_row_action_lemma():
    T = polygon(4)
    idx = T.edge_index()
    for t in range(2):
        ea, eb, ec = T.triangle_edges(t)
        # (k Q_t)(c) = k(b) - k(a) for the counterclockwise cycle (a, b, c)
        k = np.zeros(len(T.edges), dtype=int)
        k[idx[eb]] = 1
        assert T.row_action(tuple(k), t)[idx[ec]] == 1
        assert all(v == 0 for v in T.row_action((0,) * len(T.edges), t))
        k[idx[ea]] = 1
        assert T.row_action(tuple(k), t)[idx[ec]] == 0


def test_vertex_matrix_basics():
    T = polygon(5)
    P = T.vertex_matrix()
    idx = T.edge_index()
    assert np.array_equal(P, -P.T)
    assert all(P[i, i] == 0 for i in range(len(T.edges)))
    # edges with no common endpoint commute
    assert P[idx["e1_2"], idx["e3_4"]] == 0


def test_duality_library():
    for T in (polygon(4), polygon(5), polygon(6), annulus()):
        rep = T.duality_check()
        assert rep["ok"], rep


def test_generalized_surfaces():
    T = torus_one_marked()
    T.validate()
    assert T.surface_class == "generalized"
    assert len(T.vertices) == 1 and not T.boundary_edges
    Q = T.face_matrix()
    idx = T.edge_index()
    assert Q[idx["a"], idx["b"]] == 2
    with pytest.raises(SurfaceError):
        T.vertex_matrix()

    S = sphere_three_marked()
    S.validate()
    assert len(S.vertices) == 3
    assert not S.face_matrix().any()


def test_self_folded_triangle():
    # once-punctured monogon: one triangle with two sides glued together
    T = Triangulation(
        [("s0", "s1", "s2")], [("s1", "s2")], {"s0": "a", "s1": "b", "s2": "b"}
    )
    assert T.self_folded[0]
    assert T.surface_class == "generalized"
    assert not T.triangle_face_matrix(0).any()


def test_validation_errors():
    with pytest.raises(SurfaceError):
        Triangulation([("s0", "s1")], [])
    with pytest.raises(SurfaceError):
        Triangulation([("s0", "s1", "s2")], [("s0", "s0")])
    with pytest.raises(SurfaceError):
        Triangulation([("s0", "s1", "s2"), ("s0", "t1", "t2")], [])
    with pytest.raises(SurfaceError):
        # disconnected: two triangles, no gluing, but labels force edges apart
        Triangulation(
            [("s0", "s1", "s2"), ("t0", "t1", "t2")], []
        ).validate()


def test_flip_square_involution():
    T = polygon(4)
    T1, fd = T.flip("e0_2")
    assert fd.a_star == "e1_3"
    assert (fd.b, fd.c, fd.d, fd.e) == ("e0_1", "e1_2", "e2_3", "e0_3")
    assert fd.coincidence == "distinct"
    T1.validate(require_marked=True)
    assert T1.duality_check()["ok"]
    T2, _ = T1.flip("e1_3", new_label="e0_2")
    assert T2.same_as(T)


def test_flip_boundary_rejected():
    with pytest.raises(SurfaceError):
        polygon(4).flip("e0_1")
    with pytest.raises(SurfaceError):
        polygon(4).flip("nope")


def test_pentagon_cycle():
    P = polygon(5)
    cur = P
    edge = "e0_2"
    for _ in range(5):
        cur, fd = cur.flip(edge)
        assert cur.duality_check()["ok"]
        edge = [e for e in cur.inner_edges if e != fd.a_star][0]
    assert cur.same_as(P)


def test_annulus_flip_coincidences():
    A = annulus()
    _, f1 = A.flip("d1")
    _, f2 = A.flip("d2")
    assert {f1.coincidence, f2.coincidence} == {"b=d", "c=e"}


def test_flip_changes_are_local():
    T = polygon(6)
    Q0 = T.face_matrix()
    T1, fd = T.flip("e0_2")
    idx0, idx1 = T.edge_index(), T1.edge_index()
    touched = {fd.a, fd.a_star, fd.b, fd.c, fd.d, fd.e}
    Q1 = T1.face_matrix()
    for e1 in T.edges:
        for e2 in T.edges:
            if e1 in touched or e2 in touched:
                continue
            assert Q0[idx0[e1], idx0[e2]] == Q1[idx1[e1], idx1[e2]]


def test_json_roundtrip():
    for T in (polygon(5), annulus(), torus_one_marked()):
        T2 = Triangulation.from_json(T.to_json())
        assert T2.same_as(T)
        assert T2.vertex_names == T.vertex_names or not T.vertex_names
