import pytest

from qdimer.generators import bigon, cycle, grid2xm, honeycomb_patch, small_families
from qdimer.pgraph import CiliatedPlanarGraph, GraphError, dimer_covers, trivial_ciliation


def test_bigon_inner_face_cilia():
    outward = bigon()
    assert [outward.inward_cilia(f) for f in outward.internal_faces] == [0]
    mixed = bigon("mixed")
    assert [mixed.inward_cilia(f) for f in mixed.internal_faces] == [1]
    assert outward.is_positive_ciliation()
    assert not mixed.is_positive_ciliation()


def test_four_cycle_has_one_square_face():
    G = cycle(2)
    assert [f.length for f in G.internal_faces] == [4]


def test_euler_characteristic():
    for G in small_families(12):
        assert len(G.vertices) - len(G.edges) + len(G.faces) == 2


def test_positive_ciliation_from_every_dimer_cover():
    for G in small_families(8):
        for d in dimer_covers(G):
            assert G.positive_ciliation_from_dimer(d).is_positive_ciliation()


def test_bigon_positive_from_dimer_puts_both_cilia_together():
    G = bigon()
    for d in dimer_covers(G):
        H = G.positive_ciliation_from_dimer(d)
        assert H.inward_cilia(H.internal_faces[0]) in (0, 2)


def test_trivial_ciliation():
    assert bigon().is_trivial_ciliation()
    sq = cycle(2, "trivial")
    assert sq.is_trivial_ciliation()
    assert sq.inward_cilia(sq.internal_faces[0]) == 1
    for G in small_families(12, "trivial"):
        assert G.is_trivial_ciliation()
        assert trivial_ciliation(G).is_trivial_ciliation()


def test_cilium_rotation_and_reflection_are_involutive():
    G = grid2xm(3)
    for v, _ in G.vertices:
        d = G.degree(v)
        H = G
        for _ in range(d):
            H = H.rotate_cilium(v)
        assert H.cilium == G.cilium
    R = G.reflect().reflect()
    assert {v: list(r) for v, r in R.rotation.items()} == {v: list(r) for v, r in G.rotation.items()}
    assert R.cilium == G.cilium


def test_degree_one_rotation():
    G = grid2xm(1)
    v = G.vertices[0][0]
    assert G.rotate_cilium(v).rotate_cilium(v).cilium == G.cilium


def test_json_round_trip():
    G = honeycomb_patch(2, 1)
    H = CiliatedPlanarGraph.loads(G.dumps())
    assert H.cilium == G.cilium
    assert [f.length for f in H.faces] == [f.length for f in G.faces]


def test_malformed_json_is_rejected():
    with pytest.raises(GraphError):
        CiliatedPlanarGraph.from_json({"vertices": [], "edges": []})


def test_linear_order_starts_after_cilium():
    G = grid2xm(3)
    for v, _ in G.vertices:
        rot = list(G.rotation[v])
        c = G.cilium[v]
        assert G.linear_order(v) == rot[c + 1:] + rot[:c + 1]
