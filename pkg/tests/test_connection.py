import random

from qdimer.connection import (
    DiagonalConnection,
    build_quantum_identity,
    face_monodromy,
    gauge_transform,
    is_quantum_identity,
    q_identity_matrix,
    random_sl_gauge,
    same_face_monodromies,
    shuffled_tree,
)
from qdimer.generators import bigon, cycle, small_families
from qdimer.laurent import QLaurent, qint, q_power
from qdimer.multiweb import enumerate_multiwebs
from qdimer.qtrace import trace_diagonal


def test_q_identity_matrix():
    assert q_identity_matrix(2) == (q_power(1), q_power(-1))
    assert q_identity_matrix(1) == (QLaurent.one(),)
    for n in range(1, 6):
        total = QLaurent.zero()
        for x in q_identity_matrix(n):
            total = total + x
        assert total == qint(n)


def test_identity_monodromy():
    G = cycle(3)
    conn = DiagonalConnection.identity(G, 3)
    for f in G.internal_faces:
        assert face_monodromy(conn, G, f) == (QLaurent.one(),) * 3


def test_bigon_monodromy_by_hand():
    G = bigon()
    Q = q_identity_matrix(2)
    conn = DiagonalConnection(2, {G.edges[0].id: Q, G.edges[1].id: (QLaurent.one(),) * 2})
    mono = face_monodromy(conn, G, G.internal_faces[0])
    assert mono in (Q, tuple(reversed(Q)))


def test_trivial_ciliation_accepts_identity():
    for G in small_families(10, "trivial"):
        for n in (2, 3):
            assert is_quantum_identity(DiagonalConnection.identity(G, n), G)


def test_cycle_outward_uses_power_on_distinguished_edge():
    for N in range(1, 5):
        G = cycle(N)
        n = 3
        conn = build_quantum_identity(G, n)
        assert is_quantum_identity(conn, G)
        expected = DiagonalConnection.identity(G, n).entries | {
            G.distinguished_edge: tuple(x ** (N - 1) for x in q_identity_matrix(n))
        }
        cand = DiagonalConnection(n, expected)
        assert is_quantum_identity(cand, G)


def test_builder_output_is_classically_trivial():
    for G in small_families(8, "positive"):
        conn = build_quantum_identity(G, 3)
        assert all(x.eval_at_one() == 1 for diag in conn.entries.values() for x in diag)


def test_different_trees_same_monodromy():
    rng = random.Random(5)
    for G in small_families(10, "positive"):
        a = build_quantum_identity(G, 3)
        b = build_quantum_identity(G, 3, shuffled_tree(G, rng))
        assert same_face_monodromies(a, b, G)


def test_gauge_invariance():
    rng = random.Random(9)
    for G in small_families(8):
        conn = build_quantum_identity(G, 2)
        ident = {v: (QLaurent.one(),) * 2 for v, _ in G.vertices}
        assert gauge_transform(conn, G, ident).entries == conn.entries
        moved = gauge_transform(conn, G, random_sl_gauge(G, 2, rng))
        for m in enumerate_multiwebs(G, 2):
            assert trace_diagonal(conn, G, m) == trace_diagonal(moved, G, m)
