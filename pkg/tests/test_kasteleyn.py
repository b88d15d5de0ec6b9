import random

from qdimer.connection import DiagonalConnection, build_quantum_identity, random_monomial_connection
from qdimer.generators import bigon, cycle, grid2xm, small_families
from qdimer.kasteleyn import build_signs, is_kasteleyn, kdet, kdet_matrix, verify_kasteleyn
from qdimer.pgraph import dimer_covers
from qdimer.qalgebra import symbolic_connection, symbolic_kdet_parts, tr_alt


def test_square_face_sign_condition():
    G = cycle(2)
    signs = build_signs(G, 1)
    assert sum(1 for e in G.edges if signs[e.id] < 0) in (1, 3)
    B = bigon()
    bs = build_signs(B, 1)
    assert bs[B.edges[0].id] * bs[B.edges[1].id] == 1


def test_even_rank_positive_cilia_same_as_odd():
    for G in small_families(10, "positive"):
        assert is_kasteleyn(G, build_signs(G, 1), 2)
        assert is_kasteleyn(G, build_signs(G, 2), 1)


def test_classical_reduction():
    for G in small_families(10, "positive"):
        d = len(dimer_covers(G))
        assert abs(kdet(DiagonalConnection.identity(G, 1), G).eval_at_one()) == d
        for n in (2, 3):
            assert abs(kdet(build_quantum_identity(G, n), G).eval_at_one()) == d**n


def test_random_connections_on_four_cycle():
    rng = random.Random(1)
    G = cycle(2)
    for _ in range(20):
        res = verify_kasteleyn(random_monomial_connection(G, 2, rng), G)
        assert res.match and res.sign in (1, -1)


def test_matrix_route_agrees():
    rng = random.Random(2)
    for G in (cycle(2), cycle(3), grid2xm(3)):
        for n in (1, 2):
            conn = random_monomial_connection(G, n, rng)
            assert kdet(conn, G) == kdet_matrix(conn, G)
            assert kdet(conn, G, general=True) == kdet(conn, G)


def test_single_edge_symbolic():
    G = grid2xm(1)
    mats = symbolic_connection(G)
    for n in (2, 3):
        parts = symbolic_kdet_parts(G, n)
        assert parts and all(v == tr_alt(G, m, mats) for m, v in parts)
