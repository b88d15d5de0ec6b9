from math import comb

from qdimer.connection import DiagonalConnection, build_quantum_identity
from qdimer.generators import bigon, cycle, small_families
from qdimer.laurent import QLaurent, qbinom
from qdimer.multiweb import enumerate_edge_colorings, enumerate_multiwebs
from qdimer.pgraph import dimer_covers
from qdimer.qtrace import (
    classical_trace,
    cycle_closed_form,
    identity_partition_function,
    partition_function,
    positivity_report,
    symmetric_after_normalization,
    trace_diagonal,
)


def test_cycle_traces_are_binomials():
    for N in (1, 2, 3):
        G = cycle(N)
        for n in (2, 3, 4):
            conn = build_quantum_identity(G, n)
            for m in enumerate_multiwebs(G, n):
                k = m.mult[0]
                assert trace_diagonal(conn, G, m) == qbinom(n, k).scale_by_power(N * comb(n, 2))
            assert partition_function(conn, G, n) == cycle_closed_form(n)


def test_dimer_covers_trace_to_one():
    for G in small_families(10):
        conn = build_quantum_identity(G, 1)
        for m in enumerate_multiwebs(G, 1):
            assert trace_diagonal(conn, G, m) == QLaurent.one()
            assert classical_trace(G, m) == 1


def test_bigon_partition_functions():
    assert identity_partition_function(bigon(), 2) == QLaurent({-1: 1, 0: 2, 1: 1})
    assert identity_partition_function(bigon("mixed"), 2) == QLaurent({-1: -1, 0: 2, 1: -1})


def test_positive_cilia_give_coloring_counts():
    for G in small_families(10, "positive"):
        for n in (1, 2, 3):
            rep = positivity_report(G, n)
            assert rep.signs == {1} and rep.counts_match
            assert rep.z_one == rep.dimer_count**n


def test_traces_are_palindromic():
    for G in small_families(8):
        for n in (2, 3):
            conn = build_quantum_identity(G, n)
            for m in enumerate_multiwebs(G, n):
                assert symmetric_after_normalization(G, trace_diagonal(conn, G, m), n)


def test_identity_connection_on_trivial_cilia_counts_colorings_with_sign():
    G = cycle(2, "trivial")
    conn = DiagonalConnection.identity(G, 2)
    for m in enumerate_multiwebs(G, 2):
        assert abs(trace_diagonal(conn, G, m).eval_at_one()) == len(enumerate_edge_colorings(G, m))
