from math import comb, factorial

from qdimer.generators import bigon, cycle, grid2xm, small_families
from qdimer.multiweb import (
    Multiweb,
    enumerate_edge_colorings,
    enumerate_half_edge_colorings,
    enumerate_multiwebs,
    split_graph,
    vertex_permutation,
)
from qdimer.pgraph import dimer_covers


def test_cycle_multiplicities_alternate():
    G = cycle(3)
    for n in (2, 3, 4):
        for m in enumerate_multiwebs(G, n):
            k = m.mult[0]
            assert list(m.mult) == [k, n - k] * 3


def test_one_webs_are_dimer_covers():
    for G in small_families(10):
        webs = {frozenset(m.as_dict(G)) for m in enumerate_multiwebs(G, 1)}
        assert webs == {frozenset(d) for d in dimer_covers(G)}


def test_four_cycle_double_webs_by_brute_force():
    G = cycle(2)
    from itertools import product

    brute = []
    for mult in product(range(3), repeat=len(G.edges)):
        try:
            brute.append(Multiweb.from_mapping(G, 2, dict(zip(G.edge_ids, mult))))
        except ValueError:
            pass
    assert sorted(m.mult for m in brute) == sorted(m.mult for m in enumerate_multiwebs(G, 2))
    assert len(brute) == 3


def test_coloring_counts():
    G = cycle(3)
    for n in (2, 3, 4):
        for m in enumerate_multiwebs(G, n):
            assert len(enumerate_edge_colorings(G, m)) == comb(n, m.mult[0])
    for m in enumerate_multiwebs(grid2xm(3), 1):
        assert len(enumerate_edge_colorings(grid2xm(3), m)) == 1


def test_single_edge_half_edge_colorings():
    G = grid2xm(1)
    for n in (1, 2, 3):
        m = Multiweb(n, (n,))
        assert len(enumerate_edge_colorings(G, m)) == 1
        # one subset at each end, no choice
        assert len(enumerate_half_edge_colorings(G, m)) == 1


def test_half_edge_counts_on_cycle():
    G = cycle(2)
    for n in (2, 3):
        for m in enumerate_multiwebs(G, n):
            k = m.mult[0]
            assert len(enumerate_half_edge_colorings(G, m)) == comb(n, k) ** len(G.vertices)


def test_vertex_permutation_lengths():
    G = grid2xm(1)
    v = G.vertices[0][0]
    e = G.edges[0].id
    assert vertex_permutation(G, v, {e: 0b111}) == ([1, 2, 3], 0)
    # reversal: colors listed descending along the linear order
    B = bigon()
    b = B.blacks[0]
    first, second = B.linear_order(b)
    sigma, length = vertex_permutation(B, b, {first: 0b10, second: 0b01})
    assert sigma == [2, 1] and length == comb(2, 2)


def test_split_graph():
    G = grid2xm(1)
    S = split_graph(G, Multiweb(2, (2,)))
    assert len(S.edges) == 2 and len(S.faces) == 2
    H = grid2xm(3)
    for m in enumerate_multiwebs(H, 2):
        S = split_graph(H, m)
        comps = len(S.components())
        assert len(S.vertices) - len(S.edges) + len(S.faces) == 2 * comps
    for m in enumerate_multiwebs(H, 1):
        assert {e.id[0] for e in split_graph(H, m).edges} == set(m.as_dict(H))
