import random

import pytest

from qdimer.generators import bigon, cycle, grid2xm, small_families
from qdimer.laurent import QLaurent, qint
from qdimer.multiweb import enumerate_multiwebs
from qdimer.qtrace import trace_diagonal
from qdimer.connection import build_quantum_identity
from qdimer.rteval import (
    DiagramError,
    Slice,
    WebDiagram,
    braid_closure,
    evaluate,
    from_multiweb,
    isotopy_suite,
    kink_report,
    rt_matches_planar,
    rt_trace,
    unknot,
)


def test_empty_diagram_is_one():
    assert evaluate(WebDiagram(), 3) == QLaurent.one()


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_unknot_is_quantum_integer(n):
    assert evaluate(unknot("v^"), n) == qint(n)
    assert evaluate(unknot("^v"), n) == qint(n)


def test_disjoint_unknots_multiply():
    two = WebDiagram(unknot().slices + unknot().slices)
    for n in (2, 3):
        assert evaluate(two, n) == qint(n) * qint(n)


def test_unlinked_braid_closure():
    # sigma sigma^-1 on two strands is two unknots
    assert evaluate(braid_closure(2, [1, -1]), 2) == qint(2) * qint(2)


def test_text_round_trip():
    d = braid_closure(3, [1, 2, -1])
    back = WebDiagram.from_text(d.to_text())
    assert back.slices == d.slices and back.bottom == d.bottom


def test_malformed_diagram_rejected():
    with pytest.raises(DiagramError):
        WebDiagram([Slice("cap", 0, "v^")]).signatures()
    with pytest.raises(DiagramError):
        WebDiagram.from_text("bogus @0")


def test_isotopy_moves_preserve_value():
    d = braid_closure(3, [1, 2, 1, -2])
    rep = isotopy_suite(d, 2, random.Random(3))
    assert rep.ok and rep.r2_checked and rep.commute_checked


def test_from_multiweb_closed():
    G = grid2xm(2)
    for m in enumerate_multiwebs(G, 2):
        assert from_multiweb(G, m).is_closed()


def test_rt_trace_matches_planar_trace():
    for G in small_families(8, "positive"):
        for n in (2, 3):
            for m in enumerate_multiwebs(G, n):
                assert rt_matches_planar(G, m), (G.name, m)


def test_bigon_rt_trace():
    G = bigon("positive")
    conn = build_quantum_identity(G, 2)
    for m in enumerate_multiwebs(G, 2):
        assert rt_trace(G, m) == trace_diagonal(conn, G, m)


@pytest.mark.parametrize("n", [2, 3])
def test_kinks_are_consistent(n):
    rep = kink_report(n)
    assert rep["curl_sides_agree"]
    assert rep["curl_product_is_one"]
    assert rep["vertex_kink_product_is_one"]
    assert rep["vertex_kink_matches_power"]
