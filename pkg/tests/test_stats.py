from fractions import Fraction

import pytest

from qdimer.generators import bigon, grid2xm, honeycomb_patch, small_families, zigzag
from qdimer.laurent import QLaurent, qint
from qdimer.multiweb import Multiweb, enumerate_multiwebs
from qdimer.stats import (
    expected_loops,
    expected_loops_uniform,
    expected_twist,
    local_variable_suite,
    loops,
    measure_report,
    snake_partition_functions,
    snake_report,
    twist_of_trace,
    uniform_log_derivative,
    uniform_log_derivative_float,
    uniform_loops_by_enumeration,
    zigzag_closed_form,
)


def test_single_loop_twist_is_one():
    # a lone loop has trace [2] = q + 1/q; f''(1)/f(1) = 2/2
    assert twist_of_trace(qint(2)) == 1
    assert twist_of_trace(QLaurent.one()) == 0


def test_bigon_loops_and_measures():
    G = bigon()
    assert loops(G, Multiweb(2, (1, 1))) == 1
    assert loops(G, Multiweb(2, (2, 0))) == 0
    assert expected_loops(G) == Fraction(1, 2)
    assert expected_loops_uniform(G) == Fraction(1, 3)
    assert uniform_loops_by_enumeration(G) == Fraction(1, 3)


def test_all_doubled_multiweb_has_zero_twist():
    G = grid2xm(3)
    rep = measure_report(G, 2)
    for row in rep.rows:
        if all(k in (0, 2) for k in row.multiweb.mult):
            assert row.twist == 0


def test_partition_function_counts_loops():
    for G in small_families(10):
        rep = measure_report(G, 2)
        for row in rep.rows:
            assert row.trace == qint(2) ** loops(G, row.multiweb)
        assert rep.probabilities_sum_to_one() and rep.consistent


def test_twist_equals_loop_count_for_two():
    for G in small_families(10):
        rep = measure_report(G, 2)
        for row in rep.rows:
            assert row.twist == loops(G, row.multiweb)


def test_uniform_measure_two_routes():
    for G in small_families(10):
        assert expected_loops_uniform(G) == uniform_loops_by_enumeration(G)


def test_uniform_float_cross_check():
    Z = qint(2) * 3 + 2
    assert abs(uniform_log_derivative_float(Z) - float(uniform_log_derivative(Z))) < 1e-12


@pytest.mark.parametrize("m", [1, 2, 3, 5])
def test_zigzag_closed_form(m):
    G = zigzag(m)
    rep = measure_report(G, 2)
    Z = QLaurent.zero()
    for row in rep.rows:
        Z = Z + row.trace
    assert Z == zigzag_closed_form(m)


def test_local_variable_matches_twist():
    G = honeycomb_patch(1, 2)
    for n in (2, 3):
        rep = local_variable_suite(G, n)
        assert rep.ok, rep


def test_snake_recurrence_matches_enumeration():
    zs = snake_partition_functions(5)
    for m in range(1, 5):
        rep = measure_report(grid2xm(m), 2)
        Z = QLaurent.zero()
        for row in rep.rows:
            Z = Z + row.trace
        assert Z == zs[m]


def test_snake_routes_short():
    rep = snake_report(60)
    assert rep.routes_agree()
    nat, uni = rep.relative_errors()
    assert nat < 1e-6 and uni < 1e-6
    assert rep.natural[3] == expected_loops(grid2xm(3))


def test_expected_twist_three():
    G = grid2xm(2)
    rep = measure_report(G, 3)
    assert expected_twist(G, 3) == rep.log_derivative
