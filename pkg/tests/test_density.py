import math

import pytest

from qdimer import _accel
from qdimer.density import (
    green_coefficient,
    green_table,
    morse_check,
    quartic_sum,
    rho_honeycomb,
    finite_patch_expected_loops,
)
from qdimer.generators import honeycomb_patch


def test_low_order_coefficients():
    assert green_coefficient(0, 0) == pytest.approx(1 / 3, abs=1e-12)
    assert green_coefficient(-1, 0) == pytest.approx(1 / 3, abs=1e-12)
    assert green_coefficient(0, -1) == pytest.approx(1 / 3, abs=1e-12)
    assert 2 * green_coefficient(0, 0) * green_coefficient(-1, 0) == pytest.approx(2 / 9, abs=1e-12)


def test_reflection_pair():
    assert green_coefficient(-2, 0) == pytest.approx(green_coefficient(1, 0), abs=1e-12)


def test_table_satisfies_recurrence():
    t = green_table(20)
    assert t.recurrence_residual() < 1e-10
    assert t.error_estimate < 1e-10
    for x, y in ((0, 0), (3, -2), (-5, 4)):
        assert t(x, y) == pytest.approx(green_coefficient(x, y), abs=1e-10)


def test_density_near_one_over_27():
    res = rho_honeycomb(60)
    assert abs(res.rho - 1 / 27) < 1e-5
    assert abs(res.extrapolated - 1 / 27) < 1e-6


def test_backends_agree():
    t = green_table(30)
    plain = quartic_sum(t, use_numba=False)
    if not _accel.USING_NUMBA:
        pytest.skip("numba unavailable")
    assert quartic_sum(t, use_numba=True) == pytest.approx(plain, rel=1e-14)


@pytest.mark.parametrize("a,b", [(1, 1), (1, 2), (2, 2)])
def test_finite_patch_three_routes(a, b):
    rep = finite_patch_expected_loops(honeycomb_patch(a, b))
    assert rep.enumerated == rep.by_local_sum
    assert math.isclose(rep.by_correlations, float(rep.enumerated), abs_tol=1e-9)
    assert rep.morse_failures == 0


def test_morse_rule_on_two_hexagons():
    checked, failures = morse_check(honeycomb_patch(1, 2))
    assert checked > 0 and failures == 0
