"""Acceptance criteria 1-12, one test each.

Every check prints a single "criterion k PASS|FAIL ..." line. Run under pytest the lines
are repeated in the terminal summary; run directly (python3 tests/test_acceptance.py)
they are printed as each criterion finishes.
"""

from __future__ import annotations

import random
import time
from fractions import Fraction
from itertools import permutations
from math import comb

import pytest

from qdimer.connection import build_quantum_identity, random_monomial_connection
from qdimer.density import finite_patch_expected_loops, green_coefficient, green_table, rho_honeycomb
from qdimer.generators import bigon, cycle, grid2xm, honeycomb_patch, small_families, zigzag
from qdimer.kasteleyn import verify_kasteleyn
from qdimer.laurent import QLaurent, qbinom, qint, q_power
from qdimer.multiweb import enumerate_edge_colorings, enumerate_multiwebs
from qdimer.pgraph import dimer_covers
from qdimer.qalgebra import (
    confluence_check,
    grassmann_checks,
    qdet,
    qdet_col_permuted,
    qdet_row_permuted,
    small_three_web_checks,
    symbolic_connection,
    symbolic_kdet_parts,
    symbolic_matrix,
    tr_alt,
    tr_codet,
)
from qdimer.qtrace import (
    classical_trace,
    cycle_closed_form,
    has_nonnegative_coefficients,
    identity_partition_function,
    partition_function,
    trace_diagonal,
)
from qdimer.rteval import braid_closure, evaluate, from_multiweb, isotopy_suite, kink_report, rt_trace, unknot
from qdimer.stats import (
    expected_twist,
    local_variable_suite,
    loops,
    snake_report,
    twist,
    zigzag_closed_form,
)


def _line(k: int, ok: bool, detail: str, seconds: float) -> str:
    return f"criterion {k:2d} {'PASS' if ok else 'FAIL'} ({seconds:.2f} s) {detail}"


def _timed(fn):
    start = time.perf_counter()
    ok, detail = fn()
    return ok, detail, time.perf_counter() - start


def criterion_1():
    bad = []
    for n in range(1, 6):
        for N in range(1, 7):
            G = cycle(N)
            conn = build_quantum_identity(G, n)
            if partition_function(conn, G, n) != cycle_closed_form(n):
                bad.append(f"Z N={N} n={n}")
            for m in enumerate_multiwebs(G, n):
                k = m.of(G, G.edges[0].id)
                if trace_diagonal(conn, G, m) != qbinom(n, k).scale_by_power(N * comb(n, 2)):
                    bad.append(f"tr N={N} n={n} k={k}")
    return not bad, f"cycles N<=6, n<=5; mismatches {bad or 'none'}"


def criterion_2():
    plus = identity_partition_function(bigon("outward"), 2)
    mixed = identity_partition_function(bigon("mixed"), 2)
    want_plus = QLaurent({-1: 1, 0: 2, 1: 1})
    want_mixed = QLaurent({-1: -1, 0: 2, 1: -1})
    return plus == want_plus and mixed == want_mixed, f"positive {plus}; mixed {mixed}"


def criterion_3():
    rng = random.Random(20240601)
    checked = failures = 0
    signs = set()
    for G in small_families(10):
        for n in (1, 2, 3):
            conns = [build_quantum_identity(G, n)] + [random_monomial_connection(G, n, rng) for _ in range(20)]
            for conn in conns:
                res = verify_kasteleyn(conn, G)
                checked += 1
                failures += not res.match
                signs.add(res.sign)
    # one-edge symbolic case: the blow-up determinant with noncommuting entries equals tr_alt
    G = grid2xm(1)
    mats = symbolic_connection(G)
    symbolic_ok = all(v == tr_alt(G, m, mats) for m, v in symbolic_kdet_parts(G, 2))
    ok = failures == 0 and symbolic_ok
    return ok, f"{checked} diagonal checks, {failures} failures, signs seen {sorted(signs)}; symbolic one-edge {symbolic_ok}"


def criterion_4():
    checked = 0
    bad = []
    for cilia in ("trivial", "positive"):
        for G in small_families(10, cilia):
            for n in (1, 2, 3):
                conn = build_quantum_identity(G, n)
                for m in enumerate_multiwebs(G, n):
                    raw = trace_diagonal(conn, G, m)
                    norm = raw.scale_by_power(-G.N * comb(n, 2))
                    checked += 1
                    if raw.is_zero() or not norm.is_symmetric() or raw.palindromic_shift() != G.N * comb(n, 2):
                        bad.append((G.name, cilia, n, "symmetry"))
                    if cilia == "positive" and not has_nonnegative_coefficients(raw):
                        bad.append((G.name, n, "sign"))
    return not bad, f"{checked} traces; violations {bad[:3] or 'none'}"


def criterion_5():
    bad = []
    checked = 0
    for G in small_families(10, "positive"):
        d = len(dimer_covers(G))
        for n in (1, 2, 3):
            z = identity_partition_function(G, n).eval_at_one()
            if z != d**n:
                bad.append((G.name, n, z, d**n))
            for m in enumerate_multiwebs(G, n):
                checked += 1
                if classical_trace(G, m) != len(enumerate_edge_colorings(G, m)):
                    bad.append((G.name, n, m.mult))
    return not bad, f"Z_1 = dimers^n on all families; {checked} classical traces equal coloring counts; bad {bad[:3] or 'none'}"


def criterion_6():
    graphs = small_families(8) + small_families(8, "positive") + [bigon("mixed")]
    checked = nonproper = 0
    bad = []
    for G in graphs:
        for n in (1, 2, 3):
            conn = build_quantum_identity(G, n)
            for m in enumerate_multiwebs(G, n):
                checked += 1
                nonproper += not m.is_proper()
                try:
                    if rt_trace(G, m) != trace_diagonal(conn, G, m):
                        bad.append((G.name, n, m.mult))
                except ArithmeticError as exc:
                    bad.append((G.name, n, m.mult, str(exc)))
    return not bad, f"{checked} multiwebs ({nonproper} non-proper); mismatches or failed divisions {bad[:3] or 'none'}"


def _sampled_diagrams():
    """Ten closed diagrams: braid closures plus sweeps of non-trivial multiwebs."""
    out = [
        (braid_closure(3, [1, 2, 1]), 2),
        (braid_closure(2, [1, 1, 1]), 2),
        (braid_closure(3, [1, -2, 1, 2]), 2),
        (braid_closure(2, [1, -1, 1]), 3),
        (braid_closure(3, [2, 1, 2, -1]), 3),
    ]
    rng = random.Random(7)
    for G, n in ((bigon(), 2), (grid2xm(3), 2), (cycle(2), 3), (grid2xm(2, "positive"), 3), (cycle(3), 2)):
        webs = [m for m in enumerate_multiwebs(G, n) if not all(k in (0, n) for k in m.mult)]
        out.append((from_multiweb(G, rng.choice(webs)), n))
    return out


def criterion_7():
    unknots = all(evaluate(unknot(), n) == qint(n) and evaluate(unknot("^v"), n) == qint(n) for n in range(1, 5))
    diagrams = _sampled_diagrams()
    rng = random.Random(11)
    reports = [isotopy_suite(d, n, rng) for d, n in diagrams]
    moves = sum(r.r2_checked + r.r3_checked for r in reports)
    iso_ok = all(r.ok and r.r2_checked + r.r3_checked > 0 for r in reports) and len(diagrams) >= 10
    kinks = [kink_report(n) for n in (2, 3)]
    kink_ok = all(k["curl_product_is_one"] and k["vertex_kink_product_is_one"] and k["curl_sides_agree"] for k in kinks)
    detail = (f"unknot=[n] n<=4 {unknots}; {len(diagrams)} diagrams, {moves} R2/R3 moves all invariant {iso_ok}; "
              f"kink x antikink = 1 {kink_ok}")
    return unknots and iso_ok and kink_ok, detail


def criterion_8():
    G = cycle(3)
    m1 = next(m for m in enumerate_multiwebs(G, 3) if m.of(G, G.edges[0].id) == 1)
    x3 = twist(G, m1)
    cyc = all(expected_twist(cycle(N), n) == Fraction(n**3 - n, 12) for n in range(1, 6) for N in range(1, 4))
    x2_bad = 0
    for H in small_families(10):
        conn = build_quantum_identity(H, 2)
        for m in enumerate_multiwebs(H, 2):
            x2_bad += twist(H, m, conn) != loops(H, m)
    var_ok = all(
        local_variable_suite(H, n).ok
        for H in (cycle(2, "trivial"), cycle(3, "trivial"), grid2xm(3), honeycomb_patch(1, 1), zigzag(3))
        for n in (1, 2, 3)
    )
    ok = x3 == Fraction(8, 3) and cyc and x2_bad == 0 and var_ok
    return ok, f"X_3(m_1)={x3}; E(X_n)=(n^3-n)/12 {cyc}; X_2 != L on {x2_bad} multiwebs; Var(Y)=E(X) {var_ok}"


def criterion_9():
    z = {0: QLaurent.one()}
    for m in range(1, 9):
        z[m] = identity_partition_function(grid2xm(m, "positive"), 2)
    two = q_power(1) + q_power(-1)
    rec_ok = z[1] == 1 and z[2] == 2 + two and all(
        z[m] == 2 * z[m - 1] + two * z[m - 2] - z[m - 3] for m in range(3, 9))
    zig_ok = all(identity_partition_function(zigzag(m, "positive"), 2) == zigzag_closed_form(m) for m in range(1, 9))
    rep = snake_report(300)
    e_nat, e_uni = rep.relative_errors()
    ok = rec_ok and zig_ok and rep.routes_agree() and e_nat < 5e-3 and e_uni < 5e-3
    detail = (f"recurrence m<=8 {rec_ok}; zigzag m<=8 {zig_ok}; two coefficient routes agree {rep.routes_agree()}; "
              f"slopes at m=300: natural {rep.natural_slope:.6f} (rel err {e_nat:.1e}), "
              f"uniform {rep.uniform_slope:.6f} (rel err {e_uni:.1e})")
    return ok, detail


def criterion_10():
    res = rho_honeycomb(300)
    b00, bm10 = green_coefficient(0, 0), green_coefficient(-1, 0)
    resid = green_table(300).recurrence_residual()
    rel = abs(res.rho * 27 - 1)
    ok = rel <= 1e-4 and abs(b00 - 1 / 3) <= 1e-9 and abs(bm10 - 1 / 3) <= 1e-9 and resid < 1e-9
    detail = (f"rho(300)={res.rho:.12f} = 1/{res.reciprocal:.6f} (rel dev from 1/27 {rel:.1e}), extrapolated {res.extrapolated:.10f}; "
              f"B00-1/3={b00 - 1 / 3:.1e}, B-10-1/3={bm10 - 1 / 3:.1e}; residual {resid:.1e}; "
              f"table {res.table_seconds:.1f} s, backend {res.backend}")
    return ok, detail


def criterion_11():
    worst = 0.0
    names = []
    for a, b in ((1, 1), (2, 1), (2, 2), (3, 2), (3, 3), (4, 3)):
        G = honeycomb_patch(a, b)
        rep = finite_patch_expected_loops(G)
        assert rep.vertices <= 40
        worst = max(worst, rep.difference)
        names.append(f"{G.name}:{rep.enumerated}")
    return worst <= 1e-10, f"max |enumeration - pair correlations| = {worst:.1e} over {', '.join(names)}"


def criterion_12():
    orders = True
    for n in (2, 3):
        M = symbolic_matrix(0)
        d = qdet(M, n)
        perms = list(permutations(range(1, n + 1)))
        orders &= all(qdet_row_permuted(M, n, s) == d for s in perms)
        orders &= all(qdet_col_permuted(M, n, t) == d for t in perms)
    suite = []
    for G, n in ((grid2xm(1), 2), (grid2xm(1), 3), (bigon(), 2), (bigon(), 3), (bigon("mixed"), 2)):
        mats = symbolic_connection(G)
        for m in enumerate_multiwebs(G, n):
            suite.append(tr_alt(G, m, mats) == tr_codet(G, m, mats))
    small = small_three_web_checks()
    grass = [grassmann_checks(n) for n in (1, 2, 3)]
    grass_ok = all(g["classical_det"] and g["quantum_minor_expansion"] for g in grass)
    confl = confluence_check(trials=500)
    ok = orders and all(suite) and all(small.values()) and grass_ok and confl
    detail = (f"qdet orders {orders}; tr_codet=tr_alt on {len(suite)} instances {all(suite)}; "
              f"small three-web {small}; Grassmann {grass_ok}; confluence x500 {confl}")
    return ok, detail


CRITERIA = {k: globals()[f"criterion_{k}"] for k in range(1, 13)}
BUDGET_SECONDS = {1: 1, 2: 1, 3: 300, 6: 120, 9: 60, 10: 1800, 12: 60}


@pytest.mark.parametrize("number", sorted(CRITERIA))
def test_acceptance_criterion(number, record_acceptance):
    ok, detail, seconds = _timed(CRITERIA[number])
    budget = BUDGET_SECONDS.get(number)
    if budget is not None and seconds > budget:
        ok = False
        detail += f"; over the {budget} s budget"
    record_acceptance(number, _line(number, ok, detail, seconds))
    assert ok, detail


if __name__ == "__main__":
    for k, fn in CRITERIA.items():
        ok, detail, seconds = _timed(fn)
        print(_line(k, ok, detail, seconds), flush=True)
