from itertools import permutations

from qdimer.generators import bigon, grid2xm
from qdimer.laurent import QLaurent, q_power
from qdimer.multiweb import Multiweb, enumerate_multiwebs
from qdimer.qalgebra import (
    NCPoly,
    QGrassmann,
    berezin_integral,
    bilinear_form,
    confluence_check,
    diagonal_matrix,
    grassmann_checks,
    normal_form,
    q_exponential,
    qdet,
    qdet_col_permuted,
    qdet_row_permuted,
    selftest,
    small_three_web_checks,
    symbolic_connection,
    symbolic_matrix,
    tr_alt,
    tr_codet,
)

Q_MINUS = QLaurent({1: 1, -1: -1})


def gen(i, j):
    return NCPoly.gen(0, i, j)


def test_rewrite_examples():
    d_then_a = normal_form([(0, 2, 2), (0, 1, 1)])
    assert d_then_a == gen(1, 1) * gen(2, 2) - gen(1, 2) * gen(2, 1) * Q_MINUS
    assert normal_form([(0, 1, 2), (0, 2, 1)]) == gen(1, 2) * gen(2, 1)
    assert normal_form([(0, 2, 1), (0, 1, 2)]) == gen(1, 2) * gen(2, 1)


def test_confluence_five_hundred_trials():
    assert confluence_check(trials=500)


def test_two_by_two_qdet():
    M = symbolic_matrix(0)
    assert qdet(M, 2) == M(1, 1) * M(2, 2) - M(1, 2) * M(2, 1) * q_power(1)
    assert qdet_col_permuted(M, 2, (2, 1)) == qdet(M, 2)


def test_qdet_orders():
    M = symbolic_matrix(0)
    for n in (2, 3):
        d = qdet(M, n)
        for s in permutations(range(1, n + 1)):
            assert qdet_row_permuted(M, n, s) == d
            assert qdet_col_permuted(M, n, s) == d


def test_diagonal_qdet_is_product():
    diag = [QLaurent.monomial(k) for k in (1, 4, -2)]
    assert qdet(diagonal_matrix(diag), 3) == NCPoly.const(QLaurent.monomial(3))


def test_single_edge_traces():
    G = grid2xm(1)
    mats = symbolic_connection(G)
    m = Multiweb(2, (2,))
    want = qdet(mats[G.edges[0].id], 2) * q_power(1)
    assert tr_alt(G, m, mats) == want == tr_codet(G, m, mats)


def test_small_three_web():
    assert all(small_three_web_checks().values())


def test_codet_equals_alt_on_bigon():
    for cilia in ("outward", "mixed"):
        G = bigon(cilia)
        mats = symbolic_connection(G)
        for n in (2, 3):
            for m in enumerate_multiwebs(G, n):
                assert tr_alt(G, m, mats) == tr_codet(G, m, mats)


def test_grassmann_rank_one():
    M = symbolic_matrix(0)
    x = bilinear_form(lambda i, j: M(i, j) * -1, 1)
    e = q_exponential(x, 1)
    assert e.coefficient([]) == NCPoly.const(1)
    assert berezin_integral(e, 1) == M(1, 1)


def test_grassmann_identities():
    for n in (1, 2, 3):
        rep = grassmann_checks(n)
        assert rep["classical_det"]
        assert rep["quantum_minor_expansion"]
        assert rep["power_identity"]
        assert rep["pair_reordering"]
        assert rep["integral_closed_form"]


def test_selftest_all_true():
    res = selftest()
    assert res and all(res.values()), [k for k, v in res.items() if not v]
