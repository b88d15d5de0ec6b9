from qdimer.generators import bigon, cycle, grid2xm, honeycomb_patch, square_grid, zigzag
from qdimer.multiweb import enumerate_multiwebs
from qdimer.pgraph import dimer_covers


def fib(m):
    # f_0 = f_1 = 1, so that the 2 x m grid has f_m covers
    a, b = 1, 1
    for _ in range(m):
        a, b = b, a + b
    return a


def test_cycle_shapes():
    assert len(cycle(1).vertices) == 2 and len(cycle(1).edges) == 2
    assert [f.length for f in cycle(2).internal_faces] == [4]
    for N in range(1, 5):
        for n in range(1, 5):
            assert len(enumerate_multiwebs(cycle(N), n)) == n + 1


def test_snake_dimer_counts():
    for m in range(1, 9):
        assert len(dimer_covers(grid2xm(m))) == fib(m)
        assert len(dimer_covers(zigzag(m))) == m
    G = grid2xm(1)
    assert len(G.vertices) == 2 and len(G.edges) == 1


def test_lattice_patches():
    assert len(honeycomb_patch(1, 1).vertices) == 6
    assert [f.length for f in square_grid(2, 2).internal_faces] == [4]
    # a x b parallelogram of hexagons has 2(a+1)(b+1) - 2 vertices
    for a, b in ((2, 1), (2, 2), (3, 2), (3, 3)):
        assert len(honeycomb_patch(a, b).vertices) == 2 * (a + 1) * (b + 1) - 2
        assert all(f.length == 6 for f in honeycomb_patch(a, b).internal_faces)


def test_cilia_modes():
    assert bigon().is_positive_ciliation()
    for mode in ("trivial", "positive"):
        G = grid2xm(4, mode)
        assert G.is_positive_ciliation() if mode == "positive" else G.is_trivial_ciliation()
