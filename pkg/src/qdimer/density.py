"""Double-dimer loop density on the honeycomb.

The infinite-lattice value comes from the Fourier coefficients B[x, y] of 1/(1 + z + w)
and a quartic correlation series. A finite patch is cross-checked by exact enumeration
against the same pair-correlation expansion built from its own inverse Kasteleyn matrix.

Inner residue: integrating out z leaves, for fixed w = e^{i theta},
  x >= 0:  (-1)^x (1 + w)^(-x-1)        when |1 + w| > 1, i.e. theta in (-2pi/3, 2pi/3)
  x <= -1: (-1)^(-x-1) (1 + w)^(-x-1)   when |1 + w| < 1, i.e. theta in (2pi/3, 4pi/3)
and zero otherwise, so B[x, y] = (1/2pi) * integral of that times w^(-y) d theta.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import product

import numpy as np
from scipy import integrate

from . import _accel
from .kasteleyn import build_signs
from .pgraph import BLACK, CiliatedPlanarGraph, dimer_covers
from .stats import expected_loops

CONSTANT_TERM = -1 / 54 + 1 / (6 * math.sqrt(3) * math.pi)
QUAD_TOL = 1e-10


def _theta_window(x: int) -> tuple[float, float]:
    if x >= 0:
        return -2 * math.pi / 3, 2 * math.pi / 3
    return 2 * math.pi / 3, 4 * math.pi / 3


def _inner_residue(x: int, theta):
    w = np.exp(1j * theta)
    sign = (-1) ** (x if x >= 0 else -x - 1)
    return sign * (1 + w) ** (-x - 1)


def green_coefficient(x: int, y: int, tol: float = QUAD_TOL) -> float:
    """B[x, y] by adaptive quadrature of the one-dimensional residue integral."""
    lo, hi = _theta_window(x)

    def integrand(theta):
        return (_inner_residue(x, theta) * np.exp(-1j * y * theta)).real

    value, err = integrate.quad(integrand, lo, hi, epsabs=tol, epsrel=0, limit=1000)
    if err > tol:
        raise ArithmeticError(f"quadrature for B[{x},{y}] did not converge (error {err:.2e})")
    return value / (2 * math.pi)


def _fill_table(span: int, nodes: int) -> np.ndarray:
    """B[x, y] for |x|, |y| <= span by Gauss-Legendre with `nodes` points per theta window."""
    coords = np.arange(-span, span + 1)
    t, wts = np.polynomial.legendre.leggauss(nodes)
    out = np.empty((coords.size, coords.size))
    for nonnegative in (True, False):
        sel = coords >= 0 if nonnegative else coords < 0
        xs = coords[sel]
        lo, hi = _theta_window(0 if nonnegative else -1)
        theta = 0.5 * (hi - lo) * t + 0.5 * (hi + lo)
        weight = 0.5 * (hi - lo) * wts
        one_plus_w = 1 + np.exp(1j * theta)
        signs = (-1.0) ** xs if nonnegative else (-1.0) ** (-xs - 1)
        inner = signs[:, None] * one_plus_w[None, :] ** (-xs - 1)[:, None]
        fourier = weight[:, None] * np.exp(-1j * np.outer(theta, coords))
        out[sel, :] = (inner @ fourier).real / (2 * math.pi)
    return out


@dataclass
class GreenTable:
    cutoff: int
    nodes: int
    values: np.ndarray = field(repr=False)
    error_estimate: float
    seconds: float

    @property
    def span(self) -> int:
        return self.cutoff + 2

    def __call__(self, x: int, y: int) -> float:
        return float(self.values[x + self.span, y + self.span])

    def recurrence_residual(self) -> float:
        """max |B[x,y] + B[x-1,y] + B[x,y-1] - delta| over the table."""
        B = self.values
        res = B[1:, 1:] + B[:-1, 1:] + B[1:, :-1]
        res[self.span - 1, self.span - 1] -= 1.0
        return float(np.abs(res).max())

    def rows(self):
        for i, x in enumerate(range(-self.span, self.span + 1)):
            for j, y in enumerate(range(-self.span, self.span + 1)):
                yield x, y, float(self.values[i, j])


def default_nodes(cutoff: int) -> int:
    # the integrand oscillates roughly (cutoff + cutoff/2) times across a window
    return max(400, 10 * cutoff)


@lru_cache(maxsize=4)
def green_table(cutoff: int, nodes: int | None = None, estimate_error: bool = True) -> GreenTable:
    """Table of B[x, y] for |x|, |y| <= cutoff + 2, computed once per (cutoff, nodes)."""
    nodes = default_nodes(cutoff) if nodes is None else nodes
    start = time.perf_counter()
    values = _fill_table(cutoff + 2, nodes)
    err = float("nan")
    if estimate_error:
        finer = _fill_table(cutoff + 2, nodes + nodes // 3)
        err = float(np.abs(finer - values).max())
    return GreenTable(cutoff, nodes, values, err, time.perf_counter() - start)


# quartic series


@_accel.njit(cache=True)
def _quartic_sum_kernel(B, span, cutoff):
    """Neumaier-compensated sum of B[x,y]^2 (B[-1-x,-y]^2 - B[-2-x,-y] B[-x,-y]) over |x|,|y| <= cutoff."""
    total = 0.0
    carry = 0.0
    for x in range(-cutoff, cutoff + 1):
        for y in range(-cutoff, cutoff + 1):
            b = B[x + span, y + span]
            m1 = B[-1 - x + span, -y + span]
            m2 = B[-2 - x + span, -y + span]
            m0 = B[-x + span, -y + span]
            term = b * b * (m1 * m1 - m2 * m0)
            t = total + term
            if abs(total) >= abs(term):
                carry += (total - t) + term
            else:
                carry += (term - t) + total
            total = t
    return total + carry


def _quartic_sum_numpy(B: np.ndarray, span: int, cutoff: int) -> float:
    xs = np.arange(-cutoff, cutoff + 1)
    X, Y = xs[:, None], xs[None, :]
    b = B[X + span, Y + span]
    m1 = B[-1 - X + span, -Y + span]
    m2 = B[-2 - X + span, -Y + span]
    m0 = B[-X + span, -Y + span]
    return math.fsum((b * b * (m1 * m1 - m2 * m0)).ravel())


def quartic_sum(table: GreenTable, cutoff: int | None = None, use_numba: bool | None = None) -> float:
    cutoff = table.cutoff if cutoff is None else cutoff
    if cutoff > table.cutoff:
        raise ValueError("cutoff exceeds the table")
    use_numba = _accel.USING_NUMBA if use_numba is None else use_numba
    if use_numba:
        return float(_quartic_sum_kernel(table.values, table.span, cutoff))
    return _quartic_sum_numpy(table.values, table.span, cutoff)


@dataclass
class DensityResult:
    cutoff: int
    rho: float
    constant: float
    series: float
    table_error: float
    table_seconds: float
    backend: str
    tail: float = float("nan")

    @property
    def reciprocal(self) -> float:
        return 1 / self.rho

    @property
    def extrapolated(self) -> float:
        return self.rho + self.tail


def rho_honeycomb(cutoff: int, nodes: int | None = None) -> DensityResult:
    """Loop density per vertex with the correlation series truncated at |x|, |y| <= cutoff."""
    if cutoff < 10:
        raise ValueError("need cutoff >= 10")
    table = green_table(cutoff, nodes)
    series = 0.5 * quartic_sum(table)
    # the truncation error was measured to fall like R^-2, so rho(R) - rho(R/2) is three tails
    half = 0.5 * quartic_sum(table, cutoff // 2)
    tail = (series - half) * (cutoff // 2) ** 2 / (cutoff**2 - (cutoff // 2) ** 2)
    return DensityResult(
        cutoff, CONSTANT_TERM + series, CONSTANT_TERM, series, table.error_estimate, table.seconds,
        _accel.backend(), tail,
    )


def convergence_profile(cutoffs=(20, 40, 80, 160, 300)) -> list[tuple[int, float]]:
    """(R, rho(R)) from one table at the largest cutoff."""
    top = max(cutoffs)
    table = green_table(top)
    return [(R, CONSTANT_TERM + 0.5 * quartic_sum(table, R)) for R in cutoffs]


# finite patches


def _turn_sign(G: CiliatedPlanarGraph, v, arrive_from, leave_to) -> int:
    """+1 or -1 at a local max/min of the oriented path arrive_from -> v -> leave_to, else 0.

    Counted positive: left-to-right minima and right-to-left maxima.
    """
    xv, yv = G.positions[v]
    xa, ya = G.positions[arrive_from]
    xd, yd = G.positions[leave_to]
    if ya > yv and yd > yv:
        return 1 if xa < xd else -1
    if ya < yv and yd < yv:
        return 1 if xa > xd else -1
    return 0


def turn_table(G: CiliatedPlanarGraph) -> dict:
    """(v, first-color edge, second-color edge) -> contribution to the local sum.

    Loops are oriented black to white along first-color edges, so a white vertex is
    entered along its first-color edge and a black vertex along its second-color edge.
    """
    ends = {e.id: (e.black, e.white) for e in G.edges}
    table = {}
    for v, color in G.vertices:
        for a in G.rotation[v]:
            for b in G.rotation[v]:
                if a == b:
                    continue
                na = ends[a][0] if ends[a][1] == v else ends[a][1]
                nb = ends[b][0] if ends[b][1] == v else ends[b][1]
                if color == BLACK:
                    s = _turn_sign(G, v, nb, na)
                else:
                    s = _turn_sign(G, v, na, nb)
                if s:
                    table[(v, a, b)] = s
    return table


def _edge_at(cover, G: CiliatedPlanarGraph) -> dict:
    at = {}
    for eid in cover:
        e = G.edges[G.edge_index[eid]]
        at[e.black] = eid
        at[e.white] = eid
    return at


def local_sum(G: CiliatedPlanarGraph, first: tuple, second: tuple, table: dict | None = None) -> int:
    table = turn_table(G) if table is None else table
    a, b = _edge_at(first, G), _edge_at(second, G)
    return sum(table.get((v, a[v], b[v]), 0) for v, _ in G.vertices)


def _overlay_loops(G: CiliatedPlanarGraph, first: tuple, second: tuple):
    """Vertex sequences of the loops of an overlay, each oriented black to white on first-color edges."""
    a, b = _edge_at(first, G), _edge_at(second, G)
    ends = {e.id: (e.black, e.white) for e in G.edges}
    seen = set()
    out = []
    for v, color in G.vertices:
        if color != BLACK or v in seen or a[v] == b[v]:
            continue
        path = []
        cur = v
        while True:
            path.append(cur)
            seen.add(cur)
            w = ends[a[cur]][1]
            path.append(w)
            seen.add(w)
            cur = ends[b[w]][0]
            if cur == v:
                break
        out.append(path)
    return out


def _signed_area(G: CiliatedPlanarGraph, path) -> float:
    pts = [G.positions[v] for v in path]
    return 0.5 * sum(p[0] * q[1] - q[0] * p[1] for p, q in zip(pts, pts[1:] + pts[:1]))


def morse_check(G: CiliatedPlanarGraph) -> tuple[int, int]:
    """(loops checked, failures): every loop's local sum must be +2 if counterclockwise, -2 if clockwise."""
    table = turn_table(G)
    covers = dimer_covers(G)
    checked = failures = 0
    for first, second in product(covers, repeat=2):
        a, b = _edge_at(first, G), _edge_at(second, G)
        for path in _overlay_loops(G, first, second):
            s = sum(table.get((v, a[v], b[v]), 0) for v in path)
            expect = 2 if _signed_area(G, path) > 0 else -2
            checked += 1
            failures += s != expect
    return checked, failures


def edge_pair_probabilities(G: CiliatedPlanarGraph) -> np.ndarray:
    """P[e, f]: probability that a uniform dimer cover contains both e and f (P[e, e] = P(e))."""
    signs = build_signs(G, 1)
    blacks = {v: i for i, v in enumerate(G.blacks)}
    whites = {v: i for i, v in enumerate(G.whites)}
    K = np.zeros((len(blacks), len(whites)))
    bi = np.array([blacks[e.black] for e in G.edges])
    wi = np.array([whites[e.white] for e in G.edges])
    k = np.array([float(signs[e.id]) for e in G.edges])
    K[bi, wi] = k
    det = abs(np.linalg.det(K))
    if round(det) != len(dimer_covers(G)):
        raise ArithmeticError(f"{G.name}: |det K| = {det} does not count dimer covers")
    Kinv = np.linalg.inv(K)  # indexed (white, black)
    single = k * Kinv[wi, bi]
    cross = Kinv[wi[:, None], bi[None, :]]  # cross[e, f] = Kinv(w_e, b_f)
    P = np.outer(k, k) * (np.outer(Kinv[wi, bi], Kinv[wi, bi]) - cross * cross.T)
    np.fill_diagonal(P, single)
    return P


@dataclass
class PatchReport:
    graph: str
    vertices: int
    enumerated: Fraction
    by_local_sum: Fraction
    by_correlations: float
    morse_loops: int
    morse_failures: int

    @property
    def difference(self) -> float:
        return abs(float(self.enumerated) - self.by_correlations)


def finite_patch_expected_loops(G: CiliatedPlanarGraph) -> PatchReport:
    """E(L) on a patch three ways: exact partition function, enumerated local sums, pair correlations."""
    if not G.positions:
        raise ValueError("the local-sum route needs vertex positions")
    exact = expected_loops(G)
    table = turn_table(G)
    covers = dimer_covers(G)
    acc = 0
    for first, second in product(covers, repeat=2):
        acc += local_sum(G, first, second, table) ** 2
    by_sum = Fraction(acc, 4 * len(covers) ** 2)

    # E[(sum_v X_v)^2] = sum over (a,b),(c,d) of S[a,b] S[c,d] P[a,c] P[b,d]
    index = G.edge_index
    S = np.zeros((len(G.edges), len(G.edges)))
    for (v, a, b), s in table.items():
        S[index[a], index[b]] += s
    P = edge_pair_probabilities(G)
    second_moment = float(np.sum(S * (P.T @ S @ P)))
    loops, fails = morse_check(G)
    return PatchReport(G.name, len(G.vertices), exact, by_sum, second_moment / 4, loops, fails)
