"""Twist random variable, natural and uniform measures, loop counts and the local variable Y.

Expectations are exact rationals. Only the uniform-measure shortcut goes through complex
evaluation at q = e^{i pi/3}, where [2] = 1.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import comb

from .connection import build_quantum_identity
from .laurent import QLaurent, laurent_sum, qint
from .multiweb import Multiweb, enumerate_multiwebs, split_graph, vertex_permutation
from .pgraph import CiliatedPlanarGraph, GraphError, dimer_covers
from .qtrace import normalized_trace

Q_UNIFORM = cmath.exp(1j * math.pi / 3)
# d/dq [2] at q = e^{i pi/3}; dividing by it turns d/dq into d/d[2]
UNIFORM_SCALE = math.sqrt(3) * cmath.exp(1j * math.pi / 6)
IMAG_TOL = 1e-12


class InternalConsistencyError(ArithmeticError):
    """Two independent routes to the same quantity disagree."""


def positive_version(G: CiliatedPlanarGraph) -> CiliatedPlanarGraph:
    """G itself if its ciliation is positive, else G re-ciliated from its first dimer cover."""
    if G.is_positive_ciliation():
        return G
    covers = dimer_covers(G)
    if not covers:
        raise GraphError(f"{G.name}: no dimer cover")
    return G.positive_ciliation_from_dimer(covers[0])


def twist_of_trace(trace: QLaurent) -> Fraction:
    value, _, second = trace.derivs_at_one()
    if value == 0:
        raise ZeroDivisionError("classical trace vanishes")
    return second / value


def twist(G: CiliatedPlanarGraph, m: Multiweb, conn=None) -> Fraction:
    """X_n(m): second q-derivative at 1 of the normalized trace over its value at 1."""
    conn = build_quantum_identity(G, m.n) if conn is None else conn
    return twist_of_trace(normalized_trace(conn, G, m))


def loops(G: CiliatedPlanarGraph, m: Multiweb) -> int:
    """Loop components of a 2-multiweb: split-web components other than a doubled edge."""
    if m.n != 2:
        raise ValueError("loops are defined for n = 2")
    S = split_graph(G, m)
    count = 0
    for comp in S.components():
        if len(comp) == 2:
            # two parallel copies of one edge form a doubled edge; two distinct edges a bigon loop
            if len({eid for eid, _ in S.rotation[comp[0]]}) == 1:
                continue
        count += 1
    return count


@dataclass
class MeasureRow:
    multiweb: Multiweb
    trace: QLaurent
    tr_one: int
    twist: Fraction
    natural: Fraction
    uniform: Fraction


@dataclass
class MeasureReport:
    graph: str
    n: int
    rows: list = field(default_factory=list)
    z_one: int = 0
    expected: Fraction = Fraction(0)
    expected_uniform: Fraction = Fraction(0)
    log_derivative: Fraction = Fraction(0)

    @property
    def consistent(self) -> bool:
        return self.expected == self.log_derivative

    def probabilities_sum_to_one(self) -> bool:
        return sum(r.natural for r in self.rows) == 1 and sum(r.uniform for r in self.rows) == 1


def measure_report(G: CiliatedPlanarGraph, n: int) -> MeasureReport:
    """Per-multiweb traces, twists and probabilities under both measures (positive cilia)."""
    G = positive_version(G)
    conn = build_quantum_identity(G, n)
    webs = enumerate_multiwebs(G, n)
    traces = [normalized_trace(conn, G, m) for m in webs]
    Z = laurent_sum(traces)
    z_one, d1, d2 = Z.derivs_at_one()
    if z_one <= 0:
        raise InternalConsistencyError(f"{G.name}: Z_1 = {z_one} is not positive")
    report = MeasureReport(G.name, n, z_one=int(z_one))
    for m, tr in zip(webs, traces):
        one = tr.eval_at_one()
        report.rows.append(MeasureRow(m, tr, one, twist_of_trace(tr), Fraction(one) / z_one, Fraction(1, len(webs))))
    report.expected = sum((r.twist * r.natural for r in report.rows), Fraction(0))
    report.expected_uniform = sum((r.twist * r.uniform for r in report.rows), Fraction(0))
    # (log Z)'' at q = 1
    report.log_derivative = d2 / z_one - (d1 / z_one) ** 2
    return report


def expected_twist(G: CiliatedPlanarGraph, n: int) -> Fraction:
    """E(X_n) under the natural measure; the definition and the log-derivative must agree."""
    report = measure_report(G, n)
    if not report.consistent:
        raise InternalConsistencyError(
            f"{G.name}, n={n}: sum of X P = {report.expected} but (log Z)'' = {report.log_derivative}"
        )
    return report.expected


def expected_loops(G: CiliatedPlanarGraph) -> Fraction:
    """E(L) for the double-dimer natural measure."""
    return expected_twist(G, 2)


# q^k at q = e^{i pi/3} written as a + b*w with w = e^{i pi/3}, w^2 = w - 1
_OMEGA_POWERS = ((1, 0), (0, 1), (-1, 1), (-1, 0), (0, -1), (1, -1))


def _eisenstein_value_and_slope(Z: QLaurent) -> tuple[tuple[int, int], tuple[int, int]]:
    """Z and dZ/dq at q = e^{i pi/3}, exactly, as integer pairs (a, b) meaning a + b*w."""
    if Z.denom != 1:
        raise ValueError("exact evaluation at e^{i pi/3} needs integer exponents")
    va = vb = sa = sb = 0
    for k, c in Z.terms.items():
        a, b = _OMEGA_POWERS[k % 6]
        va += c * a
        vb += c * b
        a, b = _OMEGA_POWERS[(k - 1) % 6]
        sa += c * k * a
        sb += c * k * b
    return (va, vb), (sa, sb)


def _eisenstein_divide(num: tuple, den: tuple) -> tuple[Fraction, Fraction]:
    a, b = num
    c, d = den
    norm = c * c + c * d + d * d
    if norm == 0:
        raise ZeroDivisionError("Z vanishes at q = e^{i pi/3}")
    # multiply by the conjugate (c + d) - d*w
    cc, dd = c + d, -d
    re = a * cc - b * dd
    im = a * dd + b * cc + b * dd
    return Fraction(re, norm), Fraction(im, norm)


def uniform_log_derivative(Z: QLaurent) -> Fraction:
    """(1/(sqrt3 e^{i pi/6})) (log Z)' at q = e^{i pi/3}, computed exactly and checked to be real."""
    value, slope = _eisenstein_value_and_slope(Z)
    # sqrt3 e^{i pi/6} = 1 + w
    den = _eisenstein_multiply(value, (1, 1))
    x, y = _eisenstein_divide(slope, den)
    residue = float(y) * math.sqrt(3) / 2
    if abs(residue) > IMAG_TOL:
        raise InternalConsistencyError(f"uniform loop expectation has imaginary part {residue:.3e}")
    return x + y / 2


def _eisenstein_multiply(u: tuple, v: tuple) -> tuple[int, int]:
    a, b = u
    c, d = v
    return a * c - b * d, a * d + b * c + b * d


def uniform_log_derivative_float(Z: QLaurent) -> complex:
    """Floating-point version of the same quantity, used as a cross-check on small graphs."""
    return Z.derivative_complex(Q_UNIFORM) / Z.eval_complex(Q_UNIFORM) / UNIFORM_SCALE


def expected_loops_uniform(G: CiliatedPlanarGraph) -> Fraction:
    G = positive_version(G)
    conn = build_quantum_identity(G, 2)
    Z = laurent_sum(normalized_trace(conn, G, m) for m in enumerate_multiwebs(G, 2))
    return uniform_log_derivative(Z)


def uniform_loops_by_enumeration(G: CiliatedPlanarGraph) -> Fraction:
    webs = enumerate_multiwebs(G, 2)
    return Fraction(sum(loops(G, m) for m in webs), len(webs))


def zigzag_closed_form(m: int) -> QLaurent:
    return QLaurent.const(m) + comb(m, 2) * qint(2)


# local variable Y


@dataclass
class LocalVariableReport:
    graph: str
    n: int
    colorings: int
    mean: Fraction
    variance: Fraction
    expected_twist: Fraction

    @property
    def ok(self) -> bool:
        return self.mean == 0 and self.variance == self.expected_twist


def local_variable(G: CiliatedPlanarGraph, covers: tuple) -> Fraction:
    """Y(c) for the coloring in which color i uses dimer cover covers[i - 1]."""
    n = len(covers)
    masks: dict = {}
    for color, cover in enumerate(covers):
        for eid in cover:
            masks[eid] = masks.get(eid, 0) | (1 << color)
    mult = {eid: bin(mask).count("1") for eid, mask in masks.items()}
    total = Fraction(0)
    for v, _ in G.vertices:
        _, length = vertex_permutation(G, v, masks)
        doubled = sum(comb(mult[eid], 2) for eid in G.rotation[v] if eid in mult)
        total += length - Fraction(comb(n, 2), 2) + Fraction(doubled, 2)
    return total


def local_variable_suite(G: CiliatedPlanarGraph, n: int) -> LocalVariableReport:
    """Mean and variance of Y over n-tuples of dimer covers, against E(X_n)."""
    if not G.is_trivial_ciliation():
        raise GraphError(f"{G.name}: the local variable needs a trivial ciliation")
    covers = dimer_covers(G)
    values = [local_variable(G, combo) for combo in product(covers, repeat=n)]
    count = len(values)
    mean = sum(values, Fraction(0)) / count
    var = sum((y - mean) ** 2 for y in values) / count
    return LocalVariableReport(G.name, n, count, mean, var, expected_twist(G, n))


# snake graphs


def snake_partition_functions(M: int) -> list[QLaurent]:
    """z_0..z_M for the 2 x m grid by the three-term recurrence."""
    two = qint(2)
    z = [QLaurent.one(), QLaurent.one(), 2 + two]
    while len(z) <= M:
        z.append(2 * z[-1] + two * z[-2] - z[-3])
    return z[: M + 1]


def series_coefficients(numerator: list[int], denominator: list[int], M: int) -> list[int]:
    """First M + 1 power-series coefficients of numerator/denominator (denominator[0] = 1)."""
    if denominator[0] != 1:
        raise ValueError("need a unit constant term")
    out = []
    for k in range(M + 1):
        c = numerator[k] if k < len(numerator) else 0
        for j in range(1, min(k, len(denominator) - 1) + 1):
            c -= denominator[j] * out[k - j]
        out.append(c)
    return out


def poly_mul(a: list[int], b: list[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


@dataclass
class SnakeReport:
    M: int
    natural: list          # exact E(L) by the Laurent recurrence, index m
    natural_closed: list   # c_m / f_m^2 from the rational generating function
    uniform: list          # exact E^u(L) from z_m evaluated at q = e^{i pi/3}
    uniform_closed: list   # a_m / b_m from the generating function at [2] = 1
    natural_slope: float
    uniform_slope: float

    NATURAL_LIMIT = (math.sqrt(5) - 1) / 5
    UNIFORM_LIMIT = (1 + 2 * (2 * math.cos(math.pi / 7)) - (2 * math.cos(math.pi / 7)) ** 2) / 7

    def relative_errors(self) -> tuple[float, float]:
        return (
            abs(self.natural_slope - self.NATURAL_LIMIT) / self.NATURAL_LIMIT,
            abs(self.uniform_slope - self.UNIFORM_LIMIT) / self.UNIFORM_LIMIT,
        )

    def routes_agree(self) -> bool:
        return self.natural == self.natural_closed and self.uniform == self.uniform_closed


def snake_report(M: int = 300) -> SnakeReport:
    """Expected loop counts on the 2 x m grid up to m = M, by two coefficient routes.

    The slope is taken as the last first difference, which converges geometrically,
    rather than E/m, which carries a 1/m offset.
    """
    if M < 4:
        raise ValueError("need M >= 4")
    zs = snake_partition_functions(M)
    natural, uniform = [], []
    for z in zs:
        v, d1, d2 = z.derivs_at_one()
        natural.append(d2 / v - (d1 / v) ** 2)
        uniform.append(uniform_log_derivative(z))
    D_nat = [1, -2, -2, 1]
    D_uni = [1, -2, -1, 1]
    c = series_coefficients([0, 0, 2, -2], poly_mul(D_nat, D_nat), M)
    f2 = series_coefficients([1, -1], D_nat, M)
    a = series_coefficients([0, 0, 1, -1], poly_mul(D_uni, D_uni), M)
    b = series_coefficients([1, -1], D_uni, M)
    natural_closed = [Fraction(c[m], f2[m]) for m in range(M + 1)]
    uniform_closed = [Fraction(a[m], b[m]) for m in range(M + 1)]
    return SnakeReport(
        M, natural, natural_closed, uniform, uniform_closed,
        float(natural[M] - natural[M - 1]), float(uniform[M] - uniform[M - 1]),
    )
