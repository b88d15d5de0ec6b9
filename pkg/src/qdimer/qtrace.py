"""Quantum traces of multiwebs for diagonal connections, via edge colorings."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, lcm

from .connection import DiagonalConnection, build_quantum_identity
from .laurent import QLaurent, laurent_sum, q_power
from .multiweb import (
    Multiweb,
    enumerate_edge_colorings,
    enumerate_multiwebs,
    inversions,
    mask_colors,
)
from .pgraph import CiliatedPlanarGraph, dimer_covers


class TraceConsistencyError(ArithmeticError):
    """A result contradicts a structural guarantee (for example an empty coloring set)."""


@dataclass(frozen=True)
class TraceResult:
    raw: QLaurent
    normalized: QLaurent
    colorings: int


def _linear_active(G: CiliatedPlanarGraph, m: Multiweb) -> dict:
    return {v: [eid for eid in G.linear_order(v) if m.of(G, eid)] for v, _ in G.vertices}


def _monomial_table(conn: DiagonalConnection):
    """(denominator, edge -> [(coefficient, scaled exponent)]) if every entry is a monomial."""
    denom = 1
    for diag in conn.entries.values():
        for x in diag:
            if not x.is_monomial():
                return None
            denom = lcm(denom, x.denom)
    table = {}
    for eid, diag in conn.entries.items():
        row = []
        for x in diag:
            ((k, c),) = x.rescaled(denom).items()
            row.append((c, k))
        table[eid] = row
    return denom, table


def coloring_sum(conn: DiagonalConnection, G: CiliatedPlanarGraph, m: Multiweb, colorings=None) -> tuple[QLaurent, int]:
    """Sum over edge colorings of prod_v (-q)^{l(sigma_v)} prod_e prod_{i in S_e} Phi(e)_ii."""
    order = _linear_active(G, m)
    colorings = enumerate_edge_colorings(G, m) if colorings is None else colorings
    mono = _monomial_table(conn)
    if mono is not None:
        denom, table = mono
        acc: dict[int, int] = {}
        for col in colorings:
            length = 0
            for v, eids in order.items():
                seq = []
                for eid in eids:
                    seq.extend(mask_colors(col[eid]))
                length += inversions(seq)
            coef = -1 if length % 2 else 1
            expo = length * denom
            for eid, mask in col.items():
                row = table[eid]
                for i in mask_colors(mask):
                    c, k = row[i - 1]
                    coef *= c
                    expo += k
            acc[expo] = acc.get(expo, 0) + coef
        return QLaurent(acc, denom), len(colorings)
    terms = []
    for col in colorings:
        length = 0
        for v, eids in order.items():
            seq = []
            for eid in eids:
                seq.extend(mask_colors(col[eid]))
            length += inversions(seq)
        term = QLaurent.monomial(length, -1 if length % 2 else 1)
        for eid, mask in col.items():
            for i in mask_colors(mask):
                term = term * conn[eid][i - 1]
        terms.append(term)
    return laurent_sum(terms), len(colorings)


def multiplicity_prefactor(m: Multiweb) -> int:
    return sum(comb(k, 2) for k in m.mult)


def trace_result(conn: DiagonalConnection, G: CiliatedPlanarGraph, m: Multiweb) -> TraceResult:
    total, count = coloring_sum(conn, G, m)
    if count == 0:
        raise TraceConsistencyError("multiweb has no edge coloring")
    raw = total.scale_by_power(multiplicity_prefactor(m))
    norm = raw.scale_by_power(-G.N * comb(m.n, 2))
    return TraceResult(raw, norm, count)


def trace_diagonal(conn: DiagonalConnection, G: CiliatedPlanarGraph, m: Multiweb) -> QLaurent:
    """Quantum trace of m for a diagonal connection, with the cilia of G."""
    return trace_result(conn, G, m).raw


def normalized_trace(conn: DiagonalConnection, G: CiliatedPlanarGraph, m: Multiweb) -> QLaurent:
    return trace_result(conn, G, m).normalized


def partition_function(conn: DiagonalConnection, G: CiliatedPlanarGraph, n: int | None = None, multiwebs=None) -> QLaurent:
    n = conn.n if n is None else n
    webs = enumerate_multiwebs(G, n) if multiwebs is None else multiwebs
    total = laurent_sum(trace_diagonal(conn, G, m) for m in webs)
    return total.scale_by_power(-G.N * comb(n, 2))


def identity_partition_function(G: CiliatedPlanarGraph, n: int) -> QLaurent:
    """Z_q with the quantum identity connection built for the cilia of G."""
    return partition_function(build_quantum_identity(G, n), G, n)


def classical_trace(G: CiliatedPlanarGraph, m: Multiweb) -> int:
    """Trace at q = 1 with the identity connection."""
    conn = DiagonalConnection.identity(G, m.n)
    total, count = coloring_sum(conn, G, m)
    if count == 0:
        raise TraceConsistencyError("multiweb has no edge coloring")
    # at q = 1 every (-q)^l is (-1)^l and every q-power is 1
    return total.eval_at_one()


@dataclass
class PositivityReport:
    n: int
    multiwebs: int
    signs: set
    counts_match: bool
    z_one: int
    dimer_count: int

    @property
    def uniform_sign(self) -> bool:
        return len(self.signs) == 1


def positivity_report(G: CiliatedPlanarGraph, n: int) -> PositivityReport:
    """Signs of classical traces and their agreement in absolute value with coloring counts."""
    signs = set()
    match = True
    z = 0
    webs = enumerate_multiwebs(G, n)
    for m in webs:
        tr = classical_trace(G, m)
        count = len(enumerate_edge_colorings(G, m))
        signs.add(1 if tr > 0 else -1 if tr < 0 else 0)
        match &= abs(tr) == count
        z += tr
    return PositivityReport(n, len(webs), signs, match, z, len(dimer_covers(G)))


def cycle_closed_form(n: int) -> QLaurent:
    """prod_{i=1..n} (1 + q^{n+1-2i})."""
    out = QLaurent.one()
    for i in range(1, n + 1):
        out = out * (QLaurent.one() + q_power(n + 1 - 2 * i))
    return out


def has_nonnegative_coefficients(p: QLaurent) -> bool:
    return all(c >= 0 for c in p.terms.values())


def symmetric_after_normalization(G: CiliatedPlanarGraph, raw: QLaurent, n: int) -> bool:
    """raw * q^{-N binom(n,2)} is invariant under q -> 1/q."""
    return raw.palindromic_shift() == Fraction(G.N * comb(n, 2)) and raw.scale_by_power(-G.N * comb(n, 2)).is_symmetric()
