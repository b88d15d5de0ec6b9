"""Small noncommutative algebra of quantum matrix entries.

Generators are triples (edge rank, row, column). Entries of different edges
commute; entries of one edge obey the quantum matrix relations, which are
applied as rewrite rules toward ascending (edge, row, column) order.
"""

from __future__ import annotations

import random
from functools import lru_cache
from itertools import permutations
from math import comb
from typing import Callable, Iterable, Mapping

from .laurent import ONE, ZERO, QLaurent, q_power, qfact
from .multiweb import (
    Multiweb,
    enumerate_half_edge_colorings,
    inversions,
    mask_colors,
    split_graph,
    vertex_permutation,
)
from .pgraph import CiliatedPlanarGraph

MAX_DEGREE = 12
MAX_RANK_SYMBOLIC = 3
MAX_ACTIVE_EDGES = 4

Q_MINUS_QINV = QLaurent({1: 1, -1: -1})
Q_INV = q_power(-1)


class CapExceeded(ValueError):
    """Input is beyond the configured size limits of the symbolic engine."""


def _rewrite_pair(x, y):
    """x y (with x > y) as a list of (coefficient, word) in terms of y x and smaller words."""
    if x[0] != y[0]:
        return [(ONE, (y, x))]
    _, i, j = x
    _, k, l = y
    e = x[0]
    if i == k or j == l:
        return [(Q_INV, (y, x))]
    if i > k and j > l:
        return [(ONE, (y, x)), (-Q_MINUS_QINV, ((e, k, j), (e, i, l)))]
    # i > k and j < l
    return [(ONE, (y, x))]


def _descents(word):
    return [p for p in range(len(word) - 1) if word[p] > word[p + 1]]


@lru_cache(maxsize=200_000)
def _normal_word(word: tuple) -> tuple:
    """Normal form of a single word (leftmost-descent strategy), as a tuple of (word, coefficient)."""
    d = _descents(word)
    if not d:
        return ((word, ONE),)
    p = d[0]
    acc: dict = {}
    for coef, pair in _rewrite_pair(word[p], word[p + 1]):
        new = word[:p] + pair + word[p + 2:]
        for w, c in _normal_word(new):
            acc[w] = acc.get(w, ZERO) + coef * c
    return tuple((w, c) for w, c in acc.items() if not c.is_zero())


def normal_form_random(word: tuple, rng: random.Random) -> dict:
    """Normal form choosing a random descent at each step; used to test confluence."""
    d = _descents(word)
    if not d:
        return {word: ONE}
    p = rng.choice(d)
    acc: dict = {}
    for coef, pair in _rewrite_pair(word[p], word[p + 1]):
        for w, c in normal_form_random(word[:p] + pair + word[p + 2:], rng).items():
            acc[w] = acc.get(w, ZERO) + coef * c
    return {w: c for w, c in acc.items() if not c.is_zero()}


class NCPoly:
    """Linear combination of normal-ordered words with Laurent coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping | None = None, normalize: bool = True):
        if not normalize:
            self.terms = {w: c for w, c in (terms or {}).items() if not c.is_zero()}
            return
        acc: dict = {}
        for w, c in (terms or {}).items():
            if len(w) > MAX_DEGREE:
                raise CapExceeded(f"word of degree {len(w)} exceeds the cap {MAX_DEGREE}")
            if c.is_zero():
                continue
            for nw, nc in _normal_word(tuple(w)):
                acc[nw] = acc.get(nw, ZERO) + c * nc
        self.terms = {w: c for w, c in acc.items() if not c.is_zero()}

    @classmethod
    def gen(cls, edge: int, i: int, j: int) -> "NCPoly":
        return cls({((edge, i, j),): ONE}, normalize=False)

    @classmethod
    def const(cls, c) -> "NCPoly":
        c = c if isinstance(c, QLaurent) else QLaurent.const(c)
        return cls({(): c}, normalize=False)

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other):
        other = _lift(other)
        acc = dict(self.terms)
        for w, c in other.terms.items():
            acc[w] = acc.get(w, ZERO) + c
        return NCPoly(acc, normalize=False)

    __radd__ = __add__

    def __neg__(self):
        return NCPoly({w: -c for w, c in self.terms.items()}, normalize=False)

    def __sub__(self, other):
        return self + (-_lift(other))

    def __mul__(self, other):
        if isinstance(other, (QLaurent, int)):
            c = other if isinstance(other, QLaurent) else QLaurent.const(other)
            return NCPoly({w: x * c for w, x in self.terms.items()}, normalize=False)
        acc: dict = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = w1 + w2
                acc[w] = acc.get(w, ZERO) + c1 * c2
        return NCPoly(acc)

    def __rmul__(self, other):
        # scalars are central
        return self * other

    def __eq__(self, other):
        other = _lift(other)
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def div_scalar(self, d: QLaurent) -> "NCPoly":
        """Exact division of every coefficient; raises NotDivisible otherwise."""
        return NCPoly({w: c.exact_div(d) for w, c in self.terms.items()}, normalize=False)

    def substitute(self, values: Mapping, q0: complex = 1) -> complex:
        """Numeric value with generators replaced by numbers and q by q0."""
        total = 0
        for w, c in self.terms.items():
            v = c.eval_complex(q0) if q0 != 1 else c.eval_at_one()
            for g in w:
                v *= values[g]
            total += v
        return total

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for w in sorted(self.terms):
            name = "*".join(f"M{e}[{i}{j}]" for e, i, j in w) or "1"
            parts.append(f"({self.terms[w]})*{name}")
        return " + ".join(parts)


def _lift(x) -> NCPoly:
    if isinstance(x, NCPoly):
        return x
    return NCPoly.const(x)


NC_ONE = NCPoly.const(1)
NC_ZERO = NCPoly()


def normal_form(word: Iterable) -> NCPoly:
    return NCPoly({tuple(word): ONE})


def symbolic_matrix(edge: int) -> Callable[[int, int], NCPoly]:
    return lambda i, j: NCPoly.gen(edge, i, j)


def diagonal_matrix(diag) -> Callable[[int, int], NCPoly]:
    """Entries of a fixed diagonal matrix with Laurent entries."""
    return lambda i, j: NCPoly.const(diag[i - 1]) if i == j else NC_ZERO


def neg_q_power(k: int) -> QLaurent:
    return QLaurent.monomial(k, -1 if k % 2 else 1)


def qminor(entry: Callable, rows: list, cols: list) -> NCPoly:
    """Row-ordered expansion sum_sigma (-q)^{l(sigma)} M_{r1 c_sigma(1)} ... M_{rk c_sigma(k)}."""
    if len(rows) != len(cols):
        raise ValueError("minor needs |S| = |T|")
    total = NC_ZERO
    for perm in permutations(range(len(cols))):
        term = NCPoly.const(neg_q_power(inversions(perm)))
        for r, p in zip(rows, perm):
            term = term * entry(r, cols[p])
            if term.is_zero():
                break
        total = total + term
    return total


def qdet(entry: Callable, n: int) -> NCPoly:
    return qminor(entry, list(range(1, n + 1)), list(range(1, n + 1)))


def qdet_row_permuted(entry: Callable, n: int, sigma: tuple) -> NCPoly:
    """sum_tau (-q)^{l(tau)-l(sigma)} M_{sigma(1)tau(1)} ... M_{sigma(n)tau(n)}; sigma, tau 1-based."""
    total = NC_ZERO
    ls = inversions(sigma)
    for tau in permutations(range(1, n + 1)):
        term = NCPoly.const(neg_q_power(inversions(tau) - ls))
        for s, t in zip(sigma, tau):
            term = term * entry(s, t)
        total = total + term
    return total


def qdet_col_permuted(entry: Callable, n: int, tau: tuple) -> NCPoly:
    """sum_sigma (-q)^{l(sigma)-l(tau)} M_{sigma(1)tau(1)} ... M_{sigma(n)tau(n)}."""
    total = NC_ZERO
    lt = inversions(tau)
    for sigma in permutations(range(1, n + 1)):
        term = NCPoly.const(neg_q_power(inversions(sigma) - lt))
        for s, t in zip(sigma, tau):
            term = term * entry(s, t)
        total = total + term
    return total


# traces of multiwebs with symbolic connections

def _check_caps(G: CiliatedPlanarGraph, m: Multiweb):
    if m.n > MAX_RANK_SYMBOLIC:
        raise CapExceeded(f"symbolic traces support n <= {MAX_RANK_SYMBOLIC}")
    active = sum(1 for k in m.mult if k)
    if active > MAX_ACTIVE_EDGES:
        raise CapExceeded(f"symbolic traces support at most {MAX_ACTIVE_EDGES} active edges")


def tr_alt(G: CiliatedPlanarGraph, m: Multiweb, matrices: Mapping) -> NCPoly:
    """Half-edge coloring formula with quantum minors on every edge.

    ``matrices`` maps edge id -> entry function (i, j) -> NCPoly.
    """
    _check_caps(G, m)
    total = NC_ZERO
    for S, T in enumerate_half_edge_colorings(G, m):
        length = 0
        for v, _ in G.vertices:
            masks = S if v in G.whites else T
            length += vertex_permutation(G, v, {e: masks[e] for e in G.rotation[v] if e in masks})[1]
        term = NCPoly.const(neg_q_power(length))
        for e in G.edges:
            if e.id not in S:
                continue
            term = term * qminor(matrices[e.id], mask_colors(S[e.id]), mask_colors(T[e.id]))
            if term.is_zero():
                break
        total = total + term
    return total * q_power(sum(comb(k, 2) for k in m.mult))


def tr_codet(G: CiliatedPlanarGraph, m: Multiweb, matrices: Mapping) -> NCPoly:
    """Codeterminant contraction on the split web, divided by prod [m_e]!.

    Each copy of e contributes Phi(e)_{white color, black color}; factors are
    multiplied white vertex by white vertex, following the linear order at each.
    Once the black colors are fixed the sum over white permutations factorizes.
    """
    _check_caps(G, m)
    H = split_graph(G, m)
    full = tuple(range(1, m.n + 1))
    black_states = _vertex_states(H, H.blacks, full)
    white_perms = [(perm, inversions(perm)) for perm in permutations(full)]
    cache: dict = {}

    def white_factor(w, bcols):
        # sum over the permutation at w, factors in the linear order at w
        key = (w, bcols)
        if key not in cache:
            order = H.linear_order(w)
            acc = NC_ZERO
            for perm, ell in white_perms:
                term = NCPoly.const(neg_q_power(ell))
                for eid, wc, bc in zip(order, perm, bcols):
                    term = term * matrices[eid[0]](wc, bc)
                    if term.is_zero():
                        break
                acc = acc + term
            cache[key] = acc
        return cache[key]

    total = NC_ZERO
    for bl, bcol in black_states:
        term = NCPoly.const(neg_q_power(bl))
        for w in H.whites:
            term = term * white_factor(w, tuple(bcol[eid] for eid in H.linear_order(w)))
            if term.is_zero():
                break
        total = total + term
    denom = ONE
    for k in m.mult:
        denom = denom * qfact(k)
    return total.div_scalar(denom)


def _vertex_states(H, vertices, full):
    """Every choice of a permutation at each vertex: (total length, copy -> color)."""
    states = [(0, {})]
    for v in vertices:
        order = H.linear_order(v)
        new = []
        for perm in permutations(full):
            ell = inversions(perm)
            for base_len, base in states:
                d = dict(base)
                d.update(zip(order, perm))
                new.append((base_len + ell, d))
        states = new
    return states


# quantum Grassmann algebra: words in psibar (kind 0) and psi (kind 1)

class QGrassmann:
    """Combination of ordered square-free Grassmann words with NCPoly coefficients.

    Normal order lists every psibar before every psi, each ascending.
    ``quantum=False`` gives the classical anticommuting algebra.
    """

    __slots__ = ("terms", "quantum")

    def __init__(self, terms: Mapping | None = None, quantum: bool = True):
        self.quantum = quantum
        acc: dict = {}
        for w, c in (terms or {}).items():
            factor, nw = grassmann_sort(w, quantum)
            if factor is None:
                continue
            acc[nw] = acc.get(nw, NC_ZERO) + c * factor
        self.terms = {w: c for w, c in acc.items() if not c.is_zero()}

    @classmethod
    def word(cls, letters, coef: NCPoly = NC_ONE, quantum: bool = True) -> "QGrassmann":
        return cls({tuple(letters): coef}, quantum)

    def __add__(self, other):
        acc = dict(self.terms)
        for w, c in other.terms.items():
            acc[w] = acc.get(w, NC_ZERO) + c
        out = QGrassmann(quantum=self.quantum)
        out.terms = {w: c for w, c in acc.items() if not c.is_zero()}
        return out

    def __mul__(self, other):
        if isinstance(other, (QLaurent, int)):
            out = QGrassmann(quantum=self.quantum)
            out.terms = {w: c * other for w, c in self.terms.items()}
            return out
        acc: dict = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                # matrix entries commute with Grassmann letters
                w = w1 + w2
                acc[w] = acc.get(w, NC_ZERO) + c1 * c2
        return QGrassmann(acc, self.quantum)

    def div_scalar(self, d: QLaurent) -> "QGrassmann":
        out = QGrassmann(quantum=self.quantum)
        out.terms = {w: c.div_scalar(d) for w, c in self.terms.items()}
        return out

    def coefficient(self, letters) -> NCPoly:
        """Coefficient of a (not necessarily normal) word, relative to that word."""
        factor, nw = grassmann_sort(tuple(letters), self.quantum)
        if factor is None:
            raise ValueError("reference word is zero")
        c = self.terms.get(nw, NC_ZERO)
        # factor is a unit +-q^a
        return c * factor.inverse()


def grassmann_sort(word: tuple, quantum: bool = True):
    """(unit factor, normal word) with word = factor * normal word; factor None if the word is zero."""
    if len(set(word)) != len(word):
        return None, None
    w = list(word)
    power, sign = 0, 1
    # bubble sort; each adjacent swap of a descending pair contributes its factor
    for end in range(len(w) - 1, 0, -1):
        for p in range(end):
            a, b = w[p], w[p + 1]
            if a > b:
                sign = -sign
                if a[0] == b[0] and quantum:
                    power += 1  # x_j x_i = -q x_i x_j for j > i
                w[p], w[p + 1] = b, a
    return QLaurent.monomial(power, sign), tuple(w)


def bilinear_form(entry: Callable, n: int, quantum: bool = True) -> QGrassmann:
    """sum_{i,j} psibar_i M_ij psi_j."""
    terms = {}
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            terms[((0, i), (1, j))] = entry(i, j)
    return QGrassmann(terms, quantum)


def q_exponential(x: QGrassmann, n: int, quantum: bool = True) -> QGrassmann:
    """sum_k x^k / (q^{binom(k,2)} [k]!) (classical: x^k / k!), truncated at k = n."""
    total = QGrassmann({(): NC_ONE}, quantum)
    power = QGrassmann({(): NC_ONE}, quantum)
    for k in range(1, n + 1):
        power = power * x
        if quantum:
            d = q_power(comb(k, 2)) * qfact(k)
        else:
            d = QLaurent.const(_factorial(k))
        total = total + power.div_scalar(d)
    return total


def _factorial(k):
    out = 1
    for i in range(2, k + 1):
        out *= i
    return out


def integral_reference(n: int) -> tuple:
    """psi_1 psibar_1 ... psi_n psibar_n, the word the Berezin integral sends to 1."""
    out = []
    for i in range(1, n + 1):
        out.extend([(1, i), (0, i)])
    return tuple(out)


def berezin_integral(f: QGrassmann, n: int) -> NCPoly:
    return f.coefficient(integral_reference(n))


def commuting_entries(n: int):
    """Entries of a matrix whose generators all commute: each gets its own edge rank."""
    return lambda i, j: NCPoly.gen((i - 1) * n + (j - 1), 1, 1)


def classical_det(entry: Callable, n: int) -> NCPoly:
    total = NC_ZERO
    for perm in permutations(range(1, n + 1)):
        term = NCPoly.const(-1 if inversions(perm) % 2 else 1)
        for i, p in zip(range(1, n + 1), perm):
            term = term * entry(i, p)
        total = total + term
    return total


def grassmann_checks(n: int) -> dict:
    """Appendix identities for an n x n matrix; returns named booleans plus the sign/power table."""
    if n > MAX_RANK_SYMBOLIC:
        raise CapExceeded(f"Grassmann checks support n <= {MAX_RANK_SYMBOLIC}")
    report: dict = {}
    # classical: integral of exp(-psibar M psi) is the determinant, commuting entries
    M = commuting_entries(n)
    x = bilinear_form(lambda i, j: -M(i, j), n, quantum=False)
    report["classical_det"] = berezin_integral(q_exponential(x, n, quantum=False), n) == classical_det(M, n)
    # quantum expansion: exp_q(-x) has the quantum minors as coefficients
    Mq = symbolic_matrix(0)
    xq = bilinear_form(lambda i, j: -Mq(i, j), n)
    expo = q_exponential(xq, n)
    expected = QGrassmann({(): NC_ONE})
    subsets = [s for k in range(1, n + 1) for s in _subsets(n, k)]
    for I in subsets:
        for J in subsets:
            if len(I) != len(J):
                continue
            word = []
            for i, j in zip(I, J):
                word.extend([(0, i), (1, j)])
            sign = -1 if len(I) % 2 else 1
            expected = expected + QGrassmann({tuple(word): qminor(Mq, list(I), list(J)) * sign})
    report["quantum_minor_expansion"] = expo.terms == expected.terms
    # power of the bilinear form: x^n = q^{binom(n,2)} [n]! sum_sigma (-q)^l psibar_1 psi_1 ... M...
    xn = QGrassmann({(): NC_ONE})
    xpos = bilinear_form(Mq, n)
    for _ in range(n):
        xn = xn * xpos
    top = []
    for i in range(1, n + 1):
        top.extend([(0, i), (1, i)])
    rhs = QGrassmann({tuple(top): qdet(Mq, n) * (q_power(comb(n, 2)) * qfact(n))})
    report["power_identity"] = xn.terms == rhs.terms
    # the pair step: both sides of the reordering identity agree for i<k, j<l
    pair_ok = True
    for i in range(1, n + 1):
        for k in range(i + 1, n + 1):
            for j in range(1, n + 1):
                for l in range(j + 1, n + 1):
                    lhs = QGrassmann({((0, k), (1, l), (0, i), (1, j)): Mq(k, l) * Mq(i, j)}) + QGrassmann(
                        {((0, k), (1, j), (0, i), (1, l)): Mq(k, j) * Mq(i, l)})
                    rhs2 = QGrassmann({((0, i), (1, j), (0, k), (1, l)): Mq(i, j) * Mq(k, l)}) + QGrassmann(
                        {((0, i), (1, l), (0, k), (1, j)): Mq(i, l) * Mq(k, j)})
                    pair_ok &= lhs.terms == (rhs2 * q_power(2)).terms
                    main = Mq(i, j) * Mq(k, l) - Mq(i, l) * Mq(k, j) * q_power(1)
                    main_r = Mq(k, l) * Mq(i, j) - Mq(k, j) * Mq(i, l) * q_power(-1)
                    pair_ok &= main == main_r
    report["pair_reordering"] = pair_ok
    # quantum integral against inserted letters: record the sign and power relative to the complementary minor
    table = {}
    for k in range(0, n + 1):
        for I in _subsets(n, k):
            for J in _subsets(n, k):
                word = []
                for i, j in zip(I, J):
                    word.extend([(0, i), (1, j)])
                val = berezin_integral(QGrassmann({tuple(word): NC_ONE}) * expo, n)
                Ic = [i for i in range(1, n + 1) if i not in I]
                Jc = [j for j in range(1, n + 1) if j not in J]
                minor = qminor(Mq, Ic, Jc) if Ic else NC_ONE
                table[(I, J)] = _unit_ratio(val, minor)
    report["integral_units"] = table
    report["integral_all_units"] = all(v is not None for v in table.values())
    report["integral_k0_trivial"] = table[((), ())] == (1, 0)
    report["integral_closed_form"] = all(
        v == integral_unit_closed_form(I, J) for (I, J), v in table.items())
    return report


def integral_unit_closed_form(I, J) -> tuple:
    """Observed (sign, power) of the integral with psibar_I psi_J inserted, relative to the complementary minor."""
    k = len(I)
    return (-1 if (k + sum(I) + sum(J)) % 2 else 1, sum(I) + sum(J) - k * (k + 1))


def _subsets(n, k):
    from itertools import combinations

    return [tuple(c) for c in combinations(range(1, n + 1), k)]


def _unit_ratio(a: NCPoly, b: NCPoly):
    """(sign, power) with a = sign * q^power * b, or None."""
    if b.is_zero() or set(a.terms) != set(b.terms):
        return None
    ratio = None
    for w, c in b.terms.items():
        ca = a.terms[w]
        shift = ca.min_exponent() - c.min_exponent()
        r = None
        for sign in (1, -1):
            if ca == c.scale_by_power(shift) * sign:
                r = (sign, int(shift))
                break
        if r is None or (ratio is not None and ratio != r):
            return None
        ratio = r
    return ratio


# graph-level checks

def symbolic_connection(G: CiliatedPlanarGraph) -> dict:
    """Independent symbolic quantum matrices on every edge, ranked by edge order."""
    return {e.id: symbolic_matrix(r) for r, e in enumerate(G.edges)}


def symbolic_kdet_parts(G: CiliatedPlanarGraph, n: int, signs=None) -> list:
    """Per-multiweb blow-up determinant contributions with symbolic entries, unnormalized."""
    from .kasteleyn import build_signs, kdet_by_multiweb

    if n > MAX_RANK_SYMBOLIC:
        raise CapExceeded(f"symbolic determinants support n <= {MAX_RANK_SYMBOLIC}")
    signs = build_signs(G, n) if signs is None else signs
    ranks = {e.id: r for r, e in enumerate(G.edges)}
    entry = lambda eid, i, j: NCPoly.gen(ranks[eid], i, j)
    return kdet_by_multiweb(G, n, entry, signs, diagonal_only=False, one=NC_ONE, zero=NC_ZERO)


def small_three_web():
    """Bigon with multiplicities (2, 1) at n = 3 and outward cilia, as (graph, multiweb, doubled id, single id)."""
    from .generators import bigon

    G = bigon()
    doubled, single = G.edges[0].id, G.edges[1].id
    return G, Multiweb.from_mapping(G, 3, {doubled: 2, single: 1}), doubled, single


def identity_entries(i, j):
    return NC_ONE if i == j else NC_ZERO


def small_three_web_checks() -> dict:
    G, m, doubled, single = small_three_web()
    phi = symbolic_matrix(0)
    phi_diag = lambda i, j: phi(i, j) if i == j else NC_ZERO
    out = {}
    for label, mats, want in (
        ("diagonal_on_single", {doubled: identity_entries, single: phi_diag},
         phi(1, 1) * q_power(5) + phi(2, 2) * q_power(3) + phi(3, 3) * q_power(1)),
        ("general_on_single", {doubled: identity_entries, single: phi},
         phi(1, 1) * q_power(5) + phi(2, 2) * q_power(3) + phi(3, 3) * q_power(1)),
        ("general_on_doubled", {doubled: phi, single: identity_entries},
         qminor(phi, [2, 3], [2, 3]) * q_power(5) + qminor(phi, [1, 3], [1, 3]) * q_power(3)
         + qminor(phi, [1, 2], [1, 2]) * q_power(1)),
    ):
        a, c = tr_alt(G, m, mats), tr_codet(G, m, mats)
        out[label] = a == c == want
    return out


def confluence_check(trials: int = 50, degree: int = 4, n: int = 3, seed: int = 0) -> bool:
    """Random rewrite orders of random words reach the same normal form."""
    rng = random.Random(seed)
    for _ in range(trials):
        w = tuple((rng.randint(0, 1), rng.randint(1, n), rng.randint(1, n)) for _ in range(degree))
        if normal_form(w).terms != normal_form_random(w, rng):
            return False
    return True


def selftest() -> dict:
    """Named boolean results of every algebraic check; used by the command line."""
    from .generators import bigon, grid2xm

    res = {"confluence": confluence_check()}
    for n in (2, 3):
        M = symbolic_matrix(0)
        d = qdet(M, n)
        perms = list(permutations(range(1, n + 1)))
        res[f"qdet_rows_n{n}"] = all(qdet_row_permuted(M, n, s) == d for s in perms)
        res[f"qdet_cols_n{n}"] = all(qdet_col_permuted(M, n, t) == d for t in perms)
    G = grid2xm(1)
    mats = symbolic_connection(G)
    m = Multiweb(2, (2,))
    res["single_edge_alt"] = tr_alt(G, m, mats) == qdet(mats[G.edges[0].id], 2) * q_power(1)
    res["single_edge_codet"] = tr_codet(G, m, mats) == qdet(mats[G.edges[0].id], 2) * q_power(1)
    res.update({f"small_web_{k}": v for k, v in small_three_web_checks().items()})
    for H in (grid2xm(1), bigon()):
        for n in (2, 3):
            mats = symbolic_connection(H)
            res[f"kdet_vs_trace_{H.name}_n{n}"] = all(
                v == tr_alt(H, mw, mats) for mw, v in symbolic_kdet_parts(H, n))
    for n in (1, 2, 3):
        rep = grassmann_checks(n)
        for k, v in rep.items():
            if isinstance(v, bool):
                res[f"grassmann_n{n}_{k}"] = v
    return res
