"""Kasteleyn signs, the blow-up graph and the q-Kasteleyn determinant.

Copies of vertices in the blow-up graph are indexed lexicographically: copy j
(1-based) of the i-th black vertex has index (i - 1) * n + j, same for whites.
A term of the determinant is a dimer cover of the blow-up graph, enumerated as
(multiweb, half-edge coloring, per-edge bijection S_e -> T_e).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations
from math import comb
from typing import Callable, Hashable, Mapping

from .connection import DiagonalConnection, solve_face_constraints
from .laurent import ONE, ZERO, QLaurent, laurent_sum
from .multiweb import (
    Multiweb,
    enumerate_edge_colorings,
    enumerate_half_edge_colorings,
    enumerate_multiwebs,
    inversions,
    mask_colors,
    vertex_permutation,
)
from .pgraph import CiliatedPlanarGraph, Face
from .qtrace import normalized_trace, partition_function


@dataclass(frozen=True)
class KasteleynSigns:
    n_parity: int  # 1 for odd n, 0 for even n
    sign: Mapping[Hashable, int]

    def __getitem__(self, eid) -> int:
        return self.sign[eid]


def kasteleyn_target(G: CiliatedPlanarGraph, face: Face, n: int) -> int:
    """Exponent of -1 required for the product of signs around a bounded face."""
    base = face.length // 2 - 1
    if n % 2 == 0:
        base -= G.inward_cilia(face)
    return base % 2


def build_signs(G: CiliatedPlanarGraph, n: int, tree: set | None = None) -> KasteleynSigns:
    bits = solve_face_constraints(G, lambda f: kasteleyn_target(G, f, n), modulus=2, tree=tree)
    return KasteleynSigns(n % 2, {eid: -1 if b else 1 for eid, b in bits.items()})


def is_kasteleyn(G: CiliatedPlanarGraph, signs: KasteleynSigns, n: int) -> bool:
    for f in G.internal_faces:
        prod = 1
        for d in f.darts:
            prod *= signs[d.edge]
        if prod != (-1) ** kasteleyn_target(G, f, n):
            return False
    return True


def permutation_parity(perm: list[int]) -> int:
    """0 for even, 1 for odd; perm is a 0-based list."""
    seen = [False] * len(perm)
    parity = 0
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        parity ^= (length - 1) & 1
    return parity


# entry providers: entry(eid, i, j) gives the lifted value for white copy i, black copy j, or None for zero

def diagonal_entries(conn: DiagonalConnection) -> Callable:
    def entry(eid, i, j):
        return conn[eid][i - 1] if i == j else None

    return entry


@dataclass
class BlowupTerm:
    multiweb: Multiweb
    S: dict
    T: dict
    h: dict  # eid -> {white color: black color}
    sigma_tilde: list
    vertex_length: int
    edge_length: int


def _sigma_tilde(G, n, h) -> list:
    widx = {w: i for i, w in enumerate(G.whites)}
    bidx = {b: i for i, b in enumerate(G.blacks)}
    perm = [None] * (G.N * n)
    for eid, mapping in h.items():
        e = G.edge[eid]
        for i, j in mapping.items():
            perm[widx[e.white] * n + i - 1] = bidx[e.black] * n + j - 1
    return perm


def _edge_permutation_length(S_mask, T_mask, mapping) -> int:
    s_list = mask_colors(S_mask)
    rank_t = {t: r for r, t in enumerate(mask_colors(T_mask))}
    return inversions([rank_t[mapping[s]] for s in s_list])


def blowup_terms(G: CiliatedPlanarGraph, m: Multiweb, diagonal_only: bool = False):
    """Dimer covers of the blow-up graph projecting to m, with their combinatorial data."""
    n = m.n
    if diagonal_only:
        colorings = [(c, c) for c in enumerate_edge_colorings(G, m)]
    else:
        colorings = enumerate_half_edge_colorings(G, m)
    active = [e.id for e in G.edges if m.of(G, e.id)]
    for S, T in colorings:
        vlen = sum(vertex_permutation(G, w, _at(G, w, S))[1] for w in G.whites)
        vlen += sum(vertex_permutation(G, b, _at(G, b, T))[1] for b in G.blacks)
        if diagonal_only:
            choices = [[{i: i for i in mask_colors(S[eid])}] for eid in active]
        else:
            choices = []
            for eid in active:
                s_list, t_list = mask_colors(S[eid]), mask_colors(T[eid])
                choices.append([dict(zip(s_list, p)) for p in permutations(t_list)])
        for combo in _product(choices):
            h = dict(zip(active, combo))
            elen = sum(_edge_permutation_length(S[eid], T[eid], h[eid]) for eid in active)
            yield BlowupTerm(m, S, T, h, _sigma_tilde(G, n, h), vlen, elen)


def _at(G, v, masks):
    return {eid: masks[eid] for eid in G.rotation[v] if eid in masks}


def _product(lists):
    if not lists:
        yield ()
        return
    for x in lists[0]:
        for rest in _product(lists[1:]):
            yield (x,) + rest


def term_value(G: CiliatedPlanarGraph, n: int, term: BlowupTerm, signs: KasteleynSigns, entry: Callable, one=ONE):
    """Signed, q-weighted, white-ordered product for one blow-up dimer cover; None if an entry vanishes."""
    widx_to = {}
    for eid, mapping in term.h.items():
        e = G.edge[eid]
        for i, j in mapping.items():
            widx_to[(e.white, i)] = (eid, j)
    prod = one
    for w in G.whites:
        for i in range(1, n + 1):
            eid, j = widx_to[(w, i)]
            x = entry(eid, i, j)
            if x is None:
                return None
            prod = prod * x
    sign = -1 if permutation_parity(term.sigma_tilde) else 1
    for eid in term.h:
        sign *= signs[eid] ** term.multiweb.of(G, eid)
    power = term.vertex_length + term.edge_length + sum(comb(k, 2) for k in term.multiweb.mult)
    return QLaurent.monomial(power, sign) * prod


def kdet_by_multiweb(G, n, entry, signs, diagonal_only, one=ONE, zero=ZERO) -> list:
    out = []
    for m in enumerate_multiwebs(G, n):
        acc = zero
        for term in blowup_terms(G, m, diagonal_only):
            v = term_value(G, n, term, signs, entry, one)
            if v is not None:
                acc = acc + v
        out.append((m, acc))
    return out


def kdet(conn: DiagonalConnection, G: CiliatedPlanarGraph, signs: KasteleynSigns | None = None, general: bool = False) -> QLaurent:
    """q-Kasteleyn determinant of a diagonal connection.

    Off-diagonal lifted entries vanish, so only bijections h = id with S_e = T_e
    contribute; ``general=True`` runs the full half-edge enumeration instead.
    """
    n = conn.n
    signs = build_signs(G, n) if signs is None else signs
    parts = kdet_by_multiweb(G, n, diagonal_entries(conn), signs, diagonal_only=not general)
    return laurent_sum(v for _, v in parts).scale_by_power(-G.N * comb(n, 2))


def kdet_matrix(conn: DiagonalConnection, G: CiliatedPlanarGraph, signs: KasteleynSigns | None = None) -> QLaurent:
    """Matrix-indexed route for simple graphs: sum over permutations with nonzero blown-up entries."""
    n = conn.n
    signs = build_signs(G, n) if signs is None else signs
    pairs = {}
    for e in G.edges:
        key = (e.black, e.white)
        if key in pairs:
            raise ValueError("matrix-indexed determinant needs a simple graph")
        pairs[key] = e.id
    whites, blacks = G.whites, G.blacks
    rows = [(w, i) for w in whites for i in range(1, n + 1)]
    cols = [(b, j) for b in blacks for j in range(1, n + 1)]
    col_index = {c: k for k, c in enumerate(cols)}
    options = []
    for w, i in rows:
        opts = []
        for b in blacks:
            eid = pairs.get((b, w))
            if eid is None:
                continue
            for j in range(1, n + 1):
                x = conn[eid][i - 1] if i == j else None
                if x is not None and not x.is_zero():
                    opts.append((col_index[(b, j)], eid, j, signs[eid] * x))
        options.append(opts)
    used = [False] * len(cols)
    perm = [0] * len(rows)
    chosen = [None] * len(rows)
    total = []

    def finish():
        S, T, h = {}, {}, {}
        for (w, i), (col, eid, j, _) in zip(rows, chosen):
            S[eid] = S.get(eid, 0) | 1 << (i - 1)
            T[eid] = T.get(eid, 0) | 1 << (j - 1)
            h.setdefault(eid, {})[i] = j
        vlen = sum(vertex_permutation(G, w, _at(G, w, S))[1] for w in whites)
        vlen += sum(vertex_permutation(G, b, _at(G, b, T))[1] for b in blacks)
        elen = sum(_edge_permutation_length(S[eid], T[eid], h[eid]) for eid in h)
        mult = sum(comb(bin(S[eid]).count("1"), 2) for eid in S)
        value = QLaurent.monomial(vlen + elen + mult, -1 if permutation_parity(perm) else 1)
        for *_, x in chosen:
            value = value * x
        total.append(value)

    def rec(r):
        if r == len(rows):
            finish()
            return
        for opt in options[r]:
            col = opt[0]
            if used[col]:
                continue
            used[col] = True
            perm[r] = col
            chosen[r] = opt
            rec(r + 1)
            used[col] = False

    rec(0)
    return laurent_sum(total).scale_by_power(-G.N * comb(n, 2))


@dataclass
class VerifyResult:
    sign: int
    match: bool
    kdet: QLaurent
    z: QLaurent
    detail: str = ""


def verify_kasteleyn(conn: DiagonalConnection, G: CiliatedPlanarGraph) -> VerifyResult:
    """Compare Kdet_q with Z_q; on mismatch name the first multiweb whose contributions disagree."""
    n = conn.n
    signs = build_signs(G, n)
    k = kdet(conn, G, signs)
    z = partition_function(conn, G, n)
    if k == z:
        return VerifyResult(1, True, k, z)
    if k == -z:
        return VerifyResult(-1, True, k, z)
    detail = ""
    parts = kdet_by_multiweb(G, n, diagonal_entries(conn), signs, diagonal_only=True)
    sign = None
    for m, value in parts:
        kv = value.scale_by_power(-G.N * comb(n, 2))
        tv = normalized_trace(conn, G, m)
        if sign is None and not tv.is_zero():
            sign = 1 if kv == tv else -1 if kv == -tv else 0
        if sign is None or kv != sign * tv:
            detail = f"first disagreement at multiweb {m.as_dict(G)}: kdet part {kv}, trace {tv}"
            break
    return VerifyResult(0, False, k, z, detail)
