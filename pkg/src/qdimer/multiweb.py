"""n-multiwebs, their colorings, vertex permutations and split webs.

Color subsets are bitmasks: color i (1-based) is bit i - 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterator, Mapping

from .pgraph import BLACK, CiliatedPlanarGraph, Edge

MAX_RANK = 16


@dataclass(frozen=True)
class Multiweb:
    """Edge multiplicities, aligned with ``G.edges``."""

    n: int
    mult: tuple

    @classmethod
    def from_mapping(cls, G: CiliatedPlanarGraph, n: int, mapping: Mapping) -> "Multiweb":
        m = cls(n, tuple(int(mapping.get(e.id, 0)) for e in G.edges))
        check_multiweb(G, m)
        return m

    def of(self, G: CiliatedPlanarGraph, eid) -> int:
        return self.mult[G.edge_index[eid]]

    def as_dict(self, G: CiliatedPlanarGraph) -> dict:
        return {e.id: k for e, k in zip(G.edges, self.mult) if k}

    def is_proper(self) -> bool:
        """No edge carries multiplicity above 1."""
        return all(k <= 1 for k in self.mult)


def check_multiweb(G: CiliatedPlanarGraph, m: Multiweb) -> None:
    if len(m.mult) != len(G.edges):
        raise ValueError("multiplicity vector has the wrong length")
    for v, _ in G.vertices:
        total = sum(m.of(G, eid) for eid in G.rotation[v])
        if total != m.n:
            raise ValueError(f"vertex {v!r}: multiplicities sum to {total}, need {m.n}")


def enumerate_multiwebs(G: CiliatedPlanarGraph, n: int) -> list[Multiweb]:
    """All n-multiwebs in lexicographic order of the multiplicity vector."""
    if n < 1:
        raise ValueError("need n >= 1")
    edges = G.edges
    last = {}
    for i, e in enumerate(edges):
        last[e.black] = i
        last[e.white] = i
    # capacity still reachable at each vertex after edge i
    remaining = [dict() for _ in range(len(edges) + 1)]
    count = {v: 0 for v, _ in G.vertices}
    for i in range(len(edges) - 1, -1, -1):
        e = edges[i]
        count[e.black] += 1
        count[e.white] += 1
        remaining[i] = dict(count)
    residual = {v: n for v, _ in G.vertices}
    chosen = [0] * len(edges)
    out: list[Multiweb] = []

    def rec(i):
        if i == len(edges):
            out.append(Multiweb(n, tuple(chosen)))
            return
        e = edges[i]
        b, w = e.black, e.white
        lo, hi = 0, min(residual[b], residual[w])
        for v in (b, w):
            # the edges after i at v must absorb what is left
            later = remaining[i][v] - 1
            lo = max(lo, residual[v] - n * later)
            if last[v] == i:
                lo = max(lo, residual[v])
        for k in range(lo, hi + 1):
            chosen[i] = k
            residual[b] -= k
            residual[w] -= k
            rec(i + 1)
            residual[b] += k
            residual[w] += k
        chosen[i] = 0

    rec(0)
    return out


def _set_partitions(colors: int, sizes: list[int]) -> Iterator[tuple]:
    """Ordered splittings of a color mask into disjoint masks of the given sizes."""
    if not sizes:
        if colors == 0:
            yield ()
        return
    bits = [b for b in range(MAX_RANK) if colors >> b & 1]
    for combo in combinations(bits, sizes[0]):
        mask = 0
        for b in combo:
            mask |= 1 << b
        for rest in _set_partitions(colors & ~mask, sizes[1:]):
            yield (mask,) + rest


def _active_incidence(G, m):
    act = {}
    for v, _ in G.vertices:
        act[v] = [eid for eid in G.rotation[v] if m.of(G, eid) > 0]
    return act


def enumerate_edge_colorings(G: CiliatedPlanarGraph, m: Multiweb) -> list[dict]:
    """Maps edge id -> color mask S_e, with the masks at every vertex partitioning all colors."""
    n = m.n
    if n > MAX_RANK:
        raise ValueError(f"rank above {MAX_RANK} is not supported")
    full = (1 << n) - 1
    active = [e for e in G.edges if m.of(G, e.id) > 0]
    used = {v: 0 for v, _ in G.vertices}
    left = {v: 0 for v, _ in G.vertices}
    for e in active:
        left[e.black] += 1
        left[e.white] += 1
    assignment: dict = {}
    out = []

    def rec(i):
        if i == len(active):
            out.append(dict(assignment))
            return
        e = active[i]
        k = m.of(G, e.id)
        free = full & ~used[e.black] & ~used[e.white]
        last_b = left[e.black] == 1
        last_w = left[e.white] == 1
        bits = [b for b in range(n) if free >> b & 1]
        for combo in combinations(bits, k):
            mask = 0
            for b in combo:
                mask |= 1 << b
            if last_b and (used[e.black] | mask) != full:
                continue
            if last_w and (used[e.white] | mask) != full:
                continue
            assignment[e.id] = mask
            used[e.black] |= mask
            used[e.white] |= mask
            left[e.black] -= 1
            left[e.white] -= 1
            rec(i + 1)
            left[e.black] += 1
            left[e.white] += 1
            used[e.black] &= ~mask
            used[e.white] &= ~mask
        assignment.pop(e.id, None)

    rec(0)
    return out


def enumerate_half_edge_colorings(G: CiliatedPlanarGraph, m: Multiweb) -> list[tuple[dict, dict]]:
    """Pairs (S, T): S_e at the white end, T_e at the black end, each partitioning colors per vertex."""
    full = (1 << m.n) - 1
    act = _active_incidence(G, m)

    def side(vertices):
        per_vertex = []
        for v in vertices:
            eids = act[v]
            per_vertex.append([(eids, p) for p in _set_partitions(full, [m.of(G, e) for e in eids])])
        results = [{}]
        for options in per_vertex:
            results = [_merge(r, eids, p) for r in results for eids, p in options]
        return results

    whites = side(G.whites)
    blacks = side(G.blacks)
    return [(S, T) for S in whites for T in blacks]


def _merge(base: dict, keys, values) -> dict:
    out = dict(base)
    out.update(zip(keys, values))
    return out


def mask_colors(mask: int) -> list[int]:
    """Colors (1-based, ascending) in a bitmask."""
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def inversions(seq) -> int:
    return sum(1 for i in range(len(seq)) for j in range(i + 1, len(seq)) if seq[i] > seq[j])


def vertex_permutation(G: CiliatedPlanarGraph, v, subsets: Mapping) -> tuple[list[int], int]:
    """Colors listed along the linear order at v (each subset ascending) and the inversion count."""
    sigma = []
    for eid in G.linear_order(v):
        if eid in subsets:
            sigma.extend(mask_colors(subsets[eid]))
    return sigma, inversions(sigma)


def split_graph(G: CiliatedPlanarGraph, m: Multiweb) -> CiliatedPlanarGraph:
    """Split web: edges of multiplicity k become k adjacent parallel copies, unused edges vanish.

    Copy ids are ``(edge id, j)``. Copies appear in the same order in both stored
    rotations, which makes them parallel, and no cilium falls between copies.
    """
    edges = []
    for e in G.edges:
        for j in range(m.of(G, e.id)):
            edges.append(Edge((e.id, j), e.black, e.white))
    rotation, cilium = {}, {}

    def new_corner(v, c):
        rot = G.rotation[v]
        d = len(rot)
        # walk back to the closest used edge at or before position c
        for back in range(d):
            eid = rot[(c - back) % d]
            k = m.of(G, eid)
            if k:
                return new_rot_index[v][(eid, k - 1)]
        raise ValueError(f"vertex {v!r} has no used edge")

    new_rot_index = {}
    for v, _ in G.vertices:
        r = [(eid, j) for eid in G.rotation[v] for j in range(m.of(G, eid))]
        rotation[v] = r
        new_rot_index[v] = {x: i for i, x in enumerate(r)}
    for v, _ in G.vertices:
        cilium[v] = new_corner(v, G.cilium[v])
    oc = None
    if G.outer_corner is not None:
        oc = (G.outer_corner[0], new_corner(*G.outer_corner))
    return CiliatedPlanarGraph(
        G.vertices, edges, rotation, cilium, oc, G.positions, None, f"split of {G.name}",
        require_connected=False,
    )


def decompose_into_dimers(G: CiliatedPlanarGraph, m: Multiweb) -> list[tuple] | None:
    """Write m as an overlay of n dimer covers (lists of edge ids), or None if impossible."""
    from .pgraph import dimer_covers

    covers = [set(c) for c in dimer_covers(G)]

    def rec(mult: dict, k: int, start: int):
        if k == 0:
            return [] if not any(mult.values()) else None
        for i in range(start, len(covers)):
            c = covers[i]
            if all(mult.get(e, 0) > 0 for e in c):
                for e in c:
                    mult[e] -= 1
                rest = rec(mult, k - 1, i)
                for e in c:
                    mult[e] += 1
                if rest is not None:
                    return [tuple(sorted(c, key=G.edge_index.__getitem__))] + rest
        return None

    return rec(m.as_dict(G), m.n, 0)
