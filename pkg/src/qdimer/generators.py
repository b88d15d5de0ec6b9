"""Standard graph families with reference ciliations."""

from __future__ import annotations

import math

from .pgraph import (
    BLACK,
    WHITE,
    CiliatedPlanarGraph,
    Edge,
    GraphError,
    ciliation_by_direction,
    dimer_covers,
    rotation_from_positions,
    trivial_ciliation,
)

# tilts tried for the left/right rule; the first that yields a trivial ciliation wins
_TILTS = (0.3, -0.3, 0.1, -0.1, 0.7, -0.7)


def _with_outer_dart(G: CiliatedPlanarGraph, edge, tail) -> CiliatedPlanarGraph:
    """Declare the face to the left of the dart (edge, tail -> other) as the outer face."""
    f = G.faces[G.dart_face[(edge, tail)]]
    return G.replace(outer_corner=f.corners[0])


def _cilia_into(G: CiliatedPlanarGraph, face_index: int, vertices=None) -> CiliatedPlanarGraph:
    f = G.faces[face_index]
    on_face = {v: c for v, c in f.corners}
    todo = vertices if vertices is not None else list(on_face)
    return G.with_cilia({v: on_face[v] for v in todo})


def _ciliate(G: CiliatedPlanarGraph, mode: str) -> CiliatedPlanarGraph:
    if mode == "positive":
        covers = dimer_covers(G)
        if not covers:
            raise GraphError("graph has no dimer cover")
        return G.positive_ciliation_from_dimer(covers[0])
    if mode == "trivial":
        if G.positions:
            for tilt in _TILTS:
                try:
                    H = ciliation_by_direction(G, math.pi + tilt, tilt)
                except GraphError:
                    continue
                if H.is_trivial_ciliation():
                    return H
        return trivial_ciliation(G)
    if mode == "custom":
        return G
    raise ValueError(f"unknown ciliation mode {mode!r}")


def _from_positions(name, cells_vertices, edge_pairs, positions, outer_dart) -> CiliatedPlanarGraph:
    verts = cells_vertices
    edges = [Edge(f"e{i}", b, w) for i, (b, w) in enumerate(edge_pairs)]
    rot = rotation_from_positions(verts, edges, positions)
    G = CiliatedPlanarGraph(verts, edges, rot, positions=positions, name=name)
    # outer dart given as (black, white, tail)
    b, w, tail = outer_dart
    eid = next(e.id for e in edges if e.black == b and e.white == w)
    return _with_outer_dart(G, eid, tail)


def cycle(N: int, cilia: str = "outward") -> CiliatedPlanarGraph:
    """Cycle with 2N alternating vertices; default cilia all point to the outer face."""
    if N < 1:
        raise ValueError("need N >= 1")
    names = [f"b{i // 2}" if i % 2 == 0 else f"w{i // 2}" for i in range(2 * N)]
    verts = [(v, BLACK if i % 2 == 0 else WHITE) for i, v in enumerate(names)]
    edges = []
    for i in range(2 * N):
        a, c = names[i], names[(i + 1) % (2 * N)]
        b, w = (a, c) if i % 2 == 0 else (c, a)
        edges.append(Edge(f"e{i}", b, w))
    rot = {}
    for i, v in enumerate(names):
        rot[v] = [f"e{(i - 1) % (2 * N)}", f"e{i}"]
    pos = {v: (math.cos(2 * math.pi * i / (2 * N)), math.sin(2 * math.pi * i / (2 * N))) for i, v in enumerate(names)}
    G = CiliatedPlanarGraph(verts, edges, rot, positions=pos, distinguished_edge="e0", name=f"cycle({N})")
    # e0 runs b0 -> w0 counterclockwise around the polygon, so its reverse dart sees the outside
    G = _with_outer_dart(G, "e0", "w0")
    if cilia == "outward":
        return _cilia_into(G, G.outer_face.index)
    return _ciliate(G, cilia)


def bigon(cilia: str = "outward") -> CiliatedPlanarGraph:
    """Two vertices joined by two parallel edges; ``mixed`` puts one cilium in each face."""
    G = cycle(1)
    if cilia == "outward":
        return G
    if cilia == "mixed":
        inner = G.internal_faces[0]
        return _cilia_into(G, inner.index, ["w0"])
    return _ciliate(G, cilia)


def _lattice_graph(name, cells, corner_fn, color_fn, pos_fn):
    verts_set = {}
    pairs = set()
    for cell in cells:
        ring = corner_fn(cell)
        for i in range(len(ring)):
            a, c = ring[i], ring[(i + 1) % len(ring)]
            verts_set[a] = True
            b, w = (a, c) if color_fn(a) == BLACK else (c, a)
            pairs.add((b, w))
    return verts_set, sorted(pairs)


def _square_subgraph(name, points, pairs, cilia, outer_hint=None):
    def vid(p):
        return f"{'b' if (p[0] + p[1]) % 2 == 0 else 'w'}{p[0]}_{p[1]}"

    pts = sorted(points, key=lambda p: (p[0], p[1]))
    verts = [(vid(p), BLACK if (p[0] + p[1]) % 2 == 0 else WHITE) for p in pts]
    nb = sum(1 for _, c in verts if c == BLACK)
    if 2 * nb != len(verts):
        raise GraphError(f"{name}: unbalanced colors ({nb} black of {len(verts)})")
    positions = {vid(p): (float(p[0]), float(p[1])) for p in pts}
    epairs = []
    for p, r in pairs:
        a, c = vid(p), vid(r)
        epairs.append((a, c) if a.startswith("b") else (c, a))
    epairs.sort()
    # bottom-most, left-most point: its lowest edge has the outside below it
    low = min(pts, key=lambda p: (p[1], p[0]))
    right = (low[0] + 1, low[1])
    if (low, right) in pairs or (right, low) in pairs:
        a, c = vid(low), vid(right)
        b, w = (a, c) if a.startswith("b") else (c, a)
        # the dart running right to left along the bottom has the outside on its left
        outer = (b, w, vid(right))
    else:
        up = (low[0], low[1] + 1)
        a, c = vid(low), vid(up)
        b, w = (a, c) if a.startswith("b") else (c, a)
        outer = (b, w, vid(low))
    G = _from_positions(name, verts, epairs, positions, outer)
    return _ciliate(G, cilia)


def _cells_to_square_edges(cells):
    pts, pairs = set(), set()
    for x, y in cells:
        ring = [(x, y), (x + 1, y), (x + 1, y + 1), (x, y + 1)]
        for i in range(4):
            a, c = ring[i], ring[(i + 1) % 4]
            pts.add(a)
            pairs.add(tuple(sorted((a, c))))
    return pts, pairs


def grid2xm(m: int, cilia: str = "trivial") -> CiliatedPlanarGraph:
    """2 x m grid of vertices, m - 1 squares in a row."""
    if m < 1:
        raise ValueError("need m >= 1")
    if m == 1:
        return _square_subgraph("grid2xm(1)", {(0, 0), (0, 1)}, {((0, 0), (0, 1))}, cilia)
    pts, pairs = _cells_to_square_edges([(i, 0) for i in range(m - 1)])
    return _square_subgraph(f"grid2xm({m})", pts, pairs, cilia)


def zigzag(m: int, cilia: str = "trivial") -> CiliatedPlanarGraph:
    """Staircase of m - 1 squares turning alternately up and right; it has m dimer covers."""
    if m < 1:
        raise ValueError("need m >= 1")
    if m == 1:
        return _square_subgraph("zigzag(1)", {(0, 0), (1, 0)}, {((0, 0), (1, 0))}, cilia)
    cells = [(0, 0)]
    for k in range(1, m - 1):
        x, y = cells[-1]
        cells.append((x, y + 1) if k % 2 == 1 else (x + 1, y))
    pts, pairs = _cells_to_square_edges(cells)
    return _square_subgraph(f"zigzag({m})", pts, pairs, cilia)


def square_grid(w: int, h: int, cilia: str = "trivial") -> CiliatedPlanarGraph:
    """w x h grid of vertices."""
    if w < 1 or h < 1:
        raise ValueError("need positive sizes")
    if (w * h) % 2:
        raise GraphError(f"square_grid({w},{h}): odd vertex count")
    pts = {(x, y) for x in range(w) for y in range(h)}
    pairs = set()
    for x, y in pts:
        if (x + 1, y) in pts:
            pairs.add(((x, y), (x + 1, y)))
        if (x, y + 1) in pts:
            pairs.add(((x, y), (x, y + 1)))
    return _square_subgraph(f"square_grid({w},{h})", pts, pairs, cilia)


def honeycomb_position(kind: str, x: int, y: int) -> tuple[float, float]:
    s = math.sqrt(3)
    px, py = s * x + s / 2 * y, 1.5 * y
    if kind == "b":
        return px + s / 2, py + 0.5
    return px, py


def honeycomb_cell(x: int, y: int) -> list[tuple[str, int, int]]:
    """The six vertices of hexagon (x, y) in counterclockwise order starting at its lower-left white."""
    return [("w", x, y), ("b", x, y - 1), ("w", x + 1, y - 1), ("b", x + 1, y - 1), ("w", x + 1, y), ("b", x, y)]


def honeycomb_patch(a: int, b: int, cilia: str = "trivial") -> CiliatedPlanarGraph:
    """Parallelogram of a x b hexagons; vertical edges have the black vertex at the lower end."""
    if a < 1 or b < 1:
        raise ValueError("need positive sizes")
    cells = [(x, y) for y in range(b) for x in range(a)]
    pts, pairs = set(), set()
    for x, y in cells:
        ring = honeycomb_cell(x, y)
        for i in range(6):
            p, r = ring[i], ring[(i + 1) % 6]
            pts.update((p, r))
            bl, wh = (p, r) if p[0] == "b" else (r, p)
            pairs.add((bl, wh))

    def vid(p):
        return f"{p[0]}{p[1]}_{p[2]}"

    order = sorted(pts, key=lambda p: (p[0] != "b", p[2], p[1]))
    verts = [(vid(p), BLACK if p[0] == "b" else WHITE) for p in order]
    nb = sum(1 for _, c in verts if c == BLACK)
    if 2 * nb != len(verts):
        raise GraphError(f"honeycomb_patch({a},{b}): unbalanced colors ({nb} black of {len(verts)})")
    positions = {vid(p): honeycomb_position(*p) for p in pts}
    epairs = sorted((vid(p), vid(r)) for p, r in pairs)
    # lowest edge of the first cell: b_{0,-1} -> w_{1,-1} runs left to right along the bottom,
    # so the outside is to the left of the reverse dart
    outer = (vid(("b", 0, -1)), vid(("w", 1, -1)), vid(("w", 1, -1)))
    G = _from_positions(f"honeycomb_patch({a},{b})", verts, epairs, positions, outer)
    return _ciliate(G, cilia)


FAMILIES = {
    "cycle": cycle,
    "bigon": bigon,
    "grid2xm": grid2xm,
    "zigzag": zigzag,
    "square_grid": square_grid,
    "honeycomb_patch": honeycomb_patch,
}


def small_families(max_vertices: int = 10, cilia: str = "trivial") -> list[CiliatedPlanarGraph]:
    """One instance of every family and size with at most max_vertices vertices."""
    out = []
    for N in range(1, max_vertices // 2 + 1):
        out.append(cycle(N) if cilia == "outward" else cycle(N, cilia))
    for m in range(2, max_vertices // 2 + 1):
        out.append(grid2xm(m, cilia))
        if m >= 3:
            out.append(zigzag(m, cilia))
    for w in range(2, max_vertices + 1):
        for h in range(w, max_vertices + 1):
            if w * h <= max_vertices and (w * h) % 2 == 0 and w >= 3:
                out.append(square_grid(w, h, cilia))
    for a in range(1, 4):
        for b in range(1, 4):
            try:
                G = honeycomb_patch(a, b, cilia)
            except GraphError:
                continue
            if len(G.vertices) <= max_vertices:
                out.append(G)
    return out
