"""Planar bipartite graphs with a rotation system and one cilium per vertex.

Conventions
-----------
* ``rotation[v]`` lists the edge ids around ``v``: counterclockwise at black
  vertices and clockwise at white vertices.
* ``cilium[v] = c`` puts the cilium between rotation positions ``c`` and ``c+1``;
  the edge at position ``c+1`` comes first in the linear order at ``v``.
* Faces are traced with the face on the left, so bounded faces run
  counterclockwise. Corner ``i`` of a face sits at the head of its ``i``-th dart.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Hashable, Iterable, Mapping, Sequence

BLACK = "black"
WHITE = "white"


class GraphError(ValueError):
    """Raised when a graph fails validation; the message names the location."""


@dataclass(frozen=True)
class Edge:
    id: Hashable
    black: Hashable
    white: Hashable

    def other(self, v):
        return self.white if v == self.black else self.black


@dataclass(frozen=True)
class Dart:
    edge: Hashable
    tail: Hashable
    head: Hashable


@dataclass(frozen=True)
class Face:
    index: int
    darts: tuple
    corners: tuple  # (vertex, corner index) at the head of each dart
    is_outer: bool = False

    @property
    def length(self) -> int:
        return len(self.darts)

    @property
    def vertices(self) -> list:
        return [v for v, _ in self.corners]


class CiliatedPlanarGraph:
    def __init__(
        self,
        vertices: Sequence[tuple[Hashable, str]],
        edges: Sequence[Edge | tuple],
        rotation: Mapping[Hashable, Sequence[Hashable]],
        cilium: Mapping[Hashable, int] | None = None,
        outer_corner: tuple | None = None,
        positions: Mapping[Hashable, tuple[float, float]] | None = None,
        distinguished_edge: Hashable | None = None,
        name: str = "",
        allow_outer_fallback: bool = True,
        require_connected: bool = True,
    ):
        self.vertices = tuple((v, c) for v, c in vertices)
        self.color = {v: c for v, c in self.vertices}
        self.edges = tuple(e if isinstance(e, Edge) else Edge(*e) for e in edges)
        self.edge = {e.id: e for e in self.edges}
        self.rotation = {v: tuple(rotation.get(v, ())) for v, _ in self.vertices}
        self.cilium = {v: int((cilium or {}).get(v, 0)) for v, _ in self.vertices}
        self.outer_corner = tuple(outer_corner) if outer_corner is not None else None
        self.positions = dict(positions) if positions else None
        self.distinguished_edge = distinguished_edge
        self.name = name
        self.allow_outer_fallback = allow_outer_fallback
        self.require_connected = require_connected
        self.validate()

    # orderings
    @cached_property
    def blacks(self) -> list:
        return [v for v, c in self.vertices if c == BLACK]

    @cached_property
    def whites(self) -> list:
        return [v for v, c in self.vertices if c == WHITE]

    @property
    def N(self) -> int:
        return len(self.blacks)

    @cached_property
    def edge_ids(self) -> list:
        return [e.id for e in self.edges]

    @cached_property
    def edge_index(self) -> dict:
        return {e.id: i for i, e in enumerate(self.edges)}

    @cached_property
    def vertex_index(self) -> dict:
        return {v: i for i, (v, _) in enumerate(self.vertices)}

    def degree(self, v) -> int:
        return len(self.rotation[v])

    def incident(self, v) -> tuple:
        return self.rotation[v]

    # validation
    def validate(self) -> None:
        ids = [v for v, _ in self.vertices]
        if len(set(ids)) != len(ids):
            raise GraphError("duplicate vertex id")
        for v, c in self.vertices:
            if c not in (BLACK, WHITE):
                raise GraphError(f"vertex {v!r}: color must be black or white, got {c!r}")
        if len(self.edge) != len(self.edges):
            raise GraphError("duplicate edge id")
        for e in self.edges:
            if e.black not in self.color or e.white not in self.color:
                raise GraphError(f"edge {e.id!r}: unknown endpoint")
            if self.color[e.black] != BLACK or self.color[e.white] != WHITE:
                raise GraphError(f"edge {e.id!r}: must join a black vertex to a white vertex")
        if len(self.blacks) != len(self.whites) or not self.blacks:
            raise GraphError(f"need |B| = |W| >= 1, got {len(self.blacks)} black and {len(self.whites)} white")
        seen = {}
        for v, rot in self.rotation.items():
            if len(set(rot)) != len(rot):
                raise GraphError(f"vertex {v!r}: repeated edge in rotation")
            for eid in rot:
                if eid not in self.edge:
                    raise GraphError(f"vertex {v!r}: rotation refers to unknown edge {eid!r}")
                e = self.edge[eid]
                if v not in (e.black, e.white):
                    raise GraphError(f"vertex {v!r}: edge {eid!r} is not incident")
                seen[(eid, v)] = True
            if not rot:
                raise GraphError(f"vertex {v!r}: isolated vertex")
        for e in self.edges:
            for v in (e.black, e.white):
                if (e.id, v) not in seen:
                    raise GraphError(f"edge {e.id!r}: missing from rotation at {v!r}")
        for v, c in self.cilium.items():
            if not 0 <= c < max(1, self.degree(v)):
                raise GraphError(f"vertex {v!r}: cilium corner {c} out of range")
        comps = len(self.components())
        if comps > 1 and self.require_connected:
            raise GraphError("graph is not connected")
        V, E, F = len(self.vertices), len(self.edges), len(self.faces)
        # each component is traced on its own sphere
        if V - E + F != 2 * comps:
            raise GraphError(f"rotation system is not planar: V-E+F = {V - E + F}")
        if self.outer_corner is not None:
            v, c = self.outer_corner
            if v not in self.color or not 0 <= c < max(1, self.degree(v)):
                raise GraphError(f"outer corner {self.outer_corner!r} is invalid")

    def components(self) -> list[list]:
        """Vertex lists of the connected components, in vertex order."""
        seen = set()
        out = []
        for start, _ in self.vertices:
            if start in seen:
                continue
            seen.add(start)
            comp, stack = [start], [start]
            while stack:
                v = stack.pop()
                for eid in self.rotation[v]:
                    u = self.edge[eid].other(v)
                    if u not in seen:
                        seen.add(u)
                        comp.append(u)
                        stack.append(u)
            out.append(sorted(comp, key=self.vertex_index.__getitem__))
        return out

    # geometry of corners
    def ccw(self, v) -> tuple:
        """Incident edges in geometric counterclockwise order."""
        rot = self.rotation[v]
        return rot if self.color[v] == BLACK else tuple(reversed(rot))

    def corner_between(self, v, leave_edge, arrive_edge) -> int:
        """Corner index of the sector at v running counterclockwise from leave_edge to arrive_edge."""
        rot = self.rotation[v]
        if self.color[v] == BLACK:
            return rot.index(leave_edge) % len(rot)
        return rot.index(arrive_edge) % len(rot)

    def corner_edges(self, v, c) -> tuple:
        """(edge before, edge after) the corner in stored rotation order."""
        rot = self.rotation[v]
        return rot[c % len(rot)], rot[(c + 1) % len(rot)]

    @cached_property
    def faces(self) -> list[Face]:
        darts_left = {}
        for e in self.edges:
            darts_left[(e.id, e.black)] = True
            darts_left[(e.id, e.white)] = True
        faces = []
        raw = []
        for e in self.edges:
            for tail in (e.black, e.white):
                if (e.id, tail) not in darts_left:
                    continue
                darts, corners = [], []
                eid, t = e.id, tail
                while (eid, t) in darts_left:
                    del darts_left[(eid, t)]
                    h = self.edge[eid].other(t)
                    darts.append(Dart(eid, t, h))
                    around = self.ccw(h)
                    i = around.index(eid)
                    nxt = around[(i - 1) % len(around)]
                    corners.append((h, self.corner_between(h, nxt, eid)))
                    eid, t = nxt, h
                raw.append((tuple(darts), tuple(corners)))
        outer = self._find_outer(raw)
        for i, (d, c) in enumerate(raw):
            faces.append(Face(i, d, c, i == outer))
        return faces

    def _find_outer(self, raw) -> int:
        if self.outer_corner is not None:
            oc = (self.outer_corner[0], self.outer_corner[1])
            for i, (_, corners) in enumerate(raw):
                if oc in corners:
                    return i
            raise GraphError(f"outer corner {oc!r} does not belong to any face")
        if not self.allow_outer_fallback:
            raise GraphError("no outer corner given and fallback disabled")
        best = max(range(len(raw)), key=lambda i: (len(raw[i][0]), -i))
        return best

    @cached_property
    def outer_face(self) -> Face:
        return next(f for f in self.faces if f.is_outer)

    @cached_property
    def internal_faces(self) -> list[Face]:
        return [f for f in self.faces if not f.is_outer]

    @cached_property
    def corner_face(self) -> dict:
        out = {}
        for f in self.faces:
            for corner in f.corners:
                out[corner] = f.index
        return out

    @cached_property
    def dart_face(self) -> dict:
        out = {}
        for f in self.faces:
            for d in f.darts:
                out[(d.edge, d.tail)] = f.index
        return out

    def cilium_face(self, v) -> int:
        return self.corner_face[(v, self.cilium[v])]

    def inward_cilia(self, face: Face) -> int:
        return sum(1 for v, _ in self.vertices if self.cilium_face(v) == face.index)

    def linear_order(self, v) -> list:
        """Incident edges in the linear order fixed by the cilium."""
        rot = self.rotation[v]
        c = self.cilium[v]
        d = len(rot)
        return [rot[(c + 1 + i) % d] for i in range(d)]

    # ciliation checks
    def is_positive_ciliation(self) -> bool:
        return all(self.inward_cilia(f) % 2 == 0 for f in self.internal_faces)

    def is_trivial_ciliation(self) -> bool:
        return all(self.inward_cilia(f) == f.length // 2 - 1 for f in self.internal_faces)

    # constructors of modified graphs
    def replace(self, **kw) -> "CiliatedPlanarGraph":
        args = dict(
            vertices=self.vertices, edges=self.edges, rotation=self.rotation, cilium=self.cilium,
            outer_corner=self.outer_corner, positions=self.positions,
            distinguished_edge=self.distinguished_edge, name=self.name,
            allow_outer_fallback=self.allow_outer_fallback,
            require_connected=self.require_connected,
        )
        args.update(kw)
        return CiliatedPlanarGraph(**args)

    def with_cilia(self, cilium: Mapping) -> "CiliatedPlanarGraph":
        new = dict(self.cilium)
        new.update(cilium)
        return self.replace(cilium=new)

    def rotate_cilium(self, v, direction: int = 1) -> "CiliatedPlanarGraph":
        """Move the cilium of v past one adjacent edge (direction +1 follows the rotation)."""
        d = self.degree(v)
        return self.with_cilia({v: (self.cilium[v] + direction) % d})

    def reflect(self) -> "CiliatedPlanarGraph":
        """Mirror image: every cyclic order reversed, corners re-indexed to the same sectors."""
        rot = {v: tuple(reversed(r)) for v, r in self.rotation.items()}

        def mirror(v, c):
            d = self.degree(v)
            return (d - 2 - c) % d

        cil = {v: mirror(v, c) for v, c in self.cilium.items()}
        oc = None
        if self.outer_corner is not None:
            oc = (self.outer_corner[0], mirror(*self.outer_corner))
        pos = {v: (-x, y) for v, (x, y) in self.positions.items()} if self.positions else None
        return self.replace(rotation=rot, cilium=cil, outer_corner=oc, positions=pos)

    def corner_of_face_at(self, face: Face, v) -> int:
        for u, c in face.corners:
            if u == v:
                return c
        raise GraphError(f"vertex {v!r} is not on face {face.index}")

    # dimer-cover based positive ciliation
    def positive_ciliation_from_dimer(self, dimer_edges: Iterable) -> "CiliatedPlanarGraph":
        """Both cilia of each dimer go into the face on the left of the dart black -> white."""
        dimer = list(dimer_edges)
        covered = {}
        cil = {}
        for eid in dimer:
            e = self.edge[eid]
            for v in (e.black, e.white):
                if v in covered:
                    raise GraphError(f"edge set is not a dimer cover: {v!r} covered twice")
                covered[v] = eid
            f = self.faces[self.dart_face[(eid, e.black)]]
            for i, d in enumerate(f.darts):
                if d.edge == eid and d.tail == e.black:
                    cil[e.white] = f.corners[i][1]
                    cil[e.black] = f.corners[i - 1][1]
                    break
        if len(covered) != len(self.vertices):
            raise GraphError("edge set is not a dimer cover: some vertex uncovered")
        return self.with_cilia(cil)

    # JSON
    def to_json(self) -> dict:
        out = {
            "vertices": [{"id": v, "color": c} for v, c in self.vertices],
            "edges": [{"id": e.id, "black": e.black, "white": e.white} for e in self.edges],
            "rotation": {str(v): list(r) for v, r in self.rotation.items()},
            "cilium": {str(v): c for v, c in self.cilium.items()},
        }
        if self.outer_corner is not None:
            out["outer_corner"] = [self.outer_corner[0], self.outer_corner[1]]
        if self.positions:
            out["positions"] = {str(v): list(p) for v, p in self.positions.items()}
        if self.distinguished_edge is not None:
            out["distinguished_edge"] = self.distinguished_edge
        if self.name:
            out["name"] = self.name
        return out

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)

    @classmethod
    def from_json(cls, obj: Mapping) -> "CiliatedPlanarGraph":
        try:
            verts = [(v["id"], v["color"]) for v in obj["vertices"]]
            keymap = {str(v): v for v, _ in verts}
            edges = [Edge(e["id"], e["black"], e["white"]) for e in obj["edges"]]
            emap = {str(e.id): e.id for e in edges}
            rotation = {keymap[k]: [emap.get(str(x), x) for x in r] for k, r in obj["rotation"].items()}
            cilium = {keymap[k]: int(c) for k, c in obj.get("cilium", {}).items()}
            oc = obj.get("outer_corner")
            if oc is not None:
                oc = (keymap.get(str(oc[0]), oc[0]), int(oc[1]))
            pos = obj.get("positions")
            if pos:
                pos = {keymap[k]: tuple(p) for k, p in pos.items()}
        except (KeyError, TypeError) as exc:
            raise GraphError(f"malformed graph JSON: missing or bad field {exc}") from exc
        for k in obj["rotation"]:
            if k not in keymap:
                raise GraphError(f"rotation refers to unknown vertex {k!r}")
        return cls(verts, edges, rotation, cilium, oc, pos, obj.get("distinguished_edge"), obj.get("name", ""))

    @classmethod
    def loads(cls, text: str) -> "CiliatedPlanarGraph":
        return cls.from_json(json.loads(text))

    def __repr__(self) -> str:
        return f"CiliatedPlanarGraph({self.name or ''} N={self.N}, E={len(self.edges)})"


# graph-theoretic helpers

def dimer_covers(G: CiliatedPlanarGraph) -> list[tuple]:
    """All perfect matchings as tuples of edge ids, by backtracking on the first uncovered black."""
    blacks = G.blacks
    out = []
    used_w = set()
    chosen = []

    def rec(i):
        if i == len(blacks):
            out.append(tuple(chosen))
            return
        b = blacks[i]
        for eid in G.rotation[b]:
            w = G.edge[eid].white
            if w in used_w:
                continue
            used_w.add(w)
            chosen.append(eid)
            rec(i + 1)
            chosen.pop()
            used_w.discard(w)

    rec(0)
    return out


def is_two_connected(G: CiliatedPlanarGraph) -> bool:
    verts = [v for v, _ in G.vertices]
    if len(verts) <= 2:
        return len(G.edges) >= 2 or len(verts) < 2
    for cut in verts:
        rest = [v for v in verts if v != cut]
        seen = {rest[0]}
        stack = [rest[0]]
        while stack:
            v = stack.pop()
            for eid in G.rotation[v]:
                u = G.edge[eid].other(v)
                if u != cut and u not in seen:
                    seen.add(u)
                    stack.append(u)
        if len(seen) != len(rest):
            return False
    return True


def _solve_exact(A: list[list[Fraction]], b: list[Fraction]) -> list[Fraction]:
    n = len(A)
    M = [row[:] + [b[i]] for i, row in enumerate(A)]
    for col in range(n):
        piv = next(r for r in range(col, n) if M[r][col] != 0)
        M[col], M[piv] = M[piv], M[col]
        p = M[col][col]
        for r in range(n):
            if r != col and M[r][col] != 0:
                f = M[r][col] / p
                M[r] = [a - f * c for a, c in zip(M[r], M[col])]
    return [M[i][n] / M[i][i] for i in range(n)]


def trivial_ciliation(G: CiliatedPlanarGraph, seed: int = 0, retries: int = 20) -> CiliatedPlanarGraph:
    """Ciliation with l/2 - 1 inward cilia on every bounded face, by the harmonic method.

    Bounded faces longer than 4 are fanned into quadrilaterals, conductances are
    random rationals, and a harmonic function with two poles on the outer face
    decides the left and right sides of each quadrilateral. White vertices on the
    left side and black vertices on the right side put their cilium into it.
    """
    if not G.internal_faces:
        return G
    if not is_two_connected(G):
        raise GraphError("trivial ciliation needs a 2-connected graph")
    rng = random.Random(seed)
    quads = []  # (original face, cyclic vertex list of the quad)
    extra_edges = []
    for f in G.internal_faces:
        vs = [d.tail for d in f.darts]  # counterclockwise boundary
        l = len(vs)
        if l == 2:
            continue
        if l == 4:
            quads.append((f, vs))
            continue
        for t in range(1, l // 2):
            quads.append((f, [vs[0], vs[2 * t - 1], vs[2 * t], vs[2 * t + 1]]))
            if 2 * t + 1 < l - 1:
                extra_edges.append((vs[0], vs[2 * t + 1]))
    pairs = [(e.black, e.white) for e in G.edges] + extra_edges
    outer_vs = [d.tail for d in G.outer_face.darts]
    pole0, pole1 = outer_vs[0], next(v for v in outer_vs if v != outer_vs[0])
    verts = [v for v, _ in G.vertices]
    for _ in range(retries):
        cond = [Fraction(rng.randint(1, 10**6), rng.randint(1, 10**6)) for _ in pairs]
        free = [v for v in verts if v not in (pole0, pole1)]
        idx = {v: i for i, v in enumerate(free)}
        A = [[Fraction(0)] * len(free) for _ in free]
        rhs = [Fraction(0)] * len(free)
        for (a, b), c in zip(pairs, cond):
            for x, y in ((a, b), (b, a)):
                if x in idx:
                    A[idx[x]][idx[x]] += c
                    if y in idx:
                        A[idx[x]][idx[y]] -= c
                    elif y == pole1:
                        rhs[idx[x]] += c
        sol = _solve_exact(A, rhs) if free else []
        value = {pole0: Fraction(0), pole1: Fraction(1)}
        value.update({v: sol[idx[v]] for v in free})
        if len(set(value.values())) != len(value):
            continue
        chosen: dict = {}
        ok = True
        for f, qv in quads:
            lo = min(range(4), key=lambda i: value[qv[i]])
            hi = max(range(4), key=lambda i: value[qv[i]])
            # counterclockwise from the minimum: right side first, then the maximum, then the left side
            right, left = [], []
            i = (lo + 1) % 4
            while i != hi:
                right.append(qv[i])
                i = (i + 1) % 4
            i = (hi + 1) % 4
            while i != lo:
                left.append(qv[i])
                i = (i + 1) % 4
            picks = [v for v in left if G.color[v] == WHITE] + [v for v in right if G.color[v] == BLACK]
            if len(picks) != 1:
                ok = False
                break
            v = picks[0]
            if v in chosen and chosen[v] != f.index:
                ok = False
                break
            chosen[v] = f.index
        if not ok:
            continue
        cil = {}
        for v in verts:
            face_idx = chosen.get(v, G.outer_face.index)
            cil[v] = G.corner_of_face_at(G.faces[face_idx], v)
        H = G.with_cilia(cil)
        if H.is_trivial_ciliation():
            return H
    raise GraphError("harmonic construction degenerated on every retry")


def ciliation_by_direction(G: CiliatedPlanarGraph, white_angle: float, black_angle: float) -> CiliatedPlanarGraph:
    """Point each cilium in a fixed direction, using the stored vertex positions."""
    import math

    if not G.positions:
        raise GraphError("direction-based ciliation needs vertex positions")
    cil = {}
    for v, color in G.vertices:
        target = white_angle if color == WHITE else black_angle
        x0, y0 = G.positions[v]
        around = G.ccw(v)
        if len(around) == 1:
            cil[v] = 0
            continue
        angles = []
        for eid in around:
            u = G.edge[eid].other(v)
            x1, y1 = G.positions[u]
            angles.append(math.atan2(y1 - y0, x1 - x0))
        # counterclockwise sector from around[i] to around[i+1] containing target
        for i in range(len(around)):
            a, b = angles[i], angles[(i + 1) % len(around)]
            span = (b - a) % (2 * math.pi) or 2 * math.pi
            if 0 < (target - a) % (2 * math.pi) < span:
                cil[v] = G.corner_between(v, around[i], around[(i + 1) % len(around)])
                break
        else:
            raise GraphError(f"direction hits an edge at {v!r}")
    return G.with_cilia(cil)


def rotation_from_positions(vertices, edges, positions) -> dict:
    """Rotation system (CCW at black, CW at white) read off straight-line positions."""
    import math

    color = dict(vertices)
    inc: dict = {v: [] for v, _ in vertices}
    for e in edges:
        e = e if isinstance(e, Edge) else Edge(*e)
        for v in (e.black, e.white):
            u = e.other(v)
            (x0, y0), (x1, y1) = positions[v], positions[u]
            inc[v].append((math.atan2(y1 - y0, x1 - x0), e.id))
    rot = {}
    for v, lst in inc.items():
        order = [eid for _, eid in sorted(lst, key=lambda t: t[0])]
        rot[v] = order if color[v] == BLACK else list(reversed(order))
    return rot
