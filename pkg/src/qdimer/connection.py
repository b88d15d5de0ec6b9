"""Diagonal connections, face monodromy and the quantum identity connection.

A diagonal connection stores one n-tuple of invertible Laurent monomials per edge,
read as the matrix attached to the edge oriented black -> white. The monodromy
of a bounded face multiplies Phi(e) for steps leaving a black vertex and
Phi(e)^{-1} for steps leaving a white vertex, walking counterclockwise.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass
from typing import Callable, Hashable, Mapping

from .laurent import ONE, QLaurent, q_power
from .pgraph import BLACK, CiliatedPlanarGraph, Face, GraphError


class FaceConstraintError(ArithmeticError):
    """No consistent solution of the face constraints exists."""


def q_identity_matrix(n: int) -> tuple[QLaurent, ...]:
    """Diagonal of Q = diag(q^{n-1}, q^{n-3}, ..., q^{1-n})."""
    if n < 1:
        raise ValueError("need n >= 1")
    return tuple(q_power(n + 1 - 2 * i) for i in range(1, n + 1))


def q_power_diagonal(n: int, alpha: int) -> tuple[QLaurent, ...]:
    return tuple(q_power(alpha * (n + 1 - 2 * i)) for i in range(1, n + 1))


@dataclass(frozen=True)
class DiagonalConnection:
    n: int
    entries: Mapping[Hashable, tuple]  # edge id -> n-tuple of QLaurent
    alpha: Mapping[Hashable, int] | None = None  # set when every entry is a power of Q

    @classmethod
    def identity(cls, G: CiliatedPlanarGraph, n: int) -> "DiagonalConnection":
        return cls.from_q_powers(G, n, {e.id: 0 for e in G.edges})

    @classmethod
    def from_q_powers(cls, G: CiliatedPlanarGraph, n: int, alpha: Mapping) -> "DiagonalConnection":
        alpha = {e.id: int(alpha.get(e.id, 0)) for e in G.edges}
        return cls(n, {eid: q_power_diagonal(n, a) for eid, a in alpha.items()}, alpha)

    def __getitem__(self, eid) -> tuple:
        return self.entries[eid]

    def is_sl(self) -> bool:
        for diag in self.entries.values():
            prod = ONE
            for x in diag:
                prod = prod * x
            if prod != ONE:
                return False
        return True

    def evaluate_at_one(self) -> dict:
        return {eid: tuple(x.eval_at_one() for x in diag) for eid, diag in self.entries.items()}

    def to_json(self) -> dict:
        if self.alpha is not None:
            return {"n": self.n, "q_powers": {str(k): v for k, v in self.alpha.items()}}
        return {"n": self.n, "entries": {str(k): [x.to_json() for x in d] for k, d in self.entries.items()}}

    @classmethod
    def from_json(cls, G: CiliatedPlanarGraph, obj: Mapping) -> "DiagonalConnection":
        keymap = {str(e.id): e.id for e in G.edges}
        try:
            n = int(obj["n"])
            if "q_powers" in obj:
                return cls.from_q_powers(G, n, {keymap[k]: v for k, v in obj["q_powers"].items()})
            entries = {keymap[k]: tuple(QLaurent.from_json(x) for x in d) for k, d in obj["entries"].items()}
        except (KeyError, TypeError, AttributeError) as exc:
            raise GraphError(f"malformed connection JSON: {exc!r}") from exc
        for e in G.edges:
            if e.id not in entries:
                raise GraphError(f"connection has no entry for edge {e.id!r}")
            if len(entries[e.id]) != n:
                raise GraphError(f"edge {e.id!r}: expected {n} diagonal entries")
        return cls(n, entries)


def random_monomial_connection(G: CiliatedPlanarGraph, n: int, rng: random.Random, span: int = 3) -> DiagonalConnection:
    """Diagonal entries +-q^a with |a| <= span and random signs."""
    entries = {}
    for e in G.edges:
        entries[e.id] = tuple(QLaurent.monomial(rng.randint(-span, span), rng.choice((1, -1))) for _ in range(n))
    return DiagonalConnection(n, entries)


def face_monodromy(conn: DiagonalConnection, G: CiliatedPlanarGraph, face: Face) -> tuple:
    """Counterclockwise monodromy of a face; diagonal, so independent of the base point."""
    acc = [ONE] * conn.n
    for d in face.darts:
        diag = conn[d.edge]
        if G.color[d.tail] == BLACK:
            acc = [a * x for a, x in zip(acc, diag)]
        else:
            acc = [a * x.inverse() for a, x in zip(acc, diag)]
    return tuple(acc)


def required_monodromy_power(G: CiliatedPlanarGraph, face: Face) -> int:
    """Power of Q a quantum identity connection must have around a bounded face."""
    return face.length // 2 - 1 - G.inward_cilia(face)


def spanning_tree(G: CiliatedPlanarGraph) -> set:
    """BFS tree from the first vertex, scanning incident edges in id order."""
    root = G.vertices[0][0]
    seen = {root}
    tree = set()
    queue = deque([root])
    while queue:
        v = queue.popleft()
        for eid in sorted(G.rotation[v], key=G.edge_index.__getitem__):
            u = G.edge[eid].other(v)
            if u not in seen:
                seen.add(u)
                tree.add(eid)
                queue.append(u)
    return tree


def solve_face_constraints(
    G: CiliatedPlanarGraph,
    target: Callable[[Face], int],
    modulus: int | None = None,
    tree: set | None = None,
) -> dict:
    """Integer (or mod-p) edge values x_e with sum_{darts of f} s_d x_e = target(f) on bounded faces.

    s_d is +1 when the dart leaves a black vertex and -1 otherwise. Tree edges
    get 0; cotree edges are solved by peeling the dual tree from its leaves,
    with the outer face as root.
    """
    tree = spanning_tree(G) if tree is None else tree
    value = {eid: 0 for eid in tree}
    faces = G.internal_faces
    unknown = {f.index: {d.edge for d in f.darts if d.edge not in value} for f in faces}
    by_index = {f.index: f for f in faces}
    ready = deque(sorted(i for i, s in unknown.items() if len(s) == 1))

    def norm(x):
        return x % modulus if modulus else x

    while ready:
        fi = ready.popleft()
        if len(unknown[fi]) != 1:
            continue
        f = by_index[fi]
        (eid,) = unknown[fi]
        total, coef = 0, 0
        for d in f.darts:
            s = 1 if G.color[d.tail] == BLACK else -1
            if d.edge == eid:
                coef += s
            else:
                total += s * value[d.edge]
        if coef == 0:
            raise FaceConstraintError(f"face {fi}: edge {eid!r} enters with zero net coefficient")
        rhs = target(f) - total
        if modulus:
            value[eid] = norm(rhs * coef)  # coef is +-1
        else:
            if rhs % coef:
                raise FaceConstraintError(f"face {fi}: no integer solution")
            value[eid] = rhs // coef
        for other in faces:
            s = unknown[other.index]
            if eid in s:
                s.discard(eid)
                if len(s) == 1:
                    ready.append(other.index)
    missing = [e.id for e in G.edges if e.id not in value]
    if missing:
        raise FaceConstraintError(f"edges {missing!r} were never determined; dual peeling stalled")
    # every bounded face must now be satisfied
    for f in faces:
        total = sum((1 if G.color[d.tail] == BLACK else -1) * value[d.edge] for d in f.darts)
        if norm(total - target(f)) != 0:
            raise FaceConstraintError(f"face {f.index}: constraint violated after solving")
    return value


def build_quantum_identity(G: CiliatedPlanarGraph, n: int, tree: set | None = None) -> DiagonalConnection:
    """Powers of Q per edge with counterclockwise face monodromy Q^{l/2 - 1 - k}."""
    alpha = solve_face_constraints(G, lambda f: required_monodromy_power(G, f), tree=tree)
    return DiagonalConnection.from_q_powers(G, n, alpha)


def is_quantum_identity(conn: DiagonalConnection, G: CiliatedPlanarGraph) -> bool:
    for f in G.internal_faces:
        want = q_power_diagonal(conn.n, required_monodromy_power(G, f))
        if face_monodromy(conn, G, f) != want:
            return False
    return True


def gauge_transform(conn: DiagonalConnection, G: CiliatedPlanarGraph, gauge: Mapping) -> DiagonalConnection:
    """Phi'(e) = A_white Phi(e) A_black for per-vertex diagonal A."""
    entries = {}
    for e in G.edges:
        aw, ab = gauge[e.white], gauge[e.black]
        entries[e.id] = tuple(w * x * b for w, x, b in zip(aw, conn[e.id], ab))
    return DiagonalConnection(conn.n, entries)


def random_sl_gauge(G: CiliatedPlanarGraph, n: int, rng: random.Random, span: int = 2) -> dict:
    """Per-vertex diagonal monomials with product 1."""
    out = {}
    for v, _ in G.vertices:
        exps = [rng.randint(-span, span) for _ in range(n - 1)]
        signs = [rng.choice((1, -1)) for _ in range(n - 1)]
        sign_last = 1
        for s in signs:
            sign_last *= s
        diag = [QLaurent.monomial(a, s) for a, s in zip(exps, signs)]
        diag.append(QLaurent.monomial(-sum(exps), sign_last))
        out[v] = tuple(diag)
    return out


def same_face_monodromies(a: DiagonalConnection, b: DiagonalConnection, G: CiliatedPlanarGraph) -> bool:
    return all(face_monodromy(a, G, f) == face_monodromy(b, G, f) for f in G.internal_faces)


def shuffled_tree(G: CiliatedPlanarGraph, rng: random.Random) -> set:
    """A random spanning tree (randomized DFS) for comparing builds."""
    root = rng.choice([v for v, _ in G.vertices])
    seen = {root}
    tree = set()
    stack = [root]
    while stack:
        v = stack.pop()
        eids = list(G.rotation[v])
        rng.shuffle(eids)
        for eid in eids:
            u = G.edge[eid].other(v)
            if u not in seen:
                seen.add(u)
                tree.add(eid)
                stack.append(u)
    return tree
