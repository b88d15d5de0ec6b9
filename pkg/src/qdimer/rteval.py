"""State-sum evaluation of web diagrams in blackboard framing.

A diagram is a list of slices read bottom to top. Every slice applies one
building block at a position of the current strand signature, a string over
'v' (strand oriented downward, carries V) and '^' (upward, carries V*); the
other strands pass through. Blocks:

    cup v^ / cup ^v    create two strands
    cap v^ / cap ^v    close two strands
    cross+ / cross-    crossing of two downward strands (R and its inverse)
    black d            black vertex on top, d downward legs below it
    white d            white vertex at the bottom, d downward legs above it

Black vertices list their legs left to right in counterclockwise order from a
cilium pointing up; white vertices list them clockwise from a cilium pointing
down. The state is a sparse map from index tuples to Laurent coefficients.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import permutations
from typing import Iterable

from .connection import build_quantum_identity
from .laurent import ONE, QLaurent, qfact, qint
from .multiweb import Multiweb, inversions, split_graph
from .pgraph import BLACK, CiliatedPlanarGraph
from .qtrace import trace_diagonal

BLOCK_ARITY = {  # (strands consumed, strands produced); vertex blocks take their degree
    "cup": (0, 2),
    "cap": (2, 0),
    "cross+": (2, 2),
    "cross-": (2, 2),
}
MAX_STATES = 2_000_000


class DiagramError(ValueError):
    """Malformed diagram: bad block, position or orientation."""


class DivisionFailure(ArithmeticError):
    """A state sum was not divisible by the product of quantum factorials."""


@dataclass(frozen=True)
class Slice:
    block: str  # cup, cap, cross+, cross-, black, white
    pos: int
    kind: str = ""  # "v^" or "^v" for cups and caps
    degree: int = 0  # for vertex blocks

    def arity(self) -> tuple[int, int]:
        if self.block == "black":
            return self.degree, 0
        if self.block == "white":
            return 0, self.degree
        return BLOCK_ARITY[self.block]

    def output_signature(self) -> str:
        if self.block in ("cup",):
            return self.kind
        if self.block in ("cross+", "cross-"):
            return "vv"
        if self.block == "white":
            return "v" * self.degree
        return ""

    def input_signature(self) -> str:
        if self.block == "cap":
            return self.kind
        if self.block in ("cross+", "cross-"):
            return "vv"
        if self.block == "black":
            return "v" * self.degree
        return ""

    def to_text(self) -> str:
        extra = f" {self.kind}" if self.kind else f" {self.degree}" if self.block in ("black", "white") else ""
        return f"{self.block}{extra} @{self.pos}"


@dataclass
class WebDiagram:
    slices: list = field(default_factory=list)
    bottom: str = ""

    def signatures(self) -> list[str]:
        """Signature below every slice, plus the final one at the top."""
        sig = self.bottom
        out = [sig]
        for s in self.slices:
            a, _ = s.arity()
            if s.pos < 0 or s.pos + a > len(sig):
                raise DiagramError(f"{s.to_text()}: position outside signature {sig!r}")
            want = s.input_signature()
            if sig[s.pos:s.pos + a] != want:
                raise DiagramError(f"{s.to_text()}: expects {want!r}, found {sig[s.pos:s.pos + a]!r}")
            sig = sig[:s.pos] + s.output_signature() + sig[s.pos + a:]
            out.append(sig)
        return out

    @property
    def top(self) -> str:
        return self.signatures()[-1]

    def is_closed(self) -> bool:
        return self.bottom == "" and self.top == ""

    def __add__(self, other: "WebDiagram") -> "WebDiagram":
        if self.top != other.bottom:
            raise DiagramError("signatures do not compose")
        return WebDiagram(self.slices + other.slices, self.bottom)

    def to_text(self) -> str:
        lines = []
        for s, sig in zip(self.slices, self.signatures()):
            lines.append(f"{s.to_text()} | strands: {' '.join(sig) if sig else '-'}")
        return "\n".join(lines)

    @classmethod
    def from_text(cls, text: str) -> "WebDiagram":
        """Parse one slice per line: ``block [kind|degree] @pos [| strands: sig]``; '#' starts a comment."""
        slices = []
        bottom = None
        for lineno, raw in enumerate(text.splitlines(), 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            head, _, tail = line.partition("|")
            parts = head.split()
            try:
                at = [p for p in parts if p.startswith("@")]
                pos = int(at[0][1:])
                words = [p for p in parts if not p.startswith("@")]
                block = words[0]
                kind, degree = "", 0
                if block in ("cup", "cap"):
                    kind = words[1]
                    if kind not in ("v^", "^v"):
                        raise ValueError(kind)
                elif block in ("black", "white"):
                    degree = int(words[1])
                elif block not in ("cross+", "cross-"):
                    raise ValueError(block)
            except (IndexError, ValueError) as exc:
                raise DiagramError(f"line {lineno}: cannot parse {raw!r}") from exc
            if bottom is None:
                sig = ""
                if tail.strip().startswith("strands:"):
                    sig = "".join(tail.split(":", 1)[1].split()).replace("-", "")
                bottom = sig
            slices.append(Slice(block, pos, kind, degree))
        d = cls(slices, bottom or "")
        d.signatures()
        return d


def _neg_q(k: int) -> QLaurent:
    return QLaurent.monomial(k, -1 if k % 2 else 1)


class _Blocks:
    """Precomputed block coefficients for a fixed rank n."""

    def __init__(self, n: int):
        self.n = n
        self.frac = QLaurent.monomial(_frac(-1, n))
        self.frac_inv = QLaurent.monomial(_frac(1, n))
        self.gap = QLaurent({1: 1, -1: -1})  # q - q^{-1}
        self.cup_weight = {i: QLaurent.monomial(n + 1 - 2 * i) for i in range(1, n + 1)}
        self.cap_weight = {i: QLaurent.monomial(2 * i - n - 1) for i in range(1, n + 1)}
        self.perm_weight = {}

    def permutation_weights(self, d):
        if d not in self.perm_weight:
            self.perm_weight[d] = {p: _neg_q(inversions(p)) for p in permutations(range(1, d + 1))}
        return self.perm_weight[d]

    def braid(self, i, j, positive):
        """[(coefficient, (a, b))] for R (positive) or R^{-1} applied to x_i (x) x_j."""
        if positive:
            s = self.frac
            if i > j:
                return [(s, (j, i))]
            if i == j:
                return [(s * QLaurent.monomial(1), (i, i))]
            return [(s, (j, i)), (s * self.gap, (i, j))]
        s = self.frac_inv
        if i < j:
            return [(s, (j, i))]
        if i == j:
            return [(s * QLaurent.monomial(-1), (i, i))]
        return [(s, (j, i)), (-(s * self.gap), (i, j))]


def _frac(a, b):
    from fractions import Fraction

    return Fraction(a, b)


def apply_slice(state: dict, s: Slice, blocks: _Blocks) -> dict:
    n = blocks.n
    p = s.pos
    out: dict = {}

    def put(key, val):
        cur = out.get(key)
        out[key] = val if cur is None else cur + val

    if s.block == "cup":
        for key, val in state.items():
            for i in range(1, n + 1):
                w = val if s.kind == "v^" else val * blocks.cup_weight[i]
                put(key[:p] + (i, i) + key[p:], w)
    elif s.block == "cap":
        for key, val in state.items():
            i, j = key[p], key[p + 1]
            if i != j:
                continue
            w = val if s.kind == "^v" else val * blocks.cap_weight[i]
            put(key[:p] + key[p + 2:], w)
    elif s.block in ("cross+", "cross-"):
        positive = s.block == "cross+"
        for key, val in state.items():
            for c, pair in blocks.braid(key[p], key[p + 1], positive):
                put(key[:p] + pair + key[p + 2:], val * c)
    elif s.block == "black":
        weights = blocks.permutation_weights(s.degree)
        for key, val in state.items():
            legs = key[p:p + s.degree]
            w = weights.get(legs)
            if w is not None:
                put(key[:p] + key[p + s.degree:], val * w)
    elif s.block == "white":
        weights = blocks.permutation_weights(s.degree)
        for key, val in state.items():
            for perm, w in weights.items():
                put(key[:p] + perm + key[p:], val * w)
    else:
        raise DiagramError(f"unknown block {s.block!r}")
    out = {k: v for k, v in out.items() if not v.is_zero()}
    if len(out) > MAX_STATES:
        raise DiagramError(f"state vector exceeds {MAX_STATES} entries")
    return out


def evaluate_map(d: WebDiagram, n: int, inputs: dict) -> dict:
    """Push a sparse input vector (index tuple -> coefficient) through the diagram."""
    for s in d.slices:
        if s.block in ("black", "white") and s.degree != n:
            raise DiagramError(f"vertex of degree {s.degree} in a rank {n} diagram")
    d.signatures()
    blocks = _Blocks(n)
    state = dict(inputs)
    for s in d.slices:
        state = apply_slice(state, s, blocks)
    return state


def evaluate(d: WebDiagram, n: int) -> QLaurent:
    if not d.is_closed():
        raise DiagramError("evaluate needs a closed diagram")
    state = evaluate_map(d, n, {(): ONE})
    return state.get((), QLaurent.zero())


# planar sweep of split webs

def _st_order(adj: dict, s, t) -> list:
    """st-ordering of a biconnected multigraph with s adjacent to t (Tarjan's list insertion)."""
    pre, parent, low = {}, {}, {}
    order = []

    def dfs(root):
        pre[root] = 0
        order.append(root)
        parent[root] = None
        stack = [(root, iter([t] + [u for u in adj[root] if u != t]))]
        low[root] = root
        while stack:
            v, it = stack[-1]
            advanced = False
            for u in it:
                if u not in pre:
                    pre[u] = len(order)
                    order.append(u)
                    parent[u] = v
                    low[u] = u
                    stack.append((u, iter(adj[u])))
                    advanced = True
                    break
                if u != parent[v] and pre[u] < pre[low[v]]:
                    low[v] = u
            if not advanced:
                stack.pop()
                if stack:
                    w = stack[-1][0]
                    if pre[low[v]] < pre[low[w]]:
                        low[w] = low[v]

    dfs(s)
    if len(order) < len(adj):
        raise DiagramError("component is not connected")
    nxt, prv = {s: t, t: None}, {s: None, t: s}
    sign = {s: -1}
    for v in order[2:]:
        p = parent[v]
        if sign[low[v]] == -1:
            # insert before p
            a = prv[p]
            nxt[a], prv[v], nxt[v], prv[p] = v, a, p, v
            sign[p] = 1
        else:
            b = nxt[p]
            nxt[p], prv[v], nxt[v] = v, p, b
            if b is not None:
                prv[b] = v
            sign[p] = -1
    out, v = [], s
    while v is not None:
        out.append(v)
        v = nxt[v]
    return out


def _ccw_after_corner(H: CiliatedPlanarGraph, v, c) -> list:
    """Incident edges in counterclockwise order starting just after corner c."""
    rot = H.rotation[v]
    d = len(rot)
    if H.color[v] == BLACK:
        return [rot[(c + 1 + i) % d] for i in range(d)]
    return [rot[(c - i) % d] for i in range(d)]


def _component_outer_corner(G: CiliatedPlanarGraph, m: Multiweb, H: CiliatedPlanarGraph, comp: set):
    """A corner of the split web lying in the face of this component that contains the outer region."""
    comp_edges = {e.id for e in G.edges if m.of(G, e.id) and e.black in comp}
    start = G.outer_face.index
    seen = {start}
    queue = [start]
    while queue:
        fi = queue.pop(0)
        f = G.faces[fi]
        for v, c in f.corners:
            if v in comp:
                return v, _split_corner(G, m, v, c)
        for dart in f.darts:
            if dart.edge in comp_edges:
                continue
            e = G.edge[dart.edge]
            other = G.dart_face[(dart.edge, e.other(dart.tail))]
            if other not in seen:
                seen.add(other)
                queue.append(other)
    raise DiagramError("no face reaches the component")


def _split_corner(G, m, v, c):
    rot = G.rotation[v]
    d = len(rot)
    copies = []
    for eid in rot:
        copies.extend((eid, j) for j in range(m.of(G, eid)))
    index = {x: i for i, x in enumerate(copies)}
    for back in range(d):
        eid = rot[(c - back) % d]
        k = m.of(G, eid)
        if k:
            return index[(eid, k - 1)]
    raise DiagramError(f"vertex {v!r} has no used edge")


def _black_composite(p: int, in_legs: list, out_legs: list, linear: list) -> tuple[list, list]:
    """Slices for a black vertex whose in-legs sit at positions p.. (left to right).

    Returns (slices, out legs left to right). ``linear`` is the leg order from the cilium.
    """
    a, b = len(in_legs), len(out_legs)
    cyc = list(in_legs) + list(reversed(out_legs))  # counterclockwise
    d = a + b
    start = cyc.index(linear[0])
    if [cyc[(start + i) % d] for i in range(d)] != list(linear):
        raise DiagramError("linear order is not a rotation of the counterclockwise order")
    slices = []
    U = out_legs  # U[0] = U_1 leftmost on top
    L = in_legs
    if start == 0 or start >= a:
        # cilium faces the top: legs U_k..U_1 bend left, U_b..U_{k+1} bend right
        k = 0 if start == 0 else b - (start - a)
        right = U[k:]  # U_{k+1}..U_b
        for depth, _ in enumerate(reversed(right)):
            # outermost (U_b) first, each new cup nested inside the previous one
            slices.append(Slice("cup", p + a + depth, "v^"))
        left = U[:k]  # U_1..U_k
        for depth, _ in enumerate(left):
            slices.append(Slice("cup", p + depth, "^v"))
        slices.append(Slice("black", p + k, degree=d))
        return slices, list(U)
    # cilium faces the bottom between L_j and L_{j+1}
    j = start
    pos = p + a
    for depth in range(b):  # U_b outermost first
        slices.append(Slice("cup", pos + depth, "v^"))
    for depth in range(j):  # then L_1..L_j nested inside U_1
        slices.append(Slice("cup", pos + b + depth, "v^"))
    slices.append(Slice("black", p + j, degree=d))
    for depth in range(j):  # innermost cap first
        slices.append(Slice("cap", p + j - 1 - depth, "v^"))
    return slices, list(U)


def _mirror(slices: list) -> list:
    """Reflect top to bottom and reverse orientations: cup <-> cap, black <-> white."""
    swap = {"cup": "cap", "cap": "cup", "black": "white", "white": "black"}
    return [Slice(swap.get(s.block, s.block), s.pos, s.kind, s.degree) for s in reversed(slices)]


def _vertex_slices(H, v, p, in_legs, out_legs):
    linear = H.linear_order(v)
    if H.color[v] == BLACK:
        sl, _ = _black_composite(p, in_legs, out_legs, linear)
        return sl
    # a white vertex is a black one seen in a mirror: bottom and top legs trade places
    sl, _ = _black_composite(p, out_legs, in_legs, linear)
    return _mirror(sl)


def _sweep_component(H: CiliatedPlanarGraph, comp: list, outer_corner) -> list:
    comp_set = set(comp)
    v0, c0 = outer_corner
    ccw0 = _ccw_after_corner(H, v0, c0)
    # the first edge counterclockwise after the outer corner goes to t
    first = ccw0[0]
    s, t = v0, H.edge[first].other(v0)
    adj = {v: [H.edge[e].other(v) for e in H.rotation[v]] for v in comp}
    if len(comp) == 2:
        order = [s, t]
    else:
        order = _st_order(adj, s, t)
    rank = {v: i for i, v in enumerate(order)}
    # outer corner at t: the corner of the outer face at t
    fi = H.corner_face[(v0, c0)]
    t_corner = next(c for u, c in H.faces[fi].corners if u == t)
    frontier: list = []
    slices: list = []
    for v in order:
        if v == s:
            cyc = _ccw_after_corner(H, v, c0)
        elif v == t:
            cyc = _ccw_after_corner(H, v, t_corner)
        else:
            cyc = list(H.ccw(v))
        is_in = [rank[H.edge[e].other(v)] < rank[v] for e in cyc]
        if v == s:
            in_legs, out_rl = [], cyc
        elif v == t:
            in_legs, out_rl = cyc, []
        else:
            d = len(cyc)
            r = next(i for i in range(d) if is_in[i] and not is_in[i - 1])
            cyc = cyc[r:] + cyc[:r]
            is_in = is_in[r:] + is_in[:r]
            a = sum(is_in)
            if not all(is_in[:a]) or any(is_in[a:]):
                raise DiagramError(f"vertex {v!r}: incoming edges are not consecutive")
            in_legs, out_rl = cyc[:a], cyc[a:]
        out_legs = list(reversed(out_rl))
        if in_legs:
            try:
                p = frontier.index(in_legs[0])
            except ValueError as exc:
                raise DiagramError(f"vertex {v!r}: in-edge missing from the sweep line") from exc
            if frontier[p:p + len(in_legs)] != in_legs:
                raise DiagramError(f"vertex {v!r}: in-edges are not adjacent on the sweep line")
        else:
            p = len(frontier)
        slices.extend(_vertex_slices(H, v, p, in_legs, out_legs))
        frontier[p:p + len(in_legs)] = out_legs
    if frontier:
        raise DiagramError("sweep ended with open strands")
    return slices


def from_multiweb(G: CiliatedPlanarGraph, m: Multiweb) -> WebDiagram:
    """Closed planar diagram of the split web of m, one component after another."""
    if not any(m.mult):
        return WebDiagram()
    H = split_graph(G, m)
    slices = []
    for comp in H.components():
        corner = _component_outer_corner(G, m, H, set(comp))
        slices.extend(_sweep_component(H, comp, corner))
    d = WebDiagram(slices)
    if not d.is_closed():
        raise DiagramError("sweep produced an open diagram")
    return d


def rt_trace(G: CiliatedPlanarGraph, m: Multiweb) -> QLaurent:
    """evaluate(from_multiweb) divided by prod_e [m_e]!; the division must be exact."""
    raw = evaluate(from_multiweb(G, m), m.n)
    denom = ONE
    for k in m.mult:
        denom = denom * qfact(k)
    try:
        return raw.exact_div(denom)
    except ArithmeticError as exc:
        raise DivisionFailure(f"state sum {raw} is not divisible by {denom}") from exc


def rt_matches_planar(G: CiliatedPlanarGraph, m: Multiweb) -> bool:
    conn = build_quantum_identity(G, m.n)
    return rt_trace(G, m) == trace_diagonal(conn, G, m)


# small diagrams and local moves

def unknot(kind: str = "v^") -> WebDiagram:
    return WebDiagram([Slice("cup", 0, kind), Slice("cap", 0, kind)])


def braid_closure(strands: int, word: Iterable[int]) -> WebDiagram:
    """Closure of a braid on downward strands; generator +i / -i crosses strands i-1, i (1-based i)."""
    slices = []
    for k in range(strands):
        slices.append(Slice("cup", k, "v^"))
    for g in word:
        slices.append(Slice("cross+" if g > 0 else "cross-", abs(g) - 1))
    for k in range(strands - 1, -1, -1):
        slices.append(Slice("cap", k, "v^"))
    return WebDiagram(slices)


def curl(positive: bool, side: str = "right") -> WebDiagram:
    """One downward strand with a curl on the given side (an open diagram v -> v)."""
    cross = "cross+" if positive else "cross-"
    if side == "right":
        return WebDiagram([Slice("cup", 1, "v^"), Slice(cross, 0), Slice("cap", 1, "v^")], "v")
    return WebDiagram([Slice("cup", 0, "^v"), Slice(cross, 1), Slice("cap", 0, "^v")], "v")


def scalar_of(d: WebDiagram, n: int):
    """The scalar c with d = c * identity, or None if d is not a multiple of the identity."""
    sig = d.bottom
    c = None
    from itertools import product

    for idx in product(range(1, n + 1), repeat=len(sig)):
        out = evaluate_map(d, n, {idx: ONE})
        if set(out) - {idx}:
            return None
        val = out.get(idx, QLaurent.zero())
        if c is None:
            c = val
        elif val != c:
            return None
    return c


def vertex_kink_factor(n: int, positive: bool = True):
    """Scalar picked up when the first two legs of a white vertex cross."""
    base = WebDiagram([Slice("white", 0, degree=n)])
    twisted = WebDiagram([Slice("white", 0, degree=n), Slice("cross+" if positive else "cross-", 0)])
    a = evaluate_map(base, n, {(): ONE})
    b = evaluate_map(twisted, n, {(): ONE})
    c = None
    for key, val in a.items():
        ratio = _monomial_ratio(b.get(key), val)
        if ratio is None or (c is not None and ratio != c):
            return None
        c = ratio
    if set(b) - set(a):
        return None
    return c


def _monomial_ratio(x, y):
    if x is None or y.is_zero():
        return None
    shift = x.min_exponent() - y.min_exponent()
    for sign in (1, -1):
        cand = QLaurent.monomial(shift, sign)
        if cand * y == x:
            return cand
    return None


def insert(d: WebDiagram, index: int, block: list) -> WebDiagram:
    return WebDiagram(d.slices[:index] + block + d.slices[index:], d.bottom)


def commute_adjacent(d: WebDiagram, i: int) -> WebDiagram | None:
    """Swap slices i and i+1 if they act on disjoint strands; None otherwise."""
    s1, s2 = d.slices[i], d.slices[i + 1]
    a1, o1 = s1.arity()
    a2, o2 = s2.arity()
    if s2.pos >= s1.pos + o1:
        n2 = Slice(s2.block, s2.pos - o1 + a1, s2.kind, s2.degree)
        return WebDiagram(d.slices[:i] + [n2, s1] + d.slices[i + 2:], d.bottom)
    if s2.pos + a2 <= s1.pos:
        n1 = Slice(s1.block, s1.pos - a2 + o2, s1.kind, s1.degree)
        return WebDiagram(d.slices[:i] + [s2, n1] + d.slices[i + 2:], d.bottom)
    return None


@dataclass
class IsotopyReport:
    base: QLaurent
    r2_checked: int = 0
    r2_ok: bool = True
    r3_checked: int = 0
    r3_ok: bool = True
    commute_checked: int = 0
    commute_ok: bool = True

    @property
    def ok(self) -> bool:
        return self.r2_ok and self.r3_ok and self.commute_ok


def isotopy_suite(d: WebDiagram, n: int, rng: random.Random | None = None, samples: int = 3) -> IsotopyReport:
    """Apply R2, R3 and distant-slice commutation at sampled places; the value must not change."""
    rng = rng or random.Random(0)
    base = evaluate(d, n)
    rep = IsotopyReport(base)
    sigs = d.signatures()
    pairs = [(i, p) for i, sig in enumerate(sigs) for p in range(len(sig) - 1) if sig[p:p + 2] == "vv"]
    triples = [(i, p) for i, sig in enumerate(sigs) for p in range(len(sig) - 2) if sig[p:p + 3] == "vvv"]
    for i, p in rng.sample(pairs, min(samples, len(pairs))):
        for first, second in (("cross+", "cross-"), ("cross-", "cross+")):
            e = insert(d, i, [Slice(first, p), Slice(second, p)])
            rep.r2_checked += 1
            rep.r2_ok &= evaluate(e, n) == base
    for i, p in rng.sample(triples, min(samples, len(triples))):
        sign = rng.choice(("cross+", "cross-"))
        one = [Slice(sign, p), Slice(sign, p + 1), Slice(sign, p)]
        two = [Slice(sign, p + 1), Slice(sign, p), Slice(sign, p + 1)]
        rep.r3_checked += 1
        rep.r3_ok &= evaluate(insert(d, i, one), n) == evaluate(insert(d, i, two), n)
    spots = list(range(len(d.slices) - 1))
    rng.shuffle(spots)
    done = 0
    for i in spots:
        if done >= samples:
            break
        e = commute_adjacent(d, i)
        if e is None:
            continue
        done += 1
        rep.commute_checked += 1
        rep.commute_ok &= evaluate(e, n) == base
    return rep


def kink_report(n: int) -> dict:
    """Measured curl and vertex-kink factors with the consistency checks they must pass."""
    right_pos = scalar_of(curl(True, "right"), n)
    right_neg = scalar_of(curl(False, "right"), n)
    left_pos = scalar_of(curl(True, "left"), n)
    left_neg = scalar_of(curl(False, "left"), n)
    vpos = vertex_kink_factor(n, True)
    vneg = vertex_kink_factor(n, False)
    expected = [QLaurent.monomial(_frac(e, n), s) for e in (-(n + 1), n + 1) for s in (1, -1)]
    return {
        "curl_positive": right_pos,
        "curl_negative": right_neg,
        "curl_sides_agree": right_pos == left_pos and right_neg == left_neg,
        "curl_product_is_one": right_pos is not None and right_neg is not None and right_pos * right_neg == ONE,
        "vertex_kink_positive": vpos,
        "vertex_kink_negative": vneg,
        "vertex_kink_product_is_one": vpos is not None and vneg is not None and vpos * vneg == ONE,
        "vertex_kink_matches_power": vpos in expected and vneg in expected,
    }


def unknot_value(n: int) -> QLaurent:
    return qint(n)
