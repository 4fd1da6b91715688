"""Curves on the thickened surface minus the vertices, and winding numbers.

The punctured thickening retracts onto the *corner graph*: one node per
halfedge ``h`` (a point on the edge of ``h`` near its vertex), a corner arc
``h -> rho(h)`` swept counterclockwise around the vertex, and for each
internal edge a link ``h -> tau(h)`` running along the edge.  A curve is a
start halfedge plus a word of elementary moves::

    +1   counterclockwise corner step  h -> rho(h)
    -1   clockwise corner step         h -> rho^-1(h)
     0   cross along the edge          h -> tau(h)

Homotopy classes of paths are reduced move words, so curve equality is
equality of normal forms.  The user-facing step list groups consecutive
corner moves into ``CornerTurn(vertex, from_halfedge, k)``.

Winding relative to the canonical line field counts ``+1`` per
counterclockwise corner step and ``+1`` / ``-1`` per edge crossing (from the
smaller halfedge id to its partner / back).  A line field adds its corner
weight ``w(h)`` whenever the corner ``(h, rho h)`` is swept counterclockwise
and subtracts it when swept clockwise.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .errors import SchoberError
from .ribbon_graph import RibbonGraph, internal_edges

CROSS = 0


def reduce_moves(moves: Iterable[int]) -> tuple[int, ...]:
    stack: list[int] = []
    for m in moves:
        if m not in (-1, 0, 1):
            raise SchoberError("bad-curve", f"unknown move {m!r}")
        if stack and ((m == CROSS and stack[-1] == CROSS) or (m != CROSS and stack[-1] == -m)):
            stack.pop()
        else:
            stack.append(m)
    return tuple(stack)


def invert_moves(moves: Iterable[int]) -> tuple[int, ...]:
    return tuple(-m for m in reversed(tuple(moves)))


@dataclass(frozen=True)
class TraverseEdge:
    edge: int
    direction: int  # +1: smaller halfedge -> partner


@dataclass(frozen=True)
class CornerTurn:
    vertex: int
    from_halfedge: int
    k: int  # signed, positive = counterclockwise


@dataclass(frozen=True)
class Curve:
    """A path in the corner graph, kept in reduced form."""

    start: int
    moves: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "moves", reduce_moves(self.moves))

    def positions(self, g: RibbonGraph) -> list[int]:
        out = [self.start]
        h = self.start
        for m in self.moves:
            h = step(g, h, m)
            out.append(h)
        return out

    def end(self, g: RibbonGraph) -> int:
        h = self.start
        for m in self.moves:
            h = step(g, h, m)
        return h

    def is_closed(self, g: RibbonGraph) -> bool:
        return self.end(g) == self.start

    def base_edge(self, g: RibbonGraph) -> int:
        return g.edge_of(self.start).id

    def steps(self, g: RibbonGraph) -> list:
        out: list = []
        h = self.start
        for m in self.moves:
            if m == CROSS:
                e = g.edge_of(h)
                out.append(TraverseEdge(e.id, 1 if h == e.orbit[0] else -1))
            elif out and isinstance(out[-1], CornerTurn) and (out[-1].k > 0) == (m > 0):
                last = out[-1]
                out[-1] = CornerTurn(last.vertex, last.from_halfedge, last.k + m)
            else:
                out.append(CornerTurn(g.sigma[h], h, m))
            h = step(g, h, m)
        return out


def step(g: RibbonGraph, h: int, m: int) -> int:
    if m == 1:
        return g.rho[h]
    if m == -1:
        return g.rho_inv(h)
    t = g.tau[h]
    if t == h:
        raise SchoberError("bad-curve", f"cannot cross external halfedge {h}")
    return t


def crossing_sign(g: RibbonGraph, h: int) -> int:
    return 1 if h < g.tau[h] else -1


def curve_from_steps(g: RibbonGraph, base: int, steps: Iterable) -> Curve:
    """Build a curve from ``TraverseEdge`` / ``CornerTurn`` items based at an edge.

    ``base`` is an edge id (any halfedge of the edge is accepted).  The start
    halfedge is read off the first step; an empty curve starts at the base
    edge's smaller halfedge.
    """
    steps = list(steps)
    try:
        base_edge = g.edge_of(base)
    except SchoberError as exc:
        raise SchoberError("bad-curve", f"unknown base edge {base}") from exc
    moves: list[int] = []
    pos = None
    for item in steps:
        if isinstance(item, TraverseEdge):
            e = g.edge_of(item.edge) if item.edge in g.tau else None
            if e is None or len(e.orbit) != 2 or item.direction not in (1, -1):
                raise SchoberError("bad-curve", f"bad traversal {item}")
            frm = e.orbit[0] if item.direction == 1 else e.orbit[1]
            moves.append(CROSS)
        elif isinstance(item, CornerTurn):
            frm = item.from_halfedge
            if g.sigma.get(frm) != item.vertex:
                raise SchoberError("bad-curve", f"halfedge {frm} not at vertex {item.vertex}")
            moves.extend([1 if item.k > 0 else -1] * abs(item.k))
        else:
            raise SchoberError("bad-curve", f"unknown step {item!r}")
        if pos is None:
            pos = frm
            if g.edge_of(pos).id != base_edge.id:
                raise SchoberError("bad-curve", "first step does not leave the base edge")
        elif pos != frm:
            raise SchoberError("bad-curve", f"step starts at {frm}, curve is at {pos}")
        pos = frm
        for m in moves[len(moves) - (1 if isinstance(item, TraverseEdge) else abs(item.k)):]:
            pos = step(g, pos, m)
    start = None
    if steps:
        first = steps[0]
        if isinstance(first, CornerTurn):
            start = first.from_halfedge
        else:
            e = g.edge_of(first.edge)
            start = e.orbit[0] if first.direction == 1 else e.orbit[1]
    return Curve(base_edge.orbit[0] if start is None else start, tuple(moves))


def curve_to_json(g: RibbonGraph, c: Curve) -> dict:
    steps = []
    for s in c.steps(g):
        if isinstance(s, TraverseEdge):
            steps.append({"edge": s.edge, "dir": s.direction})
        else:
            steps.append({"vertex": s.vertex, "from": s.from_halfedge, "turn": s.k})
    return {"base": c.base_edge(g), "start": c.start, "steps": steps}


def curve_from_json(g: RibbonGraph, data: Mapping) -> Curve:
    try:
        base = int(data["base"])
        items = []
        for s in data.get("steps", []):
            if "edge" in s:
                items.append(TraverseEdge(int(s["edge"]), int(s["dir"])))
            else:
                items.append(CornerTurn(int(s["vertex"]), int(s["from"]), int(s["turn"])))
    except (KeyError, TypeError, ValueError) as exc:
        raise SchoberError("parse-error", f"bad curve json: {exc}") from exc
    c = curve_from_steps(g, base, items)
    if "start" in data and not items:
        start = int(data["start"])
        if g.edge_of(start).id != g.edge_of(base).id:
            raise SchoberError("bad-curve", "start halfedge is not on the base edge")
        c = Curve(start)
    return c


def reverse(g: RibbonGraph, c: Curve) -> Curve:
    return Curve(c.end(g), invert_moves(c.moves))


def compose(g: RibbonGraph, c2: Curve, c1: Curve) -> Curve:
    """``c2 * c1``: traverse ``c1`` first, then ``c2``."""
    if c1.end(g) != c2.start:
        raise SchoberError("bad-curve", "curves are not composable")
    return Curve(c1.start, c1.moves + c2.moves)


@dataclass(frozen=True)
class LineField:
    """Corner weights relative to the canonical line field (zero map)."""

    weights: Mapping[int, int] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "weights", {int(h): int(w) for h, w in self.weights.items() if w})

    def __hash__(self):
        return hash(tuple(sorted(self.weights.items())))

    def w(self, h: int) -> int:
        return self.weights.get(h, 0)

    def to_json(self) -> dict:
        return {"corners": [{"h": h, "w": w} for h, w in sorted(self.weights.items())]}

    @classmethod
    def from_json(cls, data: Mapping) -> LineField:
        try:
            return cls({int(c["h"]): int(c["w"]) for c in data.get("corners", [])})
        except (KeyError, TypeError, ValueError) as exc:
            raise SchoberError("parse-error", f"bad line field json: {exc}") from exc

    def check(self, g: RibbonGraph) -> None:
        bad = [h for h in self.weights if h not in g.rho]
        if bad:
            raise SchoberError("bad-line-field", f"unknown corners {bad}")


CANONICAL = LineField()


def path_winding(g: RibbonGraph, c: Curve, L: LineField = CANONICAL) -> int:
    total = 0
    h = c.start
    for m in c.moves:
        if m == 1:
            total += 1 + L.w(h)
        elif m == -1:
            prev = g.rho_inv(h)
            total += -1 - L.w(prev)
        else:
            total += crossing_sign(g, h)
        h = step(g, h, m)
    return total


def winding(g: RibbonGraph, c: Curve, L: LineField = CANONICAL) -> int:
    if not c.is_closed(g):
        raise SchoberError("not-a-loop")
    return path_winding(g, c, L)


def corner_pairing(g: RibbonGraph, c: Curve, L: LineField) -> int:
    """The part of the winding contributed by the corner weights of ``L``."""
    return path_winding(g, c, L) - path_winding(g, c)


@dataclass(frozen=True)
class LoopBasis:
    """Free basis of the fundamental group of the corner graph at ``base``."""

    base: int
    vertex_loops: dict  # vertex -> clockwise loop around it
    cycle_loops: dict   # non-tree internal edge id -> loop across it

    def named(self) -> list[tuple[str, Curve]]:
        out = [(f"vertex-loop:{v}", c) for v, c in sorted(self.vertex_loops.items())]
        out += [(f"cycle-loop:{e}", c) for e, c in sorted(self.cycle_loops.items())]
        return out

    def __len__(self):
        return len(self.vertex_loops) + len(self.cycle_loops)


def spanning_tree_edges(g: RibbonGraph) -> set[int]:
    """Edge ids of a BFS spanning tree of the underlying graph."""
    adj: dict[int, list[tuple[int, int]]] = {v: [] for v in g.vertices}
    for e in internal_edges(g):
        if e.kind == "internal":
            a, b = e.orbit
            adj[g.sigma[a]].append((e.id, g.sigma[b]))
            adj[g.sigma[b]].append((e.id, g.sigma[a]))
    root = g.vertices[0]
    seen, tree, queue = {root}, set(), deque([root])
    while queue:
        v = queue.popleft()
        for eid, u in sorted(adj[v]):
            if u not in seen:
                seen.add(u)
                tree.add(eid)
                queue.append(u)
    return tree


def tree_paths(g: RibbonGraph, base: int, tree: set[int]) -> dict[int, tuple[int, ...]]:
    """Shortest move words from ``base`` to every halfedge, crossing tree edges only."""
    paths = {base: ()}
    queue = deque([base])
    while queue:
        h = queue.popleft()
        options = [1, -1]
        if not g.is_external(h) and g.edge_of(h).id in tree:
            options.append(CROSS)
        for m in options:
            x = step(g, h, m)
            if x not in paths:
                paths[x] = paths[h] + (m,)
                queue.append(x)
    return paths


def generating_loops(g: RibbonGraph, base: int | None = None) -> LoopBasis:
    if base is None:
        base = g.halfedges[0]
    tree = spanning_tree_edges(g)
    paths = tree_paths(g, base, tree)
    vloops = {}
    for v in g.vertices:
        p = paths[g.seams[v]]
        vloops[v] = Curve(base, p + (-1,) * g.valency(v) + invert_moves(p))
    cloops = {}
    for e in internal_edges(g):
        if e.id in tree:
            continue
        a, b = e.orbit
        cloops[e.id] = Curve(base, paths[a] + (CROSS,) + invert_moves(paths[b]))
    return LoopBasis(base, vloops, cloops)


def vertex_loop(g: RibbonGraph, v: int, clockwise: bool = True, start: int | None = None) -> Curve:
    """Full turn around ``v`` starting and ending at ``start`` (default: the seam)."""
    h = g.seams[v] if start is None else start
    return Curve(h, ((-1) if clockwise else 1,) * g.valency(v))


def is_framing(L: LineField, g: RibbonGraph) -> bool:
    return all(winding(g, c, L) % 2 == 0 for _, c in generating_loops(g).named())


def framing_with_windings(g: RibbonGraph, vertex_targets: Mapping[int, int],
                          cycle_targets: Mapping[int, int] | None = None,
                          start: LineField = CANONICAL) -> LineField:
    """Adjust ``start`` so the generating loops have the requested windings.

    Vertex loops are fixed through the seam corner of each vertex.  A cycle
    loop across edge ``(a, b)`` is then moved by ``d`` with the pair of
    corner changes ``w(a) -= d``, ``w(rho^-1 a) += d``; that pair is
    cohomologous to a weight on the crossing itself, so it changes no other
    basis loop and no vertex sum.
    """
    basis = generating_loops(g)
    w = dict(start.weights)
    for v, target in vertex_targets.items():
        cur = winding(g, basis.vertex_loops[v], LineField(w))
        seam = g.seams[v]
        w[seam] = w.get(seam, 0) + (cur - target)
    for eid, target in (cycle_targets or {}).items():
        cur = winding(g, basis.cycle_loops[eid], LineField(w))
        d = target - cur
        a = eid
        w[a] = w.get(a, 0) - d
        prev = g.rho_inv(a)
        w[prev] = w.get(prev, 0) + d
    return LineField(w)


# -- contraction of an edge: curves and line fields ----------------------

def _contracted_pair(g: RibbonGraph, e) -> tuple[int, int]:
    e = g.edge_of(e if isinstance(e, int) else e.id)
    if e.kind != "internal":
        raise SchoberError("not-contractible", f"edge {e.id} is {e.kind}")
    return e.orbit


def lift_moves(g: RibbonGraph, e, start: int, moves: Iterable[int]) -> tuple[int, ...]:
    """Old-graph move word for a path in the graph with edge ``e`` contracted."""
    a, b = _contracted_pair(g, e)
    gone = (a, b)
    if start in gone:
        raise SchoberError("bad-curve", "start lies on the contracted edge")
    out: list[int] = []
    h = start
    for m in moves:
        out.append(m)
        h = step(g, h, m)
        if m != CROSS:
            while h in gone:
                out += [CROSS, m]
                h = step(g, step(g, h, CROSS), m)
    return tuple(out)


def lift_curve(g: RibbonGraph, e, c: Curve) -> Curve:
    return Curve(c.start, lift_moves(g, e, c.start, c.moves))


def contract_curve(g: RibbonGraph, e, c: Curve) -> Curve:
    """Image of an old curve that avoids ``e`` in the contracted graph.

    The curve may pass the contracted edge only the way lifted corner steps
    do (turn onto it, cross, turn off in the same sense); anything else
    raises ``curve-meets-edge``.
    """
    a, b = _contracted_pair(g, e)
    gone = (a, b)
    if c.start in gone or c.end(g) in gone:
        raise SchoberError("curve-meets-edge", "endpoint on the contracted edge")
    out: list[int] = []
    moves = c.moves
    h, i = c.start, 0
    while i < len(moves):
        m = moves[i]
        h = step(g, h, m)
        i += 1
        if m != CROSS:
            while h in gone:
                if moves[i:i + 2] != (CROSS, m):
                    raise SchoberError("curve-meets-edge", f"curve turns back at {h}")
                h = step(g, step(g, h, CROSS), m)
                i += 2
        elif h in gone:
            raise SchoberError("curve-meets-edge", "crosses onto the contracted edge")
        out.append(m)
    return Curve(c.start, tuple(out))


def pushforward_line_field(g: RibbonGraph, e, L: LineField) -> LineField:
    """Corner weights on the contracted graph with the same corner pairing.

    Each new corner gets the total weight its lifted corner step picks up,
    so ``corner_pairing`` of a curve equals that of its lift.
    """
    from .ribbon_graph import contract

    new, _ = contract(g, g.edge_of(e if isinstance(e, int) else e.id))
    w = {}
    for x in new.halfedges:
        lifted = Curve(x, lift_moves(g, e, x, (1,)))
        w[x] = corner_pairing(g, lifted, L)
    return LineField(w)
