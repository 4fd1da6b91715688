"""Ribbon graphs as halfedge data: vertex map, involution, cyclic successor.

A graph is stored as three maps on halfedge ids (``sigma`` to vertices,
``tau`` the edge involution whose fixed points are external halfedges, and
``rho`` the counterclockwise successor) plus a *seam*: a distinguished
halfedge per vertex at which its cyclic order is cut.  The seam is pure
bookkeeping for the schober step rules and never changes the surface.

Graphs may be constructed in an invalid state; :func:`validate` names every
violation and the remaining operations assume a valid graph.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

from .errors import SchoberError

INTERNAL, EXTERNAL, LOOP = "internal", "external", "loop"


@dataclass(frozen=True)
class Edge:
    orbit: tuple[int, ...]
    kind: str

    @property
    def id(self) -> int:
        return self.orbit[0]


@dataclass(frozen=True)
class ExitPathPresentation:
    objects: tuple[tuple[str, int], ...]
    arrows: tuple[tuple[int, int, int], ...]  # (vertex, edge id, halfedge)


@dataclass(frozen=True)
class SurfaceDatum:
    genus: int
    boundary_walks: tuple[tuple[int, ...], ...]
    euler_char: int


class RibbonGraph:
    """Immutable ribbon graph.  Equality compares maps and seams."""

    __slots__ = ("halfedges", "sigma", "tau", "rho", "seams", "_key")

    def __init__(self, halfedges: Iterable[int], sigma: Mapping[int, int],
                 tau: Mapping[int, int], rho: Mapping[int, int],
                 seams: Mapping[int, int] | None = None):
        self.halfedges = tuple(sorted(set(halfedges)))
        self.sigma = dict(sigma)
        self.tau = {h: tau.get(h, h) for h in self.halfedges}
        self.tau.update({h: t for h, t in tau.items() if h not in self.tau})
        self.rho = dict(rho)
        fibers: dict[int, list[int]] = {}
        for h in self.halfedges:
            if h in self.sigma:
                fibers.setdefault(self.sigma[h], []).append(h)
        seams = dict(seams or {})
        self.seams = {v: seams.get(v, min(hs)) for v, hs in fibers.items()}
        self._key = (self.halfedges, tuple(sorted(self.sigma.items())),
                     tuple(sorted(self.tau.items())), tuple(sorted(self.rho.items())),
                     tuple(sorted(self.seams.items())))

    @classmethod
    def from_ccw(cls, vertices: Mapping[int, Iterable[int]],
                 pairs: Iterable[tuple[int, int]] = ()) -> RibbonGraph:
        """Build from per-vertex counterclockwise lists; the first entry is the seam."""
        sigma, rho, seams, hs = {}, {}, {}, []
        for v, ccw in vertices.items():
            ccw = list(ccw)
            if not ccw:
                seams[v] = None
                continue
            seams[v] = ccw[0]
            for i, h in enumerate(ccw):
                sigma[h] = v
                rho[h] = ccw[(i + 1) % len(ccw)]
                hs.append(h)
        tau = {}
        for a, b in pairs:
            tau[a] = b
            tau[b] = a
        g = cls(hs, sigma, tau, rho, {v: h for v, h in seams.items() if h is not None})
        return g

    def __eq__(self, other):
        return isinstance(other, RibbonGraph) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        return f"RibbonGraph(vertices={self.ccw_lists()!r}, pairs={self.pairs()!r})"

    # -- derived structure ------------------------------------------------

    @property
    def vertices(self) -> tuple[int, ...]:
        return tuple(sorted(self.seams))

    def ccw(self, v: int) -> tuple[int, ...]:
        """Cyclic order at ``v`` starting from the seam."""
        start = self.seams[v]
        out = [start]
        h = self.rho[start]
        while h != start:
            out.append(h)
            h = self.rho[h]
        return tuple(out)

    def ccw_lists(self) -> dict[int, tuple[int, ...]]:
        return {v: self.ccw(v) for v in self.vertices}

    def valency(self, v: int) -> int:
        return len(self.ccw(v))

    def slot(self, h: int) -> int:
        return self.ccw(self.sigma[h]).index(h)

    def rho_inv(self, h: int) -> int:
        x = h
        while self.rho[x] != h:
            x = self.rho[x]
        return x

    def is_external(self, h: int) -> bool:
        return self.tau[h] == h

    def pairs(self) -> tuple[tuple[int, int], ...]:
        return tuple((h, t) for h, t in sorted(self.tau.items()) if h < t)

    def edge_of(self, h: int) -> Edge:
        if h not in self.tau:
            raise SchoberError("unknown-halfedge", str(h))
        t = self.tau[h]
        if t == h:
            return Edge((h,), EXTERNAL)
        kind = LOOP if self.sigma[h] == self.sigma[t] else INTERNAL
        return Edge(tuple(sorted((h, t))), kind)

    def with_seam(self, v: int, h: int) -> RibbonGraph:
        if self.sigma.get(h) != v:
            raise SchoberError("bad-seam", f"halfedge {h} not at vertex {v}")
        seams = dict(self.seams)
        seams[v] = h
        return RibbonGraph(self.halfedges, self.sigma, self.tau, self.rho, seams)

    # -- JSON -------------------------------------------------------------

    def to_json(self) -> dict:
        return {
            "halfedges": list(self.halfedges),
            "tau": [list(p) for p in self.pairs()],
            "vertices": [{"id": v, "ccw": list(self.ccw(v))} for v in self.vertices],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> RibbonGraph:
        try:
            verts = {int(item["id"]): [int(h) for h in item["ccw"]] for item in data["vertices"]}
            if any(not ccw for ccw in verts.values()):
                raise ValueError("vertex with valency 0")
            pairs = [(int(a), int(b)) for a, b in data.get("tau", [])]
            declared = [int(h) for h in data.get("halfedges", [])]
        except (KeyError, TypeError, ValueError) as exc:
            raise SchoberError("parse-error", f"bad graph json: {exc}") from exc
        g = cls.from_ccw(verts, pairs)
        extra = set(declared) - set(g.halfedges)
        if extra:
            g = cls(g.halfedges + tuple(extra), g.sigma, g.tau, g.rho, g.seams)
        return g


def validate(g: RibbonGraph) -> list[str]:
    """Names of all violated ribbon-graph invariants (empty when valid)."""
    diags = []
    H = set(g.halfedges)
    if any(h not in g.sigma for h in H):
        diags.append("missing-vertex")
    if set(g.tau) != H or any(g.tau.get(g.tau[h]) != h for h in g.tau):
        diags.append("tau-not-involution")
    if set(g.rho) != H or set(g.rho.values()) != H:
        diags.append("rho-not-permutation")
        return diags
    if any(g.sigma.get(g.rho[h]) != g.sigma.get(h) for h in H):
        diags.append("cyclic-order-crosses-vertices")
    seen: set[int] = set()
    cycles_per_vertex: dict[int, int] = {}
    for h in g.halfedges:
        if h in seen:
            continue
        x = h
        while x not in seen:
            seen.add(x)
            x = g.rho[x]
        v = g.sigma.get(h)
        cycles_per_vertex[v] = cycles_per_vertex.get(v, 0) + 1
    if any(n > 1 for n in cycles_per_vertex.values()):
        diags.append("cyclic-order-split")
    if not H:
        diags.append("empty-graph")
    if diags:
        return diags
    if not _connected(g):
        diags.append("disconnected")
    return diags


def _connected(g: RibbonGraph) -> bool:
    parent = {v: v for v in g.vertices}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in g.pairs():
        parent[find(g.sigma[a])] = find(g.sigma[b])
    return len({find(v) for v in g.vertices}) == 1


def require_valid(g: RibbonGraph) -> None:
    diags = validate(g)
    if diags:
        raise SchoberError(diags[0], ", ".join(diags))


def edges(g: RibbonGraph) -> list[Edge]:
    seen, out = set(), []
    for h in g.halfedges:
        if h not in seen:
            e = g.edge_of(h)
            seen.update(e.orbit)
            out.append(e)
    return out


def internal_edges(g: RibbonGraph) -> list[Edge]:
    return [e for e in edges(g) if e.kind != EXTERNAL]


def exit_path_category(g: RibbonGraph) -> ExitPathPresentation:
    es = edges(g)
    objects = tuple(("vertex", v) for v in g.vertices) + tuple(("edge", e.id) for e in es)
    arrows = tuple((g.sigma[h], g.edge_of(h).id, h) for h in g.halfedges)
    return ExitPathPresentation(objects, arrows)


def surface_invariants(g: RibbonGraph) -> SurfaceDatum:
    seen: set[int] = set()
    walks = []
    for h in g.halfedges:
        if h in seen:
            continue
        walk, x = [], h
        while x not in seen:
            seen.add(x)
            walk.append(x)
            x = g.rho[g.tau[x]]
        walks.append(tuple(walk))
    chi = len(g.vertices) - len(internal_edges(g))
    twice = 2 - chi - len(walks)
    if twice % 2 or twice < 0:
        raise SchoberError("non-integer-genus", f"chi={chi}, b={len(walks)}")
    return SurfaceDatum(twice // 2, tuple(walks), chi)


def is_spanning_of(g: RibbonGraph, target: Mapping) -> bool:
    """Coarse per-walk check against ``{"genus": g, "marked": [n_1, ..., n_b]}``."""
    try:
        genus = target["genus"]
        marked = list(target["marked"])
    except (KeyError, TypeError) as exc:
        raise SchoberError("bad-surface-datum", str(exc)) from exc
    if (not isinstance(genus, int) or genus < 0
            or any(not isinstance(n, int) or n < 0 for n in marked)):
        raise SchoberError("bad-surface-datum", repr(target))
    s = surface_invariants(g)
    if s.genus != genus or len(s.boundary_walks) != len(marked):
        return False
    open_walks = sum(1 for w in s.boundary_walks if any(g.is_external(h) for h in w))
    return open_walks == sum(1 for n in marked if n >= 1)


@dataclass(frozen=True)
class Relabeling:
    halfedges: dict  # old halfedge -> new halfedge (removed ones absent)
    vertices: dict   # old vertex -> new vertex


def contract(g: RibbonGraph, e: Edge | int) -> tuple[RibbonGraph, Relabeling]:
    """Contract an internal non-loop edge, splicing the two cyclic orders.

    With ``a`` the smaller halfedge of ``e`` at ``v`` and ``b = tau(a)`` at
    ``w``, the merged vertex keeps the id ``v`` and reads counterclockwise
    ``rho(a), ..., rho^-1(a), rho(b), ..., rho^-1(b)``; that list starts at
    the new seam.
    """
    if not isinstance(e, Edge):
        e = g.edge_of(e)
    if e.kind != INTERNAL:
        raise SchoberError("not-contractible", f"edge {e.id} is {e.kind}")
    a, b = e.orbit
    v, w = g.sigma[a], g.sigma[b]
    around_a = _walk_from(g, a)[1:]
    around_b = _walk_from(g, b)[1:]
    merged = around_a + around_b
    if not merged:
        raise SchoberError("not-contractible", "contraction would leave an empty vertex")
    verts = {u: g.ccw(u) for u in g.vertices if u not in (v, w)}
    verts[v] = tuple(merged)
    pairs = [p for p in g.pairs() if p != (a, b)]
    new = RibbonGraph.from_ccw(verts, pairs)
    hmap = {h: h for h in g.halfedges if h not in (a, b)}
    vmap = {u: (v if u in (v, w) else u) for u in g.vertices}
    return new, Relabeling(hmap, vmap)


def _walk_from(g: RibbonGraph, h: int) -> list[int]:
    out, x = [h], g.rho[h]
    while x != h:
        out.append(x)
        x = g.rho[x]
    return out


def to_dot(g: RibbonGraph, singular: Iterable[int] = ()) -> str:
    singular = set(singular)
    lines = ["graph ribbon {"]
    for v in g.vertices:
        shape = "doublecircle" if v in singular else "circle"
        ports = "|".join(f"<h{h}> {h}" for h in g.ccw(v))
        lines.append(f'  v{v} [shape=record, label="{{v{v}|{{{ports}}}}}", '
                     f'peripheries={2 if shape == "doublecircle" else 1}];')
    for h in g.halfedges:
        t = g.tau[h]
        v = g.sigma[h]
        if t == h:
            lines.append(f'  tip{h} [shape=point];')
            lines.append(f'  v{v}:h{h} -- tip{h};')
        elif h < t:
            lines.append(f'  v{v}:h{h} -- v{g.sigma[t]}:h{t};')
    lines.append("}")
    return "\n".join(lines) + "\n"
