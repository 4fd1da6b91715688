"""Schobers on ribbon graphs through their transport calculus.

A schober is recorded by its graph, which vertices are singular, a cotwist
symbol per vertex and a decoration word ``S_h`` per halfedge.  At a vertex
with halfedges ``h_0, ..., h_{m-1}`` in counterclockwise order from the seam
``h_0``, the clockwise corner step from slot ``i+1`` to slot ``i`` transports
by ``S_{h_i} [1] S_{h_{i+1}}^-1`` and the clockwise step across the seam,
from slot 0 to slot ``m-1``, by ``S_{h_{m-1}} T_v S_{h_0}^-1``.  Counter-
clockwise steps use the inverse words and crossing an edge is the identity.
A full clockwise turn is therefore conjugate to ``T_v [m-1]``, which is
``[m-2]`` once a nonsingular cotwist is resolved to ``[-1]``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Iterable, Mapping

from .curves import (CROSS, Curve, LineField, generating_loops, lift_moves, path_winding,
                     step, winding)
from .errors import SchoberError
from .ribbon_graph import RibbonGraph, contract, require_valid
from .words import (FunctorWord, RelationSet, compose_all, cyclic_reduce, format_word,
                    normal_form, parse_word, simultaneous_conjugator)


def default_cotwist(v: int) -> str:
    return f"T({v})"


@dataclass(frozen=True)
class SchoberDatum:
    graph: RibbonGraph
    singular: frozenset = frozenset()
    cotwists: Mapping[int, str] = field(default_factory=dict)
    decorations: Mapping[int, FunctorWord] = field(default_factory=dict)
    period: int = 0

    def __post_init__(self):
        g = self.graph
        object.__setattr__(self, "singular", frozenset(self.singular))
        cot = {v: self.cotwists.get(v, default_cotwist(v)) for v in g.vertices}
        object.__setattr__(self, "cotwists", cot)
        decs = {h: w for h, w in self.decorations.items() if not w.is_identity()}
        object.__setattr__(self, "decorations", decs)
        if not self.singular <= set(g.vertices):
            raise SchoberError("bad-schober", "singular vertex not in graph")
        if any(h not in g.rho for h in decs):
            raise SchoberError("bad-schober", "decoration on unknown halfedge")
        resolved = {cot[v] for v in g.vertices if v not in self.singular}
        free = {cot[v] for v in self.singular}
        if resolved & free:
            raise SchoberError("bad-schober", "cotwist shared by singular and nonsingular vertices")

    def __hash__(self):
        return hash((self.graph, self.singular, tuple(sorted(self.cotwists.items())),
                     tuple(sorted(self.decorations.items())), self.period))

    @property
    def relations(self) -> RelationSet:
        return RelationSet({self.cotwists[v]: -1 for v in self.graph.vertices
                            if v not in self.singular}, self.period)

    def S(self, h: int) -> FunctorWord:
        return self.decorations.get(h, FunctorWord())

    def T(self, v: int) -> FunctorWord:
        return FunctorWord.gen(self.cotwists[v])

    def is_nonsingular(self) -> bool:
        return not self.singular

    def replace(self, **kw) -> SchoberDatum:
        data = dict(graph=self.graph, singular=self.singular, cotwists=self.cotwists,
                    decorations=self.decorations, period=self.period)
        data.update(kw)
        return SchoberDatum(**data)

    def to_json(self) -> dict:
        out = self.graph.to_json()
        out["singular"] = sorted(self.singular)
        out["cotwists"] = {str(v): self.cotwists[v] for v in self.graph.vertices
                           if self.cotwists[v] != default_cotwist(v)}
        out["decorations"] = {str(h): format_word(w) for h, w in sorted(self.decorations.items())}
        out["period"] = self.period
        return out

    @classmethod
    def from_json(cls, data: Mapping) -> SchoberDatum:
        g = RibbonGraph.from_json(data)
        try:
            singular = [int(v) for v in data.get("singular", [])]
            cotwists = {int(v): str(t) for v, t in data.get("cotwists", {}).items()}
            decorations = {int(h): parse_word(str(w)) for h, w in data.get("decorations", {}).items()}
            period = int(data.get("period", 0))
        except (TypeError, ValueError, AttributeError) as exc:
            raise SchoberError("parse-error", f"bad schober json: {exc}") from exc
        return cls(g, frozenset(singular), cotwists, decorations, period)


def elementary_step(s: SchoberDatum, h: int, m: int) -> FunctorWord:
    """Transport word of one move of the corner graph starting at ``h``."""
    g = s.graph
    if m == CROSS:
        step(g, h, m)
        return FunctorWord()
    if m == 1:
        return elementary_step(s, g.rho[h], -1).inverse()
    v = g.sigma[h]
    ccw = g.ccw(v)
    j = ccw.index(h)
    if j == 0:
        return s.S(ccw[-1]) * s.T(v) * s.S(ccw[0]).inverse()
    return s.S(ccw[j - 1]) * FunctorWord(1) * s.S(ccw[j]).inverse()


def raw_transport(s: SchoberDatum, c: Curve) -> FunctorWord:
    words = []
    h = c.start
    if h not in s.graph.rho:
        raise SchoberError("bad-curve", f"unknown start halfedge {h}")
    for m in c.moves:
        words.append(elementary_step(s, h, m))
        h = step(s.graph, h, m)
    return compose_all(words)


def transport(s: SchoberDatum, c: Curve) -> FunctorWord:
    return normal_form(raw_transport(s, c), s.relations)


def check_framing(s: SchoberDatum, L: LineField) -> None:
    g = s.graph
    L.check(g)
    basis = generating_loops(g)
    for _, loop in basis.named():
        if winding(g, loop, L) % 2:
            raise SchoberError("odd-winding-line-field")
    for v, loop in basis.vertex_loops.items():
        if v not in s.singular and winding(g, loop, L) != -2:
            raise SchoberError("framing-not-extendable",
                               f"clockwise loop at nonsingular vertex {v} winds "
                               f"{winding(g, loop, L)}, not -2")


def monodromy(s: SchoberDatum, L: LineField, c: Curve, *, check: bool = True,
              correction_sign: int = 1) -> FunctorWord:
    """Transport corrected by ``[winding(c, canonical) - winding(c, L)]``.

    ``correction_sign`` exists only so tests can confirm that the opposite
    sign breaks triviality around nonsingular vertices.
    """
    if check:
        check_framing(s, L)
    g = s.graph
    if not c.is_closed(g):
        raise SchoberError("not-a-loop")
    corr = path_winding(g, c) - path_winding(g, c, L)
    return normal_form(raw_transport(s, c).shifted(correction_sign * corr), s.relations)


def monodromy_rep(s: SchoberDatum, L: LineField) -> dict[str, FunctorWord]:
    check_framing(s, L)
    return {name: monodromy(s, L, c, check=False) for name, c in generating_loops(s.graph).named()}


def canonical_periodic_monodromy(s: SchoberDatum, c: Curve) -> FunctorWord:
    """Framing-free monodromy when the stalk is 2-periodic (or 1-periodic)."""
    if s.period not in (1, 2):
        raise SchoberError("framing-required", f"period {s.period} does not divide 2")
    g = s.graph
    if not c.is_closed(g):
        raise SchoberError("not-a-loop")
    return normal_form(raw_transport(s, c).shifted(path_winding(g, c)), s.relations)


# -- seam gauge ----------------------------------------------------------

def rotate_seam(s: SchoberDatum, v: int) -> SchoberDatum:
    """Move the seam at ``v`` one slot counterclockwise, keeping every transport.

    The old seam halfedge ``h_0`` is redecorated by ``S_{h_0} T_v^-1 [1]``.
    """
    g = s.graph
    h0 = g.seams[v]
    decs = dict(s.decorations)
    decs[h0] = normal_form(s.S(h0) * s.T(v).inverse() * FunctorWord(1), s.relations)
    return s.replace(graph=g.with_seam(v, g.rho[h0]), decorations=decs)


def with_seam(s: SchoberDatum, v: int, h: int, redecorate: bool = True) -> SchoberDatum:
    g = s.graph
    if g.sigma.get(h) != v:
        raise SchoberError("bad-seam", f"halfedge {h} not at vertex {v}")
    if not redecorate:
        return s.replace(graph=g.with_seam(v, h))
    while s.graph.seams[v] != h:
        s = rotate_seam(s, v)
    return s


# -- contraction ----------------------------------------------------------

def pushforward_contract(s: SchoberDatum, e) -> SchoberDatum:
    """Schober on the contracted graph with the same transports.

    Each new counterclockwise corner at the merged vertex lifts to an old path
    with transport ``C_i``; the merged decorations follow from
    ``S'_{i+1} = C_i S'_i [1]`` and the new cotwist is
    ``[1-m] X^-1 W^-1 X`` with ``W = C_{m-1} ... C_0`` and ``X = S'_0``
    chosen to cyclically reduce ``W^-1``.
    """
    g = s.graph
    edge = g.edge_of(e if isinstance(e, int) else e.id)
    if edge.kind == "loop":
        raise SchoberError("loop-edge")
    if edge.kind != "internal":
        raise SchoberError("not-contractible", "external edge")
    a, b = edge.orbit
    v, w = g.sigma[a], g.sigma[b]
    if v in s.singular and w in s.singular:
        raise SchoberError("edge-joins-two-singularities")
    new, _ = contract(g, edge)
    u = v
    L = new.ccw(u)
    m = len(L)
    R = s.relations
    C = [normal_form(raw_transport(s, Curve(x, lift_moves(g, edge, x, (1,)))), R) for x in L]
    W = normal_form(compose_all(C), R)
    winv = W.inverse()
    U, core = cyclic_reduce(winv.letters)
    X = FunctorWord(0, U)
    tnew = normal_form((X.inverse() * winv * X).shifted(1 - m), R)
    singular = set(s.singular)
    cotwists = {x: s.cotwists[x] for x in new.vertices if x != u}
    if v in s.singular or w in s.singular:
        src = v if v in s.singular else w
        cot = s.cotwists[src]
        if tnew != normal_form(FunctorWord.gen(cot), R):
            raise SchoberError("internal-error", f"merged cotwist {tnew} is not {cot}")
        singular.discard(w)
        singular.add(u)
        cotwists[u] = cot
    else:
        if tnew != normal_form(FunctorWord(-1), R):
            raise SchoberError("internal-error", f"merged nonsingular cotwist is {tnew}")
        cotwists[u] = s.cotwists[v]
    decs = {h: d for h, d in s.decorations.items() if h in new.rho and new.sigma[h] != u}
    cur = X
    for i, x in enumerate(L):
        decs[x] = normal_form(cur, R)
        cur = C[i] * cur * FunctorWord(1)
    return SchoberDatum(new, frozenset(singular), cotwists, decs, s.period)


# -- classification of nonsingular schobers -------------------------------

def nonsingular_equiv(s1: SchoberDatum, s2: SchoberDatum, L: LineField) -> bool:
    if not (s1.is_nonsingular() and s2.is_nonsingular()):
        raise SchoberError("not-nonsingular")
    if s1.graph != s2.graph or s1.period != s2.period:
        raise SchoberError("incomparable", "schobers live on different graphs or stalks")
    r1, r2 = monodromy_rep(s1, L), monodromy_rep(s2, L)
    R = s1.relations.with_resolved(s2.relations.resolved)
    pairs = [(r1[k], r2[k]) for k in r1]
    return simultaneous_conjugator(pairs, R) is not None


# -- orientability and gluing signs ----------------------------------------

def _parity_solve(nodes: Iterable[int], constraints: Iterable[tuple[int, int, int]]):
    """Solve ``x_p + x_q = c (mod 2)``; return the assignment or ``None``."""
    parent = {n: n for n in nodes}
    par = {n: 0 for n in parent}

    def find(x):
        root, acc = x, 0
        while parent[root] != root:
            acc ^= par[root]
            root = parent[root]
        # path compression
        y, p = x, acc
        while parent[y] != y:
            nxt, q = parent[y], par[y]
            parent[y], par[y] = root, p
            p ^= q
            y = nxt
        return root, acc

    for p, q, c in constraints:
        rp, xp = find(p)
        rq, xq = find(q)
        if rp == rq:
            if xp ^ xq != c:
                return None
        else:
            parent[rp] = rq
            par[rp] = xp ^ xq ^ c
    return {n: find(n)[1] for n in parent}


def _orientation_labels(g: RibbonGraph):
    constraints = []
    for a, b in g.pairs():
        constraints.append((g.sigma[a], g.sigma[b], (1 + g.slot(a) + g.slot(b)) % 2))
    x = _parity_solve(g.vertices, constraints)
    if x is None:
        return None
    return {h: (-1) ** (x[g.sigma[h]] + g.slot(h)) for h in g.halfedges}


def is_orientable(g: RibbonGraph) -> bool:
    """Whether halfedges admit in/out labels alternating around every vertex
    with the two ends of each internal edge labelled oppositely."""
    require_valid(g)
    if any(g.valency(v) % 2 for v in g.vertices):
        raise SchoberError("odd-valency")
    return _orientation_labels(g) is not None


@dataclass(frozen=True)
class GluingSigns:
    signs: dict          # halfedge -> +1 / -1
    twisted: tuple = ()  # halfedges whose slot-parity sign was flipped (n odd)


def gluing_sign_solve(s: SchoberDatum | RibbonGraph, n: int) -> GluingSigns | None:
    """Signs with opposite values at the two ends of every internal edge.

    For even ``n`` the signs must alternate around each vertex, which is
    solvable exactly when the graph is orientable.  For odd ``n`` the
    alternating pattern is twisted at one end of every edge whose ends
    would otherwise agree, so a solution always exists.
    """
    g = s.graph if isinstance(s, SchoberDatum) else s
    require_valid(g)
    if n % 2 == 0:
        if any(g.valency(v) % 2 for v in g.vertices):
            return None
        labels = _orientation_labels(g)
        return None if labels is None else GluingSigns(labels)
    signs = {h: (-1) ** g.slot(h) for h in g.halfedges}
    twisted = []
    for a, b in g.pairs():
        if signs[a] == signs[b]:
            signs[b] = -signs[b]
            twisted.append(b)
    return GluingSigns(signs, tuple(twisted))


def brute_force_orientable(g: RibbonGraph) -> bool:
    """Reference search over all in/out labelings (exponential; tests only)."""
    hs = g.halfedges
    for labels in product((1, -1), repeat=len(hs)):
        lab = dict(zip(hs, labels))
        if all(lab[g.rho[h]] == -lab[h] for h in hs) and \
                all(lab[a] == -lab[b] for a, b in g.pairs()):
            return True
    return False
