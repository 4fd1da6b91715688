"""Random and exhaustive generators for property tests and the acceptance suite."""
from __future__ import annotations

import random
from typing import Iterator

from .curves import (CROSS, Curve, LineField, framing_with_windings, generating_loops,
                     invert_moves, lift_moves, step)
from .ribbon_graph import RibbonGraph, contract, edges
from .schober import SchoberDatum
from .words import FunctorWord


def random_graph(rng: random.Random, max_edges: int = 8, max_vertices: int = 4,
                 externals: bool = True) -> RibbonGraph:
    """Connected ribbon graph with at most ``max_edges`` edges (internal + external)."""
    nv = rng.randint(1, max(1, min(max_vertices, max_edges + 1)))
    tree = nv - 1
    budget = max_edges - tree
    if budget < 0:
        nv, tree, budget = 1, 0, max_edges
    extra = rng.randint(0, budget)
    n_ext = rng.randint(0, budget - extra) if externals else 0
    if tree + extra + n_ext == 0:
        n_ext = 1
    ends: dict[int, list[int]] = {v: [] for v in range(nv)}
    pairs = []
    h = 0
    for v in range(1, nv):
        u = rng.randrange(v)
        ends[u].append(h)
        ends[v].append(h + 1)
        pairs.append((h, h + 1))
        h += 2
    for _ in range(extra):
        u, w = rng.randrange(nv), rng.randrange(nv)
        ends[u].append(h)
        ends[w].append(h + 1)
        pairs.append((h, h + 1))
        h += 2
    for _ in range(n_ext):
        ends[rng.randrange(nv)].append(h)
        h += 1
    for v in range(nv):
        if not ends[v]:
            ends[v].append(h)
            h += 1
        rng.shuffle(ends[v])
    return RibbonGraph.from_ccw(ends, pairs)


def random_word(rng: random.Random, symbols, max_len: int = 3, max_shift: int = 3) -> FunctorWord:
    letters = tuple((rng.choice(symbols), rng.choice((1, -1)))
                    for _ in range(rng.randint(0, max_len)))
    return FunctorWord(rng.randint(-max_shift, max_shift), letters)


DECORATION_SYMBOLS = ("A", "B", "C")


def random_schober(rng: random.Random, g: RibbonGraph, p_singular: float = 0.3,
                   period: int = 0, decorated: bool = True,
                   singular: bool | None = None) -> SchoberDatum:
    if singular is False:
        sing = frozenset()
    else:
        sing = frozenset(v for v in g.vertices if rng.random() < p_singular)
    decs = {}
    if decorated:
        for h in g.halfedges:
            if rng.random() < 0.6:
                decs[h] = random_word(rng, DECORATION_SYMBOLS)
    return SchoberDatum(g, sing, {}, decs, period)


def random_framing(rng: random.Random, g: RibbonGraph, singular=frozenset(),
                   spread: int = 3) -> LineField:
    """A framing extendable over the nonsingular vertices."""
    start = LineField({h: rng.randint(-spread, spread) for h in g.halfedges})
    basis = generating_loops(g)
    vt = {v: (-2 if v not in singular else 2 * rng.randint(-2, 1)) for v in g.vertices}
    ct = {e: 2 * rng.randint(-2, 2) for e in basis.cycle_loops}
    return framing_with_windings(g, vt, ct, start)


def random_walk(rng: random.Random, g: RibbonGraph, start: int, length: int) -> Curve:
    h, moves = start, []
    for _ in range(length):
        options = [1, -1] + ([CROSS] if not g.is_external(h) else [])
        m = rng.choice(options)
        moves.append(m)
        h = step(g, h, m)
    return Curve(start, tuple(moves))


def random_loop(rng: random.Random, g: RibbonGraph, n_factors: int = 4,
                base: int | None = None) -> Curve:
    """Random product of generating loops (and inverses) at the basis point."""
    basis = generating_loops(g, base)
    loops = [c for _, c in basis.named()]
    moves: tuple[int, ...] = ()
    for _ in range(rng.randint(0, n_factors)):
        c = rng.choice(loops)
        moves += c.moves if rng.random() < 0.5 else invert_moves(c.moves)
    return Curve(basis.base, moves)


def random_avoiding_curve(rng: random.Random, g: RibbonGraph, e, length: int = 12,
                          closed: bool = False) -> Curve:
    """Old-graph curve avoiding edge ``e``: a lifted walk on the contracted graph."""
    new, _ = contract(g, g.edge_of(e if isinstance(e, int) else e.id))
    start = rng.choice(new.halfedges)
    if closed:
        c = random_loop(rng, new, base=start)
    else:
        c = random_walk(rng, new, start, length)
    return Curve(c.start, lift_moves(g, e, c.start, c.moves))


def contractible_edges(g: RibbonGraph, s: SchoberDatum | None = None) -> list[int]:
    out = []
    for e in edges(g):
        if e.kind != "internal":
            continue
        a, b = e.orbit
        if s is not None and g.sigma[a] in s.singular and g.sigma[b] in s.singular:
            continue
        if g.valency(g.sigma[a]) + g.valency(g.sigma[b]) <= 2:
            continue
        out.append(e.id)
    return out


def enumerate_rooted(max_edges: int, even_only: bool = False) -> Iterator[RibbonGraph]:
    """Every connected rooted ribbon graph with at most ``max_edges`` edges, once.

    Halfedges are labelled in discovery order from the root ``0``: for each
    halfedge in turn we choose ``rho`` (an open halfedge or a new one) and
    ``tau`` (itself, an unpaired halfedge or a new one).  Labels are thereby
    canonical, so each rooted graph appears exactly once.
    """
    max_h = 2 * max_edges

    def edge_count(n_h, tau):
        ext = sum(1 for x in range(n_h) if tau.get(x) == x)
        return (n_h - ext) // 2 + ext

    def rec(n_h, rho, rho_pre, tau, i, phase):
        # phase 0: choose rho(i); phase 1: choose tau(i)
        if i == n_h:
            yield dict(rho), dict(tau)
            return
        if phase == 0:
            # rho(i) is any halfedge still lacking a preimage: the head of
            # i's own chain closes a vertex, any other head joins chains
            x = i
            while x in rho_pre:
                x = rho_pre[x]
            for target in range(n_h):
                if target in rho_pre:
                    continue
                if even_only and target == x:
                    length, y = 1, x
                    while y != i:
                        y = rho[y]
                        length += 1
                    if length % 2:
                        continue
                rho[i], rho_pre[target] = target, i
                yield from rec(n_h, rho, rho_pre, tau, i, 1)
                del rho[i], rho_pre[target]
            if n_h < max_h:
                rho[i], rho_pre[n_h] = n_h, i
                yield from rec(n_h + 1, rho, rho_pre, tau, i, 1)
                del rho[i], rho_pre[n_h]
            return
        if i in tau:
            yield from rec(n_h, rho, rho_pre, tau, i + 1, 0)
            return
        # external
        tau[i] = i
        if edge_count(n_h, tau) <= max_edges:
            yield from rec(n_h, rho, rho_pre, tau, i + 1, 0)
        del tau[i]
        for j in range(i + 1, n_h):
            if j not in tau:
                tau[i], tau[j] = j, i
                if edge_count(n_h, tau) <= max_edges:
                    yield from rec(n_h, rho, rho_pre, tau, i + 1, 0)
                del tau[i], tau[j]
        if n_h < max_h:
            tau[i], tau[n_h] = n_h, i
            if edge_count(n_h + 1, tau) <= max_edges:
                yield from rec(n_h + 1, rho, rho_pre, tau, i + 1, 0)
            del tau[i], tau[n_h]

    for rho, tau in rec(1, {}, {}, {}, 0, 0):
        n = len(rho)
        if len(tau) != n:
            continue
        sigma, v = {}, 0
        for h in range(n):
            if h in sigma:
                continue
            x = h
            while x not in sigma:
                sigma[x] = v
                x = rho[x]
            v += 1
        yield RibbonGraph(range(n), sigma, tau, rho)
