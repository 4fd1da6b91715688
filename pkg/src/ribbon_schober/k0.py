"""Decategorification: integer matrices for words, Euler forms and Serre matrices.

Everything is exact.  Matrices are :class:`sympy.Matrix` with integer
entries; a shift ``[k]`` acts by ``(-1)^k``, a singular cotwist by
``f g - I`` and decorations by their assigned unimodular matrices.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping

import sympy

from .errors import SchoberError
from .words import FunctorWord, RelationSet


def parity_sign(k: int) -> int:
    return -1 if k % 2 else 1


def as_matrix(data, rows: int | None = None, cols: int | None = None) -> sympy.Matrix:
    try:
        if isinstance(data, sympy.MatrixBase):
            M = sympy.Matrix(data)
        elif data is None or (isinstance(data, (list, tuple)) and len(data) == 0):
            M = sympy.zeros(rows or 0, cols or 0)
        else:
            M = sympy.Matrix([[int(x) for x in row] for row in data])
    except (TypeError, ValueError) as exc:
        raise SchoberError("parse-error", f"bad integer matrix: {exc}") from exc
    if any(not x.is_integer for x in M):
        raise SchoberError("parse-error", "matrix entries must be integers")
    return M


def to_lists(M: sympy.Matrix) -> list[list[int]]:
    return [[int(M[i, j]) for j in range(M.cols)] for i in range(M.rows)]


def is_unimodular(M: sympy.Matrix) -> bool:
    return M.is_square and M.det() in (1, -1)


def int_inverse(M: sympy.Matrix) -> sympy.Matrix:
    d = M.det()
    if d not in (1, -1):
        raise SchoberError("non-unimodular", f"det = {d}")
    return d * M.adjugate()


@dataclass
class K0Assignment:
    rank: int
    cotwists: dict = field(default_factory=dict)     # symbol -> (f, g)
    decorations: dict = field(default_factory=dict)  # symbol -> matrix

    def __post_init__(self):
        n = self.rank
        for sym, (f, g) in list(self.cotwists.items()):
            f, g = as_matrix(f), as_matrix(g)
            if f.rows != n or g.cols != n or f.cols != g.rows:
                raise SchoberError("shape-mismatch", f"cotwist data for {sym}")
            self.cotwists[sym] = (f, g)
            if not is_unimodular(f * g - sympy.eye(n)):
                raise SchoberError("non-invertible-cotwist", sym)
        for sym, M in list(self.decorations.items()):
            M = as_matrix(M)
            if M.shape != (n, n):
                raise SchoberError("shape-mismatch", f"decoration {sym}")
            if not is_unimodular(M):
                raise SchoberError("non-unimodular", f"decoration {sym}")
            self.decorations[sym] = M

    def generator(self, sym: str, relations: RelationSet | None = None) -> sympy.Matrix:
        n = self.rank
        if sym in self.cotwists:
            f, g = self.cotwists[sym]
            return f * g - sympy.eye(n)
        if sym in self.decorations:
            return self.decorations[sym]
        if relations is not None and sym in relations.resolved:
            return parity_sign(relations.resolved[sym]) * sympy.eye(n)
        raise SchoberError("missing-k0", sym)

    @classmethod
    def from_json(cls, data: Mapping, cotwist_names: Mapping[int, str] | None = None) -> K0Assignment:
        try:
            n = int(data["rank"])
            cot = {}
            for v, fg in data.get("singular", {}).items():
                key = str(v)
                try:
                    vid = int(v)
                    key = (cotwist_names or {}).get(vid, f"T({vid})")
                except ValueError:
                    pass
                cot[key] = (as_matrix(fg["f"], n, 0), as_matrix(fg["g"], 0, n))
            decs = {str(k): as_matrix(M) for k, M in data.get("decorations", {}).items()}
        except (KeyError, TypeError, ValueError) as exc:
            raise SchoberError("parse-error", f"bad K0 json: {exc}") from exc
        return cls(n, cot, decs)


def k0_of_word(w: FunctorWord, a: K0Assignment, relations: RelationSet | None = None) -> sympy.Matrix:
    M = parity_sign(w.shift) * sympy.eye(a.rank)
    for sym, exp in w.letters:
        G = a.generator(sym, relations)
        M = M * (G if exp == 1 else int_inverse(G))
    return M


def k0_monodromy_rep(s, L, a: K0Assignment) -> dict[str, sympy.Matrix]:
    from .schober import monodromy_rep

    return {name: k0_of_word(w, a, s.relations) for name, w in monodromy_rep(s, L).items()}


def serre_matrix(E) -> sympy.Matrix:
    """``S = E^-1 E^T``, so that ``<x, S y> = <y, x>`` for ``<x, y> = x^T E y``."""
    E = as_matrix(E)
    if not E.is_square:
        raise SchoberError("shape-mismatch", "Euler form must be square")
    return int_inverse(E) * E.T


def weak_cy_check(E, n: int) -> bool:
    E = as_matrix(E)
    serre_matrix(E)  # unimodularity guard
    return E.T == parity_sign(n) * E


def relative_cy_check(E_D, f, g, m: int) -> bool:
    """Necessary K0 condition ``g f = I + (-1)^(1-m) S_D`` for a relative CY functor.

    ``f`` is ``n x r`` and ``g`` is ``r x n`` for ``E_D`` of size ``r``; pass
    ``None`` or ``[]`` for both when the source category is zero.
    """
    E = as_matrix(E_D)
    r = E.rows
    if f is None or (isinstance(f, (list, tuple)) and len(f) == 0):
        gf = sympy.zeros(r, r)
    else:
        F, G = as_matrix(f), as_matrix(g)
        if F.cols != r or G.rows != r or F.rows != G.cols:
            raise SchoberError("shape-mismatch")
        gf = G * F
    S = serre_matrix(E)
    return gf == sympy.eye(r) + parity_sign(1 - m) * S


def local_model_restriction_matrix(m: int) -> sympy.Matrix:
    """Rows ``-e_1 + e_{i+1}``; the all-ones vector spans the kernel."""
    if m < 2:
        raise SchoberError("bad-valency", "m must be at least 2")
    M = sympy.zeros(m - 1, m)
    for i in range(m - 1):
        M[i, 0] = -1
        M[i, i + 1] = 1
    return M


def integer_kernel(M) -> list[list[int]]:
    """A basis of ``{x in Z^n : M x = 0}`` by unimodular column reduction."""
    A = [[int(x) for x in row] for row in to_lists(as_matrix(M))]
    rows = len(A)
    n = len(A[0]) if rows else as_matrix(M).cols
    U = [[int(i == j) for j in range(n)] for i in range(n)]

    def col_op(dst, src, q):  # col[dst] -= q * col[src]
        for R in (A, U):
            for row in R:
                row[dst] -= q * row[src]

    def swap(i, j):
        for R in (A, U):
            for row in R:
                row[i], row[j] = row[j], row[i]

    pivot = 0
    for r in range(rows):
        if pivot >= n:
            break
        while True:
            nz = [c for c in range(pivot, n) if A[r][c] != 0]
            if not nz:
                break
            c = min(nz, key=lambda c: abs(A[r][c]))
            swap(pivot, c)
            done = True
            for c in range(pivot + 1, n):
                if A[r][c]:
                    col_op(c, pivot, A[r][c] // A[r][pivot])
                    if A[r][c]:
                        done = False
            if done:
                pivot += 1
                break
    return [[U[i][c] for i in range(n)] for c in range(pivot, n)]


def eta_invariance_check(rep: Mapping[str, sympy.Matrix] | Iterable, eta) -> bool:
    mats = list(rep.values()) if isinstance(rep, Mapping) else list(rep)
    v = sympy.Matrix([int(x) for x in eta])
    for M in mats:
        M = as_matrix(M)
        if M.cols != v.rows or M.rows != v.rows:
            raise SchoberError("dimension-mismatch")
        if M * v != v:
            return False
    return True


def euler_characteristic(graded_dims: Mapping[int, int]) -> int:
    """``sum (-1)^i dim`` of a graded vector space given as ``{degree: dim}``."""
    return sum(parity_sign(i) * d for i, d in graded_dims.items())
