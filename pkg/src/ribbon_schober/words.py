"""Functor words: a central shift times a reduced word in free generators.

Transports and monodromies take values here.  Shifts ``[k]`` commute with
everything; cotwists ``T(v)`` and decorations ``S(h)`` are free generators.
A :class:`RelationSet` may declare generators equal to pure shifts
(``T(v) = [-1]`` at a nonsingular vertex) and a shift period ``[p] = id``.

Words are written in composition order: ``compose(w1, w2)`` applies ``w2``
first, and the literal ``"[3]*T(v1)^-1*S(e2)"`` means ``[3] o T(v1)^-1 o S(e2)``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .errors import SchoberError

Letter = tuple[str, int]


def free_reduce(letters: Iterable[Letter]) -> tuple[Letter, ...]:
    stack: list[Letter] = []
    for name, exp in letters:
        if exp not in (1, -1):
            raise ValueError(f"letter exponent must be +-1, got {exp}")
        if stack and stack[-1][0] == name and stack[-1][1] == -exp:
            stack.pop()
        else:
            stack.append((name, exp))
    return tuple(stack)


def invert_letters(letters: Iterable[Letter]) -> tuple[Letter, ...]:
    return tuple((name, -exp) for name, exp in reversed(tuple(letters)))


@dataclass(frozen=True)
class FunctorWord:
    """``[shift]`` composed with a freely reduced word of generator letters."""

    shift: int = 0
    letters: tuple[Letter, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "shift", int(self.shift))
        object.__setattr__(self, "letters", free_reduce(self.letters))

    @classmethod
    def identity(cls) -> FunctorWord:
        return cls()

    @classmethod
    def gen(cls, name: str, exp: int = 1) -> FunctorWord:
        sign = 1 if exp > 0 else -1
        return cls(0, ((name, sign),) * abs(exp))

    def __mul__(self, other: FunctorWord) -> FunctorWord:
        return compose(self, other)

    def __pow__(self, n: int) -> FunctorWord:
        base = self if n >= 0 else self.inverse()
        out = FunctorWord()
        for _ in range(abs(n)):
            out = out * base
        return out

    def inverse(self) -> FunctorWord:
        return FunctorWord(-self.shift, invert_letters(self.letters))

    def shifted(self, k: int) -> FunctorWord:
        return FunctorWord(self.shift + k, self.letters)

    def is_identity(self) -> bool:
        return self.shift == 0 and not self.letters

    def generators(self) -> set[str]:
        return {name for name, _ in self.letters}

    def __str__(self) -> str:
        return format_word(self)


def compose(w1: FunctorWord, w2: FunctorWord) -> FunctorWord:
    """``w1 o w2``: apply ``w2`` first."""
    return FunctorWord(w1.shift + w2.shift, w1.letters + w2.letters)


def compose_all(words: Iterable[FunctorWord]) -> FunctorWord:
    """Compose a sequence given in *application* order (first applied first)."""
    shift = 0
    letters: list[Letter] = []
    for w in words:
        shift += w.shift
        letters[:0] = w.letters
    return FunctorWord(shift, tuple(letters))


@dataclass(frozen=True)
class RelationSet:
    """Declared relations: ``generator = [k]`` and an optional period ``[p] = id``."""

    resolved: Mapping[str, int] = field(default_factory=dict)
    period: int = 0

    def __post_init__(self):
        if self.period < 0:
            raise SchoberError("bad-period", str(self.period))
        object.__setattr__(self, "resolved", dict(self.resolved))

    def __hash__(self):
        return hash((tuple(sorted(self.resolved.items())), self.period))

    def with_resolved(self, extra: Mapping[str, int]) -> RelationSet:
        merged = dict(self.resolved)
        for name, k in extra.items():
            if name in merged and merged[name] != k:
                raise SchoberError("conflicting-relation", name)
            merged[name] = k
        return RelationSet(merged, self.period)

    def reduce_shift(self, k: int) -> int:
        return k % self.period if self.period else k


NO_RELATIONS = RelationSet()


def normal_form(w: FunctorWord, relations: RelationSet | None = None) -> FunctorWord:
    relations = relations or NO_RELATIONS
    shift = w.shift
    kept = []
    for name, exp in w.letters:
        if name in relations.resolved:
            shift += exp * relations.resolved[name]
        else:
            kept.append((name, exp))
    return FunctorWord(relations.reduce_shift(shift), tuple(kept))


def equal(w1: FunctorWord, w2: FunctorWord, relations: RelationSet | None = None) -> bool:
    return normal_form(w1, relations) == normal_form(w2, relations)


def cyclic_reduce(letters: tuple[Letter, ...]) -> tuple[tuple[Letter, ...], tuple[Letter, ...]]:
    """Split a reduced word as ``U * core * U^-1`` with ``core`` cyclically reduced."""
    i, j = 0, len(letters) - 1
    while i < j and letters[i][0] == letters[j][0] and letters[i][1] == -letters[j][1]:
        i += 1
        j -= 1
    return letters[:i], letters[i:j + 1]


def conjugate_equal(w1: FunctorWord, w2: FunctorWord, relations: RelationSet | None = None) -> bool:
    return conjugator(w1, w2, relations) is not None


def conjugator(a: FunctorWord, b: FunctorWord,
               relations: RelationSet | None = None) -> FunctorWord | None:
    """Some ``X`` with ``X a X^-1 = b`` (after normal form), or ``None``."""
    a = normal_form(a, relations)
    b = normal_form(b, relations)
    if a.shift != b.shift:
        return None
    u, p = cyclic_reduce(a.letters)
    v, q = cyclic_reduce(b.letters)
    if len(p) != len(q):
        return None
    for r in range(max(len(p), 1)):
        if p[r:] + p[:r] == q:
            # p = s t, q = t s = s^-1 p s, so X = V s^-1 U^-1
            s = p[:r]
            return FunctorWord(0, v + invert_letters(s) + invert_letters(u))
    return None


def _primitive_root(core: tuple[Letter, ...]) -> tuple[Letter, ...]:
    n = len(core)
    for d in range(1, n + 1):
        if n % d == 0 and core[:d] * (n // d) == core:
            return core[:d]
    return core


def simultaneous_conjugator(pairs: list[tuple[FunctorWord, FunctorWord]],
                            relations: RelationSet | None = None) -> FunctorWord | None:
    """Find one ``X`` with ``X a_i X^-1 = b_i`` for every pair, or ``None``.

    Shifts are central, so they must agree pairwise.  The letter parts live in
    a free group: ``X`` is pinned by the first non-trivial ``a_i`` up to its
    cyclic centraliser ``<C>``, and the remaining pairs single out the power
    of ``C`` from a finite window (conjugates by ``C^n`` grow linearly in
    ``|n|`` unless they commute with ``C``).
    """
    pairs = [(normal_form(a, relations), normal_form(b, relations)) for a, b in pairs]
    if any(a.shift != b.shift for a, b in pairs):
        return None
    lead = next(((a, b) for a, b in pairs if a.letters), None)
    if lead is None:
        return FunctorWord() if all(not b.letters for _, b in pairs) else None
    x0 = conjugator(lead[0], lead[1])
    if x0 is None:
        return None
    u, core = cyclic_reduce(lead[0].letters)
    root = FunctorWord(0, u + _primitive_root(core) + invert_letters(u))

    def works(x: FunctorWord) -> bool:
        return all(x * a * x.inverse() == b for a, b in pairs)

    if works(x0):
        return x0
    window = 4 + 2 * len(u) + sum(len(a.letters) + len(b.letters) for a, b in pairs)
    for n in range(1, window + 1):
        for cand in (x0 * root ** n, x0 * root ** -n):
            if works(cand):
                return cand
    return None


_SHIFT_RE = re.compile(r"^\[\s*(-?\d+)\s*\]$")
_GEN_RE = re.compile(r"^([^\s\*\^\[\]]+)(?:\^(-?\d+))?$")


def parse_word(text: str) -> FunctorWord:
    """Parse ``"[3]*T(v1)^-1*S(e2)"``; ``"id"`` or ``""`` is the identity."""
    text = text.strip()
    if text in ("", "id", "1"):
        return FunctorWord()
    out = FunctorWord()
    for token in text.split("*"):
        token = token.strip()
        m = _SHIFT_RE.match(token)
        if m:
            out = out * FunctorWord(int(m.group(1)))
            continue
        m = _GEN_RE.match(token)
        if not m or token == "id":
            raise SchoberError("parse-error", f"bad word token {token!r}")
        out = out * FunctorWord.gen(m.group(1), int(m.group(2) or 1))
    return out


def format_word(w: FunctorWord) -> str:
    parts = []
    if w.shift:
        parts.append(f"[{w.shift}]")
    runs: list[list] = []
    for name, exp in w.letters:
        if runs and runs[-1][0] == name and (runs[-1][1] > 0) == (exp > 0):
            runs[-1][1] += exp
        else:
            runs.append([name, exp])
    for name, exp in runs:
        parts.append(name if exp == 1 else f"{name}^{exp}")
    if not parts:
        return "[0]"
    return "*".join(parts)
