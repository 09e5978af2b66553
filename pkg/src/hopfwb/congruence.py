"""Graded quotient semigroup ``S = F_d^{*0} / ~`` computed level by level.

Relations are length preserving, so the congruence restricted to words of
length ``n`` is the equivalence generated by all context applications
``x u y ~ x v y`` at that length; a class is zero when any of its members has
a zero factor.  Zero-ness is pushed upward one level at a time: a word of
length ``n`` with a zero factor has that factor inside its length ``n-1``
prefix or suffix, or equals a zero word.
"""
from __future__ import annotations

import math
import os
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence

import numpy as np
from scipy.cluster.hierarchy import DisjointSet

from .errors import LevelOverflowError, ResourceLimitError
from .words import (ZERO, Presentation, Word, format_word, is_commutator_presentation,
                    multidegree, words_of_length, words_up_to)

DEFAULT_MAX_WORDS = 2 ** 20


class ClassId(NamedTuple):
    level: int
    index: int


@dataclass(frozen=True)
class WordClass:
    id: ClassId
    rep: Word
    members: tuple
    size: int

    is_zero = False


def max_words_bound() -> int:
    raw = os.environ.get("HOPFWB_MAX_WORDS")
    return int(raw) if raw else DEFAULT_MAX_WORDS


def check_resources(d: int, n: int, force: bool = False, max_words: int | None = None) -> None:
    bound = max_words_bound() if max_words is None else max_words
    if not force and d ** n > bound:
        raise ResourceLimitError(
            f"d^N = {d}^{n} = {d ** n} words per level exceeds the bound {bound}"
            " (set HOPFWB_MAX_WORDS or pass force=True)")


class ClassTable:
    """Per-level partition of words into classes, with the zero class split off.

    ``levels[n]`` holds the member tuples of the nonzero classes at level
    ``n``; ``zero_words[n]`` the words of length ``n`` equivalent to zero.
    Classes are sorted by canonical (lexicographically least) member and
    that rank is the class index.
    """

    def __init__(self, presentation: Presentation, max_level: int,
                 levels: Sequence[Iterable[Iterable[Word]]],
                 zero_words: Sequence[Iterable[Word]]):
        self.presentation = presentation
        self.d = presentation.d
        self.max_level = max_level
        self._levels: list[tuple[WordClass, ...]] = []
        self._zero: list[tuple[Word, ...]] = []
        self._lookup: dict = {}
        for n in range(max_level + 1):
            blocks = sorted(tuple(sorted(b)) for b in levels[n])
            classes = tuple(WordClass(ClassId(n, i), b[0], b, len(b)) for i, b in enumerate(blocks))
            self._levels.append(classes)
            zw = tuple(sorted(zero_words[n]))
            self._zero.append(zw)
            for c in classes:
                for w in c.members:
                    self._lookup[w] = c.id
            for w in zw:
                self._lookup[w] = ZERO
        self._basis = [c.id for level in self._levels for c in level]

    # -- lookup -------------------------------------------------------------
    def classes(self, level: int) -> tuple:
        return self._levels[level]

    def zero_members(self, level: int) -> tuple:
        return self._zero[level]

    def __getitem__(self, cid: ClassId) -> WordClass:
        return self._levels[cid.level][cid.index]

    def class_of(self, w):
        if w is ZERO:
            return ZERO
        if len(w) > self.max_level:
            raise LevelOverflowError(f"word of length {len(w)} beyond level {self.max_level}")
        return self._lookup[tuple(w)]

    def size(self, cid: ClassId) -> int:
        return self[cid].size

    def rep(self, cid: ClassId) -> Word:
        return self[cid].rep

    def members(self, cid: ClassId) -> tuple:
        return self[cid].members

    @property
    def identity(self) -> ClassId:
        return ClassId(0, 0)

    def nonzero_classes(self, up_to: int | None = None) -> list:
        """Class ids of level ``<= up_to`` in basis order (level, then index)."""
        if up_to is None or up_to >= self.max_level:
            return list(self._basis)
        return [c.id for level in self._levels[:up_to + 1] for c in level]

    def generator_classes(self) -> list:
        return [self.class_of((i,)) for i in range(1, self.d + 1)]

    def multiply(self, s, u):
        return multiply(self, s, u)

    # -- comparison / output ------------------------------------------------
    def partition(self, level: int) -> tuple:
        """Hashable description of one level: (sorted nonzero blocks, zero words)."""
        return tuple(c.members for c in self._levels[level]), self._zero[level]

    def signature(self, up_to: int | None = None) -> tuple:
        top = self.max_level if up_to is None else up_to
        return tuple(self.partition(n) for n in range(top + 1))

    def __eq__(self, other) -> bool:
        return (isinstance(other, ClassTable) and self.d == other.d
                and self.max_level == other.max_level
                and self.signature() == other.signature())

    __hash__ = None

    def to_json(self, verbose: bool = False) -> dict:
        out = []
        for n in range(self.max_level + 1):
            entries = []
            for c in self._levels[n]:
                item = {"id": [c.id.level, c.id.index], "rep": format_word(c.rep, self.d),
                        "size": c.size, "zero": False}
                if verbose:
                    item["members"] = [format_word(w, self.d) for w in c.members]
                entries.append(item)
            if self._zero[n]:
                item = {"id": None, "rep": format_word(self._zero[n][0], self.d),
                        "size": len(self._zero[n]), "zero": True}
                if verbose:
                    item["members"] = [format_word(w, self.d) for w in self._zero[n]]
                entries.append(item)
            out.append({"level": n, "classes": entries})
        return {"d": self.d, "max_level": self.max_level, "levels": out}


def multiply(t: ClassTable, s, u):
    """Class of ``rep(s) rep(u)``; ZERO absorbs."""
    if s is ZERO or u is ZERO:
        return ZERO
    if s.level + u.level > t.max_level:
        raise LevelOverflowError(
            f"product of levels {s.level}+{u.level} exceeds max level {t.max_level}")
    return t.class_of(t.rep(s) + t.rep(u))


def close(p: Presentation, N: int, force: bool = False, max_words: int | None = None) -> ClassTable:
    """Congruence generated by ``p`` restricted to words of length ``<= N``."""
    if N < 0:
        raise ValueError("level must be >= 0")
    check_resources(p.d, N, force, max_words)
    d = p.d
    levels, zero_words = [], []
    prev_zero: set = set()
    for n in range(N + 1):
        words = list(words_of_length(d, n))
        ds = DisjointSet(words)
        for u, v in p.relations:
            m = len(u)
            if m > n:
                continue
            for a in range(n - m + 1):
                for x in words_of_length(d, a):
                    for y in words_of_length(d, n - m - a):
                        ds.merge(x + u + y, x + v + y)
        literal = {z for z in p.zeros if len(z) == n}
        zero_here = {w for w in words
                     if w in literal or (n > 0 and (w[:-1] in prev_zero or w[1:] in prev_zero))}
        nonzero_blocks, zeros = [], set()
        for block in ds.subsets():
            if block & zero_here:
                zeros |= block
            else:
                nonzero_blocks.append(block)
        levels.append(nonzero_blocks)
        zero_words.append(zeros)
        prev_zero = zeros
    return ClassTable(p, N, levels, zero_words)


def oracle_close(p: Presentation, N: int, max_nodes: int = 6000) -> ClassTable:
    """Reference closure by naive saturation of a boolean relation on all words ``<= N`` plus 0.

    Starting from the raw generating pairs, repeat until nothing changes:
    add reflexive and symmetric pairs, close under one-letter left and right
    contexts (0 absorbs), and compose the relation with itself.
    """
    d = p.d
    nodes = list(words_up_to(d, N))
    if len(nodes) + 1 > max_nodes:
        raise ResourceLimitError(f"oracle limited to {max_nodes} nodes, needs {len(nodes) + 1}")
    index = {w: i for i, w in enumerate(nodes)}
    zero = len(nodes)
    size = len(nodes) + 1
    R = np.zeros((size, size), dtype=bool)
    for u, v in p.relations:
        if len(u) <= N:
            R[index[u], index[v]] = True
    for z in p.zeros:
        if len(z) <= N:
            R[index[z], zero] = True

    # one-letter context maps; -1 marks a product that leaves the truncation
    left_maps, right_maps = [], []
    for letter in range(1, d + 1):
        lm = np.full(size, -1)
        rm = np.full(size, -1)
        for w, i in index.items():
            if len(w) < N:
                lm[i] = index[(letter,) + w]
                rm[i] = index[w + (letter,)]
        lm[zero] = rm[zero] = zero
        left_maps.append(lm)
        right_maps.append(rm)

    while True:
        before = R.copy()
        R |= np.eye(size, dtype=bool)
        R |= R.T
        for cmap in left_maps + right_maps:
            ii, jj = np.nonzero(R)
            a, b = cmap[ii], cmap[jj]
            ok = (a >= 0) & (b >= 0)
            R[a[ok], b[ok]] = True
        Ri = R.astype(np.int64)
        R |= (Ri @ Ri) > 0
        if np.array_equal(R, before):
            break

    levels = [[] for _ in range(N + 1)]
    zero_words = [set() for _ in range(N + 1)]
    seen = set()
    for w, i in index.items():
        if R[i, zero]:
            zero_words[len(w)].add(w)
        elif i not in seen:
            block = {nodes[j] for j in np.nonzero(R[i, :zero])[0]}
            seen |= {index[x] for x in block}
            levels[len(w)].append(block)
    return ClassTable(p, N, levels, zero_words)


def abelianization_check(t: ClassTable) -> dict:
    """Check ``|[s]| = |k|!/k!`` for every class of the commutator quotient.

    Equivalently ``(x_s, x_s)_S = k!/|k|!``, the monomial inner product of
    the symmetric Fock space.
    """
    from fractions import Fraction

    if not is_commutator_presentation(t.presentation):
        raise ValueError("abelianization_check needs the commutator presentation")
    rows, failures = [], []
    for n in range(t.max_level + 1):
        for c in t.classes(n):
            k = multidegree(c.rep, t.d)
            expected = math.factorial(n) // math.prod(math.factorial(ki) for ki in k)
            same_degree = all(multidegree(w, t.d) == k for w in c.members)
            ok = c.size == expected and same_degree
            row = {
                "rep": format_word(c.rep, t.d),
                "multidegree": list(k),
                "size": c.size,
                "multinomial": expected,
                "inner_product": str(Fraction(1, c.size)),
                "ok": ok,
            }
            rows.append(row)
            if not ok:
                failures.append(row)
    return {"passed": not failures, "classes": rows, "failures": failures}
