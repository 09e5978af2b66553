"""Words over ``{1, ..., d}``, the adjoined zero, and congruence presentations.

A word is a plain tuple of generator indices (1-based).  The empty tuple is
the identity of the free semigroup.  ``ZERO`` is the adjoined absorbing
element; it is not a letter string and has no length.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from typing import Iterator, Sequence, Union

from .errors import PresentationError

Word = tuple  # tuple[int, ...]


class _Zero:
    """Singleton for the adjoined zero (of words and of classes alike)."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "ZERO"

    def __reduce__(self):
        return (_Zero, ())


ZERO = _Zero()
EMPTY: Word = ()

WordLike = Union[Word, _Zero]


def is_zero(w) -> bool:
    return w is ZERO


def length(w: WordLike) -> int:
    if w is ZERO:
        raise ValueError("length is undefined on the formal zero")
    return len(w)


def concat(a: WordLike, b: WordLike) -> WordLike:
    if a is ZERO or b is ZERO:
        return ZERO
    return a + b


def words_of_length(d: int, n: int) -> Iterator[Word]:
    """All ``d**n`` words of length ``n`` in lexicographic order."""
    return itertools.product(range(1, d + 1), repeat=n)


def words_up_to(d: int, n: int) -> Iterator[Word]:
    """Shortlex enumeration of all words of length ``<= n``."""
    for k in range(n + 1):
        yield from words_of_length(d, k)


def format_word(w: WordLike, d: int):
    """Digit string for ``d <= 9``, integer list otherwise; ``0`` for ZERO."""
    if w is ZERO:
        return 0
    if d <= 9:
        return "".join(str(i) for i in w)
    return list(w)


def parse_word(raw, d: int) -> Word:
    if isinstance(raw, str):
        if d > 9:
            raise PresentationError(f"d={d} > 9 requires integer-array words, got {raw!r}")
        if raw and not raw.isdigit():
            raise PresentationError(f"word {raw!r} is not a digit string")
        letters = tuple(int(ch) for ch in raw)
    elif isinstance(raw, (list, tuple)):
        if not all(isinstance(x, int) and not isinstance(x, bool) for x in raw):
            raise PresentationError(f"word {raw!r} must contain integers only")
        letters = tuple(raw)
    else:
        raise PresentationError(f"cannot read a word from {raw!r}")
    bad = [i for i in letters if not 1 <= i <= d]
    if bad:
        raise PresentationError(f"letter(s) {bad} out of range 1..{d} in {raw!r}")
    return letters


@dataclass(frozen=True)
class Presentation:
    """Generators ``1..d`` with homogeneous relations ``u ~ v`` and zero words ``z ~ 0``."""

    d: int
    relations: tuple = field(default=())
    zeros: tuple = field(default=())

    def __post_init__(self):
        if not isinstance(self.d, int) or self.d < 1:
            raise PresentationError(f"generator count must be >= 1, got {self.d!r}")
        rels = tuple((tuple(u), tuple(v)) for u, v in self.relations)
        zeros = tuple(tuple(z) for z in self.zeros)
        for u, v in rels:
            self._check_letters(u)
            self._check_letters(v)
            if len(u) != len(v):
                raise PresentationError(
                    f"relation {u}~{v} is not homogeneous (|u|={len(u)}, |v|={len(v)})")
            if len(u) == 0:
                raise PresentationError("relations between empty words are not allowed")
            if u == v:
                raise PresentationError(f"trivial relation {u}~{v}")
        for z in zeros:
            self._check_letters(z)
            if len(z) == 0:
                raise PresentationError("the empty word cannot be declared zero")
        object.__setattr__(self, "relations", rels)
        object.__setattr__(self, "zeros", zeros)

    def _check_letters(self, w: Word) -> None:
        bad = [i for i in w if not (isinstance(i, int) and 1 <= i <= self.d)]
        if bad:
            raise PresentationError(f"letter(s) {bad} out of range 1..{self.d} in {w}")

    @property
    def max_relation_length(self) -> int:
        lengths = [len(u) for u, _ in self.relations] + [len(z) for z in self.zeros]
        return max(lengths, default=0)

    def to_json(self) -> dict:
        return {
            "d": self.d,
            "relations": [[format_word(u, self.d), format_word(v, self.d)]
                          for u, v in self.relations],
            "zeros": [format_word(z, self.d) for z in self.zeros],
        }

    def serialize(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


def parse_presentation(text: str) -> Presentation:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise PresentationError(f"syntax error: {exc}") from exc
    return presentation_from_json(data)


def presentation_from_json(data) -> Presentation:
    if not isinstance(data, dict) or "d" not in data:
        raise PresentationError("presentation must be an object with a 'd' field")
    d = data["d"]
    if not isinstance(d, int) or isinstance(d, bool):
        raise PresentationError(f"'d' must be an integer, got {d!r}")
    if d < 1:
        raise PresentationError(f"generator count must be >= 1, got {d}")
    relations = []
    for pair in data.get("relations", []):
        if not isinstance(pair, (list, tuple)) or len(pair) != 2:
            raise PresentationError(f"relation {pair!r} must be a pair of words")
        relations.append((parse_word(pair[0], d), parse_word(pair[1], d)))
    zeros = [parse_word(z, d) for z in data.get("zeros", [])]
    return Presentation(d, tuple(relations), tuple(zeros))


def free_presentation(d: int) -> Presentation:
    return Presentation(d)


def commutator_presentation(d: int) -> Presentation:
    """Relations ``ij ~ ji`` for all ``i < j``: the quotient is the free commutative semigroup."""
    rels = tuple(((i, j), (j, i)) for i in range(1, d + 1) for j in range(i + 1, d + 1))
    return Presentation(d, rels)


def is_commutator_presentation(p: Presentation) -> bool:
    if p.zeros:
        return False
    wanted = {frozenset({(i, j), (j, i)}) for i in range(1, p.d + 1)
              for j in range(i + 1, p.d + 1)}
    return {frozenset(r) for r in p.relations} == wanted


def multidegree(w: Sequence[int], d: int) -> tuple:
    counts = [0] * d
    for i in w:
        counts[i - 1] += 1
    return tuple(counts)
