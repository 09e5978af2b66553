"""Finite formal series ``sum a_s L_s`` over nonzero classes, with exact coefficients.

``Element`` lives over a :class:`~hopfwb.congruence.ClassTable`.
``FreeElement`` is the same thing before the quotient (keys are words); the
collapse ``collapse(free, table)`` sends ``L_w`` to ``L_{class(w)}`` and kills
words in the zero class.
"""
from __future__ import annotations

import json
from fractions import Fraction
from typing import Iterable, Mapping

from . import coeffs as C
from .congruence import ClassId, ClassTable
from .errors import LevelOverflowError
from .words import ZERO, Word, format_word, parse_word

NEG_INF = float("-inf")


def _accumulate(pairs: Iterable) -> dict:
    out: dict = {}
    for key, value in pairs:
        value = C.coerce(value)
        if key in out:
            out[key] = C.add(out[key], value)
        else:
            out[key] = value
    return {k: v for k, v in out.items() if not C.iszero(v)}


class Element:
    """Polynomial element of ``L[S]``; stored coefficients are never zero."""

    __slots__ = ("table", "coeffs")

    def __init__(self, table: ClassTable, coeffs: Mapping | Iterable = ()):
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        self.table = table
        self.coeffs = _accumulate((k, v) for k, v in items if k is not ZERO)

    # -- constructors -------------------------------------------------------
    @classmethod
    def zero(cls, table: ClassTable) -> "Element":
        return cls(table)

    @classmethod
    def identity(cls, table: ClassTable) -> "Element":
        return cls(table, {table.identity: 1})

    @classmethod
    def monomial(cls, table: ClassTable, cid, coeff=1) -> "Element":
        return cls(table, {cid: coeff})

    @classmethod
    def from_words(cls, table: ClassTable, terms: Mapping) -> "Element":
        return cls(table, [(table.class_of(tuple(w)), c) for w, c in terms.items()])

    # -- basic properties ---------------------------------------------------
    @property
    def degree(self):
        return max((k.level for k in self.coeffs), default=NEG_INF)

    @property
    def is_exact(self) -> bool:
        return all(C.is_exact(v) for v in self.coeffs.values())

    def terms(self) -> list:
        return sorted(self.coeffs.items())

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Element):
            return NotImplemented
        return self.table is other.table and self.coeffs == other.coeffs

    __hash__ = None

    def __repr__(self) -> str:
        if not self.coeffs:
            return "Element(0)"
        parts = [f"{v}*L[{format_word(self.table.rep(k), self.table.d) or '∅'}]"
                 for k, v in self.terms()]
        return "Element(" + " + ".join(parts) + ")"

    # -- arithmetic ---------------------------------------------------------
    def _check(self, other: "Element") -> None:
        if other.table is not self.table:
            raise ValueError("elements live over different class tables")

    def __add__(self, other: "Element") -> "Element":
        self._check(other)
        return Element(self.table, list(self.coeffs.items()) + list(other.coeffs.items()))

    def __neg__(self) -> "Element":
        return self.scale(-1)

    def __sub__(self, other: "Element") -> "Element":
        return self + (-other)

    def scale(self, c) -> "Element":
        c = C.coerce(c)
        return Element(self.table, {k: C.mul(c, v) for k, v in self.coeffs.items()})

    def __mul__(self, other):
        if isinstance(other, Element):
            return product(self, other)
        return self.scale(other)

    def __rmul__(self, c):
        return self.scale(c)

    def __pow__(self, n: int) -> "Element":
        out = Element.identity(self.table)
        for _ in range(n):
            out = product(out, self)
        return out

    def to_json(self) -> dict:
        return {"terms": [dict(C.fmt(v), **{"class": format_word(self.table.rep(k), self.table.d)})
                          for k, v in self.terms()]}


def product(a: Element, b: Element) -> Element:
    """Bilinear extension of class multiplication; terms hitting the zero class drop out."""
    a._check(b)
    t = a.table
    if a.coeffs and b.coeffs and a.degree + b.degree > t.max_level:
        raise LevelOverflowError(
            f"degree {a.degree}+{b.degree} exceeds max level {t.max_level}")
    pairs = []
    for s, x in a.coeffs.items():
        for u, y in b.coeffs.items():
            st = t.multiply(s, u)
            if st is not ZERO:
                pairs.append((st, C.mul(x, y)))
    return Element(t, pairs)


def fourier(a: Element, s: ClassId):
    """Coefficient of ``L_s`` (exact zero when absent)."""
    if s is ZERO:
        raise ValueError("the zero class carries no Fourier coefficient")
    return a.coeffs.get(s, C.ZERO_Q)


def cesaro(a: Element, k: int) -> Element:
    """``sum_{|s|<k} (1 - |s|/k) a_s L_s`` with exact weights."""
    if k < 1:
        raise ValueError("Cesaro index must be a positive integer")
    return Element(a.table, {s: C.mul(C.exact(Fraction(k - s.level, k)), v)
                             for s, v in a.coeffs.items() if s.level < k})


def graded_block(a: Element, j: int) -> Element:
    """Homogeneous degree ``j`` part."""
    return Element(a.table, {s: v for s, v in a.coeffs.items() if s.level == j})


def graded_cesaro(a: Element, k: int) -> Element:
    """Cesaro map assembled from graded blocks: ``sum_j (1 - j/k) block_j(a)``."""
    if k < 1:
        raise ValueError("Cesaro index must be a positive integer")
    out = Element.zero(a.table)
    for j in range(k + 1):
        out = out + graded_block(a, j).scale(C.exact(Fraction(k - j, k)))
    return out


class FreeElement:
    """Polynomial in the free generators ``L_w``, keyed by words (before the quotient)."""

    __slots__ = ("d", "coeffs")

    def __init__(self, d: int, coeffs: Mapping | Iterable = ()):
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        self.d = d
        self.coeffs = _accumulate((tuple(w), v) for w, v in items)

    @classmethod
    def monomial(cls, d: int, w: Word, coeff=1) -> "FreeElement":
        return cls(d, {tuple(w): coeff})

    @property
    def degree(self):
        return max((len(w) for w in self.coeffs), default=NEG_INF)

    def is_homogeneous(self) -> bool:
        return len({len(w) for w in self.coeffs}) <= 1

    def __eq__(self, other) -> bool:
        if not isinstance(other, FreeElement):
            return NotImplemented
        return self.d == other.d and self.coeffs == other.coeffs

    __hash__ = None

    def __repr__(self) -> str:
        return f"FreeElement(d={self.d}, {dict(sorted(self.coeffs.items()))})"

    def __add__(self, other: "FreeElement") -> "FreeElement":
        return FreeElement(self.d, list(self.coeffs.items()) + list(other.coeffs.items()))

    def __sub__(self, other: "FreeElement") -> "FreeElement":
        return self + other.scale(-1)

    def scale(self, c) -> "FreeElement":
        c = C.coerce(c)
        return FreeElement(self.d, {w: C.mul(c, v) for w, v in self.coeffs.items()})

    def __mul__(self, other: "FreeElement") -> "FreeElement":
        return FreeElement(self.d, [(u + v, C.mul(x, y)) for u, x in self.coeffs.items()
                                    for v, y in other.coeffs.items()])


def cesaro_free(a: FreeElement, k: int) -> FreeElement:
    if k < 1:
        raise ValueError("Cesaro index must be a positive integer")
    return FreeElement(a.d, {w: C.mul(C.exact(Fraction(k - len(w), k)), v)
                             for w, v in a.coeffs.items() if len(w) < k})


def collapse(a: FreeElement, table: ClassTable) -> Element:
    """Quotient map: ``L_w -> L_{class(w)}``, zero classes dropped."""
    if a.d != table.d:
        raise ValueError("generator counts differ")
    return Element(table, [(table.class_of(w), v) for w, v in a.coeffs.items()])


def element_from_json(data, table: ClassTable) -> Element:
    """Read ``{"terms": [{"class": <word>, "re": q, "im": q}, ...]}``; any member word names its class."""
    if isinstance(data, str):
        data = json.loads(data)
    pairs = []
    for term in data.get("terms", []):
        w = parse_word(term["class"], table.d)
        pairs.append((table.class_of(w), C.parse(term.get("re", "0"), term.get("im", "0"))))
    return Element(table, pairs)


def free_element_from_json(data, d: int) -> FreeElement:
    """Same schema as :func:`element_from_json`, with ``"word"`` keys over the free semigroup."""
    if isinstance(data, str):
        data = json.loads(data)
    pairs = []
    for term in data.get("terms", []):
        w = parse_word(term.get("word", term.get("class")), d)
        pairs.append((w, C.parse(term.get("re", "0"), term.get("im", "0"))))
    return FreeElement(d, pairs)
