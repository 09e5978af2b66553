"""Comultiplication ``L_s -> L_s (x) L_s`` and the Hopf-ideal machinery.

Everything except :func:`corepresentation_check` runs on exact polynomial
data.  The degree-``n`` Hopf-ideal test works in the ``d**n``-dimensional
space of homogeneous polynomials: it spans the ideal slice, takes its
annihilator among diagonal functionals, and asks whether that annihilator
is closed under entrywise products (equivalently, spanned by indicator
vectors of disjoint word sets).
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

import numpy as np
from scipy import sparse
from scipy.sparse.linalg import norm as sparse_norm
from sympy.polys.domains import QQ, QQ_I
from sympy.polys.matrices import DomainMatrix

from . import coeffs as C
from .algebra import Element, FreeElement, _accumulate
from .congruence import ClassId, ClassTable, check_resources
from .errors import LevelOverflowError
from .fock import SemigroupSpace, interior_mask, left_regular, operator_norm, recover_element
from .words import ZERO, Presentation, format_word, words_of_length


class Tensor:
    """Finite sum of ``L_{s1} (x) ... (x) L_{sk}`` over nonzero classes."""

    __slots__ = ("table", "rank", "coeffs")

    def __init__(self, table: ClassTable, rank: int, coeffs: Mapping | Iterable = ()):
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        self.table, self.rank = table, rank
        clean = []
        for key, v in items:
            key = tuple(key)
            if len(key) != rank:
                raise ValueError(f"key {key} does not have {rank} legs")
            if any(k is ZERO for k in key):
                continue
            clean.append((key, v))
        self.coeffs = _accumulate(clean)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Tensor):
            return NotImplemented
        return (self.table is other.table and self.rank == other.rank
                and self.coeffs == other.coeffs)

    __hash__ = None

    def __add__(self, other: "Tensor") -> "Tensor":
        return Tensor(self.table, self.rank, list(self.coeffs.items()) + list(other.coeffs.items()))

    def __sub__(self, other: "Tensor") -> "Tensor":
        neg = [(k, C.mul(C.exact(-1), v)) for k, v in other.coeffs.items()]
        return Tensor(self.table, self.rank, list(self.coeffs.items()) + neg)

    def __repr__(self) -> str:
        return f"Tensor(rank={self.rank}, {len(self.coeffs)} terms)"


def comultiply(e: Element) -> Tensor:
    return Tensor(e.table, 2, {(s, s): v for s, v in e.coeffs.items()})


def outer(*elements: Element) -> Tensor:
    """``e1 (x) e2 (x) ...``"""
    table = elements[0].table
    pairs = []
    for combo in itertools.product(*(e.coeffs.items() for e in elements)):
        key = tuple(k for k, _ in combo)
        value = C.ONE_Q
        for _, v in combo:
            value = C.mul(value, v)
        pairs.append((key, value))
    return Tensor(table, len(elements), pairs)


def tensor_square(e: Element) -> Tensor:
    return outer(e, e)


def tensor_product(a: Tensor, b: Tensor) -> Tensor:
    """Legwise product ``(x1 (x) y1)(x2 (x) y2) = x1 x2 (x) y1 y2``."""
    if a.rank != b.rank or a.table is not b.table:
        raise ValueError("tensors of different shape")
    t = a.table
    pairs = []
    for k1, v1 in a.coeffs.items():
        for k2, v2 in b.coeffs.items():
            key = tuple(t.multiply(x, y) for x, y in zip(k1, k2))
            pairs.append((key, C.mul(v1, v2)))
    return Tensor(t, a.rank, pairs)


def comultiply_leg(T: Tensor, leg: int) -> Tensor:
    """Apply the comultiplication to one leg: ``(id (x) ... Delta ... (x) id)(T)``."""
    return Tensor(T.table, T.rank + 1,
                  {k[:leg + 1] + k[leg:]: v for k, v in T.coeffs.items()})


def is_semigroup_like(e: Element) -> bool:
    """``Delta(e) == e (x) e`` exactly."""
    if not e.is_exact:
        raise ValueError("semigroup-like test needs exact coefficients")
    return comultiply(e) == tensor_square(e)


def spectrum_scan(table: ClassTable, max_degree: int) -> list:
    """All elements with 0/1 coefficients on classes of level ``<= max_degree`` that are semigroup-like."""
    classes = table.nonzero_classes(max_degree)
    found = []
    for mask in itertools.product((0, 1), repeat=len(classes)):
        e = Element(table, {c: 1 for c, bit in zip(classes, mask) if bit})
        if is_semigroup_like(e):
            found.append(e)
    return found


# -- free-word tensors, coideals -------------------------------------------

class FreeTensor:
    """Finite sum of ``L_u (x) L_v`` over pairs of words."""

    __slots__ = ("d", "coeffs")

    def __init__(self, d: int, coeffs: Mapping | Iterable = ()):
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        self.d = d
        self.coeffs = _accumulate(((tuple(u), tuple(v)), c) for (u, v), c in items)

    @classmethod
    def outer(cls, a: FreeElement, b: FreeElement) -> "FreeTensor":
        return cls(a.d, [((u, v), C.mul(x, y)) for u, x in a.coeffs.items()
                         for v, y in b.coeffs.items()])

    def __add__(self, other: "FreeTensor") -> "FreeTensor":
        return FreeTensor(self.d, list(self.coeffs.items()) + list(other.coeffs.items()))


def free_comultiply(a: FreeElement) -> FreeTensor:
    return FreeTensor(a.d, {(w, w): v for w, v in a.coeffs.items()})


def collapse_tensor(x: FreeTensor, table: ClassTable) -> Tensor:
    """``(q (x) q)(x)``: sum coefficients over class pairs, pairs touching zero dropped."""
    return Tensor(table, 2, [((table.class_of(u), table.class_of(v)), c)
                             for (u, v), c in x.coeffs.items()])


def coideal_membership(x: FreeTensor, table: ClassTable) -> bool:
    """True when ``(q (x) q)(x) = 0``, i.e. ``x`` lies in ``J (x) L + L (x) J`` (polynomial part)."""
    return not collapse_tensor(x, table).coeffs


def comultiplication_descends(a: FreeElement, table: ClassTable) -> bool:
    """``Delta_S(collapse(a)) == (q (x) q)(Delta(a))`` exactly."""
    from .algebra import collapse

    return comultiply(collapse(a, table)) == collapse_tensor(free_comultiply(a), table)


# -- homogeneous Hopf ideal test -------------------------------------------

def ideal_generators(p: Presentation) -> list:
    """``L_u - L_v`` for each relation and ``L_z`` for each zero word."""
    gens = [FreeElement(p.d, {u: 1, v: -1}) for u, v in p.relations]
    gens += [FreeElement.monomial(p.d, z) for z in p.zeros]
    return gens


@dataclass
class HopfIdealReport:
    degree: int
    is_coideal: bool
    ideal_dim: int
    annihilator_dim: int
    indicator_sets: list = field(default_factory=list)
    killed: list = field(default_factory=list)

    def to_json(self, d: int) -> dict:
        return {
            "degree": self.degree,
            "is_coideal": self.is_coideal,
            "ideal_dim": self.ideal_dim,
            "annihilator_dim": self.annihilator_dim,
            "indicator_sets": [[format_word(w, d) for w in ws] for ws in self.indicator_sets],
            "killed": [format_word(w, d) for w in self.killed],
        }


def _domain(values) -> object:
    return QQ if all(v.y == 0 for v in values) else QQ_I


def _to_domain(v, dom):
    return v.x if dom is QQ else v


def ideal_slice(generators: Sequence[FreeElement], n: int, d: int) -> list:
    """Spanning vectors (dicts word -> coefficient) of ``span{x g y}`` in degree ``n``."""
    rows, seen = [], set()
    for g in generators:
        if not g.coeffs:
            continue
        if not g.is_homogeneous():
            raise ValueError(f"generator {g} is not homogeneous")
        if not all(C.is_exact(v) for v in g.coeffs.values()):
            raise ValueError("generators need exact coefficients")
        m = g.degree
        if m > n:
            continue
        for a in range(n - m + 1):
            for x in words_of_length(d, a):
                for y in words_of_length(d, n - m - a):
                    row = {x + w + y: v for w, v in g.coeffs.items()}
                    key = tuple(sorted(row.items(), key=lambda kv: kv[0]))
                    frozen = tuple((w, (v.x, v.y)) for w, v in key)
                    if frozen not in seen:
                        seen.add(frozen)
                        rows.append(row)
    return rows


def _rref_rows(M: DomainMatrix) -> list:
    """Nonzero rows of the reduced row echelon form as sparse dicts ``col -> value``."""
    R, pivots = M.rref()
    sdm = R.to_sparse().rep
    return [dict(sdm[i]) for i in range(len(pivots))]


def _in_span(v: dict, rows: list, pivot_of: dict) -> bool:
    residual = dict(v)
    for col, value in list(v.items()):
        if col not in pivot_of:
            continue
        row = rows[pivot_of[col]]
        for c, x in row.items():
            residual[c] = residual[c] - value * x if c in residual else -(value * x)
    return not any(residual.values())


def hopf_ideal_test(generators: Sequence[FreeElement], n: int, d: int,
                    force: bool = False) -> HopfIdealReport:
    """Is the degree-``n`` slice of the ideal generated by ``generators`` a coideal slice?"""
    check_resources(d, n, force, max_words=4096 if not force else None)
    words = list(words_of_length(d, n))
    col = {w: i for i, w in enumerate(words)}
    rows = ideal_slice(generators, n, d)
    values = [v for r in rows for v in r.values()]
    dom = _domain(values) if values else QQ
    m = len(words)
    if rows:
        data = {i: {col[w]: _to_domain(v, dom) for w, v in r.items()} for i, r in enumerate(rows)}
        J = DomainMatrix(data, (len(rows), m), dom)
        ideal_dim = J.rank()
        null = J.nullspace().to_sparse()
        k = null.shape[0]
        basis = _rref_rows(null) if k else []
    else:
        ideal_dim = 0
        basis = [{i: dom.one} for i in range(m)]
    pivot_of = {min(r): i for i, r in enumerate(basis)}

    # close under entrywise products: only pairs with overlapping support can contribute
    support_rows: dict = {}
    for i, r in enumerate(basis):
        for c in r:
            support_rows.setdefault(c, set()).add(i)
    closed = True
    checked = set()
    for i, r in enumerate(basis):
        partners = set().union(*(support_rows[c] for c in r)) if r else set()
        for j in sorted(partners):
            if j < i or (i, j) in checked:
                continue
            checked.add((i, j))
            prod = {c: r[c] * basis[j][c] for c in r.keys() & basis[j].keys()}
            prod = {c: x for c, x in prod.items() if x}
            if prod and not _in_span(prod, basis, pivot_of):
                closed = False
                break
        if not closed:
            break

    report = HopfIdealReport(n, closed, ideal_dim, len(basis))
    if closed:
        covered = set()
        for r in basis:
            report.indicator_sets.append([words[c] for c in sorted(r)])
            covered |= set(r)
        report.indicator_sets.sort()
        report.killed = [w for i, w in enumerate(words) if i not in covered]
    return report


# -- corepresentations ------------------------------------------------------

def corepresentation_residual(V: np.ndarray, space: SemigroupSpace, tol: float = 0.0) -> float:
    """Norm of ``V_13 V_23 - (Delta (x) id)(V)`` on the interior, for a one-dimensional auxiliary space.

    ``(Delta (x) id)(V)`` is built from the Fourier coefficients of ``V``
    read off the matrix itself.  When the Frobenius norm is already
    ``<= tol`` it is returned as is (it dominates the operator norm);
    otherwise the operator norm is computed densely.
    """
    table = space.table
    coeffs = recover_element(V, space, tol=1e-14)
    shift = max((s.level for s in coeffs), default=0)
    Vs = sparse.csr_matrix(V)
    I = sparse.identity(space.dim, format="csr")
    lhs = sparse.kron(Vs, I) @ sparse.kron(I, Vs)
    rhs = sparse.csr_matrix(lhs.shape, dtype=complex)
    for t, a in coeffs.items():
        L = sparse.csr_matrix(left_regular(table, t, space=space))
        rhs = rhs + a * sparse.kron(L, L)
    mask = interior_mask(space.levels, shift, space.N)
    cols = np.flatnonzero(np.kron(mask, mask))
    diff = (lhs - rhs).tocsc()[:, cols]
    frob = float(sparse_norm(diff)) if diff.nnz else 0.0
    if frob <= tol:
        return frob
    return operator_norm(diff.toarray())


def corepresentation_check(table: ClassTable, s: ClassId, N: int | None = None,
                           tol: float = 1e-12) -> bool:
    """``V = L_s (x) id_C`` satisfies the corepresentation identity."""
    N = table.max_level if N is None else N
    if s is ZERO or 2 * s.level > N:
        raise LevelOverflowError(f"need 2|s| <= N, got |s|={getattr(s, 'level', None)}, N={N}")
    space = SemigroupSpace(table, N)
    return corepresentation_residual(left_regular(table, s, space=space), space, tol) <= tol
