"""Truncated Hilbert spaces and matrix representations.

Operators are plain complex (or real) numpy arrays.  Two bases appear:

* the full Fock space ``l2(F_d^*)`` truncated to words of length ``<= N``,
  orthonormal basis ``xi_w`` in shortlex order;
* ``H[S]`` truncated the same way, orthonormal basis ``y_s`` over nonzero
  classes in (level, index) order, with ``x_s = y_s / sqrt(|[s]|)``.

Truncated products ``P_N A P_N B P_N`` only agree with ``P_N A B P_N`` on
input levels ``<= N - (degree raised)``; :func:`interior_mask` marks those
columns and every matrix identity in the package is checked on them only.
"""
from __future__ import annotations

import math
from functools import cached_property

import numpy as np

from . import coeffs as C
from .algebra import Element
from .congruence import ClassId, ClassTable
from .errors import LevelOverflowError
from .words import ZERO, Word, words_up_to


class FullFock:
    """Words of length ``<= N`` over ``d`` letters."""

    def __init__(self, d: int, N: int):
        self.d, self.N = d, N
        self.words = list(words_up_to(d, N))
        self.index = {w: i for i, w in enumerate(self.words)}
        self.levels = np.array([len(w) for w in self.words])

    @property
    def dim(self) -> int:
        return len(self.words)

    def offset(self, n: int) -> int:
        """Position of the first word of length ``n``."""
        if self.d == 1:
            return n
        return (self.d ** n - 1) // (self.d - 1)


class SemigroupSpace:
    """``H[S]`` truncated at level ``N``; orthonormal basis ``y_s``."""

    def __init__(self, table: ClassTable, N: int | None = None):
        N = table.max_level if N is None else N
        if N > table.max_level:
            raise LevelOverflowError(f"space level {N} beyond table level {table.max_level}")
        self.table, self.N = table, N
        self.basis = table.nonzero_classes(N)
        self.index = {cid: i for i, cid in enumerate(self.basis)}
        self.levels = np.array([cid.level for cid in self.basis])
        self.sizes = [table.size(cid) for cid in self.basis]

    @property
    def dim(self) -> int:
        return len(self.basis)

    def x_vector(self, cid) -> np.ndarray:
        """Coordinates of ``x_s`` in the ``y`` basis; ``x_0 = 0``."""
        v = np.zeros(self.dim)
        if cid is not ZERO:
            v[self.index[cid]] = 1.0 / math.sqrt(self.table.size(cid))
        return v

    def inner(self, u: np.ndarray, v: np.ndarray) -> complex:
        """``(u, v)_S``: linear in ``u``, conjugate linear in ``v``."""
        return complex(np.vdot(v, u))


def interior_mask(levels: np.ndarray, shift: int, N: int) -> np.ndarray:
    """Columns (input basis vectors) whose level is ``<= N - shift``."""
    return levels <= N - shift


def left_regular(table: ClassTable, s: ClassId, N: int | None = None,
                 space: SemigroupSpace | None = None) -> np.ndarray:
    """Weighted shift ``y_t -> sqrt(|[t]|/|[st]|) y_{st}`` (zero past level ``N`` or on ``st = 0``)."""
    space = space or SemigroupSpace(table, N)
    if s is ZERO:
        return np.zeros((space.dim, space.dim))
    if s.level > space.N:
        raise LevelOverflowError(f"class level {s.level} beyond truncation {space.N}")
    M = np.zeros((space.dim, space.dim))
    for j, t in enumerate(space.basis):
        if s.level + t.level > space.N:
            continue
        st = table.multiply(s, t)
        if st is ZERO:
            continue
        M[space.index[st], j] = math.sqrt(table.size(t) / table.size(st))
    return M


def full_shift(d: int, w: Word, N: int, fock: FullFock | None = None) -> np.ndarray:
    """``xi_v -> xi_{wv}`` for ``|w| + |v| <= N``."""
    fock = fock or FullFock(d, N)
    if len(w) > N:
        raise LevelOverflowError(f"word length {len(w)} beyond truncation {N}")
    w = tuple(w)
    M = np.zeros((fock.dim, fock.dim))
    for j, v in enumerate(fock.words):
        if len(w) + len(v) <= N:
            M[fock.index[w + v], j] = 1.0
    return M


class CoinvariantBasis:
    """Vectors ``eta_s = sum_{u in [s]} xi_u`` spanning the coinvariant subspace, truncated at ``N``."""

    def __init__(self, table: ClassTable, N: int | None = None):
        N = table.max_level if N is None else N
        self.table, self.N = table, N
        self.fock = FullFock(table.d, N)
        self.classes = table.nonzero_classes(N)
        E = np.zeros((self.fock.dim, len(self.classes)), dtype=np.int64)
        for j, cid in enumerate(self.classes):
            for u in table.members(cid):
                E[self.fock.index[u], j] = 1
        self.vectors = E
        # integer Gram matrix: exact orthogonality and squared norms
        self.gram = E.T @ E
        self.norms_sq = [int(x) for x in np.diag(self.gram)]

    @cached_property
    def orthonormal(self) -> np.ndarray:
        return self.vectors / np.sqrt(np.array(self.norms_sq, dtype=float))

    def is_orthogonal(self) -> bool:
        off = self.gram - np.diag(np.diag(self.gram))
        return not off.any()


def compress(op: np.ndarray, basis: CoinvariantBasis) -> np.ndarray:
    """Matrix of ``P_N op`` restricted to ``span{eta_s}``, in the normalized ``eta`` basis."""
    Q = basis.orthonormal
    return Q.T @ op @ Q


def unitary_U(basis: CoinvariantBasis, space: SemigroupSpace) -> np.ndarray:
    """``U eta_s = |[s]| x_s`` written from normalized ``eta`` coordinates to ``y`` coordinates."""
    if len(basis.classes) != space.dim or basis.N != space.N:
        raise ValueError(
            f"dimension mismatch: {len(basis.classes)} coinvariant vectors at level {basis.N}"
            f" vs dim H[S] = {space.dim} at level {space.N}")
    U = np.zeros((space.dim, len(basis.classes)))
    for j, cid in enumerate(basis.classes):
        size = space.table.size(cid)
        # |[s]| x_s = sqrt(|[s]|) y_s, divided by ||eta_s||
        U[space.index[cid], j] = size / math.sqrt(size) / math.sqrt(basis.norms_sq[j])
    return U


def operator_norm(op: np.ndarray) -> float:
    """Largest singular value (dense SVD)."""
    op = np.asarray(op)
    if op.size == 0:
        return 0.0
    return float(np.linalg.norm(op, 2))


def evaluate(e: Element, N: int | None = None, space: SemigroupSpace | None = None) -> np.ndarray:
    """``sum a_s L_s`` as a matrix on ``H[S]_{<= N}``."""
    space = space or SemigroupSpace(e.table, N)
    if e.coeffs and e.degree > space.N:
        raise LevelOverflowError(f"element degree {e.degree} beyond truncation {space.N}")
    exact = e.is_exact and all(C.to_complex(v).imag == 0 for v in e.coeffs.values())
    M = np.zeros((space.dim, space.dim), dtype=float if exact else complex)
    for s, a in e.coeffs.items():
        z = C.to_complex(a)
        M += (z.real if exact else z) * left_regular(e.table, s, space=space)
    return M


def fourier_from_matrix(A: np.ndarray, space: SemigroupSpace, s: ClassId) -> complex:
    """``|[s]| (A x_0, x_s)_S``: the Fourier coefficient read off a matrix."""
    x0 = space.x_vector(space.table.identity)
    return space.table.size(s) * space.inner(A @ x0, space.x_vector(s))


def recover_element(A: np.ndarray, space: SemigroupSpace, tol: float = 0.0) -> dict:
    """Fourier coefficients of a matrix for every basis class (entries with ``|a| <= tol`` dropped)."""
    out = {}
    for s in space.basis:
        a = fourier_from_matrix(A, space, s)
        if abs(a) > tol:
            out[s] = a
    return out
