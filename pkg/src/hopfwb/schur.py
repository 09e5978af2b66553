"""Fourier-side Schur multipliers ``L_s -> phi(s) L_s``.

Two kinds of evidence are produced and kept apart:

* :func:`multiplier_norm_estimate` samples random polynomials and returns the
  largest observed norm ratio at truncation ``N``.  It is a lower bound.
* :func:`factorization_verify` checks ``phi(s) = <f(t), g(st)>`` for
  user-supplied vector families; when it holds, ``sup|f| sup|g|`` is an upper
  bound for the completely bounded norm.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Mapping

import numpy as np

from . import coeffs as C
from .algebra import Element
from .congruence import ClassId, ClassTable
from .errors import LevelOverflowError
from .fock import SemigroupSpace, left_regular, operator_norm
from .words import ZERO


class MultiplierSymbol:
    """Values ``phi(s)`` on every nonzero class of level ``<= N``."""

    def __init__(self, table: ClassTable, N: int, values: Mapping, tag: str | None = None):
        classes = table.nonzero_classes(N)
        missing = [s for s in classes if s not in values]
        if missing:
            raise ValueError(f"symbol undefined on {len(missing)} classes, first {missing[0]}")
        self.table, self.N, self.tag = table, N, tag
        self.values = {s: C.coerce(values[s]) for s in classes}

    @classmethod
    def from_function(cls, table: ClassTable, N: int, fn: Callable, tag: str | None = None):
        return cls(table, N, {s: fn(s) for s in table.nonzero_classes(N)}, tag)

    @classmethod
    def constant(cls, table: ClassTable, N: int, c=1):
        return cls.from_function(table, N, lambda s: c, f"constant:{c}")

    @classmethod
    def geometric(cls, table: ClassTable, N: int, lam):
        """``phi(s) = lam^{|s|}``."""
        lam = C.coerce(lam)
        def power(s):
            out = C.ONE_Q if C.is_exact(lam) else 1 + 0j
            for _ in range(s.level):
                out = C.mul(out, lam)
            return out
        return cls.from_function(table, N, power, f"geometric:{C.to_complex(lam)}")

    @classmethod
    def indicator(cls, table: ClassTable, N: int, s: ClassId):
        return cls.from_function(table, N, lambda t: 1 if t == s else 0, f"indicator:{tuple(s)}")

    def __call__(self, s):
        return self.values[s]

    def __mul__(self, other: "MultiplierSymbol") -> "MultiplierSymbol":
        if other.table is not self.table or other.N != self.N:
            raise ValueError("symbols over different tables or levels")
        return MultiplierSymbol(self.table, self.N,
                                {s: C.mul(v, other.values[s]) for s, v in self.values.items()})

    @property
    def is_exact(self) -> bool:
        return all(C.is_exact(v) for v in self.values.values())


def apply_multiplier(phi: MultiplierSymbol, e: Element) -> Element:
    """``sum a_s L_s -> sum phi(s) a_s L_s``."""
    if e.table is not phi.table:
        raise ValueError("element and symbol over different tables")
    if e.coeffs and e.degree > phi.N:
        raise LevelOverflowError(f"element degree {e.degree} beyond symbol level {phi.N}")
    return Element(e.table, {s: C.mul(phi.values[s], a) for s, a in e.coeffs.items()})


# -- sampling ---------------------------------------------------------------

@dataclass
class NormEstimate:
    lower_bound: float
    samples: int
    seed: int
    N: int

    def to_json(self) -> dict:
        return {"lower_bound": self.lower_bound, "samples": self.samples,
                "seed": self.seed, "level": self.N, "kind": "sampled lower bound"}


def _operator_stack(table: ClassTable, N: int):
    space = SemigroupSpace(table, N)
    ops = np.stack([left_regular(table, s, space=space) for s in space.basis])
    return space, ops


def multiplier_norm_estimate(phi: MultiplierSymbol, samples: int = 200, seed: int = 0,
                             N: int | None = None) -> NormEstimate:
    """Largest ``||m_phi*(A)|| / ||A||`` over random polynomials ``A`` (truncated at ``N``).

    Samples alternate between dense and sparse supports and random maximal
    degree, all drawn from ``numpy.random.default_rng(seed)``.
    """
    if samples < 1:
        raise ValueError("need at least one sample")
    N = phi.N if N is None else N
    if N > phi.N:
        raise LevelOverflowError(f"level {N} beyond symbol level {phi.N}")
    space, ops = _operator_stack(phi.table, N)
    symbol = np.array([C.to_complex(phi.values[s]) for s in space.basis])
    rng = np.random.default_rng(seed)
    best = 0.0
    for k in range(samples):
        top = int(rng.integers(0, N + 1))
        coeffs = rng.normal(size=space.dim) + 1j * rng.normal(size=space.dim)
        coeffs[space.levels > top] = 0
        if k % 2:
            coeffs[rng.random(space.dim) < 0.5] = 0
        if not coeffs.any():
            coeffs[0] = 1.0
        A = np.tensordot(coeffs, ops, axes=1)
        B = np.tensordot(symbol * coeffs, ops, axes=1)
        na = operator_norm(A)
        if na > 0:
            best = max(best, operator_norm(B) / na)
    return NormEstimate(best, samples, seed, N)


# -- factorization certificates ---------------------------------------------

@dataclass
class FactorizationResult:
    ok: bool
    bound: float | None
    residual: float
    pairs: int

    def __bool__(self) -> bool:
        return self.ok

    def to_json(self) -> dict:
        return {"ok": self.ok, "certified_upper": self.bound, "residual": self.residual,
                "pairs_checked": self.pairs}


def factorization_verify(f, g, phi, table: ClassTable, N: int | None = None,
                         tol: float = 1e-12) -> FactorizationResult:
    """Check ``phi(s) = <f(t), g(st)>`` for all nonzero ``s, t`` with ``st != 0`` and ``|s|+|t| <= N``.

    ``f``, ``g`` map class ids to vectors (mappings or callables) and
    ``<a, b>`` is linear in ``a``.  On success the bound ``sup|f| sup|g|`` is
    returned; otherwise ``bound`` is ``None``.
    """
    N = table.max_level if N is None else N
    get_f = f if callable(f) else f.__getitem__
    get_g = g if callable(g) else g.__getitem__
    get_phi = phi if callable(phi) else phi.__getitem__
    classes = table.nonzero_classes(N)
    F = {t: np.asarray(get_f(t), dtype=complex) for t in classes}
    G = {t: np.asarray(get_g(t), dtype=complex) for t in classes}
    shapes = {v.shape for v in F.values()} | {v.shape for v in G.values()}
    if len(shapes) != 1 or len(next(iter(shapes))) != 1:
        raise ValueError(f"vector families have inconsistent shapes {sorted(shapes)}")
    residual, pairs = 0.0, 0
    for s in classes:
        target = C.to_complex(C.coerce(get_phi(s)))
        for t in classes:
            if s.level + t.level > N:
                continue
            st = table.multiply(s, t)
            if st is ZERO:
                continue
            residual = max(residual, float(abs(np.vdot(G[st], F[t]) - target)))
            pairs += 1
    ok = bool(residual <= tol)
    bound = None
    if ok:
        bound = max(float(np.linalg.norm(v)) for v in F.values()) * \
            max(float(np.linalg.norm(v)) for v in G.values())
    return FactorizationResult(ok, bound, residual, pairs)


def constant_family(table: ClassTable, N: int | None = None):
    """``f = g = e_0``: certifies ``phi = 1`` with bound 1."""
    e0 = np.array([1.0])
    classes = table.nonzero_classes(N)
    return {t: e0 for t in classes}, {t: e0 for t in classes}


def identity_indicator_family(table: ClassTable, N: int | None = None):
    """``f = g = e_t`` (one basis vector per class): certifies the indicator of the identity class."""
    classes = table.nonzero_classes(N)
    basis = np.eye(len(classes))
    vectors = {t: basis[i] for i, t in enumerate(classes)}
    return vectors, dict(vectors)


def geometric_family(table: ClassTable, lam: complex, N: int | None = None):
    """Unit vectors with ``<y_m, y_{m+k}> = lam^k``; certifies ``phi(s) = lam^{|s|}`` with bound 1.

    ``y_0 = e_0`` and ``y_n = conj(lam) y_{n-1} + sqrt(1 - |lam|^2) e_n``;
    ``f(t) = y_{|t|}``, ``g(u) = y_{|u|}``.
    """
    N = table.max_level if N is None else N
    lam = complex(lam)
    if abs(lam) > 1 + 1e-12:
        raise ValueError("geometric family needs |lambda| <= 1")
    mu, c = lam.conjugate(), math.sqrt(max(0.0, 1 - abs(lam) ** 2))
    ys = [np.eye(N + 1, dtype=complex)[0]]
    for n in range(1, N + 1):
        y = mu * ys[-1]
        y[n] += c
        ys.append(y)
    vectors = {t: ys[t.level] for t in table.nonzero_classes(N)}
    return vectors, dict(vectors)
