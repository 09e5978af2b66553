"""Functionals on ``L[S]``: coefficient functionals, convolution, characters.

Exact functionals are finite combinations ``sum b_s phi_s`` with
``phi_s(L_u) = delta_{s,u} / |[s]|``.  Convolution is evaluated through the
comultiplication on monomials, ``(f * g)(L_u) = f(L_u) g(L_u)``.  Rank-one
functionals ``[xi eta^*]`` live on truncated matrices and can be evaluated but
not convolved.

The vectors ``nu_lambda`` belong to the full Fock space; their truncation to
words of length ``<= N`` loses the tail ``||lambda||^{2(N+1)}`` of the
geometric series, and every numeric result below is returned together with
a bound derived from that tail.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

import numpy as np

from . import coeffs as C
from .algebra import Element, _accumulate
from .congruence import ClassId, ClassTable
from .fock import FullFock, SemigroupSpace, evaluate
from .words import ZERO, Word, format_word


class CoefficientFunctional:
    """``sum_s b_s phi_s`` over nonzero classes."""

    __slots__ = ("table", "coeffs")

    def __init__(self, table: ClassTable, coeffs: Mapping | Iterable = ()):
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        self.table = table
        self.coeffs = _accumulate((k, v) for k, v in items if k is not ZERO)

    @classmethod
    def phi(cls, table: ClassTable, s: ClassId, coeff=1) -> "CoefficientFunctional":
        return cls(table, {s: coeff})

    def __call__(self, e: Element):
        """Value on a polynomial element: ``sum_s b_s a_s / |[s]|``."""
        total = C.ZERO_Q
        for s, b in self.coeffs.items():
            a = e.coeffs.get(s)
            if a is not None:
                total = C.add(total, C.mul(C.mul(b, a), C.exact(Fraction(1, self.table.size(s)))))
        return total

    def on_monomial(self, s):
        if s is ZERO:
            return C.ZERO_Q
        b = self.coeffs.get(s)
        if b is None:
            return C.ZERO_Q
        return C.mul(b, C.exact(Fraction(1, self.table.size(s))))

    def __eq__(self, other) -> bool:
        if not isinstance(other, CoefficientFunctional):
            return NotImplemented
        return self.table is other.table and self.coeffs == other.coeffs

    __hash__ = None

    def __add__(self, other: "CoefficientFunctional") -> "CoefficientFunctional":
        return CoefficientFunctional(self.table, list(self.coeffs.items()) + list(other.coeffs.items()))

    def scale(self, c) -> "CoefficientFunctional":
        c = C.coerce(c)
        return CoefficientFunctional(self.table, {k: C.mul(c, v) for k, v in self.coeffs.items()})

    def __repr__(self) -> str:
        d = self.table.d
        return "CoefficientFunctional(" + ", ".join(
            f"{v}*phi[{format_word(self.table.rep(k), d)}]" for k, v in sorted(self.coeffs.items())) + ")"

    def to_json(self) -> dict:
        return {"terms": [dict(C.fmt(v), **{"class": format_word(self.table.rep(k), self.table.d)})
                          for k, v in sorted(self.coeffs.items())]}


@dataclass(frozen=True)
class RankOneFunctional:
    """``A -> (A xi, eta)`` on truncated matrices in the ``y`` basis of ``H[S]``."""

    xi: np.ndarray
    eta: np.ndarray

    def on_matrix(self, A: np.ndarray) -> complex:
        return complex(np.vdot(self.eta, A @ self.xi))

    def on_element(self, e: Element, space: SemigroupSpace) -> complex:
        return self.on_matrix(evaluate(e, space=space))


def coefficient_as_rank_one(table: ClassTable, s: ClassId, space: SemigroupSpace) -> RankOneFunctional:
    """``phi_s = [x_0 x_s^*]`` in vector form."""
    return RankOneFunctional(space.x_vector(table.identity), space.x_vector(s))


def convolve(f, g) -> CoefficientFunctional:
    """``(f (x) g) o Delta``, determined by its values on monomials."""
    if not (isinstance(f, CoefficientFunctional) and isinstance(g, CoefficientFunctional)):
        raise TypeError("convolution is defined for exact coefficient functionals only")
    if f.table is not g.table:
        raise ValueError("functionals over different class tables")
    t = f.table
    out = {}
    for s in f.coeffs.keys() & g.coeffs.keys():
        # value on L_s of the convolution, then rescale by |[s]| to get the phi_s coefficient
        value = C.mul(f.on_monomial(s), g.on_monomial(s))
        out[s] = C.mul(value, C.exact(t.size(s)))
    return CoefficientFunctional(t, out)


class EvaluationCharacter:
    """``rho_s(phi) = phi(L_s)`` on the convolution algebra."""

    def __init__(self, table: ClassTable, s: ClassId):
        if s is ZERO:
            raise ValueError("evaluation at the zero class is the zero map, not a character")
        self.table, self.s = table, s

    def __call__(self, f: CoefficientFunctional):
        return f.on_monomial(self.s)


def evaluation_functional(table: ClassTable, s: ClassId) -> EvaluationCharacter:
    return EvaluationCharacter(table, s)


# -- points of the ball -----------------------------------------------------

def _as_point(lam: Sequence) -> np.ndarray:
    lam = np.asarray(lam, dtype=complex)
    if np.linalg.norm(lam) >= 1:
        raise ValueError(f"point {lam} is not in the open unit ball")
    return lam


def word_value(w: Word, lam: Sequence) -> complex:
    """``w(lambda)``: product of coordinates along the word."""
    out = 1 + 0j
    for i in w:
        out *= lam[i - 1]
    return out


def nu_vector(lam: Sequence, N: int):
    """Truncated ``nu_lambda`` and ``k_lambda`` in the full Fock basis (shortlex order)."""
    lam = _as_point(lam)
    r2 = float(np.vdot(lam, lam).real)
    levels = _level_values(lam, N)
    nu = math.sqrt(1 - r2) * np.conj(np.concatenate(levels))
    return nu, nu / math.sqrt(1 - r2)


def _level_values(lam: np.ndarray, N: int) -> list:
    """``[w(lambda) for |w| = n]`` in lexicographic order, for each ``n <= N``."""
    levels = [np.ones(1, dtype=complex)]
    for _ in range(N):
        # lexicographic order: first letter varies slowest
        levels.append(np.kron(lam, levels[-1]))
    return levels


def _phi_lambda_levels(lam: np.ndarray, N: int, max_word: int) -> list:
    """``(L_u nu, nu)`` for every word ``u`` with ``|u| <= max_word``, from the truncated vector."""
    d = len(lam)
    r2 = float(np.vdot(lam, lam).real)
    nu_levels = [math.sqrt(1 - r2) * np.conj(v) for v in _level_values(lam, N)]
    out = []
    for m in range(max_word + 1):
        acc = np.zeros(d ** m, dtype=complex)
        for n in range(N - m + 1):
            # entry (u, v) of the level m+n block is nu_{uv}; (L_u nu, nu) = sum_v nu_v conj(nu_{uv})
            block = nu_levels[m + n].reshape(d ** m, d ** n)
            acc += np.conj(block) @ nu_levels[n]
        out.append(acc)
    return out


def phi_lambda(lam: Sequence, w: Word, N: int) -> tuple:
    """``phi_lambda(L_w) = (L_w nu, nu)`` with truncated ``nu``; returns ``(value, bound)``.

    The exact value is ``w(lambda)``; the truncation error equals
    ``|w(lambda)| ||lambda||^{2(N-|w|+1)}`` and the returned bound is the
    looser ``||lambda||^{2(N-|w|)} / (1 - ||lambda||^2)``.
    """
    lam = _as_point(lam)
    if len(w) > N:
        raise ValueError("word longer than the truncation")
    nu, _ = nu_vector(lam, N)
    fock = FullFock(len(lam), N)
    value = 0j
    for v in fock.words:
        if len(v) + len(w) > N:
            break
        value += nu[fock.index[v]] * np.conj(nu[fock.index[tuple(w) + v]])
    r2 = float(np.vdot(lam, lam).real)
    return complex(value), r2 ** (N - len(w)) / (1 - r2)


def character_convolution_check(lam: Sequence, mu: Sequence, N: int) -> tuple:
    """Residual of ``phi_lambda * phi_mu = phi_{lambda*mu}`` over all words ``|u| <= N-2``.

    Returns ``(residual, bound)``.  With ``K = N - |u| + 1`` and
    ``a = ||lambda||^{2K}``, ``b = ||mu||^{2K}``, ``c = ||lambda*mu||^{2K}`` each
    term is ``|u(lambda) u(mu)| |(1-a)(1-b) - (1-c)| <= ||lambda||^|u| ||mu||^|u| (a+b+c)``;
    the bound is the maximum of the right-hand side plus a floating-point
    allowance of ``4 (N+1)`` machine epsilons (the residual is a difference of
    numbers close to ``u(lambda) u(mu)``).
    """
    lam, mu = _as_point(lam), _as_point(mu)
    if len(lam) != len(mu):
        raise ValueError("points in different dimensions")
    prod = lam * mu
    top = N - 2
    if top < 0:
        raise ValueError("need N >= 2")
    pl = _phi_lambda_levels(lam, N, top)
    pm = _phi_lambda_levels(mu, N, top)
    pp = _phi_lambda_levels(prod, N, top)
    rl, rm, rp = (float(np.vdot(x, x).real) for x in (lam, mu, prod))
    residual, bound = 0.0, 0.0
    for m in range(top + 1):
        residual = max(residual, float(np.max(np.abs(pl[m] * pm[m] - pp[m]))))
        K = N - m + 1
        bound = max(bound, math.sqrt(rl * rm) ** m * (rl ** K + rm ** K + rp ** K))
    return residual, bound + 4 * (N + 1) * np.finfo(float).eps


def semicharacter_check(gamma, table: ClassTable, tol: float = 1e-12,
                        zero_value=0, up_to: int | None = None) -> bool:
    """Is ``gamma`` multiplicative into the closed unit disk on the computed part of ``S``?

    ``gamma`` maps class ids (or is called on them); its value at the zero
    class is ``zero_value``.  Products are checked whenever both levels fit.
    """
    get = gamma if callable(gamma) else gamma.__getitem__
    top = table.max_level if up_to is None else up_to
    classes = table.nonzero_classes(top)
    values = {s: C.to_complex(C.coerce(get(s))) for s in classes}
    z0 = C.to_complex(C.coerce(zero_value))
    if any(abs(v) > 1 + tol for v in values.values()) or abs(z0) > 1 + tol:
        return False
    for s in classes:
        for t in classes:
            if s.level + t.level > top:
                continue
            st = table.multiply(s, t)
            target = z0 if st is ZERO else values[st]
            if abs(values[s] * values[t] - target) > tol:
                return False
    return True
