"""Hopf automorphisms induced by permutations of the generators.

A permutation ``sigma`` of ``{1..d}`` acts letterwise on words.  It induces
an automorphism of ``S`` exactly when it maps every level of the partition
(zero words included) onto itself.  Only permutation-induced automorphisms
are searched; quotients whose generator classes collapse or vanish are
rejected instead of guessed.
"""
from __future__ import annotations

import itertools
from typing import Sequence

import numpy as np

from .algebra import Element
from .congruence import ClassTable, close
from .errors import DegenerateGeneratorsError
from .fock import FullFock
from .predual import CoefficientFunctional
from .words import ZERO

Permutation = tuple  # sigma[i-1] is the image of generator i


def permute_word(sigma: Permutation, w):
    if w is ZERO:
        return ZERO
    return tuple(sigma[i - 1] for i in w)


def compose(a: Permutation, b: Permutation) -> Permutation:
    """``a o b`` (apply ``b`` first)."""
    return tuple(a[b[i] - 1] for i in range(len(b)))


def inverse(sigma: Permutation) -> Permutation:
    out = [0] * len(sigma)
    for i, image in enumerate(sigma, start=1):
        out[image - 1] = i
    return tuple(out)


def identity_permutation(d: int) -> Permutation:
    return tuple(range(1, d + 1))


def default_check_level(table: ClassTable) -> int:
    return max(2 * table.presentation.max_relation_length, 1)


def _check_generators(table: ClassTable) -> None:
    if table.max_level < 1:
        raise DegenerateGeneratorsError("need level-one classes to identify generators")
    gens = table.generator_classes()
    if any(g is ZERO for g in gens) or len(set(gens)) != len(gens):
        raise DegenerateGeneratorsError(
            "generator classes are not pairwise distinct and nonzero; "
            "automorphisms are not determined by generator permutations")


def preserves_congruence(table: ClassTable, sigma: Permutation, up_to: int | None = None) -> bool:
    """``u ~ v  <=>  sigma(u) ~ sigma(v)`` and ``u ~ 0  <=>  sigma(u) ~ 0`` on all computed levels."""
    top = table.max_level if up_to is None else up_to
    for n in range(top + 1):
        for c in table.classes(n):
            images = {table.class_of(permute_word(sigma, w)) for w in c.members}
            if len(images) != 1 or ZERO in images:
                return False
        for w in table.zero_members(n):
            if table.class_of(permute_word(sigma, w)) is not ZERO:
                return False
    # a bijection on finite levels mapping classes into classes maps them onto classes
    return True


def enumerate_automorphisms(table: ClassTable, check_level: int | None = None) -> list:
    """All generator permutations that induce a zero-preserving automorphism of ``S``.

    The congruence is checked on every level up to ``max(check_level, N)``,
    recomputing the closure when the table is shallower than that.
    """
    _check_generators(table)
    level = default_check_level(table) if check_level is None else check_level
    top = max(level, table.max_level)
    work = table if table.max_level >= top else close(table.presentation, top)
    return [sigma for sigma in itertools.permutations(range(1, table.d + 1))
            if preserves_congruence(work, sigma)]


def is_group(perms: Sequence[Permutation]) -> bool:
    found = set(perms)
    if not found:
        return False
    d = len(next(iter(found)))
    if identity_permutation(d) not in found:
        return False
    return all(compose(a, b) in found for a in found for b in found) and \
        all(inverse(a) in found for a in found)


def group_table(perms: Sequence[Permutation]) -> list:
    """Multiplication table as indices into ``perms``: ``table[i][j] = index(perms[i] o perms[j])``."""
    index = {p: i for i, p in enumerate(perms)}
    return [[index.get(compose(a, b)) for b in perms] for a in perms]


def permute_class(table: ClassTable, sigma: Permutation, s):
    if s is ZERO:
        return ZERO
    return table.class_of(permute_word(sigma, table.rep(s)))


def induced_hopf_automorphism(sigma: Permutation, e: Element) -> Element:
    """``L_s -> L_{sigma(s)}`` extended linearly."""
    t = e.table
    return Element(t, {permute_class(t, sigma, s): v for s, v in e.coeffs.items()})


def induced_predual_map(sigma: Permutation, f: CoefficientFunctional) -> CoefficientFunctional:
    """Preadjoint action ``phi -> phi o theta*``: ``phi_s -> phi_{sigma^{-1}(s)}`` (sizes are preserved)."""
    t = f.table
    inv = inverse(sigma)
    return CoefficientFunctional(t, {permute_class(t, inv, s): v for s, v in f.coeffs.items()})


def second_quantization(sigma: Permutation, d: int, N: int, fock: FullFock | None = None) -> np.ndarray:
    """Permutation matrix ``xi_w -> xi_{sigma(w)}`` on the truncated full Fock space."""
    if len(sigma) != d or sorted(sigma) != list(range(1, d + 1)):
        raise ValueError(f"{sigma} is not a permutation of 1..{d}")
    fock = fock or FullFock(d, N)
    U = np.zeros((fock.dim, fock.dim))
    for j, w in enumerate(fock.words):
        U[fock.index[permute_word(sigma, w)], j] = 1.0
    return U
