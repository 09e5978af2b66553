"""Run every structural invariant on one presentation and collect pass/fail records."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

import numpy as np

from . import aut, hopf
from . import coeffs as C
from .algebra import Element, FreeElement, cesaro, cesaro_free, collapse, fourier, product
from .congruence import ClassTable, abelianization_check, close, oracle_close
from .errors import DegenerateGeneratorsError
from .fock import (CoinvariantBasis, FullFock, SemigroupSpace, compress, evaluate,
                   fourier_from_matrix, full_shift, interior_mask, left_regular,
                   operator_norm, unitary_U)
from .predual import CoefficientFunctional, convolve
from .schur import (MultiplierSymbol, factorization_verify, geometric_family,
                    multiplier_norm_estimate)
from .words import ZERO, Presentation, is_commutator_presentation, words_of_length, words_up_to

MATRIX_TOL = 1e-10
UNITARY_TOL = 1e-12
ORACLE_NODE_LIMIT = 6000


@dataclass
class Check:
    name: str
    anchor: str
    status: str  # "pass", "fail" or "skip"
    detail: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.status != "fail"

    def to_json(self) -> dict:
        return {"name": self.name, "anchor": self.anchor, "status": self.status,
                "passed": self.passed, "detail": self.detail}


# -- random inputs ----------------------------------------------------------

def random_rational(rng) -> object:
    return C.exact(Fraction(int(rng.integers(-4, 5)), int(rng.integers(1, 4))),
                   Fraction(int(rng.integers(-2, 3)), int(rng.integers(1, 3))))


def random_element(table: ClassTable, max_degree: int, rng, terms: int = 4) -> Element:
    classes = table.nonzero_classes(max_degree)
    picks = rng.choice(len(classes), size=min(terms, len(classes)), replace=False)
    return Element(table, {classes[i]: random_rational(rng) for i in picks})


def random_free(d: int, max_degree: int, rng, terms: int = 4) -> FreeElement:
    words = list(words_up_to(d, max_degree))
    picks = rng.choice(len(words), size=min(terms, len(words)), replace=False)
    return FreeElement(d, {words[i]: random_rational(rng) for i in picks})


def corrupt_table(table: ClassTable, level: int = 1, index: int = 0, size: int | None = None) -> ClassTable:
    """Copy of ``table`` with one recorded class size altered (negative-control fixture)."""
    from dataclasses import replace

    bad = ClassTable.__new__(ClassTable)
    bad.__dict__.update(table.__dict__)
    bad._levels = list(table._levels)
    row = list(bad._levels[level])
    old = row[index]
    row[index] = replace(old, size=size if size is not None else old.size + 1)
    bad._levels[level] = tuple(row)
    return bad


# -- individual checks ------------------------------------------------------

def _oracle(table, p, N, rng):
    top = N
    while top > 0 and sum(p.d ** n for n in range(top + 1)) > ORACLE_NODE_LIMIT:
        top -= 1
    ok = oracle_close(p, top).signature() == table.signature(top)
    return ok, {"levels_compared": top}


def _partition(table, p, N, rng):
    for n in range(N + 1):
        seen = sorted(w for c in table.classes(n) for w in c.members) + list(table.zero_members(n))
        if sorted(seen) != list(words_of_length(p.d, n)):
            return False, {"level": n, "problem": "not a partition"}
        for c in table.classes(n):
            if c.size != len(c.members) or c.rep != min(c.members):
                return False, {"level": n, "problem": "size or representative"}
    for u, v in p.relations:
        m = len(u)
        for total in range(m, N + 1):
            for a in range(total - m + 1):
                for x in words_of_length(p.d, a):
                    for y in words_of_length(p.d, total - m - a):
                        if table.class_of(x + u + y) != table.class_of(x + v + y):
                            return False, {"relation": [u, v], "context": [x, y]}
    for z in p.zeros:
        if len(z) <= N and table.class_of(z) is not ZERO:
            return False, {"zero_word": z}
    return True, {}


def _zero_ideal(table, p, N, rng):
    for n in range(N):
        for w in table.zero_members(n):
            for i in range(1, p.d + 1):
                if table.class_of(w + (i,)) is not ZERO or table.class_of((i,) + w) is not ZERO:
                    return False, {"word": w}
    return True, {}


def _associativity(table, p, N, rng):
    classes = table.nonzero_classes(N)
    count = 0
    for a, b, c in itertools.product(classes, repeat=3):
        if a.level + b.level + c.level > N:
            continue
        count += 1
        if table.multiply(table.multiply(a, b), c) != table.multiply(a, table.multiply(b, c)):
            return False, {"triple": [a, b, c]}
    return True, {"triples": count}


def _rep_invariance(table, p, N, rng):
    classes = table.nonzero_classes(N)
    for s, u in itertools.product(classes, repeat=2):
        if s.level + u.level > N:
            continue
        target = table.multiply(s, u)
        for a in table.members(s):
            for b in table.members(u):
                if table.class_of(a + b) != target:
                    return False, {"pair": [a, b]}
    return True, {}


def _abelian(table, p, N, rng):
    if not is_commutator_presentation(p):
        return None, {"reason": "not the commutator presentation"}
    rep = abelianization_check(table)
    return rep["passed"], {"failures": rep["failures"]}


def _algebra(table, p, N, rng):
    half = N // 3
    one = Element.identity(table)
    for _ in range(20):
        a, b, c = (random_element(table, half, rng) for _ in range(3))
        if product(product(a, b), c) != product(a, product(b, c)):
            return False, {"problem": "associativity"}
        if product(one, a) != a or product(a, one) != a:
            return False, {"problem": "unit"}
    return True, {"samples": 20}


def _intertwining(table, p, N, rng):
    for _ in range(20):
        A = random_free(p.d, N, rng, terms=6)
        for k in range(1, N + 2):
            if cesaro(collapse(A, table), k) != collapse(cesaro_free(A, k), table):
                return False, {"k": k}
    return True, {"samples": 20}


def _fourier_matrix(table, p, N, rng):
    space = SemigroupSpace(table, N)
    worst = 0.0
    for _ in range(10):
        e = random_element(table, N, rng, terms=6)
        A = evaluate(e, space=space)
        for s in space.basis:
            worst = max(worst, abs(fourier_from_matrix(A, space, s) - C.to_complex(fourier(e, s))))
    return worst <= MATRIX_TOL, {"max_error": worst}


def _coinvariant(table, p, N, rng):
    basis = CoinvariantBasis(table, N)
    ok = basis.is_orthogonal() and all(
        n == table.size(s) for n, s in zip(basis.norms_sq, basis.classes))
    return ok, {"vectors": len(basis.classes)}


def _unitary_equivalence(table, p, N, rng):
    basis = CoinvariantBasis(table, N)
    space = SemigroupSpace(table, N)
    U = unitary_U(basis, space)
    unitarity = float(np.max(np.abs(U.T @ U - np.eye(space.dim)))) if space.dim else 0.0
    fock = FullFock(p.d, N)
    worst = 0.0
    for w in words_up_to(p.d, min(2, N)):
        s = table.class_of(w)
        lhs = U @ compress(full_shift(p.d, w, N, fock), basis) @ U.T
        rhs = left_regular(table, s, space=space) if s is not ZERO else np.zeros_like(lhs)
        mask = interior_mask(space.levels, len(w), N)
        if mask.any():
            worst = max(worst, float(np.max(np.abs((lhs - rhs)[:, mask]))))
    ok = unitarity <= UNITARY_TOL and worst <= MATRIX_TOL
    return ok, {"unitarity_error": unitarity, "max_interior_error": worst}


def _contractivity(table, p, N, rng):
    space = SemigroupSpace(table, N)
    worst = max((operator_norm(left_regular(table, s, space=space)) for s in space.basis), default=0.0)
    return worst <= 1 + UNITARY_TOL, {"max_norm": worst}


def _coassociativity(table, p, N, rng):
    half = N // 2
    for _ in range(20):
        a, b = random_element(table, half, rng), random_element(table, half, rng)
        D = hopf.comultiply(a)
        if hopf.comultiply_leg(D, 0) != hopf.comultiply_leg(D, 1):
            return False, {"problem": "coassociativity"}
        if hopf.comultiply(product(a, b)) != hopf.tensor_product(hopf.comultiply(a), hopf.comultiply(b)):
            return False, {"problem": "algebra map"}
    return True, {"samples": 20}


def _spectrum(table, p, N, rng):
    top = 0
    while top < min(3, N) and len(table.nonzero_classes(top + 1)) <= 12:
        top += 1
    found = hopf.spectrum_scan(table, top)
    singles = [e for e in found if e.coeffs]
    ok = (len(found) == len(table.nonzero_classes(top)) + 1
          and all(len(e.coeffs) == 1 for e in singles))
    return ok, {"max_degree": top, "semigroup_like": len(singles)}


def _hopf_ideal(table, p, N, rng):
    gens = hopf.ideal_generators(p)
    degrees = [n for n in range(1, N + 1) if p.d ** n <= 4096]
    failed = [n for n in degrees if not hopf.hopf_ideal_test(gens, n, p.d).is_coideal]
    return not failed, {"degrees": degrees, "failed": failed}


def _descends(table, p, N, rng):
    for _ in range(20):
        if not hopf.comultiplication_descends(random_free(p.d, N, rng, terms=6), table):
            return False, {}
    return True, {"samples": 20}


def _corepresentation(table, p, N, rng):
    classes = table.nonzero_classes(N // 2)
    bad = [s for s in classes if not hopf.corepresentation_check(table, s, N)]
    return not bad, {"classes": len(classes)}


def _convolution(table, p, N, rng):
    top = min(N, 3)
    classes = table.nonzero_classes(top)
    for s in classes:
        phi_s = CoefficientFunctional.phi(table, s)
        for t in classes:
            got = convolve(phi_s, CoefficientFunctional.phi(table, t))
            want = phi_s.scale(C.exact(Fraction(1, table.size(s)))) if s == t \
                else CoefficientFunctional(table)
            if got != want:
                return False, {"pair": [s, t]}
    return True, {"classes": len(classes)}


def _automorphisms(table, p, N, rng):
    try:
        perms = aut.enumerate_automorphisms(table)
    except DegenerateGeneratorsError as exc:
        return None, {"reason": str(exc)}
    if not aut.is_group(perms):
        return False, {"problem": "not a group"}
    space = SemigroupSpace(table, N)
    worst = 0.0
    for sigma in perms:
        for _ in range(5):
            e = random_element(table, N, rng, terms=5)
            te = aut.induced_hopf_automorphism(sigma, e)
            D = hopf.comultiply(te)
            mapped = hopf.Tensor(table, 2, {(aut.permute_class(table, sigma, a),
                                             aut.permute_class(table, sigma, b)): v
                                            for (a, b), v in hopf.comultiply(e).coeffs.items()})
            if D != mapped:
                return False, {"problem": "comultiplication", "sigma": sigma}
            worst = max(worst, abs(operator_norm(evaluate(te, space=space))
                                   - operator_norm(evaluate(e, space=space))))
        f = CoefficientFunctional(table, {s: random_rational(rng) for s in table.nonzero_classes(2)})
        g = CoefficientFunctional(table, {s: random_rational(rng) for s in table.nonzero_classes(2)})
        m = lambda x: aut.induced_predual_map(sigma, x)
        if m(convolve(f, g)) != convolve(m(f), m(g)):
            return False, {"problem": "predual", "sigma": sigma}
    ok = worst <= MATRIX_TOL
    return ok, {"automorphisms": [list(s) for s in perms], "max_norm_change": worst,
                "restriction": "generator permutations only"}


def _schur(table, p, N, rng):
    seed = int(rng.integers(0, 2 ** 31))
    unit = multiplier_norm_estimate(MultiplierSymbol.constant(table, N), 20, seed).lower_bound
    details = {"constant": unit}
    ok = unit == 1.0
    for lam in (0.5, -0.9, 0.7j, 1.0):
        phi = MultiplierSymbol.geometric(table, N, lam)
        est = multiplier_norm_estimate(phi, 20, seed).lower_bound
        cert = factorization_verify(*geometric_family(table, lam, N), phi, table, N)
        details[f"geometric:{lam}"] = {"lower_bound": est, "certified_upper": cert.bound}
        ok = ok and est <= 1 + 1e-9 and cert.ok and est <= cert.bound + 1e-6
    return ok, details


CHECKS: list[tuple[str, str, Callable]] = [
    ("closure_matches_oracle", "congruence generated by the presentation, naive saturation oracle", _oracle),
    ("classes_partition_words", "homogeneous congruence restricted to each word length", _partition),
    ("zero_class_is_ideal", "adjoined zero absorbs under concatenation", _zero_ideal),
    ("class_multiplication_associative", "quotient semigroup multiplication", _associativity),
    ("multiplication_representative_free", "multiplication descends to classes", _rep_invariance),
    ("drury_arveson_class_sizes", "monomial inner products k!/|k|! on the symmetric Fock space", _abelian),
    ("product_associative_unital", "L_s L_t = L_st in the weighted representation", _algebra),
    ("cesaro_intertwines_quotient", "Cesaro maps commute with the quotient map", _intertwining),
    ("fourier_coefficient_matrix_path", "Fourier coefficient |[s]| (A x_0, x_s)", _fourier_matrix),
    ("coinvariant_basis_orthogonal", "orthogonal basis eta_s of the coinvariant subspace", _coinvariant),
    ("unitary_equivalence", "compression to the coinvariant subspace is unitarily equivalent to L[S]", _unitary_equivalence),
    ("left_regular_contractive", "each weighted shift L_s is a contraction", _contractivity),
    ("comultiplication_coassociative", "Delta(L_s) = L_s (x) L_s is a coassociative algebra map", _coassociativity),
    ("spectrum_semigroup_like", "semigroup-like elements are exactly the L_s", _spectrum),
    ("hopf_ideal_indicator_criterion", "annihilator spanned by indicators of disjoint word sets", _hopf_ideal),
    ("comultiplication_descends", "Delta_J is well defined on the quotient", _descends),
    ("corepresentation_identity", "V = L_s (x) id satisfies V_13 V_23 = (Delta (x) id)(V)", _corepresentation),
    ("convolution_orthogonal_idempotents", "phi_s * phi_t = delta_st |[s]|^-1 phi_s", _convolution),
    ("automorphisms_from_permutations", "Hopf automorphisms from zero-preserving generator permutations", _automorphisms),
    ("schur_multiplier_bounds", "diagonal Schur multipliers: sampled lower bound below factorization bound", _schur),
]


def verify_all(presentation: Presentation, N: int, table: ClassTable | None = None,
               seed: int = 0, only: list | None = None) -> dict:
    """Run every check; ``passed`` is false when any check fails (skips do not count)."""
    table = close(presentation, N) if table is None else table
    results = []
    for i, (name, anchor, fn) in enumerate(CHECKS):
        if only is not None and name not in only:
            continue
        rng = np.random.default_rng([seed, i])
        ok, detail = fn(table, presentation, N, rng)
        status = "skip" if ok is None else ("pass" if ok else "fail")
        results.append(Check(name, anchor, status, _jsonable(detail)))
    return {"passed": all(c.passed for c in results),
            "checks": [c.to_json() for c in results]}


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, (np.floating, float)):
        return float(x)
    if isinstance(x, (np.integer,)):
        return int(x)
    if isinstance(x, (np.bool_,)):
        return bool(x)
    return x
