import itertools
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from hopfwb import coeffs as C
from hopfwb.algebra import Element
from hopfwb.fock import SemigroupSpace, evaluate
from hopfwb.hopf import is_semigroup_like
from hopfwb.predual import (CoefficientFunctional, EvaluationCharacter, character_convolution_check,
                            coefficient_as_rank_one, convolve, evaluation_functional, nu_vector,
                            phi_lambda, semicharacter_check, word_value)
from hopfwb.verify import random_rational
from hopfwb.words import ZERO, multidegree

Q = lambda p, q=1: C.exact(Fraction(p, q))


def _random_functional(table, rng, up_to=2):
    return CoefficientFunctional(table, {s: random_rational(rng) for s in table.nonzero_classes(up_to)})


def test_phi_values(comm2_table):
    t = comm2_table
    s = t.class_of((1, 2))
    phi = CoefficientFunctional.phi(t, s)
    assert phi(Element.monomial(t, s)) == Q(1, 2)
    assert C.iszero(phi(Element.monomial(t, t.class_of((1, 1)))))


def test_rank_one_agrees(comm2_table):
    t = comm2_table
    space = SemigroupSpace(t, 4)
    rng = np.random.default_rng(8)
    e = Element(t, {s: random_rational(rng) for s in t.nonzero_classes(4)})
    A = evaluate(e, space=space)
    for s in t.nonzero_classes(4):
        exact = C.to_complex(CoefficientFunctional.phi(t, s)(e))
        assert coefficient_as_rank_one(t, s, space).on_matrix(A) == pytest.approx(exact, abs=1e-12)


def test_convolution_against_matrix_oracle(comm2_table):
    """phi_s * phi_t evaluated on every monomial through rank-one matrix functionals."""
    t = comm2_table
    N = 5
    space = SemigroupSpace(t, N)
    classes = t.nonzero_classes(3)
    mats = {u: evaluate(Element.monomial(t, u), space=space) for u in t.nonzero_classes(N)}
    for s, u in itertools.product(classes, repeat=2):
        conv = convolve(CoefficientFunctional.phi(t, s), CoefficientFunctional.phi(t, u))
        fs, fu = coefficient_as_rank_one(t, s, space), coefficient_as_rank_one(t, u, space)
        for w, M in mats.items():
            oracle = fs.on_matrix(M) * fu.on_matrix(M)
            assert C.to_complex(conv.on_monomial(w)) == pytest.approx(oracle, abs=1e-12)
        if s != u:
            assert conv == CoefficientFunctional(t)
        else:
            assert conv == CoefficientFunctional.phi(t, s, Fraction(1, t.size(s)))


def test_commutator_example(comm2_table):
    t = comm2_table
    s = t.class_of((1, 2))
    phi = CoefficientFunctional.phi(t, s)
    assert convolve(phi, phi) == phi.scale(Q(1, 2))


def test_orthogonal_idempotents(comm3_table):
    t = comm3_table
    psi = {s: CoefficientFunctional.phi(t, s, t.size(s)) for s in t.nonzero_classes(3)}
    for s, u in itertools.product(psi, repeat=2):
        expected = psi[s] if s == u else CoefficientFunctional(t)
        assert convolve(psi[s], psi[u]) == expected


def test_convolution_algebra_laws(comm2_table):
    rng = np.random.default_rng(9)
    t = comm2_table
    for _ in range(20):
        f, g, h = (_random_functional(t, rng) for _ in range(3))
        assert convolve(f, g) == convolve(g, f)
        assert convolve(convolve(f, g), h) == convolve(f, convolve(g, h))
        assert convolve(f, g + h) == convolve(f, g) + convolve(f, h)


def test_convolution_rejects_rank_one(comm2_table):
    space = SemigroupSpace(comm2_table, 2)
    r = coefficient_as_rank_one(comm2_table, comm2_table.identity, space)
    with pytest.raises(TypeError):
        convolve(r, CoefficientFunctional(comm2_table))


def test_evaluation_characters(comm2_table):
    t = comm2_table
    rng = np.random.default_rng(10)
    s = t.class_of((1, 1, 2))
    rho = evaluation_functional(t, s)
    assert rho(CoefficientFunctional.phi(t, s)) == Q(1, 3)
    assert C.iszero(rho(CoefficientFunctional.phi(t, t.class_of((1,)))))
    for _ in range(10):
        f, g = _random_functional(t, rng, 3), _random_functional(t, rng, 3)
        for u in t.nonzero_classes(3):
            r = EvaluationCharacter(t, u)
            assert r(convolve(f, g)) == C.mul(r(f), r(g))
    with pytest.raises(ValueError):
        EvaluationCharacter(t, ZERO)


def test_duality_with_semigroup_like(comm2_table):
    """Evaluation against F is multiplicative exactly when Delta F = F (x) F."""
    t = comm2_table
    rng = np.random.default_rng(11)
    fs = [_random_functional(t, rng) for _ in range(6)]
    classes = t.nonzero_classes(1)
    for mask in itertools.product((0, 1), repeat=len(classes)):
        F = Element(t, {c: 1 for c, b in zip(classes, mask) if b})
        multiplicative = all(convolve(f, g)(F) == C.mul(f(F), g(F)) for f in fs for g in fs)
        assert multiplicative == is_semigroup_like(F)


def test_nu_vector_examples():
    nu, k = nu_vector([0, 0], 3)
    assert nu[0] == 1 and not nu[1:].any() and np.allclose(k, nu)
    nu, _ = nu_vector([0.5], 10)
    assert np.vdot(nu, nu).real == pytest.approx(0.75 * sum(4.0 ** -n for n in range(11)), rel=1e-14)
    with pytest.raises(ValueError):
        nu_vector([0.8, 0.6], 3)


def test_phi_lambda_example():
    value, bound = phi_lambda([0.5, 0], (1,), 12)
    assert abs(value - 0.5) <= 0.5 ** (2 * 12 - 1)
    assert abs(value - 0.5) <= bound


points = st.tuples(st.floats(-0.6, 0.6), st.floats(-0.6, 0.6), st.floats(-0.5, 0.5))


@given(points, st.sampled_from([(), (1,), (2, 1), (1, 1, 2)]))
def test_phi_lambda_tail_bound(pt, w):
    a, b, c = pt
    lam = [complex(a, c), complex(b, 0)]
    if np.linalg.norm(lam) >= 0.95:
        return
    value, bound = phi_lambda(lam, w, 8)
    assert abs(value - word_value(w, lam)) <= bound + 1e-15


@pytest.mark.parametrize("lam,mu", [
    ([0, 0], [0, 0]),
    ([0.5, 0], [0, 0.5]),
    ([0.5], [0.5]),
    ([0.3 + 0.2j, -0.4], [0.1, 0.5j]),
])
def test_character_convolution(lam, mu):
    residual, eps = character_convolution_check(lam, mu, 14)
    assert residual <= eps and residual <= 1e-6
    if not any(lam):
        assert residual == 0


def test_semicharacters(comm2_table):
    t = comm2_table
    lam = (0.5, -1.0)
    power = lambda s: complex(np.prod([l ** k for l, k in zip(lam, multidegree(t.rep(s), 2))]))
    assert semicharacter_check(power, t)
    assert semicharacter_check(lambda s: 1, t)
    assert not semicharacter_check(lambda s: s.level, t)
    assert not semicharacter_check(lambda s: 2 ** s.level, t)


def test_semicharacter_zero_forcing(zeros_table):
    t = zeros_table
    # gamma(1) gamma(2) must equal the value at the zero class
    assert not semicharacter_check(lambda s: 1, t, zero_value=0)
    assert semicharacter_check(lambda s: 1, t, zero_value=1)
    assert semicharacter_check(lambda s: 1 if s.level == 0 else 0, t)
