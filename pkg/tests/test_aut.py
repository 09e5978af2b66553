import itertools

import numpy as np
import pytest

from hopfwb import aut, hopf
from hopfwb.algebra import product
from hopfwb.congruence import close, oracle_close
from hopfwb.errors import DegenerateGeneratorsError
from hopfwb.fock import FullFock, SemigroupSpace, evaluate, full_shift, operator_norm
from hopfwb.predual import CoefficientFunctional, convolve
from hopfwb.verify import random_element, random_rational
from hopfwb.words import Presentation, commutator_presentation, free_presentation, words_up_to


def _oracle_automorphisms(p, N):
    """Permutations whose image presentation generates the same congruence."""
    base = oracle_close(p, N)
    out = []
    for sigma in itertools.permutations(range(1, p.d + 1)):
        image = Presentation(p.d, tuple((aut.permute_word(sigma, u), aut.permute_word(sigma, v))
                                        for u, v in p.relations),
                             tuple(aut.permute_word(sigma, z) for z in p.zeros))
        if oracle_close(image, N).signature() == base.signature():
            out.append(sigma)
    return out


def test_commutator_d3(comm3_table):
    perms = aut.enumerate_automorphisms(comm3_table)
    assert len(perms) == 6 and aut.is_group(perms)
    assert perms == _oracle_automorphisms(commutator_presentation(3), 4)


def test_zero_word(zeros_table):
    assert aut.enumerate_automorphisms(zeros_table) == [(1, 2)]


def test_free():
    assert aut.enumerate_automorphisms(close(free_presentation(2), 2)) == [(1, 2), (2, 1)]


def test_partial_symmetry():
    p = Presentation(3, (((1, 2), (2, 1)),), ((3, 3),))
    perms = aut.enumerate_automorphisms(close(p, 4))
    assert perms == [(1, 2, 3), (2, 1, 3)] == _oracle_automorphisms(p, 4)


def test_check_level_recomputes():
    p = Presentation(2, (((1, 1, 2), (2, 1, 1)),))
    shallow = close(p, 2)
    assert aut.enumerate_automorphisms(shallow) == _oracle_automorphisms(p, 6)


def test_degenerate_rejected():
    with pytest.raises(DegenerateGeneratorsError):
        aut.enumerate_automorphisms(close(Presentation(2, (((1,), (2,)),)), 3))
    with pytest.raises(DegenerateGeneratorsError):
        aut.enumerate_automorphisms(close(Presentation(2, (), ((1,),)), 3))


def test_group_helpers():
    perms = list(itertools.permutations((1, 2, 3)))
    assert aut.is_group(perms)
    assert not aut.is_group([(1, 2, 3), (2, 3, 1)])
    table = aut.group_table(perms)
    assert all(sorted(row) == list(range(6)) for row in table)
    for s in perms:
        assert aut.compose(s, aut.inverse(s)) == (1, 2, 3)


def test_induced_automorphism_properties(comm3_table):
    t = comm3_table
    rng = np.random.default_rng(12)
    space = SemigroupSpace(t, 5)
    for sigma in aut.enumerate_automorphisms(t):
        theta = lambda e: aut.induced_hopf_automorphism(sigma, e)
        for _ in range(5):
            a, b = random_element(t, 2, rng), random_element(t, 2, rng)
            assert theta(product(a, b)) == product(theta(a), theta(b))
            mapped = hopf.Tensor(t, 2, {(aut.permute_class(t, sigma, x), aut.permute_class(t, sigma, y)): v
                                        for (x, y), v in hopf.comultiply(a).coeffs.items()})
            assert hopf.comultiply(theta(a)) == mapped
            e = random_element(t, 5, rng, terms=6)
            assert operator_norm(evaluate(theta(e), space=space)) == \
                pytest.approx(operator_norm(evaluate(e, space=space)), abs=1e-10)
    e = random_element(t, 3, rng)
    assert aut.induced_hopf_automorphism((1, 2, 3), e) == e


def test_predual_map_is_convolution_automorphism(comm2_table):
    t = comm2_table
    rng = np.random.default_rng(13)
    for sigma in aut.enumerate_automorphisms(t):
        m = lambda f: aut.induced_predual_map(sigma, f)
        for _ in range(10):
            f = CoefficientFunctional(t, {s: random_rational(rng) for s in t.nonzero_classes(3)})
            g = CoefficientFunctional(t, {s: random_rational(rng) for s in t.nonzero_classes(3)})
            assert m(convolve(f, g)) == convolve(m(f), m(g))
            # duality with the algebra map
            e = random_element(t, 3, rng, terms=5)
            assert m(f)(aut.induced_hopf_automorphism(sigma, e)) == f(e)


def test_second_quantization():
    d, N = 2, 4
    fock = FullFock(d, N)
    U = aut.second_quantization((2, 1), d, N, fock)
    e12 = np.zeros(fock.dim)
    e12[fock.index[(1, 2)]] = 1
    assert (U @ e12)[fock.index[(2, 1)]] == 1
    assert np.array_equal(U.T @ U, np.eye(fock.dim))
    for w in words_up_to(d, 3):
        lhs = U @ full_shift(d, w, N, fock) @ U.T
        assert np.array_equal(lhs, full_shift(d, aut.permute_word((2, 1), w), N, fock))
    with pytest.raises(ValueError):
        aut.second_quantization((1, 1), 2, 2)
