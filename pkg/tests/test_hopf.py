import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from hopfwb import coeffs as C, hopf
from hopfwb.algebra import Element, FreeElement, product
from hopfwb.congruence import close
from hopfwb.errors import LevelOverflowError, ResourceLimitError
from hopfwb.fock import SemigroupSpace, left_regular
from hopfwb.verify import random_element, random_free
from hopfwb.words import commutator_presentation

from strategies import presentations


def test_comultiply_generators(comm2_table):
    t = comm2_table
    s = t.class_of((1, 2))
    assert hopf.comultiply(Element.monomial(t, s)).coeffs == {(s, s): C.ONE_Q}
    assert hopf.comultiply(Element.identity(t)) == hopf.outer(Element.identity(t), Element.identity(t))


def test_coassociative_and_multiplicative(comm3_table):
    rng = np.random.default_rng(7)
    t = comm3_table
    for _ in range(25):
        a, b = random_element(t, 2, rng), random_element(t, 2, rng)
        D = hopf.comultiply(a)
        assert hopf.comultiply_leg(D, 0) == hopf.comultiply_leg(D, 1)
        assert hopf.comultiply(product(a, b)) == hopf.tensor_product(hopf.comultiply(a), hopf.comultiply(b))


def test_semigroup_like_examples(comm2_table):
    t = comm2_table
    s, u = t.class_of((1,)), t.class_of((1, 2))
    assert hopf.is_semigroup_like(Element.monomial(t, s))
    assert hopf.is_semigroup_like(Element.zero(t))
    assert not hopf.is_semigroup_like(Element(t, {s: 1, u: 1}))
    assert not hopf.is_semigroup_like(Element.monomial(t, s, 2))
    with pytest.raises(ValueError):
        hopf.is_semigroup_like(Element.monomial(t, s, 0.5))


@pytest.mark.parametrize("name", ["comm", "zeros"])
def test_spectrum_scan(name, comm2_table, zeros_table):
    t = comm2_table if name == "comm" else zeros_table
    found = hopf.spectrum_scan(t, 2)
    singles = sorted(next(iter(e.coeffs)) for e in found if e.coeffs)
    assert singles == t.nonzero_classes(2)
    assert sum(1 for e in found if not e.coeffs) == 1


def test_coideal_membership(comm2_table, zeros_table):
    d = 2
    u, v = (1, 2), (2, 1)
    x = hopf.free_comultiply(FreeElement(d, {u: 1, v: -1}))
    assert hopf.coideal_membership(x, comm2_table)
    zero = hopf.FreeTensor.outer(FreeElement.monomial(d, (1, 2)), FreeElement.monomial(d, (1, 2)))
    assert hopf.coideal_membership(zero, zeros_table)
    mixed = hopf.FreeTensor.outer(FreeElement.monomial(d, (1,)), FreeElement.monomial(d, (2,)))
    assert not hopf.coideal_membership(mixed, comm2_table)
    # the explicit decomposition (L_u - L_v) (x) L_u + L_v (x) (L_u - L_v)
    diff = FreeElement(d, {u: 1, v: -1})
    decomposed = hopf.FreeTensor.outer(diff, FreeElement.monomial(d, u)) + \
        hopf.FreeTensor.outer(FreeElement.monomial(d, v), diff)
    assert decomposed.coeffs == x.coeffs


@given(presentations(ds=(2,)), st.integers(0, 2 ** 31))
@settings(max_examples=25)
def test_comultiplication_descends(p, seed):
    t = close(p, 4)
    rng = np.random.default_rng(seed)
    for _ in range(3):
        assert hopf.comultiplication_descends(random_free(2, 4, rng, terms=6), t)


def test_hopf_ideal_examples():
    comm = hopf.ideal_generators(commutator_presentation(2))
    r = hopf.hopf_ideal_test(comm, 2, 2)
    assert r.is_coideal and r.indicator_sets == [[(1, 1)], [(1, 2), (2, 1)], [(2, 2)]]
    assert r.ideal_dim == 1 and r.killed == []
    r = hopf.hopf_ideal_test([FreeElement(2, {(1,): 1, (2,): 1})], 1, 2)
    assert not r.is_coideal and r.annihilator_dim == 1
    r = hopf.hopf_ideal_test([FreeElement.monomial(2, (1, 2))], 2, 2)
    assert r.is_coideal and r.killed == [(1, 2)]
    assert r.indicator_sets == [[(1, 1)], [(2, 1)], [(2, 2)]]


def test_hopf_ideal_rejects_inhomogeneous_and_large():
    with pytest.raises(ValueError):
        hopf.hopf_ideal_test([FreeElement(2, {(1,): 1, (1, 2): 1})], 2, 2)
    with pytest.raises(ResourceLimitError):
        hopf.hopf_ideal_test([], 13, 2)


def test_hopf_ideal_complex_coefficients():
    g = FreeElement(2, {(1,): 1, (2,): 1j})
    with pytest.raises(ValueError):
        hopf.hopf_ideal_test([g], 1, 2)
    from hopfwb import coeffs as C
    g = FreeElement(2, {(1,): 1, (2,): C.exact(0, 1)})
    assert not hopf.hopf_ideal_test([g], 1, 2).is_coideal


@given(presentations(ds=(2, 3), max_len=2))
@settings(max_examples=25)
def test_presentation_ideals_are_hopf(p):
    gens = hopf.ideal_generators(p)
    top = 5 if p.d == 2 else 4
    t = close(p, top)
    for n in range(1, top + 1):
        r = hopf.hopf_ideal_test(gens, n, p.d)
        assert r.is_coideal
        # indicator sets are exactly the nonzero classes, killed words the zero class
        assert sorted(r.indicator_sets) == sorted(list(c.members) for c in t.classes(n))
        assert r.killed == list(t.zero_members(n))


def test_corepresentation(comm2_table):
    t = comm2_table
    for s in t.nonzero_classes(3):
        assert hopf.corepresentation_check(t, s, 6)
    assert hopf.corepresentation_check(t, t.identity, 6)
    with pytest.raises(LevelOverflowError):
        hopf.corepresentation_check(t, t.class_of((1, 1, 1, 1)), 6)


def test_corepresentation_perturbed(comm2_table):
    t = comm2_table
    space = SemigroupSpace(t, 6)
    s, u = t.class_of((1,)), t.class_of((2,))
    eps = 0.1
    V = left_regular(t, s, space=space) + eps * left_regular(t, u, space=space)
    assert hopf.corepresentation_residual(V, space) >= eps / 2
