"""Hypothesis strategies and seeded generators shared by the test modules."""
from fractions import Fraction

from hypothesis import strategies as st

from hopfwb.words import Presentation


def words(d, min_size=1, max_size=3):
    return st.lists(st.integers(1, d), min_size=min_size, max_size=max_size).map(tuple)


@st.composite
def presentations(draw, ds=(2, 3), max_relations=3, max_len=3, max_zeros=2):
    d = draw(st.sampled_from(ds))
    rels = []
    for _ in range(draw(st.integers(0, max_relations))):
        n = draw(st.integers(1, max_len))
        u = draw(words(d, n, n))
        v = draw(words(d, n, n))
        if u != v:
            rels.append((u, v))
    zeros = draw(st.lists(words(d, 1, max_len), max_size=max_zeros))
    return Presentation(d, tuple(rels), tuple(zeros))


rationals = st.builds(Fraction, st.integers(-5, 5), st.integers(1, 4))


def random_presentation(rng, d):
    """Seeded counterpart of :func:`presentations` for the acceptance sweep."""
    rels = []
    for _ in range(int(rng.integers(0, 4))):
        n = int(rng.integers(1, 4))
        u = tuple(int(x) for x in rng.integers(1, d + 1, size=n))
        v = tuple(int(x) for x in rng.integers(1, d + 1, size=n))
        if u != v:
            rels.append((u, v))
    zeros = [tuple(int(x) for x in rng.integers(1, d + 1, size=int(rng.integers(1, 4))))
             for _ in range(int(rng.integers(0, 3)))]
    return Presentation(d, tuple(rels), tuple(zeros))
