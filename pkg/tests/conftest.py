import pytest
from hypothesis import settings

from hopfwb.congruence import close
from hopfwb.words import commutator_presentation, free_presentation, presentation_from_json

settings.register_profile("default", max_examples=40, deadline=None)
settings.load_profile("default")


def zeros_12():
    return presentation_from_json({"d": 2, "relations": [], "zeros": ["12"]})


CORPUS = {
    "free2": lambda: free_presentation(2),
    "comm2": lambda: commutator_presentation(2),
    "zeros12": zeros_12,
}


@pytest.fixture(params=sorted(CORPUS))
def corpus_presentation(request):
    return CORPUS[request.param]()


@pytest.fixture(scope="session")
def comm2_table():
    return close(commutator_presentation(2), 6)


@pytest.fixture(scope="session")
def comm3_table():
    return close(commutator_presentation(3), 5)


@pytest.fixture(scope="session")
def zeros_table():
    return close(zeros_12(), 6)


@pytest.fixture(scope="session")
def free_table():
    return close(free_presentation(2), 5)
