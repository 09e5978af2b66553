from hopfwb.congruence import close
from hopfwb.verify import CHECKS, corrupt_table, verify_all
from hopfwb.words import Presentation, commutator_presentation, presentation_from_json


def _status(report):
    return {c["name"]: c["status"] for c in report["checks"]}


def test_commutator_all_pass():
    report = verify_all(commutator_presentation(2), 5)
    assert report["passed"]
    assert set(_status(report).values()) == {"pass"}
    assert len(report["checks"]) == len(CHECKS)
    assert all(c["anchor"] for c in report["checks"])


def test_zero_word_all_pass():
    report = verify_all(presentation_from_json({"d": 2, "zeros": ["12"]}), 5)
    assert report["passed"]
    autos = next(c for c in report["checks"] if c["name"] == "automorphisms_from_permutations")
    assert autos["detail"]["automorphisms"] == [[1, 2]]
    assert _status(report)["drury_arveson_class_sizes"] == "skip"


def test_degenerate_generators_skip_automorphisms():
    report = verify_all(Presentation(2, (((1,), (2,)),)), 4)
    assert report["passed"]
    assert _status(report)["automorphisms_from_permutations"] == "skip"


def test_corrupted_table_fails_unitary_equivalence():
    p = commutator_presentation(2)
    bad = corrupt_table(close(p, 5), level=2, index=1)
    report = verify_all(p, 5, table=bad, only=["unitary_equivalence", "coinvariant_basis_orthogonal"])
    assert not report["passed"]
    assert _status(report) == {"unitary_equivalence": "fail", "coinvariant_basis_orthogonal": "fail"}


def test_corruption_does_not_touch_original():
    t = close(commutator_presentation(2), 3)
    corrupt_table(t, 1, 0, size=7)
    assert t.size(t.class_of((1,))) == 1


def test_deterministic():
    p = commutator_presentation(2)
    assert verify_all(p, 4, seed=3) == verify_all(p, 4, seed=3)
