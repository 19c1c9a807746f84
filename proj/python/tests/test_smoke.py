import pytest

import crescent


def test_counts():
    assert crescent.count_matrices(4) == 60
    assert crescent.count_matrices(5) == 12600


def test_classify_n4():
    report = crescent.classify(4)
    assert report["class_count"] == 4
    assert len(report["surviving"]) == 3


def test_realize_and_rigidity_n4():
    census = crescent.realize(4, starts=50)
    assert census["realizable_count"] == 3
    reports = crescent.rigidity(census)
    assert [r["rank"] for r in reports] == [5, 5, 5]
    assert crescent.s_allowed(5) == 7


def test_verify():
    rows = [[0, 1, 2], [1, 0, 2], [2, 2, 0]]
    assert crescent.verify(rows, {1: 1.0, 2: 0.8})["ok"]
    flat = crescent.verify(rows, {1: 1.0, 2: 0.5})
    assert not flat["ok"]
    assert flat["reason"] == "collinearity"


def test_errors():
    with pytest.raises(ValueError):
        crescent.verify([[0, 1], [1, 0]], {1: 1.0})
    with pytest.raises(RuntimeError):
        crescent.classify(7)
