from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from crosm import linalg, scalars


def test_parse_scalar_exact_and_float():
    assert scalars.parse_scalar("3/5") == F(3, 5)
    assert scalars.parse_scalar("0.1") == F(1, 10)
    assert scalars.parse_scalar("2") == F(2)
    x = scalars.parse_scalar("0.25", "float")
    assert isinstance(x, float) and x == 0.25


def test_parse_scalar_rejects_garbage():
    with pytest.raises(ValueError):
        scalars.parse_scalar("one half")


def test_tolerance_by_mode():
    assert scalars.tol_for("exact") is None
    assert scalars.tol_for("float") == 1e-9


def test_default_mode_env(monkeypatch):
    monkeypatch.setenv("CROSM_MODE", "float")
    assert scalars.default_mode() == "float"
    monkeypatch.delenv("CROSM_MODE")
    assert scalars.default_mode() == "exact"


def test_exact_sqrt():
    assert scalars.exact_sqrt(F(9, 4)) == F(3, 2)
    assert scalars.exact_sqrt(F(2)) is None
    with pytest.raises(scalars.Irrational):
        scalars.sqrt(F(2))
    assert scalars.sqrt(F(1, 16)) == F(1, 4)


def test_fmt_and_json():
    assert scalars.fmt(F(3, 4)) == "3/4"
    assert scalars.fmt(F(2)) == "2"
    assert scalars.to_json(F(3, 4)) == {"num": 3, "den": 4}
    assert scalars.to_json(0.5) == 0.5


def test_rank_and_nullspace():
    a = [[F(1), F(2), F(3)], [F(2), F(4), F(6)], [F(1), F(0), F(1)]]
    assert linalg.rank(a) == 2
    ns = linalg.nullspace(a)
    assert len(ns) == 1
    for v in ns:
        assert linalg.matvec(a, v) == [0, 0, 0]


def test_inverse_and_det():
    a = [[F(2), F(1)], [F(1), F(1)]]
    assert linalg.det(a) == 1
    assert linalg.inverse(a) == [[1, -1], [-1, 2]]
    with pytest.raises(linalg.SingularMatrix):
        linalg.inverse([[F(1), F(2)], [F(2), F(4)]])


def test_positive_definite_failure_reports_minor():
    assert linalg.positive_definite_failure([[F(1), F(0)], [F(0), F(1)]]) is None
    assert linalg.positive_definite_failure([[F(1), F(2)], [F(2), F(1)]]) == 2
    assert linalg.positive_definite_failure([[F(-1)]]) == 1


def test_cholesky_float():
    L = linalg.cholesky([[4.0, 2.0], [2.0, 2.0]])
    assert L[0][0] == pytest.approx(2.0)
    assert L[1][1] == pytest.approx(1.0)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(-5, 5), min_size=9, max_size=9))
def test_inverse_roundtrip_property(entries):
    a = [[F(entries[3 * i + j]) for j in range(3)] for i in range(3)]
    if linalg.det(a) == 0:
        assert linalg.rank(a) < 3
        return
    assert linalg.matmul(linalg.inverse(a), a) == linalg.identity(3)
