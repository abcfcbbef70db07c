from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from arboreal import INF, DistanceMatrix, MatrixError, PartialDistance
from arboreal.rational import Infinity, as_fraction, format_number, is_inf, parse_number


@pytest.mark.parametrize("text, value", [
    ("3", Fraction(3)), ("1.5", Fraction(3, 2)), ("3/2", Fraction(3, 2)),
    ("0.10", Fraction(1, 10)), ("-2", Fraction(-2)), (" 7/14 ", Fraction(1, 2)),
])
def test_parse_number(text, value):
    assert parse_number(text) == value


@pytest.mark.parametrize("text", ["", "1e3", "1.", ".5", "1/0", "inf", "nan", "1/2/3", "0x10", "1.5/2"])
def test_parse_number_rejects(text):
    with pytest.raises(ValueError):
        parse_number(text)


@pytest.mark.parametrize("value, text", [
    (Fraction(3), "3"), (Fraction(3, 2), "3/2"), (Fraction(1, 10), "0.1"), (Fraction(-7, 100), "-0.07"),
    (Fraction(1, 3), "1/3"), (INF, "inf"), (Fraction(123, 1000), "0.123"),
])
def test_format_number(value, text):
    assert format_number(value) == text


@given(st.fractions())
def test_format_parse_roundtrip(q):
    assert parse_number(format_number(q)) == q


def test_infinity_sentinel():
    assert Infinity() is INF
    assert is_inf(INF) and not is_inf(Fraction(10**9))
    assert INF > Fraction(10**30) and not INF < 5
    assert max(Fraction(3), INF) is INF and min(Fraction(3), INF) == 3
    assert INF == INF and INF != Fraction(1)
    import pickle

    assert pickle.loads(pickle.dumps(INF)) is INF


def test_as_fraction_refuses_floats():
    assert as_fraction(3) == 3
    with pytest.raises(TypeError):
        as_fraction(0.5)
    with pytest.raises(TypeError):
        as_fraction(True)


def test_partial_distance_invariants():
    PartialDistance.from_pairs("xy", {("x", "y"): 2})
    with pytest.raises(MatrixError):
        PartialDistance(["x", "x"], [[0, 1], [1, 0]])
    with pytest.raises(MatrixError) as info:
        PartialDistance(["x", "y"], [[0, 1], [2, 0]])
    assert info.value.coords == (("x", "y"), ("y", "x"))
    with pytest.raises(MatrixError):
        PartialDistance(["x", "y"], [[1, 1], [1, 0]])
    with pytest.raises(MatrixError):
        PartialDistance(["x", "y"], [[0, 0], [0, 0]])
    with pytest.raises(MatrixError):
        PartialDistance(["x", "y"], [[0, -1], [-1, 0]])


def test_distance_matrix_requires_finite_entries():
    with pytest.raises(MatrixError):
        DistanceMatrix(["x", "y"], [[0, INF], [INF, 0]])
    with pytest.raises(MatrixError):
        DistanceMatrix.from_pairs("xyz", {("x", "y"): 1, ("x", "z"): 1})
    d = DistanceMatrix.from_pairs("xyz", {("x", "y"): 1, ("x", "z"): 2, ("y", "z"): 2})
    assert d.is_total and d["z", "x"] == 2


def test_accessors_and_restriction():
    d = PartialDistance.from_pairs("abc", {("a", "b"): 2, ("b", "c"): Fraction(7, 2)})
    assert d["a", "c"] is INF and d["c", "b"] == Fraction(7, 2)
    assert list(d.finite_pairs()) == [("a", "b", 2), ("b", "c", Fraction(7, 2))]
    sub = d.restrict(["c", "a"])
    assert sub.labels == ("a", "c") and sub["a", "c"] is INF
    with pytest.raises(KeyError):
        d.restrict(["a", "q"])
    e = d.with_entry("a", "c", 5)
    assert e["c", "a"] == 5 and d["a", "c"] is INF


def test_rank_matrix_preserves_order():
    d = PartialDistance.from_pairs("abcd", {("a", "b"): Fraction(1, 2), ("a", "c"): 3, ("b", "c"): 3, ("c", "d"): 10})
    r = d.rank_matrix()
    assert r.dtype == np.int64
    assert r[0, 0] == 0 and r[0, 3] == -1
    assert r[0, 1] == 1 and r[0, 2] == r[1, 2] == 2 and r[2, 3] == 3
    assert (r == r.T).all()


def test_equality_ignores_label_order():
    a = PartialDistance.from_pairs("ab", {("a", "b"): 2})
    b = PartialDistance.from_pairs("ba", {("a", "b"): 2})
    assert a == b and hash(a) == hash(b)
    assert a != PartialDistance.from_pairs("ab", {("a", "b"): 3})
