from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from htk.field import FieldSpec, _rational_matmul

Q = FieldSpec.rationals()


def test_prime_validation():
    with pytest.raises(ValueError):
        FieldSpec.prime(9)
    assert FieldSpec.prime(5).characteristic == 5
    assert Q.characteristic == 0


def test_modp_inverse():
    F = FieldSpec.prime(11)
    for x in range(1, 11):
        assert F.element(x * F.inverse(x)) == 1
    with pytest.raises(ZeroDivisionError):
        F.inverse(0)


fracs = st.fractions(min_value=-10, max_value=10, max_denominator=50)


@given(st.integers(1, 4), st.integers(1, 4), st.integers(1, 4), st.data())
def test_rational_matmul_matches_naive(r, k, c, data):
    a = np.array(data.draw(st.lists(st.lists(fracs, min_size=k, max_size=k), min_size=r, max_size=r)), dtype=object)
    b = np.array(data.draw(st.lists(st.lists(fracs, min_size=c, max_size=c), min_size=k, max_size=k)), dtype=object)
    expect = [[sum((a[i, t] * b[t, j] for t in range(k)), Fraction(0)) for j in range(c)] for i in range(r)]
    assert _rational_matmul(a, b).tolist() == expect


def test_rational_matmul_huge_entries():
    big = Fraction(2**70, 3)
    a = np.array([[big, Fraction(1, 7)]], dtype=object)
    b = np.array([[Fraction(3)], [Fraction(7)]], dtype=object)
    assert _rational_matmul(a, b).tolist() == [[Fraction(2**70 + 1)]]


def test_element_rejects_inexact():
    with pytest.raises((TypeError, ValueError)):
        Q.element(0.5)


def test_array_rejects_floats():
    with pytest.raises(TypeError):
        Q.array([[1, 0.5]])
    with pytest.raises(TypeError):
        FieldSpec.prime(5).array(np.array([1.0]))
