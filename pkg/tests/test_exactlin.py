from fractions import Fraction

import numpy as np
import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from htk.errors import DimensionMismatch, SingularMatrix
from htk.exactlin import (
    LinMap,
    TensorIndex,
    TensorMap,
    check_equal,
    check_maps_equal,
    invert,
    kernel_basis,
    permutation_map,
    rank,
    rref,
    same_span,
    solve_linear,
    swap_map,
    tensor_map,
)
from htk.field import FieldSpec

Q = FieldSpec.rationals()
F7 = FieldSpec.prime(7)

dims_st = st.lists(st.integers(1, 4), min_size=1, max_size=4)
small = st.integers(-3, 3)


def matrices(rows, cols):
    return st.lists(st.lists(small, min_size=cols, max_size=cols), min_size=rows, max_size=rows)


@st.composite
def shaped(draw, max_dim=5):
    r, c = draw(st.integers(1, max_dim)), draw(st.integers(1, max_dim))
    return draw(matrices(r, c))


@given(dims_st, st.data())
def test_flatten_roundtrip(dims, data):
    ix = TensorIndex(dims)
    k = data.draw(st.integers(0, ix.size - 1))
    assert ix.flatten(*ix.unflatten(k)) == k


def test_flatten_is_row_major():
    ix = TensorIndex((2, 3))
    assert [ix.unflatten(k) for k in range(6)] == [(0, 0), (0, 1), (0, 2), (1, 0), (1, 1), (1, 2)]
    with pytest.raises(IndexError):
        ix.flatten(2, 0)


@given(shaped())
def test_rank_matches_sympy(m):
    assert rank(LinMap(Q, m)) == sympy.Matrix(m).rank()


@given(shaped())
def test_rref_matches_sympy(m):
    red, pivots = rref(Q, Q.array(m))
    ref, ref_piv = sympy.Matrix(m).rref()
    assert pivots == tuple(ref_piv)
    assert [[Fraction(int(x.p), int(x.q)) for x in row] for row in ref.tolist()] == red.tolist()


@given(shaped())
def test_kernel_basis_is_kernel(m):
    a = LinMap(Q, m)
    basis = kernel_basis(a)
    assert len(basis) == a.dom_dim - rank(a)
    for v in basis:
        assert not np.any(a(v) != 0)


@given(shaped(), st.data())
def test_solve_linear_consistent(m, data):
    a = LinMap(Q, m)
    x0 = data.draw(st.lists(small, min_size=a.dom_dim, max_size=a.dom_dim))
    b = a(x0)
    x = solve_linear(a, b)
    assert x is not None and list(a(x)) == list(b)


def test_solve_linear_inconsistent():
    assert solve_linear(LinMap(Q, [[1, 1], [2, 2]]), [1, 0]) is None


@given(st.integers(1, 4), st.data())
def test_invert_modp(n, data):
    m = data.draw(matrices(n, n))
    a = LinMap(F7, m)
    if rank(a) < n:
        with pytest.raises(SingularMatrix):
            invert(a)
    else:
        assert invert(a) @ a == LinMap.identity(F7, n)


def test_invert_rational():
    a = LinMap(Q, [[2, 1], [1, 1]])
    assert invert(a) == LinMap(Q, [[1, -1], [-1, 2]])
    with pytest.raises(DimensionMismatch):
        invert(LinMap(Q, [[1, 2]]))


@given(shaped(4), shaped(4))
def test_tensor_map_mixed_product(a, b):
    # (f (x) g)(u (x) v) = f(u) (x) g(v)
    f, g = LinMap(Q, a), LinMap(Q, b)
    u = list(range(1, f.dom_dim + 1))
    v = [(-1) ** i for i in range(g.dom_dim)]
    assert list(tensor_map([f, g])(Q.kron(Q.array(u), Q.array(v)))) == list(Q.kron(f(u), g(v)))


@given(dims_st, st.data())
def test_permute_then_inverse_is_identity(dims, data):
    order = data.draw(st.permutations(range(len(dims))))
    inv = [order.index(k) for k in range(len(dims))]
    tm = TensorMap.start(F7, dims).permute(*order).permute(*inv)
    assert tm.linmap == LinMap.identity(F7, int(np.prod(dims)))


def test_swap_moves_factors():
    s = swap_map(Q, 2, 3)
    u, v = Q.array([1, 2]), Q.array([3, 4, 5])
    assert list(s(Q.kron(u, v))) == list(Q.kron(v, u))
    assert permutation_map(Q, (2, 3), (0, 1)) == LinMap.identity(Q, 6)


@given(shaped(3), shaped(3), st.integers(1, 3), st.integers(1, 3))
def test_then_agrees_with_kronecker(a, b, left, right):
    # applying f in the middle equals id (x) f (x) id
    f = LinMap(Q, a)
    ref = tensor_map([LinMap.identity(Q, left), f, LinMap.identity(Q, right)])
    got = TensorMap.start(Q, (left, f.dom_dim, right)).then(f, 1).linmap
    assert got == ref


def test_then_functorial():
    f = LinMap(Q, [[1, 2], [0, 1], [3, 3]])
    g = LinMap(Q, [[1, 0, 1]])
    one = TensorMap.start(Q, (2, 2)).then(f, 1).then(g, 1, out=()).linmap
    two = TensorMap.start(Q, (2, 2)).then(g @ f, 1, out=()).linmap
    assert one == two


def test_then_inserts_and_removes_factors():
    u = LinMap(Q, [[1], [0]])
    tm = TensorMap.start(Q, (3,)).then(u, 1, width=0)
    assert tm.dims == (3, 2)
    assert tm.then(LinMap(Q, [[1, 1]]), 1, out=()).linmap == LinMap.identity(Q, 3)
    with pytest.raises(DimensionMismatch):
        TensorMap.start(Q, (3,)).then(u, 0)


def test_check_equal_reports_first_witness():
    f = LinMap(Q, [[1, 0], [0, 1]])
    g = LinMap(Q, [[1, 0], [0, 2]])
    v = check_equal("t", Q, (2,), lambda x: x.then(f, 0), lambda x: x.then(g, 0), chunk=1)
    assert not v.passed and v.witness.input == (1,) and v.witness.output == (1,)
    assert check_maps_equal("t", f, f).passed
    w = check_maps_equal("t", LinMap(Q, np.eye(4, dtype=int)), LinMap(Q, np.diag([1, 1, 1, 0])), (2, 2), (2, 2))
    assert w.witness.input == (1, 1) and w.witness.output == (1, 1)


def test_same_span():
    a = Q.array([[1, 0], [0, 1], [1, 1]])
    b = Q.array([[1, 1], [1, -1], [2, 0]])
    assert same_span(a, b, Q)
    assert not same_span(a, Q.array([[0], [0], [1]]), Q)


def test_modp_reduces_entries():
    f = LinMap(F7, [[8, -1]])
    assert f.entries.tolist() == [[1, 6]]
    assert f.scaled(3).entries.tolist() == [[3, 4]]
