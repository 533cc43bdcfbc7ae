import itertools

import pytest

from htk.constructions import (
    algebra_from_products,
    cyclic_group,
    dual_group_algebra,
    group_algebra,
    klein_four,
    monoid_bialgebra,
    sweedler_h4,
    symmetric_group,
    taft_algebra,
)
from htk.errors import NoAntipode
from htk.exactlin import LinMap
from htk.field import FieldSpec
from htk.hopfcore import (
    BialgebraData,
    CoalgebraData,
    HopfData,
    antipode_powers,
    check_algebra,
    check_antipode_properties,
    check_bialgebra,
    check_hopf,
    map_power,
)

Q = FieldSpec.rationals()
F7 = FieldSpec.prime(7)

HOPF = {
    "c3": lambda: group_algebra(cyclic_group(3), Q),
    "s3_f5": lambda: group_algebra(symmetric_group(3), FieldSpec.prime(5)),
    "dual_klein": lambda: dual_group_algebra(klein_four(), Q),
    "dual_s3": lambda: dual_group_algebra(symmetric_group(3), Q),
    "sweedler": lambda: sweedler_h4(Q),
    "taft3": lambda: taft_algebra(3, F7),
}


@pytest.mark.parametrize("name", sorted(HOPF))
def test_hopf_axioms(name):
    h = HOPF[name]()
    rep = check_hopf(h)
    rep.extend(check_antipode_properties(h))
    assert rep.passed, rep.format_text()


def test_group_antipode_is_inversion():
    G = symmetric_group(3)
    h = group_algebra(G, Q)
    for g in range(G.order):
        col = h.S.column(g)
        inv = next(k for k in range(G.order) if G(g, k) == G.identity)
        assert [int(x) for x in col] == [int(k == inv) for k in range(G.order)]


def test_sweedler_antipode_by_hand():
    # S(g) = g, S(x) = -gx, S(gx) = x on the basis 1, g, x, gx
    s = sweedler_h4(Q).S
    assert s == LinMap(Q, [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, -1, 0]])


def test_sweedler_antipode_order_four():
    h = sweedler_h4(Q)
    _, s2 = antipode_powers(h)
    assert s2 != LinMap.identity(Q, 4)
    assert map_power(h.S, 4) == LinMap.identity(Q, 4)


def test_taft_antipode_order():
    h = taft_algebra(3, F7)
    assert map_power(h.S, 6) == LinMap.identity(F7, 9)
    assert map_power(h.S, 2) != LinMap.identity(F7, 9)
    assert map_power(h.S, -1) @ h.S == LinMap.identity(F7, 9)


def test_bad_comultiplication_fails():
    h = group_algebra(cyclic_group(2), Q)
    # comult(g) = g (x) 1
    bad = CoalgebraData(Q, 2, LinMap(Q, [[1, 0], [0, 0], [0, 1], [0, 0]]), h.counit)
    rep = check_bialgebra(BialgebraData(h.algebra, bad))
    assert not rep.passed
    v = rep.failures()[0]
    assert v.witness is not None and v.witness.input == (1,)


def test_nonmultiplicative_comult_detected_with_witness():
    # g * g = 2 * 1 is still associative and unital but not a bialgebra with g grouplike
    h = group_algebra(cyclic_group(2), Q)
    alg = algebra_from_products(Q, 2, lambda i, j: {(i + j) % 2: 2 if i == j == 1 else 1})
    assert check_algebra(alg).passed
    rep = check_bialgebra(BialgebraData(alg, h.coalgebra))
    assert not rep["bialgebra.comult_multiplicative"].passed
    assert rep["bialgebra.comult_multiplicative"].witness.input == (1, 1)


def test_nonassociative_product_detected():
    # basis 1, a, b with aa = b, ab = 0, ba = a: (aa)a = a but a(aa) = 0
    table = {(1, 1): {2: 1}, (1, 2): {}, (2, 1): {1: 1}, (2, 2): {}}

    def product(i, j):
        if i == 0 or j == 0:
            return {i + j: 1}
        return table[i, j]

    rep = check_algebra(algebra_from_products(Q, 3, product))
    assert not rep["algebra.associative"].passed
    assert rep["algebra.associative"].witness.input == (1, 1, 1)
    assert rep["algebra.left_unit"].passed


def test_monoid_without_antipode():
    # {1, t} with t*t = t: a bialgebra but not Hopf
    b = monoid_bialgebra([[0, 1], [1, 1]], 0, Q)
    assert check_bialgebra(b).passed
    with pytest.raises(NoAntipode):
        HopfData.from_bialgebra(b)


def test_wrong_antipode_fails():
    h = sweedler_h4(Q)
    wrong = HopfData(h.algebra, h.coalgebra, LinMap.identity(Q, 4))
    rep = check_hopf(wrong)
    assert not rep["antipode.left"].passed


def test_group_algebra_dual_pairing():
    # structure constants of k^G are those of k[G] transposed
    G = klein_four()
    h, d = group_algebra(G, Q), dual_group_algebra(G, Q)
    n = G.order
    for a, b, c in itertools.product(range(n), repeat=3):
        assert h.mult.entries[c, a * n + b] == d.comult.entries[a * n + b, c]
    assert (h.counit.entries.T == d.unit.entries).all()
