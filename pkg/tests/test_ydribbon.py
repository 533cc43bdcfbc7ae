import itertools

import numpy as np
import pytest
from conftest import Q, galois, torsor

from htk.constructions import bilinear_sign_cocycle, group_algebra, klein_four, sweedler_h4, symmetric_group, taft_algebra
from htk.errors import DimensionMismatch
from htk.exactlin import LinMap
from htk.field import FieldSpec
from htk.ydribbon import (
    YDModuleData,
    braiding,
    check_braided_commutativity,
    check_functor_F,
    check_hexagons,
    check_module_algebra,
    check_ribbon_property,
    check_ribbon_theta,
    check_theta_algebra_map_via_ribbon,
    check_theta_matches_torsor,
    check_theta_naturality,
    check_yd,
    functor_F,
    mu_action,
    ribbon_theta,
    restrict,
    sub_yd_modules,
    tensor_yd,
    trivial_yd,
    yd_closure,
    yd_equal,
)


def graded_module(G, F, act):
    """k^|G| with basis v_x of degree x and v_x <| h = v_(act(x, h))."""
    n = G.order
    h = group_algebra(G, F)
    action = F.zeros((n, n * n))
    coaction = F.zeros((n * n, n))
    for x in range(n):
        coaction[x * n + x, x] = 1
        for y in range(n):
            action[act(x, y), x * n + y] = 1
    return YDModuleData(n, h, LinMap(F, action), LinMap(F, coaction))


F7 = FieldSpec.prime(7)


def adjoint(G, F=F7):
    return graded_module(G, F, lambda x, h: G(G(G.inverse[h], x), h))


def eps_action_regular_coaction(h):
    n = h.dim
    action = h.field.kron(h.field.eye(n), h.counit.entries)
    return YDModuleData(n, h, LinMap(h.field, action), h.comult)


def test_trivial_module():
    k = trivial_yd(group_algebra(klein_four(), Q))
    assert check_yd(k).passed
    assert ribbon_theta(k)[0] == LinMap.identity(Q, 1)


def test_eps_action_on_commutative_cocommutative_passes():
    # both sides reduce to v_(0) (x) v_(1) h = v_(0) (x) h v_(1)
    h = group_algebra(symmetric_group(2), Q)
    assert check_yd(eps_action_regular_coaction(h)).passed


def test_eps_action_on_sweedler_fails():
    rep = check_yd(eps_action_regular_coaction(sweedler_h4(Q)))
    assert not rep["yd.condition"].passed and not rep["yd.condition_rho"].passed
    assert rep["yd.forms_agree"].passed
    assert rep["yd.condition"].witness is not None


def test_adjoint_module_of_s3():
    G = symmetric_group(3)
    m = adjoint(G)
    assert check_yd(m).passed
    # right multiplication does not move degrees by conjugation
    bad = graded_module(G, F7, lambda x, h: G(x, h))
    rep = check_yd(bad)
    assert rep["yd.module_associative"].passed and not rep["yd.condition"].passed


def test_braiding_on_graded_module():
    # sigma(v_x (x) w_y) = w_y (x) v_(y^-1 x y)
    G = symmetric_group(3)
    m = adjoint(G)
    sigma, sigma_inv = braiding(m, m)
    n = G.order
    for x, y in itertools.product(range(n), repeat=2):
        target = y * n + G(G(G.inverse[y], x), y)
        col = sigma.column(x * n + y)
        assert [i for i in range(n * n) if col[i] != 0] == [target] and col[target] == 1
    assert sigma @ sigma_inv == LinMap.identity(F7, n * n)
    # S3 is not abelian, so sigma is not the flip
    flip = LinMap(F7, np.eye(n * n, dtype=int)[[(i % n) * n + i // n for i in range(n * n)]].T)
    assert sigma != flip


def test_hexagons_on_graded_and_unit():
    G = symmetric_group(3)
    m, k = adjoint(G), trivial_yd(group_algebra(G, F7))
    assert check_hexagons(m, m, k).passed
    assert check_hexagons(k, m, m).passed


def test_tensor_product_is_yd():
    h = sweedler_h4(Q)
    g = galois("sweedler_regular")
    m = mu_action(g)
    assert check_yd(tensor_yd(m, m)).passed
    assert check_yd(tensor_yd(m, trivial_yd(h))).passed
    with pytest.raises(DimensionMismatch):
        tensor_yd(m, adjoint(symmetric_group(3)))


def test_mu_action_c2():
    # commutative T: x <| h = eps(h) x; in particular g <| g = g
    g = galois("trivial_c2")
    m = mu_action(g)
    assert m.action == LinMap(Q, Q.kron(Q.eye(2), g.H.counit.entries))
    assert m.action.column(1 * 2 + 1).tolist() == [0, 1]


def test_mu_action_twisted_klein():
    # u_h <| g = sigma(g^-1, g)^-1 u_(g^-1) u_h u_g
    G = klein_four()
    c = bilinear_sign_cocycle(Q)
    m = mu_action(galois("twisted_klein"))
    for h, g in itertools.product(range(4), repeat=2):
        gi = G.inverse[g]
        coeff = c(gi, h) * c(G(gi, h), g) / c(gi, g)
        target = G(G(gi, h), g)
        col = m.action.column(h * 4 + g)
        assert [i for i in range(4) if col[i] != 0] == [target] and col[target] == coeff
    # the action is a non-trivial sign action
    assert any(m.action.column(h * 4 + g)[h] == -1 for h in range(4) for g in range(4))


def test_mu_structure(builtin_name):
    g = galois(builtin_name)
    m = mu_action(g, verify=False)
    rep = check_yd(m)
    rep.extend(check_module_algebra(m, g.T.mult, g.T.unit))
    rep.extend(check_braided_commutativity(g, m))
    assert rep.passed, rep.format_text()


def test_ribbon_theta(builtin_name):
    g = galois(builtin_name)
    m = mu_action(g)
    rep = check_ribbon_theta(m)
    rep.add(check_theta_matches_torsor(m, torsor(builtin_name).theta))
    assert rep.passed, rep.format_text()


@pytest.mark.parametrize("name", ["trivial_c2", "twisted_klein", "sweedler_regular"])
def test_ribbon_property(name):
    m = mu_action(galois(name))
    rep = check_ribbon_property(m, m)
    rep.extend(check_ribbon_property(m, trivial_yd(m.H)))
    assert rep.passed, rep.format_text()
    assert sum(v.name.startswith("ribbon.chain_") for v in rep) == 16


def test_ribbon_property_mixed_modules():
    G = symmetric_group(3)
    m = adjoint(G)
    sub = restrict(m, sub_yd_modules(m)[0])
    assert check_ribbon_property(m, sub).passed


def test_ribbon_with_nontrivial_double_braiding():
    # theta of the adjoint module is the identity on each summand but sigma^2 is not
    m = adjoint(symmetric_group(3))
    th, _ = ribbon_theta(m)
    assert th == LinMap.identity(F7, 6)
    s, _ = braiding(m, m)
    assert s @ s != LinMap.identity(F7, 36)
    assert check_ribbon_property(m, m).passed


def test_functor_F_on_sweedler():
    m = mu_action(galois("sweedler_regular"))
    fm = functor_F(m)
    assert not yd_equal(fm, m)
    # S^4 = id, so F twice is the identity
    assert yd_equal(functor_F(fm), m)
    assert check_functor_F(m, m).passed


def test_functor_F_order_on_taft():
    h = taft_algebra(3, FieldSpec.prime(7))
    m = YDModuleData(1, h, h.counit, h.unit)  # the unit object is fixed by F
    assert yd_equal(functor_F(m), m)
    mu = mu_action(galois("taft3_f7"))
    f1 = functor_F(mu)
    f3 = functor_F(functor_F(f1))
    assert not yd_equal(f1, mu) and yd_equal(f3, mu)


def test_naturality(builtin_name):
    g = galois(builtin_name)
    m = mu_action(g)
    extras = [("mult", tensor_yd(m, m), g.T.mult), ("unit", trivial_yd(g.H), g.T.unit)]
    rep = check_theta_naturality(m, extras)
    assert rep.passed, rep.format_text()


def test_naturality_catches_non_morphism():
    m = mu_action(galois("sweedler_regular"))
    # the identity k -> T at the basis vector x is not a Yetter-Drinfeld morphism
    f = LinMap(Q, [[0], [0], [1], [0]])
    rep = check_theta_naturality(m, [("bogus", trivial_yd(m.H), f)])
    assert not rep["naturality.bogus"].passed


def test_closure_and_restriction():
    G = symmetric_group(3)
    m = adjoint(G)
    # conjugacy classes of S3 have sizes 1, 2, 3
    sizes = sorted(b.shape[1] for b in sub_yd_modules(m))
    assert sizes == [1, 2, 3]
    # the coaction separates degrees, so the sum of all basis vectors generates everything
    whole = yd_closure(m, F7.array(np.ones((6, 1), dtype=int)))
    assert whole.shape[1] == 6
    for b in sub_yd_modules(m):
        assert check_yd(restrict(m, b)).passed


def test_algebra_chain(builtin_name):
    rep = check_theta_algebra_map_via_ribbon(galois(builtin_name))
    assert rep.passed, rep.format_text()
    assert len(rep) == 5


def test_shapes_checked():
    h = group_algebra(klein_four(), Q)
    with pytest.raises(DimensionMismatch):
        YDModuleData(2, h, LinMap.identity(Q, 2), LinMap.identity(Q, 2))
