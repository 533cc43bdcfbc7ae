"""Quantum torsors: axioms, the torsor attached to a Galois object, and its identities.

``mu: T -> T (x) T^op (x) T`` is a LinMap of shape ``(n**3, n)``; the middle
factor multiplies in the opposite order.  ``theta`` is an algebra
automorphism of ``T``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from htk.comodule import GaloisObjectData
from htk.errors import DimensionMismatch, ImplementationFault, NonBijectiveAntipode, SingularMatrix
from htk.exactlin import (
    LinMap,
    TensorMap,
    check_equal,
    check_maps_equal,
    column_space_contains,
    invert,
    kernel_basis,
    same_span,
)
from htk.hopfcore import AlgebraData, antipode_powers
from htk.report import Report, Verdict


@dataclass(frozen=True, eq=False)
class TorsorData:
    T: AlgebraData
    mu: LinMap
    theta: LinMap

    def __post_init__(self):
        n = self.T.dim
        if self.mu.shape != (n**3, n):
            raise DimensionMismatch(f"mu has shape {self.mu.shape}, expected {(n ** 3, n)}")
        if self.theta.shape != (n, n):
            raise DimensionMismatch(f"theta has shape {self.theta.shape}, expected {(n, n)}")

    field = property(lambda self: self.T.field)


def mu_op(t: TorsorData) -> LinMap:
    """``tau_(13) o mu``: exchange the outer factors."""
    n = t.T.dim
    return TensorMap.of(t.mu, (n, n, n)).permute(2, 1, 0).linmap


def check_torsor_axioms(t: TorsorData) -> Report:
    """Axioms (7)-(11), algebra-map property of mu and automorphism property of theta."""
    T, F, n = t.T, t.field, t.T.dim
    mu, th, m = t.mu, t.theta, t.T.mult
    mop = mu_op(t)
    n3 = (n, n, n)
    rep = Report("torsor axioms")
    rep.add(
        check_equal(
            "torsor.mu_multiplicative", F, (n, n),
            lambda x: x.then(m, 0, 2).then(mu, 0, out=n3),
            lambda x: x.then(mu, 0, out=n3).then(mu, 3, out=n3).permute(0, 3, 4, 1, 2, 5)
            .then(m, 0, 2).then(m, 1, 2).then(m, 2, 2),
            chunk=2**20 // n**6,
        )
    )
    one3 = LinMap(F, F.kron(F.kron(T.unit.entries, T.unit.entries), T.unit.entries))
    rep.add(check_maps_equal("torsor.mu_unital", mu @ T.unit, one3, (1,), n3))
    rep.add(
        check_equal(
            "torsor.1", F, (n,),
            lambda x: x.then(mu, 0, out=n3).then(m, 1, 2),
            lambda x: x.then(T.unit, 1, 0),
            label="(7)",
        )
    )
    rep.add(
        check_equal(
            "torsor.2", F, (n,),
            lambda x: x.then(mu, 0, out=n3).then(m, 0, 2),
            lambda x: x.then(T.unit, 0, 0),
            label="(8)",
        )
    )
    rep.add(
        check_equal(
            "torsor.3", F, (n,),
            lambda x: x.then(mu, 0, out=n3).then(mu, 2, out=n3),
            lambda x: x.then(mu, 0, out=n3).then(mu, 0, out=n3),
            label="(9)",
        )
    )
    rep.add(
        check_equal(
            "torsor.4", F, (n,),
            lambda x: x.then(mu, 0, out=n3).then(mu, 0, out=n3).then(th, 2),
            lambda x: x.then(mu, 0, out=n3).then(mop, 1, out=n3),
            label="(10)",
        )
    )
    rep.add(
        check_equal(
            "torsor.5", F, (n,),
            lambda x: x.then(mu, 0, out=n3).then(th, 0).then(th, 1).then(th, 2),
            lambda x: x.then(th, 0).then(mu, 0, out=n3),
            label="(11)",
        )
    )
    rep.add(
        check_equal(
            "torsor.theta_multiplicative", F, (n, n),
            lambda x: x.then(m, 0, 2).then(th, 0),
            lambda x: x.then(th, 0).then(th, 1).then(m, 0, 2),
        )
    )
    rep.add(check_maps_equal("torsor.theta_unital", th @ T.unit, T.unit))
    r = th.rank()
    rep.add(Verdict("torsor.theta_bijective", r == n, detail=f"rank {r}/{n}"))
    return rep


# -- the torsor of a Galois object ----------------------------------------------


def torsor_mu(g: GaloisObjectData) -> LinMap:
    """``mu(x) = x_(0) (x) x_(1)^(1) (x) x_(1)^(2)``."""
    n, m = g.T.dim, g.H.dim
    return TensorMap.of(g.rho, (n, m)).then(g.gamma, 1, out=(n, n)).linmap


def theta_forms(g: GaloisObjectData) -> tuple[LinMap, LinMap]:
    """Both expressions for theta: ``(x_(0) S(x_(1))^(2)) S(x_(1))^(1)`` and
    ``S(x_(1))^(1) (x_(0) S(x_(1))^(2))``."""
    n, m = g.T.dim, g.H.dim
    base = TensorMap.of(g.rho, (n, m)).then(g.H.antipode, 1).then(g.gamma, 1, out=(n, n))
    mult = g.T.mult
    right = base.permute(0, 2, 1).then(mult, 0, 2).then(mult, 0, 2).linmap
    left = base.permute(1, 0, 2).then(mult, 1, 2).then(mult, 0, 2).linmap
    return right, left


def derive_torsor(g: GaloisObjectData, verify: bool = True) -> TorsorData:
    """The quantum torsor ``(T, mu, theta)`` of a Galois object.

    Requires a bijective antipode.  With ``verify`` the axioms are checked and
    any failure is an :class:`ImplementationFault`.
    """
    try:
        invert(g.H.antipode)
    except SingularMatrix as exc:
        raise NonBijectiveAntipode(str(exc)) from None
    theta, _ = theta_forms(g)
    t = TorsorData(g.T, torsor_mu(g), theta)
    if verify:
        rep = check_torsor_axioms(t)
        if not rep.passed:
            raise ImplementationFault(f"derived torsor fails {rep.failures()[0].name}", rep)
    return t


def check_theta_forms(g: GaloisObjectData) -> Verdict:
    a, b = theta_forms(g)
    return check_maps_equal("theta.forms_agree", a, b)


def scalar_complement(T: AlgebraData) -> LinMap:
    """Coordinates on a fixed complement of ``span{1}``.

    The basis is ``1`` followed by the standard vectors except the first one
    on which ``1`` has a nonzero coordinate; the returned map gives the
    coordinates of the complement part, so it vanishes exactly on ``k*1``.
    """
    F, n = T.field, T.dim
    u = T.unit_vector
    j = next(i for i in range(n) if u[i] != 0)
    cols = [u] + [F.eye(n)[:, i] for i in range(n) if i != j]
    coords = invert(LinMap(F, np.stack(cols, axis=1)))
    return LinMap(F, coords.entries[1:, :])


def _apply_last(tm: TensorMap, q: LinMap) -> TensorMap:
    return tm.then(q, len(tm.dims) - 1)


def _zero_like(tm: TensorMap) -> TensorMap:
    return TensorMap(tm.field, tm.field.zeros(tm.entries.shape), tm.dims)


def lemma_elements(g: GaloisObjectData):
    """Builders for the two elements whose last tensor factor is a scalar."""
    n, m = g.T.dim, g.H.dim
    S, gam, mult = g.H.antipode, g.gamma, g.T.mult

    def first(x):  # S(x_(1))^(1) (x) x_(0) S(x_(1))^(2)
        return x.then(g.rho, 0, out=(n, m)).then(S, 1).then(gam, 1, out=(n, n)).permute(1, 0, 2).then(mult, 1, 2)

    def second(x):  # h_(1)^(1) (x) S(h_(2))^(1) (x) h_(1)^(2) S(h_(2))^(2)
        return (
            x.then(g.H.comult, 0, out=(m, m))
            .then(S, 1)
            .then(gam, 0, out=(n, n))
            .then(gam, 2, out=(n, n))
            .permute(0, 2, 1, 3)
            .then(mult, 2, 2)
        )

    return first, second


def check_scalar_lemma(g: GaloisObjectData) -> Report:
    n, m, F = g.T.dim, g.H.dim, g.field
    first, second = lemma_elements(g)
    q = scalar_complement(g.T)
    rep = Report("scalar lemma")
    for name, label, dom, build in (("scalar.first", "(12)", (n,), first), ("scalar.second", "(13)", (m,), second)):
        rep.add(
            check_equal(
                name, F, dom,
                lambda x, b=build: _apply_last(b(x), q),
                lambda x, b=build: _zero_like(_apply_last(b(x), q)),
                label=label,
            )
        )
    return rep


def thetari_verdict(g: GaloisObjectData, theta: LinMap) -> Verdict:
    n, m, F = g.T.dim, g.H.dim, g.field
    return check_equal(
        "theta.ri", F, (m,),
        lambda x: x.then(g.gamma, 0, out=(n, n)).then(theta, 1),
        lambda x: x.then(g.H.antipode, 0).then(g.gamma, 0, out=(n, n)).permute(1, 0),
        label="(14)",
    )


def thetacol_verdict(g: GaloisObjectData, theta: LinMap, twist: LinMap | None = None) -> Verdict:
    """``rho(theta(x)) = theta(x_(0)) (x) twist(x_(1))`` with ``twist = S^2`` by default."""
    n, m, F = g.T.dim, g.H.dim, g.field
    if twist is None:
        twist = g.H.antipode @ g.H.antipode
    return check_equal(
        "theta.col", F, (n,),
        lambda x: x.then(theta, 0).then(g.rho, 0, out=(n, m)),
        lambda x: x.then(g.rho, 0, out=(n, m)).then(theta, 0).then(twist, 1),
        label="(15)",
    )


def check_theta_identities(g: GaloisObjectData, t: TorsorData) -> Report:
    rep = Report("theta identities")
    rep.add(thetari_verdict(g, t.theta))
    rep.add(thetacol_verdict(g, t.theta))
    r = t.theta.rank()
    rep.add(Verdict("theta.bijective", r == g.T.dim, detail=f"rank {r}/{g.T.dim}"))
    return rep


# -- left Hopf algebra and reconstruction ---------------------------------------


def codiagonal_coinvariant_map(g: GaloisObjectData) -> LinMap:
    """``x (x) y -> x_(0) (x) y_(0) (x) x_(1) y_(1) - x (x) y (x) 1`` on ``T (x) T``."""
    n, m, F = g.T.dim, g.H.dim, g.field
    codiag = (
        TensorMap.start(F, (n, n))
        .then(g.rho, 0, out=(n, m))
        .then(g.rho, 2, out=(n, m))
        .permute(0, 2, 1, 3)
        .then(g.H.mult, 2, 2)
        .linmap
    )
    trivial = TensorMap.start(F, (n, n)).then(g.H.unit, 2, 0).linmap
    return codiag - trivial


def _membership_maps(g: GaloisObjectData, t: TorsorData) -> tuple[LinMap, LinMap]:
    """Two other descriptions of the same subspace of ``T (x) T``.

    * ``x_(0) (x) x_(1)^(1) (x) theta(x_(1)^(2)) (x) y - x (x) mu_op(y)``
    * ``x_(0) (x) S(x_(1)) (x) y - x (x) y_(1) (x) y_(0)``
    """
    n, m, F = g.T.dim, g.H.dim, g.field
    n3 = (n, n, n)
    start = TensorMap.start(F, (n, n))
    lhs = start.then(t.mu, 0, out=n3).then(t.theta, 2).linmap
    rhs = start.then(mu_op(t), 1, out=n3).linmap
    lhs2 = start.then(g.rho, 0, out=(n, m)).then(g.H.antipode, 1).linmap
    rhs2 = start.then(g.rho, 1, out=(n, m)).permute(0, 2, 1).linmap
    return lhs - rhs, lhs2 - rhs2


def op_tensor_products(T: AlgebraData, pairs: np.ndarray) -> np.ndarray:
    """Products in ``T (x) T^op`` of the columns of ``pairs`` in ``(T (x) T)^(x)2``.

    ``(a (x) b)(c (x) d) = ac (x) db``.
    """
    n = T.dim
    return TensorMap(T.field, pairs, (n,) * 4).permute(0, 2, 3, 1).then(T.mult, 0, 2).then(T.mult, 1, 2).entries


def left_hopf_coinvariants(g: GaloisObjectData, t: TorsorData | None = None):
    """Coinvariants of ``T (x) T`` under the codiagonal coaction, with a report.

    The report checks that the span has dimension ``dim H``, agrees with the two
    other membership conditions, is a unital subalgebra of ``T (x) T^op`` and
    receives the left coaction ``mu``.
    """
    t = derive_torsor(g, verify=False) if t is None else t
    F, n = g.field, g.T.dim
    basis = kernel_basis(codiagonal_coinvariant_map(g))
    B = np.stack(basis, axis=1) if basis else F.zeros((n * n, 0))
    rep = Report("left coinvariants")
    rep.add(
        Verdict("hcoinv.dimension", len(basis) == g.H.dim, label="hcoinv", detail=f"dim {len(basis)}, dim H {g.H.dim}")
    )
    grunspan, reduced = _membership_maps(g, t)
    for name, mp in (("hcoinv.torsor_condition", grunspan), ("hcoinv.antipode_condition", reduced)):
        other = kernel_basis(mp)
        O = np.stack(other, axis=1) if other else F.zeros((n * n, 0))
        rep.add(Verdict(name, same_span(B, O, F), label="hcoinv", detail=f"dim {len(other)}"))
    one = F.kron(g.T.unit_vector, g.T.unit_vector).reshape(-1, 1)
    rep.add(Verdict("hcoinv.unital", column_space_contains(B, one, F), label="hcoinv"))
    pairs = [F.kron(a, b) for a in basis for b in basis]
    P = op_tensor_products(g.T, np.stack(pairs, axis=1)) if pairs else F.zeros((n * n, 0))
    rep.add(Verdict("hcoinv.subalgebra_op", column_space_contains(B, P, F), label="hcoinv"))
    d = codiagonal_coinvariant_map(g)
    lands = TensorMap.of(t.mu, (n, n, n)).then(d, 0, 2, out=(n, n, g.H.dim))
    rep.add(
        Verdict(
            "hcoinv.coaction_lands",
            not np.any(lands.entries != 0),
            label="hcoinv",
            detail="mu(T) in H_l (x) T",
        )
    )
    return basis, rep


def check_reconstruction(g: GaloisObjectData, t: TorsorData) -> Report:
    """``(T (x) beta) mu = (T (x) beta) mu'`` with ``mu'`` rebuilt from ``g``."""
    n, m, F = g.T.dim, g.H.dim, g.field
    n3 = (n, n, n)
    mu_prime = torsor_mu(g)
    rep = Report("reconstruction")
    rep.add(
        check_equal(
            "recon.beta_mu_equal", F, (n,),
            lambda x: x.then(t.mu, 0, out=n3).then(g.beta, 1, 2, out=(n, m)),
            lambda x: x.then(mu_prime, 0, out=n3).then(g.beta, 1, 2, out=(n, m)),
            label="recon",
        )
    )
    rep.add(
        check_equal(
            "recon.beta_mu_intermediate", F, (n,),
            lambda x: x.then(t.mu, 0, out=n3).then(g.beta, 1, 2, out=(n, m)),
            lambda x: x.then(g.rho, 0, out=(n, m)).then(g.T.unit, 1, 0),
            label="recon",
        )
    )
    rep.add(check_maps_equal("recon.mu_equal", t.mu, mu_prime, (n,), n3, label="recon"))
    return rep


def check_theta_s2_colinear(g: GaloisObjectData, t: TorsorData) -> Verdict:
    """theta is colinear ``T -> T`` when the target carries the coaction ``(id (x) S^-2) rho``."""
    n, m, F = g.T.dim, g.H.dim, g.field
    s_inv, _ = antipode_powers(g.H)
    s_minus2 = s_inv @ s_inv
    return check_equal(
        "theta.colinear_twisted", F, (n,),
        lambda x: x.then(t.theta, 0).then(g.rho, 0, out=(n, m)).then(s_minus2, 1),
        lambda x: x.then(g.rho, 0, out=(n, m)).then(t.theta, 0),
    )

