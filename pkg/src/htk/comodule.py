"""Right comodule algebras, coinvariants, the canonical map and the translation map.

A coaction ``rho: T -> T (x) H`` is a LinMap of shape ``(dim T * dim H, dim T)``.
For a Galois object the translation map ``gamma(h) = beta^-1(1 (x) h)`` is
written ``h^(1) (x) h^(2)`` in docstrings below.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from htk.errors import CoinvariantsTooLarge, DimensionMismatch, IdentityFailure, NotGalois, SingularMatrix
from htk.exactlin import LinMap, TensorMap, check_equal, check_maps_equal, invert, kernel_basis
from htk.hopfcore import AlgebraData, HopfData
from htk.report import Report, Verdict


@dataclass(frozen=True, eq=False)
class ComoduleAlgebraData:
    """Algebra ``T`` with a coaction of ``H``.

    ``regular`` marks the Galois object ``T = H`` with ``rho = comult``; such
    objects carry no structure constants of their own when serialized.
    """

    T: AlgebraData
    H: HopfData
    rho: LinMap
    regular: bool = False

    def __post_init__(self):
        if self.T.field != self.H.field:
            raise DimensionMismatch("T and H are over different fields")
        if self.rho.shape != (self.T.dim * self.H.dim, self.T.dim):
            raise DimensionMismatch(
                f"coaction has shape {self.rho.shape}, expected {(self.T.dim * self.H.dim, self.T.dim)}"
            )

    @classmethod
    def regular_of(cls, H: HopfData) -> ComoduleAlgebraData:
        return cls(H.algebra, H, H.comult, regular=True)

    field = property(lambda self: self.T.field)


@dataclass(frozen=True, eq=False)
class GaloisObjectData:
    base: ComoduleAlgebraData
    beta: LinMap
    gamma: LinMap

    T = property(lambda self: self.base.T)
    H = property(lambda self: self.base.H)
    rho = property(lambda self: self.base.rho)
    field = property(lambda self: self.base.T.field)


def check_comodule_algebra(d: ComoduleAlgebraData) -> Report:
    """Comodule laws for rho and that rho is a unital algebra map ``T -> T (x) H``."""
    n, m, F = d.T.dim, d.H.dim, d.field
    rho, delta, eps = d.rho, d.H.comult, d.H.counit
    rep = Report("comodule algebra")
    rep.add(
        check_equal(
            "comodule.coassociative", F, (n,),
            lambda x: x.then(rho, 0, out=(n, m)).then(rho, 0, out=(n, m)),
            lambda x: x.then(rho, 0, out=(n, m)).then(delta, 1, out=(m, m)),
        )
    )
    rep.add(check_equal("comodule.counital", F, (n,), lambda x: x.then(rho, 0, out=(n, m)).then(eps, 1, out=()), lambda x: x))
    rep.add(
        check_equal(
            "comodule.multiplicative", F, (n, n),
            lambda x: x.then(d.T.mult, 0, 2).then(rho, 0, out=(n, m)),
            lambda x: x.then(rho, 0, out=(n, m)).then(rho, 2, out=(n, m))
            .permute(0, 2, 1, 3).then(d.T.mult, 0, 2).then(d.H.mult, 1, 2),
        )
    )
    rep.add(
        check_maps_equal(
            "comodule.unital", rho @ d.T.unit, LinMap(F, F.kron(d.T.unit.entries, d.H.unit.entries)), (1,), (n, m)
        )
    )
    return rep


def coinvariant_map(d: ComoduleAlgebraData) -> LinMap:
    """``rho - (id (x) 1_H)``; its kernel is the coinvariant subalgebra."""
    n = d.T.dim
    trivial = TensorMap.start(d.field, (n,)).then(d.H.unit, 1, 0).linmap
    return d.rho - trivial


def coinvariants(d: ComoduleAlgebraData) -> list[np.ndarray]:
    return kernel_basis(coinvariant_map(d))


def canonical_beta(d: ComoduleAlgebraData) -> LinMap:
    """``beta(x (x) y) = x y_(0) (x) y_(1)`` on ``T (x) T``."""
    basis = coinvariants(d)
    if len(basis) != 1:
        raise CoinvariantsTooLarge(f"coinvariants have dimension {len(basis)}, expected 1")
    n, m = d.T.dim, d.H.dim
    return TensorMap.start(d.field, (n, n)).then(d.rho, 1, out=(n, m)).then(d.T.mult, 0, 2).linmap


def galois_identities(g: GaloisObjectData) -> Report:
    """The six identities of the translation map, as exact map equalities."""
    T, H, F = g.T, g.H, g.field
    n, m = T.dim, H.dim
    rho, gam, S = g.rho, g.gamma, H.antipode
    rep = Report("translation map")
    # x_(0) x_(1)^(1) (x) x_(1)^(2) = 1 (x) x
    rep.add(
        check_equal(
            "gamma.isinv", F, (n,),
            lambda x: x.then(rho, 0, out=(n, m)).then(gam, 1, out=(n, n)).then(T.mult, 0, 2),
            lambda x: x.then(T.unit, 0, 0),
            label="(1)",
        )
    )
    # h^(1) h^(2) = eps(h) 1
    rep.add(check_maps_equal("gamma.nablagamma", T.mult @ gam, T.unit @ H.counit, label="(2)"))
    # h^(1) (x) h^(2)_(0) (x) h^(2)_(1) = h_(1)^(1) (x) h_(1)^(2) (x) h_(2)
    rep.add(
        check_equal(
            "gamma.colinright", F, (m,),
            lambda x: x.then(gam, 0, out=(n, n)).then(rho, 1, out=(n, m)),
            lambda x: x.then(H.comult, 0, out=(m, m)).then(gam, 0, out=(n, n)),
            label="(3)",
        )
    )
    # h^(1)_(0) (x) h^(2) (x) h^(1)_(1) = h_(2)^(1) (x) h_(2)^(2) (x) S(h_(1))
    rep.add(
        check_equal(
            "gamma.colinleft", F, (m,),
            lambda x: x.then(gam, 0, out=(n, n)).then(rho, 0, out=(n, m)).permute(0, 2, 1),
            lambda x: x.then(H.comult, 0, out=(m, m)).then(S, 0).then(gam, 1, out=(n, n)).permute(1, 2, 0),
            label="(4)",
        )
    )
    # (gh)^(1) (x) (gh)^(2) = h^(1) g^(1) (x) g^(2) h^(2)
    rep.add(
        check_equal(
            "gamma.gammanabla", F, (m, m),
            lambda x: x.then(H.mult, 0, 2).then(gam, 0, out=(n, n)),
            lambda x: x.then(gam, 0, out=(n, n)).then(gam, 2, out=(n, n)).permute(2, 0, 1, 3)
            .then(T.mult, 0, 2).then(T.mult, 1, 2),
            label="(5)",
        )
    )
    rep.add(
        check_maps_equal(
            "gamma.gammaeta", gam @ H.unit, LinMap(F, F.kron(T.unit.entries, T.unit.entries)), (1,), (n, n), label="(6)"
        )
    )
    return rep


def check_regular_gamma(g: GaloisObjectData) -> Verdict:
    """For the regular object: ``gamma = (S (x) id) o comult``."""
    m = g.H.dim
    expected = TensorMap.of(g.H.comult, (m, m)).then(g.H.antipode, 0).linmap
    return check_maps_equal("gamma.regular", g.gamma, expected, (m,), (m, m))


def galois_status(d: ComoduleAlgebraData) -> Report:
    """Coinvariants and bijectivity of beta as verdicts (no exceptions)."""
    rep = Report("galois")
    basis = coinvariants(d)
    rep.add(Verdict("galois.coinvariants_scalar", len(basis) == 1, detail=f"dim {len(basis)}"))
    if len(basis) != 1:
        return rep
    if d.T.dim != d.H.dim:
        rep.add(Verdict("galois.beta_bijective", False, detail=f"dim T={d.T.dim} != dim H={d.H.dim}"))
        return rep
    r = canonical_beta(d).rank()
    rep.add(Verdict("galois.beta_bijective", r == d.T.dim**2, detail=f"rank {r}/{d.T.dim ** 2}"))
    return rep


def make_galois(d: ComoduleAlgebraData, verify: bool = True) -> GaloisObjectData:
    """Build beta and gamma; raise NotGalois / CoinvariantsTooLarge / IdentityFailure."""
    beta = canonical_beta(d)
    n, m = d.T.dim, d.H.dim
    if n != m:
        raise NotGalois(f"dim T={n} and dim H={m} differ, beta cannot be bijective")
    try:
        beta_inv = invert(beta)
    except SingularMatrix as exc:
        raise NotGalois(f"canonical map is singular: {exc}") from None
    one_h = TensorMap.start(d.field, (m,)).then(d.T.unit, 0, 0).linmap
    g = GaloisObjectData(d, beta, beta_inv @ one_h)
    if verify:
        rep = galois_identities(g)
        if d.regular:
            rep.add(check_regular_gamma(g))
        if not rep.passed:
            bad = rep.failures()[0]
            raise IdentityFailure(f"{bad.label or bad.name} fails at {bad.witness}", rep)
    return g


def coinvariants_closed(d: ComoduleAlgebraData, basis=None) -> Verdict:
    """Coinvariants contain 1 and are closed under multiplication."""
    from htk.exactlin import column_space_contains

    basis = coinvariants(d) if basis is None else basis
    F = d.field
    B = np.stack(basis, axis=1) if basis else F.zeros((d.T.dim, 0))
    prods = [d.T.multiply(a, b) for a in basis for b in basis]
    vecs = np.stack(prods + [d.T.unit_vector], axis=1)
    return Verdict("coinvariants.subalgebra", column_space_contains(B, vecs, F), detail=f"dim {len(basis)}")
