"""Algebras, coalgebras, bialgebras and Hopf algebras given by structure constants.

Conventions (all maps are :class:`~htk.exactlin.LinMap`):

* ``mult``: ``n*n -> n``, column ``i*n + j`` holds ``e_i e_j``.
* ``unit``: ``1 -> n``.
* ``comult``: ``n -> n*n``; ``counit``: ``n -> 1``; ``antipode``: ``n -> n``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from htk.errors import DimensionMismatch, NoAntipode, NonBijectiveAntipode, SingularMatrix
from htk.exactlin import LinMap, TensorMap, check_equal, check_maps_equal, invert, solve_linear
from htk.field import FieldSpec
from htk.report import Report, Verdict


@dataclass(frozen=True, eq=False)
class AlgebraData:
    field: FieldSpec
    dim: int
    mult: LinMap
    unit: LinMap

    def __post_init__(self):
        if self.dim <= 0:
            raise DimensionMismatch("algebras must be nonzero")
        n = self.dim
        if self.mult.shape != (n, n * n):
            raise DimensionMismatch(f"mult has shape {self.mult.shape}, expected {(n, n * n)}")
        if self.unit.shape != (n, 1):
            raise DimensionMismatch(f"unit has shape {self.unit.shape}, expected {(n, 1)}")

    @property
    def unit_vector(self) -> np.ndarray:
        return self.unit.column(0)

    def op(self) -> AlgebraData:
        """The opposite algebra on the same basis."""
        swap = TensorMap.start(self.field, (self.dim, self.dim)).permute(1, 0).linmap
        return AlgebraData(self.field, self.dim, self.mult @ swap, self.unit)

    def multiply(self, x, y) -> np.ndarray:
        return self.mult(self.field.kron(self.field.array(x), self.field.array(y)))

    def __eq__(self, other):
        if not isinstance(other, AlgebraData):
            return NotImplemented
        return self.field == other.field and self.mult == other.mult and self.unit == other.unit

    __hash__ = None


@dataclass(frozen=True, eq=False)
class CoalgebraData:
    field: FieldSpec
    dim: int
    comult: LinMap
    counit: LinMap

    def __post_init__(self):
        if self.dim <= 0:
            raise DimensionMismatch("coalgebras must be nonzero")
        n = self.dim
        if self.comult.shape != (n * n, n):
            raise DimensionMismatch(f"comult has shape {self.comult.shape}, expected {(n * n, n)}")
        if self.counit.shape != (1, n):
            raise DimensionMismatch(f"counit has shape {self.counit.shape}, expected {(1, n)}")

    def __eq__(self, other):
        if not isinstance(other, CoalgebraData):
            return NotImplemented
        return self.field == other.field and self.comult == other.comult and self.counit == other.counit

    __hash__ = None


@dataclass(frozen=True, eq=False)
class BialgebraData:
    algebra: AlgebraData
    coalgebra: CoalgebraData

    def __post_init__(self):
        if self.algebra.dim != self.coalgebra.dim or self.algebra.field != self.coalgebra.field:
            raise DimensionMismatch("algebra and coalgebra live on different spaces")

    field = property(lambda self: self.algebra.field)
    dim = property(lambda self: self.algebra.dim)
    mult = property(lambda self: self.algebra.mult)
    unit = property(lambda self: self.algebra.unit)
    comult = property(lambda self: self.coalgebra.comult)
    counit = property(lambda self: self.coalgebra.counit)


@dataclass(frozen=True, eq=False)
class HopfData(BialgebraData):
    antipode: LinMap = None

    def __post_init__(self):
        super().__post_init__()
        if self.antipode is None:
            raise ValueError("HopfData needs an antipode; use HopfData.from_bialgebra to solve for it")
        if self.antipode.shape != (self.dim, self.dim):
            raise DimensionMismatch(f"antipode has shape {self.antipode.shape}")

    @classmethod
    def from_bialgebra(cls, b: BialgebraData) -> HopfData:
        return cls(b.algebra, b.coalgebra, solve_antipode(b))

    @property
    def S(self) -> LinMap:
        return self.antipode

    def __eq__(self, other):
        if not isinstance(other, HopfData):
            return NotImplemented
        return (
            self.algebra == other.algebra
            and self.coalgebra == other.coalgebra
            and self.antipode == other.antipode
        )

    __hash__ = None


# -- checks --------------------------------------------------------------------


def check_algebra(a: AlgebraData) -> Report:
    """Associativity and both unit laws, witnessed by basis triples/singletons."""
    n, F, m, u = a.dim, a.field, a.mult, a.unit
    rep = Report("algebra")
    rep.add(
        check_equal(
            "algebra.associative", F, (n, n, n),
            lambda x: x.then(m, 0, 2).then(m, 0, 2),
            lambda x: x.then(m, 1, 2).then(m, 0, 2),
        )
    )
    rep.add(check_equal("algebra.left_unit", F, (n,), lambda x: x.then(u, 0, 0).then(m, 0, 2), lambda x: x))
    rep.add(check_equal("algebra.right_unit", F, (n,), lambda x: x.then(u, 1, 0).then(m, 0, 2), lambda x: x))
    return rep


def check_coalgebra(c: CoalgebraData) -> Report:
    n, F, d, e = c.dim, c.field, c.comult, c.counit
    rep = Report("coalgebra")
    rep.add(
        check_equal(
            "coalgebra.coassociative", F, (n,),
            lambda x: x.then(d, 0, out=(n, n)).then(d, 0, out=(n, n)),
            lambda x: x.then(d, 0, out=(n, n)).then(d, 1, out=(n, n)),
        )
    )
    rep.add(
        check_equal("coalgebra.left_counit", F, (n,), lambda x: x.then(d, 0, out=(n, n)).then(e, 0, out=()), lambda x: x)
    )
    rep.add(
        check_equal("coalgebra.right_counit", F, (n,), lambda x: x.then(d, 0, out=(n, n)).then(e, 1, out=()), lambda x: x)
    )
    return rep


def check_bialgebra(b: BialgebraData) -> Report:
    rep = Report("bialgebra")
    rep.extend(check_algebra(b.algebra))
    rep.extend(check_coalgebra(b.coalgebra))
    if not rep.passed:
        return rep
    n, F = b.dim, b.field
    m, u, d, e = b.mult, b.unit, b.comult, b.counit
    rep.add(
        check_equal(
            "bialgebra.comult_multiplicative", F, (n, n),
            lambda x: x.then(m, 0, 2).then(d, 0, out=(n, n)),
            lambda x: x.then(d, 0, out=(n, n)).then(d, 2, out=(n, n))
            .permute(0, 2, 1, 3).then(m, 0, 2).then(m, 1, 2),
        )
    )
    rep.add(check_maps_equal("bialgebra.comult_unital", d @ u, LinMap(F, F.kron(u.entries, u.entries)), (1,), (n, n)))
    rep.add(
        check_equal(
            "bialgebra.counit_multiplicative", F, (n, n),
            lambda x: x.then(m, 0, 2).then(e, 0, out=()),
            lambda x: x.then(e, 0, out=()).then(e, 0, out=()),
        )
    )
    rep.add(check_maps_equal("bialgebra.counit_unital", e @ u, LinMap.identity(F, 1)))
    return rep


def _convolution_sides(h: BialgebraData, s: LinMap):
    n = h.dim
    left = TensorMap.of(h.comult, (n, n)).then(s, 0).then(h.mult, 0, 2).linmap
    right = TensorMap.of(h.comult, (n, n)).then(s, 1).then(h.mult, 0, 2).linmap
    return left, right


def check_antipode(h: HopfData) -> Report:
    """Both antipode equations and bijectivity of S."""
    rep = Report("antipode")
    left, right = _convolution_sides(h, h.antipode)
    target = h.unit @ h.counit
    rep.add(check_maps_equal("antipode.left", left, target))
    rep.add(check_maps_equal("antipode.right", right, target))
    rep.add(Verdict("antipode.bijective", h.antipode.rank() == h.dim, detail=f"rank {h.antipode.rank()}/{h.dim}"))
    return rep


def check_hopf(h: HopfData) -> Report:
    rep = Report("hopf")
    rep.extend(check_bialgebra(h))
    if rep.passed:
        rep.extend(check_antipode(h))
    return rep


def check_antipode_properties(h: HopfData) -> Report:
    """S is an algebra and coalgebra anti-morphism, preserves the counit and the unit."""
    n, F, S = h.dim, h.field, h.antipode
    m, d = h.mult, h.comult
    rep = Report("antipode properties")
    rep.add(
        check_equal(
            "antipode.anti_multiplicative", F, (n, n),
            lambda x: x.then(m, 0, 2).then(S, 0),
            lambda x: x.permute(1, 0).then(S, 0).then(S, 1).then(m, 0, 2),
        )
    )
    rep.add(
        check_equal(
            "antipode.anti_comultiplicative", F, (n,),
            lambda x: x.then(S, 0).then(d, 0, out=(n, n)),
            lambda x: x.then(d, 0, out=(n, n)).permute(1, 0).then(S, 0).then(S, 1),
        )
    )
    rep.add(check_maps_equal("antipode.counit", h.counit @ S, h.counit))
    rep.add(check_maps_equal("antipode.unit", S @ h.unit, h.unit))
    return rep


def solve_antipode(b: BialgebraData) -> LinMap:
    """The convolution inverse of the identity, by an exact linear solve.

    Unknowns are the ``n*n`` entries of S; the equations are
    ``mult o (S (x) id) o comult = unit o counit``.  The right-sided equation
    is then verified, and :class:`NoAntipode` raised if either fails.
    """
    n, F = b.dim, b.field
    # m3[l, k, j] = coefficient of e_l in e_k e_j;  c3[i, j, h] = coefficient of e_i (x) e_j in comult(e_h)
    m3 = b.mult.entries.reshape(n, n, n)
    c3 = b.comult.entries.reshape(n, n, n)
    # A[(l, h), (k, i)] = sum_j c3[i, j, h] * m3[l, k, j]
    c_ji_h = np.ascontiguousarray(c3.transpose(1, 0, 2).reshape(n, n * n))  # (j, i*h)
    m_lk_j = np.ascontiguousarray(m3.reshape(n * n, n))  # (l*k, j)
    prod = F.matmul(m_lk_j, c_ji_h).reshape(n, n, n, n)  # (l, k, i, h)
    coeff = np.ascontiguousarray(prod.transpose(0, 3, 1, 2).reshape(n * n, n * n))
    rhs = (b.unit @ b.counit).entries.reshape(n * n)
    sol = solve_linear(LinMap(F, coeff), rhs)
    if sol is None:
        raise NoAntipode("mult o (S (x) id) o comult = unit o counit has no solution")
    s = LinMap(F, sol.reshape(n, n))
    _, right = _convolution_sides(b, s)
    if right != b.unit @ b.counit:
        raise NoAntipode("left convolution inverse is not a right inverse")
    return s


def antipode_powers(h: HopfData) -> tuple[LinMap, LinMap]:
    """``(S^-1, S^2)``; raises :class:`NonBijectiveAntipode` when S is singular."""
    try:
        s_inv = invert(h.antipode)
    except SingularMatrix as exc:
        raise NonBijectiveAntipode(str(exc)) from None
    return s_inv, h.antipode @ h.antipode


def map_power(f: LinMap, k: int) -> LinMap:
    """``f**k`` for a square map; negative ``k`` inverts first."""
    if k < 0:
        f, k = invert(f), -k
    out = LinMap.identity(f.field, f.dom_dim)
    for _ in range(k):
        out = f @ out
    return out
