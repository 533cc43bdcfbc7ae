"""Built-in Hopf algebras and Galois objects."""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field as dc_field

import numpy as np

from htk.comodule import ComoduleAlgebraData, GaloisObjectData, make_galois
from htk.errors import BadCharacteristic, ImplementationFault, NoRootOfUnity
from htk.exactlin import LinMap
from htk.field import FieldSpec
from htk.hopfcore import AlgebraData, BialgebraData, CoalgebraData, HopfData, check_hopf
from htk.report import Report, Verdict, Witness

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class GroupTable:
    """A finite group on ``0..order-1``; ``mult[a][b]`` is the index of ``ab``."""

    order: int
    mult: tuple
    inverse: tuple
    identity: int = 0
    names: tuple = dc_field(default=())

    def __post_init__(self):
        n = self.order
        mult = tuple(tuple(int(x) for x in row) for row in self.mult)
        object.__setattr__(self, "mult", mult)
        object.__setattr__(self, "inverse", tuple(int(x) for x in self.inverse))
        if n <= 0 or len(mult) != n or any(len(r) != n for r in mult):
            raise ValueError("group table has the wrong shape")
        if any(not 0 <= x < n for r in mult for x in r):
            raise ValueError("group table entry out of range")
        e = self.identity
        for a in range(n):
            if mult[e][a] != a or mult[a][e] != a:
                raise ValueError(f"{e} is not an identity (fails at {a})")
            if mult[a][self.inverse[a]] != e or mult[self.inverse[a]][a] != e:
                raise ValueError(f"wrong inverse for {a}")
        for a, b, c in itertools.product(range(n), repeat=3):
            if mult[mult[a][b]][c] != mult[a][mult[b][c]]:
                raise ValueError(f"not associative at {(a, b, c)}")

    @classmethod
    def from_mult(cls, mult, identity=0, names=()) -> GroupTable:
        n = len(mult)
        inv = [next((b for b in range(n) if mult[a][b] == identity), None) for a in range(n)]
        if None in inv:
            raise ValueError(f"element {inv.index(None)} has no inverse")
        return cls(n, mult, inv, identity, tuple(names))

    def __call__(self, a: int, b: int) -> int:
        return self.mult[a][b]


def cyclic_group(n: int) -> GroupTable:
    return GroupTable.from_mult([[(a + b) % n for b in range(n)] for a in range(n)])


def direct_product(g: GroupTable, h: GroupTable) -> GroupTable:
    """Elements ``(a, b)`` at index ``a*|h| + b``."""
    m = h.order

    def mul(i, j):
        return g(i // m, j // m) * m + h(i % m, j % m)

    n = g.order * m
    return GroupTable.from_mult([[mul(i, j) for j in range(n)] for i in range(n)], g.identity * m + h.identity)


def klein_four() -> GroupTable:
    return direct_product(cyclic_group(2), cyclic_group(2))


def symmetric_group(k: int) -> GroupTable:
    perms = list(itertools.permutations(range(k)))
    index = {p: i for i, p in enumerate(perms)}
    # (p q)(x) = p(q(x))
    mult = [[index[tuple(p[q[x]] for x in range(k))] for q in perms] for p in perms]
    return GroupTable.from_mult(mult, index[tuple(range(k))], tuple("".join(map(str, p)) for p in perms))


# -- helpers ----------------------------------------------------------------------


def _map_from_table(F: FieldSpec, cod: int, dom: int, entries) -> LinMap:
    """``entries``: iterable of (row, col, value) triples, summed."""
    out = F.zeros((cod, dom))
    for r, c, v in entries:
        out[r, c] = F.element(out[r, c] + F.element(v))
    return LinMap(F, out)


def _unit(F: FieldSpec, n: int, idx: int = 0) -> LinMap:
    return _map_from_table(F, n, 1, [(idx, 0, 1)])


def algebra_from_products(F: FieldSpec, n: int, product, unit_index: int = 0) -> AlgebraData:
    """``product(i, j)`` returns ``{k: coeff}`` for ``e_i e_j``."""
    entries = [(k, i * n + j, c) for i in range(n) for j in range(n) for k, c in product(i, j).items()]
    return AlgebraData(F, n, _map_from_table(F, n, n * n, entries), _unit(F, n, unit_index))


# -- group-type Hopf algebras --------------------------------------------------------


def monoid_bialgebra(table, identity: int, F: FieldSpec) -> BialgebraData:
    """Monoid algebra with group-like basis; a Hopf algebra only for groups."""
    n = len(table)
    alg = algebra_from_products(F, n, lambda i, j: {table[i][j]: 1}, identity)
    comult = _map_from_table(F, n * n, n, [(i * n + i, i, 1) for i in range(n)])
    counit = _map_from_table(F, 1, n, [(0, i, 1) for i in range(n)])
    return BialgebraData(alg, CoalgebraData(F, n, comult, counit))


def group_algebra(g: GroupTable, F: FieldSpec) -> HopfData:
    b = monoid_bialgebra(g.mult, g.identity, F)
    S = _map_from_table(F, g.order, g.order, [(g.inverse[i], i, 1) for i in range(g.order)])
    return HopfData(b.algebra, b.coalgebra, S)


def dual_group_algebra(g: GroupTable, F: FieldSpec) -> HopfData:
    """Functions on ``g`` with basis of indicator functions."""
    n = g.order
    alg = AlgebraData(
        F, n,
        _map_from_table(F, n, n * n, [(i, i * n + i, 1) for i in range(n)]),
        _map_from_table(F, n, 1, [(i, 0, 1) for i in range(n)]),
    )
    comult = _map_from_table(F, n * n, n, [(a * n + b, g(a, b), 1) for a in range(n) for b in range(n)])
    counit = _map_from_table(F, 1, n, [(0, g.identity, 1)])
    S = _map_from_table(F, n, n, [(g.inverse[i], i, 1) for i in range(n)])
    return HopfData(alg, CoalgebraData(F, n, comult, counit), S)


# -- pointed examples -------------------------------------------------------------------


def sweedler_h4(F: FieldSpec) -> HopfData:
    """Sweedler's four-dimensional Hopf algebra on the basis ``1, g, x, gx``.

    ``g^2 = 1``, ``x^2 = 0``, ``xg = -gx``, ``g`` group-like and
    ``comult(x) = x (x) 1 + g (x) x``.  The antipode is solved for.
    """
    if F.characteristic == 2:
        raise BadCharacteristic("Sweedler's algebra needs characteristic != 2")
    one, g, x, gx = range(4)
    table = {
        (one, one): {one: 1}, (one, g): {g: 1}, (one, x): {x: 1}, (one, gx): {gx: 1},
        (g, one): {g: 1}, (g, g): {one: 1}, (g, x): {gx: 1}, (g, gx): {x: 1},
        (x, one): {x: 1}, (x, g): {gx: -1}, (x, x): {}, (x, gx): {},
        (gx, one): {gx: 1}, (gx, g): {x: -1}, (gx, x): {}, (gx, gx): {},
    }
    alg = algebra_from_products(F, 4, lambda i, j: table[i, j])
    comult = _map_from_table(
        F, 16, 4,
        [
            (one * 4 + one, one, 1),
            (g * 4 + g, g, 1),
            (x * 4 + one, x, 1), (g * 4 + x, x, 1),
            (gx * 4 + g, gx, 1), (one * 4 + gx, gx, 1),
        ],
    )
    counit = _map_from_table(F, 1, 4, [(0, one, 1), (0, g, 1)])
    return HopfData.from_bialgebra(BialgebraData(alg, CoalgebraData(F, 4, comult, counit)))


def root_of_unity(n: int, F: FieldSpec) -> int:
    """The least primitive root of ``p`` raised to ``(p-1)/n``."""
    if F.kind != "Fp" or (F.p - 1) % n:
        raise NoRootOfUnity(f"{F} has no primitive {n}-th root of unity")
    from sympy import primitive_root

    return pow(int(primitive_root(F.p)), (F.p - 1) // n, F.p)


def taft_algebra(n: int, F: FieldSpec) -> HopfData:
    """Taft algebra of dimension ``n**2`` over F_p, ``n | p - 1``.

    Basis ``g^a x^b`` at index ``b*n + a``; ``xg = q gx`` with ``q`` from
    :func:`root_of_unity`.  The comultiplication is extended from the
    generators multiplicatively, the antipode solved for.
    """
    if n < 2:
        raise ValueError("Taft algebras need n >= 2")
    q = root_of_unity(n, F)
    dim = n * n

    def idx(a, b):
        return b * n + a

    def product(i, j):
        a, b = i % n, i // n
        c, d = j % n, j // n
        if b + d >= n:
            return {}
        return {idx((a + c) % n, b + d): pow(q, b * c, F.p)}

    alg = algebra_from_products(F, dim, product)
    m = alg.mult.entries.reshape(dim, dim, dim)

    def mul_tensor(u, v):
        # (a (x) b)(c (x) d) = ac (x) bd for vectors in H (x) H
        U = u.reshape(dim, dim)
        V = v.reshape(dim, dim)
        res = F.zeros((dim, dim))
        nzU = np.argwhere(U != 0)
        nzV = np.argwhere(V != 0)
        for i, j in nzU:
            for r, s in nzV:
                coeff = F.element(int(U[i, j]) * int(V[r, s]))
                res = F.reduce(res + coeff * np.outer(m[:, i, r], m[:, j, s]))
        return res.reshape(-1)

    def basis_tensor(i, j):
        v = F.zeros(dim * dim)
        v[i * dim + j] = 1
        return v

    delta_g = basis_tensor(idx(1, 0), idx(1, 0))
    delta_x = F.reduce(basis_tensor(idx(0, 1), idx(0, 0)) + basis_tensor(idx(1, 0), idx(0, 1)))
    cols = {}
    for b in range(n):
        for a in range(n):
            v = basis_tensor(0, 0)
            for _ in range(a):
                v = mul_tensor(v, delta_g)
            for _ in range(b):
                v = mul_tensor(v, delta_x)
            cols[idx(a, b)] = v
    comult = LinMap(F, np.stack([cols[i] for i in range(dim)], axis=1))
    counit = _map_from_table(F, 1, dim, [(0, idx(a, 0), 1) for a in range(n)])
    return HopfData.from_bialgebra(BialgebraData(alg, CoalgebraData(F, dim, comult, counit)))


# -- Galois objects ----------------------------------------------------------------------


def trivial_galois(h: HopfData) -> GaloisObjectData:
    """``H`` as a Galois object over itself via the comultiplication."""
    return make_galois(ComoduleAlgebraData.regular_of(h))


@dataclass(frozen=True, eq=False)
class TwoCocycle:
    group: GroupTable
    values: tuple  # values[g][h], nonzero scalars
    field: FieldSpec

    def __post_init__(self):
        vals = tuple(tuple(self.field.element(v) for v in row) for row in self.values)
        object.__setattr__(self, "values", vals)
        if any(v == 0 for row in vals for v in row):
            raise ValueError("cocycle values must be nonzero")

    def __call__(self, a: int, b: int):
        return self.values[a][b]


def check_two_cocycle(c: TwoCocycle) -> Report:
    """Cocycle identity over all triples and normalization."""
    G, F = c.group, c.field
    rep = Report("two-cocycle")
    bad = None
    for a, b, d in itertools.product(range(G.order), repeat=3):
        lhs = F.element(c(a, b) * c(G(a, b), d))
        rhs = F.element(c(b, d) * c(a, G(b, d)))
        if lhs != rhs:
            bad = Witness((a, b, d), (), lhs, rhs)
            break
    rep.add(Verdict("cocycle.condition", bad is None, witness=bad))
    e = G.identity
    bad = next((Witness((a,)) for a in range(G.order) if c(e, a) != 1 or c(a, e) != 1), None)
    rep.add(Verdict("cocycle.normalized", bad is None, witness=bad))
    return rep


def normalize_cocycle(c: TwoCocycle) -> TwoCocycle:
    """Divide by the constant ``c(e, e)`` (a coboundary) to get a normalized cocycle."""
    e = c.group.identity
    k = c(e, e)
    if k == 1:
        return c
    log.warning("normalizing two-cocycle by the constant %s", k)
    inv = c.field.inverse(k)
    vals = [[c.field.element(v * inv) for v in row] for row in c.values]
    return TwoCocycle(c.group, tuple(map(tuple, vals)), c.field)


def bilinear_sign_cocycle(F: FieldSpec) -> TwoCocycle:
    """``sigma((a, b), (c, d)) = (-1)^(b c)`` on the Klein four-group."""
    G = klein_four()
    vals = [[(-1) ** ((i % 2) * (j // 2)) for j in range(4)] for i in range(4)]
    return TwoCocycle(G, tuple(map(tuple, vals)), F)


def twisted_group_algebra(c: TwoCocycle) -> ComoduleAlgebraData:
    """``u_g u_h = sigma(g, h) u_gh`` with coaction ``u_g -> u_g (x) g`` over ``k[G]``."""
    G, F = c.group, c.field
    n = G.order
    alg = algebra_from_products(F, n, lambda i, j: {G(i, j): c(i, j)}, G.identity)
    H = group_algebra(G, F)
    rho = _map_from_table(F, n * n, n, [(i * n + i, i, 1) for i in range(n)])
    return ComoduleAlgebraData(alg, H, rho)


def twisted_group_galois(c: TwoCocycle, F: FieldSpec | None = None) -> GaloisObjectData:
    if F is not None and F != c.field:
        c = TwoCocycle(c.group, c.values, F)
    rep = check_two_cocycle(c)
    if not rep["cocycle.condition"].passed:
        raise ValueError(f"not a two-cocycle: {rep['cocycle.condition'].witness}")
    if not rep["cocycle.normalized"].passed:
        c = normalize_cocycle(c)
    d = twisted_group_algebra(c)
    g = make_galois(d)
    if not check_hopf(d.H).passed:
        raise ImplementationFault("group algebra fails the Hopf checks")
    return g
