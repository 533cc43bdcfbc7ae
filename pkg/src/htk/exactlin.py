"""Exact linear and tensor algebra over a :class:`~htk.field.FieldSpec`.

Tensor products are flattened row-major: for factors of dimensions
``(d1, ..., dr)`` the basis vector ``e_{i1} (x) ... (x) e_{ir}`` sits at
``((i1*d2 + i2)*d3 + ...)``, so the leftmost factor varies slowest.  This is
numpy's C order and ``np.kron``'s convention, and every structure constant
in the package uses it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from htk import kernels
from htk.errors import DimensionMismatch, SingularMatrix
from htk.field import FieldSpec
from htk.report import Verdict, Witness


class TensorIndex:
    """Row-major flattening of multi-indices for a fixed list of factor dimensions."""

    def __init__(self, factor_dims: Sequence[int]):
        self.factor_dims = tuple(int(d) for d in factor_dims)
        if any(d < 0 for d in self.factor_dims):
            raise ValueError("dimensions must be nonnegative")
        self.size = math.prod(self.factor_dims)

    def flatten(self, *idx: int) -> int:
        if len(idx) != len(self.factor_dims):
            raise ValueError("wrong number of indices")
        flat = 0
        for i, d in zip(idx, self.factor_dims):
            if not 0 <= i < d:
                raise IndexError(f"index {i} out of range for dimension {d}")
            flat = flat * d + i
        return flat

    def unflatten(self, flat: int) -> tuple[int, ...]:
        if not 0 <= flat < self.size:
            raise IndexError(flat)
        out = []
        for d in reversed(self.factor_dims):
            flat, r = divmod(flat, d)
            out.append(r)
        return tuple(reversed(out))

    def __iter__(self):
        return (self.unflatten(k) for k in range(self.size))


@dataclass(frozen=True, eq=False)
class LinMap:
    """A linear map as a ``cod_dim x dom_dim`` matrix of exact scalars."""

    field: FieldSpec
    entries: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.entries)
        if arr.ndim != 2:
            raise DimensionMismatch(f"a linear map needs a 2-d matrix, got shape {arr.shape}")
        if arr.dtype != self.field.dtype:
            arr = self.field.array(arr)
        else:
            arr = self.field.reduce(arr.copy())
        arr.flags.writeable = False
        object.__setattr__(self, "entries", arr)

    @property
    def dom_dim(self) -> int:
        return self.entries.shape[1]

    @property
    def cod_dim(self) -> int:
        return self.entries.shape[0]

    @property
    def shape(self):
        return self.entries.shape

    @classmethod
    def identity(cls, field: FieldSpec, n: int) -> LinMap:
        return cls(field, field.eye(n))

    @classmethod
    def zero(cls, field: FieldSpec, cod: int, dom: int) -> LinMap:
        return cls(field, field.zeros((cod, dom)))

    @classmethod
    def from_columns(cls, field: FieldSpec, columns, cod: int) -> LinMap:
        cols = [field.array(c).reshape(-1) for c in columns]
        if not cols:
            return cls.zero(field, cod, 0)
        return cls(field, np.stack(cols, axis=1))

    def column(self, j: int) -> np.ndarray:
        return self.entries[:, j].copy()

    def __matmul__(self, other: LinMap) -> LinMap:
        if not isinstance(other, LinMap):
            return NotImplemented
        if self.dom_dim != other.cod_dim:
            raise DimensionMismatch(
                f"cannot compose {self.cod_dim}x{self.dom_dim} after {other.cod_dim}x{other.dom_dim}"
            )
        return LinMap(self.field, self.field.matmul(self.entries, other.entries))

    def __call__(self, vector) -> np.ndarray:
        v = self.field.array(vector).reshape(-1, 1)
        if v.shape[0] != self.dom_dim:
            raise DimensionMismatch(f"vector of length {v.shape[0]} for domain {self.dom_dim}")
        return self.field.matmul(self.entries, v).reshape(-1)

    def _same_shape(self, other):
        if self.shape != other.shape:
            raise DimensionMismatch(f"shapes {self.shape} and {other.shape} differ")

    def __add__(self, other: LinMap) -> LinMap:
        self._same_shape(other)
        return LinMap(self.field, self.field.reduce(self.entries + other.entries))

    def __sub__(self, other: LinMap) -> LinMap:
        self._same_shape(other)
        return LinMap(self.field, self.field.reduce(self.entries - other.entries))

    def __neg__(self) -> LinMap:
        return LinMap(self.field, self.field.reduce(-self.entries))

    def scaled(self, c) -> LinMap:
        return LinMap(self.field, self.field.reduce(self.entries * self.field.element(c)))

    def __eq__(self, other):
        if not isinstance(other, LinMap):
            return NotImplemented
        return (
            self.field == other.field
            and self.shape == other.shape
            and bool(np.all(self.entries == other.entries))
        )

    __hash__ = None

    def is_zero(self) -> bool:
        return not np.any(self.entries != 0)

    def rank(self) -> int:
        return rank(self)

    def __repr__(self):
        return f"LinMap({self.field}, {self.cod_dim}x{self.dom_dim})"


# -- row reduction -------------------------------------------------------------


def _rref_object(field: FieldSpec, arr: np.ndarray):
    m = np.array(arr, dtype=object, copy=True)
    rows, cols = m.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r >= rows:
            break
        nz = [i for i in range(r, rows) if m[i, c] != 0]
        if not nz:
            continue
        piv = nz[0]
        if piv != r:
            m[[r, piv]] = m[[piv, r]]
        m[r] = field.reduce(m[r] * field.inverse(m[r, c]))
        for i in range(rows):
            if i != r and m[i, c] != 0:
                m[i] = field.reduce(m[i] - m[i, c] * m[r])
        pivots.append(c)
        r += 1
    return m, tuple(pivots)


def rref(field: FieldSpec, arr: np.ndarray):
    """Reduced row echelon form and pivot columns of an exact matrix."""
    if arr.shape[0] == 0 or arr.shape[1] == 0:
        return field.zeros(arr.shape), ()
    if field.uses_int64:
        return kernels.rref_modp(arr, field.p)
    return _rref_object(field, arr)


def rank(a: LinMap) -> int:
    return len(rref(a.field, a.entries)[1])


def solve_linear(a: LinMap, b) -> np.ndarray | None:
    """Some ``x`` with ``a(x) = b``, or ``None`` when the system is inconsistent."""
    field = a.field
    b = field.array(b).reshape(-1, 1)
    if b.shape[0] != a.cod_dim:
        raise DimensionMismatch(f"right-hand side has length {b.shape[0]}, expected {a.cod_dim}")
    aug = np.concatenate([a.entries, b], axis=1)
    red, pivots = rref(field, aug)
    n = a.dom_dim
    if n in pivots:
        return None
    x = field.zeros(n)
    for row, c in enumerate(pivots):
        x[c] = red[row, n]
    return x


def kernel_basis(a: LinMap) -> list[np.ndarray]:
    """An exact basis of the null space, one vector per free column."""
    field = a.field
    red, pivots = rref(field, a.entries)
    free = [c for c in range(a.dom_dim) if c not in set(pivots)]
    basis = []
    for f in free:
        v = field.zeros(a.dom_dim)
        v[f] = field.one
        for row, c in enumerate(pivots):
            v[c] = field.reduce(-red[row, f])
        basis.append(v)
    return basis


def invert(a: LinMap) -> LinMap:
    if a.cod_dim != a.dom_dim:
        raise DimensionMismatch(f"cannot invert a {a.cod_dim}x{a.dom_dim} matrix")
    n = a.dom_dim
    field = a.field
    red, pivots = rref(field, np.concatenate([a.entries, field.eye(n)], axis=1))
    if pivots[:n] != tuple(range(n)) or len(pivots) < n:
        raise SingularMatrix(f"{n}x{n} matrix has rank {sum(1 for c in pivots if c < n)}")
    return LinMap(field, red[:, n:])


def column_space_contains(basis: np.ndarray, vectors: np.ndarray, field: FieldSpec) -> bool:
    """Whether every column of ``vectors`` lies in the span of the columns of ``basis``."""
    if vectors.shape[1] == 0:
        return True
    if basis.shape[1] == 0:
        return not np.any(vectors != 0)
    r0 = len(rref(field, basis)[1])
    return len(rref(field, np.concatenate([basis, vectors], axis=1))[1]) == r0


def same_span(a: np.ndarray, b: np.ndarray, field: FieldSpec) -> bool:
    return column_space_contains(a, b, field) and column_space_contains(b, a, field)


# -- tensor products -----------------------------------------------------------


def tensor_map(fs: Sequence[LinMap]) -> LinMap:
    """Kronecker product ``f1 (x) f2 (x) ...`` in the row-major convention."""
    if not fs:
        raise ValueError("need at least one map")
    field = fs[0].field
    out = fs[0].entries
    for f in fs[1:]:
        out = field.kron(out, f.entries)
    return LinMap(field, out)


def permutation_map(field: FieldSpec, dims: Sequence[int], order: Sequence[int]) -> LinMap:
    """The map sending factor ``order[k]`` of ``(x) dims`` to position ``k``."""
    return TensorMap.start(field, dims).permute(*order).linmap


def swap_map(field: FieldSpec, d1: int, d2: int) -> LinMap:
    return permutation_map(field, (d1, d2), (1, 0))


class TensorMap:
    """A matrix whose rows are indexed by a tensor product with known factors.

    Used to build composites like ``(T (x) gamma) o rho`` without forming full
    Kronecker products: :meth:`then` applies a map to a run of adjacent
    factors, :meth:`permute` reorders them.
    """

    __slots__ = ("field", "entries", "dims")

    def __init__(self, field: FieldSpec, entries: np.ndarray, dims: Sequence[int]):
        self.field = field
        self.dims = tuple(int(d) for d in dims)
        if entries.shape[0] != math.prod(self.dims):
            raise DimensionMismatch(f"{entries.shape[0]} rows do not match factors {self.dims}")
        self.entries = entries

    @classmethod
    def start(cls, field: FieldSpec, dims: Sequence[int], cols: slice | None = None) -> TensorMap:
        n = math.prod(dims)
        eye = field.eye(n)
        if cols is not None:
            eye = eye[:, cols]
        return cls(field, eye, dims)

    @classmethod
    def of(cls, f: LinMap, dims: Sequence[int] | None = None) -> TensorMap:
        return cls(f.field, f.entries, dims if dims is not None else (f.cod_dim,))

    @property
    def linmap(self) -> LinMap:
        return LinMap(self.field, self.entries)

    def then(self, f: LinMap, at: int, width: int = 1, out: Sequence[int] | None = None) -> TensorMap:
        """Apply ``f`` to factors ``at .. at+width-1``, replacing them by ``out``."""
        out = (f.cod_dim,) if out is None else tuple(out)
        if math.prod(out) != f.cod_dim:
            raise DimensionMismatch(f"output factors {out} do not multiply to {f.cod_dim}")
        if not 0 <= at <= len(self.dims) - width:
            raise DimensionMismatch(f"factors {at}..{at + width - 1} outside {self.dims}")
        a = math.prod(self.dims[:at])
        k = math.prod(self.dims[at : at + width])
        b = math.prod(self.dims[at + width :])
        if k != f.dom_dim:
            raise DimensionMismatch(f"map with domain {f.dom_dim} applied to factors of size {k}")
        d = self.entries.shape[1]
        m = self.entries.reshape(a, k, b * d).transpose(1, 0, 2).reshape(k, a * b * d)
        res = self.field.matmul(f.entries, np.ascontiguousarray(m))
        res = res.reshape(f.cod_dim, a, b * d).transpose(1, 0, 2).reshape(a * f.cod_dim * b, d)
        return TensorMap(self.field, np.ascontiguousarray(res), self.dims[:at] + out + self.dims[at + width :])

    def permute(self, *order: int) -> TensorMap:
        """New factor ``k`` is old factor ``order[k]``."""
        if sorted(order) != list(range(len(self.dims))):
            raise ValueError(f"{order} is not a permutation of {len(self.dims)} factors")
        d = self.entries.shape[1]
        t = self.entries.reshape(self.dims + (d,)).transpose(tuple(order) + (len(self.dims),))
        dims = tuple(self.dims[i] for i in order)
        return TensorMap(self.field, np.ascontiguousarray(t.reshape(-1, d)), dims)


# -- identity checking ---------------------------------------------------------

Builder = Callable[[TensorMap], TensorMap]

CHUNK = 256


def first_difference(lhs: np.ndarray, rhs: np.ndarray, dom_dims, cod_dims, offset=0) -> Witness | None:
    diff = np.argwhere(lhs != rhs)
    if diff.size == 0:
        return None
    row, col = (int(x) for x in diff[0])
    return Witness(
        input=TensorIndex(dom_dims).unflatten(col + offset),
        output=TensorIndex(cod_dims).unflatten(row),
        lhs=lhs[row, col],
        rhs=rhs[row, col],
    )


def check_equal(
    name: str,
    field: FieldSpec,
    dom_dims: Sequence[int],
    lhs: Builder,
    rhs: Builder,
    label: str = "",
    detail: str = "",
    chunk: int = CHUNK,
) -> Verdict:
    """Compare two composites on every basis tensor of ``(x) dom_dims``.

    The builders receive the identity on (a column block of) the domain and
    return the evaluated composite; large domains are processed in blocks.
    """
    n = math.prod(dom_dims)
    chunk = max(1, chunk)
    for start in range(0, max(n, 1), chunk):
        cols = slice(start, min(n, start + chunk))
        left = lhs(TensorMap.start(field, dom_dims, cols))
        right = rhs(TensorMap.start(field, dom_dims, cols))
        if left.entries.shape != right.entries.shape:
            raise DimensionMismatch(f"{name}: sides have shapes {left.entries.shape} and {right.entries.shape}")
        w = first_difference(left.entries, right.entries, dom_dims, left.dims, start)
        if w is not None:
            return Verdict(name, False, label, w, detail)
    return Verdict(name, True, label, None, detail)


def check_maps_equal(name: str, lhs: LinMap, rhs: LinMap, dom_dims=None, cod_dims=None, label="", detail="") -> Verdict:
    if lhs.shape != rhs.shape:
        raise DimensionMismatch(f"{name}: maps have shapes {lhs.shape} and {rhs.shape}")
    dom_dims = dom_dims or (lhs.dom_dim,)
    cod_dims = cod_dims or (lhs.cod_dim,)
    w = first_difference(lhs.entries, rhs.entries, dom_dims, cod_dims)
    return Verdict(name, w is None, label, w, detail)
