"""Exact scalar fields: the rationals and prime fields F_p.

Scalars are plain Python objects: :class:`fractions.Fraction` over Q and
``int`` residues in ``[0, p)`` over F_p.  Matrices are numpy arrays whose
dtype depends on the field: ``object`` for Q and for large primes, ``int64``
for primes below 2**31 (those go through the mod-p kernels).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

import numpy as np

from htk import kernels

INT64_PRIME_LIMIT = 2**31

_as_fraction = np.frompyfunc(Fraction, 1, 1)
_numerator = np.frompyfunc(lambda x: x.numerator, 1, 1)
_denominator = np.frompyfunc(lambda x: x.denominator, 1, 1)
_make_fraction = np.frompyfunc(Fraction, 2, 1)


def _rational_matmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Product of Fraction matrices through one integer product.

    Rows of ``a`` and columns of ``b`` are cleared of denominators first, so
    the inner loop never builds a Fraction; int64 is used when the bound on
    every dot product allows it.
    """
    da = np.lcm.reduce(_denominator(a).astype(object), axis=1)
    db = np.lcm.reduce(_denominator(b).astype(object), axis=0)
    ia = _numerator(a) * (da[:, None] // _denominator(a))
    ib = _numerator(b) * (db[None, :] // _denominator(b))
    bound = int(np.max(np.abs(ia))) * int(np.max(np.abs(ib))) * a.shape[1]
    if bound < 2**62:
        num = np.dot(ia.astype(np.int64), ib.astype(np.int64)).astype(object)
    else:
        num = np.dot(ia, ib)
    return _make_fraction(num, np.multiply.outer(da, db)).astype(object)


def _reject_inexact(data):
    if isinstance(data, np.ndarray):
        if data.dtype.kind in "fc":
            raise TypeError("inexact array; structure constants must be exact")
        if data.dtype != object:
            return
        flat = data.flat
    elif isinstance(data, (list, tuple)):
        flat = np.array(data, dtype=object).flat
    else:
        flat = (data,)
    if any(isinstance(x, (float, complex, np.floating, np.complexfloating)) for x in flat):
        raise TypeError("inexact scalar; structure constants must be exact")


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p < 10**6:
        return all(p % d for d in range(2, int(p**0.5) + 1))
    from sympy import isprime

    return bool(isprime(p))


@dataclass(frozen=True)
class FieldSpec:
    """``FieldSpec("Q")`` or ``FieldSpec("Fp", p)`` with ``p`` prime."""

    kind: str
    p: int | None = None

    def __post_init__(self):
        if self.kind == "Q":
            if self.p is not None:
                raise ValueError("the rationals take no modulus")
        elif self.kind == "Fp":
            if isinstance(self.p, bool) or not isinstance(self.p, int) or not _is_prime(self.p):
                raise ValueError(f"F_p needs a prime p, got {self.p!r}")
        else:
            raise ValueError(f"unknown field kind {self.kind!r}")

    @classmethod
    def rationals(cls) -> FieldSpec:
        return cls("Q")

    @classmethod
    def prime(cls, p: int) -> FieldSpec:
        return cls("Fp", int(p))

    @property
    def characteristic(self) -> int:
        return 0 if self.kind == "Q" else self.p

    @property
    def name(self) -> str:
        return "Q" if self.kind == "Q" else f"F{self.p}"

    def __str__(self):
        return self.name

    @cached_property
    def uses_int64(self) -> bool:
        return self.kind == "Fp" and self.p < INT64_PRIME_LIMIT

    @property
    def dtype(self):
        return np.int64 if self.uses_int64 else object

    # -- scalars -----------------------------------------------------------

    def element(self, x):
        """Canonical scalar for ``x`` (int, Fraction, or ``"a/b"`` string)."""
        if isinstance(x, str):
            x = Fraction(x)
        elif isinstance(x, (float, complex, np.floating, np.complexfloating)):
            raise TypeError(f"inexact scalar {x!r}; use an int, Fraction or 'a/b' string")
        if self.kind == "Q":
            return Fraction(x)
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise ZeroDivisionError(f"{x} has no image in {self.name}")
            return x.numerator * pow(x.denominator, -1, self.p) % self.p
        return int(x) % self.p

    @property
    def zero(self):
        return self.element(0)

    @property
    def one(self):
        return self.element(1)

    def inverse(self, x):
        x = self.element(x)
        if x == 0:
            raise ZeroDivisionError("zero has no inverse")
        if self.kind == "Q":
            return 1 / x
        return pow(x, -1, self.p)

    def format(self, x) -> str:
        return str(self.element(x))

    # -- arrays ------------------------------------------------------------

    def array(self, data) -> np.ndarray:
        """Convert nested sequences / arrays of scalars into a canonical array."""
        _reject_inexact(data)
        if self.kind == "Q":
            raw = np.array(data, dtype=object)
            if raw.size == 0:
                return raw
            if any(isinstance(x, str) for x in raw.flat):
                raw = np.frompyfunc(self.element, 1, 1)(raw)
            return _as_fraction(raw).astype(object)
        raw = np.array(data, dtype=object)
        if raw.size:
            raw = np.frompyfunc(self.element, 1, 1)(raw)
        return raw.astype(self.dtype)

    def zeros(self, shape) -> np.ndarray:
        if self.kind == "Q":
            return np.full(shape, Fraction(0), dtype=object)
        return np.zeros(shape, dtype=self.dtype)

    def eye(self, n: int) -> np.ndarray:
        out = self.zeros((n, n))
        for i in range(n):
            out[i, i] = self.one
        return out

    def reduce(self, arr: np.ndarray) -> np.ndarray:
        if self.kind == "Q":
            return arr
        return arr % self.p

    def matmul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        if a.shape[1] != b.shape[0]:
            raise ValueError(f"cannot multiply {a.shape} by {b.shape}")
        if a.shape[1] == 0 or a.shape[0] == 0 or b.shape[1] == 0:
            return self.zeros((a.shape[0], b.shape[1]))
        if self.uses_int64:
            return kernels.matmul_modp(a, b, self.p)
        if self.kind == "Q":
            return _rational_matmul(a, b)
        return self.reduce(np.dot(a, b))

    def kron(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        return self.reduce(np.kron(a, b))
