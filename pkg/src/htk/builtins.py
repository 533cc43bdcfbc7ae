"""Named example documents available from the command line."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from htk.comodule import ComoduleAlgebraData
from htk.constructions import (
    bilinear_sign_cocycle,
    cyclic_group,
    dual_group_algebra,
    group_algebra,
    klein_four,
    sweedler_h4,
    symmetric_group,
    taft_algebra,
    twisted_group_algebra,
)
from htk.exactlin import TensorMap
from htk.field import FieldSpec
from htk.serialize import Document

Q = FieldSpec.rationals()


@dataclass(frozen=True)
class Builtin:
    name: str
    description: str
    build: Callable[[], Document]


def _regular(h, default="T") -> Document:
    return Document(h.field, {"H": h, "T": ComoduleAlgebraData.regular_of(h)}, default)


def _hopf_only(h) -> Document:
    return Document(h.field, {"H": h}, "H")


def _twisted_klein(F: FieldSpec) -> Document:
    d = twisted_group_algebra(bilinear_sign_cocycle(F))
    return Document(F, {"H": d.H, "T": d}, "T")


def _trivial_coaction_c2() -> Document:
    h = group_algebra(cyclic_group(2), Q)
    rho = TensorMap.start(Q, (2,)).then(h.unit, 1, 0).linmap
    return Document(Q, {"H": h, "T": ComoduleAlgebraData(h.algebra, h, rho)}, "T")


_REGISTRY = [
    Builtin("trivial_c2", "Q[C2] as a Galois object over itself", lambda: _regular(group_algebra(cyclic_group(2), Q))),
    Builtin(
        "trivial_c2_f5", "F5[C2] as a Galois object over itself",
        lambda: _regular(group_algebra(cyclic_group(2), FieldSpec.prime(5))),
    ),
    Builtin("twisted_klein", "twisted group algebra of (C2)^2, sigma = (-1)^(bc), over Q", lambda: _twisted_klein(Q)),
    Builtin(
        "twisted_klein_f5", "twisted group algebra of (C2)^2, sigma = (-1)^(bc), over F5",
        lambda: _twisted_klein(FieldSpec.prime(5)),
    ),
    Builtin("sweedler_regular", "Sweedler's H4 over Q as a Galois object over itself", lambda: _regular(sweedler_h4(Q))),
    Builtin(
        "taft3_f7", "Taft algebra T3 over F7 (q = 2) as a Galois object over itself",
        lambda: _regular(taft_algebra(3, FieldSpec.prime(7))),
    ),
    Builtin(
        "dual_klein_regular", "functions on (C2)^2 over Q as a Galois object over itself",
        lambda: _regular(dual_group_algebra(klein_four(), Q)),
    ),
    Builtin(
        "s3_regular_f5", "F5[S3] as a Galois object over itself",
        lambda: _regular(group_algebra(symmetric_group(3), FieldSpec.prime(5))),
    ),
    Builtin("trivial_coaction_c2", "Q[C2] with the trivial coaction (not Galois)", _trivial_coaction_c2),
    Builtin("c2", "the group algebra Q[C2]", lambda: _hopf_only(group_algebra(cyclic_group(2), Q))),
    Builtin("sweedler_h4", "Sweedler's four-dimensional Hopf algebra over Q", lambda: _hopf_only(sweedler_h4(Q))),
    Builtin("s3_f5", "the group algebra F5[S3]", lambda: _hopf_only(group_algebra(symmetric_group(3), FieldSpec.prime(5)))),
    Builtin("dual_klein", "functions on (C2)^2 over Q", lambda: _hopf_only(dual_group_algebra(klein_four(), Q))),
    Builtin("taft3_f7_hopf", "the Taft algebra T3 over F7", lambda: _hopf_only(taft_algebra(3, FieldSpec.prime(7)))),
]

BUILTINS = {b.name: b for b in _REGISTRY}

# the Galois objects every identity is checked on
GALOIS_BUILTINS = ("trivial_c2", "twisted_klein", "sweedler_regular", "taft3_f7")


def names() -> list[str]:
    return [b.name for b in _REGISTRY]


def load_builtin(name: str) -> Document:
    return BUILTINS[name].build()
