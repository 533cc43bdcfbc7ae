"""The JSON structure-constant format.

A document looks like::

    {
      "format_version": "1",
      "field": {"kind": "Q"}                      # or {"kind": "Fp", "p": 5}
      "default": "T",                             # optional
      "objects": {
        "H": {"type": "hopf", "dim": 2, "mult": [...], "unit": [...],
              "comult": [...], "counit": [...], "antipode": [...]},
        "T": {"type": "comodule_algebra", "hopf": "H", "regular": true},
        ...
      }
    }

Structure constants are sparse lists of nonzero entries.  Each entry lists
the input basis indices, then the output basis indices, then the value:
``[num, den]`` over Q or ``[residue]`` over F_p.  So a ``mult`` entry is
``[i, j, k, num, den]`` meaning ``e_i e_j`` has coefficient ``num/den`` on
``e_k``.  The antipode of a Hopf algebra is optional and solved for when
missing.  Comodule algebras are either ``regular`` (``T = H`` with the
comultiplication) or carry ``dim``, ``mult``, ``unit`` and ``coaction``; a
Galois object may additionally store ``beta`` and ``gamma``.  Torsors carry
``dim``, ``mult``, ``unit``, ``mu``, ``theta`` and optionally the name of the
comodule algebra they come from (``galois``).  Yetter-Drinfeld modules carry
``hopf``, ``dim``, ``action`` and ``coaction``.
"""

from __future__ import annotations

import hashlib
import json
import math
import re
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from pathlib import Path

import numpy as np

from htk.comodule import ComoduleAlgebraData
from htk.errors import FormatError
from htk.exactlin import LinMap, TensorIndex
from htk.field import FieldSpec
from htk.hopfcore import AlgebraData, BialgebraData, CoalgebraData, HopfData, solve_antipode
from htk.torsor import TorsorData
from htk.ydribbon import YDModuleData

FORMAT_VERSION = "1"
KINDS = ("hopf", "comodule_algebra", "torsor", "yd_module")


@dataclass
class Document:
    """Named objects over one field, plus optional stored Galois data and references."""

    field: FieldSpec
    objects: dict = dc_field(default_factory=dict)
    default: str | None = None
    stored: dict = dc_field(default_factory=dict)  # name -> {"beta": LinMap, "gamma": LinMap}
    sources: dict = dc_field(default_factory=dict)  # torsor name -> comodule algebra name

    def kind(self, name: str) -> str:
        obj = self.objects[name]
        for k, cls in zip(KINDS, (HopfData, ComoduleAlgebraData, TorsorData, YDModuleData)):
            if isinstance(obj, cls):
                return k
        raise TypeError(type(obj).__name__)

    def pick(self, name: str | None):
        """The named object, the default, or the only object."""
        if name is None:
            name = self.default
        if name is None:
            if len(self.objects) != 1:
                raise FormatError(f"several objects, choose one of {sorted(self.objects)}", "objects")
            name = next(iter(self.objects))
        if name not in self.objects:
            raise KeyError(name)
        return name, self.objects[name]


# -- encoding -----------------------------------------------------------------------


def _encode_value(F: FieldSpec, x) -> list[int]:
    if F.kind == "Q":
        x = Fraction(x)
        return [x.numerator, x.denominator]
    return [int(x)]


def encode_map(f: LinMap, ins: tuple[int, ...], outs: tuple[int, ...]) -> list[list[int]]:
    F = f.field
    rows, cols = np.nonzero(f.entries != 0)
    order = np.lexsort((rows, cols))
    ti, to = TensorIndex(ins), TensorIndex(outs)
    out = []
    for r, c in zip(rows[order], cols[order]):
        out.append(list(ti.unflatten(int(c))) + list(to.unflatten(int(r))) + _encode_value(F, f.entries[r, c]))
    return out


def _hopf_json(h: HopfData) -> dict:
    n = h.dim
    return {
        "type": "hopf",
        "dim": n,
        "mult": encode_map(h.mult, (n, n), (n,)),
        "unit": encode_map(h.unit, (), (n,)),
        "comult": encode_map(h.comult, (n,), (n, n)),
        "counit": encode_map(h.counit, (n,), ()),
        "antipode": encode_map(h.antipode, (n,), (n,)),
    }


def _algebra_json(a: AlgebraData) -> dict:
    n = a.dim
    return {"dim": n, "mult": encode_map(a.mult, (n, n), (n,)), "unit": encode_map(a.unit, (), (n,))}


def _name_of(doc: Document, obj) -> str:
    for k, v in doc.objects.items():
        if v is obj:
            return k
    raise ValueError("referenced object is not part of the document")


def dump_document(doc: Document) -> dict:
    objects = {}
    for name, obj in doc.objects.items():
        if isinstance(obj, HopfData):
            objects[name] = _hopf_json(obj)
        elif isinstance(obj, ComoduleAlgebraData):
            entry = {"type": "comodule_algebra", "hopf": _name_of(doc, obj.H)}
            if obj.regular:
                entry["regular"] = True
            else:
                n, m = obj.T.dim, obj.H.dim
                entry.update(_algebra_json(obj.T))
                entry["coaction"] = encode_map(obj.rho, (n,), (n, m))
            if name in doc.stored:
                n, m = obj.T.dim, obj.H.dim
                entry["beta"] = encode_map(doc.stored[name]["beta"], (n, n), (n, m))
                entry["gamma"] = encode_map(doc.stored[name]["gamma"], (m,), (n, n))
            objects[name] = entry
        elif isinstance(obj, TorsorData):
            n = obj.T.dim
            entry = {"type": "torsor", **_algebra_json(obj.T)}
            entry["mu"] = encode_map(obj.mu, (n,), (n, n, n))
            entry["theta"] = encode_map(obj.theta, (n,), (n,))
            if name in doc.sources:
                entry["galois"] = doc.sources[name]
            objects[name] = entry
        elif isinstance(obj, YDModuleData):
            d, m = obj.dim, obj.H.dim
            objects[name] = {
                "type": "yd_module",
                "hopf": _name_of(doc, obj.H),
                "dim": d,
                "action": encode_map(obj.action, (d, m), (d,)),
                "coaction": encode_map(obj.coaction, (d,), (d, m)),
            }
        else:
            raise TypeError(f"cannot serialize {type(obj).__name__}")
    field = {"kind": "Q"} if doc.field.kind == "Q" else {"kind": "Fp", "p": doc.field.p}
    out = {"format_version": FORMAT_VERSION, "field": field}
    if doc.default is not None:
        out["default"] = doc.default
    out["objects"] = objects
    return out


_INT_LIST = re.compile(r"\[\s*-?\d+(?:\s*,\s*-?\d+)*\s*\]")


def to_json(data) -> str:
    """Indented JSON with every list of integers kept on one line."""
    text = json.dumps(data, indent=1)
    return _INT_LIST.sub(lambda m: "[" + ", ".join(x.strip() for x in m.group(0)[1:-1].split(",")) + "]", text)


def dumps(doc: Document) -> str:
    return to_json(dump_document(doc))


def canonical_bytes(data: dict) -> bytes:
    return json.dumps(data, sort_keys=True, separators=(",", ":")).encode()


def digest(raw: bytes) -> str:
    return hashlib.sha256(raw).hexdigest()


# -- decoding -----------------------------------------------------------------------


def _is_int(x) -> bool:
    return isinstance(x, int) and not isinstance(x, bool)


def _require(obj: dict, key: str, where: str):
    if key not in obj:
        raise FormatError(f"missing field {key!r}", where)
    return obj[key]


def _dim(obj: dict, where: str) -> int:
    d = _require(obj, "dim", where)
    if not _is_int(d) or d <= 0:
        raise FormatError(f"dim must be a positive integer, got {d!r}", f"{where}.dim")
    return d


def decode_map(F: FieldSpec, raw, ins: tuple[int, ...], outs: tuple[int, ...], where: str) -> LinMap:
    """Dense map from sparse entries, validating indices, values and duplicates."""
    if not isinstance(raw, list):
        raise FormatError("structure constants must be a list of entries", where)
    nvals = 2 if F.kind == "Q" else 1
    width = len(ins) + len(outs) + nvals
    dom, cod = math.prod(ins), math.prod(outs)
    out = F.zeros((cod, dom))
    seen = set()
    ti, to = TensorIndex(ins), TensorIndex(outs)
    for k, e in enumerate(raw):
        loc = f"{where}[{k}]"
        if not isinstance(e, list) or len(e) != width or not all(_is_int(x) for x in e):
            raise FormatError(f"entry must be a list of {width} integers, got {e!r}", loc)
        idx = e[: len(ins) + len(outs)]
        for pos, (i, bound) in enumerate(zip(idx, ins + outs)):
            if not 0 <= i < bound:
                raise FormatError(f"index {i} at position {pos} outside 0..{bound - 1}", loc)
        key = tuple(idx)
        if key in seen:
            raise FormatError(f"duplicate entry for indices {key}", loc)
        seen.add(key)
        if F.kind == "Q":
            num, den = e[-2:]
            if den == 0:
                raise FormatError("zero denominator", loc)
            value = Fraction(num, den)
        else:
            value = e[-1]
            if not 0 <= value < F.p:
                raise FormatError(f"residue {value} not reduced mod {F.p}", loc)
        c = ti.flatten(*idx[: len(ins)]) if ins else 0
        r = to.flatten(*idx[len(ins) :]) if outs else 0
        out[r, c] = F.element(value)
    return LinMap(F, out)


def _parse_field(raw, where="field") -> FieldSpec:
    if not isinstance(raw, dict):
        raise FormatError("field must be an object", where)
    kind = raw.get("kind")
    if kind == "Q":
        return FieldSpec.rationals()
    if kind == "Fp":
        p = raw.get("p")
        if not _is_int(p):
            raise FormatError(f"Fp needs an integer p, got {p!r}", f"{where}.p")
        try:
            return FieldSpec.prime(p)
        except ValueError as exc:
            raise FormatError(str(exc), f"{where}.p") from None
    raise FormatError(f"unknown field kind {kind!r}", f"{where}.kind")


def _algebra(F, obj, where) -> AlgebraData:
    n = _dim(obj, where)
    mult = decode_map(F, _require(obj, "mult", where), (n, n), (n,), f"{where}.mult")
    unit = decode_map(F, _require(obj, "unit", where), (), (n,), f"{where}.unit")
    return AlgebraData(F, n, mult, unit)


def _ref(obj, key, where, objects, kind, raw_objects):
    name = _require(obj, key, where)
    if not isinstance(name, str) or name not in raw_objects:
        raise FormatError(f"unknown reference {name!r}", f"{where}.{key}")
    if raw_objects[name].get("type") != kind:
        raise FormatError(f"{name!r} is not a {kind}", f"{where}.{key}")
    return name, objects[name]


def load_document(data) -> Document:
    """Parse and validate a document; raises :class:`FormatError` with a location."""
    if not isinstance(data, dict):
        raise FormatError("top level must be an object", "$")
    version = _require(data, "format_version", "$")
    if str(version) != FORMAT_VERSION:
        raise FormatError(f"unsupported format_version {version!r}", "format_version")
    F = _parse_field(_require(data, "field", "$"))
    raw_objects = _require(data, "objects", "$")
    if not isinstance(raw_objects, dict) or not raw_objects:
        raise FormatError("objects must be a nonempty object", "objects")
    for name, obj in raw_objects.items():
        if not isinstance(obj, dict):
            raise FormatError("object entries must be objects", f"objects.{name}")
        if obj.get("type") not in KINDS:
            raise FormatError(f"type must be one of {KINDS}, got {obj.get('type')!r}", f"objects.{name}.type")
    doc = Document(F)
    # hopf algebras first, then what refers to them, then torsors
    rank = {"hopf": 0, "comodule_algebra": 1, "yd_module": 1, "torsor": 2}
    for name in sorted(raw_objects, key=lambda k: rank[raw_objects[k]["type"]]):
        obj, where = raw_objects[name], f"objects.{name}"
        kind = obj["type"]
        if kind == "hopf":
            doc.objects[name] = _load_hopf(F, obj, where)
        elif kind == "comodule_algebra":
            _, H = _ref(obj, "hopf", where, doc.objects, "hopf", raw_objects)
            if obj.get("regular", False) is True:
                extra = set(obj) & {"dim", "mult", "unit", "coaction"}
                if extra:
                    raise FormatError(f"regular objects carry no {sorted(extra)}", where)
                d = ComoduleAlgebraData.regular_of(H)
            else:
                T = _algebra(F, obj, where)
                rho = decode_map(F, _require(obj, "coaction", where), (T.dim,), (T.dim, H.dim), f"{where}.coaction")
                d = ComoduleAlgebraData(T, H, rho)
            doc.objects[name] = d
            if "beta" in obj or "gamma" in obj:
                n, m = d.T.dim, H.dim
                doc.stored[name] = {
                    "beta": decode_map(F, _require(obj, "beta", where), (n, n), (n, m), f"{where}.beta"),
                    "gamma": decode_map(F, _require(obj, "gamma", where), (m,), (n, n), f"{where}.gamma"),
                }
        elif kind == "yd_module":
            _, H = _ref(obj, "hopf", where, doc.objects, "hopf", raw_objects)
            d = _dim(obj, where)
            action = decode_map(F, _require(obj, "action", where), (d, H.dim), (d,), f"{where}.action")
            coaction = decode_map(F, _require(obj, "coaction", where), (d,), (d, H.dim), f"{where}.coaction")
            doc.objects[name] = YDModuleData(d, H, action, coaction)
        else:
            T = _algebra(F, obj, where)
            n = T.dim
            mu = decode_map(F, _require(obj, "mu", where), (n,), (n, n, n), f"{where}.mu")
            theta = decode_map(F, _require(obj, "theta", where), (n,), (n,), f"{where}.theta")
            doc.objects[name] = TorsorData(T, mu, theta)
            if "galois" in obj:
                src, d = _ref(obj, "galois", where, doc.objects, "comodule_algebra", raw_objects)
                if d.T.dim != n:
                    raise FormatError(f"torsor has dim {n} but {src!r} has dim {d.T.dim}", f"{where}.galois")
                doc.sources[name] = src
    default = data.get("default")
    if default is not None:
        if default not in doc.objects:
            raise FormatError(f"default {default!r} is not an object", "default")
        doc.default = default
    # keep file order for listing
    doc.objects = {k: doc.objects[k] for k in raw_objects}
    return doc


def _load_hopf(F, obj, where) -> HopfData:
    alg = _algebra(F, obj, where)
    n = alg.dim
    comult = decode_map(F, _require(obj, "comult", where), (n,), (n, n), f"{where}.comult")
    counit = decode_map(F, _require(obj, "counit", where), (n,), (), f"{where}.counit")
    bi = BialgebraData(alg, CoalgebraData(F, n, comult, counit))
    if "antipode" in obj:
        s = decode_map(F, obj["antipode"], (n,), (n,), f"{where}.antipode")
    else:
        s = solve_antipode(bi)
    return HopfData(alg, bi.coalgebra, s)


def loads(text: str) -> Document:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"invalid JSON: {exc.msg}", f"line {exc.lineno} column {exc.colno}") from None
    return load_document(data)


def load_path(path: str | Path) -> tuple[Document, str]:
    """The document and the sha256 of the file bytes."""
    raw = Path(path).read_bytes()
    try:
        text = raw.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise FormatError(f"not UTF-8: {exc}", str(path)) from None
    return loads(text), digest(raw)
