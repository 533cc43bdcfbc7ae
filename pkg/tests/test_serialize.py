import copy
import json
from fractions import Fraction

import pytest
from conftest import Q, galois, torsor
from hypothesis import given
from hypothesis import strategies as st

from htk.builtins import load_builtin, names
from htk.constructions import monoid_bialgebra
from htk.errors import FormatError, NoAntipode
from htk.exactlin import LinMap
from htk.field import FieldSpec
from htk.serialize import (
    Document,
    canonical_bytes,
    decode_map,
    digest,
    dump_document,
    dumps,
    encode_map,
    load_document,
    load_path,
    loads,
    to_json,
)
from htk.ydribbon import mu_action

F5 = FieldSpec.prime(5)


def same_object(a, b):
    if hasattr(a, "antipode"):
        return a == b
    return all(
        getattr(a, k) == getattr(b, k)
        for k in ("T", "mu", "theta", "rho", "action", "coaction")
        if hasattr(a, k)
    )


@pytest.mark.parametrize("name", names())
def test_builtin_roundtrip(name):
    doc = load_builtin(name)
    data = dump_document(doc)
    back = loads(dumps(doc))
    assert dump_document(back) == data
    assert list(back.objects) == list(doc.objects)
    for k in doc.objects:
        assert same_object(doc.objects[k], back.objects[k])


@given(st.integers(1, 3), st.integers(1, 3), st.data(), st.sampled_from([Q, F5]))
def test_map_roundtrip(a, b, data, F):
    vals = st.fractions(-5, 5, max_denominator=7) if F is Q else st.integers(0, 4)
    rows = data.draw(st.lists(st.lists(vals, min_size=a * b, max_size=a * b), min_size=b, max_size=b))
    f = LinMap(F, rows)
    raw = encode_map(f, (a, b), (b,))
    assert decode_map(F, raw, (a, b), (b,), "m") == f
    # zeros are never stored
    assert all(e[-2] != 0 if F is Q else e[-1] != 0 for e in raw)


def test_torsor_and_yd_roundtrip():
    g = galois("sweedler_regular")
    t = torsor("sweedler_regular")
    m = mu_action(g)
    doc = Document(Q, {"H": g.H, "T": g.base, "tor": t, "yd": m}, "tor", sources={"tor": "T"})
    back = loads(dumps(doc))
    assert back.sources == {"tor": "T"}
    assert back.kind("yd") == "yd_module" and back.kind("tor") == "torsor"
    assert back.objects["tor"].mu == t.mu and back.objects["yd"].action == m.action


def test_stored_galois_roundtrip():
    g = galois("twisted_klein")
    doc = Document(Q, {"H": g.H, "T": g.base}, "T", stored={"T": {"beta": g.beta, "gamma": g.gamma}})
    back = loads(dumps(doc))
    assert back.stored["T"]["gamma"] == g.gamma


def test_antipode_solved_when_missing():
    data = dump_document(load_builtin("sweedler_h4"))
    del data["objects"]["H"]["antipode"]
    doc = load_document(data)
    assert doc.objects["H"].S == load_builtin("sweedler_h4").objects["H"].S


def test_missing_antipode_that_does_not_exist():
    b = monoid_bialgebra([[0, 1], [1, 1]], 0, Q)
    data = {
        "format_version": "1",
        "field": {"kind": "Q"},
        "objects": {
            "H": {
                "type": "hopf", "dim": 2,
                "mult": encode_map(b.mult, (2, 2), (2,)),
                "unit": encode_map(b.unit, (), (2,)),
                "comult": encode_map(b.comult, (2,), (2, 2)),
                "counit": encode_map(b.counit, (2,), ()),
            }
        },
    }
    with pytest.raises(NoAntipode):
        load_document(data)


def test_digest_is_stable():
    a = canonical_bytes(dump_document(load_builtin("trivial_c2")))
    b = canonical_bytes(dump_document(load_builtin("trivial_c2")))
    assert digest(a) == digest(b) and len(digest(a)) == 64
    assert digest(a) != digest(canonical_bytes(dump_document(load_builtin("trivial_c2_f5"))))


def test_int_lists_on_one_line():
    text = to_json({"m": [[0, 1, 2, 1, 1]]})
    assert "[0, 1, 2, 1, 1]" in text


def test_load_path(tmp_path):
    p = tmp_path / "c2.json"
    p.write_text(dumps(load_builtin("c2")))
    doc, dg = load_path(p)
    assert doc.kind("H") == "hopf" and len(dg) == 64


BASE = dump_document(load_builtin("trivial_c2"))


def mutated(fn):
    data = copy.deepcopy(BASE)
    fn(data)
    return data


@pytest.mark.parametrize(
    "mutate, where",
    [
        (lambda d: d.update(format_version="7"), "format_version"),
        (lambda d: d.update(field={"kind": "R"}), "field.kind"),
        (lambda d: d.update(field={"kind": "Fp", "p": 6}), "field.p"),
        (lambda d: d.update(field={"kind": "Fp", "p": "5"}), "field.p"),
        (lambda d: d.pop("objects"), "$"),
        (lambda d: d["objects"]["H"].pop("mult"), "objects.H"),
        (lambda d: d["objects"]["H"]["mult"].append([0, 2, 0, 1, 1]), "objects.H.mult[4]"),
        (lambda d: d["objects"]["H"]["mult"].append([0, 0, 0, 1, 1]), "objects.H.mult[4]"),
        (lambda d: d["objects"]["H"]["mult"].__setitem__(0, [0, 0, 0, 1, 0]), "objects.H.mult[0]"),
        (lambda d: d["objects"]["H"]["mult"].__setitem__(0, [0, 0, 0, 1]), "objects.H.mult[0]"),
        (lambda d: d["objects"]["H"]["mult"].__setitem__(0, [0, 0, 0, 1.5, 1]), "objects.H.mult[0]"),
        (lambda d: d["objects"]["H"].update(dim=0), "objects.H"),
        (lambda d: d["objects"]["H"].update(type="group"), "objects.H.type"),
        (lambda d: d["objects"]["T"].update(hopf="K"), "objects.T.hopf"),
        (lambda d: d["objects"]["T"].update(dim=2), "objects.T"),
        (lambda d: d.update(default="X"), "default"),
    ],
)
def test_format_errors_carry_location(mutate, where):
    with pytest.raises(FormatError) as info:
        load_document(mutated(mutate))
    assert info.value.location.startswith(where), info.value.location


def test_residue_range_checked():
    data = dump_document(load_builtin("trivial_c2_f5"))
    data["objects"]["H"]["mult"][0] = [0, 0, 0, 5]
    with pytest.raises(FormatError) as info:
        load_document(data)
    assert info.value.location == "objects.H.mult[0]"


def test_invalid_json_location():
    with pytest.raises(FormatError) as info:
        loads('{"format_version": "1",\n x}')
    assert info.value.location == "line 2 column 2"


def test_rational_values_preserved():
    f = LinMap(Q, [[Fraction(-3, 7)]])
    raw = encode_map(f, (1,), (1,))
    assert raw == [[0, 0, -3, 7]]
    assert json.loads(json.dumps(raw)) == raw


def test_pick():
    doc = load_builtin("trivial_c2")
    assert doc.pick(None)[0] == "T"
    assert doc.pick("H")[0] == "H"
    with pytest.raises(KeyError):
        doc.pick("nope")
    doc.default = None
    with pytest.raises(FormatError):
        doc.pick(None)
