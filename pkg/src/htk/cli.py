"""``htk``: check structure constants, derive torsors, run the full verification.

Exit codes: 0 when every verdict passes, 1 on a mathematical failure, 2 on
input or usage errors.
"""

from __future__ import annotations

import argparse
import difflib
import json
import sys
from pathlib import Path

from htk import __version__
from htk.builtins import BUILTINS, load_builtin, names
from htk.comodule import ComoduleAlgebraData, galois_status, make_galois
from htk.errors import FormatError, HtkError, NoAntipode
from htk.exactlin import check_maps_equal
from htk.hopfcore import HopfData
from htk.report import Report, Verdict
from htk.serialize import Document, canonical_bytes, digest, dump_document, load_path, to_json
from htk.torsor import TorsorData, check_torsor_axioms, derive_torsor
from htk.verify import check_comodule_full, check_object, check_torsor_full, verify_paper

EXIT_PASS, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    """Bad usage or unreadable input; maps to exit code 2."""


def _suggest(name: str, choices) -> str:
    close = difflib.get_close_matches(name, list(choices), n=1)
    return f" (did you mean {close[0]!r}?)" if close else ""


def _load(args) -> tuple[Document, str, str]:
    """Document, source description and input digest."""
    if args.builtin and args.file:
        raise InputError("give either --builtin or a file, not both")
    if args.builtin:
        if args.builtin not in BUILTINS:
            raise InputError(f"unknown builtin {args.builtin!r}{_suggest(args.builtin, BUILTINS)}")
        doc = load_builtin(args.builtin)
        return doc, f"builtin:{args.builtin}", digest(canonical_bytes(dump_document(doc)))
    if not args.file:
        raise InputError("no input: give --builtin NAME or a file")
    try:
        doc, dg = load_path(args.file)
    except OSError as exc:
        raise InputError(f"cannot read {args.file}: {exc.strerror or exc}") from None
    except FormatError as exc:
        raise InputError(f"{args.file}: {exc}") from None
    return doc, args.file, dg


def _pick(doc: Document, name: str | None):
    try:
        return doc.pick(name)
    except KeyError:
        raise InputError(f"unknown object {name!r}{_suggest(name, doc.objects)}") from None
    except FormatError as exc:
        raise InputError(str(exc)) from None


def _stored_galois(doc: Document, name: str, d: ComoduleAlgebraData) -> Report:
    """Compare stored beta / gamma with freshly computed ones."""
    rep = Report()
    if name not in doc.stored:
        return rep
    n, m = d.T.dim, d.H.dim
    try:
        g = make_galois(d, verify=False)
    except HtkError as exc:
        rep.add(Verdict("galois.stored", False, detail=f"{type(exc).__name__}: {exc}"))
        return rep
    rep.add(check_maps_equal("galois.stored_beta", doc.stored[name]["beta"], g.beta, (n, n), (n, m)))
    rep.add(check_maps_equal("galois.stored_gamma", doc.stored[name]["gamma"], g.gamma, (m,), (n, n)))
    return rep


def _galois_source(doc: Document, name: str, obj) -> ComoduleAlgebraData:
    if isinstance(obj, ComoduleAlgebraData):
        return obj
    if isinstance(obj, HopfData):
        return ComoduleAlgebraData.regular_of(obj)
    if isinstance(obj, TorsorData) and name in doc.sources:
        return doc.objects[doc.sources[name]]
    raise InputError(f"object {name!r} ({doc.kind(name)}) is not a comodule algebra")


# -- commands ------------------------------------------------------------------------


def cmd_check(doc: Document, name: str, obj) -> tuple[Report, dict | None]:
    if isinstance(obj, TorsorData):
        src = doc.objects.get(doc.sources.get(name))
        return check_torsor_full(obj, src), None
    rep = check_object(obj)
    if isinstance(obj, ComoduleAlgebraData):
        rep.extend(_stored_galois(doc, name, obj))
    return rep, None


def cmd_derive_torsor(doc: Document, name: str, obj) -> tuple[Report, dict | None]:
    if not isinstance(obj, ComoduleAlgebraData):
        raise InputError(f"object {name!r} ({doc.kind(name)}) is not a comodule algebra")
    rep = check_comodule_full(obj)
    if not rep.passed:
        return rep, None
    status = galois_status(obj)
    rep.extend(status)
    if not status.passed:
        return rep, None
    try:
        g = make_galois(obj)
        t = derive_torsor(g, verify=False)
    except HtkError as exc:
        rep.add(Verdict("torsor.derive", False, detail=f"{type(exc).__name__}: {exc}"))
        return rep, None
    rep.extend(check_torsor_axioms(t))
    H = obj.H
    out = Document(obj.field, {}, f"{name}_torsor")
    hname = next((k for k, v in doc.objects.items() if v is H), "H")
    out.objects[hname] = H
    out.objects[name] = obj
    out.objects[f"{name}_torsor"] = t
    out.stored[name] = {"beta": g.beta, "gamma": g.gamma}
    out.sources[f"{name}_torsor"] = name
    return rep, dump_document(out)


def cmd_verify_paper(doc: Document, name: str, obj) -> tuple[Report, dict | None]:
    return verify_paper(_galois_source(doc, name, obj)), None


COMMANDS = {"check": cmd_check, "derive-torsor": cmd_derive_torsor, "verify-paper": cmd_verify_paper}


# -- output --------------------------------------------------------------------------


def report_document(command: str, source: str, dg: str, name: str, doc: Document | None, rep: Report) -> dict:
    n_fail = len(rep.failures())
    return {
        "tool": "htk",
        "version": __version__,
        "command": command,
        "input": {"source": source, "sha256": dg},
        "object": name,
        "field": doc.field.name if doc is not None else "unknown",
        "passed": rep.passed,
        "summary": {"total": len(rep), "passed": len(rep) - n_fail, "failed": n_fail},
        "verdicts": [v.to_dict() for v in rep],
    }


def format_text(rd: dict, rep: Report) -> str:
    head = [
        f"htk {rd['version']} {rd['command']}",
        f"input {rd['input']['source']} sha256:{rd['input']['sha256']}",
        f"object {rd['object']} over {rd['field']}",
    ]
    rep.title = ""
    return "\n".join(head + [rep.format_text()])


def _emit(text: str, out: str | None):
    if out:
        Path(out).write_text(text + "\n", encoding="utf-8")
    else:
        sys.stdout.write(text + "\n")


def _run_command(args) -> int:
    try:
        doc, source, dg = _load(args)
    except NoAntipode as exc:
        # a hopf object without antipode whose bialgebra has none: a mathematical failure
        rep = Report("", [Verdict("antipode.exists", False, detail=str(exc))])
        rd = report_document(args.command, args.builtin or args.file, "", args.object or "", None, rep)
        _emit(json.dumps(rd, indent=1) if args.json else format_text(rd, rep), args.out)
        return EXIT_FAIL
    name, obj = _pick(doc, args.object)
    rep, produced = COMMANDS[args.command](doc, name, obj)
    rd = report_document(args.command, source, dg, name, doc, rep)
    if args.command == "derive-torsor":
        if produced is not None and args.out:
            _emit(to_json(produced), args.out)
        elif produced is not None and args.json:
            rd["document"] = produced
        _emit(json.dumps(rd, indent=1) if args.json else format_text(rd, rep), None)
    else:
        _emit(json.dumps(rd, indent=1) if args.json else format_text(rd, rep), args.out)
    return EXIT_PASS if rep.passed else EXIT_FAIL


def _run_list(args) -> int:
    chosen = [n for n in names() if not args.filter or args.filter in n]
    if args.json:
        _emit(json.dumps([{"name": n, "description": BUILTINS[n].description} for n in chosen], indent=1), args.out)
    else:
        width = max((len(n) for n in chosen), default=0)
        _emit("\n".join(f"{n:<{width}}  {BUILTINS[n].description}" for n in chosen), args.out)
    return EXIT_PASS


def _run_export(args) -> int:
    doc, _, _ = _load(args)
    _emit(to_json(dump_document(doc)), args.out)
    return EXIT_PASS


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="htk", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"htk {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def source_args(sp, with_object=True):
        sp.add_argument("file", nargs="?", help="structure-constant JSON file")
        sp.add_argument("--builtin", metavar="NAME", help="use a built-in example (see list-builtins)")
        if with_object:
            sp.add_argument("--object", metavar="NAME", help="object inside the document")
        sp.add_argument("--json", action="store_true", help="machine-readable output")
        sp.add_argument("--out", metavar="FILE", help="write output to FILE")

    source_args(sub.add_parser("check", help="check the axioms of one object"))
    source_args(sub.add_parser("derive-torsor", help="build the quantum torsor of a Galois object"))
    source_args(sub.add_parser("verify-paper", help="run every identity on a Galois object"))
    lb = sub.add_parser("list-builtins", help="list built-in examples")
    lb.add_argument("filter", nargs="?", default="", help="substring filter")
    lb.add_argument("--json", action="store_true")
    lb.add_argument("--out", metavar="FILE")
    source_args(sub.add_parser("export", help="write a built-in or a file as canonical JSON"), with_object=False)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code not in (0, None) else EXIT_PASS
    try:
        if args.command == "list-builtins":
            return _run_list(args)
        if args.command == "export":
            return _run_export(args)
        return _run_command(args)
    except InputError as exc:
        print(f"htk: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"htk: error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
