"""Command-line front end.

Exit status: 0 when every verdict passes (or a construction certifies),
1 when some verdict fails, 2 for usage, parse, structural or kind errors.
``--format machine`` prints one JSON record per verdict.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import replace
from pathlib import Path
from typing import Sequence

from .core import GradingError, check_graded_axioms, check_derived_identities
from .crossed import (ActionInvalid, CertificationFailed, CrossedGcwhq, certify, check_crossing, mirror)
from .exactlin import DimensionError, NotInvertible
from .groups import GroupError
from .instances import BUILDERS, build, standard_pairs
from .report import CheckReport
from .serialize import (FormatError, KindMismatch, action_to_json, braid_to_json, crossed_to_json,
                        diff_json, load_structure, read_json, whq_to_json, write_json, yd_to_json)
from .whq import StructureError, check_base_whq
from .yd import (NotAModule, YdInvalid, braiding, braiding_inverse, check_braided_crossed_laws,
                 check_jr_equivalence, check_yd_module, check_yd_weak_quasimodule, conjugate_yd, qybe_map,
                 tensor_yd, validate, yd_adjoint)

__all__ = ["main", "build_parser", "render"]


class UsageError(Exception):
    pass


def render(report: CheckReport, fmt: str) -> str:
    if fmt == "machine":
        return "".join(json.dumps(rec, sort_keys=True, separators=(",", ":")) + "\n"
                       for rec in report.machine_lines())
    return report.format_text()


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _finish(report: CheckReport, args) -> int:
    _emit(render(report, args.format), args.output)
    return 0 if report.passed else 1


def _load(path: str, *kinds: str):
    kind, obj = load_structure(path)
    if kind not in kinds:
        raise KindMismatch(f"{path}: kind {kind!r}, expected {' or '.join(kinds)}")
    return kind, obj


def _load_ambient(path: str | os.PathLike) -> CrossedGcwhq:
    _, H = _load(str(path), "crossed")
    return certify(H)


def _load_module(path: str, need_valid: bool = True):
    _, (V, amb_path) = _load(path, "yd")
    V = replace(V, ambient=certify(V.ambient))
    if need_valid:
        V = validate(V)
    return V, Path(amb_path)


def _rel(target: Path, out: str) -> str:
    return os.path.relpath(os.path.abspath(target), os.path.dirname(os.path.abspath(out)))


def _require_output(args) -> str:
    if not args.output:
        raise UsageError(f"{args.cmd} needs -o OUTPUT")
    return args.output


def _same_ambient_paths(*mods) -> None:
    paths = {os.path.abspath(p) for _, p in mods}
    if len(paths) != 1:
        raise UsageError("modules must share the same ambient file")


# commands ---------------------------------------------------------------------------

def cmd_check_base(args) -> int:
    _, B = _load(args.file, "whq")
    return _finish(check_base_whq(B), args)


def cmd_check_gcwhq(args) -> int:
    kind, H = _load(args.file, "gcwhq", "crossed")
    base = H.base if kind == "crossed" else H
    axioms = check_graded_axioms(base)
    derived = check_derived_identities(base, axioms)
    report = CheckReport(list(axioms.verdicts), base.group, notes=list(axioms.notes)).extend(derived).sorted()
    report.conditional = derived.conditional
    return _finish(report, args)


def cmd_check_crossed(args) -> int:
    _, H = _load(args.file, "crossed")
    axioms = check_graded_axioms(H.base)
    derived = check_derived_identities(H.base, axioms)
    cross = check_crossing(H.base, H.crossing)
    report = CheckReport(list(axioms.verdicts), H.group).extend(derived).extend(cross).sorted()
    report.conditional = derived.conditional
    return _finish(report, args)


def _write_construction(args, H: CrossedGcwhq) -> int:
    write_json(crossed_to_json(H), _require_output(args))
    _emit(render(H.report, args.format), args.report)
    return 0


def cmd_mirror(args) -> int:
    _require_output(args)
    _, H = _load(args.file, "crossed")
    return _write_construction(args, mirror(certify(H)))


def cmd_build(args) -> int:
    _require_output(args)
    _, B = _load(args.base, "whq")
    _, (G, action) = _load(args.action, "action")
    return _write_construction(args, build(args.kind, B, G, action))


def cmd_check_yd(args) -> int:
    V, _ = _load_module(args.file, need_valid=False)
    report = check_yd_weak_quasimodule(V) if args.quasi else check_yd_module(V)
    if args.jr:
        report = CheckReport(list(report.verdicts), report.group, notes=list(report.notes))
        eq = check_jr_equivalence(V)
        seen = {(v.label, v.elements) for v in report.verdicts}
        report.verdicts.extend(v for v in eq.verdicts if (v.label, v.elements) not in seen)
        report = report.sorted()
    return _finish(report, args)


def cmd_yd_adjoint(args) -> int:
    out = _require_output(args)
    A = _load_ambient(args.ambient)
    try:
        p = A.group.index(args.grade)
    except (KeyError, ValueError):
        raise UsageError(f"unknown grade {args.grade!r}") from None
    V = yd_adjoint(A, p)
    write_json(yd_to_json(V, _rel(Path(args.ambient), out)), out)
    _emit(render(V.report, args.format), args.report)
    return 0


def cmd_tensor(args) -> int:
    out = _require_output(args)
    a, b = _load_module(args.first), _load_module(args.second)
    _same_ambient_paths(a, b)
    T = tensor_yd(a[0], b[0], semantics=args.tensor_semantics)
    write_json(yd_to_json(T, _rel(a[1], out)), out)
    _emit(render(T.report, args.format), args.report)
    return 0 if T.report.passed else 1


def cmd_conjugate(args) -> int:
    out = _require_output(args)
    V, amb = _load_module(args.file)
    try:
        q = V.group.index(args.by)
    except (KeyError, ValueError):
        raise UsageError(f"unknown element {args.by!r}") from None
    W = conjugate_yd(V, q)
    write_json(yd_to_json(W, _rel(amb, out)), out)
    _emit(render(W.report, args.format), args.report)
    return 0


def cmd_braiding(args) -> int:
    out = _require_output(args)
    a, b = _load_module(args.first), _load_module(args.second)
    _same_ambient_paths(a, b)
    braiding_inverse(a[0], b[0])  # asserts both composites are identities
    write_json(braid_to_json(braiding(a[0], b[0])), out)
    return 0


def cmd_check_laws(args) -> int:
    mods = [_load_module(f) for f in (args.first, args.second, args.third)]
    _same_ambient_paths(*mods)
    return _finish(check_braided_crossed_laws(*(m for m, _ in mods)), args)


def cmd_qybe(args) -> int:
    V, _ = _load_module(args.file)
    _, report = qybe_map(V)
    return _finish(report, args)


def cmd_diff(args) -> int:
    diffs = diff_json(read_json(args.first), read_json(args.second))
    if args.format == "machine":
        text = "".join(json.dumps({"field": f, "index": i, "a": x, "b": y}, sort_keys=True,
                                  separators=(",", ":")) + "\n" for f, i, x, y in diffs)
    else:
        text = "".join(f"{f} [{i}]: {x!r} != {y!r}\n" for f, i, x, y in diffs)
        text += f"{len(diffs)} differences\n"
    _emit(text, args.output)
    return 0 if not diffs else 1


def cmd_example(args) -> int:
    pairs = {name: (B, G, a) for name, B, G, a in standard_pairs()}
    if args.name not in pairs:
        raise UsageError(f"unknown example {args.name!r}; choose from {sorted(pairs)}")
    B, G, action = pairs[args.name]
    d = Path(args.directory)
    d.mkdir(parents=True, exist_ok=True)
    write_json(whq_to_json(B), d / "base.json")
    write_json(action_to_json(G, action), d / "action.json")
    for kind in sorted(BUILDERS):
        write_json(crossed_to_json(build(kind, B, G, action)), d / f"{kind}.json")
    A = certify(build("hg", B, G, action))
    for p in G:
        try:
            V = yd_adjoint(A, p)
        except YdInvalid:
            continue
        write_json(yd_to_json(V, "hg.json"), d / f"adjoint-{G.label(p)}.json")
    sys.stdout.write("".join(f"{p.name}\n" for p in sorted(d.glob("*.json"))))
    return 0


# parser -------------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["text", "machine"], default="text", help="report format")
    common.add_argument("-o", "--output", help="output file (structure for constructions, report for checks)")
    common.add_argument("--report", help="write the report of a construction to this file")

    parser = argparse.ArgumentParser(prog="gcwhq", description="Exact checks for graded weak Hopf quasigroups.")
    sub = parser.add_subparsers(dest="cmd", metavar="COMMAND")
    sub.required = True

    def add(name, func, help_):
        p = sub.add_parser(name, parents=[common], help=help_)
        p.set_defaults(func=func)
        return p

    add("check-base", cmd_check_base, "check an ungraded structure").add_argument("file")
    add("check-gcwhq", cmd_check_gcwhq, "check the graded axioms and derived identities").add_argument("file")
    add("check-crossed", cmd_check_crossed, "check graded axioms plus the crossing").add_argument("file")
    add("mirror", cmd_mirror, "write the certified mirror structure").add_argument("file")
    p = add("build", cmd_build, "build a crossed structure from a base and a group action")
    p.add_argument("kind", choices=sorted(BUILDERS))
    p.add_argument("base")
    p.add_argument("action")
    p = add("check-yd", cmd_check_yd, "check a Yetter-Drinfeld module file")
    p.add_argument("file")
    p.add_argument("--quasi", action="store_true", help="omit the action associativity check")
    p.add_argument("--jr", action="store_true", help="add the JR1 / JR2+JR3 equivalence verdicts")
    p = add("yd-adjoint", cmd_yd_adjoint, "write the adjoint module of one component")
    p.add_argument("ambient")
    p.add_argument("--grade", required=True)
    p = add("tensor", cmd_tensor, "tensor product of two modules")
    p.add_argument("first")
    p.add_argument("second")
    p.add_argument("--tensor-semantics", choices=["truncated", "full"], default="truncated")
    p = add("conjugate", cmd_conjugate, "conjugate a module by a group element")
    p.add_argument("file")
    p.add_argument("--by", required=True)
    p = add("braiding", cmd_braiding, "export the braiding of two modules")
    p.add_argument("first")
    p.add_argument("second")
    p = add("check-laws", cmd_check_laws, "braided crossed category laws on three modules")
    p.add_argument("first")
    p.add_argument("second")
    p.add_argument("third")
    add("qybe", cmd_qybe, "braid relation of the module's Yang-Baxter map").add_argument("file")
    p = add("diff", cmd_diff, "entry-wise difference of two structure files")
    p.add_argument("first")
    p.add_argument("second")
    p = add("example", cmd_example, "write the stock example files")
    p.add_argument("name")
    p.add_argument("-d", "--directory", default=".")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else 0
    try:
        return args.func(args)
    except CertificationFailed as exc:
        sys.stdout.write(render(exc.report, args.format))
        sys.stderr.write(f"error: {exc}\n")
        return 1
    except (FormatError, KindMismatch, StructureError, GradingError, GroupError, ActionInvalid,
            DimensionError, NotInvertible, NotAModule, UsageError, OSError, ValueError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
