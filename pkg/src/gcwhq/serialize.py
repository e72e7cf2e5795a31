"""JSON file formats for every structure kind, and label-respecting diffs.

Rationals are strings (``"p/q"`` or ``"p"``).  Matrices are row-major arrays
of arrays; vectors (units, counits) are flat arrays.  Group elements are
referred to by label everywhere; ``"p,q"`` keys index comultiplication
components and ``"p|q"`` keys index crossing components.  Every file has a
``"kind"`` field: ``group``, ``whq``, ``gcwhq``, ``crossed``, ``action``,
``yd`` or ``braid``.
"""
from __future__ import annotations

import json
import os
from itertools import product
from pathlib import Path
from typing import Any

from .core import GcwhqData
from .crossed import CrossedGcwhq, CrossingData
from .exactlin import Mat, fmt_rational, parse_rational
from .groups import FiniteGroup, make_from_table
from .whq import StructureError, WhqData

__all__ = [
    "FormatError",
    "KindMismatch",
    "dumps",
    "read_json",
    "write_json",
    "group_to_json",
    "group_from_json",
    "whq_to_json",
    "whq_from_json",
    "gcwhq_to_json",
    "gcwhq_from_json",
    "crossed_to_json",
    "crossed_from_json",
    "action_to_json",
    "action_from_json",
    "yd_to_json",
    "yd_from_json",
    "braid_to_json",
    "diff_json",
    "diff_structures",
    "load_structure",
]


class FormatError(ValueError):
    """A file does not parse as the expected structure."""


class KindMismatch(FormatError):
    pass


def dumps(obj: Any) -> str:
    """Canonical text: sorted keys, fixed indentation, trailing newline."""
    return json.dumps(obj, sort_keys=True, indent=1, ensure_ascii=False) + "\n"


def write_json(obj: Any, path: str | os.PathLike) -> None:
    Path(path).write_text(dumps(obj), encoding="utf-8")


def read_json(path: str | os.PathLike) -> dict:
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: not valid JSON ({exc})") from None
    if not isinstance(data, dict):
        raise FormatError(f"{path}: top level must be an object")
    return data


# matrices -----------------------------------------------------------------------

def mat_to_json(m: Mat) -> list[list[str]]:
    return m.to_strings()


def _rat(x: Any, where: str):
    if not isinstance(x, str):
        raise FormatError(f"{where}: rationals must be strings, got {x!r}")
    try:
        return parse_rational(x)
    except (ValueError, ZeroDivisionError) as exc:
        raise FormatError(f"{where}: {exc}") from None


def mat_from_json(x: Any, where: str, shape: tuple[int, int] | None = None) -> Mat:
    if not isinstance(x, list) or not all(isinstance(r, list) for r in x):
        raise FormatError(f"{where}: matrix must be an array of arrays")
    if x and len({len(r) for r in x}) != 1:
        raise FormatError(f"{where}: ragged matrix")
    rows = [[_rat(v, where) for v in r] for r in x]
    m = Mat(rows) if rows and rows[0] else Mat.zeros(len(rows), 0)
    if shape is not None and m.shape != shape:
        raise FormatError(f"{where}: shape {m.shape}, expected {shape}")
    return m


def vec_to_json(m: Mat) -> list[str]:
    return [fmt_rational(x) for x in m.entries]


def vec_from_json(x: Any, where: str, n: int | None = None, row: bool = False) -> Mat:
    if not isinstance(x, list):
        raise FormatError(f"{where}: vector must be an array")
    vals = [_rat(v, where) for v in x]
    if n is not None and len(vals) != n:
        raise FormatError(f"{where}: length {len(vals)}, expected {n}")
    return Mat.row(vals) if row else Mat.column(vals)


def _kind(data: dict, *kinds: str) -> str:
    k = data.get("kind")
    if k not in kinds:
        raise KindMismatch(f"expected kind {' or '.join(kinds)}, got {k!r}")
    return k


def _field(data: dict, name: str, where: str = "") -> Any:
    if name not in data:
        raise FormatError(f"{where}missing field {name!r}")
    return data[name]


# groups -------------------------------------------------------------------------

def group_to_json(G: FiniteGroup) -> dict:
    for lab in G.elements:
        if "," in lab or "|" in lab:
            raise FormatError(f"element label {lab!r} may not contain ',' or '|'")
    return {"elements": list(G.elements), "table": [[G.label(G.mul(a, b)) for b in G] for a in G]}


def group_from_json(x: Any) -> FiniteGroup:
    if not isinstance(x, dict):
        raise FormatError("group must be an object")
    els = _field(x, "elements", "group: ")
    table = _field(x, "table", "group: ")
    if not isinstance(els, list) or not all(isinstance(e, str) for e in els):
        raise FormatError("group elements must be strings")
    try:
        return make_from_table(els, table)
    except (ValueError, TypeError, KeyError, IndexError) as exc:
        raise FormatError(f"group: {exc}") from None


def _label_map(G: FiniteGroup, x: Any, where: str) -> dict[int, Any]:
    if not isinstance(x, dict):
        raise FormatError(f"{where}: must be an object keyed by element label")
    out = {}
    for lab, v in x.items():
        try:
            out[G.index(lab)] = v
        except (KeyError, ValueError):
            raise FormatError(f"{where}: unknown element {lab!r}") from None
    missing = [G.label(g) for g in G if g not in out]
    if missing:
        raise FormatError(f"{where}: missing elements {missing}")
    return out


def _pair_key(G: FiniteGroup, key: str, sep: str, where: str) -> tuple[int, int]:
    parts = key.split(sep)
    if len(parts) != 2:
        raise FormatError(f"{where}: bad key {key!r}")
    try:
        return G.index(parts[0]), G.index(parts[1])
    except (KeyError, ValueError):
        raise FormatError(f"{where}: unknown element in key {key!r}") from None


# whq ----------------------------------------------------------------------------

def whq_to_json(B: WhqData) -> dict:
    return {
        "kind": "whq",
        "dim": B.dim,
        "unit": vec_to_json(B.unit),
        "mul": mat_to_json(B.mul),
        "comul": mat_to_json(B.comul),
        "counit": vec_to_json(B.counit),
        "antipode": mat_to_json(B.antipode),
    }


def whq_from_json(data: dict) -> WhqData:
    _kind(data, "whq")
    n = _field(data, "dim")
    if not isinstance(n, int) or n < 1:
        raise FormatError("dim must be a positive integer")
    B = WhqData(
        n,
        vec_from_json(_field(data, "unit"), "unit", n),
        mat_from_json(_field(data, "mul"), "mul", (n, n * n)),
        mat_from_json(_field(data, "comul"), "comul", (n * n, n)),
        vec_from_json(_field(data, "counit"), "counit", n, row=True),
        mat_from_json(_field(data, "antipode"), "antipode", (n, n)),
    )
    return B


# graded -------------------------------------------------------------------------

def gcwhq_to_json(H: GcwhqData) -> dict:
    G = H.group
    L = G.label
    return {
        "kind": "gcwhq",
        "group": group_to_json(G),
        "dims": {L(p): H.dims[p] for p in G},
        "unit": {L(p): vec_to_json(H.unit[p]) for p in G},
        "mul": {L(p): mat_to_json(H.mul[p]) for p in G},
        "delta": {f"{L(p)},{L(q)}": mat_to_json(H.delta[(p, q)]) for p, q in product(G, G)},
        "counit": vec_to_json(H.counit),
        "antipode": {L(p): mat_to_json(H.antipode[p]) for p in G},
    }


def gcwhq_from_json(data: dict) -> GcwhqData:
    _kind(data, "gcwhq", "crossed")
    G = group_from_json(_field(data, "group"))
    dims_raw = _label_map(G, _field(data, "dims"), "dims")
    dims = []
    for p in G:
        d = dims_raw[p]
        if not isinstance(d, int) or d < 1:
            raise FormatError(f"dims[{G.label(p)}] must be a positive integer")
        dims.append(d)
    units = _label_map(G, _field(data, "unit"), "unit")
    muls = _label_map(G, _field(data, "mul"), "mul")
    antis = _label_map(G, _field(data, "antipode"), "antipode")
    unit = tuple(vec_from_json(units[p], f"unit[{G.label(p)}]", dims[p]) for p in G)
    mul = tuple(mat_from_json(muls[p], f"mul[{G.label(p)}]", (dims[p], dims[p] ** 2)) for p in G)
    antipode = tuple(mat_from_json(antis[p], f"antipode[{G.label(p)}]", (dims[G.inv(p)], dims[p])) for p in G)
    draw = _field(data, "delta")
    if not isinstance(draw, dict):
        raise FormatError("delta must be an object keyed by 'p,q'")
    delta = {}
    for key, m in draw.items():
        p, q = _pair_key(G, key, ",", "delta")
        delta[(p, q)] = mat_from_json(m, f"delta[{key}]", (dims[p] * dims[q], dims[G.mul(p, q)]))
    missing = [f"{G.label(p)},{G.label(q)}" for p, q in product(G, G) if (p, q) not in delta]
    if missing:
        raise FormatError(f"delta: missing components {missing}")
    counit = vec_from_json(_field(data, "counit"), "counit", dims[G.identity], row=True)
    H = GcwhqData(G, tuple(dims), unit, mul, delta, counit, antipode)
    try:
        H.validate_shapes()
    except StructureError as exc:
        raise FormatError(str(exc)) from None
    return H


def crossed_to_json(H: CrossedGcwhq) -> dict:
    out = gcwhq_to_json(H.base)
    G = H.group
    out["kind"] = "crossed"
    out["pi"] = {f"{G.label(p)}|{G.label(q)}": mat_to_json(H.pi(p, q)) for p, q in product(G, G)}
    return out


def crossed_from_json(data: dict) -> CrossedGcwhq:
    _kind(data, "crossed")
    B = gcwhq_from_json(data)
    G = B.group
    raw = _field(data, "pi")
    if not isinstance(raw, dict):
        raise FormatError("pi must be an object keyed by 'p|q'")
    pi = {}
    for key, m in raw.items():
        p, q = _pair_key(G, key, "|", "pi")
        pi[(p, q)] = mat_from_json(m, f"pi[{key}]", (B.dims[G.conj(p, q)], B.dims[q]))
    missing = [f"{G.label(p)}|{G.label(q)}" for p, q in product(G, G) if (p, q) not in pi]
    if missing:
        raise FormatError(f"pi: missing components {missing}")
    return CrossedGcwhq(B, CrossingData(pi))


def action_to_json(G: FiniteGroup, action: dict[int, Mat]) -> dict:
    return {"kind": "action", "group": group_to_json(G),
            "action": {G.label(g): mat_to_json(action[g]) for g in G}}


def action_from_json(data: dict) -> tuple[FiniteGroup, dict[int, Mat]]:
    _kind(data, "action")
    G = group_from_json(_field(data, "group"))
    raw = _label_map(G, _field(data, "action"), "action")
    return G, {g: mat_from_json(raw[g], f"action[{G.label(g)}]") for g in G}


# modules ------------------------------------------------------------------------

def yd_to_json(V, ambient_path: str) -> dict:
    G = V.group
    out = {
        "kind": "yd",
        "ambient": ambient_path,
        "name": V.name,
        "grade": G.label(V.grade),
        "dim": V.dim,
        "action": mat_to_json(V.action),
        "coaction": {G.label(r): mat_to_json(V.rho(r)) for r in G},
    }
    if V.embed is not None:
        out["carrier"] = {"embed": mat_to_json(V.embed), "restrict": mat_to_json(V.restrict)}
    return out


def yd_from_json(data: dict, ambient: CrossedGcwhq):
    from .yd import make_module

    _kind(data, "yd")
    G, H = ambient.group, ambient.base
    try:
        p = G.index(_field(data, "grade"))
    except (KeyError, ValueError):
        raise FormatError(f"unknown grade {data.get('grade')!r}") from None
    n = _field(data, "dim")
    if not isinstance(n, int) or n < 1:
        raise FormatError("dim must be a positive integer")
    action = mat_from_json(_field(data, "action"), "action", (n, n * H.dims[p]))
    raw = _label_map(G, _field(data, "coaction"), "coaction")
    coaction = [mat_from_json(raw[r], f"coaction[{G.label(r)}]", (n * H.dims[r], n)) for r in G]
    return make_module(ambient, p, action, coaction, name=str(data.get("name", "V")))


def braid_to_json(b) -> dict:
    V, W = b.source
    G = V.group
    return {
        "kind": "braid",
        "source": {"grades": [G.label(V.grade), G.label(W.grade)], "dims": [V.dim, W.dim],
                   "carrier_dim": b.source_module.dim, "embed": mat_to_json(b.source_module.embed)},
        "target": {"grades": [G.label(b.conjugated_target.grade), G.label(V.grade)],
                   "dims": [W.dim, V.dim], "carrier_dim": b.target_module.dim,
                   "embed": mat_to_json(b.target_module.embed)},
        "matrix": mat_to_json(b.matrix),
        "inverse": mat_to_json(b.inverse),
        "full": mat_to_json(b.full),
        "inverse_full": mat_to_json(b.inverse_full),
    }


# diff ---------------------------------------------------------------------------

def _walk(a: Any, b: Any, path: str, out: list[tuple[str, str, Any, Any]]) -> None:
    if isinstance(a, dict) and isinstance(b, dict):
        for k in sorted(set(a) | set(b)):
            if k not in a or k not in b:
                out.append((f"{path}.{k}" if path else k, "", a.get(k), b.get(k)))
            else:
                _walk(a[k], b[k], f"{path}.{k}" if path else k, out)
    elif isinstance(a, list) and isinstance(b, list) and len(a) == len(b):
        if a and all(not isinstance(x, (list, dict)) for x in a + b):
            for i, (x, y) in enumerate(zip(a, b)):
                if x != y:
                    out.append((path, str(i), x, y))
        else:
            for i, (x, y) in enumerate(zip(a, b)):
                if isinstance(x, list) and isinstance(y, list) and len(x) == len(y) \
                        and all(not isinstance(v, (list, dict)) for v in x + y):
                    for j, (u, v) in enumerate(zip(x, y)):
                        if u != v:
                            out.append((path, f"{i},{j}", u, v))
                else:
                    _walk(x, y, f"{path}[{i}]", out)
    elif a != b:
        out.append((path, "", a, b))


def diff_json(a: dict, b: dict) -> list[tuple[str, str, Any, Any]]:
    """Entry-wise differences ``(field, index, a-value, b-value)``.

    Both documents must have the same ``kind``; rationals are compared by
    value (the canonical string form makes this string equality).
    """
    ka, kb = a.get("kind"), b.get("kind")
    if ka != kb:
        raise KindMismatch(f"cannot diff kind {ka!r} against kind {kb!r}")
    a = {k: v for k, v in a.items() if k != "ambient"}
    b = {k: v for k, v in b.items() if k != "ambient"}
    out: list[tuple[str, str, Any, Any]] = []
    _walk(_canonical(a), _canonical(b), "", out)
    return out


def diff_structures(a: CrossedGcwhq, b: CrossedGcwhq) -> list[tuple[str, str, Any, Any]]:
    """Entry-wise differences between two crossed structures."""
    return diff_json(crossed_to_json(a), crossed_to_json(b))


def _canonical(x: Any) -> Any:
    if isinstance(x, dict):
        return {k: _canonical(v) for k, v in x.items()}
    if isinstance(x, list):
        return [_canonical(v) for v in x]
    if isinstance(x, str):
        try:
            return fmt_rational(parse_rational(x))
        except (ValueError, ZeroDivisionError):
            return x
    return x


def load_structure(path: str | os.PathLike):
    """Parse a file to ``(kind, object)``; yd files resolve their ambient path."""
    data = read_json(path)
    kind = data.get("kind")
    if kind == "whq":
        return kind, whq_from_json(data)
    if kind == "gcwhq":
        return kind, gcwhq_from_json(data)
    if kind == "crossed":
        return kind, crossed_from_json(data)
    if kind == "action":
        return kind, action_from_json(data)
    if kind == "group":
        return kind, group_from_json(data)
    if kind == "yd":
        amb = _field(data, "ambient")
        if not isinstance(amb, str):
            raise FormatError("ambient must be a path string")
        amb_path = Path(path).parent / amb
        akind, A = load_structure(amb_path)
        if akind != "crossed":
            raise KindMismatch(f"ambient {amb_path} has kind {akind!r}, expected 'crossed'")
        return kind, (yd_from_json(data, A), amb_path)
    raise KindMismatch(f"unknown kind {kind!r}")
