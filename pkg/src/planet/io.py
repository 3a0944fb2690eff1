"""JSON encodings of scalars, points, lines, nets, cubics and Latin squares.

Decoders raise :class:`InputError` whose ``location`` is a JSONPath-like
string such as ``$.classes[1][0][2]``.
"""

from __future__ import annotations

import json
import sys
from typing import Any

from .cubic import Cubic
from .errors import FieldError, InputError, PlanetError
from .field import Field, field_from_descriptor
from .geom import Line, Point
from .net import Net
from .quasigroup import LatinSquare


def encode_scalar(field: Field, c) -> Any:
    return field.encode(c)


def decode_scalar(field: Field, obj, loc: str = "$"):
    try:
        return field.decode(obj)
    except (FieldError, TypeError, ValueError) as exc:
        raise InputError(str(exc), loc) from None


def encode_point(p: Point | Line) -> list:
    return [p.field.encode(c) for c in p.coords]


encode_line = encode_point


def _triple(field: Field, obj, loc: str, cls):
    if not isinstance(obj, list) or len(obj) != 3:
        raise InputError(f"expected an array of three scalars, got {obj!r}", loc)
    coords = [decode_scalar(field, c, f"{loc}[{i}]") for i, c in enumerate(obj)]
    if all(field.is_zero(c) for c in coords):
        raise InputError("all coordinates are zero", loc)
    return cls(field, coords)


def decode_point(field: Field, obj, loc: str = "$") -> Point:
    return _triple(field, obj, loc, Point)


def decode_line(field: Field, obj, loc: str = "$") -> Line:
    return _triple(field, obj, loc, Line)


def _field(obj, loc: str, eps_eq: float, eps_rank: float) -> Field:
    try:
        return field_from_descriptor(obj, eps_eq, eps_rank)
    except (FieldError, TypeError, ValueError) as exc:
        raise InputError(str(exc), loc) from None


def encode_net(net: Net, include_points: bool = True) -> dict:
    out: dict = {
        "field": net.field.descriptor(),
        "classes": [[encode_line(l) for l in cls] for cls in net.classes],
    }
    if include_points and net.points is not None:
        out["points"] = [encode_point(p) for p in net.points]
    return out


def decode_net(obj, eps_eq: float = 1e-9, eps_rank: float = 1e-8) -> Net:
    if not isinstance(obj, dict):
        raise InputError("a net must be a JSON object", "$")
    for key in ("field", "classes"):
        if key not in obj:
            raise InputError(f"missing key {key!r}", "$")
    field = _field(obj["field"], "$.field", eps_eq, eps_rank)
    classes = obj["classes"]
    if not isinstance(classes, list) or not classes:
        raise InputError("classes must be a nonempty array", "$.classes")
    parsed = []
    for i, cls in enumerate(classes):
        if not isinstance(cls, list) or not cls:
            raise InputError("each class must be a nonempty array of lines", f"$.classes[{i}]")
        parsed.append([decode_line(field, l, f"$.classes[{i}][{j}]") for j, l in enumerate(cls)])
    points = None
    if obj.get("points") is not None:
        if not isinstance(obj["points"], list):
            raise InputError("points must be an array", "$.points")
        points = [decode_point(field, p, f"$.points[{i}]") for i, p in enumerate(obj["points"])]
    return Net(field, parsed, points)


def encode_cubic(c: Cubic) -> dict:
    return {"field": c.field.descriptor(), "coeffs": [c.field.encode(x) for x in c.coeffs]}


def decode_cubic(obj, field: Field | None = None) -> Cubic:
    if not isinstance(obj, dict) or "coeffs" not in obj:
        raise InputError("a cubic must be an object with 'coeffs'", "$")
    if field is None:
        field = _field(obj.get("field", "complex"), "$.field", 1e-9, 1e-8)
    coeffs = obj["coeffs"]
    if not isinstance(coeffs, list) or len(coeffs) != 10:
        raise InputError("expected 10 coefficients", "$.coeffs")
    vals = [decode_scalar(field, x, f"$.coeffs[{i}]") for i, x in enumerate(coeffs)]
    try:
        return Cubic(field, vals)
    except PlanetError as exc:
        raise InputError(str(exc), "$.coeffs") from None


def encode_latin(ls: LatinSquare) -> dict:
    return ls.to_json()


def decode_latin(obj) -> LatinSquare:
    if not isinstance(obj, dict) or "table" not in obj:
        raise InputError("a Latin square must be an object with 'table'", "$")
    table = obj["table"]
    if not isinstance(table, list) or not all(isinstance(r, list) for r in table):
        raise InputError("table must be an array of arrays", "$.table")
    for i, row in enumerate(table):
        for j, x in enumerate(row):
            if not isinstance(x, int) or isinstance(x, bool):
                raise InputError(f"expected an integer, got {x!r}", f"$.table[{i}][{j}]")
    try:
        return LatinSquare.from_json(obj)
    except (PlanetError, ValueError, TypeError) as exc:
        raise InputError(str(exc), "$.table") from None


def decode_vector(obj, loc: str = "$") -> list:
    """A list of numbers; [re, im] pairs are read as complex entries.

    Integers stay integers so that downstream linear algebra can run exactly.
    """
    if isinstance(obj, dict) and "vector" in obj:
        obj, loc = obj["vector"], f"{loc}.vector"
    if not isinstance(obj, list) or not obj:
        raise InputError("expected a nonempty array of numbers", loc)
    out = []
    for i, x in enumerate(obj):
        if isinstance(x, bool):
            raise InputError(f"expected a number, got {x!r}", f"{loc}[{i}]")
        if isinstance(x, (int, float)):
            out.append(x)
        elif isinstance(x, list) and len(x) == 2 and all(isinstance(t, (int, float)) for t in x):
            out.append(complex(x[0], x[1]))
        else:
            raise InputError(f"expected a number or [re, im], got {x!r}", f"{loc}[{i}]")
    return out


def read_json(path: str):
    """Parse a JSON document from a file path, or stdin for ``-``."""
    try:
        if path == "-":
            text = sys.stdin.read()
        else:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}", path) from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON: {exc.msg}", f"{path}:{exc.lineno}:{exc.colno}") from None


def write_json(obj, path: str = "-") -> None:
    text = json.dumps(obj, indent=2, sort_keys=False) + "\n"
    if path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
