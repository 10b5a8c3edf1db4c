"""On-disk JSON formats: curve configurations, fibration profiles and
declared models.

Exact rationals travel as strings ``"p/q"`` (or ``"p"``) so nothing is
ever rounded.  Serialization is canonical: fixed key order, two-space
indent, trailing newline; parse-serialize round-trips are the identity on
canonical files.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

from .fibration import DeclaredCurve, DeclaredModel, FibrationProfile, fiber
from .graph import CurveConfig, CurveVertex


class ParseError(ValueError):
    """The text is not well-formed JSON or not the expected shape."""


class ValidationError(ValueError):
    """Well-formed input breaking a schema invariant."""


def format_fraction(x: Fraction | int) -> str:
    x = Fraction(x)
    return str(x)


def parse_fraction(s: str) -> Fraction:
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"invalid rational {s!r}: {exc}") from exc


def _load_json(text: str) -> dict:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(
            f"invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}"
        ) from exc
    if not isinstance(data, dict):
        raise ParseError("top-level value must be an object")
    return data


def _require(data: dict, key: str, kind, where: str):
    if key not in data:
        raise ValidationError(f"{where}: missing field {key!r}")
    value = data[key]
    if kind is int and isinstance(value, bool):
        raise ValidationError(f"{where}: field {key!r} must be an integer")
    if not isinstance(value, kind):
        raise ValidationError(
            f"{where}: field {key!r} must be {kind.__name__}, got "
            f"{type(value).__name__}"
        )
    return value


def _check_keys(data: dict, allowed: set[str], where: str) -> None:
    extra = set(data) - allowed
    if extra:
        raise ValidationError(f"{where}: unknown fields {sorted(extra)}")


@dataclass(frozen=True)
class ConfigDocument:
    config: CurveConfig
    metadata: dict = field(default_factory=dict)


def parse_config(text: str) -> ConfigDocument:
    """Parse a configuration file.

    Schema: ``{"name": str, "vertices": [{"id", "square", "degree"?}],
    "edges": [{"a", "b", "mult"?}], "metadata": {...}}``.  Degree defaults
    to 1, edge multiplicity defaults to 1.
    """
    data = _load_json(text)
    _check_keys(data, {"name", "vertices", "edges", "metadata"}, "config")
    name = data.get("name", "")
    if not isinstance(name, str):
        raise ValidationError("config: field 'name' must be a string")
    raw_vertices = _require(data, "vertices", list, "config")
    if not raw_vertices:
        raise ValidationError("config: needs at least one vertex")
    vertices = []
    for k, rv in enumerate(raw_vertices):
        where = f"vertex #{k}"
        if not isinstance(rv, dict):
            raise ValidationError(f"{where}: must be an object")
        _check_keys(rv, {"id", "square", "degree"}, where)
        vid = _require(rv, "id", str, where)
        square = _require(rv, "square", int, where)
        degree = rv.get("degree", 1)
        if isinstance(degree, bool) or not isinstance(degree, int):
            raise ValidationError(f"{where}: field 'degree' must be an integer")
        try:
            vertices.append(CurveVertex(vid, square, degree))
        except ValueError as exc:
            raise ValidationError(f"{where}: {exc}") from exc
    edges = []
    raw_edges = data.get("edges", [])
    if not isinstance(raw_edges, list):
        raise ValidationError("config: field 'edges' must be a list")
    for k, re_ in enumerate(raw_edges):
        where = f"edge #{k}"
        if not isinstance(re_, dict):
            raise ValidationError(f"{where}: must be an object")
        _check_keys(re_, {"a", "b", "mult"}, where)
        a = _require(re_, "a", str, where)
        b = _require(re_, "b", str, where)
        mult = re_.get("mult", 1)
        if isinstance(mult, bool) or not isinstance(mult, int):
            raise ValidationError(f"{where}: field 'mult' must be an integer")
        edges.append((a, b, mult))
    metadata = data.get("metadata", {})
    if not isinstance(metadata, dict):
        raise ValidationError("config: field 'metadata' must be an object")
    try:
        config = CurveConfig(vertices, edges, name=name)
    except ValueError as exc:
        raise ValidationError(str(exc)) from exc
    return ConfigDocument(config, dict(metadata))


def serialize_config(doc: ConfigDocument) -> str:
    cfg = doc.config
    data = {
        "name": cfg.name,
        "vertices": [
            {"id": v.id, "square": v.square, "degree": v.degree}
            for v in cfg.vertices
        ],
        "edges": [
            {"a": a, "b": b, "mult": m} for a, b, m in cfg.edge_items()
        ],
        "metadata": {k: doc.metadata[k] for k in sorted(doc.metadata)},
    }
    return json.dumps(data, indent=2) + "\n"


def parse_profile(text: str) -> FibrationProfile:
    """Parse a fibration profile.

    Schema: ``{"quasi_elliptic": bool, "characteristic": int | null,
    "fibers": [{"type": str, "count": int, "delta"?: int}]}``.
    """
    data = _load_json(text)
    _check_keys(data, {"quasi_elliptic", "characteristic", "fibers"}, "profile")
    qe = data.get("quasi_elliptic", False)
    if not isinstance(qe, bool):
        raise ValidationError("profile: field 'quasi_elliptic' must be a boolean")
    char = data.get("characteristic")
    if char is not None and (isinstance(char, bool) or not isinstance(char, int)):
        raise ValidationError("profile: field 'characteristic' must be an integer")
    raw_fibers = _require(data, "fibers", list, "profile")
    fibers = []
    for k, rf in enumerate(raw_fibers):
        where = f"fiber #{k}"
        if not isinstance(rf, dict):
            raise ValidationError(f"{where}: must be an object")
        _check_keys(rf, {"type", "count", "delta"}, where)
        tag = _require(rf, "type", str, where)
        count = _require(rf, "count", int, where)
        if count < 1:
            raise ValidationError(f"{where}: count must be >= 1")
        delta = rf.get("delta", 0)
        if isinstance(delta, bool) or not isinstance(delta, int):
            raise ValidationError(f"{where}: field 'delta' must be an integer")
        try:
            fibers.extend(fiber(tag, delta) for _ in range(count))
        except ValueError as exc:
            raise ValidationError(f"{where}: {exc}") from exc
    try:
        return FibrationProfile(tuple(fibers), qe, char)
    except ValueError as exc:
        raise ValidationError(str(exc)) from exc


def serialize_profile(prof: FibrationProfile) -> str:
    groups: dict[tuple[str, int], int] = {}
    for f in prof.fibers:
        key = (f.type.tag, f.delta)
        groups[key] = groups.get(key, 0) + 1
    fibers = []
    for (tag, delta), count in sorted(groups.items()):
        entry = {"type": tag, "count": count}
        if delta:
            entry["delta"] = delta
        fibers.append(entry)
    data = {
        "quasi_elliptic": prof.quasi_elliptic,
        "characteristic": prof.characteristic,
        "fibers": fibers,
    }
    return json.dumps(data, indent=2) + "\n"


def parse_model(text: str) -> DeclaredModel:
    """Parse a declared model for the very-ampleness checker.

    Schema: ``{"H_square": int, "H_two_divisible": bool,
    "curves": [{"label": str, "pa": int, "H_dot": int}]}``.
    """
    data = _load_json(text)
    _check_keys(data, {"H_square", "H_two_divisible", "curves"}, "model")
    h_square = _require(data, "H_square", int, "model")
    two_div = data.get("H_two_divisible", False)
    if not isinstance(two_div, bool):
        raise ValidationError("model: field 'H_two_divisible' must be a boolean")
    raw_curves = _require(data, "curves", list, "model")
    curves = []
    for k, rc in enumerate(raw_curves):
        where = f"curve #{k}"
        if not isinstance(rc, dict):
            raise ValidationError(f"{where}: must be an object")
        _check_keys(rc, {"label", "pa", "H_dot"}, where)
        curves.append(
            DeclaredCurve(
                _require(rc, "label", str, where),
                _require(rc, "pa", int, where),
                _require(rc, "H_dot", int, where),
            )
        )
    try:
        return DeclaredModel(h_square, two_div, tuple(curves))
    except ValueError as exc:
        raise ValidationError(str(exc)) from exc


def serialize_model(model: DeclaredModel) -> str:
    data = {
        "H_square": model.h_square,
        "H_two_divisible": model.h_two_divisible,
        "curves": [
            {"label": c.label, "pa": c.genus, "H_dot": c.h_degree}
            for c in model.curves
        ],
    }
    return json.dumps(data, indent=2) + "\n"
