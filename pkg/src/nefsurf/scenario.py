"""Scenario files: parsing, validation and the built-in scenarios.

A scenario is a JSON object::

    {
      "name": "example-b",
      "model": {"type": "ruled", "g": 2, "e": 3},
      "exceptional": [{"label": "C0", "coeffs": ["1", "0"]}],
      "test_classes": [{"label": "F", "coeffs": ["0", "1"]}],
      "boundary": [{"label": "B", "coefficient": "1/2", "coeffs": ["0", "1"]}]
    }

Models are ``blowup_plane`` (``n``), ``ruled`` (``g``, ``e``) or
``explicit`` (``gram``, ``canonical``, optional ``labels`` and ``chi0``).
Rationals are written as strings ``"p/q"`` (plain JSON integers are also
accepted); floats are rejected. On a ``blowup_plane`` model a class may be
given as ``{"plane_curve": {"degree": d, "mults": [...]}}`` instead of
``coeffs``.
"""

from __future__ import annotations

import copy
import json
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Any

import jsonschema

from .contraction import ContractionConfig, validate_contraction
from .delpezzo import BoundaryComponent
from .lattice import DivisorClass, IntersectionLattice, LatticeError, as_rational, format_rational
from .models import blowup_plane, explicit_lattice, plane_curve_class, ruled_surface


class ParseError(ValueError):
    """Malformed scenario input. ``field`` is a JSON path, ``line`` a 1-based line number."""

    def __init__(self, message: str, field: str | None = None, line: int | None = None):
        where = []
        if line is not None:
            where.append(f"line {line}")
        if field:
            where.append(f"field {field}")
        super().__init__(f"{message} ({', '.join(where)})" if where else message)
        self.field = field
        self.line = line


_RATIONAL = {
    "oneOf": [
        {"type": "string", "pattern": r"^\s*[-−+]?\d+(\s*/\s*\d+)?\s*$"},
        {"type": "integer"},
    ]
}
_VECTOR = {"type": "array", "items": _RATIONAL}

_CLASS = {
    "type": "object",
    "required": ["label"],
    "properties": {
        "label": {"type": "string", "minLength": 1},
        "coeffs": _VECTOR,
        "plane_curve": {
            "type": "object",
            "required": ["degree", "mults"],
            "properties": {
                "degree": {"type": "integer"},
                "mults": {"type": "array", "items": {"type": "integer"}},
            },
            "additionalProperties": False,
        },
    },
    "oneOf": [{"required": ["coeffs"]}, {"required": ["plane_curve"]}],
    "additionalProperties": False,
}

_BOUNDARY = copy.deepcopy(_CLASS)
_BOUNDARY["required"] = ["label", "coefficient"]
_BOUNDARY["properties"]["coefficient"] = _RATIONAL

SCENARIO_SCHEMA: dict[str, Any] = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["name", "model", "exceptional"],
    "properties": {
        "name": {"type": "string", "minLength": 1},
        "model": {
            "type": "object",
            "required": ["type"],
            "properties": {"type": {"enum": ["blowup_plane", "ruled", "explicit"]}},
            "allOf": [
                {
                    "if": {"properties": {"type": {"const": "blowup_plane"}}},
                    "then": {
                        "properties": {"type": True, "n": {"type": "integer", "minimum": 0}},
                        "required": ["n"],
                        "additionalProperties": False,
                    },
                },
                {
                    "if": {"properties": {"type": {"const": "ruled"}}},
                    "then": {
                        "properties": {
                            "type": True,
                            "g": {"type": "integer", "minimum": 0},
                            "e": {"type": "integer"},
                        },
                        "required": ["g", "e"],
                        "additionalProperties": False,
                    },
                },
                {
                    "if": {"properties": {"type": {"const": "explicit"}}},
                    "then": {
                        "properties": {
                            "type": True,
                            "rank": {"type": "integer", "minimum": 1},
                            "gram": {"type": "array", "items": _VECTOR, "minItems": 1},
                            "canonical": _VECTOR,
                            "labels": {"type": "array", "items": {"type": "string"}},
                            "chi0": _RATIONAL,
                        },
                        "required": ["gram", "canonical"],
                        "additionalProperties": False,
                    },
                },
            ],
        },
        "exceptional": {"type": "array", "items": _CLASS, "minItems": 1},
        "test_classes": {"type": "array", "items": _CLASS},
        "boundary": {"type": "array", "items": _BOUNDARY},
    },
    "additionalProperties": False,
}

_VALIDATOR = jsonschema.Draft202012Validator(SCENARIO_SCHEMA)


@dataclass(frozen=True)
class Scenario:
    name: str
    model: dict
    lattice: IntersectionLattice
    exceptional: tuple[tuple[str, DivisorClass], ...]
    test_classes: tuple[tuple[str, DivisorClass], ...]
    boundary: tuple[BoundaryComponent, ...]

    def contraction(self) -> ContractionConfig:
        """Validated contraction; raises the contraction errors on bad input."""
        labels = [label for label, _ in self.exceptional]
        return validate_contraction(self.lattice, [c for _, c in self.exceptional], labels)


def _json_path(path) -> str:
    out = ""
    for part in path:
        out += f"[{part}]" if isinstance(part, int) else (f".{part}" if out else str(part))
    return out or "<root>"


def _build_lattice(model: dict) -> tuple[IntersectionLattice, dict]:
    kind = model["type"]
    if kind == "blowup_plane":
        return blowup_plane(model["n"]), {"type": kind, "n": model["n"]}
    if kind == "ruled":
        return ruled_surface(model["g"], model["e"]), {"type": kind, "g": model["g"], "e": model["e"]}
    gram = [[as_rational(x) for x in row] for row in model["gram"]]
    n = len(gram)
    if "rank" in model and model["rank"] != n:
        raise ParseError(f"rank {model['rank']} but gram has {n} rows", "model.rank")
    for i, row in enumerate(gram):
        if len(row) != n:
            raise ParseError(f"row has {len(row)} entries, expected {n}", f"model.gram[{i}]")
    if len(model["canonical"]) != n:
        raise ParseError(
            f"canonical has {len(model['canonical'])} entries, expected {n}", "model.canonical"
        )
    if "labels" in model and len(model["labels"]) != n:
        raise ParseError(f"{len(model['labels'])} labels, expected {n}", "model.labels")
    chi0 = as_rational(model["chi0"]) if "chi0" in model else None
    try:
        lattice = explicit_lattice(gram, model["canonical"], model.get("labels"), chi0)
    except LatticeError as exc:
        raise ParseError(str(exc), "model") from exc
    echo = {
        "type": "explicit",
        "rank": n,
        "gram": [[format_rational(x) for x in row] for row in lattice.gram],
        "canonical": [format_rational(x) for x in lattice.canonical_coeffs],
        "labels": list(lattice.labels),
    }
    if chi0 is not None:
        echo["chi0"] = format_rational(chi0)
    return lattice, echo


def _build_class(spec: dict, lattice: IntersectionLattice, model: dict, where: str) -> DivisorClass:
    if "coeffs" in spec:
        coeffs = spec["coeffs"]
        if len(coeffs) != lattice.rank:
            raise ParseError(
                f"class vector has {len(coeffs)} entries, model rank is {lattice.rank}",
                f"{where}.coeffs",
            )
        return lattice.element(coeffs)
    if model["type"] != "blowup_plane":
        raise ParseError("plane_curve classes need a blowup_plane model", f"{where}.plane_curve")
    curve = spec["plane_curve"]
    if len(curve["mults"]) != lattice.rank - 1:
        raise ParseError(
            f"{len(curve['mults'])} multiplicities, model has {lattice.rank - 1} points",
            f"{where}.plane_curve.mults",
        )
    return plane_curve_class(lattice, curve["degree"], curve["mults"])


def scenario_from_dict(data: Any) -> Scenario:
    """Build a :class:`Scenario` from decoded JSON, raising :class:`ParseError` on bad input."""
    errors = sorted(_VALIDATOR.iter_errors(data), key=lambda err: list(err.absolute_path))
    if errors:
        # the deepest error names the offending field most precisely
        err = max(errors, key=lambda err: len(err.absolute_path))
        raise ParseError(err.message, _json_path(err.absolute_path))
    lattice, echo = _build_lattice(data["model"])

    def classes(key: str) -> tuple[tuple[str, DivisorClass], ...]:
        out = []
        for i, spec in enumerate(data.get(key, [])):
            out.append((spec["label"], _build_class(spec, lattice, data["model"], f"{key}[{i}]")))
        labels = [label for label, _ in out]
        if len(set(labels)) != len(labels):
            raise ParseError("labels are not distinct", key)
        return tuple(out)

    boundary = []
    for i, spec in enumerate(data.get("boundary", [])):
        curve = _build_class(spec, lattice, data["model"], f"boundary[{i}]")
        boundary.append(BoundaryComponent(spec["label"], as_rational(spec["coefficient"]), curve))
    return Scenario(
        name=data["name"],
        model=echo,
        lattice=lattice,
        exceptional=classes("exceptional"),
        test_classes=classes("test_classes"),
        boundary=tuple(boundary),
    )


def parse_scenario(text: str) -> Scenario:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", line=exc.lineno) from exc
    return scenario_from_dict(data)


def load_scenario(path: str | Path) -> Scenario:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read scenario file {path}: {exc.strerror}") from exc
    return parse_scenario(text)


BUILTINS = ("example-a", "example-b", "remark-1", "duval-a1", "duval-a2", "duval-d4")


class UnknownBuiltin(KeyError):
    pass


def builtin_data(name: str, e: int | None = None) -> dict:
    """Decoded JSON of a built-in scenario. ``e`` applies to example-a only."""
    if name not in BUILTINS:
        raise UnknownBuiltin(name)
    text = resources.files("nefsurf").joinpath("builtins", f"{name}.json").read_text("utf-8")
    data = json.loads(text)
    if name == "example-a":
        e = 2 if e is None else e
        if isinstance(e, bool) or not isinstance(e, int) or e < 2:
            raise ValueError(f"example-a needs C0^2 <= -2, i.e. e >= 2; got e={e!r}")
        data["name"] = f"example-a (e={e})"
        data["model"]["e"] = e
        for spec in data["test_classes"]:
            if spec["label"] == "Cinf":
                # the positive section C0 + eF, disjoint from C0
                spec["coeffs"] = ["1", str(e)]
    elif e is not None:
        raise ValueError(f"builtin {name} takes no parameter e")
    return data


def builtin_scenario(name: str, e: int | None = None) -> Scenario:
    return scenario_from_dict(builtin_data(name, e))
