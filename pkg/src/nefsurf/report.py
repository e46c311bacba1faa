"""Full analysis of a scenario and its text / machine renderings."""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Any

import jsonschema

from .contraction import (
    SingularityReport,
    format_cycle,
    mumford_pullback,
    singularity_reports,
)
from .delpezzo import (
    PositivityReport,
    TheoremIVerdict,
    Verdict,
    log_strict_nef,
    numerical_delpezzo,
    theorem_i_instance_check,
)
from .lattice import as_rational, format_combination, format_rational
from .models import arithmetic_genus
from .scenario import Scenario

FORMATS = ("text", "machine")


@dataclass(frozen=True)
class CurveInfo:
    label: str
    coeffs: tuple[Fraction, ...]
    self_intersection: Fraction
    genus: Fraction


@dataclass(frozen=True)
class Report:
    scenario: str
    model: dict
    basis: tuple[str, ...]
    exceptional: tuple[CurveInfo, ...]
    singularities: tuple[SingularityReport, ...]
    pullback_K: tuple[Fraction, ...]
    pullback_K_exceptional: tuple[Fraction, ...]
    k_squared: Fraction
    anticanonical: PositivityReport
    numerical_delpezzo: bool
    theorem_i: TheoremIVerdict
    boundary: tuple[tuple[str, Fraction], ...]
    log_anticanonical: PositivityReport | None


def analyze(scenario: Scenario) -> Report:
    """Run the whole pipeline. Contraction errors propagate unchanged."""
    config = scenario.contraction()
    pull = mumford_pullback(scenario.lattice.canonical, config)
    delpezzo, positivity = numerical_delpezzo(config, scenario.test_classes)
    theorem = theorem_i_instance_check(config, scenario.test_classes)
    log_report = None
    if scenario.boundary:
        log_report = log_strict_nef(config, scenario.boundary, scenario.test_classes)
    return Report(
        scenario=scenario.name,
        model=scenario.model,
        basis=scenario.lattice.labels,
        exceptional=tuple(
            CurveInfo(label, c.coeffs, c.square(), arithmetic_genus(c))
            for label, c in scenario.exceptional
        ),
        singularities=tuple(singularity_reports(config)),
        pullback_K=pull.total.coeffs,
        pullback_K_exceptional=pull.exceptional_coeffs,
        k_squared=pull.total.square(),
        anticanonical=positivity,
        numerical_delpezzo=delpezzo,
        theorem_i=theorem.verdict,
        boundary=tuple((b.label, b.coefficient) for b in scenario.boundary),
        log_anticanonical=log_report,
    )


# -- machine format ---------------------------------------------------------

_Q = {"type": "string", "pattern": r"^-?\d+(/\d+)?$"}
_QVEC = {"type": "array", "items": _Q}

_POSITIVITY_SCHEMA = {
    "type": "object",
    "required": ["tested", "per_class", "verdict", "witness", "self_intersection", "scope"],
    "properties": {
        "tested": {"type": "string"},
        "per_class": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["label", "value"],
                "properties": {"label": {"type": "string"}, "value": _Q},
                "additionalProperties": False,
            },
        },
        "verdict": {"enum": [v.value for v in Verdict]},
        "witness": {"type": ["string", "null"]},
        "self_intersection": _Q,
        "scope": {"type": "string"},
    },
    "additionalProperties": False,
}

REPORT_SCHEMA: dict[str, Any] = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": [
        "scenario", "model", "basis", "exceptional", "singularities", "pullback_K",
        "pullback_K_exceptional", "k_squared", "anticanonical", "numerical_delpezzo",
        "theorem_i", "boundary", "log_anticanonical",
    ],
    "properties": {
        "scenario": {"type": "string"},
        "model": {"type": "object", "required": ["type"]},
        "basis": {"type": "array", "items": {"type": "string"}},
        "exceptional": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["label", "coeffs", "self_intersection", "genus"],
                "properties": {
                    "label": {"type": "string"},
                    "coeffs": _QVEC,
                    "self_intersection": _Q,
                    "genus": _Q,
                },
                "additionalProperties": False,
            },
        },
        "singularities": {
            "type": "array",
            "items": {
                "type": "object",
                "required": [
                    "curves", "discrepancies", "fundamental_cycle", "fundamental_cycle_text",
                    "pa_fundamental", "is_du_val", "is_rational", "is_minimal", "cartier_index_K",
                ],
                "properties": {
                    "curves": {"type": "array", "items": {"type": "string"}},
                    "discrepancies": _QVEC,
                    "fundamental_cycle": {"type": "array", "items": {"type": "integer", "minimum": 1}},
                    "fundamental_cycle_text": {"type": "string"},
                    "pa_fundamental": _Q,
                    "is_du_val": {"type": "boolean"},
                    "is_rational": {"type": "boolean"},
                    "is_minimal": {"type": "boolean"},
                    "cartier_index_K": {"type": "integer", "minimum": 1},
                },
                "additionalProperties": False,
            },
        },
        "pullback_K": _QVEC,
        "pullback_K_exceptional": _QVEC,
        "k_squared": _Q,
        "anticanonical": _POSITIVITY_SCHEMA,
        "numerical_delpezzo": {"type": "boolean"},
        "theorem_i": {"enum": [v.value for v in TheoremIVerdict]},
        "boundary": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["label", "coefficient"],
                "properties": {"label": {"type": "string"}, "coefficient": _Q},
                "additionalProperties": False,
            },
        },
        "log_anticanonical": {"oneOf": [{"type": "null"}, _POSITIVITY_SCHEMA]},
    },
    "additionalProperties": False,
}

_REPORT_VALIDATOR = jsonschema.Draft202012Validator(REPORT_SCHEMA)


def _qs(values) -> list[str]:
    return [format_rational(v) for v in values]


def _positivity_to_dict(p: PositivityReport) -> dict:
    return {
        "tested": p.tested,
        "per_class": [{"label": label, "value": format_rational(v)} for label, v in p.per_class],
        "verdict": p.verdict.value,
        "witness": p.witness,
        "self_intersection": format_rational(p.self_intersection),
        "scope": p.scope,
    }


def _positivity_from_dict(d: dict) -> PositivityReport:
    return PositivityReport(
        tested=d["tested"],
        per_class=tuple((item["label"], as_rational(item["value"])) for item in d["per_class"]),
        verdict=Verdict(d["verdict"]),
        witness=d["witness"],
        self_intersection=as_rational(d["self_intersection"]),
        scope=d["scope"],
    )


def report_to_dict(r: Report) -> dict:
    return {
        "scenario": r.scenario,
        "model": r.model,
        "basis": list(r.basis),
        "exceptional": [
            {
                "label": c.label,
                "coeffs": _qs(c.coeffs),
                "self_intersection": format_rational(c.self_intersection),
                "genus": format_rational(c.genus),
            }
            for c in r.exceptional
        ],
        "singularities": [
            {
                "curves": list(s.curves),
                "discrepancies": _qs(s.discrepancies),
                "fundamental_cycle": list(s.fundamental_cycle),
                "fundamental_cycle_text": format_cycle(s),
                "pa_fundamental": format_rational(s.pa_fundamental),
                "is_du_val": s.is_du_val,
                "is_rational": s.is_rational,
                "is_minimal": s.is_minimal,
                "cartier_index_K": s.cartier_index_K,
            }
            for s in r.singularities
        ],
        "pullback_K": _qs(r.pullback_K),
        "pullback_K_exceptional": _qs(r.pullback_K_exceptional),
        "k_squared": format_rational(r.k_squared),
        "anticanonical": _positivity_to_dict(r.anticanonical),
        "numerical_delpezzo": r.numerical_delpezzo,
        "theorem_i": r.theorem_i.value,
        "boundary": [{"label": label, "coefficient": format_rational(b)} for label, b in r.boundary],
        "log_anticanonical": (
            None if r.log_anticanonical is None else _positivity_to_dict(r.log_anticanonical)
        ),
    }


def report_from_dict(d: dict) -> Report:
    """Inverse of :func:`report_to_dict`; the input is schema-checked first."""
    _REPORT_VALIDATOR.validate(d)
    return Report(
        scenario=d["scenario"],
        model=d["model"],
        basis=tuple(d["basis"]),
        exceptional=tuple(
            CurveInfo(
                c["label"],
                tuple(as_rational(x) for x in c["coeffs"]),
                as_rational(c["self_intersection"]),
                as_rational(c["genus"]),
            )
            for c in d["exceptional"]
        ),
        singularities=tuple(
            SingularityReport(
                curves=tuple(s["curves"]),
                discrepancies=tuple(as_rational(x) for x in s["discrepancies"]),
                fundamental_cycle=tuple(s["fundamental_cycle"]),
                pa_fundamental=as_rational(s["pa_fundamental"]),
                is_du_val=s["is_du_val"],
                is_rational=s["is_rational"],
                is_minimal=s["is_minimal"],
                cartier_index_K=s["cartier_index_K"],
            )
            for s in d["singularities"]
        ),
        pullback_K=tuple(as_rational(x) for x in d["pullback_K"]),
        pullback_K_exceptional=tuple(as_rational(x) for x in d["pullback_K_exceptional"]),
        k_squared=as_rational(d["k_squared"]),
        anticanonical=_positivity_from_dict(d["anticanonical"]),
        numerical_delpezzo=d["numerical_delpezzo"],
        theorem_i=TheoremIVerdict(d["theorem_i"]),
        boundary=tuple((b["label"], as_rational(b["coefficient"])) for b in d["boundary"]),
        log_anticanonical=(
            None
            if d["log_anticanonical"] is None
            else _positivity_from_dict(d["log_anticanonical"])
        ),
    )


def parse_machine(text: str) -> Report:
    return report_from_dict(json.loads(text))


# -- text format ------------------------------------------------------------


def _table(headers: list[str], rows: list[list[str]]) -> list[str]:
    widths = [len(h) for h in headers]
    for row in rows:
        widths = [max(w, len(cell)) for w, cell in zip(widths, row)]
    fmt = "  ".join(f"{{:<{w}}}" for w in widths)
    lines = [fmt.format(*headers).rstrip(), "  ".join("-" * w for w in widths)]
    lines.extend(fmt.format(*row).rstrip() for row in rows)
    return ["  " + line for line in lines]


def _yes(flag: bool) -> str:
    return "yes" if flag else "no"


def _positivity_text(title: str, p: PositivityReport) -> list[str]:
    lines = [f"{title}: {p.tested} on X, {p.scope}"]
    if p.per_class:
        lines += _table(["class", "value"], [[label, format_rational(v)] for label, v in p.per_class])
    else:
        lines.append("  (no test classes declared)")
    verdict = p.verdict.value + (f" (witness {p.witness})" if p.witness else "")
    lines.append(f"  verdict: {verdict}")
    lines.append(f"  self-intersection: {format_rational(p.self_intersection)}")
    return lines


def render_text(r: Report) -> str:
    model = ", ".join(f"{k}={v}" for k, v in r.model.items() if k not in ("gram", "canonical", "labels"))
    lines = [f"scenario: {r.scenario}", f"model: {model}", f"basis: {' '.join(r.basis)}", ""]
    lines.append("exceptional curves:")
    lines += _table(
        ["curve", "class", "self-int", "genus"],
        [
            [c.label, format_combination(c.coeffs, r.basis), format_rational(c.self_intersection),
             format_rational(c.genus)]
            for c in r.exceptional
        ],
    )
    for n, s in enumerate(r.singularities):
        lines += ["", f"singular point {n}: {', '.join(s.curves)}"]
        lines += _table(
            ["curve", "discrepancy"],
            [[c, format_rational(a)] for c, a in zip(s.curves, s.discrepancies)],
        )
        lines.append(f"  fundamental cycle: {format_cycle(s)}  (p_a = {format_rational(s.pa_fundamental)})")
        lines.append(
            f"  Du Val: {_yes(s.is_du_val)}   rational: {_yes(s.is_rational)}   "
            f"minimal: {_yes(s.is_minimal)}   numerical Cartier index of K: {s.cartier_index_K}"
        )
    lines += [
        "",
        f"pi^*K_X = {format_combination(r.pullback_K, r.basis)}",
        f"(K_X)^2 = {format_rational(r.k_squared)}",
        "",
    ]
    lines += _positivity_text("anticanonical positivity", r.anticanonical)
    lines.append(f"numerical Del Pezzo (declared classes): {_yes(r.numerical_delpezzo)}")
    lines.append(f"theorem (i) check: {r.theorem_i.value}")
    if r.log_anticanonical is not None:
        boundary = " + ".join(f"{format_rational(b)}*{label}" for label, b in r.boundary)
        lines += ["", f"boundary B = {boundary}"]
        lines += _positivity_text("log anticanonical positivity", r.log_anticanonical)
    return "\n".join(lines) + "\n"


def emit(report: Report, fmt: str = "text") -> bytes:
    """Serialize a report; output is a pure function of the report."""
    if fmt == "machine":
        return (json.dumps(report_to_dict(report), indent=2, ensure_ascii=False) + "\n").encode("utf-8")
    if fmt == "text":
        return render_text(report).encode("utf-8")
    raise ValueError(f"unknown format {fmt!r}; expected one of {FORMATS}")
