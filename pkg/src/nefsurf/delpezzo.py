"""Positivity of the (log) anticanonical class of a contracted surface.

Every verdict here is scoped to the classes the caller declares. A
STRICTLY_POSITIVE report says nothing about curves outside that list.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .contraction import (
    ContractionConfig,
    ContractionError,
    PullbackResult,
    intersect_on_X,
    mumford_pullback,
    validate_contraction,
)
from .lattice import DivisorClass, as_rational
from .models import ruled_surface


class Verdict(str, enum.Enum):
    STRICTLY_POSITIVE = "STRICTLY_POSITIVE"
    NEF_NOT_STRICT = "NEF_NOT_STRICT"
    NOT_NEF = "NOT_NEF"


class TheoremIVerdict(str, enum.Enum):
    CONSISTENT = "CONSISTENT"
    NOT_APPLICABLE = "NOT_APPLICABLE"
    VIOLATION = "VIOLATION"


class ExceptionalClassInList(ContractionError):
    """A contracted curve was offered as a test class; it has no image curve on X."""


class BoundaryError(ContractionError):
    pass


@dataclass(frozen=True)
class PositivityReport:
    tested: str
    per_class: tuple[tuple[str, Fraction], ...]
    verdict: Verdict
    witness: str | None
    self_intersection: Fraction
    scope: str


@dataclass(frozen=True)
class BoundaryComponent:
    label: str
    coefficient: Fraction
    curve: DivisorClass


@dataclass(frozen=True)
class TheoremICheck:
    verdict: TheoremIVerdict
    self_intersection: Fraction
    report: PositivityReport


def classify(values: Sequence[tuple[str, Fraction]]) -> tuple[Verdict, str | None]:
    """Verdict for a list of labelled intersection numbers.

    The witness is the first negative value for NOT_NEF and the first zero
    for NEF_NOT_STRICT. An empty list is vacuously STRICTLY_POSITIVE.
    """
    negative = next((label for label, v in values if v < 0), None)
    if negative is not None:
        return Verdict.NOT_NEF, negative
    zero = next((label for label, v in values if v == 0), None)
    if zero is not None:
        return Verdict.NEF_NOT_STRICT, zero
    return Verdict.STRICTLY_POSITIVE, None


def _scope(n: int) -> str:
    return f"declared classes only ({n} class{'es' if n != 1 else ''})"


def _is_exceptional(curve: DivisorClass, config: ContractionConfig) -> bool:
    # positive rational multiples of an exceptional curve count too
    for e in config.exceptional:
        ratios = {
            c / ec for c, ec in zip(curve.coeffs, e.coeffs) if ec != 0
        }
        support_ok = all(c == 0 for c, ec in zip(curve.coeffs, e.coeffs) if ec == 0)
        if support_ok and len(ratios) == 1 and next(iter(ratios)) > 0:
            return True
    return False


def _check_classes(config: ContractionConfig, classes: Sequence[tuple[str, DivisorClass]]) -> None:
    for label, curve in classes:
        if _is_exceptional(curve, config):
            raise ExceptionalClassInList(f"test class {label} is contracted by the configuration")


def anticanonical_on_X(config: ContractionConfig) -> PullbackResult:
    """Pullback of -K_X to Y."""
    return mumford_pullback(-config.lattice.canonical, config)


def k_squared_on_X(config: ContractionConfig) -> Fraction:
    """(K_X)^2 = (-K_X)^2 as a Mumford intersection number."""
    k = config.lattice.canonical
    return intersect_on_X(k, k, config)


def _positivity(
    tested: DivisorClass,
    description: str,
    config: ContractionConfig,
    classes: Sequence[tuple[str, DivisorClass]],
) -> PositivityReport:
    _check_classes(config, classes)
    pulled = mumford_pullback(tested, config).total
    # pulled is orthogonal to the exceptional locus, so pairing with C on Y
    # equals pairing with pi^*C
    values = tuple((label, pulled.dot(curve)) for label, curve in classes)
    verdict, witness = classify(values)
    return PositivityReport(
        tested=description,
        per_class=values,
        verdict=verdict,
        witness=witness,
        self_intersection=pulled.square(),
        scope=_scope(len(values)),
    )


def strict_nef_report(
    config: ContractionConfig, classes: Sequence[tuple[str, DivisorClass]]
) -> PositivityReport:
    """Values of -K_X on the images of ``classes`` and the resulting verdict."""
    return _positivity(-config.lattice.canonical, "-K_X", config, classes)


def numerical_delpezzo(
    config: ContractionConfig, classes: Sequence[tuple[str, DivisorClass]]
) -> tuple[bool, PositivityReport]:
    report = strict_nef_report(config, classes)
    ok = report.verdict is Verdict.STRICTLY_POSITIVE and report.self_intersection > 0
    return ok, report


def boundary_class(
    config: ContractionConfig, boundary: Sequence[BoundaryComponent]
) -> DivisorClass:
    """The class of B on Y, after checking coefficients and supports."""
    total = config.lattice.zero()
    for comp in boundary:
        b = as_rational(comp.coefficient)
        if not 0 <= b < 1:
            raise BoundaryError(f"boundary coefficient of {comp.label} is {b}, outside [0, 1)")
        if _is_exceptional(comp.curve, config):
            raise BoundaryError(f"boundary component {comp.label} is an exceptional curve")
        total = total + b * comp.curve
    return total


def log_strict_nef(
    config: ContractionConfig,
    boundary: Sequence[BoundaryComponent],
    classes: Sequence[tuple[str, DivisorClass]],
) -> PositivityReport:
    """Numerical positivity of -(K_X + B) on the declared classes.

    Log terminality of the pair is not checked. With an empty boundary
    this is exactly :func:`strict_nef_report`.
    """
    b = boundary_class(config, boundary)
    if b.is_zero():
        return strict_nef_report(config, classes)
    return _positivity(-(config.lattice.canonical + b), "-(K_X+B)", config, classes)


def ruled_case_ksq(a, e: int) -> Fraction:
    """``a^2 * e`` for the class aC0 + bF orthogonal to C0 with ``C0^2 = -e``.

    Confirmed on the ruled lattice before returning: b = a*e, the class
    meets C0 in 0, meets the fiber in a, and squares to a^2 e.
    """
    a = as_rational(a)
    if a <= 0:
        raise ValueError(f"coefficient a must be positive, got {a}")
    if isinstance(e, bool) or not isinstance(e, int) or e <= 0:
        raise ValueError(f"e must be a positive integer, got {e!r}")
    value = a * a * e
    lat = ruled_surface(0, e)
    c0, fiber = lat["C0"], lat["F"]
    d = a * c0 + (a * e) * fiber
    if d.dot(c0) != 0 or d.dot(fiber) != a or d.square() != value:
        raise AssertionError(f"ruled lattice disagrees with a^2 e for a={a}, e={e}")
    return value


def theorem_i_instance_check(
    config: ContractionConfig, classes: Sequence[tuple[str, DivisorClass]]
) -> TheoremICheck:
    """Consistency of a single instance with "strictly nef -K implies (-K)^2 > 0".

    A VIOLATION result always carries the full positivity report; it points
    at a bug (or at a declared class list that misses curves), never at the
    theorem.
    """
    report = strict_nef_report(config, classes)
    ksq = report.self_intersection
    if report.verdict is not Verdict.STRICTLY_POSITIVE:
        verdict = TheoremIVerdict.NOT_APPLICABLE
    elif ksq > 0:
        verdict = TheoremIVerdict.CONSISTENT
    else:
        verdict = TheoremIVerdict.VIOLATION
    return TheoremICheck(verdict, ksq, report)


def contract_section(e: int, g: int = 0) -> ContractionConfig:
    """Contraction of the negative section of ``ruled_surface(g, e)``."""
    lat = ruled_surface(g, e)
    return validate_contraction(lat, [lat["C0"]], ["C0"])
