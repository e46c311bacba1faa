"""Contractions of negative-definite curve configurations.

A :class:`ContractionConfig` records the smooth model Y, the exceptional
curve classes of pi: Y -> X, and how they split into connected components
(one per singular point of X). Everything about X is computed through
Mumford's pullback: the unique rational correction making a class
orthogonal to every exceptional curve.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .lattice import (
    DivisorClass,
    IntersectionLattice,
    LatticeError,
    LatticeMismatchError,
    Matrix,
    format_combination,
    gram_of,
    is_negative_definite,
    solve_symmetric,
)
from .models import arithmetic_genus


class ContractionError(LatticeError):
    """The exceptional configuration cannot be contracted to a normal point."""


class NotNegativeDefinite(ContractionError):
    def __init__(self, message: str, submatrix: Matrix):
        super().__init__(message)
        self.submatrix = submatrix


class NegativeCrossTerm(ContractionError):
    pass


class InvalidCurveClass(ContractionError):
    pass


@dataclass(frozen=True)
class ContractionConfig:
    lattice: IntersectionLattice
    exceptional: tuple[DivisorClass, ...]
    labels: tuple[str, ...]
    components: tuple[tuple[int, ...], ...]

    @property
    def gram(self) -> Matrix:
        return gram_of(self.exceptional)

    def component_of(self, index: int) -> tuple[int, ...]:
        for comp in self.components:
            if index in comp:
                return comp
        raise IndexError(index)


@dataclass(frozen=True)
class PullbackResult:
    """``total = source + sum(exceptional_coeffs[i] * E_i)``, orthogonal to every E_i."""

    source: DivisorClass
    total: DivisorClass
    exceptional_coeffs: tuple[Fraction, ...]


@dataclass(frozen=True)
class FundamentalCycle:
    multiplicities: tuple[int, ...]
    pa: Fraction


@dataclass(frozen=True)
class SingularityReport:
    curves: tuple[str, ...]
    discrepancies: tuple[Fraction, ...]
    fundamental_cycle: tuple[int, ...]
    pa_fundamental: Fraction
    is_du_val: bool
    is_rational: bool
    is_minimal: bool
    cartier_index_K: int


def _connected_components(gram: Matrix) -> tuple[tuple[int, ...], ...]:
    n = len(gram)
    seen: set[int] = set()
    components = []
    for start in range(n):
        if start in seen:
            continue
        stack, comp = [start], []
        seen.add(start)
        while stack:
            i = stack.pop()
            comp.append(i)
            for j in range(n):
                if j not in seen and j != i and gram[i][j] != 0:
                    seen.add(j)
                    stack.append(j)
        components.append(tuple(sorted(comp)))
    return tuple(components)


def validate_contraction(
    lattice: IntersectionLattice,
    exceptional: Sequence[DivisorClass],
    labels: Sequence[str] | None = None,
) -> ContractionConfig:
    """Check that ``exceptional`` can be contracted and split it into singular points.

    Raises :class:`NegativeCrossTerm` when two distinct curves meet
    negatively, :class:`InvalidCurveClass` when adjunction gives a genus
    that is not a nonnegative integer, and :class:`NotNegativeDefinite`
    (carrying the offending Gram submatrix) when the configuration fails
    Mumford's criterion.
    """
    curves = tuple(exceptional)
    if not curves:
        raise ContractionError("no exceptional curves given")
    for c in curves:
        if c.lattice != lattice:
            raise LatticeMismatchError("exceptional class does not belong to the model lattice")
    if labels is None:
        labels = [f"E{i}" for i in range(len(curves))]
    labels = tuple(labels)
    if len(labels) != len(curves):
        raise ContractionError(f"{len(labels)} labels for {len(curves)} exceptional curves")
    if len(set(curves)) != len(curves):
        raise ContractionError("exceptional classes are not pairwise distinct")

    gram = gram_of(curves)
    n = len(curves)
    for i in range(n):
        for j in range(i + 1, n):
            if gram[i][j] < 0:
                raise NegativeCrossTerm(
                    f"{labels[i]}.{labels[j]} = {gram[i][j]}: distinct irreducible curves "
                    "cannot meet negatively"
                )
    for label, c in zip(labels, curves):
        pa = arithmetic_genus(c)
        if pa.denominator != 1 or pa < 0:
            raise InvalidCurveClass(
                f"{label} has arithmetic genus {pa}; not the class of an irreducible curve"
            )
    if not is_negative_definite(gram):
        raise NotNegativeDefinite(
            f"exceptional intersection matrix of {', '.join(labels)} is not negative definite",
            gram,
        )
    return ContractionConfig(lattice, curves, labels, _connected_components(gram))


def mumford_pullback(divisor: DivisorClass, config: ContractionConfig) -> PullbackResult:
    """Pullback to Y of the image of ``divisor`` on X.

    The correction coefficients are solved per connected component. Any
    exceptional content already present in ``divisor`` is absorbed by them.
    """
    if divisor.lattice != config.lattice:
        raise LatticeMismatchError("divisor does not belong to the model lattice")
    coeffs = [Fraction(0)] * len(config.exceptional)
    gram = config.gram
    for comp in config.components:
        sub = [[gram[i][j] for j in comp] for i in comp]
        rhs = [-divisor.dot(config.exceptional[i]) for i in comp]
        for i, a in zip(comp, solve_symmetric(sub, rhs)):
            coeffs[i] = a
    total = divisor
    for a, curve in zip(coeffs, config.exceptional):
        if a:
            total = total + a * curve
    for curve in config.exceptional:
        if total.dot(curve) != 0:
            raise AssertionError("pullback is not orthogonal to the exceptional locus")
    return PullbackResult(divisor, total, tuple(coeffs))


def intersect_on_X(d: DivisorClass, d2: DivisorClass, config: ContractionConfig) -> Fraction:
    """Mumford's intersection number of the images of ``d`` and ``d2`` on X."""
    return mumford_pullback(d, config).total.dot(mumford_pullback(d2, config).total)


def discrepancies(config: ContractionConfig) -> tuple[Fraction, ...]:
    """Coefficients alpha_i in ``K_Y = pi^*K_X + sum(alpha_i E_i)``."""
    return tuple(-a for a in mumford_pullback(config.lattice.canonical, config).exceptional_coeffs)


def is_minimal_configuration(config: ContractionConfig) -> bool:
    """False iff some exceptional curve is a smooth rational (-1)-curve."""
    return not any(
        c.square() == -1 and arithmetic_genus(c) == 0 for c in config.exceptional
    )


def _component_minimal(config: ContractionConfig, component: Sequence[int]) -> bool:
    return not any(
        config.exceptional[i].square() == -1 and arithmetic_genus(config.exceptional[i]) == 0
        for i in component
    )


def is_du_val(config: ContractionConfig, component: Sequence[int]) -> bool:
    """All discrepancies on ``component`` vanish.

    Cross-checked against the graph description: every curve is a smooth
    rational (-2)-curve.
    """
    alpha = discrepancies(config)
    by_discrepancy = all(alpha[i] == 0 for i in component)
    by_graph = all(
        config.exceptional[i].square() == -2 and arithmetic_genus(config.exceptional[i]) == 0
        for i in component
    )
    if by_discrepancy != by_graph:
        raise AssertionError(
            f"Du Val tests disagree on component {component}: "
            f"discrepancies {by_discrepancy}, (-2)-curve graph {by_graph}"
        )
    return by_discrepancy


def fundamental_cycle(config: ContractionConfig, component: Sequence[int]) -> FundamentalCycle:
    """Artin's fundamental cycle via Laufer's algorithm.

    Start from the reduced cycle and keep adding the lowest-indexed curve
    E_j with ``Z.E_j > 0``. Multiplicities are listed in the order of
    ``component``.
    """
    comp = tuple(component)
    if not comp:
        raise ValueError("empty component")
    gram = config.gram
    mult = {i: 1 for i in comp}

    def z_dot(j: int) -> Fraction:
        return sum((mult[i] * gram[i][j] for i in comp), Fraction(0))

    while True:
        bad = next((j for j in comp if z_dot(j) > 0), None)
        if bad is None:
            break
        mult[bad] += 1

    z = config.lattice.zero()
    for i in comp:
        z = z + mult[i] * config.exceptional[i]
    return FundamentalCycle(tuple(mult[i] for i in comp), arithmetic_genus(z))


def is_rational_singularity(config: ContractionConfig, component: Sequence[int]) -> bool:
    """Artin's criterion: the fundamental cycle has arithmetic genus 0."""
    return fundamental_cycle(config, component).pa == 0


def cartier_index_numerical(divisor: DivisorClass, config: ContractionConfig) -> int:
    """Least m > 0 making the exceptional coefficients of ``m * pi^*D`` integral.

    Only a lower bound for the Cartier index of D on X: linear equivalence
    on the exceptional locus is invisible to the lattice.
    """
    if not divisor.is_integral():
        raise ValueError("numerical Cartier index needs an integral class on Y")
    coeffs = mumford_pullback(divisor, config).exceptional_coeffs
    return math.lcm(1, *(a.denominator for a in coeffs))


def singularity_reports(config: ContractionConfig) -> list[SingularityReport]:
    alpha = discrepancies(config)
    reports = []
    for comp in config.components:
        fc = fundamental_cycle(config, comp)
        du_val = is_du_val(config, comp)
        rational = fc.pa == 0
        if du_val and not rational:
            raise AssertionError(f"Du Val component {comp} failed Artin's criterion")
        reports.append(
            SingularityReport(
                curves=tuple(config.labels[i] for i in comp),
                discrepancies=tuple(alpha[i] for i in comp),
                fundamental_cycle=fc.multiplicities,
                pa_fundamental=fc.pa,
                is_du_val=du_val,
                is_rational=rational,
                is_minimal=_component_minimal(config, comp),
                cartier_index_K=math.lcm(1, *(alpha[i].denominator for i in comp)),
            )
        )
    return reports


def format_cycle(report: SingularityReport) -> str:
    return format_combination([Fraction(m) for m in report.fundamental_cycle], report.curves)
