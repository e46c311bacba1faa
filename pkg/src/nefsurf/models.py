"""Lattice models of smooth surfaces, adjunction and Riemann-Roch numerics."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .lattice import DivisorClass, IntersectionLattice, LatticeError, as_rational


def blowup_plane(n: int) -> IntersectionLattice:
    """The plane blown up in ``n`` distinct general points.

    Basis ``(H, e1, ..., en)`` with ``H^2 = 1``, ``ei^2 = -1`` and
    ``K = -3H + sum(ei)``.
    """
    if isinstance(n, bool) or not isinstance(n, int) or n < 0:
        raise ValueError(f"number of points must be a nonnegative integer, got {n!r}")
    rank = n + 1
    gram = [[0] * rank for _ in range(rank)]
    gram[0][0] = 1
    for i in range(1, rank):
        gram[i][i] = -1
    labels = ["H"] + [f"e{i}" for i in range(1, rank)]
    canonical = [-3] + [1] * n
    return IntersectionLattice(gram, labels, canonical, chi0=1)


def ruled_surface(g: int, e: int) -> IntersectionLattice:
    """Numerical lattice of a ruled surface over a genus-``g`` curve.

    Basis ``(C0, F)``: the section with ``C0^2 = -e`` and a fiber. Classes
    pulled back from the base curve appear only through their degree.
    """
    if isinstance(g, bool) or not isinstance(g, int) or g < 0:
        raise ValueError(f"genus must be a nonnegative integer, got {g!r}")
    if isinstance(e, bool) or not isinstance(e, int):
        raise ValueError(f"invariant e must be an integer, got {e!r}")
    gram = [[-e, 1], [1, 0]]
    canonical = [-2, 2 * g - 2 - e]
    return IntersectionLattice(gram, ["C0", "F"], canonical, chi0=1 - g)


def explicit_lattice(
    gram: Sequence[Sequence],
    canonical: Sequence,
    labels: Sequence[str] | None = None,
    chi0=None,
) -> IntersectionLattice:
    if labels is None:
        labels = [f"b{i}" for i in range(len(gram))]
    return IntersectionLattice(gram, labels, canonical, chi0=chi0)


def plane_curve_class(lattice: IntersectionLattice, d: int, mults: Sequence[int]) -> DivisorClass:
    """Class ``d*H - sum(m_i * e_i)`` on a blown-up plane."""
    if len(mults) != lattice.rank - 1:
        raise LatticeError(
            f"{len(mults)} multiplicities given, model has {lattice.rank - 1} blown-up points"
        )
    return lattice.element([d] + [-as_rational(m) for m in mults])


def arithmetic_genus(curve: DivisorClass) -> Fraction:
    """Adjunction: ``p_a(C) = 1 + (C^2 + C.K) / 2``."""
    return 1 + (curve.square() + curve.dot(curve.lattice.canonical)) / 2


def riemann_roch_chi(divisor: DivisorClass, chi0) -> Fraction:
    """``chi(O(D)) = chi(O_Y) + (D^2 - D.K) / 2``."""
    return as_rational(chi0) + (divisor.square() - divisor.dot(divisor.lattice.canonical)) / 2
