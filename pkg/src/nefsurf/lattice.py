"""Exact rational lattices, divisor classes and the small linear algebra they need.

Every number in this package is a :class:`fractions.Fraction`; floats are
rejected at the boundary.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Rational as _RationalABC
from typing import Iterable, Sequence

Rational = Fraction

Matrix = tuple[tuple[Fraction, ...], ...]


class LatticeError(ValueError):
    """Base class for malformed lattice input."""


class LatticeMismatchError(LatticeError):
    """Two classes from different lattices were combined."""


class NotSymmetricError(LatticeError):
    pass


class SingularMatrixError(LatticeError):
    pass


def as_rational(value) -> Fraction:
    """Coerce ``value`` to an exact Fraction.

    Accepts ints, Fractions and strings such as ``"-5/3"`` (a Unicode minus
    sign is tolerated). Floats and bools are refused.
    """
    if isinstance(value, bool):
        raise TypeError(f"booleans are not rationals: {value!r}")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, _RationalABC):
        return Fraction(value.numerator, value.denominator)
    if isinstance(value, str):
        text = value.strip().replace("−", "-")
        try:
            return Fraction(text)
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"not a rational number: {value!r}") from exc
    raise TypeError(f"cannot use {type(value).__name__} {value!r} as an exact rational")


def format_rational(q: Fraction) -> str:
    """Render ``q`` as ``"n"`` or ``"p/q"`` in lowest terms."""
    q = as_rational(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def as_matrix(rows: Iterable[Iterable]) -> Matrix:
    return tuple(tuple(as_rational(x) for x in row) for row in rows)


def _check_square_symmetric(m: Matrix) -> None:
    n = len(m)
    for i, row in enumerate(m):
        if len(row) != n:
            raise NotSymmetricError(f"row {i} has length {len(row)}, expected {n}")
    for i in range(n):
        for j in range(i + 1, n):
            if m[i][j] != m[j][i]:
                raise NotSymmetricError(
                    f"entry ({i},{j}) = {m[i][j]} differs from ({j},{i}) = {m[j][i]}"
                )


def leading_principal_minors(gram_sub: Sequence[Sequence]) -> list[Fraction]:
    """Leading principal minors d_1..d_n of a symmetric matrix.

    Gaussian elimination without row exchanges: the k-th pivot is
    d_k / d_{k-1}. Once a pivot vanishes the remaining minors are computed
    one by one with a pivoting determinant.
    """
    m = as_matrix(gram_sub)
    _check_square_symmetric(m)
    n = len(m)
    work = [list(row) for row in m]
    minors: list[Fraction] = []
    det = Fraction(1)
    for k in range(n):
        pivot = work[k][k]
        if pivot == 0:
            minors.extend(_determinant([row[:j] for row in m[:j]]) for j in range(k + 1, n + 1))
            return minors
        det *= pivot
        minors.append(det)
        for i in range(k + 1, n):
            factor = work[i][k] / pivot
            if factor:
                for j in range(k, n):
                    work[i][j] -= factor * work[k][j]
    return minors


def _determinant(m: Sequence[Sequence[Fraction]]) -> Fraction:
    n = len(m)
    if n == 0:
        return Fraction(1)
    work = [list(row) for row in m]
    det = Fraction(1)
    for k in range(n):
        piv = next((r for r in range(k, n) if work[r][k] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != k:
            work[k], work[piv] = work[piv], work[k]
            det = -det
        det *= work[k][k]
        for i in range(k + 1, n):
            factor = work[i][k] / work[k][k]
            if factor:
                for j in range(k, n):
                    work[i][j] -= factor * work[k][j]
    return det


def is_negative_definite(gram_sub: Sequence[Sequence]) -> bool:
    """True iff the leading principal minors alternate in sign starting negative.

    The empty matrix counts as negative definite.
    """
    minors = leading_principal_minors(gram_sub)
    return all((d < 0) if k % 2 == 0 else (d > 0) for k, d in enumerate(minors))


def solve_symmetric(gram_sub: Sequence[Sequence], rhs: Sequence) -> tuple[Fraction, ...]:
    """Solve ``M x = rhs`` exactly; the result is checked by substitution."""
    m = as_matrix(gram_sub)
    _check_square_symmetric(m)
    b = [as_rational(x) for x in rhs]
    n = len(m)
    if len(b) != n:
        raise LatticeError(f"right-hand side has length {len(b)}, expected {n}")
    aug = [list(m[i]) + [b[i]] for i in range(n)]
    for k in range(n):
        piv = next((r for r in range(k, n) if aug[r][k] != 0), None)
        if piv is None:
            raise SingularMatrixError(f"matrix of size {n} is singular (no pivot in column {k})")
        aug[k], aug[piv] = aug[piv], aug[k]
        for i in range(k + 1, n):
            factor = aug[i][k] / aug[k][k]
            if factor:
                for j in range(k, n + 1):
                    aug[i][j] -= factor * aug[k][j]
    x = [Fraction(0)] * n
    for i in reversed(range(n)):
        s = aug[i][n] - sum(aug[i][j] * x[j] for j in range(i + 1, n))
        x[i] = s / aug[i][i]
    for i in range(n):
        if sum(m[i][j] * x[j] for j in range(n)) != b[i]:
            raise AssertionError(f"back-substitution failed in row {i}")
    return tuple(x)


@dataclass(frozen=True)
class IntersectionLattice:
    """A free lattice with a symmetric rational intersection form.

    ``canonical_coeffs`` are the coordinates of the canonical class K_Y and
    ``chi0`` is the declared holomorphic Euler characteristic of the model
    (``None`` when unknown). Two lattices compare equal when all of their
    data agree.
    """

    gram: Matrix
    labels: tuple[str, ...]
    canonical_coeffs: tuple[Fraction, ...]
    chi0: Fraction | None = None

    def __post_init__(self) -> None:
        gram = as_matrix(self.gram)
        _check_square_symmetric(gram)
        n = len(gram)
        if n == 0:
            raise LatticeError("lattice rank must be positive")
        labels = tuple(str(s) for s in self.labels)
        if len(labels) != n:
            raise LatticeError(f"{len(labels)} labels for a rank-{n} lattice")
        if len(set(labels)) != n:
            raise LatticeError(f"basis labels are not distinct: {labels}")
        canonical = tuple(as_rational(c) for c in self.canonical_coeffs)
        if len(canonical) != n:
            raise LatticeError(f"canonical class has {len(canonical)} coefficients, expected {n}")
        object.__setattr__(self, "gram", gram)
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "canonical_coeffs", canonical)
        if self.chi0 is not None:
            object.__setattr__(self, "chi0", as_rational(self.chi0))

    @property
    def rank(self) -> int:
        return len(self.gram)

    @property
    def canonical(self) -> DivisorClass:
        return DivisorClass(self, self.canonical_coeffs)

    def element(self, coeffs: Sequence) -> DivisorClass:
        return DivisorClass(self, tuple(as_rational(c) for c in coeffs))

    def zero(self) -> DivisorClass:
        return DivisorClass(self, (Fraction(0),) * self.rank)

    def basis(self, i: int) -> DivisorClass:
        coeffs = [Fraction(0)] * self.rank
        coeffs[i] = Fraction(1)
        return DivisorClass(self, tuple(coeffs))

    def __getitem__(self, label: str) -> DivisorClass:
        try:
            return self.basis(self.labels.index(label))
        except ValueError:
            raise KeyError(label) from None

    def pair(self, u: Sequence[Fraction], v: Sequence[Fraction]) -> Fraction:
        g = self.gram
        total = Fraction(0)
        for i, ui in enumerate(u):
            if ui:
                row = g[i]
                total += ui * sum(row[j] * vj for j, vj in enumerate(v) if vj)
        return total

    def is_integral(self) -> bool:
        return all(x.denominator == 1 for row in self.gram for x in row) and all(
            c.denominator == 1 for c in self.canonical_coeffs
        )


@dataclass(frozen=True)
class DivisorClass:
    """An immutable numerical class, given by coordinates in its lattice's basis."""

    lattice: IntersectionLattice = field(repr=False)
    coeffs: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        coeffs = tuple(as_rational(c) for c in self.coeffs)
        if len(coeffs) != self.lattice.rank:
            raise LatticeError(
                f"class has {len(coeffs)} coefficients, lattice rank is {self.lattice.rank}"
            )
        object.__setattr__(self, "coeffs", coeffs)

    def _check(self, other: DivisorClass) -> None:
        if not isinstance(other, DivisorClass):
            raise TypeError(f"expected DivisorClass, got {type(other).__name__}")
        if other.lattice is not self.lattice and other.lattice != self.lattice:
            raise LatticeMismatchError("classes belong to different lattices")

    def __add__(self, other: DivisorClass) -> DivisorClass:
        self._check(other)
        return DivisorClass(self.lattice, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: DivisorClass) -> DivisorClass:
        self._check(other)
        return DivisorClass(self.lattice, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> DivisorClass:
        return DivisorClass(self.lattice, tuple(-a for a in self.coeffs))

    def __mul__(self, scalar) -> DivisorClass:
        if isinstance(scalar, DivisorClass):
            return NotImplemented
        s = as_rational(scalar)
        return DivisorClass(self.lattice, tuple(s * a for a in self.coeffs))

    __rmul__ = __mul__

    def dot(self, other: DivisorClass) -> Fraction:
        self._check(other)
        return self.lattice.pair(self.coeffs, other.coeffs)

    def square(self) -> Fraction:
        return self.lattice.pair(self.coeffs, self.coeffs)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)

    def __str__(self) -> str:
        return format_combination(self.coeffs, self.lattice.labels)


def format_combination(coeffs: Sequence[Fraction], labels: Sequence[str]) -> str:
    """Render a linear combination such as ``2E0 + E1 - (1/3)C0``."""
    parts: list[str] = []
    for c, name in zip(coeffs, labels):
        if c == 0:
            continue
        mag = abs(c)
        if mag == 1:
            term = name
        elif mag.denominator == 1:
            term = f"{mag}{name}"
        else:
            term = f"({format_rational(mag)}){name}"
        if not parts:
            parts.append(term if c > 0 else f"-{term}")
        else:
            parts.append(f"+ {term}" if c > 0 else f"- {term}")
    return " ".join(parts) if parts else "0"


def inner(d: DivisorClass, d2: DivisorClass) -> Fraction:
    """Intersection number of two classes in the same lattice."""
    return d.dot(d2)


def gram_of(classes: Sequence[DivisorClass]) -> Matrix:
    """Gram matrix of ``classes`` with respect to the lattice form."""
    return tuple(tuple(inner(a, b) for b in classes) for a in classes)
