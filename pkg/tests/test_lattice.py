import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nefsurf import (
    IntersectionLattice,
    LatticeMismatchError,
    as_rational,
    format_rational,
    inner,
    is_negative_definite,
    ruled_surface,
    solve_symmetric,
)
from nefsurf.lattice import NotSymmetricError, SingularMatrixError, leading_principal_minors
from oracles import det_cofactor, neg_def_by_minors, quadratic_form_negative_on_box


def test_inner_example_b_section():
    lat = ruled_surface(2, 3)
    c0 = lat["C0"]
    assert inner(c0, c0) == -3
    assert inner(lat.canonical, c0) == 5
    assert lat.canonical.coeffs == (-2, -1)


def test_inner_with_zero():
    lat = ruled_surface(2, 3)
    assert inner(lat.canonical, lat.zero()) == 0


def test_mismatched_lattices_refuse_to_combine():
    a, b = ruled_surface(2, 3), ruled_surface(1, 3)
    with pytest.raises(LatticeMismatchError):
        inner(a["C0"], b["C0"])
    with pytest.raises(LatticeMismatchError):
        a["C0"] + b["F"]


def test_equal_lattices_are_interchangeable():
    assert inner(ruled_surface(2, 3)["C0"], ruled_surface(2, 3)["F"]) == 1


@pytest.mark.parametrize(
    "matrix, expected",
    [([[-2]], True), ([[-2, 1], [1, -2]], True), ([[0]], False), ([[1]], False),
     ([[-2, 1, 1], [1, -2, 1], [1, 1, -2]], False), ([[-1, 2], [2, -1]], False)],
)
def test_is_negative_definite(matrix, expected):
    assert is_negative_definite(matrix) is expected


def test_a2_minors():
    assert leading_principal_minors([[-2, 1], [1, -2]]) == [-2, 3]


def test_zero_pivot_minors_fall_back():
    m = [[0, 1, 0], [1, 0, 0], [0, 0, -1]]
    assert leading_principal_minors(m) == [0, -1, 1]


def test_non_symmetric_rejected():
    with pytest.raises(NotSymmetricError):
        is_negative_definite([[-2, 1], [0, -2]])
    with pytest.raises(NotSymmetricError):
        solve_symmetric([[-2, 1], [0, -2]], [0, 0])


def test_solve_examples():
    assert solve_symmetric([[-3]], [5]) == (Fraction(-5, 3),)
    assert solve_symmetric([[-2, 1], [1, -2]], [-1, -1]) == (1, 1)
    assert solve_symmetric([[-2, 1], [1, -2]], [0, 0]) == (0, 0)


def test_solve_singular():
    with pytest.raises(SingularMatrixError):
        solve_symmetric([[1, 1], [1, 1]], [1, 2])


def test_rational_parsing():
    assert as_rational("-5/3") == Fraction(-5, 3)
    assert as_rational("−5/3") == Fraction(-5, 3)
    assert format_rational(Fraction(6, 4)) == "3/2"
    assert format_rational(Fraction(-4, 2)) == "-2"
    with pytest.raises(TypeError):
        as_rational(0.5)
    with pytest.raises(TypeError):
        as_rational(True)


def test_floats_never_enter_a_lattice():
    with pytest.raises(TypeError):
        IntersectionLattice([[1.0]], ["H"], [-3])
    lat = ruled_surface(0, 2)
    with pytest.raises(TypeError):
        lat["F"] * 0.5


def test_lattice_validation():
    with pytest.raises(NotSymmetricError):
        IntersectionLattice([[1, 2], [3, 4]], ["a", "b"], [0, 0])
    with pytest.raises(ValueError):
        IntersectionLattice([[1]], ["a"], [0, 0])


symmetric_ints = st.integers(1, 4).flatmap(
    lambda n: st.lists(st.integers(-4, 4), min_size=n * n, max_size=n * n).map(
        lambda xs: [[xs[min(i, j) * n + max(i, j)] for j in range(n)] for i in range(n)]
    )
)


@settings(max_examples=150, deadline=None)
@given(symmetric_ints)
def test_negative_definite_agrees_with_oracles(m):
    verdict = is_negative_definite(m)
    assert verdict == neg_def_by_minors(m)
    if verdict:
        # necessary direction: definite forms are negative on every box vector
        assert quadratic_form_negative_on_box(m, 3)


@settings(max_examples=150, deadline=None)
@given(symmetric_ints)
def test_minors_match_cofactor_expansion(m):
    expected = [det_cofactor([row[:k] for row in m[:k]]) for k in range(1, len(m) + 1)]
    assert leading_principal_minors(m) == expected


def test_solve_reproduces_rhs_randomized():
    rng = random.Random(7)
    checked = 0
    while checked < 200:
        n = rng.randint(1, 8)
        m = [[0] * n for _ in range(n)]
        for i in range(n):
            for j in range(i, n):
                m[i][j] = m[j][i] = rng.randint(-5, 5)
        if det_cofactor(m) == 0:
            continue
        rhs = [Fraction(rng.randint(-9, 9), rng.randint(1, 4)) for _ in range(n)]
        x = solve_symmetric(m, rhs)
        assert [sum(m[i][j] * x[j] for j in range(n)) for i in range(n)] == rhs
        assert all(isinstance(v, Fraction) for v in x)
        checked += 1


@settings(max_examples=100, deadline=None)
@given(st.lists(st.integers(-5, 5), min_size=4, max_size=4), st.lists(st.integers(-5, 5), min_size=4, max_size=4))
def test_inner_symmetric_and_bilinear(u, v):
    from nefsurf import blowup_plane

    lat = blowup_plane(3)
    a, b = lat.element(u), lat.element(v)
    assert inner(a, b) == inner(b, a)
    assert inner(a + b, b) == inner(a, b) + inner(b, b)
    assert inner(3 * a, b) == 3 * inner(a, b)
    assert isinstance(inner(a, b), Fraction)
