import random
from fractions import Fraction

import pytest

from corpus import random_class, tree_corpus
from oracles import cramer_solve, is_anti_nef, minimal_anti_nef_cycle
from nefsurf import (
    InvalidCurveClass,
    NegativeCrossTerm,
    NotNegativeDefinite,
    blowup_plane,
    cartier_index_numerical,
    discrepancies,
    explicit_lattice,
    fundamental_cycle,
    intersect_on_X,
    is_du_val,
    is_minimal_configuration,
    is_rational_singularity,
    mumford_pullback,
    plane_curve_class,
    ruled_surface,
    singularity_reports,
    validate_contraction,
)
from nefsurf.contraction import ContractionError, format_cycle


def example_b():
    lat = ruled_surface(2, 3)
    return validate_contraction(lat, [lat["C0"]], ["C0"])


def example_a(e):
    lat = ruled_surface(0, e)
    return validate_contraction(lat, [lat["C0"]], ["C0"])


def remark_1():
    lat = blowup_plane(12)
    return validate_contraction(lat, [plane_curve_class(lat, 3, [1] * 12)], ["Ecubic"])


def graph_config(gram, genera=None):
    """Exceptional curves are the whole basis; K fixed by adjunction."""
    n = len(gram)
    genera = genera or [0] * n
    target = [2 * g - 2 - gram[i][i] for i, g in enumerate(genera)]
    k = cramer_solve(gram, target)
    lat = explicit_lattice(gram, k, [f"E{i}" for i in range(n)])
    return validate_contraction(lat, [lat.basis(i) for i in range(n)], list(lat.labels))


A1 = [[-2]]
A2 = [[-2, 1], [1, -2]]
D4 = [[-2, 1, 1, 1], [1, -2, 0, 0], [1, 0, -2, 0], [1, 0, 0, -2]]
E8 = [[-2 if i == j else 0 for j in range(8)] for i in range(8)]
for a, b in [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (2, 7)]:
    E8[a][b] = E8[b][a] = 1


# -- validation ------------------------------------------------------------

def test_validate_examples():
    assert remark_1().components == ((0,),)
    assert example_b().components == ((0,),)


def test_contracting_positive_curve_fails():
    lat = blowup_plane(1)
    with pytest.raises(NotNegativeDefinite) as info:
        validate_contraction(lat, [lat["H"]])
    assert info.value.submatrix == ((1,),)


def test_negative_cross_term():
    lat = explicit_lattice([[-2, -1], [-1, -2]], [0, 0])
    with pytest.raises(NegativeCrossTerm):
        validate_contraction(lat, [lat.basis(0), lat.basis(1)])


def test_duplicate_classes_rejected():
    lat = ruled_surface(0, 2)
    with pytest.raises(ContractionError):
        validate_contraction(lat, [lat["C0"], lat["C0"]])


def test_non_curve_class_rejected():
    # e1 + e2 has p_a = -1: not irreducible
    lat = blowup_plane(2)
    with pytest.raises(InvalidCurveClass):
        validate_contraction(lat, [lat.element([0, 1, 1])])


def test_components_split_per_point():
    lat = blowup_plane(6)
    curves = [plane_curve_class(lat, 0, [-1, 0, 0, 0, 0, 0]), plane_curve_class(lat, 0, [0, -1, 0, 0, 0, 0]),
              plane_curve_class(lat, 1, [0, 0, 1, 1, 1, 0])]
    config = validate_contraction(lat, curves, ["e1", "e2", "L345"])
    assert config.components == ((0,), (1,), (2,))


# -- pullback --------------------------------------------------------------

def test_pullback_example_b():
    config = example_b()
    res = mumford_pullback(config.lattice.canonical, config)
    assert res.total.coeffs == (Fraction(-1, 3), -1)
    assert res.exceptional_coeffs == (Fraction(5, 3),)
    # 3 pi^*K_X = -C0 - 3F numerically
    assert (3 * res.total).coeffs == (-1, -3)


def test_pullback_of_orthogonal_class_is_itself():
    config = example_a(2)
    k = config.lattice.canonical
    assert k.dot(config.exceptional[0]) == 0
    res = mumford_pullback(k, config)
    assert res.total == k
    assert res.exceptional_coeffs == (0,)


def test_pullback_remark_1_vanishes():
    config = remark_1()
    res = mumford_pullback(config.lattice.canonical, config)
    assert res.total.is_zero()
    assert res.exceptional_coeffs == (1,)


def test_pullback_absorbs_exceptional_summands():
    config = example_b()
    f, c0 = config.lattice["F"], config.lattice["C0"]
    assert mumford_pullback(f + 5 * c0, config).total == mumford_pullback(f, config).total


def test_intersect_on_x_examples():
    k = example_b().lattice.canonical
    assert intersect_on_X(k, k, example_b()) == Fraction(1, 3)
    config = remark_1()
    assert intersect_on_X(config.lattice.canonical, config.lattice.canonical, config) == 0
    for d in [config.lattice["H"], config.lattice["e3"]]:
        assert intersect_on_X(d, config.exceptional[0], config) == 0


# -- discrepancies, minimality, Du Val ----------------------------------------

def test_discrepancy_examples():
    assert discrepancies(example_b()) == (Fraction(-5, 3),)
    assert discrepancies(graph_config(A1)) == (0,)
    assert discrepancies(remark_1()) == (-1,)
    for e in range(2, 8):
        assert discrepancies(example_a(e)) == (Fraction(2 - e, e),)


def test_minimality():
    assert is_minimal_configuration(graph_config(A2))
    lat = blowup_plane(1)
    assert not is_minimal_configuration(validate_contraction(lat, [lat["e1"]]))
    assert is_minimal_configuration(remark_1())


def test_minus_one_curve_has_positive_discrepancy():
    lat = blowup_plane(1)
    config = validate_contraction(lat, [lat["e1"]])
    assert discrepancies(config) == (1,)


def test_du_val():
    assert is_du_val(graph_config(A1), (0,))
    assert not is_du_val(example_b(), (0,))
    assert is_du_val(example_a(2), (0,))
    assert not is_du_val(example_a(3), (0,))
    assert is_du_val(graph_config(E8), tuple(range(8)))


# -- fundamental cycle -----------------------------------------------------

def test_fundamental_cycles_by_hand():
    assert fundamental_cycle(graph_config(A1), (0,)).multiplicities == (1,)
    fc = fundamental_cycle(graph_config(A2), (0, 1))
    assert fc.multiplicities == (1, 1) and fc.pa == 0
    fc = fundamental_cycle(graph_config(D4), (0, 1, 2, 3))
    assert fc.multiplicities == (2, 1, 1, 1) and fc.pa == 0
    fc = fundamental_cycle(remark_1(), (0,))
    assert fc.multiplicities == (1,) and fc.pa == 1


def test_e8_fundamental_cycle():
    # the highest root of E8 with the branch curve at index 2
    fc = fundamental_cycle(graph_config(E8), tuple(range(8)))
    assert fc.multiplicities == (2, 4, 6, 5, 4, 3, 2, 3)
    assert fc.pa == 0


def test_rationality():
    for gram in (A1, A2, D4, E8):
        assert is_rational_singularity(graph_config(gram), tuple(range(len(gram))))
    assert not is_rational_singularity(remark_1(), (0,))
    assert not is_rational_singularity(example_b(), (0,))
    assert fundamental_cycle(example_b(), (0,)).pa == 2


def test_elliptic_chain_is_not_rational():
    # a genus-1 curve anywhere in the graph forces p_a(Z) >= 1
    config = graph_config(A2, genera=[1, 0])
    assert not is_rational_singularity(config, (0, 1))


def test_cartier_index():
    assert cartier_index_numerical(example_b().lattice.canonical, example_b()) == 3
    assert cartier_index_numerical(example_a(3).lattice.canonical, example_a(3)) == 3
    assert cartier_index_numerical(example_a(2).lattice.canonical, example_a(2)) == 1
    config = graph_config(D4)
    assert cartier_index_numerical(config.lattice.canonical, config) == 1
    with pytest.raises(ValueError):
        cartier_index_numerical(example_b().lattice.element([Fraction(1, 2), 0]), example_b())


def test_singularity_report_fields():
    (rep,) = singularity_reports(example_b())
    assert rep.discrepancies == (Fraction(-5, 3),)
    assert rep.pa_fundamental == 2
    assert (rep.is_du_val, rep.is_rational, rep.is_minimal, rep.cartier_index_K) == (False, False, True, 3)
    (d4,) = singularity_reports(graph_config(D4))
    assert format_cycle(d4) == "2E0 + E1 + E2 + E3"


# -- randomized properties ----------------------------------------------------

CORPUS = tree_corpus(seed=11, size=150)
MIXED = tree_corpus(seed=12, size=150, allow_minus_one=True)


def test_orthogonality_and_projection_formula():
    rng = random.Random(3)
    for inst in CORPUS:
        config = inst.config
        lat = config.lattice
        d = random_class(rng, lat)
        res = mumford_pullback(d, config)
        assert all(res.total.dot(e) == 0 for e in config.exceptional)
        # A - sum(a_i E_i) is orthogonal to the exceptional locus by construction
        a_dot = [lat.basis(0).dot(e) for e in config.exceptional]
        corr = cramer_solve(config.gram, a_dot)
        c = lat.basis(0)
        for coeff, e in zip(corr, config.exceptional):
            c = c - coeff * e
        assert all(c.dot(e) == 0 for e in config.exceptional)
        assert intersect_on_X(d, c, config) == res.total.dot(c) == d.dot(c)


def test_intersect_on_x_symmetric_bilinear():
    rng = random.Random(4)
    for inst in CORPUS[:60]:
        config = inst.config
        lat = config.lattice
        a, b, c = (random_class(rng, lat) for _ in range(3))
        assert intersect_on_X(a, b, config) == intersect_on_X(b, a, config)
        assert intersect_on_X(a + 2 * c, b, config) == intersect_on_X(a, b, config) + 2 * intersect_on_X(c, b, config)


def test_minimal_configurations_have_nonpositive_discrepancies():
    seen_positive = False
    for inst in CORPUS + MIXED:
        alpha = discrepancies(inst.config)
        if is_minimal_configuration(inst.config):
            assert all(a <= 0 for a in alpha), (inst.weights, inst.genera, alpha)
        elif any(a > 0 for a in alpha):
            seen_positive = True
    # the restriction to minimal resolutions is not vacuous
    assert seen_positive


def test_du_val_implies_rational_on_corpus():
    for inst in CORPUS + MIXED:
        for rep in singularity_reports(inst.config):
            if rep.is_du_val:
                assert rep.is_rational


def test_fundamental_cycle_minimal_exhaustive():
    small = [inst for inst in tree_corpus(seed=13, size=120, max_rank=5)]
    for inst in small:
        gram = inst.config.gram
        comp = inst.config.components[0]
        fc = fundamental_cycle(inst.config, comp)
        z = fc.multiplicities
        assert all(m >= 1 for m in z)
        assert is_anti_nef(gram, z)
        for i in range(len(z)):
            if z[i] > 1:
                lowered = list(z)
                lowered[i] -= 1
                assert not is_anti_nef(gram, lowered)
        assert minimal_anti_nef_cycle(gram, max(z) + 1) == z
