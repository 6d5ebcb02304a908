"""Builders, gluing, curve removal, decomposition and knot exteriors."""
import pytest

from orbtorsion.abelian import AbelianGroup, free_abelian
from orbtorsion.builders import (FIGURE_EIGHT, TREFOIL, FillingData, GluingError, KnotPresentation,
                                 fox_alexander, fox_derivative, glue, knot_complex,
                                 local_unknot_exterior, normalize_laurent, remove_singular_curve,
                                 solid_torus_complex, thickened_torus_complex, torus_classes,
                                 two_curve_orbifold, verify_curve_removal, verify_gluing,
                                 verify_underlying_decomposition)
from orbtorsion.fields import FunctionField
from orbtorsion.orbifold import ComplexError, EulerStructure, HomologyOrientation, orbifold_torsion, validate

Z = free_abelian(1)
MERIDIAN = ("v", "a", "b", "f")


def solid_torus():
    return solid_torus_complex(1, Z, Z.gen(0), Z.identity())


@pytest.mark.parametrize("alpha", [1, 2, 3])
def test_glued_complexes_are_valid(alpha):
    for E, torus in [(solid_torus(), MERIDIAN), (thickened_torus_complex(), ("v1", "a1", "b1", "f1")),
                     (local_unknot_exterior(), MERIDIAN)]:
        Y = glue(E, FillingData(torus, alpha)).Y
        assert validate(Y) == []
        assert Y.euler_characteristic() == 0
        assert len(Y.curves) == (alpha > 1)


def test_glued_groups():
    g = glue(thickened_torus_complex(), FillingData(("v1", "a1", "b1", "f1"), 3))
    assert (g.Y.group.free_rank, g.Y.group.invariant_factors) == (1, (3,))
    assert g.q(g.mu).order() == 3
    g = glue(local_unknot_exterior(), FillingData(MERIDIAN, 3))
    assert (g.Y.group.free_rank, g.Y.group.invariant_factors) == (1, (3,))


def test_lens_space_from_two_solid_tori():
    # meridian-to-meridian filling of S^1 x D^2 is S^1 x S^2
    Y = glue(solid_torus(), FillingData(MERIDIAN, 1)).Y
    t = FunctionField(1, 1).var(0)
    tau = orbifold_torsion(Y)[0]
    assert (tau * (t - 1) ** 2).is_unit_monomial()


def test_torus_classes_rejects_bad_torus():
    with pytest.raises(ComplexError):
        torus_classes(solid_torus(), ("v", "b", "a", "f"))
    with pytest.raises((ComplexError, GluingError, KeyError)):
        glue(solid_torus(), FillingData(("v", "a", "x", "f"), 2))


def test_orientation_conventions():
    assert glue(solid_torus(), FillingData(MERIDIAN, 2)).sign_conventions_agree()
    assert glue(local_unknot_exterior(), FillingData(MERIDIAN, 2)).sign_conventions_agree()
    assert not glue(thickened_torus_complex(), FillingData(("v1", "a1", "b1", "f1"), 2)).sign_conventions_agree()


def test_printed_convention_fails_on_thickened_torus():
    E = thickened_torus_complex()
    gl = glue(E, FillingData(("v1", "a1", "b1", "f1"), 1))
    w = HomologyOrientation.pinned(E)
    assert gl.orientation_map(w, "printed").sign != gl.orientation_map(w, "consistent").sign


@pytest.mark.parametrize("alpha", [1, 2, 3])
def test_verify_gluing_with_euler_and_orientation(alpha):
    E = thickened_torus_complex()
    f = FillingData(("v1", "a1", "b1", "f1"), alpha)
    e = EulerStructure(E.group.element((1, -2)))
    w = HomologyOrientation.pinned(E, -1)
    assert verify_gluing(E, f, e, w).ok


def test_report_render_is_deterministic():
    rep = verify_gluing(solid_torus(), FillingData(MERIDIAN, 2))
    assert rep.render() == verify_gluing(solid_torus(), FillingData(MERIDIAN, 2)).render()
    assert "equal" in rep.render().splitlines()[1]


def test_remove_singular_curve():
    Y = two_curve_orbifold(2, 3)
    Yp, q = remove_singular_curve(Y, 2)
    assert Yp.group.order() == 2 and [c.index for c in Yp.curves] == [1]
    assert validate(Yp) == []
    with pytest.raises((ValueError, StopIteration)):
        remove_singular_curve(Y, 5)
    assert verify_curve_removal(Y, 2, EulerStructure(Y.group.gen(0))).ok


def test_decomposition_facts():
    rep = verify_underlying_decomposition(local_unknot_exterior(), FillingData(MERIDIAN, 2))
    assert rep.ok
    assert {r.case for r in rep.rows} == {"|Y|", "E"}


def test_decomposition_requires_manifold_exterior():
    with pytest.raises(ValueError):
        verify_underlying_decomposition(two_curve_orbifold(2, 3), FillingData(MERIDIAN, 2))


def test_fox_derivative_fundamental_formula():
    # sum_j (dr/dx_j)(x_j - 1) = r - 1 under the abelianization
    K = FIGURE_EIGHT
    imgs = K.images()
    for r in K.relators:
        total = {}
        for j in range(K.generators):
            d = fox_derivative(r, j + 1, imgs)
            for (k,), c in d.items():
                total[(k + imgs[j],)] = total.get((k + imgs[j],), 0) + c
                total[(k,)] = total.get((k,), 0) - c
        assert {e: c for e, c in total.items() if c} == {}


def test_alexander_from_other_presentations():
    torus_knot = KnotPresentation(2, [[1, 1, -2, -2, -2]], "x^2 = y^3")
    assert fox_alexander(torus_knot) == fox_alexander(TREFOIL) == {(0,): 1, (1,): -1, (2,): 1}
    unknot = KnotPresentation(1, [], "unknot")
    assert fox_alexander(unknot) == {(0,): 1}


def test_normalize_laurent():
    assert normalize_laurent({(3,): -1, (2,): 1, (1,): -1}) == {(0,): 1, (1,): -1, (2,): 1}


def test_bad_knot_presentation():
    with pytest.raises(ValueError):
        KnotPresentation(2, [[1, 2, -1, -2]], "torus")


def test_knot_complex_is_valid():
    for K in (TREFOIL, FIGURE_EIGHT):
        X = knot_complex(K)
        assert validate(X) == [] and X.euler_characteristic() == 0
