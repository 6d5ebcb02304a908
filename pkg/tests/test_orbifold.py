"""Equivariant complexes, Euler structures, orientations and the torsion vector."""
import random

import pytest

from orbtorsion.abelian import AbelianGroup, free_abelian
from orbtorsion.builders import solid_torus_complex, two_curve_orbifold
from orbtorsion.fields import FunctionField
from orbtorsion.grouprings import GroupRingElement, canonical_components
from orbtorsion.orbifold import (Cell, ComplexError, EquivariantComplex, EulerStructure,
                                 HomologyOrientation, SingularCurve, check, component_torsion,
                                 euler_act, euler_to_underlying, orbifold_torsion, tau0, twist,
                                 underlying_complex, validate)

Z = free_abelian(1)
T = Z.gen(0)


def _ring(*terms):
    return GroupRingElement(Z, {Z.element((k,)): c for k, c in terms})


def circle():
    cells = [Cell("v", 0), Cell("e", 1)]
    return EquivariantComplex(Z, cells, {"e": {"v": _ring((1, 1), (0, -1))}}, name="circle")


def solid_torus():
    return solid_torus_complex(1, Z, T, Z.identity())


def test_circle_torsion():
    t = FunctionField(1, 1).var(0)
    tau = orbifold_torsion(circle())
    assert tau[0] in ((t - 1).inverse(), -(t - 1).inverse())


def test_solid_torus_torsion_is_inverse_of_t_minus_one():
    # S^1 x D^2 simple-homotopy equivalent to the circle
    t = FunctionField(1, 1).var(0)
    tau = orbifold_torsion(solid_torus())[0]
    ratio = tau * (t - 1)
    assert ratio.is_unit_monomial()


def test_fixtures_are_valid():
    assert validate(solid_torus()) == []
    H3 = AbelianGroup(1, (3,))
    assert validate(solid_torus_complex(3, H3, H3.gen(0), H3.gen(1))) == []
    assert validate(two_curve_orbifold(2, 3)) == []


def test_diagnostics():
    bad = EquivariantComplex(Z, [Cell("v", 0), Cell("e", 1)], {"e": {"w": 1}})
    assert [d.kind for d in validate(bad)] == ["unknown-face"]
    bad = EquivariantComplex(Z, [Cell("v", 0), Cell("e", 1)], {"e": {"v": _ring((1, 1))}})
    assert "endpoints" in [d.kind for d in validate(bad)]
    cells = [Cell("v", 0), Cell("e", 1), Cell("f", 2)]
    bd = {"e": {"v": _ring((1, 1), (0, -1))}, "f": {"e": 1}}
    kinds = [d.kind for d in validate(EquivariantComplex(Z, cells, bd))]
    assert "boundary-squared" in kinds
    with pytest.raises(ComplexError):
        check(EquivariantComplex(Z, cells, bd))


def test_curve_diagnostics():
    G = AbelianGroup(1, (3,))
    cv = SingularCurve(1, 2, G.gen(1), G.gen(0), "p", "c")
    cells = [Cell("p", 0, 1), Cell("c", 1, 1)]
    bd = {"c": {"p": GroupRingElement(G, {G.gen(0): 1, G.identity(): -1})}}
    kinds = {d.kind for d in validate(EquivariantComplex(G, cells, bd, [cv]))}
    assert "meridian-order" in kinds
    cv = SingularCurve(1, 3, G.gen(1), G.gen(0), "p", "c")
    bd = {"c": {"p": GroupRingElement(G, {G.gen(1): 1, G.identity(): -1})}}
    kinds = {d.kind for d in validate(EquivariantComplex(G, cells, bd, [cv]))}
    assert "configuration" in kinds


def test_duplicate_cell():
    with pytest.raises(ComplexError):
        EquivariantComplex(Z, [Cell("v", 0), Cell("v", 0)], {})


def test_euler_action_is_free_and_transitive():
    X = two_curve_orbifold(2, 3)
    G = X.group
    e0 = EulerStructure.reference(X)
    images = {euler_act(g, e0).offset.coords for g in G.elements()}
    assert len(images) == G.order()


def test_lift_class():
    X = solid_torus()
    e = EulerStructure.from_lift(X, {"e3": T, "f": T})
    assert e.offset.is_identity()
    e = EulerStructure.from_lift(X, {"v": T ** 2})
    assert e.offset == T ** 2


def test_relift_matches_euler_shift():
    X = solid_torus()
    rng = random.Random(1)
    for _ in range(5):
        A = {c.id: Z.random_element(rng, 2) for c in X.all_cells()}
        shift = EulerStructure.from_lift(X, A).offset
        e = EulerStructure(Z.random_element(rng, 2))
        lhs = orbifold_torsion(X.relift(A), e)
        rhs = orbifold_torsion(X, EulerStructure(e.offset * shift))
        assert lhs == rhs


def test_orientation_sign():
    X = solid_torus()
    w = HomologyOrientation.pinned(X)
    assert tau0(X, w.flipped()) == -tau0(X, w)
    assert orbifold_torsion(X, None, w.flipped()) == -orbifold_torsion(X, None, w)


def test_flip_transport():
    X = solid_torus()
    w = HomologyOrientation.pinned(X)
    Y = X.flip_cells(["a", "e3"])
    assert orbifold_torsion(Y, None, w.after_flip(["a", "e3"])) == orbifold_torsion(X, None, w)


def test_twist_drops_singular_cells_for_nontrivial_meridian():
    X = two_curve_orbifold(2, 3)
    dims = {c.character.order: twist(X, c).dims for c in canonical_components(X.group)}
    full = X.dims()
    assert dims[1] == full
    assert sum(dims[6]) == sum(full) - 4


def test_underlying_complex_and_euler_image():
    X = two_curve_orbifold(2, 3)
    Xbar = underlying_complex(X)
    assert Xbar.group.order() == 1 and not Xbar.curves
    from orbtorsion.orbifold import UnderlyingMismatch
    with pytest.raises(UnderlyingMismatch):
        euler_to_underlying(X, EulerStructure.reference(X))


def test_component_torsion_zero_when_not_acyclic():
    G = AbelianGroup(0, ())
    X = EquivariantComplex(G, [Cell("v", 0)], {})
    comp = canonical_components(G)[0]
    assert component_torsion(X, comp).is_zero()
