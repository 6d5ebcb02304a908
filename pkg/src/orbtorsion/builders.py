"""Standard pieces, chain-level gluing and verification harnesses."""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Optional

from . import poly as P
from .abelian import (AbelianGroup, GroupElement, GroupHomomorphism, free_abelian,
                      group_from_presentation, quotient_by, quotient_by_power)
from .fields import QQ, FieldElement, FunctionField
from .grouprings import GroupRingElement, MonomialMap, canonical_components
from .orbifold import (Cell, ComplexError, Diagnostic, EquivariantComplex, EulerStructure,
                       HomologyOrientation, SingularCurve, check, component_torsion,
                       surviving_cells, tau0, twist, underlying_complex, underlying_map,
                       underlying_real_complex)
from .torsion import (BasedChainComplex, HomologyData, ShortExactSequence, TorsionError,
                      homology, les_torsion, long_exact_sequence, theta,
                      torsion)


class GluingError(ValueError):
    pass


def _torus_boundary(G, mu, lam, ids):
    """Standard torus faces: da = (mu-1)v, db = (lam-1)v, df = (1-lam)a + (mu-1)b."""
    v, a, b, f = ids
    one = GroupRingElement.scalar(G, 1)
    M = GroupRingElement.of(mu) - one
    L = GroupRingElement.of(lam) - one
    return {a: {v: M}, b: {v: L}, f: {a: -L, b: M}}


def _interior_cells(G, mu, h, torus, prefix="", curve=None):
    """Cells and boundaries of the solid torus interior attached to ``torus``."""
    v, a, b, f = torus
    one = GroupRingElement.scalar(G, 1)
    M = GroupRingElement.of(mu) - one
    Hm = GroupRingElement.of(h) - one
    n = {k: prefix + k for k in ("e0", "e1_1", "e1_2", "e2_1", "e2_2", "e3")}
    cells = [Cell(n["e0"], 0, curve), Cell(n["e1_1"], 1), Cell(n["e1_2"], 1, curve),
             Cell(n["e2_1"], 2), Cell(n["e2_2"], 2), Cell(n["e3"], 3)]
    bd = {
        n["e1_1"]: {n["e0"]: one, v: -one},
        n["e1_2"]: {n["e0"]: Hm},
        n["e2_1"]: {n["e1_1"]: -Hm, n["e1_2"]: one, b: -one},
        n["e2_2"]: {n["e1_1"]: M, a: one},
        n["e3"]: {n["e2_2"]: Hm, n["e2_1"]: M, f: one},
    }
    return cells, bd, n


def solid_torus_complex(alpha: int, H: AbelianGroup, h: GroupElement, mu: GroupElement,
                        name="solid torus") -> EquivariantComplex:
    """``(S^1 x D^2)/Z_alpha`` with boundary torus cells v, a, b, f.

    The meridian 1-cell a has class mu, the longitude b has class h (the
    core class). For alpha >= 2 the core cells e0, e1_2 are singular.
    """
    if alpha < 1:
        raise ValueError("alpha must be >= 1")
    if h.group != H or mu.group != H:
        raise ValueError("classes must lie in H")
    if alpha >= 2 and not (mu ** alpha).is_identity():
        raise ValueError(f"meridian^{alpha} is not trivial in H")
    torus = ("v", "a", "b", "f")
    curve = 1 if alpha >= 2 else None
    cells = [Cell("v", 0), Cell("a", 1), Cell("b", 1), Cell("f", 2)]
    bd = _torus_boundary(H, mu, h, torus)
    inner, ibd, n = _interior_cells(H, mu, h, torus, curve=curve)
    bd.update(ibd)
    curves = [SingularCurve(1, alpha, mu, h, n["e0"], n["e1_2"])] if curve else []
    return check(EquivariantComplex(H, cells + inner, bd, curves, name))


def thickened_torus_complex(H: AbelianGroup = None, mu=None, lam=None, name="T2 x I"):
    """``T^2 x [0, 1]`` with tori (v0, a0, b0, f0) and (v1, a1, b1, f1)."""
    if H is None:
        H = free_abelian(2)
        mu, lam = H.gen(0), H.gen(1)
    one = GroupRingElement.scalar(H, 1)
    M = GroupRingElement.of(mu) - one
    L = GroupRingElement.of(lam) - one
    cells = []
    bd = {}
    for s in ("0", "1"):
        ids = ("v" + s, "a" + s, "b" + s, "f" + s)
        cells += [Cell(ids[0], 0), Cell(ids[1], 1), Cell(ids[2], 1), Cell(ids[3], 2)]
        bd.update(_torus_boundary(H, mu, lam, ids))
    cells += [Cell("c", 1), Cell("A", 2), Cell("B", 2), Cell("W", 3)]
    bd["c"] = {"v1": one, "v0": -one}
    bd["A"] = {"c": M, "a0": one, "a1": -one}
    bd["B"] = {"c": L, "b0": one, "b1": -one}
    bd["W"] = {"f1": one, "f0": -one, "A": -L, "B": M}
    return check(EquivariantComplex(H, cells, bd, (), name))


def local_unknot_exterior(name="S1 x S2 minus unknot"):
    """Exterior of an unknot K in a ball of ``S^1 x S^2``.

    H_1 = Z<t> + Z<m> with m the meridian of K. The boundary torus is
    (v, a, b, f) with a the meridian of K and b its (null-homologous)
    longitude, ready to be filled along a.
    """
    H = free_abelian(2, ("t", "m"))
    t, m = H.gen(0), H.gen(1)
    ident = H.identity()
    one = GroupRingElement.scalar(H, 1)
    T = GroupRingElement.of(t) - one
    # complement of K in S^3: a solid torus with meridian = longitude of K
    V = solid_torus_complex(1, H, m, ident)
    V = V.flip_cells(["f"])
    cells = [Cell("v", 0), Cell("a", 1), Cell("b", 1), Cell("f", 2)]
    bd = {"a": dict(V.faces("b")), "b": dict(V.faces("a")),
          "f": {("b" if k == "a" else "a"): x for k, x in V.faces("f").items()}}
    ren = {"a": "b", "b": "a"}
    for c in V.all_cells():
        if c.id in ("v", "a", "b", "f"):
            continue
        cells.append(Cell(c.id, c.dim))
        bd[c.id] = {ren.get(k, k): x for k, x in V.faces(c.id).items()}
    # connected sum with S^1 x S^2 along a separating sphere B
    cells += [Cell("s", 1), Cell("D", 2), Cell("S", 2), Cell("W", 3)]
    bd["s"] = {"v": T}
    bd["e3"] = dict(bd["e3"], S=-one)
    bd["W"] = {"S": one, "D": -T}
    order = [c for d in range(4) for c in cells if c.dim == d]
    return check(EquivariantComplex(H, order, bd, (), name))


def two_curve_orbifold(alpha1=2, alpha2=3):
    """S^3 with a singular Hopf link of multiplicities alpha1 and alpha2.

    Built from T^2 x I by filling one end along mu and the other along lam.
    """
    E = thickened_torus_complex().flip_cells(["f0"])
    g1 = glue(E, FillingData(("v1", "a1", "b1", "f1"), alpha1, prefix="V1."))
    g2 = glue(g1.Y, FillingData(("v0", "b0", "a0", "f0"), alpha2, prefix="V0."))
    g2.Y.name = "S3 with Hopf link"
    return g2.Y


# gluing ---------------------------------------------------------------
@dataclass
class FillingData:
    """Which boundary torus to fill, and with which multiplicity.

    ``torus`` lists the cell ids (v, a, b, f) in standard form; the filling
    meridian is identified with a. ``h`` optionally asserts the core class
    in the glued group.
    """

    torus: tuple
    alpha: int = 1
    h: Optional[GroupElement] = None
    prefix: str = "V."


def torus_classes(E: EquivariantComplex, torus):
    """(mu, lam) read off a torus subcomplex in standard form."""
    v, a, b, f = torus
    G = E.group
    diags = []
    for cid, dim in zip(torus, (0, 1, 1, 2)):
        if cid not in E._by_id or E.cell(cid).dim != dim:
            diags.append(Diagnostic("torus", (cid,), f"{cid} is not a {dim}-cell of E"))
        elif E.cell(cid).singular:
            diags.append(Diagnostic("torus", (cid,), f"{cid} lies on the singular set"))
    if diags:
        raise ComplexError(diags)

    def loop_class(cid):
        faces = E.faces(cid)
        if not faces:
            return G.identity()
        if set(faces) != {v}:
            raise ComplexError([Diagnostic("torus", (cid,), f"{cid} is not a loop at {v}")])
        x = faces[v]
        pos = [k for k, c in x.terms.items() if c == 1]
        if len(x.terms) != 2 or len(pos) != 1 or x.terms.get(G.identity().coords) != -1:
            raise ComplexError([Diagnostic("torus", (cid,), f"boundary of {cid} is not (g - 1){v}")])
        return G.element(pos[0])

    mu, lam = loop_class(a), loop_class(b)
    expected = {k: x for k, x in _torus_boundary(G, mu, lam, torus)[f].items() if x}
    if E.faces(f) != expected:
        raise ComplexError([Diagnostic("torus", (f,),
                                       f"boundary of {f} is not (1 - lam){a} + (mu - 1){b}")])
    return mu, lam


class Gluing:
    """Result of a filling; unpacks as ``(Y, euler_map, orientation_map)``."""

    def __init__(self, E, filling, Y, q, mu, h, interior):
        self.E, self.filling, self.Y, self.q = E, filling, Y, q
        self.mu, self.h, self.interior = mu, h, interior

    def __iter__(self):
        return iter((self.Y, self.euler_map, self.orientation_map))

    @property
    def curve_index(self):
        c = self.Y.cell(self.interior["e0"])
        return c.curve

    def euler_map(self, e: EulerStructure) -> EulerStructure:
        return EulerStructure(self.q(e.offset))

    def real_sequence(self, omega: HomologyOrientation = None):
        """The pair (|Y|, |E|) over Q: SES with homology bases of C', C''."""
        omega = omega or HomologyOrientation.pinned(self.E)
        C, _ = underlying_real_complex(self.Y)
        E_ids = {c.id for c in self.E.all_cells()}
        sel = [[k for k, c in enumerate(layer) if c.id in E_ids] for layer in self.Y.cells]
        ses = ShortExactSequence.from_subcomplex(C, sel)
        Hp = _signed(omega.homology(self.E), omega.sign)
        rest = [[c.id for c in layer if c.id not in E_ids] for layer in self.Y.cells]
        rel = []
        for d, ids in enumerate(rest):
            hs = []
            for key in (("e2_2",) if d == 2 else ("e3",) if d == 3 else ()):
                cid = self.interior[key]
                hs.append([Fraction(int(x == cid)) for x in ids])
            rel.append(hs)
        return ses, Hp, HomologyData(rel)

    def orientation_map(self, omega: HomologyOrientation, convention="consistent") -> HomologyOrientation:
        """Induced orientation of H_*(|Y|; R) from omega on |E|.

        Pick the orientation making the torsion of the pair's long exact
        sequence positive, then correct its sign. ``convention="printed"``
        uses (-1)^(1 + (b1(E) + 1)(b1(Y) + 1)); the default uses
        (-1)^(1 + theta(c, c')), which is the sign the gluing formulas need.
        Both agree whenever theta = (b1(E) + 1)(b1(Y) + 1) mod 2.
        """
        ses, Hp, Hpp = self.real_sequence(omega)
        ref = HomologyOrientation.pinned(self.Y)
        H = ref.homology(self.Y)
        t = long_exact_sequence(ses, H, Hp, Hpp).torsion
        s = 1 if t > 0 else -1
        if convention == "printed":
            flip = 1 + (_betti(ses.Cp, 1) + 1) * (_betti(ses.C, 1) + 1)
        elif convention == "consistent":
            flip = 1 + theta(H.ranks, Hp.ranks, Hpp.ranks)
        else:
            raise ValueError(f"unknown convention {convention!r}")
        return HomologyOrientation(-s if flip % 2 else s, ref.bases)

    def sign_conventions_agree(self, omega: HomologyOrientation = None) -> bool:
        omega = omega or HomologyOrientation.pinned(self.E)
        return (self.orientation_map(omega).sign
                == self.orientation_map(omega, "printed").sign)


def _betti(C, i):
    return homology(C).ranks[i] if i < len(C.dims) else 0


def _signed(H: HomologyData, s):
    """Homology bases with the first vector multiplied by s."""
    if s > 0:
        return H
    cycles = [list(hs) for hs in H.cycles]
    for hs in cycles:
        if hs:
            hs[0] = [-x for x in hs[0]]
            break
    return HomologyData(cycles)


def glue(E: EquivariantComplex, f: FillingData) -> Gluing:
    """Fill the torus ``f.torus`` of E with ``(S^1 x D^2)/Z_alpha``."""
    if f.alpha < 1:
        raise GluingError("alpha must be >= 1")
    mu, lam = torus_classes(E, f.torus)
    Q, q = quotient_by_power(E.group, mu, f.alpha)
    mu_Y, h = q(mu), q(lam)
    if f.h is not None and f.h != h:
        raise GluingError(f"core class {f.h.word()} differs from the longitude class {h.word()}")
    if not (mu_Y ** f.alpha).is_identity():
        raise GluingError(f"meridian^{f.alpha} survives in the glued group")
    index = max((c.index for c in E.curves), default=0) + 1
    curve = index if f.alpha >= 2 else None
    base = E.push_forward(q)
    cells, bd, names = _interior_cells(Q, mu_Y, h, f.torus, f.prefix, curve)
    clash = [c.id for c in cells if c.id in base._by_id]
    if clash:
        raise GluingError(f"cell ids already used: {clash}")
    boundary = dict(base.boundary)
    boundary.update(bd)
    curves = list(base.curves)
    if curve:
        curves.append(SingularCurve(index, f.alpha, mu_Y, h, names["e0"], names["e1_2"]))
    order = []
    for d in range(max(E.top_dim, 3) + 1):
        order += [c for c in base.all_cells() if c.dim == d] + [c for c in cells if c.dim == d]
    Y = check(EquivariantComplex(Q, order, boundary, curves, (E.name + " filled").strip()))
    return Gluing(E, f, Y, q, mu, h, names)


def remove_singular_curve(Y: EquivariantComplex, k: int):
    """Forget curve k: kill its meridian and treat its cells as free.

    Returns ``(Yprime, q)`` with q the quotient map on groups.
    """
    try:
        cv = Y.curve(k)
    except StopIteration:
        raise ValueError(f"no singular curve with index {k}") from None
    Q, q = quotient_by(Y.group, [cv.meridian])
    cells = [Cell(c.id, c.dim, None if c.curve == k else c.curve) for c in Y.all_cells()]
    X = Y.push_forward(q)
    curves = [c for c in X.curves if c.index != k]
    return check(EquivariantComplex(Q, cells, X.boundary, curves, Y.name)), q


# verification harnesses -------------------------------------------------
@dataclass
class ReportRow:
    index: int
    conductor: int
    case: str
    left: object
    right: object
    equal: bool
    note: str = ""


@dataclass
class Report:
    title: str
    rows: list = dc_field(default_factory=list)
    facts: list = dc_field(default_factory=list)

    @property
    def ok(self):
        return all(r.equal for r in self.rows) and all(v for _, v in self.facts)

    def cases(self):
        return {r.case for r in self.rows}

    def render(self) -> str:
        head = ("component", "conductor", "case", "left", "right", "equal")
        body = [(str(r.index + 1), str(r.conductor), r.case, _show(r.left), _show(r.right),
                 "yes" if r.equal else "no") for r in self.rows]
        widths = [max(len(x) for x in col) for col in zip(head, *body)]
        lines = [self.title]
        for row in [head] + body:
            lines.append("  ".join(x.ljust(w) for x, w in zip(row, widths)).rstrip())
        for name, value in self.facts:
            lines.append(f"{name}: {'yes' if value else 'no'}")
        return "\n".join(lines)

    def __str__(self):
        return self.render()


def _show(x):
    return x.render() if isinstance(x, FieldElement) else str(x)


def _case3_basis(gl: Gluing, phiY, eY):
    """Twisted pair sequence and the basis of H_*(C^phi(E)) from the connecting map.

    Returns ``(Cp, basis, direct)`` where ``direct`` holds the vectors of
    the boundary faces of e2_2 and e3 lying in E, for comparison.
    """
    Y = gl.Y
    C = twist(Y, phiY, eY)
    keep = surviving_cells(Y, phiY)
    E_ids = {c.id for c in gl.E.all_cells()}
    sel = [[k for k, c in enumerate(layer) if c.id in E_ids] for layer in keep]
    ses = ShortExactSequence.from_subcomplex(C, sel)
    rest = [[c.id for c in layer if c.id not in E_ids] for layer in keep]
    fld = C.field
    rel = []
    for d, ids in enumerate(rest):
        keys = ("e2_2",) if d == 2 else ("e3",) if d == 3 else ()
        rel.append([[fld.one if x == gl.interior[k] else fld.zero for x in ids] for k in keys])
    Hpp = HomologyData(rel)
    les = long_exact_sequence(ses, HomologyData([[] for _ in C.dims]), None, Hpp)
    basis = [[] for _ in ses.Cp.dims]
    basis[1] = [les.connecting[2][0]]
    basis[2] = [les.connecting[3][0]]
    direct = []
    for key, d in (("e2_2", 2), ("e3", 3)):
        cid = gl.interior[key]
        lift = [fld.one if c.id == cid else fld.zero for c in keep[d]]
        dx = C.boundary_of(d, lift)
        direct.append([dx[k] for k in sel[d - 1]])
    basis = HomologyData(basis)
    lt = les_torsion(ses, HomologyData([[] for _ in C.dims]), basis, Hpp)
    return ses.Cp, basis, direct, lt


def verify_gluing(E: EquivariantComplex, f: FillingData, e: EulerStructure = None,
                  omega: HomologyOrientation = None) -> Report:
    """Check the three gluing formulas on every component of Y."""
    e = e or EulerStructure.reference(E)
    omega = omega or HomologyOrientation.pinned(E)
    gl = glue(E, f)
    Y = gl.Y
    eY = gl.euler_map(e)
    wY = gl.orientation_map(omega)
    sY = tau0(Y, wY)
    sE = tau0(E, omega)
    report = Report(f"gluing {E.name} with alpha = {f.alpha}")
    for comp in canonical_components(Y.group):
        phiY = comp.map
        phi = phiY.pullback(gl.q)
        C_Y = twist(Y, phiY, eY)
        if not homology(C_Y).is_zero:
            report.rows.append(ReportRow(comp.index, comp.field.conductor, "skipped",
                                         0, 0, True, "not acyclic"))
            continue
        left = torsion(C_Y).value * sY
        if not phiY.is_trivial_on(gl.q(gl.mu)):
            case, right = "1", component_torsion(E, phi, e, omega, sign=sE)
        elif not phiY.is_trivial_on(gl.h):
            case = "2"
            right = component_torsion(E, phi, e, omega, sign=sE) / (phiY(gl.h) - 1)
        else:
            case = "3"
            Cp, basis, direct, lt = _case3_basis(gl, phiY, eY)
            if [basis.cycles[1][0], basis.cycles[2][0]] != direct:
                raise TorsionError("connecting map disagrees with the boundary of the filling")
            right = torsion(twist(E, phi, e), basis).value * sE
            report.rows.append(ReportRow(comp.index, comp.field.conductor, case, left, right,
                                         left == right, f"les_torsion = {lt}"))
            continue
        report.rows.append(ReportRow(comp.index, comp.field.conductor, case, left, right,
                                     left == right))
    return report


def verify_curve_removal(Y: EquivariantComplex, k: int, e: EulerStructure = None,
                         omega: HomologyOrientation = None) -> Report:
    """Torsion of Y and of Y with curve k removed agree where phi(mu_k) = 1."""
    e = e or EulerStructure.reference(Y)
    omega = omega or HomologyOrientation.pinned(Y)
    Yp, q = remove_singular_curve(Y, k)
    eP = EulerStructure(q(e.offset))
    report = Report(f"removing curve {k} from {Y.name}")
    s = tau0(Y, omega)
    for comp in canonical_components(Yp.group):
        phiY = comp.map.pullback(q)
        left = component_torsion(Y, phiY, e, omega, sign=s)
        right = component_torsion(Yp, comp, eP, omega, sign=s)
        report.rows.append(ReportRow(comp.index, comp.field.conductor, "extends", left, right,
                                     left == right))
    return report


def _factor_through(psi: MonomialMap, q: GroupHomomorphism) -> MonomialMap:
    """The map on ``q.codomain`` whose pullback along q is psi."""
    return MonomialMap(q.codomain, psi.field, [psi.exponent(q.lift(g)) for g in q.codomain.gens()])


def verify_underlying_decomposition(E: EquivariantComplex, f: FillingData,
                                    e: EulerStructure = None,
                                    omega: HomologyOrientation = None) -> Report:
    """Split the torsion of Y = E + (S^1 x D^2)/Z_alpha into |Y|- and E-parts.

    Components with psi(mu) = 1 are compared with the torsion of |Y|, the
    others with the image of the torsion of E (computed in its own field
    and substituted).
    """
    e = e or EulerStructure.reference(E)
    omega = omega or HomologyOrientation.pinned(E)
    if E.curves:
        raise ValueError("the exterior must be a manifold")
    if not E.group.invariant_factors == () or E.group.free_rank < 1:
        raise ValueError("the exterior must have free H_1")
    gl = glue(E, f)
    Y = gl.Y
    mu = gl.mu
    if mu.order() != 0:
        raise ValueError("meridian has finite order: the knot is not null-homologous")
    under = underlying_complex(Y)
    qu = underlying_map(Y)
    Hu = qu.codomain
    if Hu.free_rank < 1:
        raise ValueError("b1(|Y|) must be at least 1")
    eY, wY = gl.euler_map(e), gl.orientation_map(omega)
    eU = EulerStructure(qu(eY.offset))
    alpha = f.alpha
    report = Report(f"decomposing {Y.name} with alpha = {alpha}")
    split = group_from_presentation(
        Hu.ngens + 1,
        [[o * int(j == k) for k in range(Hu.ngens + 1)] for j, o in enumerate(Hu.orders) if o]
        + [[0] * Hu.ngens + [alpha]])[0]
    report.facts.append(("meridian has infinite order in H_1(E)", True))
    report.facts.append(("H_1^orb(Y) = H_1(|Y|) + Z_alpha",
                         (split.free_rank, split.invariant_factors)
                         == (Y.group.free_rank, Y.group.invariant_factors)))
    report.facts.append((f"f is {alpha} to 1", qu.kernel_order() == alpha))
    mu_Y = gl.q(mu)
    comps = canonical_components(Y.group)
    through = [c for c in comps if c.map.is_trivial_on(mu_Y)]
    report.facts.append(("components with psi(mu) = 1 match the splitting of |Y|",
                         len(through) == len(canonical_components(Hu))))
    sY, sU = tau0(Y, wY), tau0(under, wY)
    tauE = None
    for comp in comps:
        left = component_torsion(Y, comp, eY, wY, sign=sY)
        if comp.map.is_trivial_on(mu_Y):
            right = component_torsion(under, _factor_through(comp.map, qu), eU, wY, sign=sU)
            case = "|Y|"
        else:
            if tauE is None:
                tauE = component_torsion(E, canonical_components(E.group)[0], e, omega)
            psi = comp.map.pullback(gl.q)
            fld = comp.field
            images = [psi(g) for g in E.group.gens()]
            right = fld.zero if tauE.is_zero() else tauE.substitute(fld, images)
            case = "E"
        report.rows.append(ReportRow(comp.index, comp.field.conductor, case, left, right,
                                     left == right))
    return report


# knots ------------------------------------------------------------------
@dataclass
class KnotPresentation:
    """Wirtinger-style presentation: generators 1..n, relators as signed letters."""

    generators: int
    relators: list
    name: str = ""

    def __post_init__(self):
        self.relators = [list(map(int, r)) for r in self.relators]
        for r in self.relators:
            for x in r:
                if x == 0 or abs(x) > self.generators:
                    raise ValueError(f"letter {x} is not a generator")
        G, _ = group_from_presentation(self.generators, self.abelian_relations())
        if (G.free_rank, G.invariant_factors) != (1, ()):
            raise ValueError("abelianization is not infinite cyclic")

    def abelian_relations(self):
        rows = []
        for r in self.relators:
            row = [0] * self.generators
            for x in r:
                row[abs(x) - 1] += 1 if x > 0 else -1
            rows.append(row)
        return rows

    def images(self):
        """Exponent of t for each generator under the abelianization."""
        G, proj = group_from_presentation(self.generators, self.abelian_relations())
        imgs = [proj(proj.domain.gen(i)).coords[0] for i in range(self.generators)]
        if imgs and imgs[0] < 0:
            imgs = [-k for k in imgs]
        return imgs


def fox_derivative(word, j, images):
    """Abelianized Fox derivative of ``word`` with respect to generator j.

    Returns a Laurent polynomial ``{(k,): c}`` in t.
    """
    out = {}
    pre = 0
    for x in word:
        g = abs(x)
        if x > 0:
            if g == j:
                out[(pre,)] = out.get((pre,), 0) + 1
            pre += images[g - 1]
        else:
            pre -= images[g - 1]
            if g == j:
                out[(pre,)] = out.get((pre,), 0) - 1
    return P.clean(out)


def _laurent_det(M):
    """Determinant of a square matrix of Laurent polynomials by expansion."""
    n = len(M)
    if n == 0:
        return {(0,): 1}
    total = {}
    for j in range(n):
        if not M[0][j]:
            continue
        minor = [row[:j] + row[j + 1:] for row in M[1:]]
        term = P.mul(M[0][j], _laurent_det(minor))
        total = P.add(total, term) if j % 2 == 0 else P.sub(total, term)
    return P.clean(total)


def normalize_laurent(p):
    """Remove the monomial unit and make the leading coefficient positive."""
    p = P.clean(p)
    if not p:
        return p
    lo = min(k[0] for k in p)
    p = {(k[0] - lo,): c for k, c in p.items()}
    top = max(k[0] for k in p)
    return P.neg(p) if p[(top,)] < 0 else p


def fox_alexander(K: KnotPresentation):
    """Alexander polynomial from the Fox Jacobian: gcd of its maximal minors."""
    n = K.generators
    if n == 1:
        return {(0,): 1}
    images = K.images()
    J = [[fox_derivative(r, j, images) for j in range(1, n + 1)] for r in K.relators]
    if len(J) < n - 1:
        raise ValueError("degenerate presentation: too few relators")
    from itertools import combinations
    g = {}
    for rows in combinations(range(len(J)), n - 1):
        for drop in range(n):
            minor = [[J[r][c] for c in range(n) if c != drop] for r in rows]
            d = _laurent_det(minor)
            if d:
                g = d if not g else _laurent_gcd(g, d)
    if not g:
        raise ValueError("degenerate presentation: all minors vanish")
    return normalize_laurent(g)


def _laurent_gcd(p, q):
    p, q = normalize_laurent(p), normalize_laurent(q)
    g = P.gcd({k: Fraction(c) for k, c in p.items()}, {k: Fraction(c) for k, c in q.items()},
              Fraction(1))
    g = P.clean(g)
    # clear denominators and content to get a primitive integer polynomial
    from math import gcd, lcm
    den = 1
    for c in g.values():
        den = lcm(den, Fraction(c).denominator)
    g = {k: int(c * den) for k, c in g.items()}
    cont = 0
    for c in g.values():
        cont = gcd(cont, c)
    return {k: c // cont for k, c in g.items()}


def knot_complex(K: KnotPresentation, name=None) -> EquivariantComplex:
    """Presentation 2-complex of the knot group, a spine of the exterior.

    One 0-cell, a 1-cell per generator and a 2-cell for every relator but
    the last one (which is redundant for a Wirtinger presentation).
    """
    H = free_abelian(1)
    images = K.images()
    cells = [Cell("v", 0)] + [Cell(f"x{i}", 1) for i in range(1, K.generators + 1)]
    bd = {}
    one = GroupRingElement.scalar(H, 1)
    for i in range(1, K.generators + 1):
        bd[f"x{i}"] = {"v": GroupRingElement.of(H.element((images[i - 1],))) - one}
    rels = K.relators[:-1] if len(K.relators) >= K.generators else K.relators
    for k, r in enumerate(rels, 1):
        cells.append(Cell(f"r{k}", 2))
        faces = {}
        for j in range(1, K.generators + 1):
            d = fox_derivative(r, j, images)
            if d:
                faces[f"x{j}"] = GroupRingElement(H, {(e[0],): c for e, c in d.items()})
        bd[f"r{k}"] = faces
    return check(EquivariantComplex(H, cells, bd, (), name or K.name))


TREFOIL = KnotPresentation(2, [[1, 2, 1, -2, -1, -2]], "trefoil")
FIGURE_EIGHT = KnotPresentation(2, [[2, 1, -2, 1, 2, -1, -2, 1, -2, -1]], "figure-eight")
