"""Equivariant cell complexes of orbifold covers and their Turaev torsion."""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Optional

from .abelian import AbelianGroup, GroupElement, GroupHomomorphism, quotient_by
from .fields import QQ, FieldElement
from .grouprings import GroupRingElement, MonomialMap, SplitComponent, canonical_components
from .torsion import BasedChainComplex, HomologyData, homology, torsion


@dataclass(frozen=True)
class Cell:
    id: str
    dim: int
    curve: Optional[int] = None

    @property
    def singular(self):
        return self.curve is not None


@dataclass(frozen=True)
class SingularCurve:
    """A component of the singular link with its stabilized 0- and 1-cell."""

    index: int
    alpha: int
    meridian: GroupElement
    curve_class: GroupElement
    zero_cell: str
    one_cell: str


@dataclass(frozen=True)
class Diagnostic:
    kind: str
    cells: tuple
    message: str

    def __str__(self):
        return f"{self.kind}: {self.message}"


class ComplexError(ValueError):
    def __init__(self, diagnostics):
        self.diagnostics = list(diagnostics)
        super().__init__("; ".join(str(d) for d in self.diagnostics))


class EquivariantComplex:
    """Cells of |Y| with boundaries over Z[H] describing the cover.

    ``boundary[c]`` maps face ids to group-ring coefficients. Cell order
    within each dimension is the basis order of every chain complex built
    from the object.
    """

    def __init__(self, group: AbelianGroup, cells, boundary, curves=(), name=""):
        self.group = group
        self.name = name
        top = max((c.dim for c in cells), default=0)
        self.cells = [[c for c in cells if c.dim == d] for d in range(top + 1)]
        self._by_id = {}
        for c in cells:
            if c.id in self._by_id:
                raise ComplexError([Diagnostic("duplicate", (c.id,), f"cell {c.id} declared twice")])
            self._by_id[c.id] = c
        self.boundary = {}
        for cid, faces in boundary.items():
            faces = {f: (v if isinstance(v, GroupRingElement)
                         else GroupRingElement.scalar(group, v))
                     for f, v in faces.items() if v}
            if faces:
                self.boundary[cid] = faces
        self.curves = tuple(curves)

    # basic access -----------------------------------------------------
    @property
    def top_dim(self):
        return len(self.cells) - 1

    def cell(self, cid) -> Cell:
        return self._by_id[cid]

    def all_cells(self):
        return [c for layer in self.cells for c in layer]

    def dims(self):
        return tuple(len(layer) for layer in self.cells)

    def euler_characteristic(self):
        return sum((-1) ** d * n for d, n in enumerate(self.dims()))

    def faces(self, cid):
        return self.boundary.get(cid, {})

    def curve(self, i) -> SingularCurve:
        return next(c for c in self.curves if c.index == i)

    def _copy(self, cells=None, boundary=None, group=None, curves=None, name=None):
        return EquivariantComplex(group or self.group,
                                  cells if cells is not None else self.all_cells(),
                                  boundary if boundary is not None else self.boundary,
                                  curves if curves is not None else self.curves,
                                  self.name if name is None else name)

    # moves ------------------------------------------------------------
    def permute_cells(self, orders):
        """Reorder cells; ``orders[d]`` is the new list of ids in dimension d."""
        cells = []
        for d, layer in enumerate(self.cells):
            ids = orders.get(d) if isinstance(orders, dict) else orders[d]
            if ids is None:
                cells += layer
                continue
            if sorted(ids) != sorted(c.id for c in layer):
                raise ValueError(f"dimension {d} order is not a permutation")
            cells += [self.cell(i) for i in ids]
        return self._copy(cells=cells)

    def flip_cells(self, ids):
        """Reverse the orientation of the given cells."""
        ids = set(ids)
        for cid in ids:
            if self.cell(cid).singular:
                raise ValueError("cells on the singular set keep the curve orientation")
        bd = {}
        for cid, faces in self.boundary.items():
            s = -1 if cid in ids else 1
            bd[cid] = {f: v * (s * (-1 if f in ids else 1)) for f, v in faces.items()}
        return self._copy(boundary=bd)

    def relift(self, assignment):
        """Replace the lift of each cell c by ``assignment[c] * c``.

        Singular cells of a curve must be moved together by the same element
        (up to the stabilizer), which keeps the curve configuration.
        """
        g = {cid: (x if isinstance(x, GroupElement) else self.group.element(x))
             for cid, x in assignment.items()}
        ident = self.group.identity()
        for cv in self.curves:
            a, b = g.get(cv.zero_cell, ident), g.get(cv.one_cell, ident)
            if not _same_mod(a, b, cv.meridian):
                raise ValueError(f"curve {cv.index}: singular cells must be relifted together")
        bd = {}
        for cid, faces in self.boundary.items():
            gc = g.get(cid, ident)
            out = {}
            for f, v in faces.items():
                gf = g.get(f, ident)
                out[f] = v * GroupRingElement.of(gc * gf.inverse())
            bd[cid] = out
        return self._copy(boundary=bd)

    def push_forward(self, hom: GroupHomomorphism, curves=None, name=None):
        """The same cells with coefficients pushed to ``hom.codomain``."""
        bd = {cid: {f: v.map(hom) for f, v in faces.items()} for cid, faces in self.boundary.items()}
        if curves is None:
            curves = [SingularCurve(c.index, c.alpha, hom(c.meridian), hom(c.curve_class),
                                    c.zero_cell, c.one_cell) for c in self.curves]
        return EquivariantComplex(hom.codomain, self.all_cells(), bd, curves, name or self.name)

    # matrices ---------------------------------------------------------
    def boundary_matrix(self, d):
        """Rows: (d-1)-cells, columns: d-cells, entries in Z[H]."""
        zero = GroupRingElement(self.group)
        rows = self.cells[d - 1]
        cols = self.cells[d]
        return [[self.faces(c.id).get(r.id, zero) for c in cols] for r in rows]

    def __repr__(self):
        return f"EquivariantComplex({self.name or '?'}, H={self.group!r}, cells={self.dims()})"


def _same_mod(a: GroupElement, b: GroupElement, mu: GroupElement):
    d = a * b.inverse()
    k = mu.order()
    if k == 0:
        return d.is_identity()
    return any((mu ** j * d.inverse()).is_identity() for j in range(k))


# validation -----------------------------------------------------------
def validate(X: EquivariantComplex):
    """All invariant violations as a list of Diagnostic (empty when valid)."""
    out = []
    G = X.group
    for c in X.all_cells():
        for f in X.faces(c.id):
            if f not in X._by_id:
                out.append(Diagnostic("unknown-face", (c.id, f), f"{c.id} has unknown face {f}"))
            elif X.cell(f).dim != c.dim - 1:
                out.append(Diagnostic("dimension", (c.id, f), f"face {f} of {c.id} has wrong dimension"))
        if c.singular and c.dim > 1:
            out.append(Diagnostic("singular-dimension", (c.id,),
                                  f"{c.id}: only 0- and 1-cells may lie on the singular set"))
    for cid in X.boundary:
        if cid not in X._by_id:
            out.append(Diagnostic("unknown-cell", (cid,), f"boundary given for unknown cell {cid}"))
    if out:
        return out
    quotients = {}
    for cv in X.curves:
        if cv.meridian.group != G or cv.curve_class.group != G:
            out.append(Diagnostic("group", (cv.zero_cell, cv.one_cell),
                                  f"curve {cv.index}: classes live in a different group"))
            continue
        if not (cv.meridian ** cv.alpha).is_identity():
            out.append(Diagnostic("meridian-order", (cv.one_cell,),
                                  f"curve {cv.index}: meridian^{cv.alpha} is not trivial"))
        for cid, dim in ((cv.zero_cell, 0), (cv.one_cell, 1)):
            if cid not in X._by_id or X.cell(cid).dim != dim or X.cell(cid).curve != cv.index:
                out.append(Diagnostic("curve-cells", (cid,),
                                      f"curve {cv.index}: {cid} is not its tagged {dim}-cell"))
        if cv.one_cell in X._by_id and cv.zero_cell in X._by_id:
            expected = GroupRingElement.of(cv.curve_class) - 1
            faces = X.faces(cv.one_cell)
            if set(faces) - {cv.zero_cell} or (faces.get(cv.zero_cell) or GroupRingElement(G)) != expected:
                out.append(Diagnostic("configuration", (cv.one_cell, cv.zero_cell),
                                      f"curve {cv.index}: boundary of {cv.one_cell} must be "
                                      f"(h - 1)*{cv.zero_cell} with h = {cv.curve_class.word()}"))
        quotients[cv.index] = quotient_by(G, [cv.meridian])[1]
    tagged = {}
    for c in X.all_cells():
        if c.singular:
            tagged.setdefault(c.curve, []).append(c.id)
    known = {cv.index for cv in X.curves}
    for i, ids in tagged.items():
        if i not in known:
            out.append(Diagnostic("curve-cells", tuple(ids), f"cells tagged with undeclared curve {i}"))
    for c in (X.cells[1] if X.top_dim >= 1 else []):
        if sum(v.augmentation() for v in X.faces(c.id).values()):
            out.append(Diagnostic("endpoints", (c.id,),
                                  f"boundary of 1-cell {c.id} does not have augmentation 0"))
    for d in range(2, X.top_dim + 1):
        for c in X.cells[d]:
            total = {}
            for f, a in X.faces(c.id).items():
                for g, b in X.faces(f).items():
                    total[g] = total.get(g, GroupRingElement(G)) + a * b
            for g, v in total.items():
                cg = X.cell(g)
                if cg.singular and cg.curve in quotients:
                    v = v.map(quotients[cg.curve])
                if v:
                    out.append(Diagnostic("boundary-squared", (c.id, g),
                                          f"coefficient of {g} in the boundary of the boundary of {c.id} is {v}"))
    return out


def check(X: EquivariantComplex):
    diags = validate(X)
    if diags:
        raise ComplexError(diags)
    return X


# Euler structures -----------------------------------------------------
@dataclass(frozen=True)
class EulerStructure:
    """An Euler structure as its offset from the reference lift."""

    offset: GroupElement

    @classmethod
    def reference(cls, X: EquivariantComplex):
        return cls(X.group.identity())

    @classmethod
    def from_lift(cls, X: EquivariantComplex, assignment, base=None):
        """Class of the lift ``g_c * c`` (relative to the lift of ``base``).

        The class is the alternating product of the offsets over free cells;
        a singular pair contributes nothing since both move together.
        """
        off = (base.offset if base else X.group.identity())
        for cid, g in assignment.items():
            c = X.cell(cid)
            g = g if isinstance(g, GroupElement) else X.group.element(g)
            if c.singular:
                continue
            off = off * (g if c.dim % 2 == 0 else g.inverse())
        return cls(off)

    def __mul__(self, other):
        return EulerStructure(self.offset * other.offset)


def euler_act(h: GroupElement, e: EulerStructure) -> EulerStructure:
    if h.group != e.offset.group:
        raise ValueError("group mismatch")
    return EulerStructure(h * e.offset)


def offset_cell(X: EquivariantComplex):
    """The free cell whose lift carries an Euler offset (highest dimension first)."""
    for d in range(X.top_dim, -1, -1):
        for c in X.cells[d]:
            if not c.singular:
                return c
    raise ValueError("complex has no free cell")


def offset_assignment(X: EquivariantComplex, e: EulerStructure):
    """A lift assignment realizing e: one free cell moved by offset^(+-1)."""
    if e.offset.is_identity():
        return {}
    c = offset_cell(X)
    return {c.id: e.offset if c.dim % 2 == 0 else e.offset.inverse()}


class UnderlyingMismatch(ValueError):
    pass


def underlying_map(X: EquivariantComplex) -> GroupHomomorphism:
    """Projection ``H_1^orb(Y) -> H_1(|Y|)`` killing all meridians."""
    _, q = quotient_by(X.group, [cv.meridian for cv in X.curves])
    return q


def underlying_complex(X: EquivariantComplex) -> EquivariantComplex:
    """|Y| as a manifold: coefficients in H_1(|Y|), no singular tags."""
    q = underlying_map(X)
    cells = [Cell(c.id, c.dim) for c in X.all_cells()]
    bd = {cid: {f: v.map(q) for f, v in faces.items()} for cid, faces in X.boundary.items()}
    return EquivariantComplex(q.codomain, cells, bd, (), (X.name + " underlying").strip())


def euler_to_underlying(X: EquivariantComplex, e: EulerStructure, lift=None):
    """Image of e in Eul(|Y|), relative to the image of the reference lift.

    ``lift`` optionally gives a configured lift assignment representing e;
    its class is then recomputed on |Y|, where every cell counts.
    Requires the meridians to be trivial already, so that the projection
    ``H_1^orb(Y) -> H_1(|Y|)`` is an isomorphism.
    """
    q = underlying_map(X)
    if not q.is_isomorphism():
        raise UnderlyingMismatch("meridians are not trivial in H_1^orb; no canonical bijection")
    if lift is None:
        return EulerStructure(q(e.offset))
    base = EulerStructure.from_lift(X, lift)
    if base != e:
        raise ValueError("lift does not represent the Euler structure")
    Xbar = underlying_complex(X)
    off = q.codomain.identity()
    for cid, g in lift.items():
        g = g if isinstance(g, GroupElement) else X.group.element(g)
        img = q(g)
        off = off * (img if X.cell(cid).dim % 2 == 0 else img.inverse())
    return EulerStructure(off)


# homology orientations ------------------------------------------------
@dataclass
class HomologyOrientation:
    """A sign relative to reference homology bases of the underlying complex.

    ``bases`` optionally pins the reference as cycles keyed by cell id so
    that it survives permutations and orientation flips.
    """

    sign: int = 1
    bases: Optional[list] = None

    def flipped(self):
        return HomologyOrientation(-self.sign, self.bases)

    @classmethod
    def pinned(cls, X: EquivariantComplex, sign=1):
        C, H = underlying_real_complex(X)
        ids = [[c.id for c in layer] for layer in X.cells]
        bases = [[{ids[d][k]: v[k] for k in range(len(v)) if v[k]} for v in hs]
                 for d, hs in enumerate(H.cycles)]
        return cls(sign, bases)

    def after_flip(self, ids):
        """The same orientation class seen from a complex with cells flipped."""
        if self.bases is None:
            raise ValueError("only pinned orientations can be transported")
        ids = set(ids)
        bases = [[{c: (-v if c in ids else v) for c, v in h.items()} for h in hs] for hs in self.bases]
        return HomologyOrientation(self.sign, bases)

    def homology(self, X: EquivariantComplex, C=None):
        if self.bases is None:
            return underlying_real_complex(X)[1]
        cycles = []
        for d, layer in enumerate(X.cells):
            hs = self.bases[d] if d < len(self.bases) else []
            cycles.append([[Fraction(h.get(c.id, 0)) for c in layer] for h in hs])
        return HomologyData(cycles)


def underlying_real_complex(X: EquivariantComplex):
    """C(|Y|; Q) by augmentation, with reference (reduced-echelon) homology bases."""
    bds = []
    for d in range(1, X.top_dim + 1):
        M = X.boundary_matrix(d)
        bds.append([[Fraction(x.augmentation()) for x in row] for row in M])
    C = BasedChainComplex(QQ, X.dims(), bds)
    return C, homology(C)


def tau0(X: EquivariantComplex, omega: HomologyOrientation = None) -> int:
    omega = omega or HomologyOrientation()
    C, _ = underlying_real_complex(X)
    H = omega.homology(X)
    value = torsion(C, H).value
    s = 1 if value > 0 else -1
    return s * omega.sign


# twisting -------------------------------------------------------------
def _as_map(X, comp):
    if isinstance(comp, SplitComponent):
        if comp.group != X.group:
            raise ValueError("component belongs to a different group")
        return comp.map
    if isinstance(comp, MonomialMap):
        return comp
    raise TypeError("expected a SplitComponent or MonomialMap")


def surviving_cells(X: EquivariantComplex, phi_map: MonomialMap):
    """Cells kept by the twist: free cells and singular cells of curves with phi(mu) = 1."""
    dead = {cv.index for cv in X.curves if not phi_map.is_trivial_on(cv.meridian)}
    return [[c for c in layer if not (c.singular and c.curve in dead)] for layer in X.cells]


def twist(X: EquivariantComplex, comp, e: EulerStructure = None) -> BasedChainComplex:
    """``C^phi(|Y^|)`` in the basis of the lift representing e."""
    phi_map = _as_map(X, comp)
    if e is not None and not e.offset.is_identity():
        X = X.relift(offset_assignment(X, e))
    keep = surviving_cells(X, phi_map)
    fld = phi_map.field
    bds = []
    for d in range(1, len(keep)):
        rows = keep[d - 1]
        cols = keep[d]
        mat = [[fld.zero] * len(cols) for _ in rows]
        for j, c in enumerate(cols):
            faces = X.faces(c.id)
            for i, r in enumerate(rows):
                v = faces.get(r.id)
                if v:
                    mat[i][j] = phi_map(v)
        bds.append(mat)
    return BasedChainComplex(fld, [len(k) for k in keep], bds)


class TorsionVector:
    """One torsion value per splitting component, in component order."""

    def __init__(self, components, values):
        self.components = list(components)
        self.values = list(values)

    def __getitem__(self, i):
        return self.values[i]

    def __len__(self):
        return len(self.values)

    def __iter__(self):
        return iter(self.values)

    def __eq__(self, other):
        return isinstance(other, TorsionVector) and self.values == other.values

    def scaled(self, factors):
        return TorsionVector(self.components, [v * f for v, f in zip(self.values, factors)])

    def __neg__(self):
        return TorsionVector(self.components, [-v for v in self.values])

    def rows(self):
        return [(str(c), c.field, v) for c, v in zip(self.components, self.values)]

    def __repr__(self):
        return "TorsionVector(" + ", ".join(f"{v}" for v in self.values) + ")"


def component_torsion(X: EquivariantComplex, comp, e: EulerStructure = None,
                      omega: HomologyOrientation = None, sign=None) -> FieldElement:
    """``tau^phi(Y, e, omega)``: 0 unless the twisted complex is acyclic."""
    C = twist(X, comp, e)
    H = homology(C)
    fld = C.field
    if not H.is_zero:
        return fld.zero
    s = tau0(X, omega) if sign is None else sign
    value = torsion(C, H, check=False).value
    return value if s > 0 else -value


def orbifold_torsion(X: EquivariantComplex, e: EulerStructure = None,
                     omega: HomologyOrientation = None, components=None) -> TorsionVector:
    """Orbifold Turaev torsion as a vector over the canonical splitting."""
    comps = components if components is not None else canonical_components(X.group)
    s = tau0(X, omega)
    return TorsionVector(comps, [component_torsion(X, c, e, omega, sign=s) for c in comps])
