"""Integral group rings Z[H] and their splitting maps into function fields."""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .abelian import (AbelianGroup, CharacterClass, GroupElement, GroupHomomorphism,
                      character_classes)
from .fields import FieldElement, FunctionField


class GroupRingElement:
    """A finite Z-linear combination of elements of an abelian group."""

    __slots__ = ("group", "terms")

    def __init__(self, group: AbelianGroup, terms=None):
        self.group = group
        out = {}
        for g, c in (terms or {}).items():
            if isinstance(g, GroupElement):
                g = g.coords
            key = group.element(g).coords
            out[key] = out.get(key, 0) + int(c)
        self.terms = {k: v for k, v in out.items() if v}

    @classmethod
    def of(cls, g: GroupElement, c=1):
        return cls(g.group, {g.coords: c})

    @classmethod
    def scalar(cls, group, c):
        return cls(group, {group.identity().coords: c})

    def _coerce(self, other):
        if isinstance(other, GroupRingElement):
            if other.group != self.group:
                raise ValueError("group mismatch")
            return other
        if isinstance(other, GroupElement):
            return GroupRingElement.of(other)
        if isinstance(other, int):
            return GroupRingElement.scalar(self.group, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms = dict(self.terms)
        for k, v in other.terms.items():
            terms[k] = terms.get(k, 0) + v
        return GroupRingElement(self.group, terms)

    __radd__ = __add__

    def __neg__(self):
        return GroupRingElement(self.group, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms = {}
        for k1, v1 in self.terms.items():
            for k2, v2 in other.terms.items():
                k = self.group.element(tuple(a + b for a, b in zip(k1, k2))).coords
                terms[k] = terms.get(k, 0) + v1 * v2
        return GroupRingElement(self.group, terms)

    __rmul__ = __mul__

    def __eq__(self, other):
        other = self._coerce(other) if not isinstance(other, GroupRingElement) else other
        if other is NotImplemented:
            return False
        return self.group == other.group and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def augmentation(self) -> int:
        return sum(self.terms.values())

    def map(self, hom: GroupHomomorphism) -> "GroupRingElement":
        """Push forward along a group homomorphism."""
        out = {}
        for k, v in self.terms.items():
            img = hom(self.group.element(k)).coords
            out[img] = out.get(img, 0) + v
        return GroupRingElement(hom.codomain, out)

    def __repr__(self):
        if not self.terms:
            return "0"
        names = self.group.generator_names()
        parts = []
        for k in sorted(self.terms):
            v = self.terms[k]
            word = "*".join(n if e == 1 else f"{n}^{e}" for n, e in zip(names, k) if e)
            if not word:
                parts.append(str(v))
            elif v == 1:
                parts.append(word)
            elif v == -1:
                parts.append("-" + word)
            else:
                parts.append(f"{v}*{word}")
        return " + ".join(parts).replace("+ -", "- ")


def augmentation(x: GroupRingElement) -> int:
    return x.augmentation()


class MonomialMap:
    """A ring map Z[H] -> F sending each generator of H to ``zeta^k t^e``.

    ``images[i] = (k, e)`` with ``k`` taken modulo the field's conductor.
    """

    def __init__(self, group: AbelianGroup, field: FunctionField, images):
        self.group = group
        self.field = field
        self.images = tuple((int(k) % field.conductor, tuple(int(a) for a in e))
                            for k, e in images)
        if len(self.images) != group.ngens:
            raise ValueError("one image per generator required")
        n = field.conductor
        for (k, e), m in zip(self.images, group.orders):
            if m and (k * m % n or any(e)):
                raise ValueError("image does not respect generator order")

    def exponent(self, g):
        """``(k, e)`` with phi(g) = zeta^k t^e."""
        coords = g.coords if isinstance(g, GroupElement) else g
        k = 0
        e = [0] * self.field.nvars
        for c, (ki, ei) in zip(coords, self.images):
            k += c * ki
            for j, a in enumerate(ei):
                e[j] += c * a
        return k % self.field.conductor, tuple(e)

    def element(self, g) -> FieldElement:
        k, e = self.exponent(g)
        return self.field.monomial(k, e)

    def is_trivial_on(self, g) -> bool:
        k, e = self.exponent(g)
        return k == 0 and not any(e)

    def __call__(self, x) -> FieldElement:
        if isinstance(x, GroupElement):
            return self.element(x)
        if isinstance(x, int):
            return self.field.constant(x)
        if x.group != self.group:
            raise ValueError("group mismatch")
        terms = {}
        for k, v in x.terms.items():
            root, e = self.exponent(k)
            key = e
            c = self.field.coefficients.zeta(root) * v
            terms[key] = terms[key] + c if key in terms else c
        return self.field.from_polys({e: c for e, c in terms.items() if c})

    def pullback(self, hom: GroupHomomorphism) -> "MonomialMap":
        """The composite ``self o hom`` on the domain of ``hom``."""
        if hom.codomain != self.group:
            raise ValueError("codomain mismatch")
        return MonomialMap(hom.domain, self.field,
                           [self.exponent(hom(g)) for g in hom.domain.gens()])

    def __repr__(self):
        return f"MonomialMap({self.group!r} -> {self.field!r})"


@dataclass(frozen=True)
class SplitComponent:
    """One factor ``F_l`` of ``Q[H]`` with its projection ``phi_l``."""

    character: CharacterClass
    b: int
    index: int
    group: AbelianGroup

    @cached_property
    def field(self) -> FunctionField:
        return FunctionField(self.character.order, self.b, self.group.generator_names()[: self.b])

    @cached_property
    def map(self) -> MonomialMap:
        images = [(0, tuple(int(i == j) for j in range(self.b))) for i in range(self.b)]
        images += [(r, (0,) * self.b) for r in self.character.roots]
        return MonomialMap(self.group, self.field, images)

    def __repr__(self):
        return f"phi_{self.index + 1}(order={self.character.order}, chi={self.character.exponents})"


def canonical_components(group: AbelianGroup):
    """The splitting components of ``Q[H]`` in canonical order."""
    return [SplitComponent(cc, group.free_rank, i, group)
            for i, cc in enumerate(character_classes(group))]


def phi(x, comp: SplitComponent) -> FieldElement:
    return comp.map(x)
