"""Finitely generated abelian groups in invariant-factor form.

Groups are presented as cokernels of integer relation matrices and reduced
to ``Z^b + Z_{m_1} + ... + Z_{m_s}`` with ``m_1 | m_2 | ... | m_s``.
Elements are exponent vectors in that basis.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import reduce
from math import gcd
from typing import Sequence


def _identity(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def smith_normal_form(M):
    """Return ``(U, D, V)`` with ``U @ M @ V == D`` and D in Smith form.

    Pivots are chosen by smallest absolute value. U and V are unimodular.
    """
    m = len(M)
    n = len(M[0]) if m else 0
    A = [list(map(int, row)) for row in M]
    U = _identity(m)
    V = _identity(n)

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):
        # row_dst += q * row_src
        A[dst] = [a + q * b for a, b in zip(A[dst], A[src])]
        U[dst] = [a + q * b for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, q):
        for row in A:
            row[dst] += q * row[src]
        for row in V:
            row[dst] += q * row[src]

    t = 0
    while t < min(m, n):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                if A[i][j] and (best is None or abs(A[i][j]) < abs(A[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        swap_rows(t, best[0])
        swap_cols(t, best[1])
        while True:
            p = A[t][t]
            dirty = False
            for i in range(t + 1, m):
                if A[i][t]:
                    add_row(i, t, -(A[i][t] // p))
                    dirty = dirty or A[i][t] != 0
            for j in range(t + 1, n):
                if A[t][j]:
                    add_col(j, t, -(A[t][j] // p))
                    dirty = dirty or A[t][j] != 0
            if dirty:
                cand = [(abs(A[i][t]), i, t) for i in range(t + 1, m) if A[i][t]]
                cand += [(abs(A[t][j]), t, j) for j in range(t + 1, n) if A[t][j]]
                _, i, j = min(cand)
                if i != t:
                    swap_rows(t, i)
                else:
                    swap_cols(t, j)
                continue
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                        if A[i][j] % p), None)
            if bad is None:
                break
            add_row(t, bad[0], 1)
        if A[t][t] < 0:
            A[t] = [-a for a in A[t]]
            U[t] = [-a for a in U[t]]
        t += 1
    return U, A, V


def _det(M):
    # Bareiss over the integers; used only for unimodularity checks.
    n = len(M)
    if n == 0:
        return 1
    A = [row[:] for row in M]
    sign, prev = 1, 1
    for k in range(n - 1):
        if A[k][k] == 0:
            for i in range(k + 1, n):
                if A[i][k]:
                    A[k], A[i] = A[i], A[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return sign * A[-1][-1]


def _inverse_unimodular(M):
    """Exact inverse of an integer matrix with determinant +-1."""
    from fractions import Fraction
    n = len(M)
    A = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(M)]
    for c in range(n):
        p = next(r for r in range(c, n) if A[r][c] != 0)
        A[c], A[p] = A[p], A[c]
        piv = A[c][c]
        A[c] = [x / piv for x in A[c]]
        for r in range(n):
            if r != c and A[r][c] != 0:
                f = A[r][c]
                A[r] = [x - f * y for x, y in zip(A[r], A[c])]
    out = [[row[n + j] for j in range(n)] for row in A]
    assert all(x.denominator == 1 for row in out for x in row)
    return [[int(x) for x in row] for row in out]


@dataclass(frozen=True)
class AbelianGroup:
    """``Z^free_rank + Z_{m_1} + ... + Z_{m_s}`` with ``m_j | m_{j+1}``."""

    free_rank: int
    invariant_factors: tuple = ()
    names: tuple = field(default=None, compare=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "invariant_factors", tuple(int(m) for m in self.invariant_factors))
        if self.free_rank < 0:
            raise ValueError("free rank must be non-negative")
        for m in self.invariant_factors:
            if m < 2:
                raise ValueError("invariant factors must be >= 2")
        for a, b in zip(self.invariant_factors, self.invariant_factors[1:]):
            if b % a:
                raise ValueError("invariant factors must divide each other")
        if self.names is not None:
            object.__setattr__(self, "names", tuple(self.names))
            if len(self.names) != self.ngens:
                raise ValueError("one name per generator required")

    @property
    def ngens(self):
        return self.free_rank + len(self.invariant_factors)

    @property
    def orders(self):
        """Order of each generator, 0 meaning infinite."""
        return (0,) * self.free_rank + self.invariant_factors

    @property
    def torsion_order(self):
        return reduce(lambda a, b: a * b, self.invariant_factors, 1)

    @property
    def exponent(self):
        return self.invariant_factors[-1] if self.invariant_factors else 1

    def is_finite(self):
        return self.free_rank == 0

    def order(self):
        return self.torsion_order if self.is_finite() else None

    def generator_names(self):
        if self.names is not None:
            return self.names
        r, s = self.free_rank, len(self.invariant_factors)
        free = ("t",) if r == 1 else tuple(f"t{i + 1}" for i in range(r))
        tors = ("m",) if s == 1 else tuple(f"m{i + 1}" for i in range(s))
        return free + tors

    def with_names(self, names):
        return AbelianGroup(self.free_rank, self.invariant_factors, names)

    def element(self, coords):
        return GroupElement(self, tuple(coords))

    def identity(self):
        return GroupElement(self, (0,) * self.ngens)

    def gen(self, i):
        return GroupElement(self, tuple(int(i == j) for j in range(self.ngens)))

    def gens(self):
        return [self.gen(i) for i in range(self.ngens)]

    def elements(self):
        """All elements of a finite group, in lexicographic order."""
        if not self.is_finite():
            raise ValueError("group is infinite")
        for c in itertools.product(*(range(m) for m in self.invariant_factors)):
            yield GroupElement(self, c)

    def random_element(self, rng, bound=3):
        coords = [rng.randint(-bound, bound) for _ in range(self.free_rank)]
        coords += [rng.randrange(m) for m in self.invariant_factors]
        return GroupElement(self, tuple(coords))

    def __repr__(self):
        parts = ["Z"] * self.free_rank + [f"Z_{m}" for m in self.invariant_factors]
        return " + ".join(parts) if parts else "0"


@dataclass(frozen=True)
class GroupElement:
    group: AbelianGroup
    coords: tuple

    def __post_init__(self):
        if len(self.coords) != self.group.ngens:
            raise ValueError("coordinate vector has wrong length")
        red = tuple(c % o if o else int(c) for c, o in zip(self.coords, self.group.orders))
        object.__setattr__(self, "coords", red)

    @property
    def free_part(self):
        return self.coords[: self.group.free_rank]

    @property
    def torsion_part(self):
        return self.coords[self.group.free_rank:]

    def _check(self, other):
        if not isinstance(other, GroupElement) or other.group != self.group:
            raise ValueError("group mismatch")

    # the group is written multiplicatively, matching group-ring notation
    def __mul__(self, other):
        self._check(other)
        return GroupElement(self.group, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __pow__(self, k):
        return GroupElement(self.group, tuple(k * a for a in self.coords))

    def inverse(self):
        return self ** -1

    def is_identity(self):
        return not any(self.coords)

    def order(self):
        """Order of the element, or 0 if infinite."""
        if any(self.free_part):
            return 0
        n = 1
        for c, m in zip(self.torsion_part, self.group.invariant_factors):
            k = m // gcd(m, c)
            n = n * k // gcd(n, k)
        return n

    def word(self):
        names = self.group.generator_names()
        parts = []
        for name, c in zip(names, self.coords):
            if c == 1:
                parts.append(name)
            elif c:
                parts.append(f"{name}^{c}")
        return "*".join(parts) if parts else "1"

    def __repr__(self):
        return self.word()


class GroupHomomorphism:
    """Homomorphism given by the images of the domain generators.

    ``matrix[k][i]`` is coordinate k of the image of domain generator i.
    An optional ``section`` matrix lifts codomain generators back to the
    domain (used for surjections coming from presentations).
    """

    def __init__(self, domain: AbelianGroup, codomain: AbelianGroup, matrix, section=None):
        self.domain = domain
        self.codomain = codomain
        self.matrix = [list(map(int, row)) for row in matrix]
        if len(self.matrix) != codomain.ngens or any(len(r) != domain.ngens for r in self.matrix):
            raise ValueError("matrix shape does not match groups")
        self.section = section
        for i, o in enumerate(domain.orders):
            if o:
                img = self._image_coords([o * int(i == j) for j in range(domain.ngens)])
                if not codomain.element(img).is_identity():
                    raise ValueError(f"generator {i} of order {o} is not killed by {o}")

    def _image_coords(self, coords):
        return [sum(row[i] * coords[i] for i in range(len(coords))) for row in self.matrix]

    def __call__(self, x: GroupElement) -> GroupElement:
        if x.group != self.domain:
            raise ValueError("group mismatch")
        return self.codomain.element(self._image_coords(x.coords))

    def lift(self, y: GroupElement) -> GroupElement:
        """A preimage of y (requires a section)."""
        if self.section is None:
            raise ValueError("no section available")
        if y.group != self.codomain:
            raise ValueError("group mismatch")
        coords = [sum(self.section[k][i] * y.coords[k] for k in range(len(y.coords)))
                  for i in range(self.domain.ngens)]
        return self.domain.element(coords)

    def compose(self, other: "GroupHomomorphism") -> "GroupHomomorphism":
        """``self o other``."""
        if other.codomain != self.domain:
            raise ValueError("group mismatch")
        mid = self.domain.ngens
        mat = [[sum(self.matrix[k][j] * other.matrix[j][i] for j in range(mid))
                for i in range(other.domain.ngens)]
               for k in range(self.codomain.ngens)]
        section = None
        if self.section is not None and other.section is not None:
            section = [[sum(self.section[k][j] * other.section[j][i] for j in range(mid))
                        for i in range(other.domain.ngens)]
                       for k in range(self.codomain.ngens)]
        return GroupHomomorphism(other.domain, self.codomain, mat, section)

    def is_surjective(self):
        if self.section is not None:
            return True
        # image generated by columns; compare with codomain via a presentation
        rels = [[self.matrix[k][i] for k in range(self.codomain.ngens)] for i in range(self.domain.ngens)]
        rels += [[o * int(j == k) for k in range(self.codomain.ngens)]
                 for j, o in enumerate(self.codomain.orders) if o]
        Q, _ = group_from_presentation(self.codomain.ngens, rels)
        return Q.ngens == 0

    def kernel_order(self):
        """Size of the kernel, or 0 if infinite. Exact for surjections."""
        if not self.is_surjective():
            raise ValueError("kernel order implemented for surjections only")
        if self.domain.free_rank != self.codomain.free_rank:
            return 0
        return self.domain.torsion_order // self.codomain.torsion_order

    def is_isomorphism(self):
        return self.is_surjective() and self.kernel_order() == 1


def free_abelian(g, names=None):
    return AbelianGroup(g, (), names)


def group_from_presentation(generators: int, relations: Sequence[Sequence[int]], names=None):
    """Cokernel of the relation rows, lifted to (group, projection from Z^g).

    The projection carries a section mapping each new generator to a
    preimage in ``Z^g``.
    """
    g = int(generators)
    rels = [list(map(int, r)) for r in relations if any(r)]
    for r in rels:
        if len(r) != g:
            raise ValueError("relation has wrong number of columns")
    if rels:
        _, D, V = smith_normal_form(rels)
        diag = [D[j][j] if j < len(rels) else 0 for j in range(g)]
    else:
        V = _identity(g)
        diag = [0] * g
    Vinv = _inverse_unimodular(V) if g else []
    free_idx = [j for j in range(g) if diag[j] == 0]
    tors_idx = [j for j in range(g) if diag[j] >= 2]
    order = free_idx + tors_idx
    G = AbelianGroup(len(free_idx), tuple(diag[j] for j in tors_idx), names)
    matrix = [[V[i][j] for i in range(g)] for j in order]
    section = [list(Vinv[j]) for j in order]
    proj = GroupHomomorphism(free_abelian(g), G, matrix, section)
    return G, proj


def presentation_of(G: AbelianGroup):
    """Relation rows presenting G on its own generators."""
    return [[o * int(j == k) for k in range(G.ngens)] for j, o in enumerate(G.orders) if o]


def quotient_by_power(G: AbelianGroup, x: GroupElement, k: int):
    """``G / <x^k>`` together with the quotient map from G."""
    if k < 1:
        raise ValueError("k must be >= 1")
    if x.group != G:
        raise ValueError("group mismatch")
    rels = presentation_of(G) + [[k * c for c in x.coords]]
    Q, proj = group_from_presentation(G.ngens, rels)
    q = GroupHomomorphism(G, Q, proj.matrix, proj.section)
    return Q, q


def quotient_by(G: AbelianGroup, elements: Sequence[GroupElement]):
    rels = presentation_of(G) + [list(x.coords) for x in elements]
    Q, proj = group_from_presentation(G.ngens, rels)
    return Q, GroupHomomorphism(G, Q, proj.matrix, proj.section)


def direct_sum(*groups: AbelianGroup) -> AbelianGroup:
    rels = []
    total = sum(G.ngens for G in groups)
    offset = 0
    for G in groups:
        for j, o in enumerate(G.orders):
            if o:
                row = [0] * total
                row[offset + j] = o
                rels.append(row)
        offset += G.ngens
    return group_from_presentation(total, rels)[0]


@dataclass(frozen=True)
class CharacterClass:
    """A Galois class of characters of the torsion subgroup.

    ``exponents[j] = c_j`` means torsion generator j goes to
    ``zeta_{m_j}^{c_j}``; ``roots[j]`` is the same value as a power of
    ``zeta_order``.
    """

    order: int
    exponents: tuple
    invariant_factors: tuple
    size: int

    @property
    def roots(self):
        n = self.order
        return tuple((c * n) // m for c, m in zip(self.exponents, self.invariant_factors))

    @property
    def is_trivial(self):
        return self.order == 1


def _char_order(c, ms):
    n = 1
    for cj, m in zip(c, ms):
        k = m // gcd(m, cj)
        n = n * k // gcd(n, k)
    return n


def character_classes(G: AbelianGroup):
    """Galois classes of characters of Tor(G), sorted by (order, representative)."""
    ms = G.invariant_factors
    M = G.exponent
    units = [a for a in range(1, M + 1) if gcd(a, M) == 1] if M > 1 else [1]
    seen = set()
    classes = []
    for c in itertools.product(*(range(m) for m in ms)):
        if c in seen:
            continue
        orbit = {tuple((a * cj) % m for cj, m in zip(c, ms)) for a in units}
        seen |= orbit
        rep = min(orbit)
        classes.append(CharacterClass(_char_order(rep, ms), rep, ms, len(orbit)))
    classes.sort(key=lambda cc: (cc.order, cc.exponents))
    return classes
