"""Torsion of based chain complexes over an exact field, and its sign bookkeeping."""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from . import linalg as L
from .fields import QQ, determinant


class TorsionError(ValueError):
    pass


class BasedChainComplex:
    """``0 -> C_m -> ... -> C_0 -> 0`` with the standard basis in each degree.

    ``boundaries[i - 1]`` is the matrix of ``C_i -> C_{i-1}`` for i = 1..m:
    ``dims[i-1]`` rows, ``dims[i]`` columns, column j being the boundary of
    the j-th basis vector of C_i.
    """

    def __init__(self, fld, dims, boundaries, check=True):
        self.field = fld
        self.dims = tuple(int(d) for d in dims)
        if len(boundaries) != max(len(self.dims) - 1, 0):
            raise TorsionError("need one boundary matrix per positive degree")
        self.boundaries = []
        for i, B in enumerate(boundaries, start=1):
            rows, cols = self.dims[i - 1], self.dims[i]
            B = [list(r) for r in B] if rows else []
            if len(B) != rows or any(len(r) != cols for r in B):
                raise TorsionError(f"boundary C_{i} -> C_{i-1} must be {rows} x {cols}")
            self.boundaries.append(B)
        if check:
            self.validate()

    @property
    def length(self):
        return len(self.dims) - 1

    @property
    def zero(self):
        return self.field.zero

    @property
    def one(self):
        return self.field.one

    def validate(self):
        z = self.zero
        for i in range(2, len(self.dims)):
            P = L.matmul(self.d(i - 1), self.d(i), z, inner=self.dims[i - 1])
            if any(x for row in P for x in row):
                raise TorsionError(f"boundary does not square to zero at C_{i}")

    def d(self, i):
        """Matrix of ``C_i -> C_{i-1}``; empty outside 1..m."""
        if 1 <= i < len(self.dims):
            return self.boundaries[i - 1]
        rows = self.dims[i - 1] if 0 <= i - 1 < len(self.dims) else 0
        cols = self.dims[i] if 0 <= i < len(self.dims) else 0
        return [[self.zero] * cols for _ in range(rows)]

    def boundary_of(self, i, v):
        if i == 0 or i >= len(self.dims):
            return []
        return L.matvec(self.d(i), v, self.zero)

    def image_columns(self, i):
        """Columns of ``C_{i+1} -> C_i`` as vectors in C_i."""
        if i + 1 >= len(self.dims):
            return []
        return L.columns(self.d(i + 1), self.dims[i + 1])

    def rebased(self, changes):
        """The same complex in new bases ``d_i`` with ``c_i = changes[i] d_i``.

        ``changes[i]`` has the old basis vectors of C_i as columns written
        in the new basis; missing degrees are left alone.
        """
        z, o = self.zero, self.one
        P = {i: changes.get(i) for i in range(len(self.dims))}
        bds = []
        for i in range(1, len(self.dims)):
            B = self.d(i)
            if P[i] is not None:
                B = L.matmul(B, L.inverse(P[i], z, o), z, inner=self.dims[i])
            if P[i - 1] is not None:
                B = L.matmul(P[i - 1], B, z, inner=self.dims[i - 1])
            bds.append(B)
        return BasedChainComplex(self.field, self.dims, bds, check=False)

    def real_dims(self):
        return self.dims

    def __repr__(self):
        return f"BasedChainComplex(dims={self.dims}, field={self.field!r})"


@dataclass
class HomologyData:
    """Ranks and representative cycles (vectors in C_i) for each degree."""

    cycles: list
    ranks: tuple = dc_field(init=False)

    def __post_init__(self):
        self.cycles = [list(map(list, c)) for c in self.cycles]
        self.ranks = tuple(len(c) for c in self.cycles)

    @property
    def is_zero(self):
        return not any(self.ranks)


@dataclass
class TorsionResult:
    value: object
    acyclic: bool


def homology(C: BasedChainComplex) -> HomologyData:
    """Canonical homology representatives.

    Cycles are the reduced-echelon kernel vectors of each boundary, kept
    greedily when independent of the boundaries and earlier choices.
    """
    z, o = C.zero, C.one
    out = []
    ranks = [L.rank(C.d(i), z, o) if i > 0 and C.dims[i - 1] and n else 0
             for i, n in enumerate(C.dims)] + [0]
    for i, n in enumerate(C.dims):
        if n - ranks[i] == ranks[i + 1]:
            out.append([])
            continue
        D = C.d(i) if i > 0 else []
        ker = L.kernel(D, n, z, o) if i > 0 else [[o if a == b else z for a in range(n)]
                                                   for b in range(n)]
        bnd = C.image_columns(i)
        keep = L.independent_subset(ker, z, o, start=bnd)
        out.append([ker[k] for k in keep])
    return HomologyData(out)


def _check_homology(C, H):
    z, o = C.zero, C.one
    if len(H.cycles) != len(C.dims):
        raise TorsionError("homology data has wrong length")
    for i, hs in enumerate(H.cycles):
        for h in hs:
            if len(h) != C.dims[i] or any(C.boundary_of(i, h)):
                raise TorsionError(f"homology vector in degree {i} is not a cycle")
        bnd = C.image_columns(i)
        r_b = L.rank(L.transpose(bnd, C.dims[i]), z, o) if bnd else 0
        D = C.d(i) if i > 0 else []
        r_z = C.dims[i] - (L.rank(D, z, o) if i > 0 and D else 0)
        full = bnd + hs
        r_full = L.rank(L.transpose(full, C.dims[i]), z, o) if full else 0
        if r_full != r_b + len(hs) or r_b + len(hs) != r_z:
            raise TorsionError(f"homology vectors in degree {i} are not a basis of H_{i}")


def admissible_b(C: BasedChainComplex, i):
    """Greedy subset of standard basis indices of C_i mapping to a basis of the image."""
    if i == 0:
        return []
    cols = L.columns(C.d(i), C.dims[i])
    return L.independent_subset(cols, C.zero, C.one)


def sign_exponent(dims, hranks):
    """``|C| = sum_i alpha_i beta_i`` modulo 2."""
    a = b = 0
    total = 0
    for dc, dh in zip(dims, hranks):
        a += dc
        b += dh
        total += a * b
    return total % 2


def torsion(C: BasedChainComplex, H: HomologyData = None, b_choice=None,
            check=True) -> TorsionResult:
    """Torsion of C with homology basis H (default: canonical representatives).

    ``b_choice[i]`` optionally lists the basis indices of C_i used as b_i.
    """
    z, o = C.zero, C.one
    if H is None:
        H = homology(C)
    elif check:
        _check_homology(C, H)
    m = len(C.dims)
    bs = []
    for i in range(m):
        if b_choice is not None and b_choice[i] is not None:
            sel = list(b_choice[i])
            cols = L.columns(C.d(i), C.dims[i]) if i else []
            imgs = [cols[j] for j in sel]
            r = L.rank(C.d(i), z, o) if i else 0
            if len(sel) != r or len(L.independent_subset(imgs, z, o)) != r:
                raise TorsionError(f"b_{i} selection is not admissible")
            bs.append(sel)
        else:
            bs.append(admissible_b(C, i))
    value = o
    for i in range(m):
        n = C.dims[i]
        vecs = []
        if i + 1 < m:
            for j in bs[i + 1]:
                vecs.append(L.matvec(C.d(i + 1), [o if k == j else z for k in range(C.dims[i + 1])], z))
        vecs.extend(H.cycles[i])
        for j in bs[i]:
            vecs.append([o if k == j else z for k in range(n)])
        if len(vecs) != n:
            raise TorsionError(f"inconsistent homology data in degree {i}")
        det = determinant(L.from_columns(vecs, n, z), C.field) if n else o
        if not det:
            raise TorsionError(f"degree {i} vectors are not a basis")
        value = value * det if i % 2 else value / det
    if sign_exponent(C.dims, H.ranks):
        value = -value
    return TorsionResult(value, H.is_zero)


def rebase_torsion(tau, changes, fld=None):
    """Torsion after a change of basis.

    ``changes[i]`` is the matrix ``[c_i / d_i]`` expressing the old basis in
    the new one; the result is ``tau * prod det(changes[i])^((-1)^(i+1))``.
    """
    out = tau
    for i, P in changes.items():
        det = determinant(P, fld) if P else None
        if det is None:
            continue
        if not det:
            raise TorsionError("singular change of basis")
        out = out / det if i % 2 == 0 else out * det
    return out


def _alpha(dims, j):
    return sum(dims[: j + 1]) % 2 if j >= 0 else 0


def nu(dims_C, dims_Cp):
    """``nu(C, C') = sum_i alpha_i(C'') alpha_{i-1}(C')`` modulo 2."""
    if len(dims_Cp) > len(dims_C):
        dims_C = tuple(dims_C) + (0,) * (len(dims_Cp) - len(dims_C))
    dims_Cp = tuple(dims_Cp) + (0,) * (len(dims_C) - len(dims_Cp))
    if any(b > a for a, b in zip(dims_C, dims_Cp)):
        raise TorsionError("subcomplex dimensions exceed the ambient complex")
    dpp = [a - b for a, b in zip(dims_C, dims_Cp)]
    return sum(_alpha(dpp, i) * _alpha(dims_Cp, i - 1) for i in range(len(dims_C))) % 2


def theta(h_C, h_Cp, h_Cpp):
    """``theta(C, C')`` from the homology ranks of C, C' and C''."""
    n = max(len(h_C), len(h_Cp), len(h_Cpp))
    pad = lambda h: tuple(h) + (0,) * (n - len(h))
    h_C, h_Cp, h_Cpp = pad(h_C), pad(h_Cp), pad(h_Cpp)
    total = 0
    for i in range(n):
        bC, bp, bpp = _alpha(h_C, i), _alpha(h_Cp, i), _alpha(h_Cpp, i)
        total += (bC + 1) * (bp + bpp) + _alpha(h_Cp, i - 1) * bpp
    return total % 2


class ShortExactSequence:
    """``0 -> C' -> C -> C'' -> 0`` with inclusion and projection matrices per degree."""

    def __init__(self, C, Cp, Cpp, incl, proj, check=True):
        self.C, self.Cp, self.Cpp = C, Cp, Cpp
        self.incl = incl
        self.proj = proj
        if check:
            self.validate()

    @classmethod
    def from_subcomplex(cls, C: BasedChainComplex, selected):
        """C' spanned by the basis vectors ``selected[i]`` of each C_i, C'' by the rest."""
        z, o = C.zero, C.one
        sel = [sorted(s) for s in selected]
        rest = [[j for j in range(n) if j not in set(s)] for n, s in zip(C.dims, sel)]
        for i in range(1, len(C.dims)):
            B = C.d(i)
            for j in sel[i]:
                if any(B[r][j] for r in rest[i - 1]):
                    raise TorsionError("selected cells do not span a subcomplex")
        bp = [[[C.d(i)[r][c] for c in sel[i]] for r in sel[i - 1]] for i in range(1, len(C.dims))]
        bpp = [[[C.d(i)[r][c] for c in rest[i]] for r in rest[i - 1]] for i in range(1, len(C.dims))]
        Cp = BasedChainComplex(C.field, [len(s) for s in sel], bp, check=False)
        Cpp = BasedChainComplex(C.field, [len(s) for s in rest], bpp, check=False)
        incl = [[[o if r == c else z for c in s] for r in range(n)] for n, s in zip(C.dims, sel)]
        proj = [[[o if c == r else z for c in range(n)] for r in s] for n, s in zip(C.dims, rest)]
        return cls(C, Cp, Cpp, incl, proj)

    def validate(self):
        z, o = self.C.zero, self.C.one
        m = len(self.C.dims)
        for i in range(m):
            n, n1, n2 = self.C.dims[i], self.Cp.dims[i], self.Cpp.dims[i]
            if n != n1 + n2:
                raise TorsionError(f"dimensions do not add up in degree {i}")
            comp = L.matmul(self.proj[i], self.incl[i], z, inner=n)
            if any(x for row in comp for x in row):
                raise TorsionError(f"projection does not kill C' in degree {i}")
            if n1 and L.rank(self.incl[i], z, o) != n1:
                raise TorsionError(f"inclusion is not injective in degree {i}")
            if n2 and L.rank(self.proj[i], z, o) != n2:
                raise TorsionError(f"projection is not surjective in degree {i}")
            if i >= 1:
                lhs = L.matmul(self.C.d(i), self.incl[i], z, inner=n)
                rhs = L.matmul(self.incl[i - 1], self.Cp.d(i), z, inner=n1)
                if _neq(lhs, rhs):
                    raise TorsionError(f"inclusion is not a chain map in degree {i}")
                lhs = L.matmul(self.proj[i - 1], self.C.d(i), z, inner=self.C.dims[i - 1])
                rhs = L.matmul(self.Cpp.d(i), self.proj[i], z, inner=n2)
                if _neq(lhs, rhs):
                    raise TorsionError(f"projection is not a chain map in degree {i}")

    def lift(self, i, v):
        """A preimage of ``v`` in C_i under the projection."""
        z, o = self.C.zero, self.C.one
        cols = L.columns(self.proj[i], self.C.dims[i])
        x = L.solve(cols, v, z, o)
        if x is None:
            raise TorsionError("vector has no lift")
        return x

    def compatibility(self):
        """``[incl(c') lift(c'') / c]`` per degree; compatible when all equal 1."""
        z, o = self.C.zero, self.C.one
        out = []
        for i, n in enumerate(self.C.dims):
            vecs = L.columns(self.incl[i], self.Cp.dims[i])
            for j in range(self.Cpp.dims[i]):
                vecs.append(self.lift(i, [o if k == j else z for k in range(self.Cpp.dims[i])]))
            out.append(determinant(L.from_columns(vecs, n, z), self.C.field) if n else o)
        return out


def _neq(A, B):
    return any(a != b for ra, rb in zip(A, B) for a, b in zip(ra, rb)) or len(A) != len(B)


@dataclass
class LongExactSequence:
    complex: BasedChainComplex
    connecting: dict
    torsion: object


def _coords(C, i, z_vec, basis):
    """Coordinates of the class of cycle ``z_vec`` in the homology basis."""
    zero, one = C.zero, C.one
    cols = list(basis) + C.image_columns(i)
    x = L.solve(cols, z_vec, zero, one)
    if x is None:
        raise TorsionError("cycle not in span of homology basis and boundaries")
    return x[: len(basis)]


def long_exact_sequence(ses: ShortExactSequence, H=None, Hp=None, Hpp=None, check=True):
    """The based acyclic complex H of the pair, indexed H_{3i} = H_i(C''),
    H_{3i+1} = H_i(C), H_{3i+2} = H_i(C')."""
    C, Cp, Cpp = ses.C, ses.Cp, ses.Cpp
    if check:
        for cx, hd in ((C, H), (Cp, Hp), (Cpp, Hpp)):
            if hd is not None:
                _check_homology(cx, hd)
    H = H or homology(C)
    Hp = Hp or homology(Cp)
    Hpp = Hpp or homology(Cpp)
    z, o = C.zero, C.one
    m = len(C.dims)
    dims = []
    for i in range(m):
        dims += [Hpp.ranks[i], H.ranks[i], Hp.ranks[i]]
    bds = []
    connecting = {}
    for k in range(1, 3 * m):
        i, r = divmod(k, 3)
        if r == 1:
            # H_i(C) -> H_i(C'')
            cols = [_coords(Cpp, i, L.matvec(ses.proj[i], h, z), Hpp.cycles[i]) for h in H.cycles[i]]
            bds.append(L.from_columns(cols, dims[k - 1], z))
        elif r == 2:
            # H_i(C') -> H_i(C)
            cols = [_coords(C, i, L.matvec(ses.incl[i], h, z), H.cycles[i]) for h in Hp.cycles[i]]
            bds.append(L.from_columns(cols, dims[k - 1], z))
        else:
            # connecting map H_i(C'') -> H_{i-1}(C')
            cols = []
            reps = []
            for h in Hpp.cycles[i]:
                x = ses.lift(i, h)
                dx = C.boundary_of(i, x)
                y = L.solve(L.columns(ses.incl[i - 1], Cp.dims[i - 1]), dx, z, o)
                if y is None:
                    raise TorsionError("connecting map is not defined")
                reps.append(y)
                cols.append(_coords(Cp, i - 1, y, Hp.cycles[i - 1]))
            connecting[i] = reps
            bds.append(L.from_columns(cols, dims[k - 1], z))
    Hc = BasedChainComplex(C.field, dims, bds)
    t = torsion(Hc, HomologyData([[] for _ in dims]), check=False)
    if not t.acyclic:
        raise TorsionError("long exact sequence is not exact")
    return LongExactSequence(Hc, connecting, t.value)


def les_torsion(ses: ShortExactSequence, H=None, Hp=None, Hpp=None):
    return long_exact_sequence(ses, H, Hp, Hpp).torsion


def _homologies(ses, H, Hp, Hpp):
    """Fill in canonical homology bases, validating the supplied ones."""
    out = []
    for cx, hd in ((ses.C, H), (ses.Cp, Hp), (ses.Cpp, Hpp)):
        if hd is None:
            hd = homology(cx)
        else:
            _check_homology(cx, hd)
        out.append(hd)
    return out


def pair_torsion(ses: ShortExactSequence, H=None, Hp=None, Hpp=None):
    """``tau(C' in C) = (-1)^theta tau(H)`` for the long exact sequence H."""
    H, Hp, Hpp = _homologies(ses, H, Hp, Hpp)
    t = long_exact_sequence(ses, H, Hp, Hpp, check=False).torsion
    return -t if theta(H.ranks, Hp.ranks, Hpp.ranks) else t


def multiplicativity_check(ses: ShortExactSequence, H=None, Hp=None, Hpp=None):
    """Whether ``tau(C) = (-1)^nu tau(C') tau(C'') tau(C' in C)`` holds."""
    if any(c != 1 for c in ses.compatibility()):
        raise TorsionError("bases are not compatible")
    H, Hp, Hpp = _homologies(ses, H, Hp, Hpp)
    lhs = torsion(ses.C, H, check=False).value
    rhs = (torsion(ses.Cp, Hp, check=False).value * torsion(ses.Cpp, Hpp, check=False).value
           * pair_torsion(ses, H, Hp, Hpp))
    if nu(ses.C.dims, ses.Cp.dims):
        rhs = -rhs
    return lhs == rhs
