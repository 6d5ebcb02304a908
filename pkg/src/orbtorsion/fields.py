"""Rational function fields Q(zeta_n)(t_1, ..., t_b) with canonical forms."""
from __future__ import annotations

from fractions import Fraction
from math import gcd

from . import poly as P
from .cyclotomic import CyclotomicField, render_cyclotomic


class RationalField:
    """The field Q with Fraction elements; used for real (underlying) complexes."""

    zero = Fraction(0)
    one = Fraction(1)

    def __call__(self, x):
        return Fraction(x)

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")

    def __repr__(self):
        return "QQ"


QQ = RationalField()


class FunctionField:
    """``Q(zeta_n)(t_1, ..., t_b)``: fraction field of a Laurent ring."""

    def __init__(self, conductor: int = 1, nvars: int = 0, names=None):
        self.conductor = conductor
        self.nvars = nvars
        self.coefficients = CyclotomicField(conductor)
        if names is None:
            names = ("t",) if nvars == 1 else tuple(f"t{i + 1}" for i in range(nvars))
        self.names = tuple(names)

    def __eq__(self, other):
        return (isinstance(other, FunctionField) and other.conductor == self.conductor
                and other.nvars == self.nvars)

    def __hash__(self):
        return hash(("F", self.conductor, self.nvars))

    def __repr__(self):
        base = f"Q(zeta_{self.conductor})" if self.coefficients.degree > 1 else "Q"
        if self.nvars:
            return f"{base}({', '.join(self.names)})"
        return base

    @property
    def zero(self):
        return FieldElement(self, {}, None, _normalized=True)

    @property
    def one(self):
        return self.constant(1)

    def constant(self, c):
        c = self.coefficients(c)
        return FieldElement(self, P.constant(c, self.nvars), None, _normalized=True)

    def zeta(self, k=1):
        return self.constant(self.coefficients.zeta(k))

    def var(self, i):
        e = tuple(int(i == j) for j in range(self.nvars))
        return FieldElement(self, {e: self.coefficients.one}, None, _normalized=True)

    def monomial(self, root_exponent, exponents, coeff=1):
        """``coeff * zeta^root_exponent * t^exponents`` (negative exponents allowed)."""
        c = self.coefficients.zeta(root_exponent) * self.coefficients(coeff)
        return FieldElement(self, {tuple(exponents): c}, None, _normalized=True)

    def from_polys(self, num, den=None):
        return FieldElement(self, num, den)

    def __call__(self, value):
        if isinstance(value, FieldElement):
            if value.field != self:
                raise ValueError("field mismatch")
            return value
        return self.constant(value)


class FieldElement:
    """A normalized rational function ``num / den``.

    ``den`` is an ordinary polynomial with no monomial factor and lex
    leading coefficient 1; ``num`` is a Laurent polynomial; they are coprime.
    """

    __slots__ = ("field", "num", "den", "_key")

    def __init__(self, field: FunctionField, num, den=None, _normalized=False):
        self.field = field
        self._key = None
        if den is None and _normalized:
            self.num = num
            self.den = P.constant(field.coefficients.one, field.nvars)
            return
        if den is None:
            den = P.constant(field.coefficients.one, field.nvars)
        if not den:
            raise ZeroDivisionError("zero denominator")
        self.num, self.den = _normalize(field, P.clean(num), P.clean(den))

    # arithmetic -------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise ValueError("field mismatch")
            return other
        try:
            return self.field.constant(other)
        except (TypeError, ValueError):
            return NotImplemented

    def _den_is_one(self):
        return len(self.den) == 1 and not any(next(iter(self.den)))

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not other.num:
            return self
        if not self.num:
            return other
        if self.den == other.den:
            if self._den_is_one():
                combined = P.add(self.num, other.num)
                return _from_laurent(self.field, combined)
            return FieldElement(self.field, P.add(self.num, other.num), self.den)
        num = P.add(P.mul(self.num, other.den), P.mul(other.num, self.den))
        return FieldElement(self.field, num, P.mul(self.den, other.den))

    __radd__ = __add__

    def __neg__(self):
        out = FieldElement.__new__(FieldElement)
        out.field, out.num, out.den, out._key = self.field, P.neg(self.num), self.den, None
        return out

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
        if not self.num or not other.num:
            return self.field.zero
        if self._den_is_one() and other._den_is_one():
            return _from_laurent(self.field, P.mul(self.num, other.num))
        return FieldElement(self.field, P.mul(self.num, other.num), P.mul(self.den, other.den))

    __rmul__ = __mul__

    def inverse(self):
        if not self.num:
            raise ZeroDivisionError("inverse of zero")
        return FieldElement(self.field, self.den, self.num)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        out, base = self.field.one, self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __bool__(self):
        return bool(self.num)

    def is_zero(self):
        return not self.num

    def key(self):
        if self._key is None:
            self._key = (frozenset(self.num.items()), frozenset(self.den.items()))
        return self._key

    def __eq__(self, other):
        if not isinstance(other, FieldElement):
            other = self._coerce(other)
            if other is NotImplemented:
                return False
        return self.field == other.field and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def is_constant(self):
        return P.is_constant(self.num) and self._den_is_one()

    def constant_value(self):
        if not self.is_constant():
            raise ValueError("not a constant")
        return self.num.get((0,) * self.field.nvars, self.field.coefficients.zero)

    def is_unit_monomial(self):
        """True when the element is ``c * t^k``."""
        return len(self.num) == 1 and self._den_is_one()

    def numerator(self):
        return dict(self.num)

    def denominator(self):
        return dict(self.den)

    def substitute(self, target: "FunctionField", images):
        """Apply the ring map sending t_i to ``images[i]`` (FieldElements).

        Coefficients must embed in the target's coefficient field.
        """
        def push(pol):
            total = target.zero
            for e, c in pol.items():
                term = target.constant(_embed(c, self.field.conductor, target.conductor))
                for x, k in zip(images, e):
                    if k:
                        term = term * (x ** k)
                total = total + term
            return total
        den = push(self.den)
        if den.is_zero():
            raise ZeroDivisionError("denominator vanishes under substitution")
        return push(self.num) / den

    def render(self):
        return render_field_element(self)

    def __repr__(self):
        return self.render()


def _embed(c, n_from, n_to):
    """Embed an element of Q(zeta_{n_from}) into Q(zeta_{n_to})."""
    from .cyclotomic import CyclotomicNumber
    target = CyclotomicField(n_to)
    if isinstance(c, Fraction) or isinstance(c, int):
        return target(c)
    if n_to % n_from:
        raise ValueError("cannot embed cyclotomic field")
    step = n_to // n_from
    out = target.zero
    for k, a in enumerate(c.coeffs):
        if a:
            out = out + target.zeta(k * step) * a
    return out


def _from_laurent(field, num):
    out = FieldElement.__new__(FieldElement)
    out.field, out._key = field, None
    out.num = num
    out.den = P.constant(field.coefficients.one, field.nvars)
    return out


def _normalize(field, num, den):
    one = field.coefficients.one
    nv = field.nvars
    if not num:
        return {}, P.constant(one, nv)
    mn, md = P.min_exponents(num), P.min_exponents(den)
    num0 = P.monomial_mul(num, tuple(-a for a in mn))
    den0 = P.monomial_mul(den, tuple(-a for a in md))
    if not P.is_constant(den0):
        g = P.gcd(num0, den0, one)
        if not P.is_constant(g):
            num0 = P.divexact(num0, g)
            den0 = P.divexact(den0, g)
    _, lc = P.leading(den0)
    if lc != 1:
        inv = 1 / lc if not hasattr(lc, "inverse") else lc.inverse()
        num0 = P.scale(num0, inv)
        den0 = P.scale(den0, inv)
    shift = tuple(a - b for a, b in zip(mn, md))
    return P.monomial_mul(num0, shift), den0


def _render_poly(p, names):
    if not p:
        return "0"
    terms = []
    for e in sorted(p, reverse=True):
        c = p[e]
        mono = "*".join(n if k == 1 else f"{n}^{k}" for n, k in zip(names, e) if k)
        cs = render_cyclotomic(c)
        negative = False
        if not hasattr(c, "coeffs") or c.is_rational():
            val = c if not hasattr(c, "coeffs") else c.coeffs[0]
            negative = val < 0
            cs = str(abs(val))
        elif " " in cs:
            cs = f"({cs})"
        elif cs.startswith("-"):
            negative, cs = True, cs[1:]
        if mono:
            body = mono if cs == "1" else f"{cs}*{mono}"
        else:
            body = cs
        terms.append(("-" if negative else "+", body))
    s = ("-" if terms[0][0] == "-" else "") + terms[0][1]
    for sign, body in terms[1:]:
        s += f" {sign} {body}"
    return s


def render_field_element(x: FieldElement) -> str:
    """Stable text form; cyclotomic coefficients use ``z = zeta_n``."""
    num = _render_poly(x.num, x.field.names)
    if x._den_is_one():
        return num
    den = _render_poly(x.den, x.field.names)
    return f"({num})/({den})"


def determinant(M, field=None):
    """Exact determinant of a square matrix over a field.

    FieldElement matrices are cleared to a common denominator and reduced
    fraction-free (Bareiss); other fields use Gaussian elimination.
    """
    n = len(M)
    if field is None:
        field = M[0][0].field if n and isinstance(M[0][0], FieldElement) else QQ
    if n == 0:
        return field.one
    if isinstance(field, FunctionField):
        return _bareiss(M, field)
    A = [list(row) for row in M]
    det = field.one
    for c in range(n):
        p = next((r for r in range(c, n) if A[r][c] != 0), None)
        if p is None:
            return field.zero
        if p != c:
            A[c], A[p] = A[p], A[c]
            det = -det
        piv = A[c][c]
        det = det * piv
        inv = 1 / piv
        for r in range(c + 1, n):
            if A[r][c] != 0:
                f = A[r][c] * inv
                A[r] = [x - f * y for x, y in zip(A[r], A[c])]
    return det


def _bareiss(M, field):
    n = len(M)
    A, scales = _polynomial_rows(M, field, with_scales=True)
    det = _ff_det(A, field)
    if not det:
        return field.zero
    num, den = _unintegralize(det, field), P.constant(field.coefficients.one, field.nvars)
    for sc in scales:
        den = P.mul(den, sc)
    return FieldElement(field, num, den)


def _ff_det(A, field):
    """Fraction-free determinant of a square matrix of ordinary polynomials."""
    n = len(A)
    A = [list(r) for r in A]
    sign = 1
    prev = None
    for k in range(n - 1):
        if not A[k][k]:
            p = next((r for r in range(k + 1, n) if A[r][k]), None)
            if p is None:
                return {}
            A[k], A[p] = A[p], A[k]
            sign = -sign
        piv = A[k][k]
        for i in range(k + 1, n):
            a = A[i][k]
            row_i = A[i]
            for j in range(k + 1, n):
                t = P.mul(piv, row_i[j]) if row_i[j] else {}
                if a and A[k][j]:
                    t = P.sub(t, P.mul(a, A[k][j]))
                row_i[j] = P.divexact(t, prev) if t and prev is not None else t
            row_i[k] = {}
        prev = piv
    det = A[n - 1][n - 1]
    return P.neg(det) if sign < 0 and det else det


def _unintegralize(p, field):
    if field.coefficients.degree == 1:
        return {e: Fraction(c) for e, c in p.items()}
    return p


def _polynomial_rows(M, field, with_scales=False):
    """Scale each row of a FieldElement matrix into ordinary polynomials.

    Rational coefficients are cleared to integers. With ``with_scales``
    the polynomial each row was multiplied by is returned as well.
    """
    one = field.coefficients.one
    nv = field.nvars
    rational = field.coefficients.degree == 1
    out, scales = [], []
    for row in M:
        L = P.constant(one, nv)
        for x in row:
            if x.num and not x._den_is_one() and x.den != L:
                L = P.mul(L, P.divexact(x.den, P.gcd(L, x.den, one)))
        prow = [P.mul(x.num, P.divexact(L, x.den)) if x.num else {} for x in row]
        entries = [e for p in prow for e in p]
        shift = (0,) * nv
        if entries:
            shift = tuple(-min(e[i] for e in entries) for i in range(nv))
            prow = [P.monomial_mul(p, shift) for p in prow]
        scale = P.monomial_mul(L, shift)
        if rational:
            d = 1
            for p in prow:
                for c in p.values():
                    d = d * c.denominator // gcd(d, c.denominator)
            prow = [{e: int(c * d) for e, c in p.items()} for p in prow]
            scale = P.scale(scale, d)
        out.append(prow)
        scales.append(scale)
    return (out, scales) if with_scales else out


def pivot_columns(M, field):
    """Pivot columns of a row echelon form of M (fraction-free elimination).

    These are the greedy left-to-right maximal independent columns.
    """
    A = _polynomial_rows(M, field)
    m = len(A)
    n = len(A[0]) if m else 0
    prev = None
    pivots = []
    r = 0
    for c in range(n):
        if r == m:
            break
        p = next((i for i in range(r, m) if A[i][c]), None)
        if p is None:
            continue
        A[r], A[p] = A[p], A[r]
        piv = A[r][c]
        for i in range(r + 1, m):
            a = A[i][c]
            row_i = A[i]
            for j in range(c + 1, n):
                t = P.mul(piv, row_i[j]) if row_i[j] else {}
                if a and A[r][j]:
                    t = P.sub(t, P.mul(a, A[r][j]))
                row_i[j] = P.divexact(t, prev) if t and prev is not None else t
            row_i[c] = {}
        prev = piv
        pivots.append(c)
        r += 1
    return pivots
