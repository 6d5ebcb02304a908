"""Exact arithmetic in cyclotomic fields Q(zeta_n), power basis mod Phi_n."""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd


def _divisors(n):
    return [d for d in range(1, n + 1) if n % d == 0]


def _mobius(n):
    res, p, m = 1, 2, n
    while p * p <= m:
        if m % p == 0:
            m //= p
            if m % p == 0:
                return 0
            res = -res
        p += 1
    if m > 1:
        res = -res
    return res


def _pmul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _pdivexact(a, b):
    # a, b: integer coefficient lists, lowest degree first; b monic
    a = list(a)
    q = [0] * (len(a) - len(b) + 1)
    for k in range(len(q) - 1, -1, -1):
        c = a[k + len(b) - 1]
        q[k] = c
        if c:
            for j, y in enumerate(b):
                a[k + j] -= c * y
    assert not any(a), "inexact division"
    return q


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple:
    """Integer coefficients of Phi_n, lowest degree first."""
    num, den = [1], [1]
    for d in _divisors(n):
        mu = _mobius(n // d)
        f = [-1] + [0] * (d - 1) + [1]
        if mu == 1:
            num = _pmul(num, f)
        elif mu == -1:
            den = _pmul(den, f)
    return tuple(_pdivexact(num, den))


def euler_phi(n: int) -> int:
    return sum(1 for k in range(1, n + 1) if gcd(k, n) == 1)


@lru_cache(maxsize=None)
def _power_table(n):
    # x^k mod Phi_n for 0 <= k < 2*deg, as tuples of ints
    phi = cyclotomic_polynomial(n)
    d = len(phi) - 1
    table = []
    cur = [0] * d
    cur[0] = 1
    for _ in range(max(2 * d, n)):
        table.append(tuple(cur))
        # multiply by x
        top = cur[-1]
        cur = [0] + cur[:-1]
        if top:
            cur = [c - top * p for c, p in zip(cur, phi[:-1])]
    return tuple(table)


def _reduce(coeffs, n):
    table = _power_table(n)
    d = euler_phi(n)
    out = [Fraction(0)] * d
    for k, c in enumerate(coeffs):
        if c:
            row = table[k] if k < len(table) else table[k % n]
            for j, r in enumerate(row):
                if r:
                    out[j] += c * r
    return tuple(out)


def _qpoly_trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _qpoly_divmod(a, b):
    a = list(a)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    lb = b[-1]
    for k in range(len(a) - len(b), -1, -1):
        c = a[k + len(b) - 1] / lb
        q[k] = c
        if c:
            for j, y in enumerate(b):
                a[k + j] -= c * y
    return _qpoly_trim(q), _qpoly_trim(a[: len(b) - 1])


def _qpoly_sub(a, b):
    out = [Fraction(0)] * max(len(a), len(b))
    for i, x in enumerate(a):
        out[i] += x
    for i, x in enumerate(b):
        out[i] -= x
    return _qpoly_trim(out)


class CyclotomicNumber:
    """Element of Q(zeta_n), stored in the power basis of length phi(n)."""

    __slots__ = ("n", "coeffs", "_hash")

    def __init__(self, n: int, coeffs):
        self.n = n
        d = euler_phi(n)
        coeffs = [Fraction(c) for c in coeffs]
        if len(coeffs) > d:
            self.coeffs = _reduce(coeffs, n)
        else:
            self.coeffs = tuple(coeffs) + (Fraction(0),) * (d - len(coeffs))
        self._hash = None

    @classmethod
    def zeta(cls, n, k=1):
        k %= n
        coeffs = [0] * (k + 1)
        coeffs[k] = 1
        return cls(n, _reduce(coeffs, n))

    def _coerce(self, other):
        if isinstance(other, CyclotomicNumber):
            if other.n != self.n:
                raise ValueError("conductor mismatch")
            return other
        if isinstance(other, (int, Fraction)):
            return CyclotomicNumber(self.n, [other])
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return CyclotomicNumber(self.n, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return CyclotomicNumber(self.n, [-a for a in self.coeffs])

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return CyclotomicNumber(self.n, [a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return CyclotomicNumber(self.n, [a * other for a in self.coeffs])
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        prod = [Fraction(0)] * (2 * len(self.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        prod[i + j] += a * b
        return CyclotomicNumber(self.n, _reduce(prod, self.n))

    __rmul__ = __mul__

    def inverse(self):
        if not self:
            raise ZeroDivisionError("inverse of zero")
        # extended Euclid: find u with a*u = 1 mod Phi_n
        a = _qpoly_trim(list(self.coeffs))
        m = [Fraction(c) for c in cyclotomic_polynomial(self.n)]
        r0, r1 = m, a
        s0, s1 = [], [Fraction(1)]
        while len(r1) > 1:
            q, r = _qpoly_divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _qpoly_sub(s0, _pmul_q(q, s1))
        c = r1[0]
        return CyclotomicNumber(self.n, _reduce([x / c for x in s1], self.n))

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return CyclotomicNumber(self.n, [a / other for a in self.coeffs])
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        out, base = CyclotomicNumber(self.n, [1]), self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __bool__(self):
        return any(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.coeffs[0] == other and not any(self.coeffs[1:])
        if isinstance(other, CyclotomicNumber):
            return self.n == other.n and self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            if not any(self.coeffs[1:]):
                self._hash = hash(self.coeffs[0])
            else:
                self._hash = hash((self.n, self.coeffs))
        return self._hash

    def is_rational(self):
        return not any(self.coeffs[1:])

    def __repr__(self):
        return f"({render_cyclotomic(self)})"


def _pmul_q(a, b):
    if not a or not b:
        return []
    return _pmul(a, b)


def render_cyclotomic(x) -> str:
    """Power-basis rendering with ``z`` for the primitive root."""
    if isinstance(x, (int, Fraction)):
        return str(Fraction(x))
    terms = []
    for k in range(len(x.coeffs) - 1, -1, -1):
        c = x.coeffs[k]
        if not c:
            continue
        mono = "" if k == 0 else ("z" if k == 1 else f"z^{k}")
        if not mono:
            body = str(abs(c))
        elif abs(c) == 1:
            body = mono
        else:
            body = f"{abs(c)}*{mono}"
        terms.append(("-" if c < 0 else "+", body))
    if not terms:
        return "0"
    s = ("-" if terms[0][0] == "-" else "") + terms[0][1]
    for sign, body in terms[1:]:
        s += f" {sign} {body}"
    return s


class CyclotomicField:
    """Q(zeta_n). Fields of degree one hand out plain Fractions."""

    def __init__(self, n: int):
        if n < 1:
            raise ValueError("conductor must be positive")
        self.n = n
        self.degree = euler_phi(n)

    def __eq__(self, other):
        return isinstance(other, CyclotomicField) and other.n == self.n

    def __hash__(self):
        return hash(("cyc", self.n))

    @property
    def zero(self):
        return Fraction(0) if self.degree == 1 else CyclotomicNumber(self.n, [0])

    @property
    def one(self):
        return Fraction(1) if self.degree == 1 else CyclotomicNumber(self.n, [1])

    def zeta(self, k=1):
        if self.degree == 1:
            return Fraction(1) if self.n == 1 or k % 2 == 0 else Fraction(-1)
        return CyclotomicNumber.zeta(self.n, k)

    def __call__(self, value):
        if self.degree == 1:
            if isinstance(value, CyclotomicNumber):
                return value.coeffs[0]
            return Fraction(value)
        if isinstance(value, CyclotomicNumber):
            return value
        if isinstance(value, (list, tuple)):
            return CyclotomicNumber(self.n, value)
        return CyclotomicNumber(self.n, [value])

    def __repr__(self):
        return f"Q(zeta_{self.n})"
