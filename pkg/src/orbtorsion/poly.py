"""Sparse multivariate polynomials over an exact coefficient field.

A polynomial is a dict mapping exponent tuples to nonzero coefficients.
Exponents may be negative (Laurent polynomials); gcd and exact division
expect ordinary polynomials. Term order is lexicographic on exponents.
"""
from __future__ import annotations


def clean(p):
    return {e: c for e, c in p.items() if c}


def add(p, q):
    out = dict(p)
    for e, c in q.items():
        v = out.get(e)
        if v is None:
            out[e] = c
        else:
            v = v + c
            if v:
                out[e] = v
            else:
                del out[e]
    return out


def neg(p):
    return {e: -c for e, c in p.items()}


def sub(p, q):
    return add(p, neg(q))


def scale(p, c):
    if not c:
        return {}
    return {e: v * c for e, v in p.items()}


def mul(p, q):
    if len(p) > len(q):
        p, q = q, p
    out = {}
    for e1, c1 in p.items():
        for e2, c2 in q.items():
            e = tuple(a + b for a, b in zip(e1, e2))
            v = out.get(e)
            out[e] = c1 * c2 if v is None else v + c1 * c2
    return clean(out)


def monomial_mul(p, shift, c=None):
    if c is None:
        return {tuple(a + b for a, b in zip(e, shift)): v for e, v in p.items()}
    return {tuple(a + b for a, b in zip(e, shift)): v * c for e, v in p.items()}


def power(p, k, one):
    nvars = len(next(iter(p))) if p else 0
    out = {(0,) * nvars: one}
    base = p
    while k:
        if k & 1:
            out = mul(out, base)
        base = mul(base, base)
        k >>= 1
    return out


def leading(p):
    e = max(p)
    return e, p[e]


def min_exponents(p):
    it = iter(p)
    m = list(next(it))
    for e in it:
        for i, a in enumerate(e):
            if a < m[i]:
                m[i] = a
    return tuple(m)


def constant(c, nvars):
    return {(0,) * nvars: c} if c else {}


def is_constant(p):
    return not p or (len(p) == 1 and not any(next(iter(p))))


def divexact(p, q):
    """Quotient of p by q; raises if q does not divide p."""
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    lq_e, lq_c = leading(q)
    integral = isinstance(lq_c, int)
    if not integral:
        inv = 1 / lq_c if not hasattr(lq_c, "inverse") else lq_c.inverse()
    rem = dict(p)
    quo = {}
    while rem:
        le, lc = leading(rem)
        d = tuple(a - b for a, b in zip(le, lq_e))
        if any(x < 0 for x in d):
            raise ArithmeticError("inexact polynomial division")
        if integral:
            c, r = divmod(lc, lq_c)
            if r:
                raise ArithmeticError("inexact integral division")
        else:
            c = lc * inv
        quo[d] = c
        rem = sub(rem, monomial_mul(q, d, c))
    return quo


def monic(p):
    if not p:
        return p
    _, c = leading(p)
    if c == 1:
        return p
    inv = 1 / c if not hasattr(c, "inverse") else c.inverse()
    return scale(p, inv)


def _variables(p):
    nv = len(next(iter(p))) if p else 0
    return {i for i in range(nv) for e in p if e[i]}


def _split(p, v):
    """View p as a univariate polynomial in variable v."""
    out = {}
    for e, c in p.items():
        k = e[v]
        rest = e[:v] + (0,) + e[v + 1:]
        out.setdefault(k, {})[rest] = c
    return out


def _join(u, v):
    out = {}
    for k, coeff in u.items():
        for e, c in coeff.items():
            out[e[:v] + (k,) + e[v + 1:]] = c
    return out


def _content(u, one):
    g = {}
    for coeff in u.values():
        g = gcd(g, coeff, one)
        if is_constant(g):
            break
    return g


def _prem(a, b, v):
    """Sparse pseudo-remainder of a by b in variable v (both split forms)."""
    db = max(b)
    lb = b[db]
    r = {k: c for k, c in a.items()}
    while r and max(r) >= db:
        dr = max(r)
        lr = r[dr]
        shift = dr - db
        new = {k: mul(c, lb) for k, c in r.items()}
        for k, c in b.items():
            kk = k + shift
            cur = new.get(kk, {})
            cur = sub(cur, mul(c, lr))
            if cur:
                new[kk] = cur
            elif kk in new:
                del new[kk]
        r = {k: c for k, c in new.items() if c}
    return r


def gcd(p, q, one):
    """Monic (lex leading coefficient 1) gcd of two polynomials."""
    if not p:
        return monic(q)
    if not q:
        return monic(p)
    nvars = len(next(iter(p)))
    if is_constant(p) or is_constant(q):
        return constant(one, nvars)
    if p == q:
        return monic(p)
    vs = _variables(p) | _variables(q)
    v = max(vs)
    if len(vs) == 1:
        return _gcd_univariate(p, q, v)
    up, uq = _split(p, v), _split(q, v)
    if max(up) == 0 or max(uq) == 0:
        # one side free of v: gcd divides every coefficient of the other
        if max(up) == 0:
            return gcd(up[0], _content(uq, one), one)
        return gcd(uq[0], _content(up, one), one)
    cp, cq = _content(up, one), _content(uq, one)
    c = gcd(cp, cq, one)
    a = {k: divexact(x, cp) for k, x in up.items()}
    b = {k: divexact(x, cq) for k, x in uq.items()}
    if max(a) < max(b):
        a, b = b, a
    while True:
        r = _prem(a, b, v)
        if not r:
            g = b
            break
        if max(r) == 0:
            g = None
            break
        cr = _content(r, one)
        a, b = b, {k: divexact(x, cr) for k, x in r.items()}
    if g is None:
        return monic(c)
    cg = _content(g, one)
    g = _join({k: divexact(x, cg) for k, x in g.items()}, v)
    return monic(mul(g, c))


def _gcd_univariate(p, q, v):
    """Euclid over the coefficient field, dense in variable v."""
    def dense(f):
        out = [0] * (max(e[v] for e in f) + 1)
        for e, c in f.items():
            out[e[v]] = c
        return out

    def inv(c):
        return 1 / c if not hasattr(c, "inverse") else c.inverse()

    a, b = dense(p), dense(q)
    if len(a) < len(b):
        a, b = b, a
    while b:
        ib = inv(b[-1])
        a = list(a)
        for k in range(len(a) - len(b), -1, -1):
            c = a[k + len(b) - 1]
            if c:
                f = c * ib
                for j, y in enumerate(b):
                    if y:
                        a[k + j] = a[k + j] - f * y
        while a and not a[-1]:
            a.pop()
        a, b = b, a
    ia = inv(a[-1])
    nv = len(next(iter(p)))
    out = {}
    for k, c in enumerate(a):
        if c:
            e = [0] * nv
            e[v] = k
            out[tuple(e)] = c * ia
    return out


def evaluate(p, values, one):
    """Substitute field values for every variable (values may be any ring)."""
    total = None
    for e, c in p.items():
        term = c
        for x, k in zip(values, e):
            if k:
                term = term * (x ** k)
        total = term if total is None else total + term
    return total if total is not None else one * 0
