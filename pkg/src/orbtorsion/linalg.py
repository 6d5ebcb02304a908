"""Exact dense linear algebra over any field whose elements support + - * /.

Matrices are lists of rows. A column vector is a plain list.
"""
from __future__ import annotations


def zeros(m, n, zero):
    return [[zero] * n for _ in range(m)]


def identity(n, zero, one):
    return [[one if i == j else zero for j in range(n)] for i in range(n)]


def transpose(A, ncols=None):
    if not A:
        return [[] for _ in range(ncols or 0)]
    return [list(col) for col in zip(*A)]


def matmul(A, B, zero, inner=None):
    """Product of an m x k and a k x n matrix; ``inner`` gives k when A has no rows."""
    m = len(A)
    k = len(A[0]) if m else (inner if inner is not None else len(B))
    n = len(B[0]) if B else 0
    out = [[zero] * n for _ in range(m)]
    for i in range(m):
        Ai = A[i]
        row = out[i]
        for t in range(k):
            a = Ai[t]
            if a:
                Bt = B[t]
                for j in range(n):
                    b = Bt[j]
                    if b:
                        row[j] = row[j] + a * b
    return out


def matvec(A, x, zero):
    return [sum((a * b for a, b in zip(row, x) if a and b), zero) for row in A]


def columns(A, n):
    """Columns of an m x n matrix as vectors."""
    return [[row[j] for row in A] for j in range(n)]


def from_columns(cols, m, zero):
    return [[c[i] for c in cols] for i in range(m)] if cols else [[] for _ in range(m)]


def rref(A, zero, one):
    """Reduced row echelon form and pivot columns."""
    R = [list(r) for r in A]
    m = len(R)
    n = len(R[0]) if m else 0
    pivots = []
    r = 0
    for c in range(n):
        p = next((i for i in range(r, m) if R[i][c]), None)
        if p is None:
            continue
        R[r], R[p] = R[p], R[r]
        inv = one / R[r][c]
        R[r] = [x * inv if x else zero for x in R[r]]
        for i in range(m):
            if i != r and R[i][c]:
                f = R[i][c]
                R[i] = [x - f * y if y else x for x, y in zip(R[i], R[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    return R, pivots


def _fraction_free(zero):
    fld = getattr(zero, "field", None)
    return fld if fld is not None and hasattr(fld, "nvars") else None


def rank(A, zero, one):
    fld = _fraction_free(zero)
    if fld is not None:
        from .fields import pivot_columns
        return len(pivot_columns(A, fld)) if A else 0
    return len(rref(A, zero, one)[1])


def kernel(A, n, zero, one):
    """Basis of the null space of an m x n matrix, one vector per free column."""
    if not A:
        return [[one if i == j else zero for i in range(n)] for j in range(n)]
    R, pivots = rref(A, zero, one)
    free = [j for j in range(n) if j not in pivots]
    basis = []
    for f in free:
        v = [zero] * n
        v[f] = one
        for r, p in enumerate(pivots):
            if R[r][f]:
                v[p] = -R[r][f]
        basis.append(v)
    return basis


def solve(cols, b, zero, one):
    """Coefficients x with sum x_k cols[k] = b, or None if b is not in the span."""
    m = len(b)
    k = len(cols)
    aug = [[cols[j][i] for j in range(k)] + [b[i]] for i in range(m)]
    R, pivots = rref(aug, zero, one)
    if k in pivots:
        return None
    x = [zero] * k
    for r, p in enumerate(pivots):
        x[p] = R[r][k]
    return x


def independent_subset(vectors, zero, one, start=()):
    """Greedy indices of ``vectors`` extending ``start`` to an independent set."""
    fld = _fraction_free(zero)
    if fld is not None:
        from .fields import pivot_columns
        start = list(start)
        vecs = start + list(vectors)
        if not vecs or not vecs[0]:
            return []
        M = [[v[i] for v in vecs] for i in range(len(vecs[0]))]
        k = len(start)
        return [c - k for c in pivot_columns(M, fld) if c >= k]
    chosen = []
    basis = [list(v) for v in start]
    # incremental echelon: store reduced rows with pivot positions
    echelon = []
    for v in basis:
        _insert(echelon, v, zero, one)
    for idx, v in enumerate(vectors):
        if _insert(echelon, v, zero, one):
            chosen.append(idx)
    return chosen


def _insert(echelon, v, zero, one):
    w = list(v)
    for piv, row in echelon:
        if w[piv]:
            f = w[piv]
            w = [a - f * b if b else a for a, b in zip(w, row)]
    p = next((i for i, a in enumerate(w) if a), None)
    if p is None:
        return False
    inv = one / w[p]
    echelon.append((p, [a * inv if a else zero for a in w]))
    return True


def inverse(A, zero, one):
    n = len(A)
    aug = [list(A[i]) + [one if i == j else zero for j in range(n)] for i in range(n)]
    R, pivots = rref(aug, zero, one)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return [row[n:] for row in R]
