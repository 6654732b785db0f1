"""Small dense linear algebra over Fraction or float.

Matrices are lists of rows.  Exact routines (``tol=None``) pivot on the first
nonzero entry (lowest row index) so that results are reproducible; float
routines use partial pivoting with the largest entry, ties broken by index.
"""
from __future__ import annotations

from fractions import Fraction

from .scalars import PIVOT_TOL, is_zero


class SingularMatrix(ValueError):
    pass


def zeros(r: int, c: int, exact: bool = True):
    z = Fraction(0) if exact else 0.0
    return [[z] * c for _ in range(r)]


def identity(n: int, exact: bool = True):
    one, z = (Fraction(1), Fraction(0)) if exact else (1.0, 0.0)
    return [[one if i == j else z for j in range(n)] for i in range(n)]


def transpose(a):
    return [list(col) for col in zip(*a)] if a else []


def _zero_like(seq):
    for x in seq:
        return x * 0
    return 0


def matmul(a, b):
    bt = transpose(b)
    z = _zero_like(bt[0]) if bt else 0
    return [[sum((x * y for x, y in zip(row, col) if x and y), z) for col in bt] for row in a]


def matvec(a, v):
    z = _zero_like(v)
    return [sum((x * y for x, y in zip(row, v) if x and y), z) for row in a]


def dot(u, v):
    return sum((x * y for x, y in zip(u, v) if x and y), _zero_like(v))


def bilinear(g, u, v):
    """u^T g v."""
    return dot(u, matvec(g, v))


def _copy(a, tol):
    if tol is None:
        return [[x if isinstance(x, Fraction) else Fraction(x) for x in row] for row in a]
    return [[float(x) for x in row] for row in a]


def _pick_pivot(m, col, start, tol):
    if tol is None:
        for r in range(start, len(m)):
            if m[r][col] != 0:
                return r
        return None
    best, best_val = None, tol
    for r in range(start, len(m)):
        a = abs(m[r][col])
        if a > best_val:
            best, best_val = r, a
    return best


def rref(a, tol: float | None = None):
    """Reduced row echelon form.  Returns (matrix, pivot columns)."""
    m = _copy(a, tol)
    if not m:
        return m, []
    nrows, ncols = len(m), len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        if r >= nrows:
            break
        p = _pick_pivot(m, c, r, tol)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        piv = m[r][c]
        m[r] = [x / piv for x in m[r]]
        for i in range(nrows):
            if i != r:
                f = m[i][c]
                if f != 0:
                    m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        if tol is not None:
            for i in range(nrows):
                if i != r:
                    m[i][c] = 0.0
        pivots.append(c)
        r += 1
    return m, pivots


def rank(a, tol: float | None = None) -> int:
    if not a:
        return 0
    return len(rref(a, tol)[1])


def nullspace(a, ncols: int | None = None, tol: float | None = None):
    """Basis of {x : a x = 0}, one vector per free column in increasing order."""
    if not a:
        if ncols is None:
            raise ValueError("ncols required for an empty matrix")
        return identity(ncols, tol is None)
    ncols = len(a[0])
    m, pivots = rref(a, tol)
    exact = tol is None
    one, z = (Fraction(1), Fraction(0)) if exact else (1.0, 0.0)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [z] * ncols
        v[f] = one
        for i, p in enumerate(pivots):
            v[p] = -m[i][f]
        basis.append(v)
    return basis


def solve(a, b, tol: float | None = None):
    """Solve a x = b for square nonsingular a; b may be a vector or a matrix."""
    n = len(a)
    vector_rhs = b and not isinstance(b[0], (list, tuple))
    rhs = [[x] for x in b] if vector_rhs else [list(r) for r in b]
    k = len(rhs[0]) if rhs else 0
    aug = [list(a[i]) + list(rhs[i]) for i in range(n)]
    m, pivots = rref(aug, tol)
    if pivots[:n] != list(range(n)):
        raise SingularMatrix("matrix is singular")
    sol = [row[n:n + k] for row in m[:n]]
    return [r[0] for r in sol] if vector_rhs else sol


def inverse(a, tol: float | None = None):
    return solve(a, identity(len(a), tol is None), tol)


def det(a, tol: float | None = None):
    """Determinant by elimination (exact when entries are Fractions)."""
    m = _copy(a, tol)
    n = len(m)
    d = Fraction(1) if tol is None else 1.0
    for c in range(n):
        p = _pick_pivot(m, c, c, tol)
        if p is None:
            return Fraction(0) if tol is None else 0.0
        if p != c:
            m[c], m[p] = m[p], m[c]
            d = -d
        piv = m[c][c]
        d *= piv
        for i in range(c + 1, n):
            f = m[i][c] / piv
            if f != 0:
                m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    return d


def leading_minors(a):
    """Leading principal minors computed by fraction-exact elimination."""
    n = len(a)
    m = _copy(a, None)
    minors = []
    d = Fraction(1)
    for c in range(n):
        piv = m[c][c]
        if piv == 0:
            # a zero pivot means this and (generically) later minors vanish
            minors.append(Fraction(0))
            minors.extend(det([row[:k] for row in a[:k]]) for k in range(c + 2, n + 1))
            return minors
        d *= piv
        minors.append(d)
        for i in range(c + 1, n):
            f = m[i][c] / piv
            if f != 0:
                m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    return minors


def cholesky(a, pivot_tol: float = PIVOT_TOL):
    """Float Cholesky factor; raises SingularMatrix with the failing index."""
    n = len(a)
    low = [[0.0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1):
            s = float(a[i][j]) - sum(low[i][k] * low[j][k] for k in range(j))
            if i == j:
                if s <= pivot_tol:
                    raise SingularMatrix(f"non-positive pivot at index {i}")
                low[i][i] = s ** 0.5
            else:
                low[i][j] = s / low[j][j]
    return low


def positive_definite_failure(a, tol: float | None = None):
    """Index (1-based minor size) of the first failure, or None when positive definite."""
    if tol is None:
        for k, mnr in enumerate(leading_minors(a), start=1):
            if mnr <= 0:
                return k
        return None
    try:
        cholesky(a)
    except SingularMatrix as exc:
        return int(str(exc).rsplit(" ", 1)[-1]) + 1
    return None


def is_symmetric(a, tol: float | None = None) -> bool:
    n = len(a)
    return all(is_zero(a[i][j] - a[j][i], tol) for i in range(n) for j in range(i + 1, n))
