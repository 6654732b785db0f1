"""Structure constants of so(n+1) and su(n+1) from their symbolic bracket tables.

so(n+1) uses the basis B0_jk (j < k).  su(n+1) uses A_{i,i+1} and B^a_jk
(a = 0, 1; j < k) and is built purely from the multiplication table of these
generators; no matrices are involved.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import combinations

from .algebra import LieAlgebraData

ONE = Fraction(1)


def _so_B(j, k, c, out):
    """Add c*B0_jk to ``out`` using B_kj = -B_jk and B_jj = 0."""
    if j == k or c == 0:
        return
    if j > k:
        j, k, c = k, j, -c
    key = (j, k)
    out[key] = out.get(key, 0) + c


def so_bracket_symbolic(r, j, k, l):
    """[B_rj, B_kl] as a dict (p, q) -> coefficient."""
    d = lambda a, b: 1 if a == b else 0
    out = {}
    _so_B(j, l, -d(r, k), out)
    _so_B(j, k, d(r, l), out)
    _so_B(r, l, d(j, k), out)
    _so_B(r, k, -d(j, l), out)
    return {key: c for key, c in out.items() if c != 0}


def so_algebra(n1: int) -> LieAlgebraData:
    """so(n1) with basis B0_jk and the form -1/2 tr (which makes the basis orthonormal)."""
    pairs = list(combinations(range(1, n1 + 1), 2))
    labels = tuple(f"B0_{j}{k}" if n1 < 10 else f"B0_{j},{k}" for j, k in pairs)
    idx = {p: i for i, p in enumerate(pairs)}
    structure = {}
    for a, (r, j) in enumerate(pairs):
        for b in range(a + 1, len(pairs)):
            k, l = pairs[b]
            res = so_bracket_symbolic(r, j, k, l)
            if res:
                structure[(a, b)] = tuple(sorted((idx[key], Fraction(c)) for key, c in res.items()))
    n = len(pairs)
    form = tuple(tuple(ONE if i == j else Fraction(0) for j in range(n)) for i in range(n))
    return LieAlgebraData(f"so({n1})", labels, structure, form)


# --- su(n+1) ----------------------------------------------------------------
# Symbolic elements are dicts with keys ("D", i) for the coefficient of
# sqrt(-1) E_ii and ("B", a, j, k) with a in {0,1}, j < k.

def _add(out, key, c):
    if c:
        out[key] = out.get(key, 0) + c


def _su_B(a, j, k, c, out):
    """Add c*B^a_jk; the superscript is read mod 2, B^a_kj = (-1)^{a+1} B^a_jk,
    B^0_jj = 0 and B^1_jj = 2 sqrt(-1) E_jj."""
    if c == 0:
        return
    a = a % 2
    if j == k:
        if a == 1:
            _add(out, ("D", j), 2 * c)
        return
    if j > k:
        j, k = k, j
        if a == 0:
            c = -c
    _add(out, ("B", a, j, k), c)


def _su_A(r, j, c, out):
    """Add c*A_rj = c sqrt(-1)(E_rr - E_jj)."""
    if r == j or c == 0:
        return
    _add(out, ("D", r), c)
    _add(out, ("D", j), -c)


def su_bracket_A_B(r, j, a, k, l):
    """[A_rj, B^a_kl] from the multiplication table."""
    d = lambda x, y: 1 if x == y else 0
    out = {}
    s = -1 if a % 2 else 1
    _su_B(a + 1, r, l, s * d(r, k), out)
    _su_B(a + 1, r, k, -d(r, l), out)
    _su_B(a + 1, j, l, -s * d(j, k), out)
    _su_B(a + 1, j, k, d(j, l), out)
    return out


def su_bracket_B_B(a, r, j, b, k, l):
    """[B^a_rj, B^b_kl] from the multiplication table (any a, b in {0, 1})."""
    if a > b:
        res = su_bracket_B_B(b, k, l, a, r, j)
        return {key: -c for key, c in res.items()}
    d = lambda x, y: 1 if x == y else 0
    sa = -1 if a % 2 else 1
    sb = -1 if b % 2 else 1
    out = {}
    _su_B(a + b, j, l, -d(r, k), out)
    _su_B(a + b, j, k, sb * d(r, l), out)
    _su_B(a + b, r, l, sa * d(j, k), out)
    _su_B(a + b, r, k, -sa * sb * d(j, l), out)
    return out


def su_generators(n1: int):
    """Basis descriptors of su(n1): ('A', i, i+1) then ('B', a, j, k)."""
    gens = [("A", i, i + 1) for i in range(1, n1)]
    pairs = list(combinations(range(1, n1 + 1), 2))
    gens += [("B", 0, j, k) for j, k in pairs]
    gens += [("B", 1, j, k) for j, k in pairs]
    return gens


def su_label(g, n1: int) -> str:
    sep = "" if n1 < 10 else ","
    if g[0] == "A":
        return f"A_{g[1]}{sep}{g[2]}"
    return f"B{g[1]}_{g[2]}{sep}{g[3]}"


def _symbolic(g):
    out = {}
    if g[0] == "A":
        _su_A(g[1], g[2], 1, out)
    else:
        _su_B(g[1], g[2], g[3], 1, out)
    return out


def su_bracket_generators(g, h):
    if g[0] == "A" and h[0] == "A":
        return {}
    if g[0] == "A":
        return su_bracket_A_B(g[1], g[2], h[1], h[2], h[3])
    if h[0] == "A":
        res = su_bracket_A_B(h[1], h[2], g[1], g[2], g[3])
        return {key: -c for key, c in res.items()}
    return su_bracket_B_B(g[1], g[2], g[3], h[1], h[2], h[3])


def _to_coordinates(sym, n1: int, index):
    """Symbolic element -> {basis index: coefficient}.

    Diagonal part sqrt(-1) diag(d) with sum d = 0 equals sum_i c_i A_{i,i+1}
    with c_i = d_1 + ... + d_i.
    """
    out = {}
    d = [0] * (n1 + 1)
    for key, c in sym.items():
        if c == 0:
            continue
        if key[0] == "D":
            d[key[1]] += c
        else:
            _add(out, index[key], c)
    if sum(d) != 0:
        raise ValueError("diagonal part is not traceless")
    partial = 0
    for i in range(1, n1):
        partial += d[i]
        _add(out, index[("A", i, i + 1)], partial)
    return {k: Fraction(c) for k, c in out.items() if c != 0}


def _su_inner(x, y, n1):
    """-2 tr(xy) for symbolic elements.

    <sqrt(-1)diag(d), sqrt(-1)diag(e)> = 2 sum d e; each B^a_jk has norm^2 4 and
    distinct B's, or a B and a diagonal element, are orthogonal.
    """
    total = Fraction(0)
    dx = {k[1]: c for k, c in x.items() if k[0] == "D"}
    dy = {k[1]: c for k, c in y.items() if k[0] == "D"}
    for i, c in dx.items():
        total += 2 * c * dy.get(i, 0)
    for k, c in x.items():
        if k[0] == "B":
            total += 4 * c * y.get(k, 0)
    return total


def su_algebra(n1: int) -> LieAlgebraData:
    """su(n1) from the multiplication table, with the form -2 tr."""
    gens = su_generators(n1)
    index = {}
    for i, g in enumerate(gens):
        index[g if g[0] == "A" else ("B", g[1], g[2], g[3])] = i
    structure = {}
    for a in range(len(gens)):
        for b in range(a + 1, len(gens)):
            res = _to_coordinates(su_bracket_generators(gens[a], gens[b]), n1, index)
            if res:
                structure[(a, b)] = tuple(sorted(res.items()))
    syms = [_symbolic(g) for g in gens]
    form = tuple(tuple(_su_inner(x, y, n1) for y in syms) for x in syms)
    labels = tuple(su_label(g, n1) for g in gens)
    return LieAlgebraData(f"su({n1})", labels, structure, form)


def su_element(alg: LieAlgebraData, terms):
    """Coordinates of sum c*gen for gens ('A', r, j) with any r < j or ('B', a, j, k)."""
    n1 = int(alg.name[3:-1])
    gens = su_generators(n1)
    index = {(g if g[0] == "A" else ("B", g[1], g[2], g[3])): i for i, g in enumerate(gens)}
    sym = {}
    for g, c in terms:
        c = Fraction(c)
        if g[0] == "A":
            _su_A(g[1], g[2], c, sym)
        else:
            _su_B(g[1], g[2], g[3], c, sym)
    coords = _to_coordinates(sym, n1, index)
    v = [Fraction(0)] * alg.dim
    for k, c in coords.items():
        v[k] = c
    return tuple(v)


def so_element(alg: LieAlgebraData, terms):
    """Coordinates of sum c*B0_jk for entries ((j, k), c) with any j != k."""
    n1 = int(alg.name[3:-1])
    pairs = list(combinations(range(1, n1 + 1), 2))
    idx = {p: i for i, p in enumerate(pairs)}
    out = {}
    for (j, k), c in terms:
        _so_B(j, k, Fraction(c), out)
    v = [Fraction(0)] * alg.dim
    for key, c in out.items():
        v[idx[key]] += c
    return tuple(v)
