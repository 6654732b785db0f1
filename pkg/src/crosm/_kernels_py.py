"""Pure-Python tensor kernels for the Levi-Civita/curvature pipeline.

All arrays are nested lists over the ordered basis of mbar.  Entries may be
Fractions (exact) or floats; zero entries are skipped.

    C[i][j][k]   component k of [e_i, e_j]_mbar
    H[i][j][w]   component w of [e_i, e_j]_h
    adh[w][r][c] matrix of ad(h_w) on mbar
    alpha[u][v]  vector alpha(e_u, e_v)
    Rop[a][b]    matrix of R(e_a, e_b), Rop[a][b][r][c] = [R(e_a, e_b) e_c]^r
"""

BACKEND = "python"


def connection(C, G, Ginv, half):
    """U and alpha = half*[,]_mbar + U from 2 g(U(u,v), w) = g([w,u],v) + g([w,v],u)."""
    n = len(G)
    zero = half - half
    # K[w][u][v] = g([e_w, e_u]_mbar, e_v)
    K = [[[zero] * n for _ in range(n)] for _ in range(n)]
    for w in range(n):
        Cw = C[w]
        Kw = K[w]
        for u in range(n):
            row = Cw[u]
            out = Kw[u]
            for k in range(n):
                c = row[k]
                if c:
                    Gk = G[k]
                    for v in range(n):
                        g = Gk[v]
                        if g:
                            out[v] += c * g
    U = [[None] * n for _ in range(n)]
    alpha = [[None] * n for _ in range(n)]
    for u in range(n):
        for v in range(u, n):
            b = [K[w][u][v] + K[w][v][u] for w in range(n)]
            vec = [zero] * n
            for r in range(n):
                Gr = Ginv[r]
                s = zero
                for w in range(n):
                    x = b[w]
                    if x:
                        s += Gr[w] * x
                vec[r] = half * s
            U[u][v] = vec
            U[v][u] = vec
    for u in range(n):
        for v in range(n):
            cu = C[u][v]
            alpha[u][v] = [half * cu[k] + U[u][v][k] for k in range(n)]
    return U, alpha


def _matmul_into(out, A, B, sign, n):
    for i in range(n):
        Ai = A[i]
        oi = out[i]
        for k in range(n):
            x = Ai[k]
            if x:
                if sign < 0:
                    x = -x
                Bk = B[k]
                for j in range(n):
                    y = Bk[j]
                    if y:
                        oi[j] += x * y


def curvature_ops(C, H, adh, alpha):
    """R(a,b)c = [[a,b]_h, c] + alpha([a,b]_mbar, c) + alpha(b, alpha(a,c)) - alpha(a, alpha(b,c))."""
    n = len(C)
    nh = len(adh)
    zero = alpha[0][0][0] - alpha[0][0][0] if n else 0
    # Al[u][r][c] = alpha(e_u, e_c)^r
    Al = [[[alpha[u][c][r] for c in range(n)] for r in range(n)] for u in range(n)]
    Rop = [[None] * n for _ in range(n)]
    zmat = lambda: [[zero] * n for _ in range(n)]
    for a in range(n):
        Rop[a][a] = zmat()
        for b in range(a + 1, n):
            M = zmat()
            hw = H[a][b]
            for w in range(nh):
                s = hw[w]
                if s:
                    Aw = adh[w]
                    for r in range(n):
                        Mr, Ar = M[r], Aw[r]
                        for c in range(n):
                            y = Ar[c]
                            if y:
                                Mr[c] += s * y
            cab = C[a][b]
            for k in range(n):
                s = cab[k]
                if s:
                    Ak = Al[k]
                    for r in range(n):
                        Mr, Ar = M[r], Ak[r]
                        for c in range(n):
                            y = Ar[c]
                            if y:
                                Mr[c] += s * y
            _matmul_into(M, Al[b], Al[a], 1, n)
            _matmul_into(M, Al[a], Al[b], -1, n)
            Rop[a][b] = M
            Rop[b][a] = [[-x for x in row] for row in M]
    return Rop


def lower(Rop, G):
    """R4[a][b][c][d] = g(R(e_a, e_b) e_c, e_d)."""
    n = len(G)
    zero = G[0][0] - G[0][0] if n else 0
    R4 = [[None] * n for _ in range(n)]
    for a in range(n):
        for b in range(n):
            M = Rop[a][b]
            T = [[zero] * n for _ in range(n)]
            for e in range(n):
                Me = M[e]
                Ge = G[e]
                for c in range(n):
                    x = Me[c]
                    if x:
                        Tc = T[c]
                        for d in range(n):
                            g = Ge[d]
                            if g:
                                Tc[d] += x * g
            R4[a][b] = T
    return R4


def ricci(Rop):
    """Ric[u][v] = sum_i [R(e_u, e_i) e_v]^i."""
    n = len(Rop)
    zero = Rop[0][0][0][0] if n else 0
    out = [[zero] * n for _ in range(n)]
    for u in range(n):
        for v in range(n):
            s = zero
            for i in range(n):
                x = Rop[u][i][i][v]
                if x:
                    s += x
            out[u][v] = s
    return out
