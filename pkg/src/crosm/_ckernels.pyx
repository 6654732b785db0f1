# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled tensor kernels.

Float inputs run through typed double loops.  Exact (Fraction) inputs are
delegated to crosm._kernels_py, since compiled loops over Python objects gain
little.  The interface and results match crosm._kernels_py.
"""
import numpy as np

from . import _kernels_py as _py

BACKEND = "cython"


cdef bint _is_float(x):
    return type(x) is float


def _nested(arr):
    return arr.tolist()


# --- typed float kernels ------------------------------------------------------

cdef void _connection_f(double[:, :, ::1] C, double[:, ::1] G, double[:, ::1] Ginv,
                        double[:, :, ::1] K, double[:, :, ::1] U, double[:, :, ::1] A) noexcept nogil:
    cdef Py_ssize_t n = G.shape[0]
    cdef Py_ssize_t w, u, v, k, r
    cdef double c, s
    for w in range(n):
        for u in range(n):
            for v in range(n):
                K[w, u, v] = 0.0
            for k in range(n):
                c = C[w, u, k]
                if c != 0.0:
                    for v in range(n):
                        K[w, u, v] += c * G[k, v]
    for u in range(n):
        for v in range(u, n):
            for r in range(n):
                s = 0.0
                for w in range(n):
                    s += Ginv[r, w] * (K[w, u, v] + K[w, v, u])
                U[u, v, r] = 0.5 * s
                U[v, u, r] = 0.5 * s
    for u in range(n):
        for v in range(n):
            for r in range(n):
                A[u, v, r] = 0.5 * C[u, v, r] + U[u, v, r]


cdef void _curvature_f(double[:, :, ::1] C, double[:, :, ::1] H, double[:, :, ::1] adh,
                       double[:, :, ::1] Al, double[:, :, :, ::1] R) noexcept nogil:
    cdef Py_ssize_t n = C.shape[0]
    cdef Py_ssize_t nh = adh.shape[0]
    cdef Py_ssize_t a, b, w, k, r, c, i
    cdef double s, x
    for a in range(n):
        for b in range(a + 1, n):
            for r in range(n):
                for c in range(n):
                    R[a, b, r, c] = 0.0
            for w in range(nh):
                s = H[a, b, w]
                if s != 0.0:
                    for r in range(n):
                        for c in range(n):
                            R[a, b, r, c] += s * adh[w, r, c]
            for k in range(n):
                s = C[a, b, k]
                if s != 0.0:
                    for r in range(n):
                        for c in range(n):
                            R[a, b, r, c] += s * Al[k, r, c]
            for r in range(n):
                for i in range(n):
                    x = Al[b, r, i]
                    if x != 0.0:
                        for c in range(n):
                            R[a, b, r, c] += x * Al[a, i, c]
                    x = Al[a, r, i]
                    if x != 0.0:
                        for c in range(n):
                            R[a, b, r, c] -= x * Al[b, i, c]
            for r in range(n):
                for c in range(n):
                    R[b, a, r, c] = -R[a, b, r, c]
        for r in range(n):
            for c in range(n):
                R[a, a, r, c] = 0.0


cdef void _lower_f(double[:, :, :, ::1] R, double[:, ::1] G, double[:, :, :, ::1] out) noexcept nogil:
    cdef Py_ssize_t n = G.shape[0]
    cdef Py_ssize_t a, b, c, d, e
    cdef double s
    for a in range(n):
        for b in range(n):
            for c in range(n):
                for d in range(n):
                    s = 0.0
                    for e in range(n):
                        s += R[a, b, e, c] * G[e, d]
                    out[a, b, c, d] = s


cdef void _ricci_f(double[:, :, :, ::1] R, double[:, ::1] out) noexcept nogil:
    cdef Py_ssize_t n = R.shape[0]
    cdef Py_ssize_t u, v, i
    cdef double s
    for u in range(n):
        for v in range(n):
            s = 0.0
            for i in range(n):
                s += R[u, i, i, v]
            out[u, v] = s


# --- public interface ---------------------------------------------------------

def connection(C, G, Ginv, half):
    if not _is_float(half):
        return _py.connection(C, G, Ginv, half)
    n = len(G)
    Ca = np.ascontiguousarray(C, dtype=np.float64)
    Ga = np.ascontiguousarray(G, dtype=np.float64)
    Gi = np.ascontiguousarray(Ginv, dtype=np.float64)
    K = np.zeros((n, n, n))
    U = np.zeros((n, n, n))
    A = np.zeros((n, n, n))
    if n:
        _connection_f(Ca, Ga, Gi, K, U, A)
    return _nested(U), _nested(A)


def curvature_ops(C, H, adh, alpha):
    n = len(C)
    if n == 0 or not _is_float(alpha[0][0][0]):
        return _py.curvature_ops(C, H, adh, alpha)
    nh = len(adh)
    Ca = np.ascontiguousarray(C, dtype=np.float64)
    Ha = np.ascontiguousarray(H, dtype=np.float64).reshape(n, n, nh)
    Aa = np.ascontiguousarray(adh, dtype=np.float64).reshape(nh, n, n)
    Al = np.ascontiguousarray(np.transpose(np.asarray(alpha, dtype=np.float64), (0, 2, 1)))
    R = np.zeros((n, n, n, n))
    _curvature_f(Ca, Ha, Aa, Al, R)
    return _nested(R)


def lower(Rop, G):
    n = len(G)
    if n == 0 or not _is_float(G[0][0]):
        return _py.lower(Rop, G)
    Ra = np.ascontiguousarray(Rop, dtype=np.float64)
    Ga = np.ascontiguousarray(G, dtype=np.float64)
    out = np.zeros((n, n, n, n))
    _lower_f(Ra, Ga, out)
    return _nested(out)


def ricci(Rop):
    n = len(Rop)
    if n == 0 or not _is_float(Rop[0][0][0][0]):
        return _py.ricci(Rop)
    Ra = np.ascontiguousarray(Rop, dtype=np.float64)
    out = np.zeros((n, n))
    _ricci_f(Ra, out)
    return _nested(out)
