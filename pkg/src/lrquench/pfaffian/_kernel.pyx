# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled Parlett-Reid Pfaffian kernel (complex128, partial pivoting)."""

import numpy as np

cimport numpy as cnp

cnp.import_array()


def pfaffian_ltl(a):
    """Pfaffian of an even-dimensional complex skew-symmetric matrix.

    Same semantics as the NumPy fallback: skew-symmetric tridiagonalization
    with partial pivoting, permutation parity folded into the result.
    """
    cdef cnp.ndarray[cnp.complex128_t, ndim=2] A = np.array(
        a, dtype=np.complex128, order="C", copy=True)
    cdef Py_ssize_t n = A.shape[0]
    if n == 0:
        return 1.0 + 0.0j
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] tau_buf = np.empty(
        n, dtype=np.complex128)
    cdef double complex[:, :] M = A
    cdef double complex[:] tau = tau_buf
    cdef double complex pf = 1.0
    cdef double complex pivot, ti, ci, tmp
    cdef double best, mag
    cdef Py_ssize_t k, kp, i, j

    for k in range(0, n - 1, 2):
        # partial pivot on column k (1-norm of the complex entry)
        kp = k + 1
        best = abs(M[k + 1, k].real) + abs(M[k + 1, k].imag)
        for i in range(k + 2, n):
            mag = abs(M[i, k].real) + abs(M[i, k].imag)
            if mag > best:
                best = mag
                kp = i
        if kp != k + 1:
            for j in range(k, n):
                tmp = M[k + 1, j]
                M[k + 1, j] = M[kp, j]
                M[kp, j] = tmp
            for i in range(k, n):
                tmp = M[i, k + 1]
                M[i, k + 1] = M[i, kp]
                M[i, kp] = tmp
            pf = -pf
        pivot = M[k, k + 1]
        if pivot == 0.0:
            return 0.0 + 0.0j
        pf = pf * pivot
        if k + 2 < n:
            for j in range(k + 2, n):
                tau[j] = M[k, j] / pivot
            # skew rank-2 update: M[i,j] += tau[i]*M[j,k+1] - M[i,k+1]*tau[j]
            for i in range(k + 2, n):
                ti = tau[i]
                ci = M[i, k + 1]
                if ti == 0.0 and ci == 0.0:
                    continue
                for j in range(k + 2, n):
                    M[i, j] = M[i, j] + ti * M[j, k + 1] - ci * tau[j]
    return complex(pf)
