"""Pure-NumPy Parlett-Reid Pfaffian (fallback kernel).

Skew-symmetric tridiagonalization by outer-product updates with partial
pivoting; the permutation parity is folded into the running product, so the
sign of the Pfaffian is exact up to rounding.
"""

from __future__ import annotations

import numpy as np


def pfaffian_ltl(a: np.ndarray) -> complex:
    """Pfaffian of an even-dimensional complex skew-symmetric matrix.

    The caller is responsible for checking skew-symmetry; this kernel only
    reads the strictly lower/upper structure it updates.
    """
    A = np.array(a, dtype=complex, order="C", copy=True)
    n = A.shape[0]
    if n == 0:
        return 1.0 + 0.0j
    pf = 1.0 + 0.0j
    for k in range(0, n - 1, 2):
        # pivot: bring the largest entry of column k below the diagonal
        kp = k + 1 + int(np.argmax(np.abs(A[k + 1 :, k])))
        if kp != k + 1:
            A[[k + 1, kp], k:] = A[[kp, k + 1], k:]
            A[k:, [k + 1, kp]] = A[k:, [kp, k + 1]]
            pf = -pf
        pivot = A[k, k + 1]
        if pivot == 0.0:
            return 0.0 + 0.0j
        pf *= pivot
        if k + 2 < n:
            tau = A[k, k + 2 :] / pivot
            col = A[k + 2 :, k + 1]
            A[k + 2 :, k + 2 :] += np.outer(tau, col)
            A[k + 2 :, k + 2 :] -= np.outer(col, tau)
    return complex(pf)
