"""Numerically stable Pfaffian of complex skew-symmetric matrices.

The hot kernel (Parlett-Reid tridiagonalization with partial pivoting) exists
twice: a compiled Cython extension and a NumPy fallback with identical
semantics. The compiled one is selected at import when available;
``KERNEL_NAME`` records which is active. ``benchmarks/bench_pfaffian.py``
compares the two.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import NotSkew, OddDimension
from . import _reference

try:  # pragma: no cover - depends on the build environment
    from . import _kernel

    _pfaffian_ltl = _kernel.pfaffian_ltl
    KERNEL_NAME = "compiled"
except ImportError:  # pragma: no cover
    _pfaffian_ltl = _reference.pfaffian_ltl
    KERNEL_NAME = "python"

__all__ = [
    "SkewMatrix",
    "pfaffian",
    "pfaffian_sign_convention_check",
    "KERNEL_NAME",
]

SKEW_TOL = 1e-8


@dataclass(frozen=True)
class SkewMatrix:
    """Even-dimensional complex skew-symmetric matrix.

    Construction antisymmetrizes the input, (M - M^T)/2, and records the
    correction norm; a correction above 1e-8 (relative to the matrix scale)
    raises NotSkew.
    """

    entries: np.ndarray
    correction: float

    def __init__(self, entries: np.ndarray):
        m = np.asarray(entries, dtype=complex)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValueError(f"expected a square matrix, got shape {m.shape}")
        if m.shape[0] % 2 != 0:
            raise OddDimension(f"dimension must be even, got {m.shape[0]}")
        skew = 0.5 * (m - m.T)
        corr = float(np.linalg.norm(m - skew))
        scale = max(float(np.linalg.norm(skew)), 1.0)
        if corr > SKEW_TOL * scale:
            raise NotSkew(
                f"antisymmetrization correction {corr:.3e} exceeds "
                f"{SKEW_TOL:g} x scale {scale:.3e}"
            )
        object.__setattr__(self, "entries", skew)
        object.__setattr__(self, "correction", corr)

    @property
    def dim(self) -> int:
        return self.entries.shape[0]


def pfaffian(m: SkewMatrix | np.ndarray) -> complex:
    """Pfaffian via Parlett-Reid with partial pivoting.

    Accepts a SkewMatrix or a raw array (which is validated first). Satisfies
    pf(m)^2 = det(m) to relative 1e-8 and tracks the permutation sign exactly.
    Near-singular input returns the (tiny) computed value rather than raising:
    exponentially decaying correlators legitimately produce tiny Pfaffians.
    """
    if not isinstance(m, SkewMatrix):
        m = SkewMatrix(m)
    return _pfaffian_ltl(m.entries)


def pfaffian_sign_convention_check(
    m: SkewMatrix | np.ndarray, congruence: np.ndarray
) -> complex:
    """Residual of the congruence covariance pf(B m B^T) - det(B) pf(m).

    Zero (up to rounding) for any invertible B; used in randomized
    self-tests of the sign bookkeeping.
    """
    if not isinstance(m, SkewMatrix):
        m = SkewMatrix(m)
    B = np.asarray(congruence, dtype=complex)
    if B.shape != m.entries.shape:
        raise ValueError(f"congruence shape {B.shape} != matrix shape {m.entries.shape}")
    transformed = SkewMatrix(B @ m.entries @ B.T)
    return _pfaffian_ltl(transformed.entries) - np.linalg.det(B) * _pfaffian_ltl(m.entries)
