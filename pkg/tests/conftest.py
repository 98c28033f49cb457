"""Shared helpers: dense spin/Majorana operators and a brute-force Pfaffian."""

import numpy as np
import pytest

SX = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
SY = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex)
SZ = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)
SP = np.array([[0.0, 1.0], [0.0, 0.0]], dtype=complex)  # |down> -> |up>

# parameters with an exactly gapless momentum block (found by bisection on
# Im Jk at a grid momentum of N=8; omega ~ 1e-16 there)
GAPLESS_N = 8
GAPLESS_ALPHA = 0.7094094542892713
GAPLESS_H = -0.5457378602840354


@pytest.fixture
def rng():
    return np.random.default_rng(20240811)


def site_operator(N, ops):
    out = np.array([[1.0 + 0.0j]])
    for n in range(N):
        out = np.kron(out, ops.get(n, np.eye(2)))
    return out


def dense_majoranas(N):
    """A_l = c_l^+ + c_l and B_l = c_l^+ - c_l as dense matrices, with
    c_l = (prod_{m<l} sigma^z_m) sigma^+_l (so sigma^z = 1 - 2 c^+ c)."""
    A_ops, B_ops = [], []
    for n in range(N):
        ops = {m: SZ for m in range(n)}
        ops[n] = SP
        c = site_operator(N, ops)
        A_ops.append(c.conj().T + c)
        B_ops.append(c.conj().T - c)
    return A_ops, B_ops


def random_skew(rng, dim, complex_entries=True):
    x = rng.normal(size=(dim, dim))
    if complex_entries:
        x = x + 1j * rng.normal(size=(dim, dim))
    return x - x.T


def pfaffian_bruteforce(M):
    """Sum over perfect matchings with sign; O(n!!), fine for dim <= 10."""
    n = M.shape[0]
    if n % 2:
        return 0.0

    def rec(rem):
        if not rem:
            return 1.0 + 0.0j
        a = rem[0]
        total = 0.0 + 0.0j
        for idx in range(1, len(rem)):
            rest = rem[1:idx] + rem[idx + 1 :]
            total += (-1) ** (idx - 1) * M[a, rem[idx]] * rec(rest)
        return total

    return rec(list(range(n)))
