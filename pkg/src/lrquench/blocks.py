"""Momentum-block construction, ground state, time evolution, expectations.

The even-parity sector factorizes into independent (k, -k) blocks. Each block
lives in the 4-dimensional Fock space ordered as

    { |0>,  c_k^+ c_{-k}^+ |0>,  c_k^+ |0>,  c_{-k}^+ |0> }

i.e. the parity-even pair states first, the decoupled single-particle states
last. All matrices in this module use that ordering.

Two closely related matrices appear: ``block_hamiltonian`` returns the block
matrix in the sign convention whose pair-sector eigenvalues are -2Re(Jk)-+omega;
the evolution generator of the spin chain is its negative (docs/CONVENTIONS.md
records the resolution against the dense even-parity reference, which pins the
magnetization sign).
Their ground-state energies coincide because sum_k Re(Jk) vanishes identically
on the half-integer grid.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DegenerateBlock
from .model import ModelParams, MomentumGrid, jk_coupling

__all__ = [
    "BlockHamiltonian",
    "BlockState",
    "ManyBodyState",
    "block_hamiltonian",
    "block_matrices",
    "evolution_generators",
    "ground_state",
    "evolve",
    "expectation",
    "total_energy",
    "magnetization_z",
    "aa_operator",
    "bb_operator",
    "ab_operator",
    "sigma_z_operator",
]

DEGENERACY_TOL = 1e-12


@dataclass(frozen=True)
class BlockHamiltonian:
    """4x4 Hermitian block matrix at momentum k."""

    k: float
    matrix: np.ndarray


@dataclass(frozen=True)
class BlockState:
    """4x4 density matrix of one momentum block."""

    k: float
    rho: np.ndarray


@dataclass
class ManyBodyState:
    """Product state over all N/2 momentum blocks.

    Attributes
    ----------
    grid : MomentumGrid
        Positive momenta, ascending.
    rhos : np.ndarray
        Stacked block density matrices, shape (N/2, 4, 4).
    params : ModelParams
        Hamiltonian currently governing the evolution.
    t : float
        Time since the quench (units of 1/J).
    """

    grid: MomentumGrid
    rhos: np.ndarray
    params: ModelParams
    t: float = 0.0

    @property
    def N(self) -> int:
        return self.grid.N

    @property
    def blocks(self) -> list[BlockState]:
        return [BlockState(k, rho) for k, rho in zip(self.grid.momenta, self.rhos)]


def block_matrices(params: ModelParams, grid: MomentumGrid | None = None) -> np.ndarray:
    """Stacked block matrices, shape (N/2, 4, 4).

    Top-left 2x2 (pair sector):      [[-h, 2 Im Jk], [2 Im Jk, -4 Re Jk + h]]
    Bottom-right 2x2 (single):       diag(-2 Re Jk, -2 Re Jk)
    """
    grid = grid or MomentumGrid(params.N)
    Jk = jk_coupling(grid.momenta, params)
    re, im = Jk.real, Jk.imag
    n = len(grid)
    H = np.zeros((n, 4, 4), dtype=complex)
    H[:, 0, 0] = -params.h
    H[:, 0, 1] = H[:, 1, 0] = 2.0 * im
    H[:, 1, 1] = -4.0 * re + params.h
    H[:, 2, 2] = H[:, 3, 3] = -2.0 * re
    return H


def block_hamiltonian(k: float, params: ModelParams) -> BlockHamiltonian:
    """Single block matrix at momentum k; pair-sector eigenvalues are
    -2 Re(Jk) -+ omega_k."""
    Jk = jk_coupling(k, params)
    re, im = Jk.real, Jk.imag
    m = np.array(
        [
            [-params.h, 2.0 * im, 0.0, 0.0],
            [2.0 * im, -4.0 * re + params.h, 0.0, 0.0],
            [0.0, 0.0, -2.0 * re, 0.0],
            [0.0, 0.0, 0.0, -2.0 * re],
        ],
        dtype=complex,
    )
    return BlockHamiltonian(k, m)


def evolution_generators(params: ModelParams, grid: MomentumGrid | None = None) -> np.ndarray:
    """Block generators of the spin-chain dynamics: the negative of
    ``block_matrices``. Validated against the dense even-parity reference
    (magnetization sign and quench dynamics single out this sign)."""
    return -block_matrices(params, grid)


def ground_state(params: ModelParams) -> ManyBodyState:
    """Zero-temperature state: per block, the rank-1 projector onto the
    lowest eigenvector of the evolution generator.

    Raises
    ------
    DegenerateBlock
        If the two lowest eigenvalues of any block are closer than 1e-12
        (exact level crossing; the projector is ill-defined).
    """
    grid = MomentumGrid(params.N)
    gen = evolution_generators(params, grid)
    w, v = np.linalg.eigh(gen)
    gaps = w[:, 1] - w[:, 0]
    if np.any(gaps < DEGENERACY_TOL):
        k_bad = grid.momenta[int(np.argmin(gaps))]
        raise DegenerateBlock(
            f"level crossing at k={k_bad:.6f} (gap {gaps.min():.2e}); "
            "perturb the parameters"
        )
    g = v[:, :, 0]
    rhos = np.einsum("ki,kj->kij", g, g.conj())
    return ManyBodyState(grid=grid, rhos=rhos, params=params, t=0.0)


def evolve(state: ManyBodyState, final_params: ModelParams, t: float) -> ManyBodyState:
    """Conjugate every block by exp(-i G_k t) with G_k the generator of
    `final_params`. Returns a new state at time state.t + t."""
    if final_params.N != state.N:
        raise ValueError(f"size mismatch: state N={state.N}, params N={final_params.N}")
    if t == 0.0 and final_params == state.params:
        return ManyBodyState(state.grid, state.rhos.copy(), final_params, state.t)
    gen = evolution_generators(final_params, state.grid)
    w, v = np.linalg.eigh(gen)
    phases = np.exp(-1j * w * t)
    U = np.einsum("kij,kj,klj->kil", v, phases, v.conj())
    rhos = np.einsum("kij,kjl,kml->kim", U, state.rhos, U.conj())
    return ManyBodyState(state.grid, rhos, final_params, state.t + t)


def expectation(state: ManyBodyState, op_blocks: np.ndarray) -> complex:
    """Sum of per-block traces, sum_k Tr(rho_k O_k).

    `op_blocks` is a stacked (N/2, 4, 4) array (a list of 4x4 matrices is
    accepted). The imaginary part is returned for diagnostics; it should be
    below 1e-10 for Hermitian operators.
    """
    ops = np.asarray(op_blocks, dtype=complex)
    if ops.shape != (len(state.grid), 4, 4):
        raise ValueError(
            f"expected {len(state.grid)} blocks of shape 4x4, got {ops.shape}"
        )
    return complex(np.einsum("kij,kji->", state.rhos, ops))


def total_energy(state: ManyBodyState, params: ModelParams | None = None) -> float:
    """Energy under the generator of `params` (defaults to the state's own)."""
    gen = evolution_generators(params or state.params, state.grid)
    return expectation(state, gen).real


# ---------------------------------------------------------------------------
# momentum-space operator matrices for the Majorana contractions
#
# With A_l = c_l^+ + c_l and B_l = c_l^+ - c_l, the two-point functions are
# block sums <X_l Y_{l+r}> = (2/N) sum_k Tr(rho_k M(k, r)). The matrices below
# are exact, including the cos(kr)*identity parts whose k-sums cancel for
# r != 0 but fix the equal-site values (AA(0)=1, BB(0)=-1, AB(0)=<sigma^z>).
# ---------------------------------------------------------------------------


def aa_operator(grid: MomentumGrid, r: int) -> np.ndarray:
    """Blocks of A_l A_{l+r} (without the 2/N prefactor)."""
    k = grid.momenta
    c, s = np.cos(k * r), np.sin(k * r)
    M = np.zeros((len(grid), 4, 4), dtype=complex)
    M[:, 0, 0] = c
    M[:, 0, 1] = s
    M[:, 1, 0] = -s
    M[:, 1, 1] = c
    M[:, 2, 2] = c + 1j * s
    M[:, 3, 3] = c - 1j * s
    return M


def bb_operator(grid: MomentumGrid, r: int) -> np.ndarray:
    """Blocks of B_l B_{l+r} (without the 2/N prefactor)."""
    k = grid.momenta
    c, s = np.cos(k * r), np.sin(k * r)
    M = np.zeros((len(grid), 4, 4), dtype=complex)
    M[:, 0, 0] = -c
    M[:, 0, 1] = s
    M[:, 1, 0] = -s
    M[:, 1, 1] = -c
    M[:, 2, 2] = -(c + 1j * s)
    M[:, 3, 3] = -(c - 1j * s)
    return M


def ab_operator(grid: MomentumGrid, r: int) -> np.ndarray:
    """Blocks of A_l B_{l+r} (without the 2/N prefactor)."""
    k = grid.momenta
    c, s = np.cos(k * r), np.sin(k * r)
    M = np.zeros((len(grid), 4, 4), dtype=complex)
    M[:, 0, 0] = c
    M[:, 0, 1] = -s
    M[:, 1, 0] = -s
    M[:, 1, 1] = -c
    return M


def sigma_z_operator(grid: MomentumGrid) -> np.ndarray:
    """Blocks of the single-site transverse magnetization, diag(1, -1, 0, 0)
    per block (without the 2/N prefactor)."""
    M = np.zeros((len(grid), 4, 4), dtype=complex)
    M[:, 0, 0] = 1.0
    M[:, 1, 1] = -1.0
    return M


def magnetization_z(state: ManyBodyState) -> float:
    """Transverse magnetization per site, (2/N) sum_k Tr(rho_k sigma_z^k)."""
    val = expectation(state, sigma_z_operator(state.grid))
    return (2.0 / state.N) * val.real
