"""Dense even-parity reference for small chains.

Builds the full 2^N spin Hamiltonian with periodic strings, restricts to the
even-parity sector, and evolves by exact eigendecomposition. Every momentum-
space convention in this package is pinned against this module; it ships as a
library feature so users can re-verify on their own machine (CLI
``oracle-check``).

Basis: site 0 is the most significant qubit; bit value 0 is sigma^z = +1.
Parity P = prod sigma^z; the free-fermion pipeline lives in the P = +1 sector.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .blocks import ground_state, evolve, total_energy, magnetization_z
from .correlators import CorrelatorSet, contraction_table, correlator_set
from .errors import TooLarge
from .model import ModelParams, QuenchProtocol, coupling
from .observables import TwoSiteState, assemble_two_site, mutual_information

__all__ = [
    "DenseState",
    "build_dense_hamiltonian",
    "parity_vector",
    "dense_ground_state",
    "dense_evolve",
    "dense_observables",
    "dense_loschmidt_rate",
    "OracleComparison",
    "compare_with_dense",
]

MAX_DENSE_N = 12

_SX = np.array([[0.0, 1.0], [1.0, 0.0]])
_SY = np.array([[0.0, -1.0j], [1.0j, 0.0]])
_SZ = np.array([[1.0, 0.0], [0.0, -1.0]])
_PAULI = {"x": _SX, "y": _SY, "z": _SZ}


@dataclass(frozen=True)
class DenseState:
    """Normalized 2^N state vector in the full Hilbert space."""

    N: int
    vector: np.ndarray
    t: float = 0.0


def _site_operator(N: int, ops: dict[int, np.ndarray]) -> np.ndarray:
    out = np.array([[1.0 + 0.0j]])
    for n in range(N):
        out = np.kron(out, ops.get(n, np.eye(2)))
    return out


def build_dense_hamiltonian(params: ModelParams) -> np.ndarray:
    """Full 2^N x 2^N Hamiltonian: transverse field plus string couplings
    sigma^x_i [prod sigma^z] sigma^x_{i+R} with periodic wrap, R <= N/2."""
    N = params.N
    if N > MAX_DENSE_N:
        raise TooLarge(f"dense reference limited to N <= {MAX_DENSE_N}, got {N}")
    dim = 2**N
    H = np.zeros((dim, dim), dtype=complex)
    for i in range(N):
        H += (params.h / 2.0) * _site_operator(N, {i: _SZ})
    for R in range(1, N // 2 + 1):
        J = coupling(R, params)
        for i in range(N):
            ops = {i % N: _SX, (i + R) % N: _SX}
            for j in range(i + 1, i + R):
                ops[j % N] = _SZ
            H += J * _site_operator(N, ops)
    return H


def parity_vector(N: int) -> np.ndarray:
    """Diagonal of prod_n sigma^z_n: (-1)^(number of down spins)."""
    bits = np.arange(2**N)
    pops = np.array([bin(s).count("1") for s in bits])
    return np.where(pops % 2 == 0, 1.0, -1.0)


def _even_indices(N: int) -> np.ndarray:
    return np.where(parity_vector(N) > 0)[0]


def dense_ground_state(params: ModelParams) -> tuple[DenseState, float]:
    """Even-sector ground state (embedded in the full space) and its energy."""
    H = build_dense_hamiltonian(params)
    ev = _even_indices(params.N)
    w, v = np.linalg.eigh(H[np.ix_(ev, ev)])
    vec = np.zeros(2**params.N, dtype=complex)
    vec[ev] = v[:, 0]
    return DenseState(N=params.N, vector=vec), float(w[0])


def dense_evolve(state: DenseState, params: ModelParams, t: float) -> DenseState:
    """Exact evolution by eigendecomposition (no integrator error)."""
    if params.N != state.N:
        raise ValueError("size mismatch")
    H = build_dense_hamiltonian(params)
    ev = _even_indices(params.N)
    w, v = np.linalg.eigh(H[np.ix_(ev, ev)])
    amp = v @ (np.exp(-1j * w * t) * (v.conj().T @ state.vector[ev]))
    vec = np.zeros_like(state.vector)
    vec[ev] = amp
    return DenseState(N=state.N, vector=vec, t=state.t + t)


def _expect(state: DenseState, op: np.ndarray) -> complex:
    return complex(state.vector.conj() @ op @ state.vector)


def dense_observables(state: DenseState, i: int, R: int) -> tuple[CorrelatorSet, TwoSiteState]:
    """Magnetization, the five correlators at (i, i+R), and the two-site
    reduced matrix by partial trace. Ground truth for the pipeline tests."""
    N = state.N
    if not (0 <= i < N) or not (1 <= R <= N - 1):
        raise IndexError(f"invalid site/distance ({i}, {R}) for N={N}")
    j = (i + R) % N
    m_z = _expect(state, _site_operator(N, {i: _SZ})).real

    def corr(a: str, b: str) -> complex:
        return _expect(state, _site_operator(N, {i: _PAULI[a], j: _PAULI[b]}))

    vals = {ab: corr(*ab) for ab in ("xx", "yy", "zz", "xy", "yx")}
    cs = CorrelatorSet(
        R=R,
        t=state.t,
        m_z=m_z,
        c_xx=vals["xx"].real,
        c_yy=vals["yy"].real,
        c_zz=vals["zz"].real,
        c_xy=vals["xy"].real,
        c_yx=vals["yx"].real,
        imag_residual=max(abs(v.imag) for v in vals.values()),
    )
    # partial trace onto (i, j)
    psi = state.vector.reshape([2] * N)
    perm = [i, j] + [n for n in range(N) if n not in (i, j)]
    psi = np.transpose(psi, perm).reshape(4, -1)
    rho = psi @ psi.conj().T
    return cs, TwoSiteState(R=R, t=state.t, rho=rho)


def dense_loschmidt_rate(protocol: QuenchProtocol) -> np.ndarray:
    """Rate function from the exact overlap in the even sector."""
    N = protocol.initial.N
    psi0, _ = dense_ground_state(protocol.initial)
    H = build_dense_hamiltonian(protocol.final)
    ev = _even_indices(N)
    w, v = np.linalg.eigh(H[np.ix_(ev, ev)])
    c = v.conj().T @ psi0.vector[ev]
    out = []
    for t in protocol.time_grid:
        amp = np.sum(np.abs(c) ** 2 * np.exp(-1j * w * t))
        out.append(-np.log(max(abs(amp) ** 2, 1e-300)) / N)
    return np.column_stack([protocol.time_grid, np.array(out)])


@dataclass(frozen=True)
class OracleComparison:
    """Worst absolute deviations between the pipeline and the dense
    reference over one parameter draw."""

    params_initial: ModelParams
    params_final: ModelParams
    times: tuple[float, ...]
    energy_dev: float
    mz_dev: float
    correlator_dev: float
    mutual_information_dev: float
    rate_dev: float

    @property
    def max_dev(self) -> float:
        return max(
            self.energy_dev,
            self.mz_dev,
            self.correlator_dev,
            self.mutual_information_dev,
            self.rate_dev,
        )


def compare_with_dense(
    initial: ModelParams,
    final: ModelParams,
    times=(0.0, 0.5, 1.0, 5.0),
) -> OracleComparison:
    """Run the full pipeline and the dense reference through one quench and
    collect worst-case deviations (energy, magnetization, all correlators at
    every distance, total correlation, rate function)."""
    N = initial.N
    # ground state + energy
    gs = ground_state(initial)
    dense_gs, e_dense = dense_ground_state(initial)
    energy_dev = abs(total_energy(gs) - e_dense)

    mz_dev = 0.0
    corr_dev = 0.0
    mi_dev = 0.0
    for t in times:
        state = evolve(gs, final, t) if t > 0 else gs
        dstate = dense_evolve(dense_gs, final, t) if t > 0 else dense_gs
        mz_dev = max(mz_dev, abs(magnetization_z(state) - _dense_mz(dstate)))
        table = contraction_table(state, N // 2 - 1)
        for R in range(1, N // 2):
            cs = correlator_set(state, R, table)
            cs_d, ts_d = dense_observables(dstate, 0, R)
            corr_dev = max(
                corr_dev,
                abs(cs.m_z - cs_d.m_z),
                abs(cs.c_xx - cs_d.c_xx),
                abs(cs.c_yy - cs_d.c_yy),
                abs(cs.c_zz - cs_d.c_zz),
                abs(cs.c_xy - cs_d.c_xy),
                abs(cs.c_yx - cs_d.c_yx),
            )
            mi_dev = max(
                mi_dev,
                abs(
                    mutual_information(assemble_two_site(cs))
                    - mutual_information(ts_d)
                ),
            )
    protocol = QuenchProtocol(initial, final, np.array([0.0] + [t for t in times if t > 0]))
    from .loschmidt import loschmidt_rate  # local import avoids a cycle

    rate_dev = float(
        np.max(np.abs(loschmidt_rate(protocol)[:, 1] - dense_loschmidt_rate(protocol)[:, 1]))
    )
    return OracleComparison(
        params_initial=initial,
        params_final=final,
        times=tuple(times),
        energy_dev=float(energy_dev),
        mz_dev=float(mz_dev),
        correlator_dev=float(corr_dev),
        mutual_information_dev=float(mi_dev),
        rate_dev=rate_dev,
    )


def _dense_mz(state: DenseState) -> float:
    vals = [
        _expect(state, _site_operator(state.N, {i: _SZ})).real for i in range(state.N)
    ]
    return float(np.mean(vals))
