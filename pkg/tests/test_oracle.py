import numpy as np
import pytest

from conftest import SX, SZ, site_operator
from lrquench.errors import TooLarge
from lrquench.model import ModelParams
from lrquench.observables import mutual_information
from lrquench.oracle import (
    DenseState,
    build_dense_hamiltonian,
    compare_with_dense,
    dense_ground_state,
    dense_observables,
    parity_vector,
)


def reference_hamiltonian_n4(h, alpha):
    """Independent construction at N=4 (explicit operator enumeration)."""
    A = 1.0 + 2.0 ** (-alpha)
    J1, J2 = 1.0 / A, 2.0 ** (-alpha) / A
    H = np.zeros((16, 16), dtype=complex)
    for i in range(4):
        H += (h / 2) * site_operator(4, {i: SZ})
    # R = 1: sigma^x_i sigma^x_{i+1}
    for i in range(4):
        H += J1 * site_operator(4, {i: SX, (i + 1) % 4: SX})
    # R = 2: sigma^x_i sigma^z_{i+1} sigma^x_{i+2}
    for i in range(4):
        H += J2 * site_operator(4, {i: SX, (i + 1) % 4: SZ, (i + 2) % 4: SX})
    return H


def test_dense_hamiltonian_matches_independent_construction():
    p = ModelParams(N=4, h=0.8, alpha=1.7)
    assert np.max(np.abs(build_dense_hamiltonian(p) - reference_hamiltonian_n4(0.8, 1.7))) < 1e-14


def test_commutes_with_parity(rng):
    for _ in range(5):
        p = ModelParams(N=6, h=float(rng.uniform(0, 3)), alpha=float(rng.uniform(0.3, 5)))
        H = build_dense_hamiltonian(p)
        P = np.diag(parity_vector(6))
        assert np.max(np.abs(H @ P - P @ H)) < 1e-12


def test_hermitian():
    H = build_dense_hamiltonian(ModelParams(N=6, h=1.1, alpha=0.9))
    assert np.max(np.abs(H - H.conj().T)) < 1e-12


def test_too_large_rejected():
    with pytest.raises(TooLarge):
        build_dense_hamiltonian(ModelParams(N=14, h=1.0, alpha=1.0))


def test_all_up_product_state_observables():
    N = 4
    vec = np.zeros(2**N, dtype=complex)
    vec[0] = 1.0  # all spins up (sigma^z = +1)
    state = DenseState(N=N, vector=vec)
    cs, ts = dense_observables(state, 0, 1)
    assert cs.m_z == pytest.approx(1.0, abs=1e-14)
    assert cs.c_zz == pytest.approx(1.0, abs=1e-14)  # product: <zz> = mz^2
    for attr in ("c_xx", "c_yy", "c_xy", "c_yx"):
        assert abs(getattr(cs, attr)) < 1e-14
    assert mutual_information(ts) == pytest.approx(0.0, abs=1e-12)


def test_embedded_singlet_mutual_information():
    N = 4
    up, down = 0, 1
    vec = np.zeros(2**N, dtype=complex)

    def basis_index(bits):
        idx = 0
        for b in bits:
            idx = (idx << 1) | b
        return idx

    # (|ud> - |du>)/sqrt2 on sites (1, 2), up elsewhere
    vec[basis_index([up, up, down, up])] = 1 / np.sqrt(2)
    vec[basis_index([up, down, up, up])] = -1 / np.sqrt(2)
    state = DenseState(N=N, vector=vec)
    _, ts = dense_observables(state, 1, 1)
    assert mutual_information(ts) == pytest.approx(2.0, abs=1e-12)


def test_ground_state_even_sector_and_normalized():
    p = ModelParams(N=8, h=0.5, alpha=3.0)
    state, energy = dense_ground_state(p)
    assert abs(np.linalg.norm(state.vector) - 1.0) < 1e-12
    parity = parity_vector(8)
    assert np.all(np.abs(state.vector[parity < 0]) < 1e-14)
    assert energy < 0


@pytest.mark.parametrize("N", [4, 6])
def test_pipeline_matches_dense_small_sample(rng, N):
    for _ in range(3):
        initial = ModelParams(N=N, h=float(rng.uniform(0.2, 3)),
                              alpha=float(rng.uniform(0.3, 5)))
        final = ModelParams(N=N, h=float(rng.uniform(0.2, 3)),
                            alpha=float(rng.uniform(0.3, 5)))
        cmp = compare_with_dense(initial, final, times=(0.0, 0.7, 2.3))
        assert cmp.max_dev < 1e-7, cmp
