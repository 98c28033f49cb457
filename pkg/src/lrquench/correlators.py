"""Two-point spin correlators from Majorana contractions via Pfaffians.

Every spin correlator at distance R reduces to the expectation of a string of
2R Majorana operators drawn from A_l = c_l^+ + c_l and B_l = c_l^+ - c_l.
Wick's theorem turns that into the Pfaffian of the antisymmetric matrix of
pairwise contractions; the contractions themselves are momentum-block sums
computed once per state and shared across all distances.

Matrix ordering: the production path groups the A operators first and the B
operators second ("grouped" order below), which makes the scalar prefactors
c(R) and s(R) purely sign/phase factors. The interleaved ("natural") order in
which the operators actually occur in the string carries prefactors (1, -1,
i, i); both orders are implemented and agree by the Pfaffian congruence rule
(tested). All index conventions and prefactor signs are fixed against the
dense even-parity reference at small N; see docs/CONVENTIONS.md.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .blocks import (
    ManyBodyState,
    aa_operator,
    ab_operator,
    bb_operator,
    expectation,
)
from .pfaffian import SkewMatrix, pfaffian

__all__ = [
    "ContractionTable",
    "CorrelatorSet",
    "contraction_table",
    "build_pfaffian_matrix",
    "pfaffian_prefactor",
    "correlator_set",
    "toeplitz_correlator_set",
]

KINDS = ("xx", "yy", "xy", "yx")


@dataclass(frozen=True)
class ContractionTable:
    """Majorana two-point functions of one state at fixed time.

    Arrays are indexed by separation r in [-R_max, R_max] via offset R_max:
    ``aa[r + R_max]`` is <A_l A_{l+r}>, and likewise ``bb``, ``ab``. The
    equal-site values are exact: aa(0) = 1, bb(0) = -1, ab(0) = <sigma^z>.
    """

    R_max: int
    t: float
    aa: np.ndarray
    bb: np.ndarray
    ab: np.ndarray

    def aa_at(self, r: int) -> complex:
        return self.aa[r + self.R_max]

    def bb_at(self, r: int) -> complex:
        return self.bb[r + self.R_max]

    def ab_at(self, r: int) -> complex:
        return self.ab[r + self.R_max]

    def ba_at(self, r: int) -> complex:
        # B_a A_b = -A_b B_a exactly ({A, B} = 0 on every site pair)
        return -self.ab[-r + self.R_max]

    @property
    def m_z(self) -> float:
        return float(self.ab_at(0).real)


def contraction_table(state: ManyBodyState, R_max: int) -> ContractionTable:
    """Evaluate all contractions for separations |r| <= R_max.

    Each entry is the (2/N)-normalized block sum of the momentum-space
    operator matrices, evaluated through ``expectation``.
    """
    if not 0 <= R_max <= state.N // 2:
        raise ValueError(f"R_max must lie in [0, {state.N // 2}], got {R_max}")
    grid = state.grid
    norm = 2.0 / state.N
    rs = range(-R_max, R_max + 1)
    aa = np.array([norm * expectation(state, aa_operator(grid, r)) for r in rs])
    bb = np.array([norm * expectation(state, bb_operator(grid, r)) for r in rs])
    ab = np.array([norm * expectation(state, ab_operator(grid, r)) for r in rs])
    return ContractionTable(R_max=R_max, t=state.t, aa=aa, bb=bb, ab=ab)


@dataclass(frozen=True)
class CorrelatorSet:
    """Transverse magnetization and the five non-vanishing correlators at
    distance R. The remaining Pauli pairs carry an odd number of fermion
    operators and vanish identically; they are asserted in tests, not stored.
    ``imag_residual`` is the largest imaginary part discarded when taking the
    real values (diagnostic, < 1e-8 for healthy states)."""

    R: int
    t: float
    m_z: float
    c_xx: float
    c_yy: float
    c_zz: float
    c_xy: float
    c_yx: float
    imag_residual: float = 0.0


# ---------------------------------------------------------------------------
# operator lists
#
# The spin strings reduce to (sites relative to l, omitting the shared
# A_m B_m pairs at the interior sites m = l+1 .. l+R-1):
#   xx:  B_l  [pairs]  A_{l+R}          yy:  A_l  [pairs]  B_{l+R}
#   xy:  B_l  [pairs]  B_{l+R}          yx:  A_l  [pairs]  A_{l+R}
# ---------------------------------------------------------------------------

_A, _B = 0, 1


def _natural_ops(kind: str, R: int) -> tuple[np.ndarray, np.ndarray]:
    first = {"xx": _B, "yy": _A, "xy": _B, "yx": _A}[kind]
    last = {"xx": _A, "yy": _B, "xy": _B, "yx": _A}[kind]
    types = [first]
    sites = [0]
    for m in range(1, R):
        types += [_A, _B]
        sites += [m, m]
    types.append(last)
    sites.append(R)
    return np.array(types), np.array(sites)


def _grouped_ops(kind: str, R: int) -> tuple[np.ndarray, np.ndarray]:
    a_sites = {
        "xx": range(1, R + 1),
        "yy": range(0, R),
        "xy": range(1, R),
        "yx": range(0, R + 1),
    }[kind]
    b_sites = {
        "xx": range(0, R),
        "yy": range(1, R + 1),
        "xy": range(0, R + 1),
        "yx": range(1, R),
    }[kind]
    types = [_A] * len(a_sites) + [_B] * len(b_sites)
    sites = list(a_sites) + list(b_sites)
    return np.array(types), np.array(sites)


def _contraction_matrix(
    types: np.ndarray, sites: np.ndarray, table: ContractionTable
) -> np.ndarray:
    """M[i, j] = <op_i op_j> for i != j, zero diagonal."""
    R_max = table.R_max
    sep = sites[None, :] - sites[:, None]
    ba = -table.ab[::-1]  # ba(r) = -ab(-r)
    lookup = np.stack([table.aa, table.ab, ba, table.bb])
    code = 2 * types[:, None] + types[None, :]
    M = lookup[code, sep + R_max]
    np.fill_diagonal(M, 0.0)
    return M


def pfaffian_prefactor(kind: str, R: int) -> complex:
    """Scalar multiplying the grouped-order Pfaffian to give the correlator.

    c(R) = (-1)^(R(R+1)/2) for xx and yy; s(R) = i (-1)^(R(R-1)/2) for xy and
    yx. The sign of s(R) is pinned by the dense reference (see
    docs/CONVENTIONS.md).
    """
    if kind in ("xx", "yy"):
        return complex((-1) ** (R * (R + 1) // 2))
    if kind in ("xy", "yx"):
        return 1j * (-1) ** (R * (R - 1) // 2)
    raise ValueError(f"unknown correlator kind {kind!r}")


_NATURAL_PREFACTOR = {"xx": 1.0 + 0j, "yy": -1.0 + 0j, "xy": 1j, "yx": 1j}


def build_pfaffian_matrix(kind: str, R: int, table: ContractionTable) -> SkewMatrix:
    """Grouped-order 2R x 2R contraction matrix for one correlator kind.

    The correlator is ``pfaffian_prefactor(kind, R) * pfaffian(matrix)``.
    """
    if kind not in KINDS:
        raise ValueError(f"unknown correlator kind {kind!r}")
    if not 1 <= R <= table.R_max:
        raise ValueError(f"R must lie in [1, {table.R_max}], got {R}")
    types, sites = _grouped_ops(kind, R)
    return SkewMatrix(_contraction_matrix(types, sites, table))


def _natural_pfaffian_matrix(kind: str, R: int, table: ContractionTable) -> SkewMatrix:
    """Interleaved-order matrix (reference semantics for cross-checks)."""
    types, sites = _natural_ops(kind, R)
    return SkewMatrix(_contraction_matrix(types, sites, table))


def _correlator_natural(kind: str, R: int, table: ContractionTable) -> complex:
    return _NATURAL_PREFACTOR[kind] * pfaffian(_natural_pfaffian_matrix(kind, R, table))


def _zz_correlator(R: int, table: ContractionTable) -> complex:
    """<sigma^z_l sigma^z_{l+R}> from the 4x4 Pfaffian of the Majorana
    quadruple (A_l, B_l, A_{l+R}, B_{l+R})."""
    types = np.array([_A, _B, _A, _B])
    sites = np.array([0, 0, R, R])
    return pfaffian(SkewMatrix(_contraction_matrix(types, sites, table)))


def correlator_set(
    state: ManyBodyState, R: int, table: ContractionTable | None = None
) -> CorrelatorSet:
    """All non-vanishing correlators at distance R.

    A precomputed ``table`` (from :func:`contraction_table`) is reused when
    given; profiles over many distances should share one.
    """
    if not 1 <= R <= state.N // 2 - 1:
        raise ValueError(f"R must lie in [1, {state.N // 2 - 1}], got {R}")
    if table is None:
        table = contraction_table(state, R)
    vals = {
        kind: pfaffian_prefactor(kind, R) * pfaffian(build_pfaffian_matrix(kind, R, table))
        for kind in KINDS
    }
    vals["zz"] = _zz_correlator(R, table)
    residual = max(abs(v.imag) for v in vals.values())
    return CorrelatorSet(
        R=R,
        t=table.t,
        m_z=table.m_z,
        c_xx=vals["xx"].real,
        c_yy=vals["yy"].real,
        c_zz=vals["zz"].real,
        c_xy=vals["xy"].real,
        c_yx=vals["yx"].real,
        imag_residual=float(residual),
    )


def toeplitz_correlator_set(
    state: ManyBodyState, R: int, table: ContractionTable | None = None
) -> CorrelatorSet:
    """Equilibrium route, valid for eigenstates only.

    For eigenstates the AA and BB contractions collapse to (anti)identity,
    the xx and yy Pfaffians reduce to R x R Toeplitz determinants of the AB
    contractions, and xy / yx vanish. Used as an independent cross-check of
    the Pfaffian route; meaningless for quenched states at t > 0.
    """
    if not 1 <= R <= state.N // 2 - 1:
        raise ValueError(f"R must lie in [1, {state.N // 2 - 1}], got {R}")
    if table is None:
        table = contraction_table(state, R)
    i = np.arange(1, R + 1)
    G_xx = np.array([[-table.ab_at(a - b - 1) for b in i] for a in i])
    G_yy = np.array([[-table.ab_at(a - b + 1) for b in i] for a in i])
    m_z = table.m_z
    zz = m_z * m_z - table.ab_at(R) * table.ab_at(-R)
    return CorrelatorSet(
        R=R,
        t=table.t,
        m_z=m_z,
        c_xx=float(np.linalg.det(G_xx).real),
        c_yy=float(np.linalg.det(G_yy).real),
        c_zz=float(zz.real),
        c_xy=0.0,
        c_yx=0.0,
        imag_residual=float(abs(zz.imag)),
    )
