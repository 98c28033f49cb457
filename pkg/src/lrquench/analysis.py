"""Decay-model fits of total-correlation profiles and regime verdicts.

Model selection is a two-way comparison of unweighted linear least squares in
(log R, log I) against (R, log I); the higher r-squared wins, with an
inconclusive band for near-ties. The fit window is the decisive free
parameter on finite rings:

* default: drop R < 3 (short-distance transients) and the top 10% of R
  (ring-wraparound flattening), floor I at 1e-12;
* optional ``signal_floor`` (relative to the profile maximum): when the
  profile collapses below it inside the ring, the fit is restricted to the
  decaying head starting at R = 1, which rejects the finite-size echo noise
  that otherwise dominates the tail of short-ranged profiles. The chosen
  window is always reported in the verdict.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import AllBelowFloor, InconclusiveVerdict, InsufficientData, MixedModels

__all__ = [
    "FitOptions",
    "ScalingVerdict",
    "FiniteSizeFit",
    "fit_profile",
    "cgc_verdict",
    "fgc_verdict",
    "finite_size_fit",
]

ALGEBRAIC = "algebraic"
EXPONENTIAL = "exponential"
INCONCLUSIVE = "inconclusive"

NO_TRANSITION = "no_global_transition_crossed"
CROSSED = "crossed_alpha_c1"
QUASI_LOCAL = "quasi_local"
LOCAL = "local"


@dataclass(frozen=True)
class FitOptions:
    """Knobs of the profile fit.

    ``signal_floor`` defaults to 1e-3: on finite rings at late times,
    coherent wrap echoes put a noise shelf a few decades below the profile
    head, and points below ``signal_floor * max(I)`` carry no decay-law
    information. Set it to None for the plain window."""

    r_min: int = 3
    ring_discard: float = 0.1
    noise_floor: float = 1e-12
    signal_floor: float | None = 1e-3
    margin_threshold: float = 0.02
    min_points: int = 6

    def as_dict(self) -> dict:
        return {
            "r_min": self.r_min,
            "ring_discard": self.ring_discard,
            "noise_floor": self.noise_floor,
            "signal_floor": self.signal_floor,
            "margin_threshold": self.margin_threshold,
            "min_points": self.min_points,
        }


@dataclass(frozen=True)
class ScalingVerdict:
    """Outcome of the two-model comparison.

    Exactly one of ``eta`` (algebraic exponent) / ``xi`` (decay length) is
    set unless the verdict is inconclusive. ``margin`` = |r2_alg - r2_exp|.
    """

    model: str
    eta: float | None
    xi: float | None
    r2_alg: float
    r2_exp: float
    fit_window: tuple[int, int]
    margin: float
    n_points: int
    amplitude: float | None = None  # prefactor of the winning model

    def as_dict(self) -> dict:
        return {
            "model": self.model,
            "eta": self.eta,
            "xi": self.xi,
            "r2_alg": self.r2_alg,
            "r2_exp": self.r2_exp,
            "fit_window": list(self.fit_window),
            "margin": self.margin,
            "n_points": self.n_points,
            "amplitude": self.amplitude,
        }


@dataclass(frozen=True)
class FiniteSizeFit:
    """Convergence of the algebraic exponent with system size."""

    sizes: list[int]
    etas: list[float]
    eta_inf: float
    beta_exponent: float
    beta_intercept: float = float("nan")

    def as_dict(self) -> dict:
        return {
            "sizes": self.sizes,
            "etas": self.etas,
            "eta_inf": self.eta_inf,
            "beta_exponent": self.beta_exponent,
            "beta_intercept": self.beta_intercept,
        }


def _lls_r2(x: np.ndarray, y: np.ndarray) -> tuple[float, float, float]:
    """Least-squares slope, intercept, and r^2 of y on x."""
    slope, intercept = np.polyfit(x, y, 1)
    resid = y - (slope * x + intercept)
    ss_tot = float(np.sum((y - y.mean()) ** 2))
    if ss_tot == 0.0:
        return float(slope), float(intercept), 1.0
    return float(slope), float(intercept), 1.0 - float(np.sum(resid**2)) / ss_tot


def _select_window(
    R: np.ndarray, I: np.ndarray, window: tuple[int, int] | None, opts: FitOptions
) -> np.ndarray:
    above = I > opts.noise_floor
    if not np.any(above):
        raise AllBelowFloor(
            f"all {len(I)} profile points are below the noise floor "
            f"{opts.noise_floor:g}"
        )
    if window is not None:
        lo, hi = window
        mask = above & (R >= lo) & (R <= hi)
    else:
        mask = above & (R >= opts.r_min) & (R <= (1.0 - opts.ring_discard) * R.max())
        if opts.signal_floor is not None and np.any(mask):
            floor = opts.signal_floor * I[above].max()
            head = above & (R <= (1.0 - opts.ring_discard) * R.max())
            idx = np.where(head)[0]
            below = idx[I[idx] < floor]
            if len(below):
                # profile collapses inside the ring: fit the decaying head,
                # including R >= 1 (it carries the decay), >= min_points wide
                cut = R[below[0]]
                head_mask = head & (R < cut)
                if head_mask.sum() < opts.min_points:
                    first = np.where(head)[0][: opts.min_points]
                    head_mask = np.zeros_like(head)
                    head_mask[first] = True
                mask = head_mask
    if mask.sum() < opts.min_points:
        raise InsufficientData(
            f"{int(mask.sum())} usable points (need >= {opts.min_points})"
        )
    return mask


def fit_profile(
    profile,
    window: tuple[int, int] | None = None,
    options: FitOptions | None = None,
) -> ScalingVerdict:
    """Classify a TC profile as algebraic or exponential.

    Parameters
    ----------
    profile : sequence of (R, I_R)
        Distances and total correlations.
    window : (R_min, R_max), optional
        Explicit fit window; overrides the automatic choice.
    options : FitOptions, optional
        Window and selection knobs.

    Raises
    ------
    AllBelowFloor
        Profile numerically zero.
    InsufficientData
        Fewer than ``min_points`` usable points.
    """
    opts = options or FitOptions()
    arr = np.asarray(profile, dtype=float)
    if arr.ndim != 2 or arr.shape[1] != 2:
        raise ValueError("profile must be a sequence of (R, I) pairs")
    order = np.argsort(arr[:, 0])
    R, I = arr[order, 0], arr[order, 1]
    mask = _select_window(R, I, window, opts)
    Rw, Iw = R[mask], I[mask]
    log_I = np.log(Iw)
    slope_alg, icept_alg, r2_alg = _lls_r2(np.log(Rw), log_I)
    slope_exp, icept_exp, r2_exp = _lls_r2(Rw, log_I)
    margin = abs(r2_alg - r2_exp)
    win = (int(Rw.min()), int(Rw.max()))
    if margin < opts.margin_threshold:
        model, eta, xi, amp = INCONCLUSIVE, None, None, None
    elif r2_alg > r2_exp:
        model, eta, xi, amp = ALGEBRAIC, -slope_alg, None, float(np.exp(icept_alg))
    else:
        model, eta, xi, amp = EXPONENTIAL, None, -1.0 / slope_exp, float(np.exp(icept_exp))
    return ScalingVerdict(
        model=model,
        eta=eta,
        xi=xi,
        r2_alg=r2_alg,
        r2_exp=r2_exp,
        fit_window=win,
        margin=margin,
        n_points=int(mask.sum()),
        amplitude=amp,
    )


def cgc_verdict(verdict: ScalingVerdict) -> str:
    """Global-quench reading of a steady-state verdict.

    Algebraic decay means the quench stayed inside the strongly connected
    regime; exponential decay means the first global transition was crossed.
    The caller is responsible for having started in the strongly connected
    regime (alpha_i < 1).
    """
    if verdict.model == ALGEBRAIC:
        return NO_TRANSITION
    if verdict.model == EXPONENTIAL:
        return CROSSED
    raise InconclusiveVerdict(
        f"margin {verdict.margin:.4f} below threshold; no CGC verdict"
    )


def fgc_verdict(same_phase: ScalingVerdict, cross_phase: ScalingVerdict) -> str:
    """Local-quench-pair reading: identical decay models on the same-phase
    and cross-transition quenches mean the intermediate regime; differing
    models mean the short-range regime. The (algebraic, algebraic)
    combination maps to the intermediate regime by the letter of the rule
    but does not occur in practice; callers may want to warn on it."""
    for name, v in (("same-phase", same_phase), ("cross-phase", cross_phase)):
        if v.model == INCONCLUSIVE:
            raise InconclusiveVerdict(f"{name} verdict inconclusive (margin {v.margin:.4f})")
    return QUASI_LOCAL if same_phase.model == cross_phase.model else LOCAL


def finite_size_fit(
    runs: list[tuple[int, object]],
    options: FitOptions | None = None,
    eta_inf: float | None = None,
) -> FiniteSizeFit:
    """Convergence exponent of the algebraic exponent eta_N.

    Fits every profile, takes eta_inf from the largest size (the
    thermodynamic-limit proxy) unless supplied explicitly, and regresses
    log |eta_N - eta_inf| on log N over the remaining sizes.

    Raises
    ------
    MixedModels
        If any profile classifies non-algebraic.
    """
    if len(runs) < 4:
        raise InsufficientData(f"need >= 4 sizes, got {len(runs)}")
    runs = sorted(runs, key=lambda x: x[0])
    sizes = [int(N) for N, _ in runs]
    etas = []
    for N, profile in runs:
        v = fit_profile(profile, options=options)
        if v.model != ALGEBRAIC:
            raise MixedModels(f"profile at N={N} classified {v.model}")
        etas.append(float(v.eta))
    if eta_inf is None:
        eta_inf = etas[-1]
        pairs = [(N, e) for N, e in zip(sizes[:-1], etas[:-1])]
    else:
        pairs = list(zip(sizes, etas))
    pairs = [(N, e) for N, e in pairs if abs(e - eta_inf) > 0]
    if len(pairs) < 2:
        raise InsufficientData("not enough sizes with eta_N != eta_inf")
    logN = np.log([N for N, _ in pairs])
    logd = np.log([abs(e - eta_inf) for _, e in pairs])
    slope, intercept, _ = _lls_r2(logN, logd)
    return FiniteSizeFit(sizes=sizes, etas=etas, eta_inf=float(eta_inf),
                         beta_exponent=float(slope),
                         beta_intercept=float(intercept))
