"""Closed-form reference curves for the PSK/AWGN experiment.

Three analytic word-error-rate references accompany the Monte Carlo
results: the exact performance of a bounded-distance decoder fed by
symbol-wise hard decisions, a union bound on soft-decision ML from the
weight enumerator, and the crossing-point machinery used to compare
curves at a target error rate.

The phase-noise route: conditioned on sending a fixed PSK symbol, the
received phase offset has density

    p(theta) = exp(-g)/(2 pi)
             + sqrt(g/pi) cos(theta) exp(-g sin^2 theta) Phi(sqrt(2 g) cos(theta))

with g the channel-symbol SNR and Phi the standard normal CDF.  A hard
decision errs when the offset leaves (-pi/q, pi/q]; the q-ary symbol
error rate is one minus the integral of p over that arc.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad
from scipy.special import erfc, ndtr

__all__ = [
    "phase_density",
    "psk_symbol_error",
    "hard_decision_wer",
    "union_bound_wer",
    "AnalyticCurve",
    "hard_decision_curve",
    "union_bound_curve",
    "write_curve_csv",
    "crossing_snr_db",
    "analytic_gap_db",
]

QUAD_ABS_TOL = 1e-12


def phase_density(theta, gamma: float):
    """Density of the received phase offset at channel-symbol SNR gamma."""
    theta = np.asarray(theta, dtype=float)
    c = np.cos(theta)
    return (
        math.exp(-gamma) / (2.0 * math.pi)
        + np.sqrt(gamma / math.pi) * c * np.exp(-gamma * np.sin(theta) ** 2)
        * ndtr(np.sqrt(2.0 * gamma) * c)
    )


def psk_symbol_error(gamma: float, q: int) -> float:
    """Hard-decision symbol error rate of q-PSK at channel-symbol SNR gamma.

    Integrates the offset density over the error arc directly (the
    density is even, so that is twice the (pi/q, pi] tail), which stays
    well conditioned at high SNR where the in-arc mass is nearly 1.
    """
    if gamma < 0:
        raise ValueError("SNR must be nonnegative")
    if q < 2:
        raise ValueError("need at least 2 phases")
    val, err = quad(lambda t: float(phase_density(t, gamma)), math.pi / q,
                    math.pi, epsabs=QUAD_ABS_TOL, limit=200)
    if err > 1e-9:
        raise ArithmeticError(f"phase integral did not converge: error {err}")
    return min(max(2.0 * val, 0.0), 1.0)


def hard_decision_wer(snr_db: float, n: int, t: int, rate: float, q: int) -> float:
    """Word error rate of t-error-correcting bounded-distance hard decoding.

    The SNR axis is normalized per information symbol: the channel-symbol
    SNR is rate * 10^(snr_db/10).  A word fails exactly when more than t
    of its n symbols are hard-decided wrongly.
    """
    gamma = rate * 10.0 ** (snr_db / 10.0)
    p = psk_symbol_error(gamma, q)
    # sum the small tail (ell > t) rather than 1 - head, for accuracy
    total = 0.0
    for ell in range(t + 1, n + 1):
        total += math.comb(n, ell) * p**ell * (1.0 - p) ** (n - ell)
    return min(total, 1.0)


def union_bound_wer(snr_db: float, weight_enumerator, rate: float) -> float:
    """Union bound on soft-decision ML word error rate, ternary PSK.

    For 3-PSK every pair of distinct symbols is at squared Euclidean
    distance 3 E_ch, so a weight-w competitor is pairwise confused with
    probability Q(sqrt(3 w E_ch / 2)); summing over the enumerator
    (zero-weight term excluded) bounds the block error rate.
    """
    gamma = rate * 10.0 ** (snr_db / 10.0)
    total = 0.0
    for w, a_w in enumerate(weight_enumerator):
        if w == 0 or a_w == 0:
            continue
        total += a_w * 0.5 * erfc(math.sqrt(0.75 * w * gamma))
    return min(total, 1.0)


@dataclass(frozen=True)
class AnalyticCurve:
    """A named WER-versus-SNR curve on a fixed grid of dB points."""

    kind: str
    snr_db: tuple
    wer: tuple

    def interp_log10(self, snr_db: float) -> float:
        """log10(WER) at snr_db by linear interpolation in dB."""
        xs = np.asarray(self.snr_db)
        ys = np.log10(np.asarray(self.wer))
        return float(np.interp(snr_db, xs, ys))


def hard_decision_curve(snr_grid_db, n: int, t: int, rate: float, q: int) -> AnalyticCurve:
    wer = tuple(hard_decision_wer(s, n, t, rate, q) for s in snr_grid_db)
    return AnalyticCurve("hard_decision", tuple(float(s) for s in snr_grid_db), wer)


def union_bound_curve(snr_grid_db, weight_enumerator, rate: float) -> AnalyticCurve:
    wer = tuple(union_bound_wer(s, weight_enumerator, rate) for s in snr_grid_db)
    return AnalyticCurve("union_bound", tuple(float(s) for s in snr_grid_db), wer)


def write_curve_csv(path, curve: AnalyticCurve) -> None:
    """Write a curve as CSV: a kind comment, then snr_db,wer rows."""
    with open(path, "w") as fh:
        fh.write(f"# kind={curve.kind}\n")
        fh.write("snr_db,wer\n")
        for s, w in zip(curve.snr_db, curve.wer):
            fh.write(f"{s:.6g},{w:.12g}\n")


def crossing_snr_db(wer_fn, target: float, lo_db: float, hi_db: float,
                    tol_db: float = 1e-6) -> float:
    """SNR in dB where a decreasing WER function crosses target (bisection)."""
    f_lo = wer_fn(lo_db)
    f_hi = wer_fn(hi_db)
    if not (f_lo > target > f_hi):
        raise ValueError(
            f"target {target} not bracketed: wer({lo_db})={f_lo}, wer({hi_db})={f_hi}"
        )
    while hi_db - lo_db > tol_db:
        mid = 0.5 * (lo_db + hi_db)
        if wer_fn(mid) > target:
            lo_db = mid
        else:
            hi_db = mid
    return 0.5 * (lo_db + hi_db)


def analytic_gap_db(weight_enumerator, n: int, t: int, rate: float, q: int,
                    target: float = 1e-4) -> dict:
    """dB gap at a target WER between hard-decision and union-bound curves.

    Returns the two crossing SNRs and their difference (hard minus
    union bound; positive when the union-bound curve crosses first).
    """
    hd = crossing_snr_db(lambda s: hard_decision_wer(s, n, t, rate, q),
                         target, 0.0, 20.0)
    ub = crossing_snr_db(lambda s: union_bound_wer(s, weight_enumerator, rate),
                         target, 0.0, 20.0)
    return {"hard_decision_db": hd, "union_bound_db": ub, "gap_db": hd - ub}
