"""Closed-form single-user beamforming: maximum-ratio transmission at the BS
alternated with per-element reflection phase alignment.

Both half-steps are exact maximizers given the other variable, so the
objective |h_eff^H w|^2 ascends monotonically; convergence is declared when
the relative gain drops below a tolerance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .channel import ChannelRealization, cascade_rows

TWO_PI = 2.0 * math.pi

__all__ = [
    "BfOptions",
    "BeamformingSolution",
    "mrt",
    "align_phases",
    "alternating_optimize",
    "optimize_rows",
    "quantize_phases",
    "snr_and_rate",
]


@dataclass(frozen=True)
class BfOptions:
    tol: float = 1e-6
    max_iter: int = 100
    phase_bits: int = 0  # 0 = continuous phases

    def __post_init__(self):
        if not (self.tol > 0):
            raise ValueError("tolerance must be > 0")
        if self.max_iter < 1:
            raise ValueError("max_iter must be >= 1")
        if self.phase_bits < 0:
            raise ValueError("phase_bits must be >= 0")


@dataclass
class BeamformingSolution:
    """Converged beamformer: unit-norm w, per-element phases (L, N), the
    effective channel in column convention (so |h_eff^H w|^2 is the received
    power factor), and the per-half-step objective trace."""

    w: np.ndarray
    phases: np.ndarray
    h_eff: np.ndarray
    objective_trace: list[float]
    iterations: int

    @property
    def objective(self) -> float:
        return self.objective_trace[-1]


def mrt(h: np.ndarray) -> np.ndarray:
    """Maximum-ratio transmission vector h/||h||; |h^H mrt(h)| = ||h||."""
    h = np.asarray(h, dtype=complex)
    norm = math.sqrt(np.vdot(h, h).real)
    if norm == 0:
        raise ValueError("MRT is undefined for a zero channel vector")
    return h / norm


def _align(t: np.ndarray, ref: float) -> np.ndarray:
    """Phases that rotate every contribution t_k onto the reference argument.

    Zero-magnitude contributions get phase 0 (stated tie-break)."""
    theta = np.mod(ref - np.angle(t), TWO_PI)
    theta[np.abs(t) == 0] = 0.0
    return theta


def _align_phasors(t: np.ndarray, ref_phasor: complex) -> np.ndarray:
    """exp(1j*theta) for the aligning phases, without trig round trips.

    Equals ref_phasor * conj(t)/|t| entrywise; zero contributions map to the
    phasor 1 (phase-0 tie-break).
    """
    mag = np.abs(t)
    if mag.size and mag.min() > 0:
        phasor = np.conj(t)
        if ref_phasor != 1.0:
            phasor *= ref_phasor
        phasor /= mag
        return phasor
    return np.divide(np.conj(t) * ref_phasor, mag, out=np.ones_like(t), where=mag > 0)


def align_phases(r: ChannelRealization, w: np.ndarray) -> np.ndarray:
    """Per-element phases aligning all cascaded contributions for a fixed w.

    With the direct path present, contributions rotate onto its argument;
    otherwise onto 0.  After alignment the scalar effective channel magnitude
    is the sum of the contribution magnitudes.
    """
    rows, direct_row = cascade_rows(r)
    t = rows @ np.asarray(w, dtype=complex)
    ref = float(np.angle(direct_row @ w)) if direct_row is not None else 0.0
    return _align(t, ref).reshape(r.L, r.N)


def optimize_rows(
    rows: np.ndarray,
    direct_row: np.ndarray | None,
    tol: float = 1e-6,
    max_iter: int = 100,
    init_w: np.ndarray | None = None,
) -> tuple[np.ndarray, np.ndarray, np.ndarray, list[float], int]:
    """Alternating ascent on a generic contribution-row decomposition.

    rows is (K, M): the effective row channel for phases theta is
    sum_k exp(1j*theta_k) rows[k] (+ direct_row).  Returns
    (w, theta, h_eff_column, trace, iterations).  The default initialization
    is all-zero phases followed by MRT; init_w skips that and starts the first
    alignment from the given precoder (used for warm restarts).
    """
    if not (tol > 0):
        raise ValueError("tolerance must be > 0")
    if max_iter < 1:
        raise ValueError("max_iter must be >= 1")
    rows = np.asarray(rows, dtype=complex)
    K, _ = rows.shape

    if init_w is None:
        e = rows.sum(axis=0)
        if direct_row is not None:
            e = e + direct_row
        if not np.vdot(e, e).real > 0:
            raise ValueError("effective channel is identically zero")
        w = mrt(np.conj(e))
    else:
        w = np.asarray(init_w, dtype=complex)
        e = rows.sum(axis=0)
        if direct_row is not None:
            e = e + direct_row
    obj = float(abs(e @ w) ** 2)
    trace = [obj]

    phasor = np.ones(K, dtype=complex)
    iterations = 0
    for it in range(1, max_iter + 1):
        t = rows @ w
        if direct_row is not None:
            d_scal = complex(direct_row @ w)
            ref_phasor = d_scal / abs(d_scal) if d_scal != 0 else 1.0
        else:
            ref_phasor = 1.0
        phasor = _align_phasors(t, ref_phasor)
        e = phasor @ rows
        if direct_row is not None:
            e = e + direct_row
        trace.append(float(abs(e @ w) ** 2))  # after the phase half-step
        w = mrt(np.conj(e))
        new_obj = float(abs(e @ w) ** 2)
        trace.append(new_obj)  # after the MRT half-step
        iterations = it
        if new_obj - obj <= tol * obj:
            obj = new_obj
            break
        obj = new_obj
    theta = np.mod(np.angle(phasor), TWO_PI)
    return w, theta, np.conj(e), trace, iterations


def alternating_optimize(
    r: ChannelRealization, tol: float = 1e-6, max_iter: int = 100
) -> BeamformingSolution:
    """Joint active/passive beamforming by alternating the two closed forms."""
    rows, direct_row = cascade_rows(r)
    w, theta, h_eff, trace, iterations = optimize_rows(rows, direct_row, tol, max_iter)
    return BeamformingSolution(
        w=w,
        phases=theta.reshape(r.L, r.N),
        h_eff=h_eff,
        objective_trace=trace,
        iterations=iterations,
    )


def quantize_phases(phases: np.ndarray, bits: int) -> np.ndarray:
    """Round each phase to the nearest point of the 2^bits uniform codebook."""
    if bits < 1:
        raise ValueError("bits must be >= 1")
    levels = 2**bits
    step = TWO_PI / levels
    return np.mod(np.round(np.asarray(phases, dtype=float) / step), levels) * step


def snr_and_rate(s: BeamformingSolution, p_tx: float, noise: float) -> tuple[float, float]:
    """Link SNR (linear) and Shannon rate (bit/s/Hz) of the beamformed channel."""
    if not (p_tx > 0 and noise > 0):
        raise ValueError("transmit power and noise power must be > 0")
    snr = p_tx * abs(np.vdot(s.h_eff, s.w)) ** 2 / noise
    return snr, math.log2(1.0 + snr)
