"""Timescales, packet counting and revival detection."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.ndimage import gaussian_filter1d
from scipy.signal import find_peaks

from .squeezed import QuantumNumbers
from .units import au_to_s

__all__ = [
    "FractionalRevival",
    "Timescales",
    "PacketReport",
    "timescales",
    "count_packets",
    "detect_revival",
    "fractional_period_check",
]


@dataclass(frozen=True)
class FractionalRevival:
    order: int
    t_au: float
    period_au: float


@dataclass(frozen=True)
class Timescales:
    """Classical period, revival and interference times, in a.u. and seconds."""

    T_cl_au: float
    t_rev_au: float
    t_int_au: float
    T_cl_s: float
    t_rev_s: float
    t_int_s: float
    fractional: tuple[FractionalRevival, ...]


@dataclass(frozen=True)
class PacketReport:
    t: float
    peak_positions: tuple[float, ...]
    peak_count: int
    prominence_threshold: float


def timescales(q: QuantumNumbers, fractional_orders=(2, 3, 4)) -> Timescales:
    """T_cl = 2 pi nbar^3, t_rev = nbar T_cl / 3, t_int = nbar T_cl / (3 deltan),
    plus fractional-revival times t_r = t_rev / r with periods T_r = T_cl / r."""
    n = float(q.nbar)
    t_cl = 2.0 * math.pi * n**3
    t_rev = n * t_cl / 3.0
    t_int = n * t_cl / (3.0 * q.deltan)
    fractional = tuple(
        FractionalRevival(order=int(r), t_au=t_rev / r, period_au=t_cl / r)
        for r in fractional_orders
    )
    return Timescales(
        T_cl_au=t_cl,
        t_rev_au=t_rev,
        t_int_au=t_int,
        T_cl_s=au_to_s(t_cl),
        t_rev_s=au_to_s(t_rev),
        t_int_s=au_to_s(t_int),
        fractional=fractional,
    )


def count_packets(
    r,
    f,
    prominence_threshold: float = 0.05,
    t: float = 0.0,
    smooth: float = 0.0,
) -> PacketReport:
    """Count spatially separated packets in a density snapshot.

    A packet is a local maximum whose prominence exceeds
    ``prominence_threshold`` times the global maximum.  Counting is invariant
    under positive rescaling of f.

    ``smooth`` (bohr) applies a Gaussian envelope filter before peak finding.
    Overlapping sub-packets interfere, so the raw density carries fringes at
    the local de Broglie scale; smoothing at a fraction of the packet width
    recovers the envelope humps those fringes ride on.  Requires a uniform
    grid when non-zero.
    """
    r = np.asarray(r, dtype=float)
    f = np.asarray(f, dtype=float)
    if r.shape != f.shape:
        raise ValueError("positions and density values must have the same shape")
    if not 0.0 < prominence_threshold < 1.0:
        raise ValueError("prominence threshold must lie in (0, 1)")
    if smooth > 0.0:
        steps = np.diff(r)
        if not np.allclose(steps, steps[0], rtol=1e-9, atol=0.0):
            raise ValueError("envelope smoothing requires a uniform grid")
        f = gaussian_filter1d(f, smooth / steps[0])
    fmax = f.max() if f.size else 0.0
    if fmax <= 0.0:
        return PacketReport(t=t, peak_positions=(), peak_count=0,
                            prominence_threshold=prominence_threshold)
    idx, _ = find_peaks(f, prominence=prominence_threshold * fmax)
    positions = tuple(float(v) for v in r[idx])
    return PacketReport(t=t, peak_positions=positions, peak_count=len(positions),
                        prominence_threshold=prominence_threshold)


def detect_revival(times, values, window):
    """Maximum of an autocorrelation series inside ``window = (t_lo, t_hi)``.

    Returns (t_peak, value); ties resolve to the earliest time.
    """
    times = np.asarray(times, dtype=float)
    values = np.asarray(values, dtype=float)
    if times.shape != values.shape:
        raise ValueError("times and values must have the same shape")
    t_lo, t_hi = float(window[0]), float(window[1])
    mask = (times >= t_lo) & (times <= t_hi)
    if not mask.any():
        raise ValueError(f"no samples inside window [{t_lo:g}, {t_hi:g}]")
    sub_t = times[mask]
    sub_v = values[mask]
    i = int(np.argmax(sub_v))
    return float(sub_t[i]), float(sub_v[i])


def fractional_period_check(
    r,
    f_a,
    f_b,
    r_out: float,
    position_tol: float = 0.05,
    prominence_threshold: float = 0.05,
    smooth: float = 0.0,
) -> bool:
    """True when two snapshots carry the same packet configuration.

    Peaks are matched greedily by nearest position (packet counts are small,
    so greedy pairing is exact in practice); every pair must agree within
    ``position_tol * r_out``.
    """
    r = np.asarray(r, dtype=float)
    f_a = np.asarray(f_a, dtype=float)
    f_b = np.asarray(f_b, dtype=float)
    if f_a.shape != r.shape or f_b.shape != r.shape:
        raise ValueError("snapshots must share one grid")
    pa = count_packets(r, f_a, prominence_threshold, smooth=smooth)
    pb = count_packets(r, f_b, prominence_threshold, smooth=smooth)
    if pa.peak_count != pb.peak_count:
        return False
    if pa.peak_count == 0:
        return True
    a = list(pa.peak_positions)
    b = list(pb.peak_positions)
    worst = 0.0
    while a:
        pairs = [(abs(x - y), i, j) for i, x in enumerate(a) for j, y in enumerate(b)]
        d, i, j = min(pairs)
        worst = max(worst, d)
        del a[i], b[j]
    return worst <= position_tol * r_out
