import math

import numpy as np
import pytest

from rydpack.analysis import (
    PacketReport,
    count_packets,
    detect_revival,
    fractional_period_check,
    timescales,
)
from rydpack.squeezed import QuantumNumbers
from rydpack.units import au_to_ns, au_to_ps


def gaussians(r, centers, heights, sigma=30.0):
    f = np.zeros_like(r)
    for c, h in zip(centers, heights):
        f += h * np.exp(-0.5 * ((r - c) / sigma) ** 2)
    return f


def test_timescales_reference_values():
    ts = timescales(QuantumNumbers(85))
    assert ts.T_cl_au == pytest.approx(2.0 * math.pi * 85**3, rel=1e-15)
    assert au_to_ps(ts.T_cl_au) == pytest.approx(93.3, abs=0.1)
    assert au_to_ns(ts.t_rev_au) == pytest.approx(2.64, abs=0.05)


def test_timescale_algebra():
    ts = timescales(QuantumNumbers(85), fractional_orders=(2, 3))
    assert ts.t_rev_au / ts.T_cl_au == pytest.approx(85.0 / 3.0, rel=1e-15)
    t2, t3 = ts.fractional
    assert (t2.order, t3.order) == (2, 3)
    assert t2.t_au == pytest.approx(ts.t_rev_au / 2.0, rel=1e-15)
    assert t3.t_au == pytest.approx(ts.t_rev_au / 3.0, rel=1e-15)
    assert t2.period_au == pytest.approx(ts.T_cl_au / 2.0, rel=1e-15)


def test_interference_time():
    # with the level spread at nbar/12 the interference time sits at 4 T_cl
    ts = timescales(QuantumNumbers(85, deltan=85.0 / 12.0))
    assert ts.t_int_au == pytest.approx(4.0 * ts.T_cl_au, rel=1e-12)
    assert ts.t_int_au < ts.t_rev_au
    # seconds fields carry the same ratios
    assert ts.t_int_s / ts.T_cl_s == pytest.approx(4.0, rel=1e-12)


def test_count_packets_simple():
    r = np.linspace(0.0, 2000.0, 4001)
    f = gaussians(r, [600.0, 1400.0], [1.0, 0.7])
    rep = count_packets(r, f)
    assert isinstance(rep, PacketReport)
    assert rep.peak_count == 2
    assert rep.peak_positions[0] == pytest.approx(600.0, abs=2.0)
    assert rep.peak_positions[1] == pytest.approx(1400.0, abs=2.0)


def test_count_packets_scaling_invariance():
    r = np.linspace(0.0, 2000.0, 4001)
    f = gaussians(r, [600.0, 1400.0], [1.0, 0.7])
    a = count_packets(r, f)
    b = count_packets(r, 17.5 * f)
    assert a.peak_count == b.peak_count
    assert a.peak_positions == b.peak_positions


def test_count_packets_prominence_filters_ripples():
    r = np.linspace(0.0, 2000.0, 4001)
    f = gaussians(r, [1000.0], [1.0], sigma=150.0)
    ripple = 0.01 * np.sin(r / 5.0) * (f > 0.3)
    rep = count_packets(r, f + ripple)
    assert rep.peak_count == 1


def test_count_packets_smoothing_recovers_envelope():
    # two humps modulated by high-visibility interference fringes
    r = np.linspace(0.0, 2000.0, 4001)
    env = gaussians(r, [600.0, 1400.0], [1.0, 0.8], sigma=120.0)
    fringed = env * np.cos(r / 12.0) ** 2
    raw = count_packets(r, fringed)
    smoothed = count_packets(r, fringed, smooth=60.0)
    assert raw.peak_count > 2
    assert smoothed.peak_count == 2


def test_count_packets_edge_cases():
    r = np.linspace(0.0, 10.0, 11)
    assert count_packets(r, np.zeros_like(r)).peak_count == 0
    with pytest.raises(ValueError):
        count_packets(r, np.zeros(5))
    with pytest.raises(ValueError):
        count_packets(r, np.ones_like(r), prominence_threshold=0.0)
    with pytest.raises(ValueError):
        count_packets(np.cumsum(np.arange(11) + 1.0), np.ones(11), smooth=1.0)


def test_detect_revival_constant_series_first_index():
    t = np.linspace(0.0, 10.0, 11)
    v = np.ones_like(t)
    t_peak, value = detect_revival(t, v, (2.0, 8.0))
    assert t_peak == 2.0 and value == 1.0


def test_detect_revival_beat_series():
    period = 144.0 * math.pi / 5.0
    t = np.linspace(0.0, 3.0 * period, 3001)
    v = np.cos(math.pi * t / period) ** 2
    t_peak, value = detect_revival(t, v, (0.5 * period, 1.5 * period))
    assert t_peak == pytest.approx(period, abs=period / 1000.0)
    assert value == pytest.approx(1.0, abs=1e-6)


def test_detect_revival_shift_invariance():
    t = np.linspace(0.0, 100.0, 1001)
    v = np.exp(-0.5 * ((t - 40.0) / 3.0) ** 2)
    t1, v1 = detect_revival(t, v, (20.0, 60.0))
    shift = 17.5
    t2, v2 = detect_revival(t + shift, v, (20.0 + shift, 60.0 + shift))
    assert t2 - shift == pytest.approx(t1, abs=1e-12)
    assert v2 == v1


def test_detect_revival_errors():
    t = np.linspace(0.0, 1.0, 10)
    with pytest.raises(ValueError):
        detect_revival(t, np.ones_like(t), (5.0, 6.0))
    with pytest.raises(ValueError):
        detect_revival(t, np.ones(3), (0.0, 1.0))


def test_fractional_period_check_synthetic():
    r = np.linspace(0.0, 2000.0, 4001)
    a = gaussians(r, [600.0, 1400.0], [1.0, 0.8])
    b = gaussians(r, [640.0, 1380.0], [0.9, 1.0])
    c = gaussians(r, [1000.0], [1.0])
    assert fractional_period_check(r, a, a, r_out=1500.0)
    assert fractional_period_check(r, a, b, r_out=1500.0)
    assert not fractional_period_check(r, a, c, r_out=1500.0)  # counts differ
    far = gaussians(r, [300.0, 1700.0], [1.0, 0.8])
    assert not fractional_period_check(r, a, far, r_out=1500.0)  # positions differ
    with pytest.raises(ValueError):
        fractional_period_check(r, a, b[:100], r_out=1500.0)
