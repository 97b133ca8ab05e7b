import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from discwitness import build_curve, chord_chart
from discwitness.errors import OrderTooLarge
from discwitness.logscale import relative_gap
from discwitness.moments import (
    moment_area,
    moment_chord,
    moment_green,
    moment_sweep,
)

from conftest import small_fourier_curves

# frozen: independent 200x200 Gauss polar quadrature of the unit-disc
# integral (equals 2 pi J1(1))
DISC_M0 = 2.764919374768337


def _gap(r1, r2, abs_floor=1e-8):
    return relative_gap(r1.as_logcomplex(), r2.as_logcomplex(),
                        abs_floor_log=math.log(abs_floor))


class TestChord:
    def test_disc_m0(self, unit_disc):
        m = moment_chord(chord_chart(unit_disc), 0)
        assert abs(m.value() - DISC_M0) < 1e-8

    def test_disc_odd_vanishes(self, unit_disc):
        ch = chord_chart(unit_disc)
        for n in (1, 3, 5):
            r = moment_chord(ch, n)
            assert r.abs_log() <= math.log(1e-10)

    def test_matches_area_on_ellipse(self, ellipse):
        ch = chord_chart(ellipse)
        assert _gap(moment_chord(ch, 2), moment_area(ellipse, 2)) < 1e-6

    def test_large_order_finite(self, ellipse):
        r = moment_chord(chord_chart(ellipse), 499)
        assert np.isfinite(r.log_scale)
        assert np.isfinite(abs(r.mantissa))
        assert 1 / math.e <= abs(r.mantissa) <= math.e


class TestGreen:
    def test_disc_values(self, unit_disc):
        assert moment_green(unit_disc, 1).abs_log() <= math.log(1e-10)
        assert _gap(moment_green(unit_disc, 0),
                    moment_chord(chord_chart(unit_disc), 0)) < 1e-8

    def test_translation_phase(self, unit_disc):
        base = moment_green(unit_disc, 0).value()
        shifted = moment_green(unit_disc.translated(0.5, 0.0), 0).value()
        assert shifted == pytest.approx(base * np.exp(0.5j), rel=1e-8)
        assert abs(shifted) == pytest.approx(abs(base), rel=1e-8)


class TestArea:
    def test_disc_m0(self, unit_disc):
        assert abs(moment_area(unit_disc, 0).value() - DISC_M0) < 1e-6

    def test_disc_odd(self, unit_disc):
        assert moment_area(unit_disc, 3).abs_log() <= math.log(1e-10)

    def test_matches_green_on_ellipse(self, ellipse):
        assert _gap(moment_area(ellipse, 4), moment_green(ellipse, 4)) < 1e-6

    def test_order_cap(self, unit_disc):
        with pytest.raises(OrderTooLarge):
            moment_area(unit_disc, 81)


class TestSweep:
    def test_disc_odd_all_zero(self, unit_disc):
        for r in moment_sweep(unit_disc, [1, 3, 5]):
            assert r.abs_log() <= math.log(1e-10)

    def test_empty(self, unit_disc):
        assert moment_sweep(unit_disc, []) == []

    def test_chord_vs_green_to_40(self, ellipse):
        ns = list(range(41))
        chords = moment_sweep(ellipse, ns, method="chord")
        greens = moment_sweep(ellipse, ns, method="green")
        worst = max(_gap(a, b) for a, b in zip(chords, greens))
        assert worst < 1e-6

    def test_workers_match_serial(self, ellipse):
        serial = moment_sweep(ellipse, [0, 2, 4], method="green")
        parallel = moment_sweep(ellipse, [0, 2, 4], method="green", workers=3)
        for a, b in zip(serial, parallel):
            assert a.mantissa == b.mantissa and a.log_scale == b.log_scale

    def test_error_carries_index(self, unit_disc):
        with pytest.raises(OrderTooLarge, match=r"n_list\[1\]"):
            moment_sweep(unit_disc, [0, 99], method="area")


# --- properties ---


@settings(max_examples=10, deadline=None)
@given(curve=small_fourier_curves(max_harmonic=3, scale=0.1),
       n=st.integers(0, 12))
def test_three_methods_agree(curve, n):
    chart = chord_chart(curve)
    rc = moment_chord(chart, n)
    rg = moment_green(curve, n)
    ra = moment_area(curve, n)
    assert _gap(rc, rg) < 1e-6
    assert _gap(rc, ra) < 1e-6


@settings(max_examples=10, deadline=None)
@given(n=st.integers(0, 10))
def test_symmetric_odd_orders_vanish(n):
    curve = build_curve({"type": "support_fourier", "a0": 1, "cos": [0, 0.1]})
    r = moment_chord(chord_chart(curve), 2 * n + 1)
    assert r.abs_log() <= math.log(1e-10)


@settings(max_examples=10, deadline=None)
@given(curve=small_fourier_curves(max_harmonic=3, scale=0.1),
       n=st.integers(0, 10))
def test_frame_flip_parity(curve, n):
    # y -> -y is the frame theta -> theta + pi composed with x -> -x kept:
    # reflect by comparing frame 0 against the mirrored curve
    mirrored = build_curve({
        "type": "support_fourier", "a0": curve.a0,
        "cos": list(curve.cos),
        "sin": [-v for v in curve.sin],
    })
    r = moment_green(curve, n)
    rm = moment_green(mirrored, n)
    expect = rm.as_logcomplex().scaled((-1.0) ** n)
    assert relative_gap(r.as_logcomplex(), expect,
                        abs_floor_log=math.log(1e-10)) < 1e-7
