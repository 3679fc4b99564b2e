import math

import numpy as np
import pytest

from cptubes import DomainError, TrigBundle, inv_ta, trig


def test_exact_values_at_pi_over_4():
    t = trig(1.0, math.pi / 4.0)
    assert t.s == pytest.approx(math.sqrt(2.0) / 2.0, abs=1e-15)
    assert t.c == pytest.approx(math.sqrt(2.0) / 2.0, abs=1e-15)
    assert t.ta == pytest.approx(1.0, abs=1e-15)
    assert abs(t.c4) < 1e-15


def test_values_at_zero():
    t = trig(1.0, 0.0)
    assert (t.s, t.c, t.ta, t.c4) == (0.0, 1.0, 0.0, 1.0)


def test_lam_4_at_pi_over_8():
    t = trig(4.0, math.pi / 8.0)
    assert t.s == pytest.approx(math.sin(math.pi / 4.0) / 2.0, abs=1e-15)
    assert t.c == pytest.approx(math.cos(math.pi / 4.0), abs=1e-15)
    assert abs(t.c4) < 1e-15  # cos(pi/2)


def test_flat_limit():
    t = trig(0.0, 0.7)
    assert (t.s, t.c, t.c4, t.ta) == (0.7, 1.0, 1.0, 0.7)


def test_pythagorean_and_double_angle_identities():
    for lam in (0.25, 1.0, 4.0):
        for r in np.linspace(0.0, math.pi / (2.0 * math.sqrt(lam)), 101):
            t = trig(lam, float(r))
            assert abs(t.c * t.c + lam * t.s * t.s - 1.0) <= 1e-14
            assert abs(t.c4 - (2.0 * t.c * t.c - 1.0)) <= 1e-14


def test_ta_matches_quotient():
    for lam in (0.25, 1.0, 4.0):
        for r in np.linspace(0.01, 0.9 * math.pi / (2.0 * math.sqrt(lam)), 37):
            t = trig(lam, float(r))
            assert t.ta == pytest.approx(t.s / t.c, rel=1e-15)


def test_ta_sentinel_raises():
    bundle = TrigBundle(r=1.0, s=1.0, c=0.0, c4=-1.0, ta_value=None)
    with pytest.raises(DomainError):
        bundle.ta


def test_negative_inputs_rejected():
    with pytest.raises(DomainError):
        trig(-1.0, 0.5)
    with pytest.raises(DomainError):
        trig(1.0, -0.5)


def test_inv_ta_round_trip():
    for lam in (0.25, 1.0, 4.0):
        for r in np.linspace(0.01, 0.9 * math.pi / (2.0 * math.sqrt(lam)), 17):
            t = trig(lam, float(r))
            assert inv_ta(lam, t.ta) == pytest.approx(float(r), rel=1e-13)
    assert inv_ta(0.0, 0.3) == 0.3
