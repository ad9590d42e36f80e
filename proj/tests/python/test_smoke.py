"""Smoke tests for the python bindings."""

import math

import pytest

import hopfdde as h


def test_reference_equilibrium():
    eq = h.find_equilibrium(h.ModelParams())
    assert eq.x10 == pytest.approx(5.0, abs=1e-12)
    assert eq.y10 == pytest.approx(21.03417191, abs=1e-6)
    assert eq.x20 == pytest.approx(2.498925919, abs=1e-6)
    assert eq.y20 == pytest.approx(1.795140515, abs=1e-6)
    assert eq.residual < 1e-9


def test_hill_and_derivatives():
    assert h.hill(0.0, 4.0, 3) == 0.0
    assert h.hill(4.0 ** (1.0 / 3.0), 4.0, 3) == pytest.approx(0.5)
    rho1, rho2, rho3 = h.hill_derivs(1.0, 1.0, 4)
    assert (rho1, rho2, rho3) == pytest.approx((1.0, -1.0, -6.0))
    with pytest.raises(ValueError):
        h.ModelParams(a12=2.0)


def test_reference_params_have_no_crossing():
    p = h.ModelParams()
    eq = h.find_equilibrium(p)
    k = h.char_coeffs(p, eq)
    assert h.zero_delay_stable(k)
    assert h.hopf_points(k) == []


OSC = dict(a1=0.1, a2=0.1, a12=0.9, b1=1.0, b2=0.5, a=1.0, n=4, alpha=0.2)


def test_oscillating_pipeline():
    p = h.ModelParams(**OSC, tau=3.2646)
    eq = h.find_equilibrium(p)
    assert (eq.x10, eq.y10, eq.x20, eq.y20) == pytest.approx((1, 1, 1, 1))

    k = h.char_coeffs(p, eq)
    pts = h.hopf_points(k)
    assert len(pts) == 2
    assert pts[0].tau0 == pytest.approx(3.264596597882, abs=1e-6)
    assert pts[0].delta_abs < 1e-8
    assert pts[0].M > 0 and pts[1].M < 0
    assert abs(h.char_delta(1j * pts[0].omega0, pts[0].tau0, k)) < 1e-8

    nf = h.normal_form(p, eq, pts[0], adjoint="hale")
    assert nf.mu2 == pytest.approx(13.070897163, rel=1e-6)
    assert nf.direction == "supercritical"
    assert nf.orbit_stability == "stable"

    default_nf = h.normal_form(p, eq, pts[0])
    assert default_nf.mu2 == pytest.approx(-61.540873342, rel=1e-6)


def test_integration_and_classification():
    p = h.ModelParams(**OSC, tau=1.6323)
    eq = h.find_equilibrium(p)
    hist = h.HistorySpec.constant(
        h.State(x1=eq.x10 * 1.01, y1=eq.y10 * 1.01, x2=eq.x20 * 1.01,
                y2=eq.y20 * 1.01))
    traj = h.integrate(p, hist, t_end=200.0, dt=1e-3)
    assert h.classify_longterm(traj, eq) == "decay"

    # the first component follows its exponential closed form
    t = traj.times[-1]
    exact = 1.0 / p.b1 + (eq.x10 * 1.01 - 1.0 / p.b1) * math.exp(-p.b1 * t)
    assert traj.states[-1][0] == pytest.approx(exact, abs=1e-8)


def test_waveform_is_real_and_on_frequency():
    p = h.ModelParams(**OSC, tau=3.2646)
    eq = h.find_equilibrium(p)
    pts = h.hopf_points(h.char_coeffs(p, eq))
    nf = h.normal_form(p, eq, pts[0], adjoint="hale", w20_4="g02bar",
                       g21_cubic="cubic")
    period = 2.0 * math.pi / pts[0].omega0
    wf = h.analytic_waveform(nf, eq, 1e-3 + 0j, t_end=5 * period, dt=1e-2)
    y1 = [s[1] for s in wf.states]
    assert max(y1) > eq.y10 > min(y1)
