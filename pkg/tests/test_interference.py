import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from spinab import interference as itf
from spinab.errors import DomainError, NodeError, PathError, UsageError
from spinab.potentials import SolenoidSpec, magnetic_ab
from spinab.specfun import assoc_legendre, bessel_j

angles = st.floats(-20.0, 20.0)

# normalised spin-source probability, mpmath at 30 digits
P_SPIN_REF = [
    (1.0, (-1, 0, 1, 2), 2, 2, 16.498652028175209145),
    (2.5, (-1, 0, 1, 2), 10, -5, 9.9274010617456635131),
    (0.3, (0.5, -0.25, 0.5, -0.25), 4, 1, 8.3970215094867680595),
]


def test_ordinary_probability():
    assert itf.p_ordinary(0.0) == 1.0
    assert itf.p_ordinary(math.pi) == pytest.approx(0.0, abs=1e-16)
    assert itf.p_ordinary(0.0, N=1.0) == 4.0


@settings(max_examples=50, deadline=None)
@given(angles, st.integers(-4, 4))
def test_integer_flux_is_invisible(d, k):
    assert itf.p_magnetic(d, flux_ratio=float(k)) == pytest.approx(itf.p_ordinary(d), abs=1e-12)


@settings(max_examples=50, deadline=None)
@given(angles, st.floats(-3.0, 3.0))
def test_magnetic_shift(d, d2):
    assert itf.p_magnetic(d - d2, delta2=d2) == pytest.approx(itf.p_ordinary(d), abs=1e-12)
    assert itf.p_magnetic(d, flux_ratio=-d2 / (2 * math.pi)) == pytest.approx(
        itf.p_magnetic(d, delta2=d2), abs=1e-12)


def test_magnetic_peak_location():
    d2 = 3 * math.pi / 5
    for k in range(-2, 3):
        assert itf.p_magnetic(-d2 + 2 * math.pi * k, delta2=d2) == pytest.approx(1.0, abs=1e-12)


def test_visibility():
    for mu in (-2.0, 0.0, 0.7, 3.0):
        assert itf.visibility(mu) == pytest.approx(2 * math.exp(mu) / (1 + math.exp(2 * mu)), rel=1e-14)
    d = np.linspace(0, 4 * math.pi, 11)
    assert np.allclose(itf.p_ordinary_visibility(d, 0.0), itf.p_ordinary(d), atol=1e-15)


@pytest.mark.parametrize("delta,mu,l,m,ref", P_SPIN_REF)
def test_spin_probability_reference(delta, mu, l, m, ref):
    params = itf.InterferenceParams(*mu, l, m)
    assert itf.p_spin(delta, params) == pytest.approx(ref, rel=1e-13)


@settings(max_examples=60, deadline=None)
@given(st.floats(0.0, 2 * math.pi), st.integers(1, 6), st.integers(0, 20),
       st.tuples(*[st.floats(-2.0, 2.0)] * 4))
def test_spin_probability_reflection_symmetry(d, m, l, mu):
    # symmetric about delta = 2 m pi
    params = itf.InterferenceParams(*mu, l, m)
    c = 2 * m * math.pi
    assert itf.p_spin(c + d, params) == pytest.approx(itf.p_spin(c - d, params), rel=1e-11, abs=1e-13)


@settings(max_examples=40, deadline=None)
@given(st.floats(-1.5, 1.5), st.floats(-1.5, 1.5), st.integers(1, 20))
def test_spin_probability_bounded_by_visibility(mu1, mu2, l):
    params = itf.InterferenceParams(mu1, mu2, mu1, mu2, l, 1)
    d = np.linspace(0, 4 * math.pi, 257)
    p = itf.p_spin(d, params)
    n2 = params.norm**2 * (1 + params.weight2**2)
    top = n2 * math.exp(2 * mu1) * (1 + math.exp(mu2)) ** 2
    assert np.all(p <= top * (1 + 1e-12))
    assert np.all(p >= 0)


def test_spin_params_validation():
    with pytest.raises(DomainError):
        itf.InterferenceParams(0, 0, 0, 0, 3, 0)
    with pytest.raises(DomainError):
        itf.InterferenceParams(0, 0, 0, 0, 3, -4)
    itf.InterferenceParams(0, 0, 0, 0, 3, -4, c2=0.5)


def test_curve():
    samples = itf.curve("magnetic", {"delta2": 1.0}, (0.0, 4 * math.pi, 1024))
    assert len(samples) == 1024
    assert samples[0].delta == 0.0 and samples[-1].delta == pytest.approx(4 * math.pi)
    with pytest.raises(UsageError):
        itf.curve("spin", {"N": 1.0}, (0, 1, 10))
    with pytest.raises(UsageError):
        itf.curve("other", {}, (0, 1, 10))
    with pytest.raises(UsageError):
        itf.curve("ordinary", {}, (0, 1, 1))
    with pytest.raises(UsageError):
        itf.p_magnetic(0.0)


@pytest.mark.parametrize("l,m,nu,k", [(3, 1, 2.5, 1.2), (5, 2, 1.5, 0.7), (2, 0, 3.2, 2.0)])
def test_f_vector_closed_form_matches_fd(l, m, nu, k):
    def chi(p):
        r = np.linalg.norm(p)
        t = math.acos(p[2] / r)
        f = math.atan2(p[1], p[0])
        return bessel_j(nu, k * r) / math.sqrt(r) * assoc_legendre(l, m, math.cos(t)) * np.exp(1j * m * f)

    for p in [np.array([0.4, 0.7, 0.3]), np.array([-0.9, 0.2, -0.5])]:
        fd = itf.f_vector(chi, p, h=1e-5, order=4)
        exact = itf.spherical_f_vector(l, m, nu, k, p)
        assert np.allclose(fd, exact, rtol=1e-7, atol=1e-7)


def test_f_vector_node():
    with pytest.raises(NodeError):
        itf.f_vector(lambda p: p[0], np.array([0.0, 1.0, 1.0]))
    with pytest.raises(DomainError):
        itf.spherical_f_vector(2, 3, 1.0, 1.0, [1.0, 0.0, 0.5])


@pytest.mark.parametrize("radius", [0.45, 0.9, 2.7])
def test_ab_loop_phase(radius):
    spec = SolenoidSpec(1.7, 0.3)
    path = itf.PathSpec.circle(radius, z=0.4)
    val = itf.loop_integral(lambda x: magnetic_ab(spec, x), path)
    assert val.real == pytest.approx(spec.flux, rel=1e-12)
    assert itf.winding_number(path) == pytest.approx(1.0, abs=1e-12)


def test_loop_excluding_axis_has_no_phase():
    spec = SolenoidSpec(1.7, 0.3)
    path = itf.PathSpec.circle(0.5, center=(2.0, 0.0, 0.0))
    assert abs(itf.loop_integral(lambda x: magnetic_ab(spec, x), path)) < 1e-12
    assert itf.winding_number(path) == pytest.approx(0.0, abs=1e-12)


def test_plane_wave_exponents():
    k = np.array([0.3, -0.4, 0.1])
    F = lambda x: 1j * k
    a, b = np.array([1.0, 0.0, 0.0]), np.array([0.0, 2.0, 1.0])
    leg = itf.PathSpec.segment(a, b)
    loop = itf.PathSpec.latitude(1.2, 1.0)
    ex = itf.path_exponents(F, F, leg, loop)
    assert ex["delta"] == pytest.approx(0.0, abs=1e-13)
    assert ex["mu1"] == pytest.approx(0.0, abs=1e-15)
    assert itf.loop_integral(F, leg).imag == pytest.approx(k @ (b - a), rel=1e-13)


def test_path_errors():
    with pytest.raises(PathError):
        itf.PathSpec("closed_loop", lambda t: np.array([t, 0.0, 0.0]))
    with pytest.raises(PathError):
        itf.PathSpec.circle(1.0, n_steps=32)
    with pytest.raises(PathError):
        itf.PathSpec("spiral", lambda t: np.zeros(3))
    bad = itf.PathSpec("open_leg", lambda t: np.array([t, 0.0, 0.0]), avoid=lambda x: x[0] > 0.5)
    with pytest.raises(PathError):
        itf.loop_integral(lambda x: np.ones(3), bad)
