import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from spinab import potentials as pot
from spinab._fd import curl
from spinab.errors import SingularityError, UsageError
from spinab.qalgebra import UnitConventions, dot, pauli, spin_half, spin_one

P0 = np.array([0.3, -0.8, 1.1])


def point_strategy():
    return st.tuples(st.floats(0.3, 3.0), st.floats(0.2, math.pi - 0.2), st.floats(-math.pi, math.pi)).map(
        lambda t: pot.SphericalPoint(*t).cartesian)


def test_spin_potential_components():
    g = 1.7
    s = pauli()
    r2 = P0 @ P0
    x, y, z = P0
    # (r x sigma)_x = y s_z - z s_y, etc., with S = sigma/2
    ref = np.stack([y * s[2] - z * s[1], z * s[0] - x * s[2], x * s[1] - y * s[0]]) * g / (2 * r2)
    assert np.max(np.abs(pot.spin_potential(g, spin_half(), P0) - ref)) < 1e-15


@settings(max_examples=40, deadline=None)
@given(point_strategy(), st.floats(-4.0, 4.0))
def test_spin_half_algebra(p, g):
    S = spin_half()
    r2 = p @ p
    a2 = pot.potential_square(g, S, p)
    assert np.max(np.abs(a2 - g * g / (2 * r2) * np.eye(2))) <= 1e-13 * max(1.0, g * g / r2)
    axa = pot.potential_self_cross(g, S, p)
    ref = 1j * g * g * np.multiply.outer(p, dot(p, S)) / r2**2
    assert np.max(np.abs(axa - ref)) <= 1e-13 * max(1.0, g * g / r2)
    phi = pot.scalar_potential(g, S, p)
    assert np.max(np.abs(phi @ phi - a2)) <= 1e-13 * max(1.0, g * g / r2)


@settings(max_examples=30, deadline=None)
@given(point_strategy())
def test_potential_is_hermitian_and_transverse(p):
    for S in (spin_half(), spin_one()):
        a = pot.spin_potential(1.3, S, p)
        assert np.allclose(a, np.conj(np.transpose(a, (0, 2, 1))), atol=1e-15)
        assert np.max(np.abs(np.tensordot(p, a, axes=(0, 0)))) < 1e-14


def test_spin_one_square_differs():
    # A.A = g^2 hbar^2/(2 r^2) only for spin 1/2
    a2 = pot.potential_square(1.0, spin_one(), P0)
    assert not np.allclose(a2, a2[0, 0] * np.eye(3))


@pytest.mark.parametrize("g", [0.0, 1.0, 2.0, 3.0, -1.5])
def test_magnetic_field_closed_form(g):
    ft = pot.field_tensor(g, spin_half(), P0)
    assert np.max(np.abs(ft.B - ft.B_fd)) < 1e-9
    if g == 2.0:
        assert np.max(np.abs(ft.B)) == 0.0


@pytest.mark.parametrize("g", [0.5, 1.0, 2.0, 3.0])
@pytest.mark.parametrize("hbar", [1.0, 0.6])
def test_electric_field_from_definition(g, hbar):
    units = UnitConventions(hbar=hbar)
    S = spin_half(units)
    ft = pot.field_tensor(g, S, P0, units)
    r2 = P0 @ P0
    rs = dot(P0, S)
    derived = math.sqrt(2) * g * ((g - 1) * r2 * S + (2 - g) * np.multiply.outer(P0, rs)) / r2**2
    assert np.max(np.abs(ft.E_definition - derived)) < 1e-9


def test_electric_field_short_form_is_not_the_definition():
    ft = pot.field_tensor(1.0, spin_half(), P0)
    assert np.max(np.abs(ft.E - ft.E_definition)) > 0.1


def test_generator_commutator_form():
    for g in (0.4, 1.7, 3.0):
        assert np.max(np.abs(pot.generator_matrix_forms(g, P0) - pot.spin_potential(g, spin_half(), P0))) < 1e-15


@settings(max_examples=25, deadline=None)
@given(point_strategy())
def test_wu_yang_curl_and_gauge_difference(p):
    g = 0.8
    c = curl(lambda q: pot.wu_yang("a", g, q), p, 1e-3, order=4)
    assert np.allclose(c, pot.monopole_field(g, p), rtol=1e-6, atol=1e-8)
    sp = pot.SphericalPoint.from_cartesian(p)
    diff = pot.wu_yang("a", g, p) - pot.wu_yang("b", g, p)
    e_phi = pot.spherical_basis(sp.theta, sp.phi)[2]
    assert np.allclose(diff, 2 * g / (sp.r * math.sin(sp.theta)) * e_phi, rtol=1e-12)


def test_wu_yang_near_north_axis_is_regular():
    p = pot.SphericalPoint(1.0, 1e-9, 0.3)
    assert np.linalg.norm(pot.wu_yang("a", 1.0, p)) < 1e-8


@pytest.mark.parametrize("C,region", [(-1.0, "a"), (1.0, "b")])
def test_extract_potential_matches_patch(C, region):
    rng = np.random.default_rng(3)
    G = pot.g_family("case_ii2_a", G_r=-1.0, C=C)
    for sp in pot.theorem1_samples(10, rng):
        assert np.max(np.abs(pot.extract_potential(G, sp, scale=1.4) - pot.wu_yang(region, 1.4, sp))) < 1e-12


@pytest.mark.parametrize("label", ["case_i", "case_ii2_a", "case_ii2_b", "case_ii3", "case_iiD_a", "case_iiD_b",
                                   "case_iiD_c"])
def test_theorem1_families(label):
    rng = np.random.default_rng(11)
    params = {"G_r": lambda r: -1.0 / (1 + r * r)} if label != "case_i" else {"W1": lambda r, f: r * math.cos(f)}
    rep = pot.check_theorem1(pot.g_family(label, params), pot.theorem1_samples(12, rng))
    assert rep.max_residual_cond < 1e-6
    assert rep.max_residual_abelian < 1e-12


def test_theorem1_detects_violation():
    rng = np.random.default_rng(5)
    G = pot.g_family("custom", func=lambda r, t, f: (math.cos(t), 0.0, 0.0))
    assert pot.check_theorem1(G, pot.theorem1_samples(5, rng)).max_residual_cond > 0.1


def test_solenoid_potential():
    spec = pot.SolenoidSpec.from_flux(2.5, 0.4)
    assert spec.flux == pytest.approx(2.5)
    assert spec.flux_ratio() == pytest.approx(2.5 / (2 * math.pi))
    outside = np.array([1.0, 0.5, -0.3])
    assert np.allclose(curl(lambda q: pot.magnetic_ab(spec, q), outside, 1e-3), 0.0, atol=1e-10)
    inside = np.array([0.1, -0.15, 0.7])
    assert np.allclose(curl(lambda q: pot.magnetic_ab(spec, q), inside, 1e-3), [0, 0, spec.B], atol=1e-9)
    a = pot.magnetic_ab(spec, outside)
    assert abs(np.linalg.norm(a) - 2.5 / (2 * math.pi * math.hypot(1.0, 0.5))) < 1e-15


def test_errors():
    with pytest.raises(SingularityError):
        pot.spin_potential(1.0, spin_half(), [0.0, 0.0, 0.01])
    with pytest.raises(SingularityError):
        pot.wu_yang("b", 1.0, pot.SphericalPoint(1.0, 0.01, 0.0))
    with pytest.raises(UsageError):
        pot.wu_yang("c", 1.0, P0)
    with pytest.raises(UsageError):
        pot.g_family("case_v")
    with pytest.raises(UsageError):
        pot.g_family("custom")
    with pytest.raises(SingularityError):
        pot.magnetic_ab(pot.SolenoidSpec(1.0, 0.5), [0.0, 0.0, 1.0])
    with pytest.raises(SingularityError):
        pot.SphericalPoint.from_cartesian([0.0, 0.0, 0.0])
