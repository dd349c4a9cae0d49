import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from spinab import diffops as d
from spinab._fd import central_stencil, fornberg_weights
from spinab.errors import DomainError, UsageError
from spinab.qalgebra import UnitConventions, spin_half


def test_fornberg_weights():
    assert fornberg_weights((-1, 0, 1), 1) == pytest.approx((-0.5, 0.0, 0.5))
    assert fornberg_weights((-1, 0, 1), 2) == pytest.approx((1.0, -2.0, 1.0))
    w = fornberg_weights((-2, -1, 0, 1, 2), 1)
    assert w == pytest.approx((1 / 12, -2 / 3, 0.0, 2 / 3, -1 / 12), abs=1e-15)


@pytest.mark.parametrize("order", [2, 4, 6, 8])
def test_stencil_exact_on_polynomials(order):
    offsets, weights = central_stencil(order, 1)
    for k in range(order + 1):
        got = sum(w * o**k for o, w in zip(offsets, weights))
        assert got == pytest.approx(1.0 if k == 1 else 0.0, abs=1e-11)


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 1000))
def test_momentum_matches_analytic_gradient(seed):
    rng = np.random.default_rng(seed)
    f = d.gaussian_test_fields(1, 2, rng)[0]
    p = d.random_points(1, rng)[0]
    got = d.momentum_apply(f, p)
    assert d.relative_residual(got, -1j * f.gradient(p)) < 1e-7


def test_laplacian_of_gaussian():
    rng = np.random.default_rng(1)
    f = d.gaussian_test_fields(1, 1, rng)[0]
    p = np.array([0.2, 0.5, -0.4])
    lap = -d.op_apply(d.vdot(d.momentum(), d.momentum()), f, p)
    dv = p - f.center
    g = 1j * f.k - 2 * dv / f.width**2
    ref = (g @ g - 6 / f.width**2) * f(p)
    assert d.relative_residual(lap, ref) < 1e-6


def test_canonical_commutator():
    rng = np.random.default_rng(2)
    f = d.gaussian_test_fields(1, 2, rng)[0]
    X, P = d.position(), d.momentum()
    for p in d.random_points(3, rng):
        for i in range(3):
            for j in range(3):
                got = d.commutator_apply(X[i], P[j], f, p)
                assert np.allclose(got, 1j * (i == j) * f(p), atol=1e-8)


def test_angular_momentum_algebra():
    rng = np.random.default_rng(4)
    f = d.gaussian_test_fields(1, 1, rng)[0]
    L = d.angular_momentum(UnitConventions(hbar=0.7))
    p = d.random_points(1, rng)[0]
    lhs = d.commutator_apply(L[0], L[1], f, p)
    rhs = 1j * 0.7 * d.op_apply(L[2], f, p)
    assert d.relative_residual(lhs, rhs) < 1e-5


def test_operator_arithmetic():
    rng = np.random.default_rng(6)
    f = d.gaussian_test_fields(1, 2, rng)[0]
    p = np.array([0.4, 0.9, -0.2])
    m = np.array([[1, 2], [0, -1]])
    M = d.const(m)
    op = 2.0 * M + 3.0 - M * d.Identity()
    assert np.allclose(d.op_apply(op, f, p), m @ f(p) + 3.0 * f(p), atol=1e-14)
    assert np.allclose(d.op_apply(-d.Identity(), f, p), -f(p))


def test_spin_hamiltonian_expansion_g2():
    rng = np.random.default_rng(8)
    S = spin_half()
    f = d.gaussian_test_fields(1, 2, rng)[0]
    s = 2 * S
    lhs = d.h_spin(2.0, S)
    rhs = 0.5 * (d.vdot(d.momentum(), d.momentum())
                 + 2.0 * (d.MatrixFn(lambda q: 1 / (q @ q)) * d.vdot(d.VecOp([d.const(m) for m in s]),
                                                                   d.angular_momentum()))
                 + d.MatrixFn(lambda q: 2.0 / (q @ q)))
    for p in d.random_points(3, rng):
        assert d.relative_residual(d.op_apply(lhs, f, p), d.op_apply(rhs, f, p)) < 1e-3


def test_domain_veto():
    f = d.gaussian_test_fields(1, 1, np.random.default_rng(0))[0]
    inside = lambda q: np.linalg.norm(q) > 0.5
    with pytest.raises(DomainError):
        d.op_apply(d.momentum()[0], f, [0.5 + 1e-5, 0.0, 0.0], domain=inside)
    d.op_apply(d.momentum()[0], f, [0.8, 0.0, 0.0], domain=inside)


def test_usage_errors():
    with pytest.raises(UsageError):
        d.FDScheme(order=3)
    with pytest.raises(UsageError):
        d.FDScheme(h1=0.0)
    with pytest.raises(UsageError):
        d.VecOp([d.Identity()])
    with pytest.raises(UsageError):
        d.op_apply("p", lambda q: q, [1.0, 0.0, 0.0])
    with pytest.raises(UsageError):
        d.Identity() * "x"


def test_relative_residual_floor():
    assert d.relative_residual([1e-9], [0.0]) == pytest.approx(0.1)
    assert d.relative_residual([2.0], [1.0], ref=4.0) == pytest.approx(0.25)


def test_random_points_respect_region():
    pts = d.random_points(50, np.random.default_rng(9))
    for p in pts:
        r = np.linalg.norm(p)
        assert 0.6 <= r <= 1.6
        assert np.hypot(p[0], p[1]) / r >= 0.3
