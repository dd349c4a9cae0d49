import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from spinab import qalgebra as qa

finite = st.floats(-3.0, 3.0, allow_nan=False)
vec3 = arrays(np.float64, 3, elements=finite)


@pytest.mark.parametrize("spin", [qa.spin_half, qa.spin_one])
@pytest.mark.parametrize("hbar", [1.0, 0.37])
def test_spin_cross_spin(spin, hbar):
    units = qa.UnitConventions(hbar=hbar)
    S = spin(units)
    assert np.max(np.abs(qa.cross(S, S) - 1j * hbar * S)) <= 1e-14


def test_spin_casimir():
    for spin, s in [(qa.spin_half, 0.5), (qa.spin_one, 1.0)]:
        S = spin()
        n = S.shape[1]
        assert np.allclose(qa.dot(S, S), s * (s + 1) * np.eye(n), atol=1e-15)


def test_pauli_products():
    sx, sy, sz = qa.pauli()
    assert np.array_equal(sx @ sy, 1j * sz)
    assert np.array_equal(qa.anticommutator(sx, sy), np.zeros((2, 2)))
    assert np.array_equal(qa.commutator(sz, sx), 2j * sy)


@settings(max_examples=50, deadline=None)
@given(vec3, vec3)
def test_pauli_dot_identity(a, b):
    # (a.sigma)(b.sigma) = a.b + i (a x b).sigma
    s = qa.pauli()
    lhs = qa.dot(a, s) @ qa.dot(b, s)
    rhs = np.dot(a, b) * np.eye(2) + 1j * qa.dot(np.cross(a, b), s)
    assert np.max(np.abs(lhs - rhs)) <= 1e-13


@settings(max_examples=40, deadline=None)
@given(vec3.filter(lambda v: np.linalg.norm(v) > 1e-3))
def test_unit_pauli_squares_to_one(v):
    n = v / np.linalg.norm(v)
    m = qa.dot(n, qa.pauli())
    assert np.max(np.abs(m @ m - np.eye(2))) <= 1e-14


def test_cross_keeps_operand_order():
    S = qa.spin_half()
    # for commuting scalars a x b = -b x a; for matrices the difference is a commutator
    assert not np.allclose(qa.cross(S, S), -qa.cross(S, S))
    r = np.array([0.3, -1.2, 0.5])
    assert np.allclose(qa.cross(r, S), -qa.cross(S, r))


def test_scalar_vectors_promote():
    a = qa.as_matrix_vector([1.0, 2.0, 3.0], 2)
    assert a.shape == (3, 2, 2)
    assert np.array_equal(a[1], 2 * np.eye(2))


def test_shape_errors():
    with pytest.raises(qa.ShapeError):
        qa.cross(qa.spin_half(), qa.spin_one())
    with pytest.raises(qa.ShapeError):
        qa.commutator(np.eye(2), np.eye(3))
    with pytest.raises(qa.ShapeError):
        qa.as_matrix_vector(np.zeros((2, 2)))
    with pytest.raises(qa.ShapeError):
        qa.tensor()


def test_tensor_ordering():
    sx, _, sz = qa.pauli()
    t = qa.tensor(sz, sx)
    assert np.array_equal(t, np.kron(sz, sx))
    assert qa.tensor(sz, sx, np.eye(2)).shape == (8, 8)


def test_dirac_matrices():
    alpha = qa.dirac_alpha()
    beta = qa.dirac_beta()
    I4 = np.eye(4)
    for i in range(3):
        assert np.array_equal(qa.anticommutator(alpha[i], beta), np.zeros((4, 4)))
        for j in range(3):
            assert np.array_equal(qa.anticommutator(alpha[i], alpha[j]), 2 * (i == j) * I4)
    assert np.array_equal(beta @ beta, I4)


def test_units():
    u = qa.UnitConventions(hbar=2.0)
    assert u.h == pytest.approx(4 * np.pi)
    with pytest.raises(ValueError):
        qa.UnitConventions(mass=0.0)
