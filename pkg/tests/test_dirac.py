import numpy as np
import pytest

from spinab import diffops as d
from spinab import dirac as dc
from spinab.errors import UsageError
from spinab.qalgebra import UnitConventions, anticommutator, commutator, cross, dot

P0 = np.array([0.7, -0.4, 0.9])


def _fields_points(seed, dim, nf=2, npts=3):
    rng = np.random.default_rng(seed)
    return d.gaussian_test_fields(nf, dim, rng), d.random_points(npts, rng)


def test_clifford_algebra_8d():
    al = dc.dirac_alpha_full()
    be = dc.dirac_beta_full()
    I8 = np.eye(8)
    for i in range(3):
        assert np.array_equal(anticommutator(al[i], be), np.zeros((8, 8)))
        for j in range(3):
            assert np.array_equal(anticommutator(al[i], al[j]), 2 * (i == j) * I8)
    assert np.array_equal(be @ be, I8)


def test_two_spins_commute():
    s1, s2 = dc.sigma1(), dc.sigma2()
    for i in range(3):
        for j in range(3):
            assert np.array_equal(commutator(s1[i], s2[j]), np.zeros((8, 8)))
        assert np.array_equal(commutator(s1[i], dc.dirac_beta_full()), np.zeros((8, 8)))


@pytest.mark.parametrize("g,hbar", [(1.0, 1.0), (2.5, 0.6)])
def test_alpha_dot_potential_is_dm_coupling(g, hbar):
    units = UnitConventions(hbar=hbar)
    sx = np.kron(np.array([[0, 1], [1, 0]]), np.eye(4))
    ref = 0.5 * g * hbar * sx @ dc.dm_matrix(P0, True)
    assert np.max(np.abs(dc.alpha_dot_potential(g, P0, units) - ref)) < 1e-15


def test_dm_matrix_hermitian():
    m = dc.dm_matrix(P0)
    assert np.allclose(m, m.conj().T, atol=1e-15)
    r2 = P0 @ P0
    ref = dot(P0, cross(dc.sigma1(False), dc.sigma2(False))) / r2
    assert np.allclose(m, ref)


@pytest.mark.parametrize("g", [0.0, 1.0, 2.0, 3.0])
def test_dirac_square(g):
    fields, pts = _fields_points(int(g) + 10, 8, nf=1, npts=2)
    for M in (0.0, 1.3):
        rep = dc.dirac_square_check(g, M, fields, pts)
        assert rep.max_residual < 1e-6
        assert rep.n_evals == 2


@pytest.mark.parametrize("g", [1.0, 2.0, 3.0])
@pytest.mark.parametrize("pair", [("h1", "h2"), ("h1", "h1_closed"), ("h3", "h3_closed"), ("h4", "h4_expanded"),
                                  ("h5", "h5_closed"), ("h6", "h6_closed"), ("cross_term", "cross_term_closed"),
                                  ("h456_sum", "h456_sum_closed")])
def test_interaction_terms(g, pair):
    terms = dc.interaction_terms(g)
    fields, pts = _fields_points(3, 4)
    a, b = (terms[k] for k in pair)
    for f in fields:
        for p in pts:
            lhs = d.op_apply(a, f, p)
            rhs = d.op_apply(b, f, p)
            assert d.relative_residual(lhs, rhs, ref=max(np.linalg.norm(rhs), np.linalg.norm(f(p)))) < 1e-6


def test_plain_cross_sum_differs_from_square_combination():
    terms = dc.interaction_terms(1.0)
    fields, pts = _fields_points(4, 4, nf=1, npts=1)
    f, p = fields[0], pts[0]
    plain = d.op_apply(terms["h456_sum"], f, p)
    signed = d.op_apply(terms["cross_term"], f, p)
    assert np.linalg.norm(plain - signed) > 0.1 * np.linalg.norm(f(p))


def test_cross_term_vanishes_at_g2():
    terms = dc.interaction_terms(2.0)
    fields, pts = _fields_points(5, 4, nf=1)
    for p in pts:
        assert np.linalg.norm(d.op_apply(terms["cross_term"], fields[0], p)) < 1e-6


def test_interaction_catalogue():
    cat = dc.interaction_catalogue()
    assert [t.label for t in cat] == ["spin_spin_exchange", "spin_orbital", "dm_type", "dipole_dipole",
                                     "generalized_spin_orbital", "tensor_force"]
    ex = cat[0].at(P0)
    assert np.allclose(np.sort(np.linalg.eigvalsh(ex)), [-3, 1, 1, 1])
    tf = cat[5].at(P0)
    assert abs(np.trace(tf)) < 1e-14
    assert np.allclose(tf, tf.conj().T)
    with pytest.raises(UsageError):
        cat[1].at(P0)


@pytest.mark.parametrize("g", [0.0, 1.0, 2.0, 3.0])
def test_heisenberg_identities(g):
    rep = dc.heisenberg_checks(g, seed=7)
    assert rep.velocity_residual < 5e-3
    assert rep.force_residual < 5e-3
