"""Dirac Hamiltonian of a particle coupled to a spin source.

State space: Dirac(4) x source spin(2) = 8 components. The Dirac factor is
itself (2 x particle spin), so the Kronecker order is
[Dirac outer] x [particle spin sigma2] x [source spin sigma1]. Two-spin
operators without the Dirac factor act on the 4-dim [sigma2] x [sigma1]
space.

    H = sigma_x x [sigma2.p - (g hbar/2) r.(sigma1 x sigma2)/r^2] + beta M
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import diffops as d
from .diffops import FDScheme, DEFAULT_SCHEME, MatrixFn, Op, VecOp
from .errors import UsageError
from .potentials import _radius
from .qalgebra import DEFAULT_UNITS, UnitConventions, cross, dot, pauli

__all__ = [
    "sigma1",
    "sigma2",
    "dirac_alpha_full",
    "dirac_beta_full",
    "dirac_hamiltonian",
    "dirac_square_rhs",
    "dirac_square_check",
    "dm_matrix",
    "alpha_dot_potential",
    "interaction_terms",
    "InteractionTerm",
    "interaction_catalogue",
    "HeisenbergReport",
    "heisenberg_checks",
    "SquareReport",
]

_I2 = np.eye(2, dtype=complex)
_SX = pauli()[0]
_SZ = pauli()[2]


def sigma1(with_dirac: bool = True) -> np.ndarray:
    """Source-spin Pauli vector; 8x8 with the Dirac factor, else 4x4."""
    s = np.stack([np.kron(_I2, p) for p in pauli()])
    return np.stack([np.kron(_I2, m) for m in s]) if with_dirac else s


def sigma2(with_dirac: bool = True) -> np.ndarray:
    """Particle-spin Pauli vector; 8x8 with the Dirac factor, else 4x4."""
    s = np.stack([np.kron(p, _I2) for p in pauli()])
    return np.stack([np.kron(_I2, m) for m in s]) if with_dirac else s


def dirac_alpha_full() -> np.ndarray:
    """alpha_i = sigma_x x sigma2_i on the 8-dim space."""
    return np.stack([np.kron(_SX, m) for m in sigma2(False)])


def dirac_beta_full() -> np.ndarray:
    return np.kron(_SZ, np.eye(4, dtype=complex))


def _sx_full():
    return np.kron(_SX, np.eye(4, dtype=complex))


def dm_matrix(p, with_dirac: bool = False) -> np.ndarray:
    """r.(sigma1 x sigma2)/r^2."""
    p = np.asarray(p, dtype=float)
    r = _radius(p)
    s1, s2 = sigma1(with_dirac), sigma2(with_dirac)
    return dot(p, cross(s1, s2)) / r**2


def _source_potential(g, p, units, with_dirac=True):
    """g (r x S1)/r^2 with S1 = (hbar/2) sigma1."""
    p = np.asarray(p, dtype=float)
    r = _radius(p)
    s1 = 0.5 * units.hbar * sigma1(with_dirac)
    return g * cross(p, s1) / r**2


def alpha_dot_potential(g: float, p, units: UnitConventions = DEFAULT_UNITS) -> np.ndarray:
    """sum_i alpha_i A_i, built directly from the 8x8 matrices."""
    a = _source_potential(g, p, units)
    al = dirac_alpha_full()
    return sum(al[i] @ a[i] for i in range(3))


def dirac_hamiltonian(g: float, M: float, units: UnitConventions = DEFAULT_UNITS) -> Op:
    """H = sum_i alpha_i p_i - (g hbar/2) sigma_x x r.(sigma1 x sigma2)/r^2 + beta M."""
    kin = d.vdot(_two_spin_vec(dirac_alpha_full()), d.momentum(units))
    sx = _sx_full()
    dm = MatrixFn(lambda q: -0.5 * g * units.hbar * sx @ dm_matrix(q, True), "dm")
    beta = dirac_beta_full()
    mass = MatrixFn(lambda q: M * beta, "beta_M")
    return kin + dm + mass


def _two_spin_vec(mats) -> VecOp:
    return VecOp([MatrixFn(lambda q, m=m: m, "s") for m in mats])


def _r_dot(vec_mats):
    return MatrixFn(lambda q: dot(q, vec_mats), "r.s")


def _inv_r(n):
    return MatrixFn(lambda q: 1.0 / _radius(q) ** n, f"r^-{n}")


def dirac_square_rhs(g: float, M: float, units: UnitConventions = DEFAULT_UNITS) -> Op:
    """1 x [p^2 + g^2 hbar^2/2r^2 + (g hbar/r^2) sigma1.l - (hbar^2 g(g-2)/2r^4)(r.s1)(r.s2)] + M^2."""
    hb = units.hbar
    p = d.momentum(units)
    ell = d.angular_momentum(units)
    s1 = sigma1(True)
    s2 = sigma2(True)
    p2 = d.vdot(p, p)
    cent = MatrixFn(lambda q: g * g * hb * hb / (2.0 * (q @ q)), "cent")
    so = (g * hb) * (_inv_r(2) * d.vdot(_two_spin_vec(s1), ell))
    cross_term = MatrixFn(
        lambda q: -(hb * hb * g * (g - 2.0) / (2.0 * (q @ q) ** 2)) * dot(q, s1) @ dot(q, s2), "rs1rs2")
    return p2 + cent + so + cross_term + M * M


@dataclass(frozen=True)
class SquareReport:
    g: float
    M: float
    max_residual: float
    n_evals: int


def dirac_square_check(g: float, M: float, fields, points, scheme: FDScheme = DEFAULT_SCHEME,
                       units: UnitConventions = DEFAULT_UNITS) -> SquareReport:
    """max ||H(Hf) - RHS f|| / ||f|| over fields x points."""
    H = dirac_hamiltonian(g, M, units)
    HH = H * H
    rhs = dirac_square_rhs(g, M, units)
    worst = 0.0
    n = 0
    for f in fields:
        for p in points:
            lhs = d.op_apply(HH, f, p, scheme)
            r = d.op_apply(rhs, f, p, scheme)
            worst = max(worst, d.relative_residual(lhs, r, ref=np.linalg.norm(f(p))))
            n += 1
    return SquareReport(g, M, worst, n)


# ---------------------------------------------------------------------------
# interaction terms on the 4-dim two-spin space


def interaction_terms(g: float, units: UnitConventions = DEFAULT_UNITS) -> dict:
    """The six spin-potential interaction terms as operators (4-dim fields).

    Keys h1..h6 follow the definitions (A = g(r x S1)/r^2):
    h1 = A.p, h2 = p.A, h3 = A.A, h4 = i sigma2.(A x p),
    h5 = i sigma2.(p x A), h6 = i sigma2.(A x A).
    ``h1_closed``, ``h3_closed``, ``h4_expanded``, ``h5_closed``,
    ``h6_closed`` are the simplified forms; ``cross_term`` is
    -h4 - h5 + h6, the combination entering H^2, and ``cross_term_closed``
    its closed form -(hbar^2 g(g-2)/2r^4)(r.s1)(r.s2). The plain sum
    h4 + h5 + h6 (``h456_sum``) equals -(hbar^2 g(g+2)/2r^4)(r.s1)(r.s2).
    """
    hb = units.hbar
    s1 = sigma1(False)
    s2 = sigma2(False)
    p = d.momentum(units)
    ell = d.angular_momentum(units)
    A = d.matrix_vector(lambda q: _source_potential(g, q, units, with_dirac=False), "A")
    S2 = _two_spin_vec(s2)
    S1 = _two_spin_vec(s1)
    h1 = d.vdot(A, p)
    h2 = d.vdot(p, A)
    h3 = d.vdot(A, A)
    h4 = 1j * d.vdot(S2, d.vcross(A, p))
    h5 = 1j * d.vdot(S2, d.vcross(p, A))
    h6 = 1j * d.vdot(S2, d.vcross(A, A))
    rs1rs2 = MatrixFn(lambda q: dot(q, s1) @ dot(q, s2) / (q @ q) ** 2, "rs1rs2/r4")
    r_dot_p = d.vdot(d.position(), p)
    s1s2 = MatrixFn(lambda q: dot(s1, s2), "s1.s2")
    l_dot_s1xs2 = d.vdot(ell, _two_spin_vec(cross(s1, s2)))
    rs1 = _r_dot(s1)
    ps2 = d.vdot(p, S2)
    h4_exp = (0.5j * g * hb) * (_inv_r(2) * (r_dot_p * s1s2 + l_dot_s1xs2 - rs1 * ps2))
    out = {
        "h1": h1,
        "h2": h2,
        "h3": h3,
        "h4": h4,
        "h5": h5,
        "h6": h6,
        "h1_closed": (-0.5 * g * hb) * (_inv_r(2) * d.vdot(S1, ell)),
        "h3_closed": MatrixFn(lambda q: g * g * hb * hb / (2.0 * (q @ q)), "h3"),
        "h4_expanded": h4_exp,
        "h5_closed": -1.0 * h4 + (-hb * hb * g) * rs1rs2,
        "h6_closed": (-0.5 * hb * hb * g * g) * rs1rs2,
        "cross_term": -1.0 * h4 - h5 + h6,
        "cross_term_closed": (-0.5 * hb * hb * g * (g - 2.0)) * rs1rs2,
        "h456_sum": h4 + h5 + h6,
        "h456_sum_closed": (-0.5 * hb * hb * g * (g + 2.0)) * rs1rs2,
    }
    return out


@dataclass(frozen=True)
class InteractionTerm:
    label: str
    expression: str
    operator: Op = field(repr=False)
    matrix: object = field(default=None, repr=False)

    def at(self, p) -> np.ndarray:
        """Matrix at p for the terms without derivatives."""
        if self.matrix is None:
            raise UsageError(f"{self.label} contains derivatives; apply it with diffops")
        return self.matrix(np.asarray(p, dtype=float))


def interaction_catalogue(units: UnitConventions = DEFAULT_UNITS) -> list:
    """Two-spin interaction types, in a fixed order, acting on 4-dim fields."""
    s1 = sigma1(False)
    s2 = sigma2(False)
    ell = d.angular_momentum(units)

    def exchange(q):
        return dot(s1, s2)

    def dm(q):
        return dot(q, cross(s1, s2))

    def dipole(q):
        return dot(q, s1) @ dot(q, s2) / (q @ q)

    def tensor_force(q):
        return 3.0 * dipole(q) - exchange(q)

    rows = [
        ("spin_spin_exchange", "s1.s2", exchange),
        ("spin_orbital", "s1.l", None),
        ("dm_type", "r.(s1 x s2)", dm),
        ("dipole_dipole", "(r.s1)(r.s2)/r^2", dipole),
        ("generalized_spin_orbital", "l.(s1 x s2)", None),
        ("tensor_force", "3(r.s1)(r.s2)/r^2 - s1.s2", tensor_force),
    ]
    ops = {
        "spin_orbital": d.vdot(_two_spin_vec(s1), ell),
        "generalized_spin_orbital": d.vdot(ell, _two_spin_vec(cross(s1, s2))),
    }
    out = []
    for label, expr, fn in rows:
        op = ops[label] if fn is None else MatrixFn(fn, label)
        out.append(InteractionTerm(label, expr, op, fn))
    return out


# ---------------------------------------------------------------------------
# Heisenberg equations for the spin-source Hamiltonian


@dataclass(frozen=True)
class HeisenbergReport:
    g: float
    velocity_residual: float
    force_residual: float
    n_evals: int


def heisenberg_checks(g: float, scheme: FDScheme = DEFAULT_SCHEME, fields=None, points=None,
                      units: UnitConventions = DEFAULT_UNITS, seed: int = 0) -> HeisenbergReport:
    """Residuals of (1/i hbar)[r, H] = Pi/M and [Pi, Pi^2] = i hbar (Pi x B - B x Pi).

    H = Pi^2/2M, Pi = p - A, B = g(g-2)(r.S) r/r^4; two-component fields.
    Residuals are relative to ||rhs||, or to ||f|| where the right side
    vanishes identically (the force identity at g = 0 and g = 2).
    """
    from .potentials import magnetic_closed_form
    from .qalgebra import spin_half

    rng = np.random.default_rng(seed)
    if fields is None:
        fields = d.gaussian_test_fields(3, 2, rng)
    if points is None:
        points = d.random_points(3, rng)
    S = spin_half(units)
    hb = units.hbar
    Pi = d.canonical_momentum(g, S, units)
    pi2 = d.vdot(Pi, Pi)
    H = (1.0 / (2.0 * units.mass)) * pi2
    R = d.position()
    Bv = d.matrix_vector(lambda q: magnetic_closed_form(g, S, q), "B")
    force_rhs = (1j * hb) * (d.vcross(Pi, Bv) - d.vcross(Bv, Pi))
    zero_force = g == 0 or g == 2
    wv = 0.0
    wf = 0.0
    n = 0
    for f in fields:
        for p in points:
            fn = np.linalg.norm(f(p))
            for i in range(3):
                lhs = d.op_apply((1.0 / (1j * hb)) * (R[i] * H - H * R[i]), f, p, scheme)
                rhs = d.op_apply((1.0 / units.mass) * Pi[i], f, p, scheme)
                wv = max(wv, d.relative_residual(lhs, rhs))
                lhs = d.op_apply(Pi[i] * pi2 - pi2 * Pi[i], f, p, scheme)
                rhs = d.op_apply(force_rhs[i], f, p, scheme)
                wf = max(wf, d.relative_residual(lhs, rhs, ref=fn if zero_force else None))
                n += 1
    return HeisenbergReport(g, wv, wf, n)
