"""Position-dependent potentials and fields.

Spin vector potential, monopole patch potentials, the solenoid potential,
the matrix scalar potential, the G-field families that generate potentials
via A = c (r x G)/r^2, and the derived field tensor. All vectors are
returned in Cartesian components.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import _fd
from .errors import SingularityError, UsageError
from .qalgebra import DEFAULT_UNITS, UnitConventions, cross, dot

__all__ = [
    "R_MIN",
    "SIN_FLOOR",
    "SphericalPoint",
    "spherical_basis",
    "to_cartesian",
    "spin_potential",
    "potential_square",
    "potential_self_cross",
    "scalar_potential",
    "wu_yang",
    "monopole_field",
    "SolenoidSpec",
    "magnetic_ab",
    "GField",
    "G_FAMILIES",
    "g_family",
    "Theorem1Report",
    "check_theorem1",
    "theorem1_samples",
    "extract_potential",
    "FieldTensor",
    "field_tensor",
    "magnetic_closed_form",
    "generator_matrix_forms",
]

R_MIN = 0.05
SIN_FLOOR = 0.05
AXIS_FLOOR = 1e-6


@dataclass(frozen=True)
class SphericalPoint:
    r: float
    theta: float
    phi: float

    def __post_init__(self):
        if not self.r > 0:
            raise SingularityError("r must be positive")

    @property
    def cartesian(self) -> np.ndarray:
        st = math.sin(self.theta)
        return np.array([
            self.r * st * math.cos(self.phi),
            self.r * st * math.sin(self.phi),
            self.r * math.cos(self.theta),
        ])

    @classmethod
    def from_cartesian(cls, p) -> "SphericalPoint":
        x, y, z = (float(c) for c in p)
        r = math.sqrt(x * x + y * y + z * z)
        if r == 0.0:
            raise SingularityError("origin has no spherical angles")
        return cls(r, math.acos(max(-1.0, min(1.0, z / r))), math.atan2(y, x))


def _as_spherical(p) -> SphericalPoint:
    return p if isinstance(p, SphericalPoint) else SphericalPoint.from_cartesian(p)


def _as_cartesian(p) -> np.ndarray:
    return p.cartesian if isinstance(p, SphericalPoint) else np.asarray(p, dtype=float)


def spherical_basis(theta: float, phi: float):
    """Unit vectors (e_r, e_theta, e_phi) in Cartesian components."""
    st, ct = math.sin(theta), math.cos(theta)
    sp, cp = math.sin(phi), math.cos(phi)
    return (
        np.array([st * cp, st * sp, ct]),
        np.array([ct * cp, ct * sp, -st]),
        np.array([-sp, cp, 0.0]),
    )


def to_cartesian(components, theta: float, phi: float) -> np.ndarray:
    """Spherical components (v_r, v_theta, v_phi) -> Cartesian. Entries may be matrices."""
    er, et, ep = spherical_basis(theta, phi)
    basis = np.stack([er, et, ep])  # rows = unit vectors
    comps = [np.asarray(c) for c in components]
    return sum(np.multiply.outer(basis[k], comps[k]) for k in range(3))


def _radius(p, floor=R_MIN) -> float:
    r = float(np.linalg.norm(p))
    if r < floor:
        raise SingularityError(f"|r| = {r:.3g} is below the floor {floor}")
    return r


# ---------------------------------------------------------------------------
# spin source


def spin_potential(g: float, spin, p) -> np.ndarray:
    """Matrix-valued potential g (r x S)/r^2, shape (3, n, n)."""
    p = _as_cartesian(p)
    r = _radius(p)
    return g * cross(p, spin) / r**2


def potential_square(g: float, spin, p) -> np.ndarray:
    """A.A by ordered matrix products (no closed form used)."""
    a = spin_potential(g, spin, p)
    return dot(a, a)


def potential_self_cross(g: float, spin, p) -> np.ndarray:
    a = spin_potential(g, spin, p)
    return cross(a, a)


def scalar_potential(g: float, spin, p) -> np.ndarray:
    """phi = sqrt(2) g (r.S)/r^2."""
    p = _as_cartesian(p)
    r = _radius(p)
    return math.sqrt(2.0) * g * dot(p, spin) / r**2


def magnetic_closed_form(g: float, spin, p) -> np.ndarray:
    """Closed form of curl A - (i/hbar) A x A, namely g(g-2)(r.S) r / r^4."""
    p = _as_cartesian(p)
    r = _radius(p)
    rs = dot(p, spin)
    return g * (g - 2.0) / r**4 * np.multiply.outer(p, rs)


@dataclass(frozen=True)
class FieldTensor:
    """Effective fields of the spin source.

    ``B`` is the closed form, ``B_fd`` the finite-difference curl plus exact
    A x A. ``E`` is -phi r/r^2; ``E_definition`` evaluates
    -grad(phi) - (i/hbar)[phi, A] with a finite-difference gradient.
    """

    B: np.ndarray
    B_fd: np.ndarray
    E: np.ndarray
    E_definition: np.ndarray


def field_tensor(g: float, spin, p, units: UnitConventions = DEFAULT_UNITS, h: float = 1e-3) -> FieldTensor:
    p = _as_cartesian(p)
    r = _radius(p)
    hbar = units.hbar
    b_closed = magnetic_closed_form(g, spin, p)
    curl_a = _fd.curl(lambda q: spin_potential(g, spin, q), p, h, order=4)
    b_fd = curl_a - (1j / hbar) * potential_self_cross(g, spin, p)
    phi = scalar_potential(g, spin, p)
    e_closed = -np.multiply.outer(p, phi) / r**2
    grad_phi = _fd.gradient(lambda q: scalar_potential(g, spin, q), p, h, order=4)
    a = spin_potential(g, spin, p)
    comm = np.stack([phi @ a[i] - a[i] @ phi for i in range(3)])
    # static source: the -dA/dt contribution is identically zero
    e_def = -grad_phi - (1j / hbar) * comm
    return FieldTensor(b_closed, b_fd, e_closed, e_def)


def generator_matrix_forms(g: float, p, units: UnitConventions = DEFAULT_UNITS) -> np.ndarray:
    """(-i g hbar/4)[sigma, sigma.r/r^2], the commutator form with no derivatives."""
    from .qalgebra import pauli

    p = _as_cartesian(p)
    r = _radius(p)
    s = pauli()
    sr = dot(p, s) / r**2
    return np.stack([(-1j * g * units.hbar / 4.0) * (s[i] @ sr - sr @ s[i]) for i in range(3)])


# ---------------------------------------------------------------------------
# monopole patches


def wu_yang(region: str, g_mono: float, p) -> np.ndarray:
    """Patch potential of a monopole; region 'a' is regular on the north axis.

    A_a = (g/r)(1 - cos t)/sin t e_phi, A_b = -(g/r)(1 + cos t)/sin t e_phi.
    """
    sp = _as_spherical(p)
    if sp.r < R_MIN:
        raise SingularityError(f"r = {sp.r:.3g} below floor {R_MIN}")
    t = sp.theta
    if region == "a":
        if t > math.pi - SIN_FLOOR:
            raise SingularityError("patch a is singular at the south pole")
        # (1 - cos t)/sin t = tan(t/2), stable near t = 0
        mag = g_mono / sp.r * math.tan(0.5 * t)
    elif region == "b":
        if t < SIN_FLOOR:
            raise SingularityError("patch b is singular at the north pole")
        mag = -g_mono / sp.r / math.tan(0.5 * t)
    else:
        raise UsageError(f"unknown region {region!r}; expected 'a' or 'b'")
    return mag * spherical_basis(t, sp.phi)[2]


def monopole_field(g_mono: float, p) -> np.ndarray:
    p = _as_cartesian(p)
    r = _radius(p)
    return g_mono * p / r**3


# ---------------------------------------------------------------------------
# solenoid


@dataclass(frozen=True)
class SolenoidSpec:
    """Infinite solenoid along z with uniform interior field B."""

    B: float
    r0: float

    def __post_init__(self):
        if not self.r0 > 0:
            raise UsageError("solenoid radius must be positive")

    @property
    def flux(self) -> float:
        return self.B * math.pi * self.r0**2

    @classmethod
    def from_flux(cls, flux: float, r0: float) -> "SolenoidSpec":
        return cls(flux / (math.pi * r0**2), r0)

    def flux_ratio(self, units: UnitConventions = DEFAULT_UNITS) -> float:
        """e Phi / (h c)."""
        return units.charge_e * self.flux / (units.h * units.light_c)


def magnetic_ab(spec: SolenoidSpec, p) -> np.ndarray:
    """Solenoid potential: (B rho/2) e_phi inside, Phi/(2 pi rho) e_phi outside."""
    x, y, _ = _as_cartesian(p)
    rho = math.hypot(x, y)
    if rho < AXIS_FLOOR:
        raise SingularityError("on the solenoid axis")
    if rho == spec.r0:
        raise SingularityError("on the solenoid wall")
    if rho < spec.r0:
        mag = 0.5 * spec.B * rho
    else:
        mag = spec.flux / (2.0 * math.pi * rho)
    return mag * np.array([-y / rho, x / rho, 0.0])


# ---------------------------------------------------------------------------
# G fields


def _callable(v, nargs):
    if callable(v):
        return v
    c = float(v)
    return (lambda *a: c) if nargs else c


@dataclass
class GField:
    """A vector field given by spherical components (G_r, G_theta, G_phi).

    ``func(r, theta, phi)`` returns the three components; each may be a
    number or a square matrix.
    """

    label: str
    params: dict
    func: Callable = field(repr=False)

    def spherical(self, p):
        sp = _as_spherical(p)
        return self.func(sp.r, sp.theta, sp.phi)

    def cartesian(self, p) -> np.ndarray:
        sp = _as_spherical(p)
        return to_cartesian(self.func(sp.r, sp.theta, sp.phi), sp.theta, sp.phi)


def _fam_case_i(params):
    w1 = _callable(params.get("W1", 1.0), 2)
    w2 = _callable(params.get("W2", 0.0), 2)
    return lambda r, t, f: (0.0, w1(r, f) / math.sin(t), w2(r, t))


def _fam_case_ii2(default_c):
    def make(params):
        gr = _callable(params.get("G_r", -1.0), 1)
        c = float(params.get("C", default_c))
        return lambda r, t, f: (gr(r), gr(r) * (math.cos(t) + c) / math.sin(t), 0.0)

    return make


def _fam_case_ii3(params):
    gr = _callable(params.get("G_r", -1.0), 1)
    c = float(params.get("C", 0.0))
    return lambda r, t, f: (gr(r), 0.0, -(f + c) * gr(r) * math.sin(t))


def _fam_case_iid_a(params):
    gr = _callable(params.get("G_r", -1.0), 1)
    mu = float(params.get("mu", 0.5))
    c1 = float(params.get("C1", 0.0))
    c2 = float(params.get("C2", 0.0))
    return lambda r, t, f: (
        gr(r),
        mu * gr(r) * (math.cos(t) + c1) / math.sin(t),
        (mu - 1.0) * gr(r) * math.sin(t) * (f + c2),
    )


def _fam_case_iid_b(params):
    gr = _callable(params.get("G_r", -1.0), 1)
    tt = _callable(params.get("T", 1.0), 1)
    c1 = float(params.get("C1", 0.0))
    c2 = float(params.get("C2", 0.0))
    return lambda r, t, f: (
        gr(r),
        tt(r),
        -gr(r) * math.sin(t) * (f + c1) - math.cos(t) * tt(r) * (f + c2),
    )


def _fam_case_iid_c(params):
    gr = _callable(params.get("G_r", -1.0), 1)
    w = _callable(params.get("W", 1.0), 2)
    c = float(params.get("C", 0.0))
    return lambda r, t, f: (gr(r), gr(r) * (math.cos(t) + c) / math.sin(t), w(r, t))


def _fam_custom(params):
    if "func" not in params or not callable(params["func"]):
        raise UsageError("custom G field needs a callable 'func(r, theta, phi)'")
    return params["func"]


G_FAMILIES = {
    "case_i": _fam_case_i,
    "case_ii2_a": _fam_case_ii2(-1.0),
    "case_ii2_b": _fam_case_ii2(1.0),
    "case_ii3": _fam_case_ii3,
    "case_iiD_a": _fam_case_iid_a,
    "case_iiD_b": _fam_case_iid_b,
    "case_iiD_c": _fam_case_iid_c,
    "custom": _fam_custom,
}


def g_family(label: str, params: dict | None = None, **kw) -> GField:
    """Build a G field from a named family.

    Parameters use the names G_r, C, C1, C2, mu, W1, W2, W, T; radial
    profiles may be numbers or callables of r (W1 of (r, phi); W2 and W of
    (r, theta)).
    """
    if label not in G_FAMILIES:
        raise UsageError(f"unknown G family {label!r}; known: {sorted(G_FAMILIES)}")
    merged = dict(params or {})
    merged.update(kw)
    return GField(label, merged, G_FAMILIES[label](merged))


@dataclass(frozen=True)
class Theorem1Report:
    max_residual_cond: float
    max_residual_abelian: float
    n_samples: int


def theorem1_samples(n: int, rng: np.random.Generator) -> list:
    """Sample points with r in [0.5, 2], sin(theta) >= 0.3, |phi| <= 2.5."""
    out = []
    for _ in range(n):
        r = rng.uniform(0.5, 2.0)
        t = rng.uniform(math.asin(0.3), math.pi - math.asin(0.3))
        f = rng.uniform(-2.5, 2.5)
        out.append(SphericalPoint(r, t, f))
    return out


def check_theorem1(G: GField, samples, h: float = 1e-3) -> Theorem1Report:
    """Residuals of grad(r.G) = r (div G) and of G x G over the samples."""
    def gcart(q):
        return G.cartesian(SphericalPoint.from_cartesian(q))

    def rdotg(q):
        v = gcart(q)
        return np.tensordot(q, v, axes=(0, 0))

    worst_cond = 0.0
    worst_ab = 0.0
    for s in samples:
        sp = _as_spherical(s)
        if sp.r < R_MIN or abs(math.sin(sp.theta)) < SIN_FLOOR:
            raise SingularityError("sample point violates the singularity floors")
        p = sp.cartesian
        lhs = _fd.gradient(rdotg, p, h, order=4)
        div = _fd.divergence(gcart, p, h, order=4)
        rhs = np.multiply.outer(p, div)
        worst_cond = max(worst_cond, float(np.max(np.abs(lhs - rhs))))
        v = gcart(p)
        gx = cross(v, v) if np.ndim(v) == 3 else np.cross(v, v)
        worst_ab = max(worst_ab, float(np.max(np.abs(gx))))
    return Theorem1Report(worst_cond, worst_ab, len(samples))


def extract_potential(G: GField, p, scale: float = 1.0) -> np.ndarray:
    """A = scale (r x G)/r^2 = (scale/r)(G_theta e_phi - G_phi e_theta)."""
    sp = _as_spherical(p)
    _, gt, gp = G.spherical(sp)
    _, et, ep = spherical_basis(sp.theta, sp.phi)
    return scale / sp.r * (np.multiply.outer(ep, np.asarray(gt)) - np.multiply.outer(et, np.asarray(gp)))
