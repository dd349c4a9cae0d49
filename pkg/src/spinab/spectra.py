"""Analytic eigenfunctions of the spin-source and solenoid Hamiltonians.

Spin source: H = (p - A)^2/2M with A = g (r x S)/r^2. Separating in the
spinor harmonics Phi^A (j = l + 1/2) and Phi^B (j = l - 1/2) gives an
effective centrifugal strength

    kappa = l(l+1) + 2 g K + g^2/2,   K = l/2 (A) or -(l+1)/2 (B),

and radial solutions r^{-1/2} J_nu(sqrt(eps) r) with nu = sqrt(1 + 4 kappa)/2,
eps = 2ME/hbar^2. Solenoid: Bessel J_|m + flux_ratio| in the transverse
plane, or plane waves times the phase exp(-i flux_ratio phi).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateInputError, DomainError, RejectedBranchError, SingularityError
from .potentials import AXIS_FLOOR, R_MIN, SphericalPoint
from .qalgebra import DEFAULT_UNITS, UnitConventions
from .specfun import bessel_j, hyp1f1, sph_harm

__all__ = [
    "SpinQN",
    "MagQN",
    "EnergySpec",
    "kappa",
    "bessel_order",
    "angular_spinor",
    "psi_spin",
    "psi_spin_zero_energy",
    "psi_magnetic",
    "psi_magnetic_phase",
    "psi_free",
    "psi_free_plane",
    "negative_energy_radial",
    "degenerate_kummer_limit",
]

BRANCHES = ("A", "B")


@dataclass(frozen=True)
class SpinQN:
    """Quantum numbers (g, l, m, branch) of a spin-source eigenstate.

    Branch A admits -l-1 <= m <= l, branch B (l >= 1) admits -l <= m <= l-1;
    at the ends of the A range one spinor component has zero weight.
    """

    g: int
    l: int
    m: int = 0
    branch: str = "A"

    def __post_init__(self):
        if self.branch not in BRANCHES:
            raise DomainError(f"branch must be 'A' or 'B', got {self.branch!r}")
        if self.l < 0:
            raise DomainError("l must be non-negative")
        if self.branch == "B" and self.l == 0:
            raise DomainError("branch B requires l >= 1")
        lo, hi = (-self.l - 1, self.l) if self.branch == "A" else (-self.l, self.l - 1)
        if not lo <= self.m <= hi:
            raise DomainError(f"m={self.m} outside [{lo}, {hi}] for branch {self.branch}, l={self.l}")

    @property
    def K(self) -> float:
        return self.l / 2.0 if self.branch == "A" else -(self.l + 1) / 2.0

    @property
    def kappa(self) -> float:
        return kappa(self)

    @property
    def nu(self) -> float:
        return bessel_order(self.kappa)


def _kappa_parts(g, l, branch):
    if branch not in BRANCHES:
        raise DomainError(f"branch must be 'A' or 'B', got {branch!r}")
    if branch == "B" and l == 0:
        raise DomainError("branch B requires l >= 1")
    k = l / 2.0 if branch == "A" else -(l + 1) / 2.0
    return k, l * (l + 1) + 2.0 * g * k + g * g / 2.0


def kappa(qn=None, *, g=None, l=None, branch=None) -> float:
    """l(l+1) + 2 g K + g^2/2 for a SpinQN or explicit (g, l, branch)."""
    if qn is not None:
        g, l, branch = qn.g, qn.l, qn.branch
    return _kappa_parts(g, l, branch)[1]


def bessel_order(kap: float) -> float:
    """nu = sqrt(1 + 4 kappa)/2."""
    if kap < -0.25:
        raise DomainError("kappa below -1/4 gives a complex Bessel order")
    return 0.5 * math.sqrt(1.0 + 4.0 * kap)


@dataclass(frozen=True)
class MagQN:
    m: int
    flux_ratio: float
    kz: float = 0.0

    @property
    def nu(self) -> float:
        return abs(self.m + self.flux_ratio)


@dataclass(frozen=True)
class EnergySpec:
    """Energy E and the reduced eigenvalue epsilon."""

    E: float
    epsilon: float

    @classmethod
    def spherical(cls, E: float, units: UnitConventions = DEFAULT_UNITS) -> "EnergySpec":
        return cls(E, 2.0 * units.mass * E / units.hbar**2)

    @classmethod
    def cylindrical(cls, E: float, kz: float, units: UnitConventions = DEFAULT_UNITS) -> "EnergySpec":
        return cls(E, 2.0 * units.mass * E / units.hbar**2 - kz * kz)


def _y(l, m, theta, phi):
    if abs(m) > l:
        return 0.0
    return sph_harm(l, m, theta, phi)


def angular_spinor(qn: SpinQN, theta: float, phi: float) -> np.ndarray:
    """Normalised spinor harmonic Phi^A or Phi^B at (theta, phi)."""
    l, m = qn.l, qn.m
    n = 1.0 / math.sqrt(2 * l + 1)
    if qn.branch == "A":
        a, b = math.sqrt(l + m + 1), math.sqrt(l - m)
    else:
        a, b = -math.sqrt(l - m), math.sqrt(l + m + 1)
    up = a * _y(l, m, theta, phi) if a else 0.0
    dn = b * _y(l, m + 1, theta, phi) if b else 0.0
    return n * np.array([up, dn], dtype=complex)


def _radius(p):
    p = np.asarray(p, dtype=float)
    r = float(np.linalg.norm(p))
    if r < R_MIN:
        raise SingularityError(f"r = {r:.3g} below floor {R_MIN}")
    return p, r


# E < 0: radial candidates r^s exp(-sqrt(-eps) r) w(tau), tau = 2 sqrt(-eps) r


def degenerate_kummer_limit(s: int, tau: float) -> float:
    """lim_{a -> -s} F(a; 2a; tau) for a non-negative integer s.

    Terms k <= s keep the finite ratio (-s)_k/(-2s)_k, terms s < k <= 2s
    vanish, and for k > 2s the vanishing factors a+s and 2a+2s leave 1/2.
    """
    s = int(s)
    if s < 0:
        raise DomainError("s must be a non-negative integer")
    total = 0.0
    coef = 1.0  # ratio of Pochhammer products with the singular factors removed
    fact = 1.0
    tk = 1.0
    for k in range(0, 2000):
        if k > 0:
            j = k - 1
            num = (j - s) if j != s else 1.0
            den = (j - 2 * s) if j != 2 * s else 1.0
            coef *= num / den
            fact *= k
            tk *= tau
        if k <= s:
            term = coef * tk / fact
        elif k <= 2 * s:
            term = 0.0
        else:
            term = 0.5 * coef * tk / fact
        total += term
        if k > 2 * s + 5 and abs(term) <= 1e-17 * abs(total):
            return total
    raise DomainError("degenerate Kummer limit did not converge")


def negative_energy_radial(kap: float, epsilon: float, r: float, which: int,
                           convention: str = "limit") -> float:
    """Radial candidate at E < 0 (epsilon < 0).

    which=1: r^s e^{-b r} F(s+1; 2s+2; tau)
    which=2: r^s e^{-b r} tau^{-2s-1} F(-s; -2s; tau)
    with b = sqrt(-eps), tau = 2 b r and s = (-1 + sqrt(1+4 kappa))/2.
    For integer s the second Kummer function is ill-defined; ``convention``
    chooses the limit along F(a; 2a; tau), a -> -s ("limit") or the
    terminating polynomial ("terminating").
    """
    if not epsilon < 0:
        raise DomainError("negative_energy_radial needs epsilon < 0")
    b = math.sqrt(-epsilon)
    s = 0.5 * (-1.0 + math.sqrt(1.0 + 4.0 * kap))
    tau = 2.0 * b * r
    pre = r**s * math.exp(-b * r)
    if which == 1:
        return pre * hyp1f1(s + 1.0, 2.0 * s + 2.0, tau)
    if which != 2:
        raise DomainError("which must be 1 or 2")
    si = round(s)
    if abs(s - si) < 1e-12:
        if convention == "limit":
            w = degenerate_kummer_limit(si, tau)
        elif convention == "terminating":
            w = hyp1f1(-float(si), -2.0 * si, tau)
        else:
            raise DomainError(f"unknown convention {convention!r}")
    else:
        w = hyp1f1(-s, -2.0 * s, tau)
    return pre * tau ** (-2.0 * s - 1.0) * w


def _negative_energy_diagnostic(kap, epsilon):
    eps_diag = -1.0 / 16.0
    out = {"kappa": kap, "epsilon": epsilon, "probe_epsilon": eps_diag}
    for which in (1, 2):
        r20 = negative_energy_radial(kap, eps_diag, 20.0, which)
        r80 = negative_energy_radial(kap, eps_diag, 80.0, which)
        out[f"growth_w{which}"] = abs(r80) / abs(r20)
    return out


def psi_spin(qn: SpinQN, espec: EnergySpec, p) -> np.ndarray:
    """r^{-1/2} J_nu(sqrt(eps) r) Phi(theta, phi), normalisation 1."""
    if espec.E < 0 or espec.epsilon < 0:
        kap = qn.kappa
        raise RejectedBranchError(
            "E < 0: both radial candidates grow without bound; no normalisable state",
            _negative_energy_diagnostic(kap, espec.epsilon),
        )
    if espec.epsilon == 0:
        raise DomainError("E = 0 has no Bessel solution; see psi_spin_zero_energy")
    p, r = _radius(p)
    sp = SphericalPoint.from_cartesian(p)
    k = math.sqrt(espec.epsilon)
    return bessel_j(qn.nu, k * r) / math.sqrt(r) * angular_spinor(qn, sp.theta, sp.phi)


def psi_spin_zero_energy(a: complex, b: complex, p) -> np.ndarray:
    """Zero-energy g = 2 mode (1/r)[a z + b(x - iy), a(x + iy) - b z]."""
    if a == 0 and b == 0:
        raise DegenerateInputError("a = b = 0 gives the zero function")
    p, r = _radius(p)
    x, y, z = p
    return np.array([a * z + b * (x - 1j * y), a * (x + 1j * y) - b * z], dtype=complex) / r


def psi_magnetic(qn: MagQN, espec: EnergySpec, p, sign: int = 1) -> complex:
    """J_nu(sqrt(eps) rho) e^{i m phi} e^{+-i kz z}, nu = |m + flux_ratio|."""
    if espec.epsilon < 0:
        raise DomainError("transverse epsilon must be non-negative")
    x, y, z = (float(c) for c in p)
    rho = math.hypot(x, y)
    phi = math.atan2(y, x)
    return complex(bessel_j(qn.nu, math.sqrt(espec.epsilon) * rho)
                   * np.exp(1j * qn.m * phi) * np.exp(sign * 1j * qn.kz * z))


def psi_magnetic_phase(flux_ratio: float, kvec, p, coeffs=(1.0, 0.0), phi: float | None = None) -> complex:
    """(c1 e^{ik.r} + c2 e^{-ik.r}) exp(-i flux_ratio phi).

    ``phi`` overrides atan2(y, x), so callers moving along a path can pass an
    unwrapped azimuth and avoid the branch cut.
    """
    p = np.asarray(p, dtype=float)
    rho = math.hypot(p[0], p[1])
    if rho < AXIS_FLOOR:
        raise SingularityError("the phase factor is singular on the solenoid axis")
    ang = math.atan2(p[1], p[0]) if phi is None else float(phi)
    return complex(psi_free_plane(kvec, coeffs, p) * np.exp(-1j * flux_ratio * ang))


def psi_free(l: int, m: int, espec: EnergySpec, p) -> complex:
    """J_{l+1/2}(sqrt(eps) r)/sqrt(r) Y_lm."""
    if espec.epsilon <= 0:
        raise DomainError("free solutions need epsilon > 0")
    p, r = _radius(p)
    sp = SphericalPoint.from_cartesian(p)
    return complex(bessel_j(l + 0.5, math.sqrt(espec.epsilon) * r) / math.sqrt(r)
                   * sph_harm(l, m, sp.theta, sp.phi))


def psi_free_plane(kvec, coeffs, p) -> complex:
    """c1 e^{ik.r} + c2 e^{-ik.r}."""
    k = np.asarray(kvec, dtype=float)
    ph = float(k @ np.asarray(p, dtype=float))
    c1, c2 = coeffs
    return complex(c1 * np.exp(1j * ph) + c2 * np.exp(-1j * ph))
