"""Two-path interference: logarithmic-derivative vectors, path integrals and
screen probabilities for the free, solenoid and spin-source cases."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import _fd
from .errors import DomainError, NodeError, PathError, UsageError
from .potentials import SphericalPoint, spherical_basis
from .specfun import assoc_legendre, bessel_j

__all__ = [
    "PathSpec",
    "InterferenceParams",
    "CurveSample",
    "f_vector",
    "spherical_f_vector",
    "loop_integral",
    "winding_number",
    "p_ordinary",
    "p_magnetic",
    "p_spin",
    "p_ordinary_visibility",
    "visibility",
    "curve",
    "path_exponents",
    "NODE_FLOOR",
]

NODE_FLOOR = 1e-10
CLOSURE_TOL = 1e-12


@dataclass(frozen=True)
class PathSpec:
    """A path t in [0, 1] -> point. ``tangent`` is d(point)/dt if known."""

    kind: str
    param: Callable = field(repr=False)
    n_steps: int = 256
    tangent: Callable | None = field(default=None, repr=False)
    avoid: Callable | None = field(default=None, repr=False)

    def __post_init__(self):
        if self.kind not in ("closed_loop", "open_leg"):
            raise PathError(f"unknown path kind {self.kind!r}")
        if self.n_steps < 64:
            raise PathError("n_steps must be at least 64")
        if self.kind == "closed_loop":
            gap = np.linalg.norm(np.asarray(self.param(1.0)) - np.asarray(self.param(0.0)))
            if gap > CLOSURE_TOL:
                raise PathError(f"closed loop does not close: gap {gap:.3g}")

    @classmethod
    def circle(cls, radius: float, center=(0.0, 0.0, 0.0), n_steps: int = 256, z: float = 0.0) -> "PathSpec":
        """Counter-clockwise circle in the plane z = center_z + z, normal +z."""
        c = np.asarray(center, dtype=float) + np.array([0.0, 0.0, z])
        w = 2.0 * math.pi

        def param(t):
            return c + radius * np.array([math.cos(w * t), math.sin(w * t), 0.0])

        def tangent(t):
            return radius * w * np.array([-math.sin(w * t), math.cos(w * t), 0.0])

        return cls("closed_loop", param, n_steps, tangent)

    @classmethod
    def latitude(cls, r: float, theta: float, n_steps: int = 256) -> "PathSpec":
        """Circle of fixed (r, theta), phi running from -pi to pi."""
        st, ct = math.sin(theta), math.cos(theta)
        w = 2.0 * math.pi

        def param(t):
            f = -math.pi + w * t
            return r * np.array([st * math.cos(f), st * math.sin(f), ct])

        def tangent(t):
            f = -math.pi + w * t
            return r * w * np.array([-st * math.sin(f), st * math.cos(f), 0.0])

        return cls("closed_loop", param, n_steps, tangent)

    @classmethod
    def segment(cls, a, b, n_steps: int = 256) -> "PathSpec":
        a = np.asarray(a, dtype=float)
        b = np.asarray(b, dtype=float)
        return cls("open_leg", lambda t: a + t * (b - a), n_steps, lambda t: b - a)

    def points(self) -> np.ndarray:
        n = self.n_steps
        ts = np.arange(n) / n if self.kind == "closed_loop" else np.linspace(0.0, 1.0, n + 1)
        return np.stack([np.asarray(self.param(t), dtype=float) for t in ts])


def f_vector(psi: Callable, p, h: float = 1e-4, order: int = 2) -> np.ndarray:
    """grad(psi)/psi at p by central differences, Cartesian components."""
    p = np.asarray(p, dtype=float)

    def scalar(q):
        v = np.asarray(psi(q), dtype=complex)
        return complex(v.reshape(-1)[0]) if v.ndim else complex(v)

    v0 = scalar(p)
    if abs(v0) < NODE_FLOOR:
        raise NodeError(f"|psi| = {abs(v0):.3g} is below {NODE_FLOOR}")
    return _fd.gradient(scalar, p, h, order) / v0


def _legendre_ratio(l, m, x):
    """P_l^{m+1}(x) / P_l^m(x) with P_l^{l+1} = 0."""
    num = assoc_legendre(l, m + 1, x) if m + 1 <= l else 0.0
    den = assoc_legendre(l, m, x)
    if abs(den) < NODE_FLOOR:
        raise NodeError("Legendre factor vanishes at this polar angle")
    return num / den


def spherical_f_vector(l: int, m: int, nu: float, k: float, p) -> np.ndarray:
    """Closed-form grad(chi)/chi for chi = r^{-1/2} J_nu(k r) P_l^m(cos t) e^{i m phi}.

    Radial: -1/(2r) + k (J_{nu-1} - J_{nu+1}) / (2 J_nu);
    polar: (m cot t + P_l^{m+1}/P_l^m)/r; azimuthal: i m/(r sin t).
    """
    if not 0 <= m <= l:
        raise DomainError("need 0 <= m <= l")
    sp = SphericalPoint.from_cartesian(p)
    r, t = sp.r, sp.theta
    jn = bessel_j(nu, k * r)
    if abs(jn) < NODE_FLOOR:
        raise NodeError("radial Bessel factor vanishes here")
    fr = -0.5 / r + k * (bessel_j(nu - 1.0, k * r) - bessel_j(nu + 1.0, k * r)) / (2.0 * jn)
    ft = (m / math.tan(t) + _legendre_ratio(l, m, math.cos(t))) / r
    fp = 1j * m / (r * math.sin(t))
    er, et, ep = spherical_basis(t, sp.phi)
    return fr * er + ft * et + fp * ep


def loop_integral(F: Callable, path: PathSpec) -> complex:
    """Integral of F . dr along ``path`` by the trapezoid rule.

    Closed loops use the periodic rule (equal weights), which converges
    geometrically for smooth periodic integrands.
    """
    n = path.n_steps
    if path.kind == "closed_loop":
        ts = np.arange(n) / n
        weights = np.full(n, 1.0 / n)
    else:
        ts = np.linspace(0.0, 1.0, n + 1)
        weights = np.full(n + 1, 1.0 / n)
        weights[[0, -1]] *= 0.5
    total = 0.0 + 0.0j
    for t, w in zip(ts, weights):
        x = np.asarray(path.param(t), dtype=float)
        if path.avoid is not None and path.avoid(x):
            raise PathError(f"path meets a singularity at {x}")
        if path.tangent is not None:
            dx = np.asarray(path.tangent(t), dtype=float)
        else:
            dx = _fd.partial(lambda s: np.asarray(path.param(float(s[0]))), np.array([t, 0.0, 0.0]), 0, 1e-5, 4)
        try:
            fv = np.asarray(F(x), dtype=complex)
        except (ZeroDivisionError, FloatingPointError) as exc:
            raise PathError(f"integrand singular at {x}") from exc
        total += w * complex(fv @ dx)
    return total


def winding_number(path: PathSpec, axis_point=(0.0, 0.0)) -> float:
    """Net turns of the path around the z-parallel line through ``axis_point``,
    accumulated from unwrapped azimuth increments."""
    pts = path.points()
    if path.kind == "closed_loop":
        pts = np.vstack([pts, pts[:1]])
    ang = np.arctan2(pts[:, 1] - axis_point[1], pts[:, 0] - axis_point[0])
    d = np.diff(ang)
    d = (d + math.pi) % (2.0 * math.pi) - math.pi
    return float(d.sum() / (2.0 * math.pi))


# ---------------------------------------------------------------------------
# probabilities


def p_ordinary(delta1, N: float = 0.5):
    """2 N^2 (1 + cos delta1)."""
    return 2.0 * N * N * (1.0 + np.cos(delta1))


def p_magnetic(delta1, flux_ratio: float | None = None, N: float = 0.5, delta2: float | None = None):
    """2 N^2 [1 + cos(delta1 + delta2)], delta2 = -2 pi flux_ratio unless given."""
    if (flux_ratio is None) == (delta2 is None):
        raise UsageError("give exactly one of flux_ratio or delta2")
    if delta2 is None:
        if flux_ratio == 0:
            return p_ordinary(delta1, N)
        delta2 = -2.0 * math.pi * flux_ratio
    return 2.0 * N * N * (1.0 + np.cos(np.asarray(delta1) + delta2))


def visibility(mu: float) -> float:
    """2 e^mu / (1 + e^{2 mu}) = 1/cosh(mu)."""
    return 1.0 / math.cosh(mu)


def p_ordinary_visibility(delta, mu2_prime: float, N: float = 0.5, mu1_prime: float = 0.0):
    """N^2 e^{2 mu1'} (1 + e^{2 mu2'}) (1 + V cos delta)."""
    scale = N * N * math.exp(2.0 * mu1_prime) * (1.0 + math.exp(2.0 * mu2_prime))
    return scale * (1.0 + visibility(mu2_prime) * np.cos(delta))


@dataclass(frozen=True)
class InterferenceParams:
    """Parameters of the spin-source probability.

    ``c2`` defaults to 1/(l+m+1). With ``N=None`` the normaliser follows
    N^2 (|c1|^2 + |c2|^2) = 1.
    """

    mu1: float
    mu2: float
    mu3: float
    mu4: float
    l: int
    m: int
    c1: complex = 1.0
    c2: complex | None = None
    N: float | None = None

    def __post_init__(self):
        if self.m == 0:
            raise DomainError("m = 0 leaves the second phase (m+1)/m undefined")
        if self.c2 is None and self.l + self.m + 1 == 0:
            raise DomainError("l + m + 1 = 0 makes the default weight 1/(l+m+1) infinite")

    @property
    def weight2(self) -> complex:
        return 1.0 / (self.l + self.m + 1) if self.c2 is None else self.c2

    @property
    def norm(self) -> float:
        if self.N is not None:
            return float(self.N)
        return 1.0 / math.sqrt(abs(self.c1) ** 2 + abs(self.weight2) ** 2)


def p_spin(delta, params: InterferenceParams):
    """N^2 { |c1|^2 e^{2mu1}(1 + e^{2mu2} + 2 e^{mu2} cos d)
    + |c2|^2 e^{2mu3}(1 + e^{2mu4} + 2 e^{mu4} cos((m+1) d/m)) }."""
    if params.m == 0:
        raise DomainError("m = 0 is excluded")
    d = np.asarray(delta, dtype=float)
    a = abs(params.c1) ** 2 * math.exp(2 * params.mu1) * (
        1.0 + math.exp(2 * params.mu2) + 2.0 * math.exp(params.mu2) * np.cos(d))
    b = abs(params.weight2) ** 2 * math.exp(2 * params.mu3) * (
        1.0 + math.exp(2 * params.mu4) + 2.0 * math.exp(params.mu4) * np.cos((params.m + 1) * d / params.m))
    out = params.norm**2 * (a + b)
    return float(out) if out.ndim == 0 else out


@dataclass(frozen=True)
class CurveSample:
    delta: float
    value: float


def curve(kind: str, params, delta_grid) -> list:
    """Evaluate a probability over linspace(min, max, count).

    ``params``: for "ordinary" a dict with N; for "magnetic" a dict with N
    and flux_ratio or delta2; for "spin" an InterferenceParams.
    """
    lo, hi, count = delta_grid
    count = int(count)
    if count < 2:
        raise UsageError("grid needs at least two points")
    ds = np.linspace(float(lo), float(hi), count)
    if kind == "ordinary":
        vals = p_ordinary(ds, (params or {}).get("N", 0.5))
    elif kind == "magnetic":
        pr = dict(params or {})
        vals = p_magnetic(ds, pr.get("flux_ratio"), pr.get("N", 0.5), pr.get("delta2"))
    elif kind == "spin":
        if not isinstance(params, InterferenceParams):
            raise UsageError("spin curves need InterferenceParams")
        vals = p_spin(ds, params)
    else:
        raise UsageError(f"unknown curve kind {kind!r}")
    return [CurveSample(float(d), float(v)) for d, v in zip(ds, vals)]


def path_exponents(f1: Callable, f2: Callable, leg: PathSpec, loop: PathSpec) -> dict:
    """Exponents of the spin-source amplitude from two F fields.

    mu1, mu3: leg integrals of Re F1, Re F2; mu2, mu4: loop integrals of
    Re F1, Re F2; delta, delta_2nd: loop integrals of Im F1, Im F2.
    """
    i1 = loop_integral(f1, loop)
    i2 = loop_integral(f2, loop)
    l1 = loop_integral(f1, leg)
    l2 = loop_integral(f2, leg)
    return {
        "mu1": l1.real, "mu2": i1.real, "mu3": l2.real, "mu4": i2.real,
        "delta": i1.imag, "delta_2nd": i2.imag,
    }
