"""Finite-difference application of operator expressions to spinor fields.

An operator expression is built from multiplication by (matrix-valued)
functions of position and from partial derivatives, combined by sums,
scalar multiples and composition. ``op_apply`` evaluates ``O f`` at a point
by nested central differences. Expressions with a single level of
differentiation use step ``h1`` and second-order stencils; deeper nesting
uses ``h2`` with stencils of order ``scheme.order``.

Example
-------
>>> import numpy as np
>>> from spinab import diffops as d
>>> lz = d.angular_momentum()[2]
>>> f = lambda p: np.array([p[0] + 1j * p[1]])
>>> d.op_apply(lz, f, np.array([0.3, 0.4, 0.5]))  # ~ hbar * f
"""

from __future__ import annotations

from dataclasses import dataclass
from numbers import Number
from typing import Callable, Sequence

import numpy as np

from . import _fd
from .errors import DomainError, UsageError
from .qalgebra import DEFAULT_UNITS, UnitConventions
from .potentials import magnetic_ab, spin_potential

__all__ = [
    "FDScheme",
    "DEFAULT_SCHEME",
    "Op",
    "MatrixFn",
    "Deriv",
    "Identity",
    "VecOp",
    "const",
    "position",
    "momentum",
    "angular_momentum",
    "vdot",
    "vcross",
    "matrix_vector",
    "canonical_momentum",
    "h_spin",
    "h_magnetic",
    "h_free",
    "momentum_apply",
    "op_apply",
    "commutator_apply",
    "GaussianTestField",
    "gaussian_test_fields",
    "relative_residual",
    "random_points",
]


@dataclass(frozen=True)
class FDScheme:
    h1: float = 1e-4
    h2: float = 1e-3
    order: int = 4

    def __post_init__(self):
        if not (self.h1 > 0 and self.h2 > 0):
            raise UsageError("finite-difference steps must be positive")
        if self.order not in (2, 4, 6, 8):
            raise UsageError("order must be one of 2, 4, 6, 8")


DEFAULT_SCHEME = FDScheme()


# ---------------------------------------------------------------------------
# expression tree


class Op:
    """Linear operator on spinor fields; compose with ``*``, combine with ``+``."""

    def depth(self) -> int:
        raise NotImplementedError

    def _eval(self, f, p, ctx):
        raise NotImplementedError

    def __mul__(self, other):
        if isinstance(other, Op):
            return _Compose(self, other)
        if isinstance(other, Number):
            return _Scale(complex(other), self)
        raise UsageError(f"cannot multiply operator by {type(other).__name__}")

    def __rmul__(self, other):
        if isinstance(other, Number):
            return _Scale(complex(other), self)
        raise UsageError(f"cannot multiply {type(other).__name__} by operator")

    def __add__(self, other):
        if not isinstance(other, Op):
            if isinstance(other, Number):
                other = _Scale(complex(other), Identity())
            else:
                raise UsageError("can only add operators or scalars")
        return _Sum((self, other))

    __radd__ = __add__

    def __neg__(self):
        return _Scale(-1.0, self)

    def __sub__(self, other):
        return self + (-other if isinstance(other, Op) else -complex(other))

    def __rsub__(self, other):
        return (-self) + other


class Identity(Op):
    def depth(self):
        return 0

    def _eval(self, f, p, ctx):
        return ctx.field(f, p)


class MatrixFn(Op):
    """Multiplication by ``func(p)``: a scalar or a square matrix."""

    def __init__(self, func: Callable, name: str = "M"):
        if not callable(func):
            raise UsageError("MatrixFn needs a callable of position")
        self.func = func
        self.name = name

    def depth(self):
        return 0

    def _eval(self, f, p, ctx):
        m = np.asarray(self.func(p))
        v = ctx.field(f, p)
        if m.ndim == 0:
            return m * v
        if m.shape != (v.shape[0], v.shape[0]):
            raise UsageError(f"{self.name}: matrix shape {m.shape} does not match field dim {v.shape[0]}")
        return m @ v

    def __repr__(self):
        return f"MatrixFn({self.name})"


class Deriv(Op):
    """Partial derivative along Cartesian axis 0, 1 or 2."""

    def __init__(self, axis: int):
        if axis not in (0, 1, 2):
            raise UsageError("axis must be 0, 1 or 2")
        self.axis = axis

    def depth(self):
        return 1

    def _eval(self, f, p, ctx):
        offsets, weights = ctx.stencil
        acc = 0.0
        for o, w in zip(offsets, weights):
            q = p.copy()
            q[self.axis] += o * ctx.h
            acc = acc + w * ctx.field(f, q)
        return acc / ctx.h


class _Scale(Op):
    def __init__(self, c, op):
        self.c = c
        self.op = op

    def depth(self):
        return self.op.depth()

    def _eval(self, f, p, ctx):
        return self.c * self.op._eval(f, p, ctx)


class _Sum(Op):
    def __init__(self, ops: Sequence[Op]):
        flat = []
        for o in ops:
            flat.extend(o.ops if isinstance(o, _Sum) else [o])
        self.ops = tuple(flat)

    def depth(self):
        return max(o.depth() for o in self.ops)

    def _eval(self, f, p, ctx):
        return sum(o._eval(f, p, ctx) for o in self.ops)


class _Compose(Op):
    """(A * B) f = A (B f)."""

    def __init__(self, a: Op, b: Op):
        self.a = a
        self.b = b

    def depth(self):
        return self.a.depth() + self.b.depth()

    def _eval(self, f, p, ctx):
        inner = _Applied(self.b, f)
        return self.a._eval(inner, p, ctx)


class _Applied:
    """The field B f, evaluated lazily and memoised per point.

    The cache key is built from ids of the operator nodes and the user
    field, which all outlive a single ``op_apply`` call.
    """

    __slots__ = ("op", "f", "key")

    def __init__(self, op, f):
        self.op = op
        self.f = f
        self.key = (id(op), f.key if isinstance(f, _Applied) else id(f))


class _Ctx:
    def __init__(self, h, order):
        self.h = h
        self.stencil = _fd.central_stencil(order)
        self.cache = {}

    def field(self, f, p):
        if isinstance(f, _Applied):
            key = (f.key, p.tobytes())
            hit = self.cache.get(key)
            if hit is None:
                hit = f.op._eval(f.f, p, self)
                self.cache[key] = hit
            return hit
        key = (id(f), p.tobytes())
        hit = self.cache.get(key)
        if hit is None:
            hit = np.atleast_1d(np.asarray(f(p), dtype=complex))
            self.cache[key] = hit
        return hit


def const(value, name: str = "c") -> MatrixFn:
    v = np.asarray(value, dtype=complex)
    return MatrixFn(lambda p: v, name)


# ---------------------------------------------------------------------------
# vector operators


class VecOp:
    """Three operators (O_x, O_y, O_z)."""

    def __init__(self, comps: Sequence[Op]):
        comps = tuple(comps)
        if len(comps) != 3 or not all(isinstance(c, Op) for c in comps):
            raise UsageError("VecOp needs exactly three operators")
        self.comps = comps

    def __getitem__(self, i):
        return self.comps[i]

    def __iter__(self):
        return iter(self.comps)

    def __add__(self, other):
        return VecOp([a + b for a, b in zip(self, other)])

    def __sub__(self, other):
        return VecOp([a - b for a, b in zip(self, other)])

    def __neg__(self):
        return VecOp([-a for a in self])

    def scale(self, c) -> "VecOp":
        return VecOp([c * a for a in self])

    def __rmul__(self, c):
        if not isinstance(c, Number):
            raise UsageError("a VecOp can only be scaled by a number")
        return self.scale(c)

    def compose_left(self, op: Op) -> "VecOp":
        """op * O_i for each component."""
        return VecOp([op * a for a in self])

    def compose_right(self, op: Op) -> "VecOp":
        return VecOp([a * op for a in self])


def vdot(a: VecOp, b: VecOp) -> Op:
    """sum_i a_i b_i with a_i to the left."""
    return _Sum([a[i] * b[i] for i in range(3)])


def vcross(a: VecOp, b: VecOp) -> VecOp:
    """(a x b)_i = eps_ijk a_j b_k with a to the left."""
    return VecOp([
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ])


def matrix_vector(func: Callable, name: str = "V") -> VecOp:
    """VecOp of multiplications by the components of ``func(p)`` (shape (3, ...))."""
    return VecOp([MatrixFn(lambda p, i=i: np.asarray(func(p))[i], f"{name}_{i}") for i in range(3)])


def position() -> VecOp:
    return VecOp([MatrixFn(lambda p, i=i: p[i], "xyz"[i]) for i in range(3)])


def momentum(units: UnitConventions = DEFAULT_UNITS) -> VecOp:
    """p = -i hbar grad."""
    return VecOp([_Scale(-1j * units.hbar, Deriv(i)) for i in range(3)])


def angular_momentum(units: UnitConventions = DEFAULT_UNITS) -> VecOp:
    """l = r x p."""
    return vcross(position(), momentum(units))


def canonical_momentum(g: float, spin, units: UnitConventions = DEFAULT_UNITS) -> VecOp:
    """Pi = p - A with A the spin-source potential."""
    return momentum(units) - matrix_vector(lambda p: spin_potential(g, spin, p), "A")


def h_spin(g: float, spin, units: UnitConventions = DEFAULT_UNITS) -> Op:
    """H = (p - A)^2 / 2M."""
    pi = canonical_momentum(g, spin, units)
    return (1.0 / (2.0 * units.mass)) * vdot(pi, pi)


def h_magnetic(spec, units: UnitConventions = DEFAULT_UNITS) -> Op:
    """H = (p + (e/c) A_M)^2 / 2M for a solenoid."""
    k = units.charge_e / units.light_c
    pi = momentum(units) + matrix_vector(lambda p: k * magnetic_ab(spec, p), "A_M")
    return (1.0 / (2.0 * units.mass)) * vdot(pi, pi)


def h_free(units: UnitConventions = DEFAULT_UNITS) -> Op:
    p = momentum(units)
    return (1.0 / (2.0 * units.mass)) * vdot(p, p)


# ---------------------------------------------------------------------------
# application


def _check_domain(p, domain, reach):
    if domain is None:
        return
    for axis in range(3):
        for s in (-reach, reach):
            q = p.copy()
            q[axis] += s
            if not domain(q):
                raise DomainError(f"finite-difference stencil leaves the domain near {p}")
    if not domain(p):
        raise DomainError(f"point {p} is outside the domain")


def _context(depth, scheme):
    if depth <= 1:
        return _Ctx(scheme.h1, 2), scheme.h1
    return _Ctx(scheme.h2, scheme.order), scheme.h2


def op_apply(op: Op, f: Callable, p, scheme: FDScheme = DEFAULT_SCHEME, domain=None) -> np.ndarray:
    """Evaluate (op f)(p). ``domain`` optionally vetoes stencil points."""
    if not isinstance(op, Op):
        raise UsageError(f"expected an operator expression, got {type(op).__name__}")
    p = np.asarray(p, dtype=float).copy()
    depth = op.depth()
    ctx, h = _context(depth, scheme)
    half = len(ctx.stencil[0]) // 2
    _check_domain(p, domain, depth * half * h)
    return op._eval(f, p, ctx)


def momentum_apply(f: Callable, p, scheme: FDScheme = DEFAULT_SCHEME,
                   units: UnitConventions = DEFAULT_UNITS, domain=None) -> np.ndarray:
    """-i hbar grad f at p, shape (3, dim)."""
    return np.stack([op_apply(c, f, p, scheme, domain) for c in momentum(units)])


def commutator_apply(a: Op, b: Op, f: Callable, p, scheme: FDScheme = DEFAULT_SCHEME, domain=None) -> np.ndarray:
    """A(Bf) - B(Af)."""
    return op_apply(a * b - b * a, f, p, scheme, domain)


def relative_residual(lhs, rhs, ref=None, floor: float = 1e-8) -> float:
    """||lhs - rhs|| / max(||rhs||, floor); ``ref`` replaces ||rhs|| when given."""
    diff = np.linalg.norm(np.asarray(lhs) - np.asarray(rhs))
    norm = np.linalg.norm(np.asarray(rhs)) if ref is None else float(ref)
    return float(diff / max(norm, floor))


# ---------------------------------------------------------------------------
# test fields


@dataclass(frozen=True)
class GaussianTestField:
    """f(r) = exp(i k.r - |r - c|^2 / w^2) * spinor."""

    k: np.ndarray
    center: np.ndarray
    width: float
    spinor: np.ndarray

    def envelope(self, p):
        d = np.asarray(p) - self.center
        return np.exp(1j * self.k @ np.asarray(p) - d @ d / self.width**2)

    def __call__(self, p):
        return self.envelope(p) * self.spinor

    def gradient(self, p):
        d = np.asarray(p) - self.center
        g = 1j * self.k - 2.0 * d / self.width**2
        return np.multiply.outer(g, self(p))


def gaussian_test_fields(n: int, dim: int, rng: np.random.Generator, k_scale: float = 1.0,
                         width: float = 1.5, center_scale: float = 0.5) -> list:
    """``n`` seeded test fields with random wave vector, centre and spinor."""
    out = []
    for _ in range(n):
        k = rng.normal(scale=k_scale, size=3)
        c = rng.normal(scale=center_scale, size=3)
        s = rng.normal(size=dim) + 1j * rng.normal(size=dim)
        out.append(GaussianTestField(k, c, width, s / np.linalg.norm(s)))
    return out


def random_points(n: int, rng: np.random.Generator, rmin: float = 0.6, rmax: float = 1.6,
                  min_sin: float = 0.3) -> list:
    """Points with rmin <= r <= rmax and sin(theta) >= min_sin."""
    out = []
    while len(out) < n:
        v = rng.normal(size=3)
        v /= np.linalg.norm(v)
        if np.hypot(v[0], v[1]) < min_sin:
            continue
        out.append(v * rng.uniform(rmin, rmax))
    return out
