"""Finite-dimensional operator algebra: spin matrices, vector-of-matrix
products, commutators and Kronecker products."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import SpinabError

__all__ = [
    "ShapeError",
    "UnitConventions",
    "DEFAULT_UNITS",
    "pauli",
    "identity",
    "spin_half",
    "spin_one",
    "cross",
    "dot",
    "commutator",
    "anticommutator",
    "tensor",
    "dirac_alpha",
    "dirac_beta",
    "as_matrix_vector",
]


class ShapeError(SpinabError):
    """Operands have incompatible matrix dimensions."""


@dataclass(frozen=True)
class UnitConventions:
    """Physical constants; natural units by default."""

    hbar: float = 1.0
    mass: float = 1.0
    charge_e: float = 1.0
    light_c: float = 1.0

    def __post_init__(self):
        for name in ("hbar", "mass", "light_c"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive")

    @property
    def h(self) -> float:
        return 2.0 * np.pi * self.hbar


DEFAULT_UNITS = UnitConventions()

_SX = np.array([[0, 1], [1, 0]], dtype=complex)
_SY = np.array([[0, -1j], [1j, 0]], dtype=complex)
_SZ = np.array([[1, 0], [0, -1]], dtype=complex)


def pauli() -> np.ndarray:
    """Pauli matrices stacked as an array of shape (3, 2, 2)."""
    return np.stack([_SX, _SY, _SZ])


def identity(n: int) -> np.ndarray:
    return np.eye(n, dtype=complex)


def spin_half(units: UnitConventions = DEFAULT_UNITS) -> np.ndarray:
    """S = (hbar/2) sigma, shape (3, 2, 2)."""
    return 0.5 * units.hbar * pauli()


def spin_one(units: UnitConventions = DEFAULT_UNITS) -> np.ndarray:
    """Spin-1 matrices in the |+1>, |0>, |-1> basis, shape (3, 3, 3)."""
    r = 1.0 / np.sqrt(2.0)
    sx = r * np.array([[0, 1, 0], [1, 0, 1], [0, 1, 0]], dtype=complex)
    sy = r * 1j * np.array([[0, -1, 0], [1, 0, -1], [0, 1, 0]], dtype=complex)
    sz = np.diag([1.0, 0.0, -1.0]).astype(complex)
    return units.hbar * np.stack([sx, sy, sz])


def as_matrix_vector(v, n: int | None = None) -> np.ndarray:
    """Promote a 3-vector of scalars or matrices to shape (3, n, n).

    Plain numbers become multiples of the n x n identity; n defaults to 1
    when no operand fixes it.
    """
    a = np.asarray(v)
    if a.ndim == 3:
        if a.shape[0] != 3 or a.shape[1] != a.shape[2]:
            raise ShapeError(f"expected shape (3, n, n), got {a.shape}")
        if n is not None and a.shape[1] != n:
            raise ShapeError(f"matrix dimension {a.shape[1]} != {n}")
        return a.astype(complex)
    if a.ndim == 1 and a.shape[0] == 3:
        n = 1 if n is None else n
        return a.astype(complex)[:, None, None] * np.eye(n, dtype=complex)[None]
    raise ShapeError(f"not a 3-vector of scalars or square matrices: shape {a.shape}")


def _dim_of(*vs):
    dims = {np.asarray(v).shape[1] for v in vs if np.asarray(v).ndim == 3}
    if len(dims) > 1:
        raise ShapeError(f"mismatched matrix dimensions {sorted(dims)}")
    return dims.pop() if dims else None


def cross(a, b) -> np.ndarray:
    """Ordered cross product (a x b)_i = eps_ijk a_j b_k; operand order kept."""
    n = _dim_of(a, b)
    A = as_matrix_vector(a, n)
    B = as_matrix_vector(b, n)
    return np.stack([
        A[1] @ B[2] - A[2] @ B[1],
        A[2] @ B[0] - A[0] @ B[2],
        A[0] @ B[1] - A[1] @ B[0],
    ])


def dot(a, b) -> np.ndarray:
    """Ordered dot product sum_i a_i b_i, returned as an n x n matrix."""
    n = _dim_of(a, b)
    A = as_matrix_vector(a, n)
    B = as_matrix_vector(b, n)
    return A[0] @ B[0] + A[1] @ B[1] + A[2] @ B[2]


def _check_square_pair(a, b):
    a = np.asarray(a)
    b = np.asarray(b)
    if a.shape[-2:] != b.shape[-2:] or a.shape[-1] != a.shape[-2]:
        raise ShapeError(f"cannot combine shapes {a.shape} and {b.shape}")
    return a, b


def commutator(a, b) -> np.ndarray:
    """[a, b] = ab - ba."""
    a, b = _check_square_pair(a, b)
    return a @ b - b @ a


def anticommutator(a, b) -> np.ndarray:
    a, b = _check_square_pair(a, b)
    return a @ b + b @ a


def tensor(*ops) -> np.ndarray:
    """Kronecker product, left factor outermost."""
    if not ops:
        raise ShapeError("tensor needs at least one operand")
    out = np.asarray(ops[0], dtype=complex)
    for op in ops[1:]:
        out = np.kron(out, np.asarray(op, dtype=complex))
    return out


def dirac_alpha() -> np.ndarray:
    """alpha_i = sigma_x (x) sigma_i in the Dirac slot, shape (3, 4, 4)."""
    return np.stack([np.kron(_SX, s) for s in pauli()])


def dirac_beta() -> np.ndarray:
    """beta = sigma_z (x) 1, shape (4, 4)."""
    return np.kron(_SZ, np.eye(2, dtype=complex))
