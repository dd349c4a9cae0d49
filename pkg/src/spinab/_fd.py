"""Central finite-difference stencils for vector and matrix valued functions."""

from __future__ import annotations

from functools import lru_cache

import numpy as np


@lru_cache(maxsize=None)
def fornberg_weights(offsets: tuple, deriv: int) -> tuple:
    """Weights w_k with f^(deriv)(0) ~ sum_k w_k f(offsets[k]) for unit spacing.

    Fornberg's recursion for arbitrary node sets.
    """
    x = np.asarray(offsets, dtype=float)
    n = len(x)
    c = np.zeros((n, deriv + 1))
    c1 = 1.0
    c4 = x[0]
    c[0, 0] = 1.0
    for i in range(1, n):
        mn = min(i, deriv)
        c2 = 1.0
        c5 = c4
        c4 = x[i]
        for j in range(i):
            c3 = x[i] - x[j]
            c2 *= c3
            if j == i - 1:
                for k in range(mn, 0, -1):
                    c[i, k] = c1 * (k * c[i - 1, k - 1] - c5 * c[i - 1, k]) / c2
                c[i, 0] = -c1 * c5 * c[i - 1, 0] / c2
            for k in range(mn, 0, -1):
                c[j, k] = (c4 * c[j, k] - k * c[j, k - 1]) / c3
            c[j, 0] = c4 * c[j, 0] / c3
        c1 = c2
    return tuple(c[:, deriv])


def central_stencil(order: int, deriv: int = 1):
    """Offsets and weights of the centred stencil of the given accuracy order."""
    if order % 2 or order < 2:
        raise ValueError("order must be a positive even integer")
    half = (deriv + order - 1) // 2
    offsets = tuple(range(-half, half + 1))
    w = fornberg_weights(offsets, deriv)
    pairs = [(o, wk) for o, wk in zip(offsets, w) if abs(wk) > 1e-12]
    return tuple(p[0] for p in pairs), np.array([p[1] for p in pairs])


def partial(func, p, axis: int, h: float, order: int = 4, deriv: int = 1):
    """d^deriv func / dx_axis^deriv at p; func returns any array shape."""
    offsets, weights = central_stencil(order, deriv)
    p = np.asarray(p, dtype=float)
    acc = None
    for o, w in zip(offsets, weights):
        q = p.copy()
        q[axis] += o * h
        term = w * np.asarray(func(q))
        acc = term if acc is None else acc + term
    return acc / h**deriv


def gradient(func, p, h: float, order: int = 4):
    """Stack of the three partial derivatives, leading axis = direction."""
    return np.stack([partial(func, p, i, h, order) for i in range(3)])


def divergence(vec_func, p, h: float, order: int = 4):
    """sum_i d_i F_i for F returning shape (3, ...)."""
    return sum(partial(lambda q, i=i: np.asarray(vec_func(q))[i], p, i, h, order) for i in range(3))


def curl(vec_func, p, h: float, order: int = 4):
    """Curl of F returning shape (3, ...); works entrywise on matrices."""
    d = [[partial(lambda q, j=j: np.asarray(vec_func(q))[j], p, i, h, order) for j in range(3)] for i in range(3)]
    return np.stack([d[1][2] - d[2][1], d[2][0] - d[0][2], d[0][1] - d[1][0]])
