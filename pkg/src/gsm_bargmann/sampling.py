"""Seeded sample points for representation checks."""
from __future__ import annotations

import numpy as np

from .clifford import Signature

X_RADIUS = 2.0
Y_RADII = (0.1, 2.0)


def rng_from_seed(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed))


def _unit_vectors(rng: np.random.Generator, n: int, dim: int) -> np.ndarray:
    v = rng.standard_normal((n, dim))
    return v / np.linalg.norm(v, axis=1, keepdims=True)


def sample_split_points(
    sig: Signature,
    n: int,
    rng: np.random.Generator,
    x_radius: float = X_RADIUS,
    y_radii: tuple[float, float] = Y_RADII,
) -> tuple[np.ndarray, np.ndarray]:
    """x uniform in the ball |x| <= x_radius, |y| uniform in y_radii with a uniform direction."""
    d = sig.p + 1
    xr = x_radius * rng.random(n) ** (1.0 / d)
    x = _unit_vectors(rng, n, d) * xr[:, None]
    yr = rng.uniform(*y_radii, size=n)
    y = _unit_vectors(rng, n, sig.q) * yr[:, None]
    return x, y


def sample_xi(sig: Signature, n: int, rng: np.random.Generator, scale: float = 1.5) -> np.ndarray:
    return rng.uniform(-scale, scale, size=(n, sig.p + 1))
