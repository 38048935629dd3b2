"""Deterministic quadrature on R^{p+1}, on R^q with the dmu radial weight, and on the product.

The y-space rule integrates ``g(y) exp(-|y|^2) / |y|^{q-1} dy``: in polar form
``dy = r^{q-1} dr dsigma`` the singular factor cancels, leaving a half-line
rule with weight ``exp(-r^2)`` times a rule on the unit sphere.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Callable, Literal, Sequence

import numpy as np
from scipy.special import roots_hermite, roots_legendre

from .clifford import Signature, dagger_array, gp, inner_array

Domain = Literal["x-space", "xi-space", "y-space", "full-space"]


class CapabilityError(ValueError):
    """Requested dimension is outside what the rules support."""


@dataclass(frozen=True, eq=False)
class QuadratureRule:
    nodes: np.ndarray
    weights: np.ndarray
    domain: Domain = "x-space"

    def __post_init__(self):
        nodes = np.array(self.nodes, dtype=float)
        if nodes.ndim == 1:
            nodes = nodes[:, None]
        weights = np.array(self.weights, dtype=float)
        if len(nodes) != len(weights):
            raise ValueError("nodes and weights differ in length")
        nodes.setflags(write=False)
        weights.setflags(write=False)
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "weights", weights)

    def __len__(self):
        return len(self.weights)

    def integrate(self, f: Callable[[np.ndarray], np.ndarray]) -> np.ndarray:
        vals = np.asarray(f(self.nodes))
        return np.tensordot(self.weights, vals, axes=(0, 0))


@lru_cache(maxsize=None)
def _hermite_1d(order: int) -> tuple[np.ndarray, np.ndarray]:
    u, w = roots_hermite(order)
    return u, w


def gauss_hermite_rule(order: int, dim: int) -> QuadratureRule:
    """Tensor Gauss-Hermite rule for weight exp(-|x|^2) on R^dim.

    Exact for polynomials of degree <= 2*order - 1 in each variable.
    """
    if order < 1:
        raise ValueError("order must be >= 1")
    if not 1 <= dim <= 3:
        raise CapabilityError(f"Gauss-Hermite rules support dim 1..3, got {dim}")
    u, w = _hermite_1d(order)
    nodes = np.array(list(product(u, repeat=dim)))
    weights = np.prod(np.array(list(product(w, repeat=dim))), axis=1)
    return QuadratureRule(nodes, weights, "x-space")


def lebesgue_rule(order: int, dim: int, rate: float = 0.5) -> QuadratureRule:
    """Rule for plain dx on R^dim, built from Gauss-Hermite for exp(-rate |x|^2).

    Weights carry exp(+rate |x|^2), so integrands decaying like exp(-rate |x|^2)
    are treated as polynomial-like.
    """
    gh = gauss_hermite_rule(order, dim)
    s = math.sqrt(rate)
    nodes = gh.nodes / s
    weights = gh.weights * np.exp(np.sum(gh.nodes ** 2, axis=1)) / s ** dim
    return QuadratureRule(nodes, weights, "x-space")


def half_line_rule(order: int, rate: float = 1.0) -> QuadratureRule:
    """int_0^inf g(r) exp(-r^2) dr ~ sum w_i g(r_i).

    Folded from the 2*order-point Gauss-Hermite rule for exp(-rate r^2): exact
    on even polynomial extensions when rate = 1.
    """
    u, w = _hermite_1d(2 * order)
    pos = u > 0
    s = math.sqrt(rate)
    r = u[pos] / s
    weights = w[pos] / s * np.exp(-(1.0 - rate) * r * r)
    return QuadratureRule(r, weights, "y-space")


def sphere_area(q: int) -> float:
    """|S^{q-1}| = 2 pi^{q/2} / Gamma(q/2)."""
    closed = {1: 2.0, 2: 2 * math.pi, 3: 4 * math.pi}
    if q in closed:
        return closed[q]
    return 2 * math.pi ** (q / 2) / math.gamma(q / 2)


def sphere_rule(q: int, order: int) -> QuadratureRule:
    """Antipodally symmetric rule on the unit sphere S^{q-1} in R^q.

    q = 1: the two points +-1; q = 2: 2*order equispaced angles;
    q = 3: Gauss-Legendre in cos(theta) (order nodes) x 2*order equispaced azimuths.
    """
    if q == 1:
        return QuadratureRule(np.array([[1.0], [-1.0]]), np.array([1.0, 1.0]), "y-space")
    if q == 2:
        m = 2 * order
        th = 2 * math.pi * np.arange(m) / m
        return QuadratureRule(np.stack([np.cos(th), np.sin(th)], axis=1), np.full(m, 2 * math.pi / m), "y-space")
    if q == 3:
        ct, wt = roots_legendre(order)
        m = 2 * order
        ph = 2 * math.pi * np.arange(m) / m
        st = np.sqrt(1 - ct ** 2)
        nodes = np.array([[s * math.cos(p), s * math.sin(p), c] for c, s in zip(ct, st) for p in ph])
        weights = np.array([w * 2 * math.pi / m for w in wt for _ in ph])
        return QuadratureRule(nodes, weights, "y-space")
    raise CapabilityError(f"sphere rules support q = 1, 2, 3; got q = {q}")


def y_space_rule(q: int, radial_order: int = 80, sphere_order: int = 4, rate: float = 1.0) -> QuadratureRule:
    """Rule for g(y) exp(-|y|^2) / |y|^{q-1} dy on R^q."""
    if q > 3 or q < 1:
        raise CapabilityError(f"y-space rules support q = 1, 2, 3; got q = {q}")
    radial = half_line_rule(radial_order, rate)
    sph = sphere_rule(q, sphere_order)
    r = radial.nodes[:, 0]
    nodes = (r[:, None, None] * sph.nodes[None, :, :]).reshape(-1, q)
    weights = (radial.weights[:, None] * sph.weights[None, :]).reshape(-1)
    return QuadratureRule(nodes, weights, "y-space")


@dataclass(frozen=True)
class MeasureMu:
    """dmu = (2/sqrt(pi)) (1/|S|) exp(-|y|^2) / |y|^{q-1} dx dy."""

    p: int
    q: int

    @property
    def sphere_area(self) -> float:
        return sphere_area(self.q)

    @property
    def normalization(self) -> float:
        return 2.0 / math.sqrt(math.pi) / self.sphere_area

    @property
    def sig(self) -> Signature:
        return Signature(self.p, self.q)


@dataclass(frozen=True)
class FullSpaceRule:
    """x-rule (plain dx) tensor y-rule (dmu radial weight); normalization not included."""

    x: np.ndarray
    y: np.ndarray
    weights: np.ndarray

    def __len__(self):
        return len(self.weights)


@dataclass(frozen=True)
class RuleOrders:
    """Orders for the dx (x) and dmu-radial (y) parts of the full-space rule.

    x_rate matches exp(-|x|^2/2) decay of |U f|^2 in x; y_rate = 1 is the radial
    weight exp(-r^2) of dmu itself.
    """

    x_order: int = 24
    radial_order: int = 24
    sphere_order: int = 4
    x_rate: float = 0.5
    y_rate: float = 1.0


def full_space_rule(p: int, q: int, orders: RuleOrders = RuleOrders()) -> FullSpaceRule:
    if p + 1 > 3:
        raise CapabilityError(f"full-space rules support p <= 2, got p = {p}")
    xr = lebesgue_rule(orders.x_order, p + 1, orders.x_rate)
    yr = y_space_rule(q, orders.radial_order, orders.sphere_order, orders.y_rate)
    nx, ny = len(xr), len(yr)
    x = np.repeat(xr.nodes, ny, axis=0)
    y = np.tile(yr.nodes, (nx, 1))
    w = np.outer(xr.weights, yr.weights).reshape(-1)
    return FullSpaceRule(x, y, w)


Evaluator = Callable[[np.ndarray, np.ndarray], np.ndarray]


def _evaluate(f: Evaluator, rule: FullSpaceRule) -> np.ndarray:
    return np.asarray(f(rule.x, rule.y))


def mu_inner_product(f: Evaluator, g: Evaluator, mu: MeasureMu, rule: FullSpaceRule) -> complex:
    """<f, g>_mu = c sum_i w_i Sc(f(n_i)^dagger g(n_i)), fixed summation order."""
    fv, gv = _evaluate(f, rule), _evaluate(g, rule)
    return complex(mu.normalization * np.dot(rule.weights, inner_array(fv, gv)))


def mu_inner_product_clifford(f: Evaluator, g: Evaluator, mu: MeasureMu, rule: FullSpaceRule) -> np.ndarray:
    """Clifford-valued c sum_i w_i f(n_i)^dagger g(n_i)."""
    n = mu.sig.n
    fv, gv = _evaluate(f, rule), _evaluate(g, rule)
    return mu.normalization * np.tensordot(rule.weights, gp(dagger_array(fv, n), gv, n), axes=(0, 0))


def mu_gram(values: Sequence[np.ndarray], mu: MeasureMu, rule: FullSpaceRule) -> np.ndarray:
    """Gram matrix of pre-evaluated functions (each (N, 2^n)) under the scalar dmu pairing."""
    stack = np.stack(values, axis=1)  # (N, K, dim)
    weighted = stack * rule.weights[:, None, None]
    k = stack.shape[1]
    gram = np.empty((k, k), dtype=complex)
    for i in range(k):
        gram[i] = np.einsum("nd,nkd->k", np.conj(stack[:, i, :]), weighted)
    return mu.normalization * gram
