"""Segal-Bargmann transform U_{p,q}, the psi_k basis and the Schroedinger representation.

U[f](bx) = (2 pi)^{-(p+1)/2} int exp(-|xi|^2/2) e(bx, xi) f^(xi) dxi, which equals
CK[exp(Delta/2) f](bx). Both routes are implemented:

* ``route="fourier"``: quadrature of the plane-wave integral against the exact f^;
* ``route="ck"``: exact heat flow inside the Hermite-Gaussian family, then the
  pointwise Laplacian series of the CK-extension.

Inputs are restricted to the Hermite-Gaussian family (dense in L^2).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Literal

import numpy as np

from .ck import CKControls, check_region, ck_hermite_gaussian_batch, fourier_integral
from .clifford import Multivector, Signature, SplitPoint, dagger_array, gp, norm_array
from .functions import (
    HermiteGaussian,
    MultiIndex,
    lebesgue_inner_product,
    multi_indices,
    phi_k,
)
from .quadrature import CapabilityError, MeasureMu, RuleOrders, full_space_rule, mu_gram
from .report import SuiteReport

Route = Literal["fourier", "ck"]

# exp(t Delta / 2) at t = 1 is the exp(Delta/2) of the transform
TRANSFORM_HEAT_TIME = 1
PSI_RATE = Fraction(1, 4)
MAX_DEGREE = 4

ANCHOR_ISOMETRY = "isometry lemma: <U f, U h>_mu = <f, h>_dx"
ANCHOR_HERMITE = "Hermite orthogonality: <phi_k, phi_l> = pi^{(p+1)/2} 2^|k| k! delta"
ANCHOR_BASIS = "orthogonal basis lemma: <psi_k, psi_l>_mu = 2^{p+1} pi^{(p+1)/2} 2^|k| k! delta"
ANCHOR_BLADES = "orthogonal basis lemma: {psi_k e_A} orthogonal"
ANCHOR_SCHRODINGER = "Schroedinger representation: U (X - iP) U^-1 [f] = CK[x f(x)]"


# ---------------------------------------------------------------------------
# the transform


def segal_bargmann_batch(
    f: HermiteGaussian,
    x,
    y,
    route: Route = "fourier",
    ctrl: CKControls = CKControls(),
) -> np.ndarray:
    """U[f] at a batch of split points; returns (N, 2^n) complex coefficients.

    The fourier route raises RegionError when some |y| exceeds the validity radius.
    """
    if not f.rate:
        raise ValueError("transform input needs a Gaussian factor (rate > 0)")
    sig = f.sig
    x = np.atleast_2d(np.asarray(x, dtype=float))
    y = np.atleast_2d(np.asarray(y, dtype=float))
    if route == "fourier":
        if x.shape != (len(x), sig.p + 1) or y.shape != (len(x), sig.q):
            raise ValueError(f"expected x of shape (N, {sig.p + 1}) and y of shape (N, {sig.q})")
        check_region(y)
        spec = f.fourier()
        # exp(-|xi|^2/2) f^(xi) stays in the family: add 1/2 to the rate
        return fourier_integral(spec.poly, float(spec.rate) + 0.5, x, y, sig, ctrl.xi_order, ctrl.chunk)
    if route == "ck":
        return ck_hermite_gaussian_batch(f.heat(TRANSFORM_HEAT_TIME), x, y, "delta_series", ctrl)
    raise ValueError(f"unknown route {route!r}")


def segal_bargmann(
    f: HermiteGaussian,
    bx: SplitPoint,
    route: Route = "fourier",
    ctrl: CKControls = CKControls(),
) -> Multivector:
    vals = segal_bargmann_batch(f, bx.x[None, :], bx.y[None, :], route, ctrl)
    return Multivector(f.sig, vals[0])


@dataclass(frozen=True)
class GSMFunction:
    """A generalized partial-slice monogenic function given by a batched evaluator."""

    sig: Signature
    batch: Callable[[np.ndarray, np.ndarray], np.ndarray]
    provenance: str

    def values(self, x, y) -> np.ndarray:
        return self.batch(np.atleast_2d(np.asarray(x, dtype=float)), np.atleast_2d(np.asarray(y, dtype=float)))

    def __call__(self, bx: SplitPoint) -> Multivector:
        if bx.sig != self.sig:
            raise ValueError(f"signature mismatch {bx.sig} vs {self.sig}")
        return Multivector(self.sig, self.values(bx.x[None, :], bx.y[None, :])[0])


def transform(f: HermiteGaussian, route: Route = "fourier", ctrl: CKControls = CKControls()) -> GSMFunction:
    return GSMFunction(f.sig, lambda x, y: segal_bargmann_batch(f, x, y, route, ctrl), "transform-of(f)")


def ck_of(f0: HermiteGaussian, ctrl: CKControls = CKControls()) -> GSMFunction:
    return GSMFunction(f0.sig, lambda x, y: ck_hermite_gaussian_batch(f0, x, y, "delta_series", ctrl), "ck-of(f0)")


def psi_input(k, sig: Signature) -> HermiteGaussian:
    """x^k exp(-|x|^2/4), the restriction of psi_k to y = 0."""
    return HermiteGaussian.monomial_gaussian(sig, MultiIndex(k), PSI_RATE)


def psi_k(k, sig: Signature, ctrl: CKControls = CKControls()) -> GSMFunction:
    """psi_k = CK[x^k exp(-|x|^2/4)] = 2^{(p+1)/2} U[phi_k]."""
    f0 = psi_input(k, sig)
    return GSMFunction(sig, lambda x, y: ck_hermite_gaussian_batch(f0, x, y, "delta_series", ctrl), "psi_k")


def holomorphic_psi(k: int, x0, y) -> np.ndarray:
    """z^k exp(-z^2/4) with z = x0 + i y; the (p, q) = (0, 1) classical case."""
    z = np.asarray(x0, dtype=float) + 1j * np.asarray(y, dtype=float)
    return z ** k * np.exp(-z * z / 4)


def psi_norm_squared(k, p: int) -> float:
    """<psi_k, psi_k>_mu = 2^{p+1} pi^{(p+1)/2} 2^|k| k!."""
    return 2.0 ** (p + 1) * hermite_norm_squared(k, p)


def hermite_norm_squared(k, p: int) -> float:
    """<phi_k, phi_k>_dx = pi^{(p+1)/2} 2^|k| k!."""
    k = MultiIndex(k)
    return math.pi ** ((p + 1) / 2) * 2.0 ** k.order * k.factorial


def apply_x_minus_ip(f: HermiteGaussian) -> HermiteGaussian:
    """(X - iP) f = x f - D_x f, with X = left paravector multiplication and P = -i D_x."""
    return f.mul_paravector_x() - f.dirac()


# ---------------------------------------------------------------------------
# Gram matrices


def _check_supported(p: int, q: int, max_degree: int) -> None:
    if not 0 <= max_degree <= MAX_DEGREE:
        raise ValueError(f"max_degree must be in 0..{MAX_DEGREE}")
    if p > 2 or not 1 <= q <= 3:
        raise CapabilityError(f"Gram checks support p <= 2 and 1 <= q <= 3, got ({p}, {q})")


@dataclass(frozen=True)
class GramResult:
    indices: list[MultiIndex]
    gram: np.ndarray
    expected: np.ndarray

    def scaled_deviation(self) -> np.ndarray:
        """|G - E| / sqrt(E_kk E_ll), entrywise."""
        d = np.sqrt(np.abs(np.diag(self.expected)))
        return np.abs(self.gram - self.expected) / np.outer(d, d)

    def max_relative_deviation(self) -> float:
        return float(self.scaled_deviation().max())

    def diagonal_deviation(self) -> float:
        e = np.diag(self.expected)
        return float(np.max(np.abs(np.diag(self.gram) - e) / np.abs(e)))

    def offdiagonal_deviation(self) -> float:
        dev = self.scaled_deviation()
        if len(dev) < 2:
            return 0.0
        return float(dev[~np.eye(len(dev), dtype=bool)].max())


def transform_gram(
    p: int, q: int, max_degree: int, orders: RuleOrders = RuleOrders(), ctrl: CKControls = CKControls()
) -> GramResult:
    """Gram of {U phi_k} under dmu (quadrature) against the closed-form Gram of {phi_k}."""
    _check_supported(p, q, max_degree)
    sig = Signature(p, q)
    rule = full_space_rule(p, q, orders)
    ks = multi_indices(p + 1, max_degree)
    phis = [phi_k(k, sig) for k in ks]
    vals = [segal_bargmann_batch(f, rule.x, rule.y, "ck", ctrl) for f in phis]
    gram = mu_gram(vals, MeasureMu(p, q), rule)
    expected = np.array([[lebesgue_inner_product(a, b) for b in phis] for a in phis])
    return GramResult(ks, gram, expected)


def psi_values(p: int, q: int, max_degree: int, orders: RuleOrders, ctrl: CKControls):
    sig = Signature(p, q)
    rule = full_space_rule(p, q, orders)
    ks = multi_indices(p + 1, max_degree)
    vals = [ck_hermite_gaussian_batch(psi_input(k, sig), rule.x, rule.y, "delta_series", ctrl) for k in ks]
    return ks, rule, vals


def psi_gram(
    p: int, q: int, max_degree: int, orders: RuleOrders = RuleOrders(), ctrl: CKControls = CKControls()
) -> tuple[GramResult, np.ndarray]:
    """Scalar Gram of {psi_k} and the Clifford-valued Gram int psi_k^dagger psi_l dmu."""
    _check_supported(p, q, max_degree)
    ks, rule, vals = psi_values(p, q, max_degree, orders, ctrl)
    mu = MeasureMu(p, q)
    gram = mu_gram(vals, mu, rule)
    expected = np.diag([psi_norm_squared(k, p) for k in ks]).astype(complex)
    n = mu.sig.n
    stack = np.stack(vals, axis=1)  # (N, K, dim)
    dag = dagger_array(stack, n)
    w = rule.weights * mu.normalization
    cliff = np.empty((len(ks), len(ks), mu.sig.dim), dtype=complex)
    for i in range(len(ks)):
        prod = gp(dag[:, i : i + 1, :], stack, n)  # (N, K, dim)
        cliff[i] = np.tensordot(w, prod, axes=(0, 0))
    return GramResult(ks, gram, expected), cliff


def blade_gram(cliff: np.ndarray, sig: Signature) -> np.ndarray:
    """<psi_k e_A, psi_l e_B>_mu = Sc(e_A^dagger G_kl e_B) from the Clifford-valued Gram G."""
    K, dim = cliff.shape[0], sig.dim
    blades = np.eye(dim, dtype=complex)
    bdag = dagger_array(blades, sig.n)
    out = np.empty((K * dim, K * dim), dtype=complex)
    for i in range(K):
        for j in range(K):
            g_eb = gp(np.broadcast_to(cliff[i, j], (dim, dim)), blades, sig.n)  # G e_B, row B
            # Sc(e_A^dagger (G e_B)) for all A, B
            left = gp(bdag[:, None, :], g_eb[None, :, :], sig.n)[..., 0]
            out[i * dim : (i + 1) * dim, j * dim : (j + 1) * dim] = left
    return out


# ---------------------------------------------------------------------------
# verification reports


def verify_isometry(
    p: int,
    q: int,
    max_degree: int = 3,
    orders: RuleOrders = RuleOrders(),
    ctrl: CKControls = CKControls(),
    tol: float = 1e-6,
) -> SuiteReport:
    res = transform_gram(p, q, max_degree, orders, ctrl)
    rep = SuiteReport("isometry", {"p": p, "q": q, "max_degree": max_degree})
    tag = f"(p,q)=({p},{q}) |k|<={max_degree}"
    rep.add(f"Gram(U phi) vs Gram(phi), max relative deviation, {tag}", ANCHOR_ISOMETRY, res.max_relative_deviation(), tol)
    closed = np.array([hermite_norm_squared(k, p) for k in res.indices])
    rep.add(
        f"diagonal = pi^((p+1)/2) 2^|k| k!, {tag}",
        ANCHOR_HERMITE,
        float(np.max(np.abs(np.diag(res.gram) - closed) / closed)),
        tol,
    )
    rep.add(f"off-diagonal vanishes (scaled), {tag}", ANCHOR_HERMITE, res.offdiagonal_deviation(), tol)
    rep.data["gram"] = res
    return rep


def verify_basis_orthogonality(
    p: int,
    q: int,
    max_degree: int = 3,
    orders: RuleOrders = RuleOrders(),
    ctrl: CKControls = CKControls(),
    tol: float = 1e-6,
    blade_degree: int = 1,
) -> SuiteReport:
    res, cliff = psi_gram(p, q, max_degree, orders, ctrl)
    sig = Signature(p, q)
    rep = SuiteReport("basis", {"p": p, "q": q, "max_degree": max_degree})
    tag = f"(p,q)=({p},{q}) |k|<={max_degree}"
    rep.add(f"<psi_k, psi_l>_mu diagonal, {tag}", ANCHOR_BASIS, res.diagonal_deviation(), tol)
    rep.add(f"<psi_k, psi_l>_mu off-diagonal (scaled), {tag}", ANCHOR_BASIS, res.offdiagonal_deviation(), tol)
    # blade-multiplied family, on the low-degree block
    nb = len(multi_indices(p + 1, min(blade_degree, max_degree)))
    bg = blade_gram(cliff[:nb, :nb], sig)
    expected = np.kron(np.diag(np.diag(res.expected)[:nb].real), np.eye(sig.dim))
    d = np.sqrt(np.diag(expected))
    dev = float(np.max(np.abs(bg - expected) / np.outer(d, d)))
    rep.add(f"<psi_k e_A, psi_l e_B>_mu = norm^2 delta delta, |k|<={min(blade_degree, max_degree)}", ANCHOR_BLADES, dev, tol)
    rep.data["gram"] = res
    rep.data["clifford_gram"] = cliff
    return rep


def schrodinger_sides(k, sig: Signature, x, y, ctrl: CKControls = CKControls()) -> tuple[np.ndarray, np.ndarray]:
    """(lhs, rhs) for f = psi_k.

    lhs = 2^{(p+1)/2} U[(X - iP) phi_k] through the plane-wave route,
    rhs = CK[x * x^k exp(-|x|^2/4)] through the Laplacian series.
    """
    k = MultiIndex(k)
    lhs = 2.0 ** ((sig.p + 1) / 2) * segal_bargmann_batch(apply_x_minus_ip(phi_k(k, sig)), x, y, "fourier", ctrl)
    rhs = ck_hermite_gaussian_batch(psi_input(k, sig).mul_paravector_x(), x, y, "delta_series", ctrl)
    return lhs, rhs


def relative_deviation(a: np.ndarray, b: np.ndarray) -> float:
    """max_i |a_i - b_i| / max(|b_i|, 1e-300) over the batch; |.| is the Clifford norm."""
    num = norm_array(np.asarray(a) - np.asarray(b))
    den = np.maximum(norm_array(np.asarray(b)), 1e-300)
    return float(np.max(num / den)) if len(num) else 0.0


def verify_schrodinger_representation(
    p: int,
    q: int,
    k,
    x,
    y,
    ctrl: CKControls = CKControls(),
    tol: float = 1e-6,
) -> SuiteReport:
    k = MultiIndex(k)
    if k.order > 3:
        raise ValueError("Schroedinger check supports |k| <= 3")
    sig = Signature(p, q)
    lhs, rhs = schrodinger_sides(k, sig, x, y, ctrl)
    rep = SuiteReport("schrodinger", {"p": p, "q": q, "k": list(k), "points": int(len(np.atleast_2d(x)))})
    rep.add(f"U(X-iP)U^-1 psi_k = CK[x x^k e^(-|x|^2/4)], (p,q)=({p},{q}) k={tuple(k)}", ANCHOR_SCHRODINGER,
            relative_deviation(lhs, rhs), tol)
    return rep
