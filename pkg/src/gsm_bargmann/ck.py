"""Generalized partial-slice CK-extension.

Three independent evaluation paths:

* ``ck_polynomial``: the terminating series sum_m (y D_x)^m f0 / m! on polynomials;
* ``fueter_polynomial`` / ``taylor_reconstruction``: symmetrized products of the
  Fueter variables z_l = x_l + r eta e_l;
* ``ck_hermite_gaussian``: polynomial x Gaussian inputs, either through the
  plane-wave kernel e(bx, xi) integrated against the exact Fourier transform,
  or through the even/odd Laplacian series evaluated pointwise.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Literal

import numpy as np
from scipy.special import gammaln

from .clifford import (
    Multivector,
    Signature,
    SplitPoint,
    left_mul_generator,
    left_mul_paravector,
    norm_array,
)
from .functions import (
    CliffordPolynomial,
    HermiteGaussian,
    MultiIndex,
    normalized_hermite_table,
)
from .parallel import map_chunks

# Fourier-route quadrature is only trusted up to this |y|.
Y_VALIDITY_RADIUS = 4.0


class RegionError(ValueError):
    """Point lies outside the documented quadrature validity region."""


class NonConvergenceError(RuntimeError):
    def __init__(self, message: str, residual: float):
        super().__init__(f"{message} (achieved residual {residual:.3e})")
        self.residual = residual


class GeometryError(ValueError):
    pass


@dataclass(frozen=True)
class CKControls:
    tol: float = 1e-15
    max_terms: int = 200
    xi_order: int = 60
    chunk: int = 2048


# ---------------------------------------------------------------------------
# plane-wave kernel


def sinhc(t):
    """sinh(t)/t, with a Taylor branch near 0 (6 terms, error < 1e-40 for t < 1e-4)."""
    t = np.asarray(t, dtype=float)
    out = np.empty_like(t)
    small = np.abs(t) < 1e-4
    ts = t[small]
    t2 = ts * ts
    out[small] = 1 + t2 / 6 * (1 + t2 / 20 * (1 + t2 / 42 * (1 + t2 / 72 * (1 + t2 / 110))))
    big = ~small
    out[big] = np.sinh(t[big]) / t[big]
    return out


def kernel_e_array(x, y, xi, sig: Signature) -> np.ndarray:
    """Batched e(x + y, xi) for broadcastable x (..., p+1), y (..., q), xi (..., p+1)."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    xi = np.asarray(xi, dtype=float)
    shape = np.broadcast_shapes(x.shape[:-1], y.shape[:-1], xi.shape[:-1])
    t = np.linalg.norm(y, axis=-1) * np.linalg.norm(xi, axis=-1)
    phase = np.exp(1j * np.sum(x * xi, axis=-1))
    xi_mv = np.zeros(shape + (sig.dim,), dtype=complex)
    xi_mv[..., 0] = xi[..., 0]
    for j in range(1, sig.p + 1):
        xi_mv[..., 1 << (j - 1)] = xi[..., j]
    y_xi = left_mul_paravector(np.broadcast_to(y, shape + y.shape[-1:]), xi_mv, sig.n, first=sig.p + 1)
    out = 1j * sinhc(t)[..., None] * y_xi
    out[..., 0] += np.cosh(t)
    return out * phase[..., None]


def kernel_e(bx: SplitPoint, xi) -> Multivector:
    """e(bx, xi) = (cosh t + i (y xi) sinh(t)/t) exp(i <x, xi>), t = |y| |xi|."""
    xi = np.asarray(xi, dtype=float)
    sig = bx.sig
    if xi.shape != (sig.p + 1,):
        raise ValueError(f"xi must have p+1 = {sig.p + 1} components")
    return Multivector(sig, kernel_e_array(bx.x, bx.y, xi, sig))


def kernel_identity_suite(bx: SplitPoint, xi, tol: float = 1e-10) -> dict[str, float]:
    """Relative deviations of the product, conjugation, square and power laws.

    Returns {identity name: relative deviation}; raises AssertionError naming
    the first identity above ``tol``.
    """
    xi = np.asarray(xi, dtype=float)
    x, y = bx.x, bx.y
    zx, zy = np.zeros_like(x), np.zeros_like(y)

    def e(xx, yy, kk):
        return kernel_e(SplitPoint(xx, yy), kk)

    full = e(x, y, xi)
    ex, ey = e(x, zy, xi), e(zx, y, xi)
    checks = {
        "product: e(bx) = e(x)e(y)": (full, ex * ey),
        "product: e(x)e(y) = e(y)e(x)": (ex * ey, ey * ex),
        "dagger: e(bx)^+ = e(-x)e(y)": (full.dagger(), e(-x, zy, xi) * ey),
        "dagger: e(-x)e(y) = e(x,-xi)e(y)": (e(-x, zy, xi) * ey, e(x, zy, -xi) * ey),
        "square: e(bx)^+e(bx) = e(y)^+e(y)": (full.dagger() * full, ey.dagger() * ey),
        "square: e(y)^+e(y) = e(2y)": (ey.dagger() * ey, e(zx, 2 * y, xi)),
        "square: e(2y) = e(y,2xi)": (e(zx, 2 * y, xi), e(zx, y, 2 * xi)),
    }
    for k in (2, 3):
        checks[f"power: e(bx)^{k} = e({k}bx)"] = (full ** k, e(k * x, k * y, xi))
        checks[f"power: e({k}bx) = e(bx,{k}xi)"] = (e(k * x, k * y, xi), e(x, y, k * xi))
    report = {}
    for name, (lhs, rhs) in checks.items():
        scale = max(lhs.norm(), rhs.norm(), 1e-300)
        report[name] = (lhs - rhs).norm() / scale
    bad = [name for name, dev in report.items() if not dev <= tol]
    if bad:
        raise AssertionError(f"kernel identity failed: {bad[0]} (deviation {report[bad[0]]:.3e})")
    return report


# ---------------------------------------------------------------------------
# polynomial inputs


def _y_multivector(bx: SplitPoint) -> Multivector:
    return bx.y_vector()


def ck_polynomial(f0: CliffordPolynomial, bx: SplitPoint) -> Multivector:
    """exp(y D_x) f0 evaluated at bx; terminates after deg f0 + 1 terms."""
    if f0.sig != bx.sig:
        raise ValueError(f"signature mismatch {f0.sig} vs {bx.sig}")
    y = _y_multivector(bx)
    term = f0
    total = term(bx.x)
    m = 0
    while not term.is_zero:
        m += 1
        term = term.dirac().left_mul(y).scale(1.0 / m)
        total = total + term(bx.x)
    return Multivector(f0.sig, total)


def ck_polynomial_series(f0: CliffordPolynomial, y: Multivector) -> CliffordPolynomial:
    """exp(y D_x) f0 as a polynomial in x for a fixed y-part 1-vector."""
    term, total, m = f0, f0, 0
    while not term.is_zero:
        m += 1
        term = term.dirac().left_mul(y).scale(1.0 / m)
        total = total + term
    return total


def default_direction(sig: Signature) -> np.ndarray:
    eta = np.zeros(sig.q)
    eta[0] = 1.0
    return eta


def fueter_variables(x, r: float, eta, sig: Signature) -> list[Multivector]:
    """z_l = x_l + r eta e_l, l = 0..p (e_0 = 1)."""
    eta = np.asarray(eta, dtype=float)
    if not math.isclose(float(np.linalg.norm(eta)), 1.0, rel_tol=0, abs_tol=1e-12):
        raise ValueError("eta must be a unit vector")
    eta_mv = Multivector.paravector(sig, eta, first=sig.p + 1)
    return [
        Multivector.scalar(sig, x[l]) + r * (eta_mv * Multivector.generator(sig, l))
        for l in range(sig.p + 1)
    ]


def fueter_polynomial(k, x, r: float, eta, sig: Signature) -> Multivector:
    """P_{eta,k}(x, r) = (1/|k|!) sum over distinct orderings of z_{j_1} ... z_{j_|k|}."""
    k = MultiIndex(k)
    z = fueter_variables(np.asarray(x, dtype=float), r, eta, sig)

    @lru_cache(maxsize=None)
    def ordered_sum(kk: tuple) -> Multivector:
        if not any(kk):
            return Multivector.scalar(sig)
        out = Multivector.zero(sig)
        for l, v in enumerate(kk):
            if v:
                rest = list(kk)
                rest[l] -= 1
                out = out + z[l] * ordered_sum(tuple(rest))
        return out

    return ordered_sum(tuple(k)) / math.factorial(k.order)


def _point_direction(bx: SplitPoint) -> tuple[float, np.ndarray]:
    om = bx.omega
    return bx.r, (default_direction(bx.sig) if om is None else om)


def taylor_reconstruction(f0: CliffordPolynomial, bx: SplitPoint) -> Multivector:
    """sum_k P_k(bx) d_k f0(0), a finite sum for polynomial f0."""
    r, eta = _point_direction(bx)
    total = Multivector.zero(f0.sig)
    for k, c in f0.terms.items():
        deriv0 = Multivector(f0.sig, k.factorial * c)
        total = total + fueter_polynomial(k, bx.x, r, eta, f0.sig) * deriv0
    return total


# ---------------------------------------------------------------------------
# polynomial x Gaussian inputs


def check_region(y) -> None:
    r = np.linalg.norm(np.atleast_2d(y), axis=-1)
    if np.any(r > Y_VALIDITY_RADIUS):
        raise RegionError(f"|y| = {r.max():.3g} exceeds the quadrature validity radius {Y_VALIDITY_RADIUS}")


@lru_cache(maxsize=None)
def hermite_rule_nd(order: int, dim: int, rate: float):
    """Tensor Gauss-Hermite nodes/weights for weight exp(-rate |xi|^2) on R^dim."""
    from .quadrature import gauss_hermite_rule

    rule = gauss_hermite_rule(order, dim)
    s = math.sqrt(rate)
    nodes = rule.nodes / s
    weights = rule.weights / s ** dim
    nodes.setflags(write=False)
    weights.setflags(write=False)
    return nodes, weights


def fourier_integral(spec_poly: CliffordPolynomial, spec_rate: float, x, y, sig: Signature, order: int, chunk: int = 2048):
    """(2 pi)^{-d/2} int e(bx, xi) P(xi) exp(-rate |xi|^2) dxi at each (x, y)."""
    d = sig.p + 1
    nodes, weights = hermite_rule_nd(order, d, float(spec_rate))
    vals = spec_poly(nodes) * weights[:, None]  # (M, dim)
    xi_vals = left_mul_paravector(nodes, vals, sig.n)  # xi * P(xi)
    xi_norm = np.linalg.norm(nodes, axis=1)
    pref = (2 * math.pi) ** (-d / 2)

    dim = sig.dim
    # real/imaginary parts side by side so the big products stay in real arithmetic
    v_ri = np.concatenate([vals.real, vals.imag], axis=1)
    xv_ri = np.concatenate([xi_vals.real, xi_vals.imag], axis=1)

    def split_product(cw, sw, mat):
        c, s = cw @ mat, sw @ mat
        return (c[:, :dim] - s[:, dim:]) + 1j * (c[:, dim:] + s[:, :dim])

    def work(xs, ys):
        r = np.linalg.norm(ys, axis=1)
        arg = xs @ nodes.T
        cos, sin = np.cos(arg), np.sin(arg)
        t = r[:, None] * xi_norm[None, :]
        # cosh and sinh from one expm1, which keeps sinh accurate for small t
        em = np.expm1(t)
        et = em + 1.0
        ch = 0.5 * (et + 1.0 / et)
        with np.errstate(invalid="ignore", divide="ignore"):
            sh = 0.5 * (em + em / et) / t
        small = t < 1e-4
        if small.any():
            sh[small] = sinhc(t[small])
        a = split_product(cos * ch, sin * ch, v_ri)
        b = split_product(cos * sh, sin * sh, xv_ri)
        return pref * (a + 1j * left_mul_paravector(ys, b, sig.n, first=sig.p + 1))

    return map_chunks(work, x, y, chunk=chunk)


def _scaled_axis_derivatives(s: np.ndarray, power: int, rate: float, nmax: int) -> np.ndarray:
    """u^{(n)}(s) / sqrt(n!) for u(s) = s^power exp(-rate s^2), n = 0..nmax; shape (N, nmax+1)."""
    sa = math.sqrt(rate)
    h = normalized_hermite_table(sa * s, nmax)
    n = np.arange(nmax + 1)
    g = ((-1.0) ** n) * (2 * rate) ** (n / 2) * h * np.exp(-rate * s * s)[:, None]
    if power == 0:
        return g
    out = np.zeros_like(g)
    for i in range(power + 1):
        # C(n,i) sqrt((n-i)!/n!) = sqrt(n!/(n-i)!) / i!
        valid = n >= i
        fall = np.zeros(nmax + 1)
        fall[valid] = np.exp(0.5 * (gammaln(n[valid] + 1) - gammaln(n[valid] - i + 1)) - gammaln(i + 1))
        coeff = math.factorial(power) / math.factorial(power - i)
        shifted = np.zeros_like(g)
        shifted[:, i:] = g[:, : nmax + 1 - i]
        out += fall[None, :] * coeff * (s ** (power - i))[:, None] * shifted
    return out


def _convolve_truncated(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    m = a.shape[1]
    out = np.empty_like(a)
    for j in range(m):
        out[:, j] = np.einsum("ni,ni->n", a[:, : j + 1], b[:, j::-1])
    return out


def delta_series_terms(f0: HermiteGaussian, x: np.ndarray, y: np.ndarray, nterms: int) -> np.ndarray:
    """Series terms T_m(bx), m = 0..nterms-1, of CK[f0] (shape (N, nterms, 2^n)).

    T_m = r^{2m}/(2m)! (-Delta)^m f0(x) + omega D_x r^{2m+1}/(2m+1)! (-Delta)^m f0(x),
    computed through per-axis derivative sequences combined by truncated
    convolution (multinomial expansion of (-Delta)^m).
    """
    sig = f0.sig
    d = sig.p + 1
    rate = float(f0.rate)
    r = np.linalg.norm(y, axis=1)
    with np.errstate(invalid="ignore", divide="ignore"):
        omega = np.where(r[:, None] > 0, y / np.where(r > 0, r, 1.0)[:, None], 0.0)
    m = np.arange(nterms)
    nmax = 2 * nterms - 1
    even_fac = np.exp(0.5 * gammaln(2 * m + 1) - gammaln(m + 1)) * (-1.0) ** m
    odd_fac = np.exp(0.5 * gammaln(2 * m + 2) - gammaln(m + 1)) * (-1.0) ** m
    with np.errstate(divide="ignore"):
        logr = np.log(np.where(r > 0, r, 1.0))
    base = gammaln(m + 1)[None, :]
    w_even = np.exp(2 * m[None, :] * logr[:, None] + base - gammaln(2 * m + 1)[None, :])
    w_odd = np.exp((2 * m + 1)[None, :] * logr[:, None] + base - gammaln(2 * m + 2)[None, :])
    w_even = np.where(r[:, None] > 0, w_even, (m == 0)[None, :].astype(float))
    w_odd = np.where(r[:, None] > 0, w_odd, 0.0)

    cache: dict = {}

    def axis_seq(axis: int, power: int):
        key = (axis, power)
        if key not in cache:
            dn = _scaled_axis_derivatives(x[:, axis], power, rate, nmax)
            cache[key] = (dn[:, 0::2] * even_fac, dn[:, 1::2] * odd_fac)
        return cache[key]

    out = np.zeros((x.shape[0], nterms, sig.dim), dtype=complex)
    for k, c in f0.poly.terms.items():
        seqs = [axis_seq(j, k[j]) for j in range(d)]
        even = seqs[0][0]
        for j in range(1, d):
            even = _convolve_truncated(even, seqs[j][0])
        out += (w_even * even)[:, :, None] * c
        odd_vec = np.zeros((x.shape[0], nterms, sig.dim), dtype=complex)
        for i in range(d):
            acc = seqs[i][1]
            for j in range(d):
                if j != i:
                    acc = _convolve_truncated(acc, seqs[j][0])
            odd_vec += (w_odd * acc)[:, :, None] * left_mul_generator(i, c, sig.n)
        out += left_mul_paravector(omega[:, None, :], odd_vec, sig.n, first=sig.p + 1)
    return out


def delta_series(f0: HermiteGaussian, x, y, tol: float = 1e-15, max_terms: int = 200, chunk: int = 2048) -> np.ndarray:
    """CK[f0] at a batch of points via the even/odd Laplacian series.

    Stops once three consecutive term norms fall below tol * (1 + |partial sum|);
    starts with 32 terms and doubles up to ``max_terms``.
    """
    if not f0.rate:
        raise ValueError("delta-series route needs a Gaussian factor (rate > 0)")

    def work(xs, ys):
        nterms = min(32, max_terms)
        while True:
            terms = delta_series_terms(f0, xs, ys, nterms)
            partial = np.cumsum(terms, axis=1)
            tn = norm_array(terms)
            small = tn < tol * (1 + norm_array(partial))
            run = small[:, 2:] & small[:, 1:-1] & small[:, :-2]
            done = run.any(axis=1)
            if done.all():
                stop = np.argmax(run, axis=1) + 2  # index of the third small term
                return partial[np.arange(len(xs)), stop]
            if nterms >= max_terms:
                resid = float(np.max(tn[~done, -3:] / (1 + norm_array(partial[~done, -1:]))))
                raise NonConvergenceError(f"Laplacian series did not converge within {max_terms} terms", resid)
            nterms = min(2 * nterms, max_terms)

    return map_chunks(work, x, y, chunk=chunk)


def ck_hermite_gaussian_batch(
    f0: HermiteGaussian,
    x,
    y,
    route: Literal["fourier", "delta_series"] = "delta_series",
    ctrl: CKControls = CKControls(),
) -> np.ndarray:
    sig = f0.sig
    x = np.atleast_2d(np.asarray(x, dtype=float))
    y = np.atleast_2d(np.asarray(y, dtype=float))
    if x.shape != (len(x), sig.p + 1) or y.shape != (len(x), sig.q):
        raise ValueError(f"expected x of shape (N, {sig.p + 1}) and y of shape (N, {sig.q})")
    if not f0.rate:
        raise ValueError("ck_hermite_gaussian needs rate > 0")
    if route == "fourier":
        check_region(y)
        spec = f0.fourier()
        return fourier_integral(spec.poly, float(spec.rate), x, y, sig, ctrl.xi_order, ctrl.chunk)
    if route == "delta_series":
        return delta_series(f0, x, y, ctrl.tol, ctrl.max_terms, ctrl.chunk)
    raise ValueError(f"unknown route {route!r}")


def ck_hermite_gaussian(
    f0: HermiteGaussian,
    bx: SplitPoint,
    route: Literal["fourier", "delta_series"] = "delta_series",
    ctrl: CKControls = CKControls(),
) -> Multivector:
    vals = ck_hermite_gaussian_batch(f0, bx.x[None, :], bx.y[None, :], route, ctrl)
    return Multivector(f0.sig, vals[0])


# ---------------------------------------------------------------------------
# monogenicity


def monogenicity_residual(f: Callable[[SplitPoint], Multivector], bx: SplitPoint, h: float = 1e-4) -> float:
    """|(D_x + omega d_r) f| at bx by central differences along x_i and the ray omega."""
    r = bx.r
    if not r > h:
        raise GeometryError(f"need |y| = {r} > h = {h} to difference along the ray")
    om = bx.omega
    sig = bx.sig
    acc = np.zeros(sig.dim, dtype=complex)
    for i in range(sig.p + 1):
        step = np.zeros(sig.p + 1)
        step[i] = h
        diff = (f(SplitPoint(bx.x + step, bx.y)).coeff - f(SplitPoint(bx.x - step, bx.y)).coeff) / (2 * h)
        acc += left_mul_generator(i, diff, sig.n)
    dr = (f(SplitPoint(bx.x, (r + h) * om)).coeff - f(SplitPoint(bx.x, (r - h) * om)).coeff) / (2 * h)
    acc += left_mul_paravector(om, dr, sig.n, first=sig.p + 1)
    return float(norm_array(acc))
