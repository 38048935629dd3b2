"""Named verification suites; each returns a SuiteReport for one signature (p, q)."""
from __future__ import annotations

import math
import time
from typing import Callable

import numpy as np

from . import bargmann as bg
from .ck import (
    check_region,
    ck_hermite_gaussian_batch,
    ck_polynomial,
    fueter_polynomial,
    kernel_e,
    kernel_identity_suite,
    monogenicity_residual,
    taylor_reconstruction,
)
from .clifford import (
    Multivector,
    Signature,
    SplitPoint,
    conjugation_signs,
    dagger_array,
    gp,
    inner_array,
    norm_array,
)
from .config import RunConfig
from .functions import CliffordPolynomial, multi_indices, phi_k
from .quadrature import CapabilityError, MeasureMu, half_line_rule, sphere_area, y_space_rule
from .report import SuiteReport, merge_reports
from .sampling import sample_split_points, sample_xi

SUITES = ("clifford", "kernel", "ck", "quadrature", "isometry", "basis", "schrodinger")

# stream ids keep each suite's random draws independent of which suites run
_STREAM = {name: i + 1 for i, name in enumerate(SUITES)}

CLIFFORD_MAX_N = 6
RADIAL_S_VALUES = (0.5, 1.0, 2.0)


def _rel(a: np.ndarray, b: np.ndarray, floor: float = 1e-300) -> float:
    num = norm_array(np.asarray(a) - np.asarray(b))
    den = np.maximum(np.maximum(norm_array(np.asarray(a)), norm_array(np.asarray(b))), floor)
    return float(np.max(num / den)) if np.size(num) else 0.0


def _random_mv(rng: np.random.Generator, n_samples: int, dim: int) -> np.ndarray:
    return rng.standard_normal((n_samples, dim)) + 1j * rng.standard_normal((n_samples, dim))


# ---------------------------------------------------------------------------
# clifford


def suite_clifford(cfg: RunConfig) -> SuiteReport:
    sig = Signature(cfg.p, cfg.q)
    n, dim = sig.n, sig.dim
    if n > CLIFFORD_MAX_N:
        raise CapabilityError(f"Clifford law suite runs for n <= {CLIFFORD_MAX_N}, got n = {n}")
    tol = cfg.tolerance(1e-12)
    rng = cfg.rng(_STREAM["clifford"])
    N = cfg.clifford_samples
    rep = SuiteReport("clifford", {"p": cfg.p, "q": cfg.q, "samples": N})
    anchor_norm = "norm-product proposition: |lm| <= 2^{n/2}|l||m|"

    # generators: e_i e_j + e_j e_i = -2 delta_ij
    gens = np.zeros((n, dim), dtype=complex)
    for i in range(n):
        gens[i, 1 << i] = 1.0
    anti = gp(gens[:, None, :], gens[None, :, :], n) + gp(gens[None, :, :], gens[:, None, :], n)
    target = np.zeros_like(anti)
    target[..., 0] = -2 * np.eye(n)
    rep.add("generators: e_i e_j + e_j e_i = -2 delta_ij", "Clifford relations e_i^2 = -1", float(np.abs(anti - target).max()), tol)

    # random 1-vectors: uv + vu = -2<u, v>
    u = np.zeros((N, dim), dtype=complex)
    v = np.zeros((N, dim), dtype=complex)
    cu, cv = rng.standard_normal((N, n)), rng.standard_normal((N, n))
    for i in range(n):
        u[:, 1 << i] = cu[:, i]
        v[:, 1 << i] = cv[:, i]
    lhs = gp(u, v, n) + gp(v, u, n)
    rhs = np.zeros_like(lhs)
    rhs[:, 0] = -2 * np.sum(cu * cv, axis=1)
    scale = np.linalg.norm(cu, axis=1) * np.linalg.norm(cv, axis=1)
    rep.add("1-vectors: uv + vu = -2<u,v>", "Clifford relations e_i e_j + e_j e_i = -2 delta_ij",
            float(np.max(norm_array(lhs - rhs) / scale)), tol)

    a, b, c = (_random_mv(rng, N, dim) for _ in range(3))
    ab = gp(a, b, n)
    left, right = gp(ab, c, n), gp(a, gp(b, c, n), n)
    rep.add("associativity (ab)c = a(bc)", "Clifford algebra is associative", _rel(left, right), tol)

    na, nb = norm_array(a), norm_array(b)
    tri = np.max((norm_array(a + b) - na - nb) / (na + nb))
    rep.add("triangle |a+b| <= |a|+|b| (excess)", anchor_norm, max(0.0, float(tri)), tol)
    bound = 2.0 ** (n / 2) * na * nb
    excess = np.max((norm_array(ab) - bound) / bound)
    rep.add("|ab| <= 2^{n/2}|a||b| (excess)", anchor_norm, max(0.0, float(excess)), tol)

    lam = np.zeros((N, dim), dtype=complex)
    cl = rng.standard_normal((N, n + 1))
    lam[:, 0] = cl[:, 0]
    for i in range(n):
        lam[:, 1 << i] = cl[:, i + 1]
    nl = norm_array(lam)
    lam_dag = gp(lam, dagger_array(lam, n), n)
    sq = np.zeros_like(lam_dag)
    sq[:, 0] = nl ** 2
    rep.add("real paravector: l l^dagger = |l|^2", "norm-product proposition: l l^dagger = |l|^2",
            float(np.max(norm_array(lam_dag - sq) / nl ** 2)), tol)
    mult = np.abs(norm_array(gp(lam, b, n)) - nl * nb) / (nl * nb)
    rep.add("real paravector: |l m| = |l||m|", "norm-product proposition: |lm| = |l||m|", float(mult.max()), tol)

    signs = conjugation_signs(n)
    rep.add("bar is an involution", "Clifford conjugation", _rel(a * signs * signs, a), tol)
    rep.add("dagger is an involution", "Hermitian conjugation", _rel(dagger_array(dagger_array(a, n), n), a), tol)
    s1 = inner_array(a, b)
    s2 = np.conj(inner_array(b, a))
    s3 = gp(b, dagger_array(a, n), n)[:, 0]
    sc = na * nb
    rep.add("Sc(l^dagger m) = conj Sc(m^dagger l)", "inner product (l,m) = Sc(l^dagger m)", float(np.max(np.abs(s1 - s2) / sc)), tol)
    rep.add("Sc(l^dagger m) = Sc(m l^dagger)", "inner product (l,m) = Sc(l^dagger m) = Sc(m l^dagger)",
            float(np.max(np.abs(s1 - s3) / sc)), tol)
    coef = np.sum(np.conj(a) * b, axis=1)
    rep.add("Sc(l^dagger m) = sum conj(l_A) m_A", "inner product (l,m) = Sc(l^dagger m)", float(np.max(np.abs(s1 - coef) / sc)), tol)
    return rep


# ---------------------------------------------------------------------------
# kernel


def suite_kernel(cfg: RunConfig) -> SuiteReport:
    sig = Signature(cfg.p, cfg.q)
    tol = cfg.tolerance(1e-10)
    mono_tol = cfg.tolerance(1e-6)
    rng = cfg.rng(_STREAM["kernel"])
    rep = SuiteReport("kernel", {"p": cfg.p, "q": cfg.q, "samples": cfg.kernel_samples})
    x, y = sample_split_points(sig, cfg.kernel_samples, rng)
    xi = sample_xi(sig, cfg.kernel_samples, rng)
    worst: dict[str, float] = {}
    for i in range(cfg.kernel_samples):
        devs = kernel_identity_suite(SplitPoint(x[i], y[i]), xi[i], tol=math.inf)
        for name, d in devs.items():
            worst[name] = max(worst.get(name, 0.0), d)
    for name, d in worst.items():
        rep.add(f"kernel {name}", "kernel basic identities: " + name.split(":")[0], d, tol)

    # restriction to y = 0 is the plane wave
    zero = np.zeros(sig.q)
    dev = 0.0
    for i in range(min(cfg.kernel_samples, 50)):
        val = kernel_e(SplitPoint(x[i], zero), xi[i])
        dev = max(dev, abs(val.coeff[0] - np.exp(1j * x[i] @ xi[i])) + float(np.linalg.norm(val.coeff[1:])))
    rep.add("kernel y=0: e(x, xi) = exp(i<x,xi>)", "kernel closed form cosh + i (y xi) sinh(t)/t", dev, tol)

    dev = 0.0
    for i in range(cfg.monogenicity_points):
        bx = SplitPoint(x[i], y[i])
        f = lambda pt, k=xi[i]: kernel_e(pt, k)
        dev = max(dev, monogenicity_residual(f, bx, 1e-4) / (1 + f(bx).norm()))
    rep.add("kernel monogenicity residual, h=1e-4", "kernel e is left generalized partial-slice monogenic", dev, mono_tol)
    return rep


# ---------------------------------------------------------------------------
# CK extension


def _random_polynomial(sig: Signature, degree: int, rng: np.random.Generator) -> CliffordPolynomial:
    terms = {k: rng.standard_normal(sig.dim) + 1j * rng.standard_normal(sig.dim) for k in multi_indices(sig.p + 1, degree)}
    return CliffordPolynomial(sig, terms)


def suite_ck(cfg: RunConfig) -> SuiteReport:
    sig = Signature(cfg.p, cfg.q)
    exact = cfg.tolerance(1e-12)
    route_tol = cfg.tolerance(1e-8)
    mono_tol = cfg.tolerance(1e-6)
    rng = cfg.rng(_STREAM["ck"])
    ctrl = cfg.ck_controls()
    rep = SuiteReport("ck", {"p": cfg.p, "q": cfg.q, "points": cfg.ck_points})
    x, y = sample_split_points(sig, cfg.ck_points, rng)
    pts = [SplitPoint(x[i], y[i]) for i in range(cfg.ck_points)]

    # CK[x^k] = k! P_k
    dev = 0.0
    for k in multi_indices(sig.p + 1, 5):
        mono = CliffordPolynomial.monomial(sig, k)
        for bx in pts:
            lhs = ck_polynomial(mono, bx)
            rhs = k.factorial * fueter_polynomial(k, bx.x, bx.r, bx.omega, sig)
            dev = max(dev, (lhs - rhs).norm() / max(lhs.norm(), rhs.norm(), 1e-300))
    rep.add("CK[x^k] = k! P_k, |k|<=5", "Fueter polynomial proposition: CK[x^k] = k! P_k", dev, exact)

    # Fueter norm identity
    dev = 0.0
    for k in multi_indices(sig.p + 1, 5):
        for bx in pts:
            pk = fueter_polynomial(k, bx.x, bx.r, bx.omega, sig)
            n2 = pk.norm() ** 2
            dev = max(dev, (pk * pk.bar() - Multivector.scalar(sig, n2)).norm() / max(n2, 1e-300))
    rep.add("P_k bar(P_k) = |P_k|^2, |k|<=5", "Fueter norm identity P_k bar(P_k) = |P_k|^2", dev, exact)

    # closed form for plane-wave polynomials
    dev = 0.0
    xis = sample_xi(sig, cfg.ck_points, rng)
    for i, bx in enumerate(pts):
        xi = xis[i]
        lin = CliffordPolynomial.linear_form(sig, xi)
        base = Multivector.scalar(sig, float(bx.x @ xi)) + bx.y_vector() * Multivector.paravector(sig, xi)
        for k in range(1, 6):
            lhs = ck_polynomial(lin.power(k), bx)
            rhs = base ** k
            dev = max(dev, (lhs - rhs).norm() / max(lhs.norm(), rhs.norm(), 1e-300))
    rep.add("CK[<x,xi>^k] = (<x,xi> + y xi)^k, k<=5", "plane-wave example: (<x,xi> + y xi)^k", dev, exact)

    # Taylor reconstruction
    dev = 0.0
    poly = _random_polynomial(sig, 5, rng)
    for bx in pts:
        lhs = taylor_reconstruction(poly, bx)
        rhs = ck_polynomial(poly, bx)
        dev = max(dev, (lhs - rhs).norm() / max(lhs.norm(), rhs.norm(), 1e-300))
    rep.add("Taylor reconstruction sum P_k d_k f0(0) = CK[f0], deg<=5", "Taylor expansion in Fueter polynomials", dev, exact)

    # restriction y = 0 and dual route; the plane-wave route runs once on both point sets
    zero = np.zeros((cfg.ck_points, sig.q))
    xx, yy = np.concatenate([x, x]), np.concatenate([zero, y])
    exact_dev = wave_dev = route_dev = 0.0
    for k in multi_indices(sig.p + 1, 4):
        f0 = bg.psi_input(k, sig)
        ref = f0(x)
        wave = ck_hermite_gaussian_batch(f0, xx, yy, "fourier", ctrl)
        series = ck_hermite_gaussian_batch(f0, xx, yy, "delta_series", ctrl)
        n = cfg.ck_points
        exact_dev = max(exact_dev, _rel(series[:n], ref))
        pr = CliffordPolynomial.monomial(sig, k)
        for i in range(n):
            exact_dev = max(exact_dev, _rel(ck_polynomial(pr, SplitPoint(x[i], zero[i])).coeff[None], pr(x[i])[None]))
        # quadrature error is absolute, so measure it against the size of f0 on the batch
        wave_dev = max(wave_dev, float(norm_array(wave[:n] - ref).max() / norm_array(ref).max()))
        route_dev = max(route_dev, _rel(wave[n:], series[n:]))
    rep.add("restriction CK[f0](x, 0) = f0(x), polynomial and Laplacian-series routes", "CK restriction f(x, 0) = f0(x)",
            exact_dev, exact)
    rep.add("restriction CK[f0](x, 0) = f0(x), plane-wave route (batch-scaled)", "CK restriction f(x, 0) = f0(x)",
            wave_dev, exact)
    rep.add("CK[x^k e^{-|x|^2/4}] plane-wave vs Laplacian-series route, |k|<=4",
            "CK extension: plane-wave integral = Laplacian series", route_dev, route_tol)

    # monogenicity of extensions
    dev = 0.0
    for k in multi_indices(sig.p + 1, 3):
        mono = CliffordPolynomial.monomial(sig, k)
        f0 = bg.psi_input(k, sig)
        g = bg.ck_of(f0, ctrl)
        for bx in pts[:5]:
            dev = max(dev, monogenicity_residual(lambda pt: ck_polynomial(mono, pt), bx) / (1 + ck_polynomial(mono, bx).norm()))
            dev = max(dev, monogenicity_residual(g, bx) / (1 + g(bx).norm()))
    rep.add("monogenicity residual of CK extensions, |k|<=3", "CK extension is generalized partial-slice monogenic", dev, mono_tol)
    return rep


# ---------------------------------------------------------------------------
# quadrature


def radial_identity(q: int, s: float, order: int | None = None) -> tuple[float, float]:
    """(quadrature, closed form) for int e^{-|y|^2}/|y|^{q-1} cosh(2|y|s) dy = (sqrt(pi)/2)|S| e^{s^2}."""
    order = order or max(80, math.ceil(40 * s * s))
    rule = y_space_rule(q, order)
    r = np.linalg.norm(rule.nodes, axis=1)
    val = float(rule.weights @ np.cosh(2 * r * s))
    return val, math.sqrt(math.pi) / 2 * sphere_area(q) * math.exp(s * s)


def odd_integral(q: int, s: float, order: int | None = None) -> np.ndarray:
    """int e^{-|y|^2}/|y|^{q-1} sinh(2|y|s)/(|y|s) y dy, a vector that vanishes by symmetry."""
    order = order or max(80, math.ceil(40 * s * s))
    rule = y_space_rule(q, order)
    r = np.linalg.norm(rule.nodes, axis=1)
    f = np.sinh(2 * r * s) / (r * s)
    return (rule.weights * f) @ rule.nodes


def suite_quadrature(cfg: RunConfig) -> SuiteReport:
    q = cfg.q
    if not 1 <= q <= 3:
        raise CapabilityError(f"quadrature suite supports q = 1, 2, 3; got q = {q}")
    rep = SuiteReport("quadrature", {"p": cfg.p, "q": q})
    anchor = "isometry proof: int e^{-|y|^2}|y|^{1-q} cosh(2|y||xi|) dy = (sqrt(pi)/2)|S| e^{|xi|^2}"
    for s in RADIAL_S_VALUES:
        val, ref = radial_identity(q, s)
        rep.add(f"radial cosh identity, q={q}, s={s}", anchor, abs(val - ref) / ref, cfg.tolerance(1e-8))
        # self-convergence under doubled radial and sphere orders
        order = max(80, math.ceil(40 * s * s))
        fine = y_space_rule(q, 2 * order, 8)
        dbl = float(fine.weights @ np.cosh(2 * np.linalg.norm(fine.nodes, axis=1) * s))
        rep.add(f"radial cosh identity self-convergence (doubled orders), q={q}, s={s}", "quadrature self-convergence",
                abs(dbl - val) / abs(val), cfg.tolerance(1e-8))
        odd = odd_integral(q, s)
        rep.add(f"odd sinh integral vanishes (scaled), q={q}, s={s}",
                "isometry proof: odd integrand int ... sinh(2|y||xi|)/(|y||xi|) y dy = 0",
                float(np.linalg.norm(odd)) / ref, cfg.tolerance(1e-10))
    mu = MeasureMu(cfg.p, q)
    mass = mu.normalization * float(np.sum(y_space_rule(q, 80).weights))
    rep.add(f"y-marginal mass of dmu = 1, q={q}", "measure dmu normalization (2/sqrt(pi))/|S|", abs(mass - 1), cfg.tolerance(1e-10))
    hl = half_line_rule(40)
    rep.add("half-line int_0^inf e^{-r^2} dr = sqrt(pi)/2", "Gaussian half-line integral",
            abs(float(hl.weights.sum()) - math.sqrt(math.pi) / 2) / (math.sqrt(math.pi) / 2), cfg.tolerance(1e-14))
    return rep


# ---------------------------------------------------------------------------
# transform / Hilbert space


def suite_isometry(cfg: RunConfig) -> SuiteReport:
    sig = Signature(cfg.p, cfg.q)
    ctrl = cfg.ck_controls()
    rep = bg.verify_isometry(cfg.p, cfg.q, cfg.max_degree, cfg.rule_orders(), ctrl, cfg.tolerance(1e-6))
    rep.config = {"p": cfg.p, "q": cfg.q, "max_degree": cfg.max_degree}
    rng = cfg.rng(_STREAM["isometry"])
    x, y = sample_split_points(sig, 20, rng)
    check_region(y)

    dev = 0.0
    for k in multi_indices(sig.p + 1, 3):
        f = phi_k(k, sig)
        dev = max(dev, _rel(bg.segal_bargmann_batch(f, x, y, "fourier", ctrl), bg.segal_bargmann_batch(f, x, y, "ck", ctrl)))
    rep.add("U[phi_k]: plane-wave route vs CK(exp(Delta/2) f) route, |k|<=3",
            "transform lemma: U f = CK[exp(Delta/2) f]", dev, cfg.tolerance(1e-7))

    zero = np.zeros_like(y)
    dev = 0.0
    for k in multi_indices(sig.p + 1, 3):
        f = phi_k(k, sig)
        ref = f.heat(bg.TRANSFORM_HEAT_TIME)(x)
        for route in ("fourier", "ck"):
            dev = max(dev, _rel(bg.segal_bargmann_batch(f, x, zero, route, ctrl), ref))
    rep.add("restriction U[f](x, 0) = exp(Delta/2) f (x)", "commutative diagram: exp(Delta/2) then CK", dev, cfg.tolerance(1e-10))

    # exp(Delta/2) phi_k = 2^{-(p+1)/2} x^k e^{-|x|^2/4}
    dev = 0.0
    for k in multi_indices(sig.p + 1, 3):
        lhs = phi_k(k, sig).heat(bg.TRANSFORM_HEAT_TIME)(x)
        rhs = 2.0 ** (-(sig.p + 1) / 2) * bg.psi_input(k, sig)(x)
        dev = max(dev, _rel(lhs, rhs))
    rep.add("exp(Delta/2) phi_k = 2^{-(p+1)/2} x^k e^{-|x|^2/4}", "heat flow of Hermite functions", dev, cfg.tolerance(1e-10))

    # right Clifford linearity
    c = Multivector(sig, rng.standard_normal(sig.dim) + 1j * rng.standard_normal(sig.dim))
    dev = 0.0
    for k in multi_indices(sig.p + 1, 2):
        f = phi_k(k, sig)
        for route in ("fourier", "ck"):
            lhs = bg.segal_bargmann_batch(f.right_mul(c), x, y, route, ctrl)
            rhs = gp(bg.segal_bargmann_batch(f, x, y, route, ctrl), c.coeff, sig.n)
            dev = max(dev, _rel(lhs, rhs))
    rep.add("U[f c] = U[f] c", "transform is right C_{p+q}-linear", dev, cfg.tolerance(1e-10))

    dev = 0.0
    pts = sample_split_points(sig, cfg.monogenicity_points, rng)
    for k in multi_indices(sig.p + 1, 2):
        g = bg.transform(phi_k(k, sig), "ck", ctrl)
        for i in range(cfg.monogenicity_points):
            bx = SplitPoint(pts[0][i], pts[1][i])
            dev = max(dev, monogenicity_residual(g, bx) / (1 + g(bx).norm()))
    rep.add("monogenicity residual of U[phi_k], |k|<=2", "U f is generalized partial-slice monogenic", dev, cfg.tolerance(1e-6))
    return rep


def suite_basis(cfg: RunConfig) -> SuiteReport:
    sig = Signature(cfg.p, cfg.q)
    ctrl = cfg.ck_controls()
    rep = bg.verify_basis_orthogonality(cfg.p, cfg.q, cfg.max_degree, cfg.rule_orders(), ctrl, cfg.tolerance(1e-6))
    rep.config = {"p": cfg.p, "q": cfg.q, "max_degree": cfg.max_degree}
    rng = cfg.rng(_STREAM["basis"])
    x, y = sample_split_points(sig, 20, rng)
    dev = 0.0
    for k in multi_indices(sig.p + 1, 3):
        a = bg.psi_k(k, sig, ctrl).values(x, y)
        b = 2.0 ** ((sig.p + 1) / 2) * bg.segal_bargmann_batch(phi_k(k, sig), x, y, "fourier", ctrl)
        dev = max(dev, _rel(a, b))
    rep.add("psi_k = CK[x^k e^{-|x|^2/4}] = 2^{(p+1)/2} U[phi_k], |k|<=3",
            "basis lemma: psi_k = 2^{(p+1)/2} U[phi_k]", dev, cfg.tolerance(1e-7))
    if (cfg.p, cfg.q) == (0, 1):
        rep.add(f"psi_k = z^k e^{{-z^2/4}} for (p,q)=(0,1), {cfg.classical_points} points, k<=4",
                "classical reduction to holomorphic extension", classical_reduction_deviation(cfg), cfg.tolerance(1e-8))
    return rep


def classical_points(n: int, rng: np.random.Generator) -> tuple[np.ndarray, np.ndarray]:
    """Points z = x0 + i y with |z| <= 2."""
    rad = 2.0 * np.sqrt(rng.random(n))
    th = rng.uniform(0, 2 * math.pi, n)
    return rad * np.cos(th), rad * np.sin(th)


def classical_reduction_deviation(cfg: RunConfig, max_k: int = 4) -> float:
    sig = Signature(0, 1)
    rng = cfg.rng(100 + _STREAM["basis"])
    x0, yy = classical_points(cfg.classical_points, rng)
    dev = 0.0
    for k in range(max_k + 1):
        vals = bg.psi_k((k,), sig, cfg.ck_controls()).values(x0[:, None], yy[:, None])
        oracle = bg.holomorphic_psi(k, x0, yy)
        ref = np.stack([oracle.real, oracle.imag], axis=1).astype(complex)
        dev = max(dev, float(np.max(np.abs(vals - ref).sum(axis=1) / np.maximum(np.abs(oracle), 1e-300))))
    return dev


def suite_schrodinger(cfg: RunConfig) -> SuiteReport:
    sig = Signature(cfg.p, cfg.q)
    ctrl = cfg.ck_controls()
    rng = cfg.rng(_STREAM["schrodinger"])
    x, y = sample_split_points(sig, cfg.schrodinger_points, rng)
    rep = SuiteReport("schrodinger", {"p": cfg.p, "q": cfg.q, "points": cfg.schrodinger_points,
                                      "max_degree": cfg.schrodinger_degree})
    for k in multi_indices(sig.p + 1, cfg.schrodinger_degree):
        sub = bg.verify_schrodinger_representation(cfg.p, cfg.q, k, x, y, ctrl, cfg.tolerance(1e-6))
        rep.extend(sub)
    # y = 0: both sides reduce to x x^k e^{-|x|^2/4}
    zero = np.zeros_like(y)
    dev = 0.0
    for k in multi_indices(sig.p + 1, cfg.schrodinger_degree):
        lhs, rhs = bg.schrodinger_sides(k, sig, x, zero, ctrl)
        ref = bg.psi_input(k, sig).mul_paravector_x()(x)
        dev = max(dev, _rel(lhs, ref), _rel(rhs, ref))
    rep.add("y=0: both sides equal x x^k e^{-|x|^2/4}", bg.ANCHOR_SCHRODINGER, dev, cfg.tolerance(1e-10))
    return rep


SUITE_FUNCS: dict[str, Callable[[RunConfig], SuiteReport]] = {
    "clifford": suite_clifford,
    "kernel": suite_kernel,
    "ck": suite_ck,
    "quadrature": suite_quadrature,
    "isometry": suite_isometry,
    "basis": suite_basis,
    "schrodinger": suite_schrodinger,
}


def run_suite(name: str, cfg: RunConfig, timing: bool = False) -> SuiteReport:
    """Run one named suite (or "all"); elapsed_ms is only filled in when timing is requested."""
    t0 = time.perf_counter()
    if name == "all":
        reports = [SUITE_FUNCS[s](cfg) for s in SUITES]
        rep = merge_reports("all", reports)
    elif name in SUITE_FUNCS:
        rep = SUITE_FUNCS[name](cfg)
    else:
        raise ValueError(f"unknown suite {name!r}; choose from {', '.join(SUITES + ('all',))}")
    rep.config = cfg.as_dict()
    if timing:
        rep.elapsed_ms = round((time.perf_counter() - t0) * 1000, 3)
    return rep
