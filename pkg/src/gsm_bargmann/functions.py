"""Exact calculus on Clifford-coefficient polynomial x Gaussian functions on R^{p+1}.

A ``HermiteGaussian`` is ``sum_k x^k c_k * exp(-a |x|^2)`` with Clifford
coefficients ``c_k`` written on the right. Every operator here (partials,
the Dirac operator, the Laplacian, coordinate multiplication, Fourier
transform, heat semigroup) maps the family into itself, so all results are
exact up to floating point rounding of the coefficients.

Fourier convention: unitary, ``F[f](xi) = (2 pi)^{-d/2} int exp(-i <xi, x>) f(x) dx``
with ``d = p + 1``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Callable, Iterator, Mapping

import numpy as np

from .clifford import (
    Multivector,
    Signature,
    SignatureMismatchError,
    gp,
    inner_array,
    left_mul_generator,
    dagger_array,
)

Rate = Fraction | float


class NotInFamilyError(ValueError):
    """Operation leaves the polynomial x Gaussian family (e.g. Fourier of a pure polynomial)."""


class MultiIndex(tuple):
    """k = (k_0, ..., k_p) in N_0^{p+1}."""

    def __new__(cls, k):
        k = tuple(int(v) for v in k)
        if any(v < 0 for v in k):
            raise ValueError(f"negative entry in multi-index {k}")
        return super().__new__(cls, k)

    @property
    def order(self) -> int:
        return sum(self)

    @property
    def factorial(self) -> int:
        return math.prod(math.factorial(v) for v in self)

    def shifted(self, axis: int, by: int) -> MultiIndex:
        k = list(self)
        k[axis] += by
        return MultiIndex(k)

    def __add__(self, other):
        return MultiIndex(a + b for a, b in zip(self, other))

    def __repr__(self):
        return f"k{tuple(self)}"


def unit_index(dim: int, axis: int) -> MultiIndex:
    return MultiIndex(1 if j == axis else 0 for j in range(dim))


def multi_indices(dim: int, max_order: int) -> list[MultiIndex]:
    """All k with |k| <= max_order in graded-lex order."""
    out = [MultiIndex(k) for k in product(range(max_order + 1), repeat=dim) if sum(k) <= max_order]
    return sorted(out, key=lambda k: (k.order, tuple(-v for v in k)))


def as_rate(a) -> Rate:
    """Small-denominator rationals stay exact, everything else becomes a float."""
    if isinstance(a, Fraction):
        return a
    if isinstance(a, int):
        return Fraction(a)
    fr = Fraction(float(a))
    if fr.denominator <= 1 << 10:
        return fr
    return float(a)


def monomials(x: np.ndarray, ks: list[MultiIndex]) -> np.ndarray:
    """(N, d) points -> (N, K) values of x^k."""
    x = np.atleast_2d(np.asarray(x, dtype=float))
    deg = max((max(k) for k in ks), default=0)
    powers = x[:, :, None] ** np.arange(deg + 1)  # (N, d, deg+1)
    out = np.ones((x.shape[0], len(ks)))
    for j in range(x.shape[1]):
        out *= powers[:, j, [k[j] for k in ks]]
    return out


# ---------------------------------------------------------------------------
# polynomials with right Clifford coefficients


@dataclass(frozen=True, eq=False)
class CliffordPolynomial:
    sig: Signature
    terms: Mapping[MultiIndex, np.ndarray] = field(default_factory=dict)

    def __post_init__(self):
        dim = self.sig.p + 1
        clean = {}
        for k, c in self.terms.items():
            k = MultiIndex(k)
            if len(k) != dim:
                raise ValueError(f"multi-index {k} has wrong length for p={self.sig.p}")
            c = np.array(c.coeff if isinstance(c, Multivector) else c, dtype=complex)
            if c.ndim == 0:
                c = np.concatenate([[c], np.zeros(self.sig.dim - 1, dtype=complex)])
            if k in clean:
                c = clean[k] + c
            clean[k] = c
        clean = {k: c for k, c in clean.items() if np.any(c != 0)}
        for c in clean.values():
            c.setflags(write=False)
        object.__setattr__(self, "terms", dict(sorted(clean.items(), key=lambda kv: (kv[0].order, kv[0]))))

    @classmethod
    def monomial(cls, sig: Signature, k, coeff=1.0) -> CliffordPolynomial:
        return cls(sig, {MultiIndex(k): coeff})

    @classmethod
    def constant(cls, sig: Signature, coeff=1.0) -> CliffordPolynomial:
        return cls.monomial(sig, (0,) * (sig.p + 1), coeff)

    @classmethod
    def coordinate(cls, sig: Signature, axis: int) -> CliffordPolynomial:
        return cls.monomial(sig, unit_index(sig.p + 1, axis))

    @classmethod
    def linear_form(cls, sig: Signature, xi) -> CliffordPolynomial:
        """<x, xi> with scalar coefficients."""
        d = sig.p + 1
        return cls(sig, {unit_index(d, j): xi[j] for j in range(d)})

    @property
    def degree(self) -> int:
        return max((k.order for k in self.terms), default=-1)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def _check(self, other):
        if other.sig != self.sig:
            raise SignatureMismatchError(f"{self.sig} vs {other.sig}")

    def __add__(self, other: CliffordPolynomial) -> CliffordPolynomial:
        self._check(other)
        terms = dict(self.terms)
        for k, c in other.terms.items():
            terms[k] = terms[k] + c if k in terms else c
        return CliffordPolynomial(self.sig, terms)

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, s: complex) -> CliffordPolynomial:
        return CliffordPolynomial(self.sig, {k: s * c for k, c in self.terms.items()})

    def __mul__(self, other: CliffordPolynomial) -> CliffordPolynomial:
        """Pointwise product P(x) Q(x) (coefficients multiply in order)."""
        self._check(other)
        n = self.sig.n
        terms: dict = {}
        for k, c in self.terms.items():
            for l, d in other.terms.items():
                kl = k + l
                v = gp(c, d, n)
                terms[kl] = terms[kl] + v if kl in terms else v
        return CliffordPolynomial(self.sig, terms)

    def power(self, m: int) -> CliffordPolynomial:
        out = CliffordPolynomial.constant(self.sig)
        for _ in range(m):
            out = out * self
        return out

    def left_mul(self, a: Multivector) -> CliffordPolynomial:
        return CliffordPolynomial(self.sig, {k: gp(a.coeff, c, self.sig.n) for k, c in self.terms.items()})

    def right_mul(self, a: Multivector) -> CliffordPolynomial:
        return CliffordPolynomial(self.sig, {k: gp(c, a.coeff, self.sig.n) for k, c in self.terms.items()})

    def left_mul_generator(self, i: int) -> CliffordPolynomial:
        return CliffordPolynomial(self.sig, {k: left_mul_generator(i, c, self.sig.n) for k, c in self.terms.items()})

    def mul_coordinate(self, axis: int) -> CliffordPolynomial:
        d = self.sig.p + 1
        e = unit_index(d, axis)
        return CliffordPolynomial(self.sig, {k + e: c for k, c in self.terms.items()})

    def partial(self, axis: int) -> CliffordPolynomial:
        terms = {}
        for k, c in self.terms.items():
            if k[axis] > 0:
                terms[k.shifted(axis, -1)] = k[axis] * c
        return CliffordPolynomial(self.sig, terms)

    def partial_k(self, k) -> CliffordPolynomial:
        out = self
        for axis, m in enumerate(k):
            for _ in range(m):
                out = out.partial(axis)
        return out

    def dirac(self) -> CliffordPolynomial:
        """D_x P = sum_i e_i d_i P, with e_0 = 1."""
        out = CliffordPolynomial(self.sig)
        for i in range(self.sig.p + 1):
            out = out + self.partial(i).left_mul_generator(i)
        return out

    def laplacian(self) -> CliffordPolynomial:
        out = CliffordPolynomial(self.sig)
        for i in range(self.sig.p + 1):
            out = out + self.partial(i).partial(i)
        return out

    def parity_flip(self) -> CliffordPolynomial:
        return CliffordPolynomial(self.sig, {k: (-1) ** k.order * c for k, c in self.terms.items()})

    def __call__(self, x) -> np.ndarray:
        """Evaluate at (N, d) points -> (N, 2^n); a single point gives (2^n,)."""
        x = np.asarray(x, dtype=float)
        single = x.ndim == 1
        x = np.atleast_2d(x)
        ks = list(self.terms)
        if not ks:
            out = np.zeros((x.shape[0], self.sig.dim), dtype=complex)
        else:
            out = monomials(x, ks) @ np.stack([self.terms[k] for k in ks])
        return out[0] if single else out

    def at(self, x) -> Multivector:
        return Multivector(self.sig, self(np.asarray(x, dtype=float)))

    def allclose(self, other: CliffordPolynomial, atol: float = 1e-12) -> bool:
        diff = self - other
        return all(np.max(np.abs(c)) <= atol for c in diff.terms.values())


# ---------------------------------------------------------------------------
# Hermite polynomials (physicists')


def hermite_coefficients(m: int) -> list[int]:
    """Power-basis coefficients of H_m from H_{j+1} = 2 s H_j - 2 j H_{j-1}."""
    prev, cur = [1], [0, 2]
    if m == 0:
        return prev
    for j in range(1, m):
        nxt = [0] * (j + 2)
        for i, c in enumerate(cur):
            nxt[i + 1] += 2 * c
        for i, c in enumerate(prev):
            nxt[i] -= 2 * j * c
        prev, cur = cur, nxt
    return cur


def hermite_polynomial(k, sig: Signature) -> CliffordPolynomial:
    """H_k(x) = H_{k_0}(x_0) ... H_{k_p}(x_p), scalar coefficients."""
    k = MultiIndex(k)
    if len(k) != sig.p + 1:
        raise ValueError("multi-index length must be p + 1")
    axes = [hermite_coefficients(m) for m in k]
    terms = {}
    for powers in product(*(range(len(c)) for c in axes)):
        c = math.prod(axes[j][e] for j, e in enumerate(powers))
        if c:
            terms[MultiIndex(powers)] = complex(c)
    return CliffordPolynomial(sig, terms)


def normalized_hermite_table(t: np.ndarray, nmax: int) -> np.ndarray:
    """h_m(t) = H_m(t) / sqrt(2^m m!) for m = 0..nmax, shape t.shape + (nmax+1,).

    The normalized recurrence keeps values O(exp(t^2/2)) for any m, where the
    raw H_m overflow long before m = 400.
    """
    t = np.asarray(t, dtype=float)
    out = np.empty(t.shape + (nmax + 1,))
    out[..., 0] = 1.0
    if nmax >= 1:
        out[..., 1] = math.sqrt(2.0) * t
    for m in range(1, nmax):
        out[..., m + 1] = math.sqrt(2.0 / (m + 1)) * t * out[..., m] - math.sqrt(m / (m + 1)) * out[..., m - 1]
    return out


# ---------------------------------------------------------------------------
# polynomial x Gaussian


@dataclass(frozen=True, eq=False)
class HermiteGaussian:
    """poly(x) * exp(-rate |x|^2); rate = 0 means a bare polynomial."""

    poly: CliffordPolynomial
    rate: Rate = Fraction(0)

    def __post_init__(self):
        r = as_rate(self.rate)
        if r < 0:
            raise ValueError("Gaussian rate must be >= 0")
        object.__setattr__(self, "rate", r)

    @property
    def sig(self) -> Signature:
        return self.poly.sig

    @property
    def dim(self) -> int:
        return self.sig.p + 1

    @classmethod
    def monomial_gaussian(cls, sig: Signature, k, rate, coeff=1.0) -> HermiteGaussian:
        """x^k c exp(-rate |x|^2)."""
        return cls(CliffordPolynomial.monomial(sig, k, coeff), rate)

    def _with(self, poly: CliffordPolynomial) -> HermiteGaussian:
        return HermiteGaussian(poly, self.rate)

    def _check(self, other: HermiteGaussian):
        self.poly._check(other.poly)
        if self.rate != other.rate:
            raise NotInFamilyError("sum of different Gaussian rates is not a single family member")

    def __add__(self, other):
        self._check(other)
        return self._with(self.poly + other.poly)

    def __sub__(self, other):
        self._check(other)
        return self._with(self.poly - other.poly)

    def scale(self, s: complex) -> HermiteGaussian:
        return self._with(self.poly.scale(s))

    def right_mul(self, a: Multivector) -> HermiteGaussian:
        return self._with(self.poly.right_mul(a))

    def left_mul(self, a: Multivector) -> HermiteGaussian:
        return self._with(self.poly.left_mul(a))

    # differential operators ---------------------------------------------------
    def partial(self, axis: int) -> HermiteGaussian:
        """d_i (P e^{-a|x|^2}) = (d_i P - 2 a x_i P) e^{-a|x|^2}."""
        if not 0 <= axis < self.dim:
            raise ValueError(f"axis {axis} out of range 0..{self.dim - 1}")
        out = self.poly.partial(axis)
        if self.rate:
            out = out - self.poly.mul_coordinate(axis).scale(2 * float(self.rate))
        return self._with(out)

    def dirac(self) -> HermiteGaussian:
        out = self.partial(0).poly
        for i in range(1, self.dim):
            out = out + self.partial(i).poly.left_mul_generator(i)
        return self._with(out)

    def dirac_conjugate(self) -> HermiteGaussian:
        """bar(D_x) f = d_0 f - sum_{i>=1} e_i d_i f."""
        out = self.partial(0).poly
        for i in range(1, self.dim):
            out = out - self.partial(i).poly.left_mul_generator(i)
        return self._with(out)

    def laplacian(self) -> HermiteGaussian:
        out = CliffordPolynomial(self.sig)
        for i in range(self.dim):
            out = out + self.partial(i).partial(i).poly
        return self._with(out)

    def mul_coordinate(self, axis: int) -> HermiteGaussian:
        return self._with(self.poly.mul_coordinate(axis))

    def mul_paravector_x(self) -> HermiteGaussian:
        """x f(x) = sum_l e_l x_l f(x), left multiplication by the paravector variable."""
        out = self.poly.mul_coordinate(0)
        for l in range(1, self.dim):
            out = out + self.poly.mul_coordinate(l).left_mul_generator(l)
        return self._with(out)

    def parity_flip(self) -> HermiteGaussian:
        return self._with(self.poly.parity_flip())

    # Fourier / heat ---------------------------------------------------------
    def fourier(self) -> HermiteGaussian:
        """Unitary Fourier transform, exact.

        F[exp(-a|x|^2)] = (2a)^{-d/2} exp(-|xi|^2 / 4a) and F[x_j g] = i d_j F[g].
        """
        if not self.rate:
            raise NotInFamilyError("Fourier transform of a bare polynomial is not in the family")
        a = self.rate
        new_rate = 1 / (4 * a)
        base = HermiteGaussian(CliffordPolynomial.constant(self.sig, (2 * float(a)) ** (-self.dim / 2)), new_rate)
        cache: dict[MultiIndex, CliffordPolynomial] = {MultiIndex((0,) * self.dim): base.poly}

        def transformed(k: MultiIndex) -> CliffordPolynomial:
            if k not in cache:
                axis = next(j for j, v in enumerate(k) if v > 0)
                prev = HermiteGaussian(transformed(k.shifted(axis, -1)), new_rate)
                cache[k] = prev.partial(axis).poly.scale(1j)
            return cache[k]

        out = CliffordPolynomial(self.sig)
        for k, c in self.poly.terms.items():
            scalar_part = transformed(k)
            # scalar-valued transform times the right coefficient
            out = out + CliffordPolynomial(self.sig, {m: v[0] * c for m, v in scalar_part.terms.items()})
        return HermiteGaussian(out, new_rate)

    def inverse_fourier(self) -> HermiteGaussian:
        return self.fourier().parity_flip()

    def heat(self, t) -> HermiteGaussian:
        """exp(t Delta / 2) f as the Fourier multiplier exp(-t |xi|^2 / 2)."""
        t = as_rate(t)
        if not self.rate:
            raise NotInFamilyError("heat semigroup needs a Gaussian factor")
        if t <= -1 / (2 * self.rate):
            raise ValueError(f"heat time {t} out of range: need t > -1/(2a) = {-1 / (2 * self.rate)}")
        if t == 0:
            return self
        spec = self.fourier()
        damped = HermiteGaussian(spec.poly, spec.rate + t / 2)
        return damped.inverse_fourier()

    # evaluation ---------------------------------------------------------------
    def __call__(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        vals = self.poly(x)
        if self.rate:
            sq = np.sum(np.atleast_2d(x) ** 2, axis=-1)
            g = np.exp(-float(self.rate) * sq)
            vals = vals * (g[0] if x.ndim == 1 else g[:, None])
        return vals

    def at(self, x) -> Multivector:
        return Multivector(self.sig, self(np.asarray(x, dtype=float)))


def phi_k(k, sig: Signature) -> HermiteGaussian:
    """Hermite function H_k(x) exp(-|x|^2 / 2)."""
    return HermiteGaussian(hermite_polynomial(k, sig), Fraction(1, 2))


def gaussian_moment(m: int, c) -> float:
    """int_R s^m exp(-c s^2) ds."""
    if m % 2:
        return 0.0
    c = float(c)
    return math.gamma((m + 1) / 2) / c ** ((m + 1) / 2)


def _moment_table(f: HermiteGaussian, g: HermiteGaussian, pair: Callable):
    if f.sig != g.sig:
        raise SignatureMismatchError(f"{f.sig} vs {g.sig}")
    c = f.rate + g.rate
    if c <= 0:
        raise NotInFamilyError("inner product needs a decaying Gaussian factor")
    acc = None
    for k, a in f.poly.terms.items():
        for l, b in g.poly.terms.items():
            m = math.prod(gaussian_moment(u + v, c) for u, v in zip(k, l))
            if m == 0.0:
                continue
            term = m * pair(a, b)
            acc = term if acc is None else acc + term
    return acc


def lebesgue_inner_product(f: HermiteGaussian, g: HermiteGaussian) -> complex:
    """<f, g> = int Sc(f(x)^dagger g(x)) dx, closed form via Gaussian moments."""
    val = _moment_table(f, g, lambda a, b: inner_array(a, b))
    return 0j if val is None else complex(val)


def lebesgue_inner_product_clifford(f: HermiteGaussian, g: HermiteGaussian) -> Multivector:
    """int f(x)^dagger g(x) dx as a Clifford number."""
    n = f.sig.n
    val = _moment_table(f, g, lambda a, b: gp(dagger_array(a, n), b, n))
    return Multivector.zero(f.sig) if val is None else Multivector(f.sig, val)


def iter_terms(f: HermiteGaussian) -> Iterator[tuple[MultiIndex, np.ndarray]]:
    yield from f.poly.terms.items()
