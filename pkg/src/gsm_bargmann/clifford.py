"""Complexified Clifford algebra C_{p+q} with negative-square generators.

Multivectors are dense arrays of 2**n complex coefficients indexed by blade
bitmask: bit ``i`` set means generator ``e_{i+1}`` is present, mask 0 is the
scalar slot. Batched helpers operate on arrays whose last axis is the blade
axis, so quadrature code can push thousands of points through one call.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from numbers import Number
from typing import Iterable, Sequence

import numpy as np

MAX_GENERATORS = 12


class SignatureMismatchError(ValueError):
    """Operands live in different algebras."""


@dataclass(frozen=True)
class Signature:
    """Split n = p + q of the generator set: e_1..e_p go with x, e_{p+1}..e_n with y."""

    p: int
    q: int

    def __post_init__(self):
        if self.p < 0 or self.q < 1:
            raise ValueError(f"need p >= 0 and q >= 1, got p={self.p}, q={self.q}")
        if self.p + self.q > MAX_GENERATORS:
            raise ValueError(f"n = p + q must be <= {MAX_GENERATORS}")

    @property
    def n(self) -> int:
        return self.p + self.q

    @property
    def dim(self) -> int:
        return 1 << self.n


# ---------------------------------------------------------------------------
# blade tables


def _popcount(a):
    return np.bitwise_count(np.asarray(a, dtype=np.int64)).astype(np.int64)


@lru_cache(maxsize=None)
def product_signs(n: int) -> np.ndarray:
    """S[a, b] with e_a e_b = S[a, b] e_{a ^ b}.

    Swap parity: every generator of ``b`` has to move past the generators of
    ``a`` with a larger index. Each shared generator then contracts to -1.
    """
    dim = 1 << n
    a = np.arange(dim, dtype=np.uint16)[:, None]
    b = np.arange(dim, dtype=np.uint16)[None, :]
    parity = np.bitwise_count(a & b) & 1
    shifted = a >> 1
    while np.any(shifted):
        parity ^= np.bitwise_count(shifted & b) & 1
        shifted = shifted >> 1
    signs = (1 - 2 * parity.astype(np.int8)).astype(np.int8)
    signs.setflags(write=False)
    return signs


@lru_cache(maxsize=None)
def grades(n: int) -> np.ndarray:
    g = _popcount(np.arange(1 << n))
    g.setflags(write=False)
    return g


@lru_cache(maxsize=None)
def conjugation_signs(n: int) -> np.ndarray:
    """Clifford conjugation sign (-1)^{k(k+1)/2} per blade of grade k."""
    k = grades(n)
    s = np.where((k * (k + 1) // 2) % 2 == 0, 1.0, -1.0)
    s.setflags(write=False)
    return s


def blade_mask(indices: Iterable[int]) -> int:
    mask = 0
    for i in indices:
        if i < 1:
            raise ValueError("generator indices start at 1 (e_0 is the unit)")
        mask |= 1 << (i - 1)
    return mask


def blade_label(mask: int) -> str:
    idx = [str(i + 1) for i in range(mask.bit_length()) if mask >> i & 1]
    if not idx:
        return "e0"
    return "e" + (",".join(idx) if any(len(s) > 1 for s in idx) else "".join(idx))


# ---------------------------------------------------------------------------
# batched kernels (last axis = blades)


def gp(a: np.ndarray, b: np.ndarray, n: int) -> np.ndarray:
    """Geometric product of (broadcastable) coefficient arrays."""
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    dim = 1 << n
    signs = product_signs(n)
    shape = np.broadcast_shapes(a.shape[:-1], b.shape[:-1]) + (dim,)
    out = np.zeros(shape, dtype=complex)
    idx = np.arange(dim)
    nz = np.flatnonzero(np.any(a.reshape(-1, dim) != 0, axis=0))
    for m in nz:
        out[..., m ^ idx] += a[..., m : m + 1] * (signs[m] * b)
    return out


def left_mul_generator(i: int, a: np.ndarray, n: int) -> np.ndarray:
    """e_i * a for generator index i >= 1 (i = 0 is the identity)."""
    if i == 0:
        return np.array(a, dtype=complex)
    perm, signs = _generator_gather(i, n)
    return np.asarray(a)[..., perm] * signs


@lru_cache(maxsize=None)
def _generator_gather(i: int, n: int) -> tuple[np.ndarray, np.ndarray]:
    # (e_g a)_j = sign(g, g^j) a_{g^j}
    g = 1 << (i - 1)
    perm = g ^ np.arange(1 << n)
    signs = product_signs(n)[g][perm].astype(float)
    return perm, signs


def left_mul_paravector(v: np.ndarray, a: np.ndarray, n: int, first: int = 0) -> np.ndarray:
    """(sum_j v_j e_{first + j}) * a.

    ``v`` has shape (..., m); with ``first=0`` component 0 is the scalar slot
    (a paravector), with ``first=p+1`` it is the y-part 1-vector.
    """
    v = np.asarray(v)
    a = np.asarray(a, dtype=complex)
    out = None
    for j in range(v.shape[-1]):
        term = v[..., j, None] * left_mul_generator(first + j, a, n)
        out = term if out is None else out + term
    return out


def dagger_array(a: np.ndarray, n: int) -> np.ndarray:
    return np.conj(a) * conjugation_signs(n)


def inner_array(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Sc(a^dagger b) = sum_A conj(a_A) b_A, over the last axis."""
    return np.sum(np.conj(a) * b, axis=-1)


def norm_array(a: np.ndarray) -> np.ndarray:
    return np.sqrt(np.sum(np.abs(a) ** 2, axis=-1))


# ---------------------------------------------------------------------------
# value type


@dataclass(frozen=True, eq=False)
class Multivector:
    sig: Signature
    coeff: np.ndarray = field(repr=False)

    def __post_init__(self):
        c = np.array(self.coeff, dtype=complex)
        if c.shape != (self.sig.dim,):
            raise ValueError(f"expected {self.sig.dim} coefficients, got shape {c.shape}")
        c.setflags(write=False)
        object.__setattr__(self, "coeff", c)

    # constructors -----------------------------------------------------------
    @classmethod
    def zero(cls, sig: Signature) -> Multivector:
        return cls(sig, np.zeros(sig.dim, dtype=complex))

    @classmethod
    def scalar(cls, sig: Signature, value: complex = 1.0) -> Multivector:
        c = np.zeros(sig.dim, dtype=complex)
        c[0] = value
        return cls(sig, c)

    @classmethod
    def blade(cls, sig: Signature, indices: Sequence[int], value: complex = 1.0) -> Multivector:
        """value * e_{i1} e_{i2} ... (indices in any order, repeats allowed)."""
        out = cls.scalar(sig, value)
        for i in indices:
            out = out * cls.generator(sig, i)
        return out

    @classmethod
    def generator(cls, sig: Signature, i: int) -> Multivector:
        if not 0 <= i <= sig.n:
            raise ValueError(f"generator index {i} out of range for n={sig.n}")
        c = np.zeros(sig.dim, dtype=complex)
        c[0 if i == 0 else 1 << (i - 1)] = 1.0
        return cls(sig, c)

    @classmethod
    def paravector(cls, sig: Signature, components: Sequence[float], first: int = 0) -> Multivector:
        """sum_j components[j] e_{first+j}; with first=0 the leading slot is scalar."""
        components = np.asarray(components)
        if first + len(components) - 1 > sig.n:
            raise ValueError("too many components for this signature")
        c = np.zeros(sig.dim, dtype=complex)
        for j, v in enumerate(components):
            k = first + j
            c[0 if k == 0 else 1 << (k - 1)] += v
        return cls(sig, c)

    # arithmetic -------------------------------------------------------------
    def _check(self, other: Multivector):
        if other.sig != self.sig:
            raise SignatureMismatchError(f"{self.sig} vs {other.sig}")

    def __add__(self, other):
        if isinstance(other, Multivector):
            self._check(other)
            return Multivector(self.sig, self.coeff + other.coeff)
        if isinstance(other, Number):
            return self + Multivector.scalar(self.sig, other)
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return Multivector(self.sig, -self.coeff)

    def __sub__(self, other):
        if isinstance(other, (Multivector, Number)):
            return self + (-other)
        return NotImplemented

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Multivector):
            self._check(other)
            return Multivector(self.sig, gp(self.coeff, other.coeff, self.sig.n))
        if isinstance(other, Number):
            return Multivector(self.sig, self.coeff * other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, Number):
            return Multivector(self.sig, other * self.coeff)
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, Number):
            return Multivector(self.sig, self.coeff / other)
        return NotImplemented

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("only non-negative integer powers")
        out = Multivector.scalar(self.sig)
        for _ in range(k):
            out = out * self
        return out

    # conjugations, norms ----------------------------------------------------
    def bar(self) -> Multivector:
        return Multivector(self.sig, self.coeff * conjugation_signs(self.sig.n))

    def dagger(self) -> Multivector:
        return Multivector(self.sig, dagger_array(self.coeff, self.sig.n))

    def conj(self) -> Multivector:
        """Complex conjugation of the coefficients only."""
        return Multivector(self.sig, np.conj(self.coeff))

    @property
    def scalar_part(self) -> complex:
        return complex(self.coeff[0])

    def norm(self) -> float:
        return float(norm_array(self.coeff))

    def grade_part(self, k: int) -> Multivector:
        return Multivector(self.sig, np.where(grades(self.sig.n) == k, self.coeff, 0))

    def grades_present(self, tol: float = 0.0) -> set[int]:
        g = grades(self.sig.n)
        return {int(k) for k in np.unique(g[np.abs(self.coeff) > tol])}

    def allclose(self, other: Multivector, rtol: float = 1e-12, atol: float = 0.0) -> bool:
        self._check(other)
        scale = max(self.norm(), other.norm())
        return (self - other).norm() <= atol + rtol * scale

    def terms(self, tol: float = 0.0):
        """(mask, coefficient) pairs with |coefficient| > tol, ascending mask."""
        for m in np.flatnonzero(np.abs(self.coeff) > tol):
            yield int(m), complex(self.coeff[m])

    def __repr__(self):
        parts = [f"({c.real:+.6g}{c.imag:+.6g}j){blade_label(m)}" for m, c in self.terms()]
        return f"Multivector[{self.sig.p},{self.sig.q}](" + (" ".join(parts) or "0") + ")"


def inner_product(a: Multivector, b: Multivector) -> complex:
    """(a, b) = Sc(a^dagger b)."""
    a._check(b)
    return complex(inner_array(a.coeff, b.coeff))


def paravector_inverse(x: Multivector, tol: float = 1e-14) -> Multivector:
    """x^{-1} = bar(x) / |x|^2 for a real paravector x."""
    if x.grades_present(tol * max(1.0, x.norm())) - {0, 1}:
        raise ValueError("paravector_inverse needs an element of grades {0, 1}")
    if np.any(np.abs(x.coeff.imag) > tol * max(1.0, x.norm())):
        raise ValueError("paravector_inverse needs real coefficients")
    n2 = x.norm() ** 2
    if n2 == 0.0:
        raise ZeroDivisionError("zero paravector has no inverse")
    return x.bar() / n2


@dataclass(frozen=True, eq=False)
class SplitPoint:
    """bx = x + y with x in R^{p+1} (x_0 the scalar slot) and y in R^q."""

    x: np.ndarray
    y: np.ndarray

    def __post_init__(self):
        x = np.array(self.x, dtype=float).reshape(-1)
        y = np.array(self.y, dtype=float).reshape(-1)
        if x.size < 1 or y.size < 1:
            raise ValueError("x needs p+1 >= 1 components and y needs q >= 1")
        x.setflags(write=False)
        y.setflags(write=False)
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "y", y)

    @property
    def sig(self) -> Signature:
        return Signature(self.x.size - 1, self.y.size)

    @property
    def r(self) -> float:
        return float(np.linalg.norm(self.y))

    @property
    def omega(self) -> np.ndarray | None:
        r = self.r
        return None if r == 0.0 else self.y / r

    def embed(self) -> Multivector:
        return Multivector.paravector(self.sig, np.concatenate([self.x, self.y]))

    def y_vector(self) -> Multivector:
        return Multivector.paravector(self.sig, self.y, first=self.sig.p + 1)
