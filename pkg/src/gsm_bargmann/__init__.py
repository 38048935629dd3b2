"""Segal-Bargmann transform for generalized partial-slice monogenic functions.

Numerical library over the complexified Clifford algebra C_{p+q}: multivectors,
an exact polynomial x Gaussian calculus, the generalized partial-slice
CK-extension, quadrature for the measure dmu, the transform U_{p,q} and
verification suites for its identities.
"""
from .bargmann import (
    GSMFunction,
    apply_x_minus_ip,
    psi_k,
    segal_bargmann,
    segal_bargmann_batch,
    verify_basis_orthogonality,
    verify_isometry,
    verify_schrodinger_representation,
)
from .ck import (
    CKControls,
    GeometryError,
    NonConvergenceError,
    RegionError,
    ck_hermite_gaussian,
    ck_polynomial,
    fueter_polynomial,
    kernel_e,
    kernel_identity_suite,
    monogenicity_residual,
    taylor_reconstruction,
)
from .clifford import Multivector, Signature, SplitPoint, inner_product, paravector_inverse
from .config import RunConfig
from .functions import CliffordPolynomial, HermiteGaussian, MultiIndex, hermite_polynomial, phi_k
from .quadrature import CapabilityError, MeasureMu, RuleOrders
from .report import CheckRecord, SuiteReport
from .suites import run_suite

__version__ = "0.1.0"

__all__ = [
    "CKControls",
    "CapabilityError",
    "CheckRecord",
    "CliffordPolynomial",
    "GSMFunction",
    "GeometryError",
    "HermiteGaussian",
    "MeasureMu",
    "MultiIndex",
    "Multivector",
    "NonConvergenceError",
    "RegionError",
    "RuleOrders",
    "RunConfig",
    "Signature",
    "SplitPoint",
    "SuiteReport",
    "apply_x_minus_ip",
    "ck_hermite_gaussian",
    "ck_polynomial",
    "fueter_polynomial",
    "hermite_polynomial",
    "inner_product",
    "kernel_e",
    "kernel_identity_suite",
    "monogenicity_residual",
    "paravector_inverse",
    "phi_k",
    "psi_k",
    "run_suite",
    "segal_bargmann",
    "segal_bargmann_batch",
    "taylor_reconstruction",
    "verify_basis_orthogonality",
    "verify_isometry",
    "verify_schrodinger_representation",
]
