"""Run configuration shared by the suites and the command line."""
from __future__ import annotations

from dataclasses import asdict, dataclass, replace

import numpy as np

from .ck import CKControls
from .quadrature import RuleOrders


@dataclass(frozen=True)
class RunConfig:
    p: int = 0
    q: int = 1
    seed: int = 0
    # full-space (dmu) rule
    x_order: int = 24
    radial_order: int = 24
    sphere_order: int = 4
    # plane-wave route
    xi_order: int = 60
    # overrides every suite tolerance when set
    tol: float | None = None
    max_degree: int = 3
    clifford_samples: int = 1000
    kernel_samples: int = 200
    monogenicity_points: int = 50
    ck_points: int = 10
    schrodinger_points: int = 10
    classical_points: int = 50
    schrodinger_degree: int = 2

    def __post_init__(self):
        if self.p < 0 or self.q < 1:
            raise ValueError("need p >= 0 and q >= 1")
        for name in ("x_order", "radial_order", "sphere_order", "xi_order"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be >= 1")
        if self.tol is not None and not self.tol > 0:
            raise ValueError("tol must be positive")

    def rule_orders(self) -> RuleOrders:
        return RuleOrders(x_order=self.x_order, radial_order=self.radial_order, sphere_order=self.sphere_order)

    def ck_controls(self) -> CKControls:
        return CKControls(xi_order=self.xi_order)

    def tolerance(self, default: float) -> float:
        return default if self.tol is None else self.tol

    def rng(self, stream: int) -> np.random.Generator:
        """PCG64 stream keyed by (seed, stream); suites draw from separate streams."""
        return np.random.Generator(np.random.PCG64(np.random.SeedSequence([self.seed, stream])))

    def with_signature(self, p: int, q: int) -> RunConfig:
        return replace(self, p=p, q=q)

    def as_dict(self) -> dict:
        d = asdict(self)
        d["generator"] = "PCG64"
        return d
