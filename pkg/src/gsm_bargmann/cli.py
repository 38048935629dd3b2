"""gsm-bargmann command line: point evaluations, verification suites, plot data.

Exit codes: 0 pass, 1 check failure, 2 usage, 3 region, 4 capability, 5 resource.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import dataclass

import numpy as np

from . import bargmann as bg
from .ck import (
    CKControls,
    NonConvergenceError,
    RegionError,
    ck_hermite_gaussian_batch,
    ck_polynomial,
    kernel_e_array,
)
from .clifford import Signature, SplitPoint, blade_label, norm_array
from .config import RunConfig
from .functions import CliffordPolynomial, HermiteGaussian, MultiIndex, NotInFamilyError, phi_k
from .quadrature import CapabilityError
from .suites import SUITES, run_suite

EXIT_PASS, EXIT_FAIL, EXIT_USAGE, EXIT_REGION, EXIT_CAPABILITY, EXIT_RESOURCE = 0, 1, 2, 3, 4, 5
MAX_GRID_POINTS = 10 ** 6
MAX_P, MAX_Q = 2, 3


class UsageError(ValueError):
    pass


class ResourceError(RuntimeError):
    pass


def _floats(text: str | None, name: str) -> list[float]:
    if text is None or text.strip() == "":
        return []
    try:
        return [float(v) for v in text.split(",")]
    except ValueError as exc:
        raise UsageError(f"--{name}: expected a comma-separated list of numbers, got {text!r}") from exc


def _vector(text: str | None, size: int, name: str) -> np.ndarray:
    vals = _floats(text, name)
    if not vals:
        return np.zeros(size)
    if len(vals) != size:
        raise UsageError(f"--{name}: expected {size} components, got {len(vals)}")
    return np.array(vals)


def _signature(args) -> Signature:
    if args.p < 0 or args.q < 1:
        raise UsageError("need --p >= 0 and --q >= 1")
    if args.p > MAX_P or args.q > MAX_Q:
        raise CapabilityError(f"supported range is p <= {MAX_P}, q <= {MAX_Q}; got ({args.p}, {args.q})")
    return Signature(args.p, args.q)


# ---------------------------------------------------------------------------
# input specs


@dataclass(frozen=True)
class InputSpec:
    kind: str
    k: MultiIndex


SPEC_KINDS = ("hermite", "monomial-gaussian", "psi", "monomial", "kernel")


def parse_input_spec(text: str, sig: Signature) -> InputSpec:
    """'hermite:1,0' -> (hermite, (1, 0)); a single integer is allowed when p = 0."""
    kind, _, rest = text.partition(":")
    if kind not in SPEC_KINDS:
        raise UsageError(f"unknown input kind {kind!r}; choose from {', '.join(SPEC_KINDS)}")
    if kind == "kernel":
        return InputSpec(kind, MultiIndex((0,) * (sig.p + 1)))
    try:
        k = tuple(int(v) for v in rest.split(",")) if rest else ()
    except ValueError as exc:
        raise UsageError(f"bad multi-index in {text!r}") from exc
    if len(k) != sig.p + 1 or any(v < 0 for v in k):
        raise UsageError(f"{text!r}: multi-index needs p+1 = {sig.p + 1} non-negative entries")
    return InputSpec(kind, MultiIndex(k))


def family_member(spec: InputSpec, sig: Signature) -> HermiteGaussian:
    if spec.kind == "hermite":
        return phi_k(spec.k, sig)
    if spec.kind in ("monomial-gaussian", "psi"):
        return bg.psi_input(spec.k, sig)
    raise UsageError(f"{spec.kind!r} is not a Hermite-Gaussian input here")


# ---------------------------------------------------------------------------
# formatting


def _num(v: float) -> str:
    # shortest round-trip representation
    return repr(float(v))


def format_complex(z: complex) -> str:
    im = z.imag
    sign = "-" if (im < 0 or (im == 0 and math.copysign(1.0, im) < 0)) else "+"
    return f"{_num(z.real)}{sign}{_num(abs(im))}i"


def format_multivector(coeff: np.ndarray, show_all: bool = False) -> str:
    """One line per blade, 'e{indices}: re+im i', ascending blade index."""
    lines = []
    for mask, c in enumerate(coeff):
        if show_all or c != 0:
            lines.append(f"{blade_label(mask)}: {format_complex(complex(c))}")
    if not lines:
        lines.append(f"{blade_label(0)}: {format_complex(0j)}")
    return "\n".join(lines) + "\n"


def _value_payload(coeff: np.ndarray, show_all: bool) -> dict:
    return {blade_label(m): [float(c.real), float(c.imag)] for m, c in enumerate(coeff) if show_all or c != 0}


def render_value(command: str, config: dict, coeff: np.ndarray, fmt: str, show_all: bool, extra: dict | None = None) -> str:
    if fmt == "json":
        doc = {"command": command, "config": config}
        doc.update(extra or {})
        doc["value"] = _value_payload(coeff, show_all)
        return json.dumps(doc, indent=2) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["blade", "re", "im"])
        for mask, c in enumerate(coeff):
            if show_all or c != 0:
                w.writerow([blade_label(mask), _num(c.real), _num(c.imag)])
        return buf.getvalue()
    header = "".join(f"# {k}: {v}\n" for k, v in (extra or {}).items())
    return header + format_multivector(coeff, show_all)


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# commands


def _point(args, sig: Signature) -> SplitPoint:
    return SplitPoint(_vector(args.x, sig.p + 1, "x"), _vector(args.y, sig.q, "y"))


def _ctrl(args) -> CKControls:
    return CKControls(tol=CKControls().tol, xi_order=args.xi_order)


def cmd_eval_kernel(args) -> int:
    sig = _signature(args)
    bx = _point(args, sig)
    xi = _vector(args.xi, sig.p + 1, "xi")
    coeff = kernel_e_array(bx.x, bx.y, xi, sig)
    cfg = {"p": sig.p, "q": sig.q, "x": bx.x.tolist(), "y": bx.y.tolist(), "xi": xi.tolist()}
    _emit(render_value("eval-kernel", cfg, coeff, args.format, args.all), args.out)
    return EXIT_PASS


def cmd_ck_eval(args) -> int:
    sig = _signature(args)
    bx = _point(args, sig)
    spec = parse_input_spec(args.input, sig)
    cfg = {"p": sig.p, "q": sig.q, "x": bx.x.tolist(), "y": bx.y.tolist(), "input": args.input}
    if spec.kind == "monomial":
        coeff = ck_polynomial(CliffordPolynomial.monomial(sig, spec.k), bx).coeff
        route = "polynomial"
    elif spec.kind == "kernel":
        raise UsageError("ck-eval takes hermite:, monomial-gaussian:, psi: or monomial: inputs")
    else:
        route = args.route or "delta_series"
        if route not in ("fourier", "delta_series"):
            raise UsageError("ck-eval --route must be fourier or delta_series")
        f0 = family_member(spec, sig)
        coeff = ck_hermite_gaussian_batch(f0, bx.x[None], bx.y[None], route, _ctrl(args))[0]
    _emit(render_value("ck-eval", cfg, coeff, args.format, args.all, {"route": route}), args.out)
    return EXIT_PASS


def cmd_transform_eval(args) -> int:
    sig = _signature(args)
    bx = _point(args, sig)
    spec = parse_input_spec(args.input, sig)
    cfg = {"p": sig.p, "q": sig.q, "x": bx.x.tolist(), "y": bx.y.tolist(), "input": args.input}
    if spec.kind == "psi":
        route = "ck"
        coeff = bg.psi_k(spec.k, sig, _ctrl(args)).values(bx.x[None], bx.y[None])[0]
        label = "psi_k = CK[x^k exp(-|x|^2/4)]"
    elif spec.kind in ("hermite", "monomial-gaussian"):
        route = args.route or "fourier"
        if route not in ("fourier", "ck"):
            raise UsageError("transform-eval --route must be fourier or ck")
        coeff = bg.segal_bargmann_batch(family_member(spec, sig), bx.x[None], bx.y[None], route, _ctrl(args))[0]
        label = "U[f]"
    else:
        raise UsageError("transform-eval takes hermite:, monomial-gaussian: or psi: inputs")
    _emit(render_value("transform-eval", cfg, coeff, args.format, args.all, {"route": route, "evaluates": label}), args.out)
    return EXIT_PASS


def run_config(args) -> RunConfig:
    return RunConfig(
        p=args.p,
        q=args.q,
        seed=args.seed,
        x_order=args.x_order,
        radial_order=args.radial_order,
        sphere_order=args.sphere_order,
        xi_order=args.xi_order,
        tol=args.tol,
        max_degree=args.max_degree,
    )


def cmd_verify(args) -> int:
    if args.p > MAX_P or args.q > MAX_Q:
        raise CapabilityError(f"suites support p <= {MAX_P}, q <= {MAX_Q}; got ({args.p}, {args.q})")
    try:
        cfg = run_config(args)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    rep = run_suite(args.suite, cfg, timing=args.timing)
    text = rep.to_csv() if args.format == "csv" else rep.to_json()
    _emit(text, args.out)
    status = "PASS" if rep.passed else "FAIL"
    print(f"{args.suite}: {status} ({sum(c.passed for c in rep.checks)}/{len(rep.checks)} checks)", file=sys.stderr)
    return EXIT_PASS if rep.passed else EXIT_FAIL


def parse_grid(text: str) -> tuple[np.ndarray, np.ndarray]:
    """'X0MIN:X0MAX:NX,RMIN:RMAX:NR' -> (x0 values, r values)."""
    try:
        parts = [tuple(seg.split(":")) for seg in text.split(",")]
        (a0, b0, n0), (a1, b1, n1) = parts
        nx, nr = int(n0), int(n1)
        lo0, hi0, lo1, hi1 = float(a0), float(b0), float(a1), float(b1)
    except ValueError as exc:
        raise UsageError(f"--grid expects X0MIN:X0MAX:NX,RMIN:RMAX:NR, got {text!r}") from exc
    if nx < 0 or nr < 0:
        raise UsageError("grid sizes must be >= 0")
    if nx * nr > MAX_GRID_POINTS:
        raise ResourceError(f"grid has {nx * nr} points; the limit is {MAX_GRID_POINTS}")
    if lo1 < 0 or hi1 < 0:
        raise UsageError("r range must be non-negative")
    return np.linspace(lo0, hi0, nx), np.linspace(lo1, hi1, nr)


def cmd_plot_data(args) -> int:
    sig = _signature(args)
    x0s, rs = parse_grid(args.grid)
    spec = parse_input_spec(args.field, sig)
    base = _vector(args.x, sig.p + 1, "x")
    omega = _vector(args.omega, sig.q, "omega") if args.omega else np.eye(sig.q)[0]
    if not math.isclose(float(np.linalg.norm(omega)), 1.0, abs_tol=1e-12):
        raise UsageError("--omega must be a unit vector")
    X0, R = np.meshgrid(x0s, rs, indexing="ij")
    n = X0.size
    x = np.tile(base, (n, 1))
    x[:, 0] = X0.ravel()
    y = R.ravel()[:, None] * omega[None, :]
    ctrl = _ctrl(args)
    if n == 0:
        vals = np.zeros((0, sig.dim), dtype=complex)
    elif spec.kind == "kernel":
        xi = _vector(args.xi, sig.p + 1, "xi")
        vals = kernel_e_array(x, y, xi, sig)
    elif spec.kind == "psi":
        vals = bg.psi_k(spec.k, sig, ctrl).values(x, y)
    elif spec.kind == "monomial":
        poly = CliffordPolynomial.monomial(sig, spec.k)
        vals = np.array([ck_polynomial(poly, SplitPoint(x[i], y[i])).coeff for i in range(n)])
    else:
        route = args.route or "ck"
        vals = bg.segal_bargmann_batch(family_member(spec, sig), x, y, route, ctrl)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    labels = [blade_label(m) for m in range(sig.dim)]
    header = [f"x{i}" for i in range(sig.p + 1)] + [f"y{j + 1}" for j in range(sig.q)]
    header += [f"{lab}_{part}" for lab in labels for part in ("re", "im")] + ["abs"]
    w.writerow(header)
    norms = norm_array(vals) if n else np.zeros(0)
    for i in range(n):
        row = [_num(v) for v in x[i]] + [_num(v) for v in y[i]]
        for c in vals[i]:
            row += [_num(c.real), _num(c.imag)]
        row.append(_num(norms[i]))
        w.writerow(row)
    _emit(buf.getvalue(), args.out)
    return EXIT_PASS


# ---------------------------------------------------------------------------
# parser


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _common(sp: argparse.ArgumentParser, defaults: RunConfig) -> None:
    sp.add_argument("--p", type=int, default=defaults.p, help="paravector dimension p (x in R^{p+1})")
    sp.add_argument("--q", type=int, default=defaults.q, help="slice dimension q (y in R^q)")
    sp.add_argument("--x", help="x components, comma list (default zeros)")
    sp.add_argument("--y", help="y components, comma list (default zeros)")
    sp.add_argument("--xi", help="xi components, comma list")
    sp.add_argument("--tol", type=float, default=None, help="override every suite tolerance")
    sp.add_argument("--x-order", type=int, default=defaults.x_order, help="Gauss-Hermite nodes per x axis (dmu rule)")
    sp.add_argument("--xi-order", type=int, default=defaults.xi_order, help="Gauss-Hermite nodes per xi axis (plane-wave route)")
    sp.add_argument("--radial-order", type=int, default=defaults.radial_order, help="half-line nodes for the dmu radial part")
    sp.add_argument("--sphere-order", type=int, default=defaults.sphere_order, help="sphere rule order")
    sp.add_argument("--seed", type=int, default=defaults.seed)
    sp.add_argument("--format", choices=("json", "csv", "text"), default=None)
    sp.add_argument("--out", help="output path (default stdout)")
    sp.add_argument("--all", action="store_true", help="print zero blades too")
    sp.add_argument("--route", help="evaluation route (fourier | delta_series | ck)")
    sp.add_argument("--timing", action="store_true", help="record elapsed_ms in reports (breaks byte-identity)")


def build_parser() -> argparse.ArgumentParser:
    defaults = RunConfig()
    parser = _Parser(prog="gsm-bargmann", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sp = sub.add_parser("eval-kernel", help="evaluate e(bx, xi)")
    _common(sp, defaults)
    sp.set_defaults(func=cmd_eval_kernel, default_format="text")

    sp = sub.add_parser("ck-eval", help="evaluate a CK extension at a point")
    _common(sp, defaults)
    sp.add_argument("--input", required=True, help="monomial:k | monomial-gaussian:k | hermite:k | psi:k")
    sp.set_defaults(func=cmd_ck_eval, default_format="text")

    sp = sub.add_parser("transform-eval", help="evaluate U[f] or psi_k at a point")
    _common(sp, defaults)
    sp.add_argument("--input", required=True, help="hermite:k | monomial-gaussian:k | psi:k")
    sp.set_defaults(func=cmd_transform_eval, default_format="text")

    sp = sub.add_parser("verify", help="run a verification suite")
    sp.add_argument("suite", choices=SUITES + ("all",))
    _common(sp, defaults)
    sp.add_argument("--max-degree", type=int, default=defaults.max_degree, help="max |k| for Gram checks")
    sp.set_defaults(func=cmd_verify, default_format="json")

    sp = sub.add_parser("plot-data", help="CSV of a field on an (x0, r) grid")
    _common(sp, defaults)
    sp.add_argument("--field", required=True, help="psi:k | hermite:k | monomial-gaussian:k | monomial:k | kernel")
    sp.add_argument("--grid", default="-2:2:101,0:2:101", help="X0MIN:X0MAX:NX,RMIN:RMAX:NR")
    sp.add_argument("--omega", help="unit direction in R^q for y = r omega (default e_{p+1})")
    sp.set_defaults(func=cmd_plot_data, default_format="csv")
    return parser


VALUE_OPTIONS = ("--x", "--y", "--xi", "--grid", "--omega")


def _attach_negative_values(argv: list[str]) -> list[str]:
    """Rewrite '--x -1,2' as '--x=-1,2' so argparse does not read the value as a flag."""
    out, i = [], 0
    while i < len(argv):
        tok = argv[i]
        nxt = argv[i + 1] if i + 1 < len(argv) else None
        if tok in VALUE_OPTIONS and nxt is not None and len(nxt) > 1 and nxt[0] == "-" and (nxt[1].isdigit() or nxt[1] == "."):
            out.append(f"{tok}={nxt}")
            i += 2
            continue
        out.append(tok)
        i += 1
    return out


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(_attach_negative_values(list(sys.argv[1:] if argv is None else argv)))
    if args.format is None:
        args.format = args.default_format
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except RegionError as exc:
        print(f"region error: {exc}", file=sys.stderr)
        return EXIT_REGION
    except CapabilityError as exc:
        print(f"capability error: {exc}", file=sys.stderr)
        return EXIT_CAPABILITY
    except ResourceError as exc:
        print(f"resource error: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except (NonConvergenceError, NotInFamilyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
