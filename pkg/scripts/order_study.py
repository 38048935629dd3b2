"""Convergence study for the dmu quadrature orders.

Prints the isometry and psi_k Gram deviations for a grid of (x_order,
radial_order, sphere_order) so the defaults in RuleOrders can be checked.

    python3 scripts/order_study.py --p 1 --q 1 --max-degree 3
"""
from __future__ import annotations

import argparse
import itertools
import time

from gsm_bargmann.bargmann import psi_gram, transform_gram
from gsm_bargmann.quadrature import RuleOrders


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--p", type=int, default=0)
    ap.add_argument("--q", type=int, default=1)
    ap.add_argument("--max-degree", type=int, default=3)
    ap.add_argument("--x-orders", default="16,24,32")
    ap.add_argument("--radial-orders", default="16,24,32")
    ap.add_argument("--sphere-orders", default="4")
    args = ap.parse_args(argv)

    grid = itertools.product(
        (int(v) for v in args.x_orders.split(",")),
        (int(v) for v in args.radial_orders.split(",")),
        (int(v) for v in args.sphere_orders.split(",")),
    )
    print("x_order,radial_order,sphere_order,isometry_dev,basis_diag_dev,basis_offdiag_dev,seconds")
    for xo, ro, so in list(grid):
        orders = RuleOrders(x_order=xo, radial_order=ro, sphere_order=so)
        t0 = time.perf_counter()
        iso = transform_gram(args.p, args.q, args.max_degree, orders)
        basis, _ = psi_gram(args.p, args.q, args.max_degree, orders)
        dt = time.perf_counter() - t0
        print(f"{xo},{ro},{so},{iso.max_relative_deviation():.3e},{basis.diagonal_deviation():.3e},"
              f"{basis.offdiagonal_deviation():.3e},{dt:.1f}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
