"""Plot |psi_k| on the (x0, r) half-plane from `gsm-bargmann plot-data` output.

    gsm-bargmann plot-data --field psi:2 --grid -3:3:121,0:3:61 --out psi2.csv
    python3 scripts/plot_psi.py psi2.csv psi2.png

matplotlib is only needed for this script, not by the package.
"""
from __future__ import annotations

import argparse

import numpy as np


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("csv")
    ap.add_argument("png")
    ap.add_argument("--column", default="abs", help="CSV column to colour by (default abs)")
    args = ap.parse_args(argv)

    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    data = np.genfromtxt(args.csv, delimiter=",", names=True)
    x0 = data["x0"]
    r = np.sqrt(sum(data[name] ** 2 for name in data.dtype.names if name.startswith("y")))
    nx, nr = len(np.unique(x0)), len(np.unique(r))
    z = data[args.column].reshape(nx, nr)
    fig, ax = plt.subplots(figsize=(6, 3.5))
    mesh = ax.pcolormesh(x0.reshape(nx, nr), r.reshape(nx, nr), z, shading="auto")
    fig.colorbar(mesh, ax=ax, label=args.column)
    ax.set_xlabel("x0")
    ax.set_ylabel("r = |y|")
    fig.tight_layout()
    fig.savefig(args.png, dpi=120)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
