"""Recompute the reference spline dimensions with the sympy oracle and write
them to tests/data/frozen_dims.json.

    python3 scripts/freeze_oracles.py
"""

import json
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT / "tests"))

from oracles import spline_dim  # noqa: E402

from splinetop.fixtures import fixture  # noqa: E402

GRID = {
    "Q": (2, 7), "Qprime": (2, 7), "DeltaPlus": (2, 7), "T2": (2, 7),
    "T3": (1, 6), "two_squares": (2, 5), "triangle": (1, 3), "square": (1, 3),
}


def main():
    out = {}
    for name, (rmax, dmax) in GRID.items():
        P = fixture(name)
        for r in range(rmax + 1):
            for d in range(dmax + 1):
                for homog in (False, True):
                    key = f"{name}|r={r}|d={d}|{'homogeneous' if homog else 'filtered'}"
                    out[key] = spline_dim(P, r, d, homog)
                    print(key, out[key], flush=True)
    # supported on facet B of T_n
    for n, r, dmax in ((2, 0, 3), (2, 1, 5), (3, 0, 4), (3, 1, 7)):
        P = fixture(f"T{n}")
        for d in range(dmax + 1):
            key = f"T{n}|supported=B|r={r}|d={d}|homogeneous"
            out[key] = spline_dim(P, r, d, True, support=[1])
            print(key, out[key], flush=True)
    path = ROOT / "tests" / "data" / "frozen_dims.json"
    path.write_text(json.dumps(out, indent=1, sort_keys=True) + "\n")
    print(f"wrote {len(out)} values to {path}")


if __name__ == "__main__":
    main()
