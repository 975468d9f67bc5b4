"""Write HF tables, fits and generator profiles for the built-in fixtures.

    python3 scripts/hilbert_tables.py [outdir] [--r 0 1]
"""

import argparse
from pathlib import Path

from splinetop import fixtures
from splinetop.hilbert import conjecture_report, default_dmax, hf_table


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("outdir", nargs="?", default="hilbert_out")
    ap.add_argument("--r", type=int, nargs="+", default=[0, 1])
    ap.add_argument("--fixtures", nargs="+", default=["Q", "Qprime", "DeltaPlus", "T2"])
    args = ap.parse_args()
    out = Path(args.outdir)
    out.mkdir(parents=True, exist_ok=True)
    for name in args.fixtures:
        P = fixtures.fixture(name)
        for r in args.r:
            dmax = default_dmax(P, r) + 1
            for sel in ("full", "ls:2"):
                t = hf_table(P, sel, r, dmax)
                (out / f"{name}_r{r}_{sel.replace(':', '')}.csv").write_text(t.to_csv())
            rep = conjecture_report(P, r, dmax)
            (out / f"{name}_r{r}_report.json").write_text(rep.to_json() + "\n")
            print(f"{name} r={r}: HP = {rep.hp}, full = ls from d = {rep.ls_equal_from}")


if __name__ == "__main__":
    main()
