"""Run the VPP component on constant inputs and print each inference stage."""

import argparse
from pathlib import Path

from ffspec import lang, simulate

SPEC = Path(__file__).resolve().parent.parent / "specs" / "vpp.ffspec"


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--t", type=float, default=20)
    ap.add_argument("--w", type=float, default=40)
    ap.add_argument("--horizon", type=int, default=5)
    args = ap.parse_args()

    comp = lang.load(SPEC)
    res = simulate(comp, {"t": [args.t] * args.horizon, "w": [args.w] * args.horizon}, args.horizon)
    for rec in res.log:
        tr = rec.traces.get("p")
        line = f"t={rec.t} emit p={rec.outputs['p']:g}"
        if tr is not None:
            grades = ", ".join(f"{d:g}/{x:g}" for x, d in tr.assembled.items())
            line += f"  alphas={list(tr.applicability)}  assembled={{{grades}}}  next={tr.value:g}"
        print(line)


if __name__ == "__main__":
    main()
