"""Exclusion percentages of theta sweeps on approximated fronts.

Each instance is approximated by NSGA-II-DEC, then swept over theta in
0.1..0.9 for both single quanta and all consistent pairs. The mean
exclusion per cell over the series is printed as two single-case rows and
a pair grid.

    python scripts/reduction_experiment.py --series random --n 50 --ranges 1,10,1,20
    python scripts/reduction_experiment.py --series ftv --tsplib ftv33.atsp
"""
import argparse
import logging
from collections import defaultdict
from pathlib import Path

import numpy as np

from biatsp.instance import generate_ftv_derived, generate_random, parse_tsplib
from biatsp.moga import MogaConfig, run
from biatsp.reduction import DEFAULT_GRID, sweep_to_csv, theta_sweep

log = logging.getLogger("reduction")


def instances(args):
    if args.series == "ftv":
        base = parse_tsplib(Path(args.tsplib).read_bytes())
        for idx in range(1, args.count + 1):
            yield generate_ftv_derived(base, args.seed + idx - 1, name=f"{base.name}Rand_{idx}")
    else:
        lo1, hi1, lo2, hi2 = (int(v) for v in args.ranges.split(","))
        for idx in range(1, args.count + 1):
            yield generate_random(args.n, lo1, hi1, lo2, hi2, args.seed + idx - 1,
                                  name=f"S{args.n}[{lo1},{hi1}][{lo2},{hi2}]_{idx}")


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--series", choices=["random", "ftv"], default="random")
    ap.add_argument("--n", type=int, default=50)
    ap.add_argument("--ranges", default="1,10,1,20")
    ap.add_argument("--tsplib")
    ap.add_argument("--count", type=int, default=5)
    ap.add_argument("--seed", type=int, default=1)
    ap.add_argument("--iters", type=int, default=1000)
    ap.add_argument("--pop", type=int, default=50)
    ap.add_argument("--out", default="results/reduction")
    args = ap.parse_args()
    if args.series == "ftv" and not args.tsplib:
        ap.error("--series ftv needs --tsplib")
    logging.basicConfig(level=logging.INFO, format="%(message)s")

    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    cells = defaultdict(list)
    for inst in instances(args):
        rep = run(inst, MogaConfig(args.pop, args.iters, seed=args.seed))
        rows = theta_sweep(rep.front)
        (out / f"{inst.name}_front.csv").write_text(rep.front.to_csv())
        (out / f"{inst.name}_sweep.csv").write_text(sweep_to_csv(rows))
        log.info("%s: %d points", inst.name, len(rep.front))
        for r in rows:
            cells[r.case, r.theta12, r.theta21].append(r.excluded_pct)

    grid = list(DEFAULT_GRID)
    head = "".join(f"{float(t):7.1f}" for t in grid)
    print(f"{'theta':>8s}{head}")
    print(f"{'1>2':>8s}" + "".join(f"{np.mean(cells['12', t, None]):7.1f}" for t in grid))
    print(f"{'2>1':>8s}" + "".join(f"{np.mean(cells['21', None, t]):7.1f}" for t in grid))
    print("pairs (rows theta12, columns theta21)")
    for t12 in grid:
        vals = [f"{np.mean(cells['pair', t12, t21]):7.1f}" if t12 + t21 < 1 else " " * 7 for t21 in grid]
        print(f"{float(t12):8.1f}" + "".join(vals))


if __name__ == "__main__":
    main()
