"""DEC_PR vs DPX_PR on a series of small instances with exact reference fronts.

For each instance: exact front by DP, then `--runs` seeded runs of each
crossover. Prints one row per instance with mean GD/IGD, mean front sizes
and the Wilcoxon verdict, and writes the per-run finals to CSV.

    python scripts/approximation_experiment.py --series random --n 12 --runs 30 --out results/approx
"""
import argparse
import csv
import logging
from pathlib import Path

import numpy as np

from biatsp.exact import dp_pareto
from biatsp.instance import generate_contradicting, generate_random
from biatsp.metrics import wilcoxon_signed_rank
from biatsp.moga import MogaConfig, run

log = logging.getLogger("approx")


def instances(series, n, count, seed):
    for idx in range(1, count + 1):
        if series == "contr":
            yield generate_contradicting(n, seed + idx - 1, name=f"S{n}contr[1,2][1,2]_{idx}")
        else:
            yield generate_random(n, 1, 10, 1, 10, seed + idx - 1, name=f"S{n}[1,10][1,10]_{idx}")


def verdict(x, y):
    res = wilcoxon_signed_rank(x, y)
    if not res.conclusive:
        return "inconclusive"
    if not res.significant:
        return f"n.s. (p={res.pvalue:.3g})"
    return f"{'DEC' if np.mean(x) < np.mean(y) else 'DPX'} better (p={res.pvalue:.3g})"


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--series", choices=["random", "contr"], default="random")
    ap.add_argument("--n", type=int, default=12)
    ap.add_argument("--count", type=int, default=5)
    ap.add_argument("--seed", type=int, default=1)
    ap.add_argument("--runs", type=int, default=30)
    ap.add_argument("--iters", type=int, default=1000)
    ap.add_argument("--pop", type=int, default=50)
    ap.add_argument("--out", default="results/approx")
    args = ap.parse_args()
    logging.basicConfig(level=logging.INFO, format="%(message)s")

    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    rows = []
    print(f"{'instance':28s} {'|P*|':>4s} {'|A0|':>5s} {'GD0':>7s} "
          f"{'GD dec':>7s} {'GD dpx':>7s} {'IGD dec':>7s} {'IGD dpx':>7s} {'|A| dec':>7s} {'|A| dpx':>7s}  IGD test")
    for inst in instances(args.series, args.n, args.count, args.seed):
        ref = dp_pareto(inst)
        finals = {}
        for x in ("dec", "dpx"):
            res = []
            for seed in range(1, args.runs + 1):
                rep = run(inst, MogaConfig(args.pop, args.iters, crossover=x, seed=seed), ref,
                          trace_every=args.iters or 1)
                res.append((rep.gd_trace[0], rep.gd_trace[-1], rep.igd_trace[-1],
                            len(rep.initial_front), len(rep.front)))
                rows.append([inst.name, x, seed, *res[-1]])
            finals[x] = np.array(res)
            log.debug("%s %s done", inst.name, x)
        d, p = finals["dec"], finals["dpx"]
        print(f"{inst.name:28s} {len(ref):4d} {d[:, 3].mean():5.1f} {d[:, 0].mean():7.3f} "
              f"{d[:, 1].mean():7.3f} {p[:, 1].mean():7.3f} {d[:, 2].mean():7.3f} {p[:, 2].mean():7.3f} "
              f"{d[:, 4].mean():7.1f} {p[:, 4].mean():7.1f}  {verdict(d[:, 2], p[:, 2])}")

    with open(out / "runs.csv", "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["instance", "crossover", "seed", "gd_initial", "gd_final", "igd_final",
                    "size_initial", "size_final"])
        w.writerows(rows)


if __name__ == "__main__":
    main()
