"""Command-line experiment harness.

Exit codes: 0 success, 2 usage error, 3 input error, 4 refusal by a size guard.
``BIATSP_WORKERS`` sets the number of processes used for seed batches.
"""
from __future__ import annotations

import argparse
import json
import logging
import os
import sys
import tempfile
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from .dominance import Front
from .exact import ENUM_LIMIT, ExactRefusal, dp_pareto, enumerate_pareto
from .instance import (
    Instance,
    TSPLIBParseError,
    generate_contradicting,
    generate_ftv_derived,
    generate_random,
    parse_tsplib,
)
from .metrics import gd, igd, wilcoxon_signed_rank
from .moga import MogaConfig, run
from .reduction import reduce, sweep_to_csv, theta_sweep

log = logging.getLogger("biatsp")

EXIT_USAGE = 2
EXIT_INPUT = 3
EXIT_REFUSED = 4


class InputError(Exception):
    pass


def write_atomic(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.")
    with os.fdopen(fd, "w") as fh:
        fh.write(text)
    os.replace(tmp, path)


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def _load_instance(path: str) -> Instance:
    try:
        return Instance.from_json(_read(path))
    except (ValueError, TypeError) as exc:
        raise InputError(f"{path}: {exc}") from None


def _load_front(path: str) -> Front:
    try:
        return Front.from_csv(_read(path))
    except ValueError as exc:
        raise InputError(f"{path}: {exc}") from None


def _ranges(text: str) -> tuple[int, int, int, int]:
    try:
        vals = tuple(int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"ranges must be integers, got {text!r}") from None
    if len(vals) != 4:
        raise argparse.ArgumentTypeError("ranges take four values: lo1,hi1,lo2,hi2")
    return vals


def _seed_range(text: str) -> list[int]:
    lo, sep, hi = text.partition("..")
    try:
        lo_i, hi_i = int(lo), int(hi)
    except ValueError:
        raise argparse.ArgumentTypeError(f"seed range must look like 1..30, got {text!r}") from None
    if not sep or hi_i < lo_i:
        raise argparse.ArgumentTypeError(f"seed range must look like 1..30, got {text!r}")
    return list(range(lo_i, hi_i + 1))


def cmd_gen(args, parser) -> int:
    out = Path(args.out)
    if args.series == "ftv":
        if not args.tsplib:
            parser.error("gen --series ftv requires --tsplib FILE")
        try:
            base = parse_tsplib(Path(args.tsplib).read_bytes())
        except OSError as exc:
            raise InputError(f"cannot read {args.tsplib}: {exc.strerror}") from None
        except TSPLIBParseError as exc:
            raise InputError(f"{args.tsplib}: {exc}") from None
        n = base.n
    else:
        if args.n is None:
            parser.error("the following arguments are required: --n")
        n = args.n
    for idx in range(1, args.count + 1):
        seed = args.seed + idx - 1
        if args.series == "random":
            lo1, hi1, lo2, hi2 = args.ranges
            inst = generate_random(n, lo1, hi1, lo2, hi2, seed,
                                   name=f"S{n}[{lo1},{hi1}][{lo2},{hi2}]_{idx}")
        elif args.series == "contr":
            inst = generate_contradicting(n, seed, name=f"S{n}contr[1,2][1,2]_{idx}")
        else:
            inst = generate_ftv_derived(base, seed, name=f"{base.name}Rand_{idx}")
        path = out / f"{args.series}{n}_{idx}.json"
        write_atomic(path, inst.to_json())
        log.info("wrote %s", path)
    return 0


def _solve_one(job) -> tuple[int, dict]:
    inst, cfg, reference, out, stem = job
    report = run(inst, cfg, reference, trace_every=max(1, cfg.iterations // 100))
    doc = report.to_dict()
    if reference is not None:
        doc["final_gd"] = gd(report.front, reference)
        doc["final_igd"] = igd(report.front, reference)
    write_atomic(out / f"{stem}_s{cfg.seed}.json", json.dumps(doc, indent=1) + "\n")
    write_atomic(out / f"{stem}_s{cfg.seed}.csv", report.front.to_csv())
    return cfg.seed, doc


def cmd_solve(args, parser) -> int:
    inst = _load_instance(args.instance)
    reference = _load_front(args.reference) if args.reference else None
    seeds = args.seed_range if args.seed_range else [args.seed]
    try:
        cfgs = [MogaConfig(args.pop, args.iters, args.tournament, args.pmut, args.crossover, s)
                for s in seeds]
    except ValueError as exc:
        raise InputError(str(exc)) from None
    out = Path(args.out)
    stem = f"{Path(args.instance).stem}_{args.crossover}"
    jobs = [(inst, cfg, reference, out, stem) for cfg in cfgs]
    workers = int(os.environ.get("BIATSP_WORKERS", "1"))
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(workers) as pool:
            results = list(pool.map(_solve_one, jobs))
    else:
        results = [_solve_one(j) for j in jobs]
    for seed, doc in results:
        line = f"seed={seed} front={len(doc['front'])}"
        if reference is not None:
            line += f" GD={doc['final_gd']:.6g} IGD={doc['final_igd']:.6g}"
        print(line)
    return 0


def cmd_exact(args, parser) -> int:
    inst = _load_instance(args.instance)
    if args.method == "enum":
        front = enumerate_pareto(inst, limit=args.limit)
    else:
        front = dp_pareto(inst)
    write_atomic(Path(args.out), front.to_csv())
    log.info("exact front with %d points written to %s", len(front), args.out)
    return 0


def cmd_reduce(args, parser) -> int:
    front = _load_front(args.front)
    if args.sweep:
        text = sweep_to_csv(theta_sweep(front))
    else:
        if args.theta12 is None and args.theta21 is None:
            parser.error("reduce needs --theta12, --theta21 or --sweep")
        try:
            text = reduce(front, args.theta12, args.theta21).to_csv()
        except ValueError as exc:
            raise InputError(str(exc)) from None
    if args.out:
        write_atomic(Path(args.out), text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_metrics(args, parser) -> int:
    a, p = _load_front(args.approx), _load_front(args.reference)
    if len(a) == 0 or len(p) == 0:
        raise InputError("metrics need non-empty fronts")
    print(f"GD={gd(a, p):.12g}")
    print(f"IGD={igd(a, p):.12g}")
    return 0


def _final_values(directory: str, metric: str) -> dict[int, float]:
    out = {}
    paths = sorted(Path(directory).glob("*.json"))
    if not paths:
        raise InputError(f"no run reports found in {directory}")
    for path in paths:
        doc = json.loads(path.read_text())
        key = f"final_{metric}"
        if key not in doc:
            raise InputError(f"{path} has no {key}; rerun solve with --reference")
        out[int(doc["config"]["seed"])] = float(doc[key])
    return out


def cmd_compare(args, parser) -> int:
    a = _final_values(args.a, args.metric)
    b = _final_values(args.b, args.metric)
    if sorted(a) != sorted(b):
        raise InputError(f"run sets differ: {len(a)} runs in {args.a}, {len(b)} in {args.b}")
    seeds = sorted(a)
    x, y = [a[s] for s in seeds], [b[s] for s in seeds]
    res = wilcoxon_signed_rank(x, y, alpha=0.05)
    mean_a, mean_b = sum(x) / len(x), sum(y) / len(y)
    print(f"runs={len(seeds)} mean_a={mean_a:.6g} mean_b={mean_b:.6g}")
    if not res.conclusive:
        print(f"inconclusive: only {res.n} non-zero differences")
        return 0
    better = "a" if mean_a < mean_b else "b"
    verdict = f"significant, {better} better" if res.significant else "not significant"
    print(f"W={res.statistic:g} p={res.pvalue:.6g} method={res.method} -> {verdict} at 5%")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="biatsp", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generate instance series as JSON")
    p.add_argument("--series", choices=["random", "contr", "ftv"], required=True)
    p.add_argument("--n", type=int)
    p.add_argument("--ranges", type=_ranges, default=(1, 10, 1, 10))
    p.add_argument("--count", type=int, default=5)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tsplib")
    p.add_argument("--out", default=".")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("solve", help="run NSGA-II on an instance")
    p.add_argument("--instance", required=True)
    p.add_argument("--crossover", choices=["dec", "dpx"], default="dec")
    p.add_argument("--pop", type=int, default=50)
    p.add_argument("--iters", type=int, default=1000)
    p.add_argument("--tournament", type=int, default=10)
    p.add_argument("--pmut", type=float, default=0.1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--seed-range", type=_seed_range)
    p.add_argument("--reference")
    p.add_argument("--out", default=".")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("exact", help="exact Pareto front of a small instance")
    p.add_argument("--instance", required=True)
    p.add_argument("--method", choices=["enum", "dp"], default="enum")
    p.add_argument("--limit", type=int, default=ENUM_LIMIT)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_exact)

    p = sub.add_parser("reduce", help="reduce a front with quanta of information")
    p.add_argument("--front", required=True)
    p.add_argument("--theta12")
    p.add_argument("--theta21")
    p.add_argument("--sweep", action="store_true")
    p.add_argument("--out")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("metrics", help="GD and IGD of an approximation")
    p.add_argument("--approx", required=True)
    p.add_argument("--reference", required=True)
    p.set_defaults(func=cmd_metrics)

    p = sub.add_parser("compare", help="Wilcoxon test over paired per-seed run reports")
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.add_argument("--metric", choices=["gd", "igd"], default="igd")
    p.set_defaults(func=cmd_compare)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)
    try:
        return args.func(args, parser)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ExactRefusal as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return EXIT_REFUSED
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
