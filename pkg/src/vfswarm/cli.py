"""Command-line front end: ``vfswarm run | sweep | certify | scaffold``.

Exit codes: 0 success, 1 configuration or runtime error, 2 the run finished
but a safety or convergence criterion failed.
"""
import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from .config import ConfigError, apply_override, format_scenario, load_scenario
from .engagement import certify
from .errors import InvalidParams, VfSwarmError
from .sim import Scenario, run
from .telemetry import fmt, summary_dict, write_csv, write_jsonl

EXIT_OK, EXIT_ERROR, EXIT_FAILED = 0, 1, 2


def _err(msg):
    print(f"vfswarm: error: {msg}", file=sys.stderr)


def _threads():
    raw = os.environ.get("SIM_THREADS")
    if raw:
        try:
            return max(1, int(raw))
        except ValueError:
            _err(f"ignoring SIM_THREADS={raw!r}")
    return os.cpu_count() or 1


def cmd_run(args):
    try:
        scenario = load_scenario(args.scenario)
        if args.seed is not None:
            scenario = scenario.replace(rng_seed=args.seed)
        if args.decimation is not None:
            scenario = scenario.replace(decimation=args.decimation)
    except (ConfigError, ValueError) as exc:
        _err(exc)
        return EXIT_ERROR

    frames, summary = run(scenario)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    if args.format == "csv":
        with open(out / "telemetry.csv", "w", newline="\n") as fh:
            write_csv(frames, fh)
    else:
        with open(out / "telemetry.jsonl", "w", newline="\n") as fh:
            write_jsonl(frames, fh)
    with open(out / "summary.json", "w") as fh:
        json.dump(summary_dict(summary, scenario), fh, indent=2)
        fh.write("\n")
    if args.svg and frames:
        from .plots import plot_timeseries, plot_trajectories

        plot_trajectories(frames, scenario, out / "trajectories.svg",
                          snapshots=(0.0, scenario.t_end / 2, scenario.t_end))
        plot_timeseries(frames, scenario, out / "timeseries.svg")

    print(
        f"t={summary.t_final:g} s  min E={summary.min_E_over_run:.4f} m  "
        f"max|eps|={summary.final_max_abs_epsilon:.4g} m  "
        f"max|delta|={summary.final_max_abs_delta:.4g} m  "
        f"collision={summary.collision}  wall={summary.wall_time:.2f} s"
    )
    if summary.error and not summary.collision:
        _err(summary.error)
        return EXIT_ERROR
    if summary.collision:
        _err(summary.error or "collision")
        return EXIT_FAILED
    return EXIT_OK if summary.converged else EXIT_FAILED


def _sweep_one(scenario):
    return run(scenario)[1]


def _parse_values(raw):
    values = []
    for item in raw:
        values += [v for v in item.split(",") if v.strip()]
    return values


def cmd_sweep(args):
    values = _parse_values(args.values)
    if not values:
        _err("sweep needs at least one value")
        return EXIT_ERROR
    try:
        base = load_scenario(args.scenario)
        scenarios = [apply_override(base, args.param, v) for v in values]
    except (ConfigError, ValueError) as exc:
        _err(exc)
        return EXIT_ERROR

    workers = min(_threads(), len(scenarios))
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            summaries = list(pool.map(_sweep_one, scenarios))
    else:
        summaries = [_sweep_one(sc) for sc in scenarios]

    header = "value,min_E,collision,time_to_path,final_max_abs_delta"
    lines = [header]
    for value, s in zip(values, summaries):
        ttp = "nan" if s.time_to_path is None else fmt(s.time_to_path)
        lines.append(
            f"{value.strip()},{fmt(s.min_E_over_run)},{str(s.collision).lower()},"
            f"{ttp},{fmt(s.final_max_abs_delta)}"
        )
    text = "\n".join(lines) + "\n"
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        (out / "sweep.csv").write_text(text)
    sys.stdout.write(text)
    return EXIT_OK


def cmd_certify(args):
    try:
        if args.n_samples < 1:
            raise InvalidParams("n_samples must be >= 1")
        report = certify(args.v, args.r_s, args.d_safe, args.k_r, args.n_samples,
                         seed=args.seed, kappa=args.kappa)
    except (VfSwarmError, ValueError) as exc:
        _err(exc)
        return EXIT_ERROR
    print("\n".join(report.lines()))
    return EXIT_OK if report.certified else EXIT_FAILED


def cmd_scaffold(args):
    text = format_scenario(Scenario())
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def build_parser():
    p = argparse.ArgumentParser(prog="vfswarm", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    r = sub.add_parser("run", help="simulate one scenario file")
    r.add_argument("scenario")
    r.add_argument("--out", "-o", default="out")
    r.add_argument("--format", choices=("csv", "jsonl"), default="csv")
    r.add_argument("--seed", type=int)
    r.add_argument("--decimation", type=int)
    r.add_argument("--svg", action="store_true", help="also write SVG plots")
    r.set_defaults(func=cmd_run)

    s = sub.add_parser("sweep", help="run a scenario once per parameter value")
    s.add_argument("scenario")
    s.add_argument("--param", required=True, help="numeric field, e.g. k_r or avoidance.k_r")
    s.add_argument("--values", nargs="*", default=[], help="values, space or comma separated")
    s.add_argument("--out", "-o")
    s.set_defaults(func=cmd_sweep)

    c = sub.add_parser("certify", help="check the repulsion gain bound by Monte-Carlo")
    c.add_argument("--v", type=float, default=3.0)
    c.add_argument("--r-s", dest="r_s", type=float, default=1.5)
    c.add_argument("--d-safe", dest="d_safe", type=float, default=0.4)
    c.add_argument("--k-r", dest="k_r", type=float, default=11.0)
    c.add_argument("--n-samples", dest="n_samples", type=int, default=1000)
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--kappa", type=float, help="also test speeds v+kappa vs v-kappa")
    c.set_defaults(func=cmd_certify)

    f = sub.add_parser("scaffold", help="print a commented template scenario file")
    f.add_argument("--output", "-o")
    f.set_defaults(func=cmd_scaffold)
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
