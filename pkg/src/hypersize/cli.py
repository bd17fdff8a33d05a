"""Command-line entry point.

Data goes to stdout, diagnostics to stderr. Exit codes: 0 ok, 1 evaluation
error, 2 usage or configuration error.
"""

from __future__ import annotations

import argparse
import logging
import math
import sys
from dataclasses import replace

from .config import PRESET_NAMES, load_config
from .discrepancies import Discrepancy, discrepancies_for, merge
from .errors import ConfigError, SweepError
from .explorer import (
    COMPARISON_FIELDS,
    FREE_PARAMETERS,
    BreakEvenQuery,
    Metric,
    SweepParameter,
    SweepSpec,
    break_even,
    compare_technologies,
    run_sweep,
)
from .model import Variant
from .output import comment_lines, fmt_float, to_csv, to_json
from .parallelism import DistanceModel
from .simulator import SimConfig, find_knee, utilization_curve
from .sizing import REPORT_FIELDS

log = logging.getLogger("hypersize")

UNITS = """\
units (all SI, in config files and flags):
  clock_frequency Hz, word widths bits, memory_response_time s,
  link_bandwidth bit/s, signal_speed m/s, resistivity ohm*m,
  cross-sections and emitter_footprint m^2, signal_current A,
  drive_voltage V, per_driver_power W, surface_power_density W/m^2,
  vertical_pitch m, energy_per_op J/op, theta ops/s; diameters print in m,
  latencies in s, threads and latencies in cycles are dimensionless.
presets: """ + ", ".join(PRESET_NAMES) + " (pass a name or presets/<name>.json)"

SIZE_CSV_FIELDS = REPORT_FIELDS + (
    "threads", "tau_p_s", "tau_n_s", "tau_m_s", "total_s", "latency_threads", "distance_model",
)


def _ledger_comments(entries: list[Discrepancy]) -> str:
    return comment_lines(
        f"discrepancy {e.id}: published={fmt_float(e.published)} {e.unit}, "
        f"computed={fmt_float(e.computed)} {e.unit}; {e.note}"
        for e in entries
    )


def _scenario(cfg_file, args):
    scenario = cfg_file.scenario
    if getattr(args, "variant", None):
        scenario = scenario.with_(variant=Variant.parse(args.variant))
    if getattr(args, "distance", None):
        scenario = scenario.with_(distance=DistanceModel.parse(args.distance))
    return scenario


def cmd_size(args) -> str:
    scenario = _scenario(load_config(args.config), args)
    ev = scenario.evaluate()
    ledger = discrepancies_for(scenario, ev)
    if args.format == "json":
        doc = {
            **ev.report.as_dict(),
            "network_diameter_hops": ev.report.network_diameter,
            "distance_model": scenario.distance.value,
            "threads": ev.threads,
            "threads_int": math.ceil(ev.threads),
            "latency": ev.latency.as_dict(),
            "discrepancies": [e.as_dict() for e in ledger],
        }
        return to_json(doc) + "\n"
    lat = ev.latency.as_dict()
    row = {
        **ev.report.as_dict(),
        "threads": ev.threads,
        **{k: lat[k] for k in ("tau_p_s", "tau_n_s", "tau_m_s", "total_s")},
        "latency_threads": lat["threads"],
        "distance_model": scenario.distance.value,
    }
    return to_csv([row], SIZE_CSV_FIELDS) + _ledger_comments(ledger)


def cmd_sweep(args) -> str:
    scenario = _scenario(load_config(args.config), args)
    spec = SweepSpec(
        parameter=SweepParameter.parse(args.param),
        lo=args.min,
        hi=args.max,
        points=args.points,
        base=scenario,
        log=args.log,
        pin_diameter=args.pin_diameter,
    )
    rows = run_sweep(spec)
    ledger = discrepancies_for(scenario, scenario.evaluate())
    fields = (spec.parameter.value,) + spec.outputs
    if args.format == "json":
        return to_json({"rows": rows, "discrepancies": [e.as_dict() for e in ledger]}) + "\n"
    return to_csv(rows, fields) + _ledger_comments(ledger)


def cmd_compare(args) -> str:
    files = [load_config(p) for p in args.configs]
    base = _scenario(files[0], args)
    techs = [f.scenario.technology for f in files]
    rows = compare_technologies(base, techs)
    ledger = merge(*(
        discrepancies_for(base.with_(technology=t), base.with_(technology=t).evaluate())
        for t, row in zip(techs, rows)
        if row["status"] == "ok"
    ))
    if args.format == "json":
        return to_json({"rows": rows, "discrepancies": [e.as_dict() for e in ledger]}) + "\n"
    return to_csv(rows, COMPARISON_FIELDS) + _ledger_comments(ledger)


def cmd_breakeven(args) -> str:
    baseline = _scenario(load_config(args.baseline), args)
    candidate_file = load_config(args.candidate)
    candidate = baseline.with_(technology=candidate_file.scenario.technology)
    query = BreakEvenQuery(
        baseline=baseline,
        candidate=candidate,
        free_parameter=args.free,
        metric=Metric.parse(args.metric),
        lo=args.lo,
        hi=args.hi,
    )
    value = break_even(query)
    row = {
        "metric": query.metric.value,
        "free_parameter": query.free_parameter,
        "value": value,
        "baseline_metric": query.target(),
        "candidate_metric": query.candidate_metric(value),
    }
    ledger = discrepancies_for(candidate, candidate.evaluate())
    if args.format == "json":
        return to_json({**row, "discrepancies": [e.as_dict() for e in ledger]}) + "\n"
    return to_csv([row], list(row)) + _ledger_comments(ledger)


def _thread_range(text: str) -> range:
    parts = text.split(":")
    try:
        nums = [int(p) for p in parts]
    except ValueError:
        raise ConfigError("threads-range", f"expected lo:hi[:step] integers, got {text!r}") from None
    if len(nums) not in (2, 3):
        raise ConfigError("threads-range", f"expected lo:hi[:step], got {text!r}")
    lo, hi = nums[:2]
    step = nums[2] if len(nums) == 3 else 1
    if lo < 1 or hi < lo or step < 1:
        raise ConfigError("threads-range", f"need 1 <= lo <= hi and step >= 1, got {text!r}")
    return range(lo, hi + 1, step)


def cmd_simulate(args) -> str:
    base = None
    if args.config:
        base = load_config(args.config).simulation
    overrides = {
        "round_trip_cycles": args.latency,
        "latency_jitter": args.jitter,
        "memory_op_probability": args.mem_prob,
        "warmup_cycles": args.warmup,
        "measured_cycles": args.measured,
        "seed": args.seed,
    }
    overrides = {k: v for k, v in overrides.items() if v is not None}
    if base is None:
        if "round_trip_cycles" not in overrides:
            raise ConfigError("latency", "required when no config with a simulation section is given")
        try:
            base = SimConfig(thread_contexts=1, **overrides)
        except ConfigError as exc:
            raise exc.prefixed("simulation") from None
    else:
        base = replace(base, **overrides)
    threads = _thread_range(args.threads_range) if args.threads_range else range(1, 2 * base.round_trip_cycles + 1)
    curve = utilization_curve(base, threads, workers=args.workers)
    knee = find_knee(curve)
    rows = [{"threads": t, "utilization": u} for t, u in curve]
    if args.format == "json":
        return to_json({"curve": rows, "knee": knee}) + "\n"
    return to_csv(rows, ("threads", "utilization")) + comment_lines([f"knee={knee}"])


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hypersize",
        description="Size petaops-scale machines from power, wiring and latency limits.",
        epilog=UNITS,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    parser.add_argument("-v", "--verbose", action="store_true", help="log diagnostics to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, default_format):
        p.add_argument("--variant", choices=["paper_simplified", "paper-simplified", "exact"],
                       help="formula variant (default: the config's, else paper_simplified)")
        p.add_argument("--format", choices=["json", "csv"], default=default_format)
        p.add_argument("--distance", choices=["diameter", "mean-chord", "mean_chord"],
                       help="path length for propagation delay: full diameter L (default) or 2L/pi")

    p = sub.add_parser("size", help="size one configuration", epilog=UNITS,
                       formatter_class=argparse.RawDescriptionHelpFormatter)
    p.add_argument("config", help="JSON config file or preset name")
    common(p, "json")
    p.set_defaults(func=cmd_size)

    p = sub.add_parser("sweep", help="sweep performance, clock or node count", epilog=UNITS,
                       formatter_class=argparse.RawDescriptionHelpFormatter)
    p.add_argument("config")
    p.add_argument("--param", required=True, help="theta (ops/s), clock (Hz) or node_count")
    p.add_argument("--min", type=float, required=True)
    p.add_argument("--max", type=float, required=True)
    p.add_argument("--points", type=int, required=True, help="number of points, >= 2")
    p.add_argument("--log", action="store_true", help="log-spaced points")
    p.add_argument("--pin-diameter", action="store_true",
                   help="hold the network diameter D at the base config's value")
    common(p, "csv")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("compare", help="compare technologies; ratios against the first config",
                       epilog=UNITS, formatter_class=argparse.RawDescriptionHelpFormatter)
    p.add_argument("configs", nargs="+", help="two or more configs; machine and cooling come from the first")
    common(p, "csv")
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("breakeven", help="solve a candidate parameter for metric parity with a baseline",
                       epilog=UNITS, formatter_class=argparse.RawDescriptionHelpFormatter)
    p.add_argument("baseline")
    p.add_argument("candidate")
    p.add_argument("--metric", required=True, help="packing, installation or threads")
    p.add_argument("--free", required=True, help="candidate parameter: " + ", ".join(sorted(FREE_PARAMETERS))
                   + " (sigma, sigma_le in m^2; link_bandwidth bit/s; signal_speed m/s; per_driver_power W)")
    p.add_argument("--lo", type=float, required=True)
    p.add_argument("--hi", type=float, required=True)
    common(p, "csv")
    p.set_defaults(func=cmd_breakeven)

    p = sub.add_parser("simulate", help="utilization curve of one multithreaded PE")
    p.add_argument("config", nargs="?", help="optional config with a simulation section")
    p.add_argument("--threads-range", help="lo:hi[:step], inclusive (default 1:2*latency)")
    p.add_argument("--latency", type=int, help="mean round-trip latency in cycles")
    p.add_argument("--jitter", type=float, help="uniform latency jitter as a fraction of the mean, < 1")
    p.add_argument("--mem-prob", type=float, help="probability an issued op is a memory access")
    p.add_argument("--warmup", type=int, help="warm-up cycles (default 10*latency)")
    p.add_argument("--measured", type=int, help="measured cycles (default 100*(1+latency))")
    p.add_argument("--seed", type=int)
    p.add_argument("--workers", type=int, default=1, help="parallel processes for curve points")
    p.add_argument("--format", choices=["json", "csv"], default="csv")
    p.set_defaults(func=cmd_simulate)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, stream=sys.stderr)
    try:
        out = args.func(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except SweepError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2 if isinstance(exc.cause, ConfigError) else 1
    except Exception as exc:  # noqa: BLE001
        log.debug("evaluation failed", exc_info=True)
        print(f"error: {exc}", file=sys.stderr)
        return 1
    sys.stdout.write(out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
