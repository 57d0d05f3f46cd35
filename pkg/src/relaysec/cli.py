"""Command-line harness: bounds, simulate, sweep, tolerance, validate.

Settings resolve in a fixed precedence: built-in defaults, then a --config
JSON file (flat object with ScenarioConfig / ProtocolChoice field names in
snake_case), then explicit flags. A bare --tau forces the manual threshold
policy. Every run echoes its fully-resolved configuration so results are
self-describing, and every randomized command has a fixed default seed;
nothing is ever derived from the clock.

Exit codes: 0 success, 2 usage error, 3 infeasible configuration,
4 validation failure.
"""

from __future__ import annotations

import argparse
import json
import sys

from .bounds import InfeasibleConfigError, build_bound_report
from .channel import NOISE_MODES, ScenarioConfig
from .montecarlo import LEG_MODES, estimate_outage, load_balance, tolerance_search
from .protocols import ProtocolChoice, resolve_tau
from .serialize import csv_line, dumps, write_csv
from .validation import run_oracle_suite

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_INFEASIBLE = 3
EXIT_VALIDATION = 4

DEFAULT_SEED = 12345
DEFAULT_TRIALS = 100_000

_KIND_ALIASES = {"optimal": "optimal-maxmin", "random": "random-uniform",
                 "optimal-maxmin": "optimal-maxmin", "random-uniform": "random-uniform"}
_POLICY_ALIASES = {"protocol1": "protocol1-formula", "protocol1-formula": "protocol1-formula",
                   "theorem2-max": "theorem2-max", "theorem2-min": "theorem2-min",
                   "manual": "manual"}

_SCENARIO_KEYS = ("n", "m", "gamma_r", "gamma_e", "es", "n0", "noise_mode",
                  "coherence_len", "eps_s", "eps_t")
_PROTOCOL_KEYS = ("kind", "tau_policy", "tau")
_RUN_KEYS = ("trials", "seed", "legs", "workers")

_DEFAULTS = {"es": 1.0, "n0": 1.0, "noise_mode": "exact", "coherence_len": 1,
             "kind": "random-uniform", "tau_policy": "protocol1-formula",
             "trials": DEFAULT_TRIALS, "seed": DEFAULT_SEED,
             "legs": "shared", "workers": 1}

SWEEP_PARAMS = ("n", "m", "gamma_r", "gamma_e", "eps_s", "eps_t", "tau")

SWEEP_COLUMNS = [
    "swept_value",
    "m_max_t1", "m_max_t3", "tau_min", "tau_max", "feasible",
    "p_t_hop1", "p_t_hop1_ci_lo", "p_t_hop1_ci_hi",
    "p_t_hop2", "p_t_hop2_ci_lo", "p_t_hop2_ci_hi",
    "p_t_e2e", "p_t_e2e_ci_lo", "p_t_e2e_ci_hi",
    "p_s_hop1", "p_s_hop1_ci_lo", "p_s_hop1_ci_hi",
    "p_s_hop2", "p_s_hop2_ci_lo", "p_s_hop2_ci_hi",
    "p_s_e2e", "p_s_e2e_ci_lo", "p_s_e2e_ci_hi",
    "p_eve_single_hop1", "p_eve_single_hop1_ci_lo", "p_eve_single_hop1_ci_hi",
    "jain_index", "status",
]


def _shared_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--n", type=int, help="number of candidate relays")
    p.add_argument("--m", type=int, help="number of eavesdroppers")
    p.add_argument("--gamma-r", type=float, dest="gamma_r", help="legitimate SINR threshold")
    p.add_argument("--gamma-e", type=float, dest="gamma_e", help="eavesdropper SINR threshold")
    p.add_argument("--eps-s", type=float, dest="eps_s", help="secrecy outage budget")
    p.add_argument("--eps-t", type=float, dest="eps_t", help="transmission outage budget")
    p.add_argument("--es", type=float, help="per-node transmit power (default 1)")
    p.add_argument("--n0", type=float, help="noise spectral level (default 1)")
    p.add_argument("--noise-mode", choices=NOISE_MODES, dest="noise_mode")
    p.add_argument("--protocol", choices=sorted(_KIND_ALIASES), dest="kind",
                   help="relay selection rule")
    p.add_argument("--tau-policy", choices=sorted(_POLICY_ALIASES), dest="tau_policy")
    p.add_argument("--tau", type=float, help="manual jamming threshold")
    p.add_argument("--trials", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--coherence-len", type=int, dest="coherence_len",
                   help="slots per channel epoch")
    p.add_argument("--config", help="JSON file with any of the above settings")
    p.add_argument("--out", help="write the result to this file instead of stdout")
    p.add_argument("--format", choices=("json", "csv"), dest="fmt")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="relaysec",
        description="Two-hop relay security: closed-form bounds and Monte Carlo estimation.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_bounds = sub.add_parser("bounds", help="evaluate every closed-form bound")
    _shared_flags(p_bounds)

    p_sim = sub.add_parser("simulate", help="Monte Carlo outage estimation")
    _shared_flags(p_sim)
    p_sim.add_argument("--legs", choices=LEG_MODES,
                       help="hop channel coupling (default shared)")
    p_sim.add_argument("--workers", type=int, help="parallel worker processes")

    p_sweep = sub.add_parser("sweep", help="sweep one parameter, emit a results table")
    _shared_flags(p_sweep)
    p_sweep.add_argument("--param", choices=SWEEP_PARAMS, required=True)
    p_sweep.add_argument("--values", help="comma-separated values for the swept parameter")
    p_sweep.add_argument("--from", type=float, dest="sweep_from")
    p_sweep.add_argument("--to", type=float, dest="sweep_to")
    p_sweep.add_argument("--step", type=float, dest="sweep_step")
    p_sweep.add_argument("--outputs", choices=("bounds", "simulation", "both"),
                         default="both")
    p_sweep.add_argument("--load-balance-slots", type=int, dest="lb_slots",
                         help="also run this many slots per row and report the Jain index")
    p_sweep.add_argument("--legs", choices=LEG_MODES)
    p_sweep.add_argument("--workers", type=int)
    p_sweep.add_argument("--append", action="store_true",
                         help="append rows to an existing CSV with the same header")

    p_tol = sub.add_parser("tolerance", help="search the empirical eavesdropper tolerance")
    _shared_flags(p_tol)
    p_tol.add_argument("--m-cap", type=int, dest="m_cap", default=1024)
    p_tol.add_argument("--legs", choices=LEG_MODES)
    p_tol.add_argument("--workers", type=int)

    p_val = sub.add_parser("validate", help="run the oracle identity suite")
    _shared_flags(p_val)
    p_val.add_argument("--quick", action="store_true",
                       help="fewer trials (tolerances widen automatically)")
    p_val.add_argument("--inject-gamma-e-offset", type=float, default=0.0,
                       help=argparse.SUPPRESS)

    return parser


def _resolve_settings(parser: argparse.ArgumentParser, args: argparse.Namespace,
                      required: tuple[str, ...]) -> dict:
    """Merge defaults, config-file values and explicit flags (flags win)."""
    merged = dict(_DEFAULTS)
    if getattr(args, "config", None):
        try:
            with open(args.config, "r", encoding="utf-8") as fh:
                file_vals = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            parser.error(f"cannot read config file {args.config}: {exc}")
        if not isinstance(file_vals, dict):
            parser.error(f"config file {args.config} must hold a flat JSON object")
        if "protocol" in file_vals:  # accepted alias for the 'kind' field
            file_vals.setdefault("kind", file_vals.pop("protocol"))
        known = set(_SCENARIO_KEYS) | set(_PROTOCOL_KEYS) | set(_RUN_KEYS)
        unknown = set(file_vals) - known
        if unknown:
            parser.error(f"unknown config file keys: {sorted(unknown)}")
        merged.update(file_vals)
    for key in (*_SCENARIO_KEYS, *_PROTOCOL_KEYS, *_RUN_KEYS):
        val = getattr(args, key, None)
        if val is not None:
            merged[key] = val
    if merged.get("kind") in _KIND_ALIASES:
        merged["kind"] = _KIND_ALIASES[merged["kind"]]
    if merged.get("tau_policy") in _POLICY_ALIASES:
        merged["tau_policy"] = _POLICY_ALIASES[merged["tau_policy"]]
    if merged.get("tau") is not None:
        merged["tau_policy"] = "manual"
    missing = [k for k in required if merged.get(k) is None]
    if missing:
        flags = ", ".join("--" + k.replace("_", "-") for k in missing)
        parser.error(f"missing required settings: {flags}")
    return merged


def _make_scenario(local: dict) -> ScenarioConfig:
    return ScenarioConfig(**{k: local[k] for k in _SCENARIO_KEYS if local.get(k) is not None})


def _make_protocol(local: dict) -> ProtocolChoice:
    return ProtocolChoice(kind=local["kind"], tau_policy=local["tau_policy"],
                          tau=local.get("tau"))


def _scenario(parser, merged) -> ScenarioConfig:
    try:
        return _make_scenario(merged)
    except (TypeError, ValueError) as exc:
        parser.error(str(exc))


def _protocol(parser, merged) -> ProtocolChoice:
    try:
        return _make_protocol(merged)
    except ValueError as exc:
        parser.error(str(exc))


def _config_echo(merged: dict) -> dict:
    return {k: merged.get(k) for k in _SCENARIO_KEYS}


def _protocol_echo(protocol: ProtocolChoice, tau_resolved: float | None) -> dict:
    return {"kind": protocol.kind, "tau_policy": protocol.tau_policy,
            "tau": protocol.tau, "tau_resolved": tau_resolved}


def _emit(text: str, out_path: str | None) -> None:
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _cmd_bounds(parser, args) -> int:
    merged = _resolve_settings(parser, args,
                               required=("n", "m", "gamma_r", "gamma_e", "eps_s", "eps_t"))
    try:
        report = build_bound_report(merged["n"], merged["m"], merged["gamma_r"],
                                    merged["gamma_e"], merged["eps_s"], merged["eps_t"],
                                    tau=merged.get("tau"))
    except ValueError as exc:
        parser.error(str(exc))
    rd = report.as_dict()
    if (args.fmt or "json") == "csv":
        keys = list(rd)
        _emit(csv_line(keys) + "\n" + csv_line([rd[k] for k in keys]), args.out)
    else:
        _emit(dumps({"command": "bounds", "report": rd}, indent=2), args.out)
    return EXIT_OK if report.tau_interval.feasible else EXIT_INFEASIBLE


def _cmd_simulate(parser, args) -> int:
    merged = _resolve_settings(parser, args, required=("n", "m", "gamma_r", "gamma_e"))
    config = _scenario(parser, merged)
    protocol = _protocol(parser, merged)
    try:
        tau_resolved = resolve_tau(protocol, config)
        est = estimate_outage(config, protocol, merged["trials"], merged["seed"],
                              legs=merged["legs"], workers=merged["workers"])
    except InfeasibleConfigError as exc:
        print(f"infeasible configuration: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except ValueError as exc:
        parser.error(str(exc))
    res = est.as_dict()
    if (args.fmt or "json") == "csv":
        keys = list(res)
        _emit(csv_line(keys) + "\n" + csv_line([res[k] for k in keys]), args.out)
    else:
        doc = {"command": "simulate", "config": _config_echo(merged),
               "protocol": _protocol_echo(protocol, tau_resolved), "result": res}
        _emit(dumps(doc, indent=2), args.out)
    return EXIT_OK


def _sweep_values(parser, args) -> list[float]:
    if args.values:
        try:
            vals = [float(v) for v in args.values.split(",") if v.strip() != ""]
        except ValueError:
            parser.error(f"--values must be comma-separated numbers, got {args.values!r}")
    elif args.sweep_from is not None and args.sweep_to is not None and args.sweep_step:
        vals, v = [], args.sweep_from
        while v <= args.sweep_to + 1e-12:
            vals.append(v)
            v += args.sweep_step
    else:
        parser.error("sweep needs --values or --from/--to/--step")
    if not vals:
        parser.error("sweep value list is empty")
    lo = {"n": 1, "m": 0, "gamma_r": 1e-300, "gamma_e": 1e-300,
          "eps_s": 0.0, "eps_t": 0.0, "tau": 0.0}[args.param]
    hi = {"eps_s": 1.0, "eps_t": 1.0}.get(args.param, float("inf"))
    for v in vals:
        if not lo <= v <= hi:
            parser.error(f"swept value {v} outside the valid domain of {args.param}")
        if args.param in ("n", "m") and v != int(v):
            parser.error(f"swept value {v} must be an integer for {args.param}")
    return vals


def _sweep_row(args, local: dict) -> dict:
    """One sweep row; failures land in the status column, never abort the sweep."""
    row = dict.fromkeys(SWEEP_COLUMNS)
    row["status"] = "ok"
    try:
        config = _make_scenario(local)
        protocol = _make_protocol(local)
    except ValueError:
        row["status"] = "error"
        return row
    if args.outputs in ("bounds", "both"):
        try:
            report = build_bound_report(config.n, config.m, config.gamma_r,
                                        config.gamma_e, config.eps_s, config.eps_t,
                                        tau=local.get("tau"))
            rd = report.as_dict()
            for k in ("m_max_t1", "m_max_t3", "tau_min", "tau_max", "feasible"):
                row[k] = rd[k]
            if not report.tau_interval.feasible:
                row["status"] = "infeasible"
        except ValueError:
            row["status"] = "error"
    if args.outputs in ("simulation", "both"):
        try:
            est = estimate_outage(config, protocol, local["trials"], local["seed"],
                                  legs=local["legs"], workers=local["workers"])
            for k, val in est.as_dict().items():
                if k in row:
                    row[k] = val
        except InfeasibleConfigError:
            row["status"] = "infeasible"
        except ValueError:
            row["status"] = "error"
    if args.lb_slots and row["status"] in ("ok", "infeasible"):
        row["jain_index"] = load_balance(config, protocol, args.lb_slots,
                                         local["seed"]).jain_index
    return row


def _cmd_sweep(parser, args) -> int:
    need = ("n", "m", "gamma_r", "gamma_e") if args.outputs == "simulation" \
        else ("n", "m", "gamma_r", "gamma_e", "eps_s", "eps_t")
    merged = _resolve_settings(parser, args,
                               required=tuple(k for k in need if k != args.param))
    values = _sweep_values(parser, args)
    rows = []
    for v in values:
        swept = int(v) if args.param in ("n", "m") else v
        local = dict(merged)
        if args.param == "tau":
            local["tau"] = v
            local["tau_policy"] = "manual"
        else:
            local[args.param] = swept
        row = _sweep_row(args, local)
        row["swept_value"] = swept
        rows.append(row)

    echo = {"command": "sweep", "param": args.param, "outputs": args.outputs,
            "config": _config_echo(merged),
            "protocol": {"kind": merged["kind"], "tau_policy": merged["tau_policy"],
                         "tau": merged.get("tau")},
            "trials": merged["trials"], "seed": merged["seed"]}
    if (args.fmt or "csv") == "json":
        _emit(dumps({**echo, "rows": rows}, indent=2), args.out)
    else:
        print(dumps(echo), file=sys.stderr)
        table = [[row[c] for c in SWEEP_COLUMNS] for row in rows]
        if args.out:
            try:
                write_csv(args.out, SWEEP_COLUMNS, table, append=args.append)
            except ValueError as exc:
                parser.error(str(exc))
        else:
            print(csv_line(SWEEP_COLUMNS))
            for r in table:
                print(csv_line(r))
    return EXIT_OK


def _cmd_tolerance(parser, args) -> int:
    merged = _resolve_settings(parser, args, required=("n", "gamma_r", "gamma_e", "eps_s"))
    if merged.get("m") is None:
        merged["m"] = 1  # base m only seeds tau resolution; the search replaces it
    if args.m_cap < 1:
        parser.error(f"--m-cap must be >= 1, got {args.m_cap}")
    config = _scenario(parser, merged)
    protocol = _protocol(parser, merged)
    try:
        tau_resolved = resolve_tau(protocol, config)
        result = tolerance_search(config, protocol, merged["eps_s"], merged["trials"],
                                  args.m_cap, merged["seed"], legs=merged["legs"],
                                  workers=merged["workers"])
    except InfeasibleConfigError as exc:
        print(f"infeasible configuration: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    doc = {"command": "tolerance", "config": _config_echo(merged),
           "protocol": _protocol_echo(protocol, tau_resolved),
           "eps_s": merged["eps_s"], "m_cap": args.m_cap,
           "trials": merged["trials"], "seed": merged["seed"],
           "result": {"m_max": result.m_max, "violated_at_m1": result.violated_at_m1,
                      "probes": [list(p) for p in result.probes]}}
    _emit(dumps(doc, indent=2), args.out)
    return EXIT_OK


def _cmd_validate(parser, args) -> int:
    merged = _resolve_settings(parser, args, required=())
    if getattr(args, "trials", None) is not None:
        trials = args.trials
    else:
        trials = 20_000 if args.quick else merged["trials"]
    mgf_samples = 100_000 if args.quick else 1_000_000
    results = run_oracle_suite(trials=trials, mgf_samples=mgf_samples,
                               seed=merged["seed"],
                               gamma_e_oracle_offset=args.inject_gamma_e_offset)
    _emit("\n".join(r.line() for r in results), args.out)
    return EXIT_OK if all(r.passed for r in results) else EXIT_VALIDATION


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    handler = {"bounds": _cmd_bounds, "simulate": _cmd_simulate, "sweep": _cmd_sweep,
               "tolerance": _cmd_tolerance, "validate": _cmd_validate}[args.command]
    return handler(parser, args)


if __name__ == "__main__":
    sys.exit(main())
