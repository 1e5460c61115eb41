"""Command-line front end.

Subcommands: ``report`` (single-point criteria as JSON), ``sweep``
(gain x resource grid to CSV), ``mc`` (Monte Carlo verification table),
``bell`` and ``squeeze`` (prediction rows over a v_cvf grid).

Configuration comes from an optional JSON file (``--config``); command-line
flags always override file values.  All output is deterministic: floats are
serialized with their shortest round-trip representation and the mc command
is fully determined by config plus seed.  Exit codes: 0 success / all
checks passed, 1 usage or configuration error, 2 verification failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Any

from .criteria import classical_bound_check, classify
from .montecarlo import sample_criteria
from .predictions import BellParams, bell_s, symmetric_output_variance
from .quadrature import InputState, in_out_covariance, output_variance
from .teleporter import (
    Family,
    Teleporter,
    make_classical_measure_resend,
    make_epr,
    make_single_mode,
)

MAX_CLI_GAIN = 2.0


class ConfigError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # Route argparse usage errors through the exit-code-1 path.
    def error(self, message: str):  # noqa: D102
        raise ConfigError(message)


def _build_parser() -> _Parser:
    parser = _Parser(prog="cvteleport", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON config file")
    common.add_argument("--family", choices=[f.value for f in Family if f is not Family.CUSTOM])
    common.add_argument("--lambda", dest="lam", type=float, help="teleporter gain, in [-2, 2]")
    common.add_argument("--resource", type=float, help="V_ent or V_s, in (0, 1]")
    common.add_argument("--vin-plus", type=float, help="input amplitude-quadrature variance")
    common.add_argument("--vin-minus", type=float, help="input phase-quadrature variance")
    common.add_argument("--shots", type=int, help="Monte Carlo shots")
    common.add_argument("--seed", type=int, help="Monte Carlo seed")
    common.add_argument("--out", help="output file path")

    sub.add_parser("report", parents=[common], help="criteria report for one teleporter")
    sub.add_parser("sweep", parents=[common], help="criteria over a gain x resource grid")
    mc = sub.add_parser("mc", parents=[common], help="Monte Carlo verification table")
    mc.add_argument("--workers", type=int, default=1, help=argparse.SUPPRESS)
    mc.add_argument("--corrupt-analytic", action="store_true", help=argparse.SUPPRESS)
    sub.add_parser("bell", parents=[common], help="Bell correlation over a v_cvf grid")
    sub.add_parser("squeeze", parents=[common], help="output squeezing over a v_cvf grid")
    return parser


def _load_config(path: str | None) -> dict[str, Any]:
    if path is None:
        return {}
    try:
        with open(path, encoding="utf-8") as handle:
            config = json.load(handle)
    except OSError as exc:
        raise ConfigError(f"cannot read config file: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config file is not valid JSON: {exc}") from exc
    if not isinstance(config, dict):
        raise ConfigError("config file must contain a JSON object")
    return config


def _merge(config: dict[str, Any], args: argparse.Namespace) -> dict[str, Any]:
    """Overlay command-line flags on the config file contents."""
    merged = dict(config)
    merged.setdefault("input", {})
    merged.setdefault("mc", {})
    if args.family is not None:
        merged["family"] = args.family
    if args.lam is not None:
        merged["lambda"] = args.lam
    if args.resource is not None:
        merged["resource"] = args.resource
    if args.vin_plus is not None:
        merged["input"] = {**merged["input"], "v_plus": args.vin_plus}
    if args.vin_minus is not None:
        merged["input"] = {**merged["input"], "v_minus": args.vin_minus}
    if args.shots is not None:
        merged["mc"] = {**merged["mc"], "shots": args.shots}
    if args.seed is not None:
        merged["mc"] = {**merged["mc"], "seed": args.seed}
    if args.out is not None:
        merged["out"] = args.out
    return merged


def _require(config: dict[str, Any], field: str) -> Any:
    node: Any = config
    for part in field.split("."):
        if not isinstance(node, dict) or part not in node:
            raise ConfigError(f"missing required field: {field}")
        node = node[part]
    return node


def _check_gain(gain: float) -> float:
    if not -MAX_CLI_GAIN <= gain <= MAX_CLI_GAIN:
        raise ConfigError(f"lambda must lie in [-2, 2], got {gain}")
    return float(gain)


def _input_state(config: dict[str, Any]) -> InputState:
    section = config.get("input", {})
    try:
        return InputState(
            v_plus=float(section.get("v_plus", 1.0)),
            v_minus=float(section.get("v_minus", 1.0)),
            s_plus=float(section.get("s_plus", 0.0)),
            s_minus=float(section.get("s_minus", 0.0)),
        )
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc


def _teleporter(family: str, gain: float, resource: float | None) -> Teleporter:
    try:
        if family == Family.EPR.value:
            if resource is None:
                raise ConfigError("missing required field: resource")
            return make_epr(gain, resource)
        if family == Family.SINGLE_MODE.value:
            if resource is None:
                raise ConfigError("missing required field: resource")
            return make_single_mode(gain, resource)
        if family == Family.CLASSICAL.value:
            return make_classical_measure_resend(gain)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    raise ConfigError(f"unknown family: {family}")


def _grid(section: dict[str, Any], field: str) -> list[float]:
    lo = float(_require(section, "min"))
    hi = float(_require(section, "max"))
    steps = int(_require(section, "steps"))
    if steps < 1:
        raise ConfigError(f"{field}.steps must be >= 1, got {steps}")
    if lo > hi:
        raise ConfigError(f"{field}: min must not exceed max")
    if steps == 1:
        return [lo]
    # Endpoints land exactly on min and max.
    return [lo + i * (hi - lo) / (steps - 1) for i in range(steps - 1)] + [hi]


def _fmt(value: float) -> str:
    return repr(float(value))


def _emit(text: str, out_path: str | None) -> None:
    if out_path is None:
        sys.stdout.write(text)
        return
    try:
        with open(out_path, "w", encoding="utf-8", newline="\n") as handle:
            handle.write(text)
    except OSError as exc:
        raise ConfigError(f"cannot write output file: {exc}") from exc


def _report_payload(config: dict[str, Any]) -> dict[str, Any]:
    family = str(_require(config, "family"))
    gain = _check_gain(float(_require(config, "lambda")))
    resource = config.get("resource")
    resource = None if resource is None else float(resource)
    teleporter = _teleporter(family, gain, resource)
    state = _input_state(config)
    report = classify(teleporter, state)
    try:
        bound = classical_bound_check(teleporter)
        bound_payload: dict[str, Any] | None = {
            "product": bound.product,
            "satisfied": bound.satisfied,
        }
    except ValueError:
        bound_payload = None  # zero gain: bound undefined
    return {
        "family": family,
        "lambda": gain,
        "resource": resource,
        "input": {"v_plus": state.v_plus, "v_minus": state.v_minus},
        "criteria": {
            "ts_plus": report.ts_plus,
            "ts_minus": report.ts_minus,
            "t_t": report.t_t,
            "c_plus": report.c_plus,
            "c_minus": report.c_minus,
            "vcv_plus": report.vcv_plus,
            "vcv_minus": report.vcv_minus,
            "v_t": report.v_t,
            "c_f": report.c_f,
            "v_cvf": report.v_cvf,
            "region": report.region.value,
            "both_violated": report.both_violated,
            "input_minimum_uncertainty": report.input_minimum_uncertainty,
        },
        "classical_bound": bound_payload,
    }


def _cmd_report(config: dict[str, Any], args: argparse.Namespace) -> int:
    payload = _report_payload(config)
    _emit(json.dumps(payload, indent=2) + "\n", config.get("out"))
    return 0


SWEEP_HEADER = "lambda,resource,ts_plus,ts_minus,t_t,vcv_plus,vcv_minus,v_t,c_f,v_cvf,region"


def _cmd_sweep(config: dict[str, Any], args: argparse.Namespace) -> int:
    family = str(_require(config, "family"))
    out_path = str(_require(config, "out"))
    sweep = _require(config, "sweep")
    lambda_grid = [_check_gain(g) for g in _grid(_require(sweep, "lambda"), "sweep.lambda")]
    if family == Family.CLASSICAL.value:
        # No resource parameter; record the equivalent no-entanglement level.
        resource_grid = _grid(sweep.get("resource", {"min": 1.0, "max": 1.0, "steps": 1}), "sweep.resource")
    else:
        resource_grid = _grid(_require(sweep, "resource"), "sweep.resource")
    state = _input_state(config)

    lines = [SWEEP_HEADER]
    for gain in lambda_grid:
        for resource in resource_grid:
            teleporter = _teleporter(family, gain, resource if family != Family.CLASSICAL.value else None)
            report = classify(teleporter, state)
            lines.append(
                ",".join(
                    [
                        _fmt(gain),
                        _fmt(resource),
                        _fmt(report.ts_plus),
                        _fmt(report.ts_minus),
                        _fmt(report.t_t),
                        _fmt(report.vcv_plus),
                        _fmt(report.vcv_minus),
                        _fmt(report.v_t),
                        _fmt(report.c_f),
                        _fmt(report.v_cvf),
                        report.region.value,
                    ]
                )
            )
    _emit("\n".join(lines) + "\n", out_path)
    return 0


MC_HEADER = "quantity,analytic,estimate,std_error,z_score,status"


def _analytic_quantities(teleporter: Teleporter, state: InputState) -> dict[str, float]:
    report = classify(teleporter, state)
    return {
        "ts_plus": report.ts_plus,
        "ts_minus": report.ts_minus,
        "t_t": report.t_t,
        "vcv_plus": report.vcv_plus,
        "vcv_minus": report.vcv_minus,
        "v_t": report.v_t,
        "c_f": report.c_f,
        "v_cvf": report.v_cvf,
        "v_out_plus": output_variance(teleporter.plus, state.v_plus),
        "v_out_minus": output_variance(teleporter.minus, state.v_minus),
        "cov_plus": in_out_covariance(teleporter.plus, state.v_plus),
        "cov_minus": in_out_covariance(teleporter.minus, state.v_minus),
    }


def _cmd_mc(config: dict[str, Any], args: argparse.Namespace) -> int:
    family = str(_require(config, "family"))
    gain = _check_gain(float(_require(config, "lambda")))
    resource = config.get("resource")
    resource = None if resource is None else float(resource)
    teleporter = _teleporter(family, gain, resource)
    state = _input_state(config)
    mc = config.get("mc", {})
    shots = int(mc.get("shots", 100_000))
    seed = int(mc.get("seed", 0))
    workers = int(getattr(args, "workers", 1) or mc.get("workers", 1))

    analytic = _analytic_quantities(teleporter, state)
    if getattr(args, "corrupt_analytic", False):
        analytic["ts_plus"] += 0.1  # self-check hook: must trip the 5-sigma gate
    try:
        stats = sample_criteria(teleporter, state, shots, seed, workers=workers)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc

    lines = [MC_HEADER]
    all_pass = True
    for name, estimate in stats.as_dict().items():
        diff = abs(analytic[name] - estimate.value)
        if diff == 0.0:
            z = 0.0
        elif estimate.std_error == 0.0:
            z = float("inf")
        else:
            z = diff / estimate.std_error
        ok = diff <= 5.0 * estimate.std_error
        all_pass = all_pass and ok
        lines.append(
            ",".join(
                [
                    name,
                    _fmt(analytic[name]),
                    _fmt(estimate.value),
                    _fmt(estimate.std_error),
                    _fmt(z),
                    "PASS" if ok else "FAIL",
                ]
            )
        )
    text = "\n".join(lines) + "\n"
    sys.stdout.write(text)
    if config.get("out"):
        _emit(text, config["out"])
    n_pass = sum(1 for line in lines[1:] if line.endswith(",PASS"))
    print(f"mc verification: {n_pass}/{len(lines) - 1} PASS", file=sys.stderr)
    return 0 if all_pass else 2


BELL_HEADER = "v_cvf,lambda,s_i,s"


def _cmd_bell(config: dict[str, Any], args: argparse.Namespace) -> int:
    gain = _check_gain(float(_require(config, "lambda")))
    section = config.get("bell", {})
    s_i = float(section.get("s_i", 1.5))
    grid = _grid(section.get("v_cvf", {"min": 0.1, "max": 2.0, "steps": 20}), "bell.v_cvf")
    lines = [BELL_HEADER]
    for v_cvf in grid:
        try:
            s_value = _fmt(bell_s(BellParams(s_i=s_i, gain=gain, v_cvf=v_cvf)))
        except ValueError:
            s_value = "error"  # degenerate denominator marker
        lines.append(",".join([_fmt(v_cvf), _fmt(gain), _fmt(s_i), s_value]))
    _emit("\n".join(lines) + "\n", config.get("out"))
    return 0


SQUEEZE_HEADER = "v_cvf,lambda,v_in_plus,v_out_plus,squeezed"


def _cmd_squeeze(config: dict[str, Any], args: argparse.Namespace) -> int:
    gain = _check_gain(float(_require(config, "lambda")))
    state = _input_state(config)
    section = config.get("squeeze", {})
    grid = _grid(section.get("v_cvf", {"min": 0.1, "max": 2.0, "steps": 20}), "squeeze.v_cvf")
    lines = [SQUEEZE_HEADER]
    for v_cvf in grid:
        v_out = symmetric_output_variance(v_cvf, gain, state.v_plus)
        squeezed = "true" if v_out < 1.0 else "false"
        lines.append(
            ",".join([_fmt(v_cvf), _fmt(gain), _fmt(state.v_plus), _fmt(v_out), squeezed])
        )
    _emit("\n".join(lines) + "\n", config.get("out"))
    return 0


_COMMANDS = {
    "report": _cmd_report,
    "sweep": _cmd_sweep,
    "mc": _cmd_mc,
    "bell": _cmd_bell,
    "squeeze": _cmd_squeeze,
}


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        config = _merge(_load_config(args.config), args)
        return _COMMANDS[args.command](config, args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
