"""Command-line front end: python app/cli.py {cycle,sweep,surface,limits,optimize,verify} ...

Every sub-command accepts --config PATH, a key=value file (dotenv syntax) whose
keys are the long flag names; explicit flags override it.
"""
import argparse
import logging
import sys
from pathlib import Path
from typing import List, Optional

from dotenv import dotenv_values
from pydantic import ValidationError

from config import settings
from errors import ConvergenceError, DomainError, UsageError
from schemas.asymptotics import Order, Regime
from schemas.cycle import AxisRange, CycleConfig, EngineRegime, Medium, SweepAxis, SweepSpec
from schemas.reservoir import Reservoir
from schemas.run import Command, OutputFormat, RunSpec, TableDocument
from services.asymptotics import limit_table, optimize_report
from services.cycle import run_cycle, sweep
from services.export import build_document, report_record, write_table
from services.presets import get_preset
from services.verify import FAULTS, run_verification

logger = logging.getLogger(__name__)

EXIT_OK, EXIT_FAILURE, EXIT_USAGE = 0, 1, 2

DEFAULT_LIMIT_VALUES = {
    Regime.LOW_T: "5,10,20,40,80",
    Regime.HIGH_T: "0.5,0.2,0.1,0.05,0.01",
}


def _float_list(text: str) -> List[float]:
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got '{text}'") from e


def _add_cycle_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--medium", choices=[m.value for m in Medium], default=Medium.TLS.value)
    p.add_argument("--omega1", type=float, default=1.0)
    p.add_argument("--omega2", type=float, default=5.0)
    p.add_argument("--th", type=float, default=2.0, help="hot bath temperature T_h")
    p.add_argument("--tc", type=float, default=1.0, help="cold bath temperature T_c")
    p.add_argument("--r", type=float, default=0.0, help="hot bath squeeze parameter")
    p.add_argument("--phi", type=float, default=0.0, help="hot bath squeeze phase")


def _add_output_flags(p: argparse.ArgumentParser, choices: List[str], default: str) -> None:
    p.add_argument("--format", choices=choices, default=default)
    p.add_argument("--output", default=None, help="write the table here instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="stirling", description="Squeezed-reservoir quantum Stirling engine")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser(Command.CYCLE.value, help="single-cycle report")
    _add_cycle_flags(p)
    _add_output_flags(p, ["text", "csv", "json"], "text")

    p = sub.add_parser(Command.SWEEP.value, help="one-axis sweep table")
    _add_cycle_flags(p)
    p.add_argument("--preset", default=None, help="fig1..fig9")
    p.add_argument("--axis", choices=[a.value for a in SweepAxis if a is not SweepAxis.SURFACE],
                   default=SweepAxis.OMEGA_RATIO.value)
    p.add_argument("--start", type=float, default=1.0)
    p.add_argument("--stop", type=float, default=10.0)
    p.add_argument("--steps", type=int, default=10)
    p.add_argument("--series-axis", choices=[a.value for a in SweepAxis if a is not SweepAxis.SURFACE],
                   default=None)
    p.add_argument("--series", type=_float_list, default=None, help="comma-separated series values")
    _add_output_flags(p, [f.value for f in OutputFormat], OutputFormat.CSV.value)

    p = sub.add_parser(Command.SURFACE.value, help="(omega2/omega1, r) grid")
    _add_cycle_flags(p)
    p.add_argument("--preset", default=None, help="fig5 or fig9")
    p.add_argument("--ratio-start", type=float, default=1.5)
    p.add_argument("--ratio-stop", type=float, default=10.0)
    p.add_argument("--ratio-steps", type=int, default=18)
    p.add_argument("--r-start", type=float, default=0.0)
    p.add_argument("--r-stop", type=float, default=1.5)
    p.add_argument("--r-steps", type=int, default=16)
    _add_output_flags(p, [f.value for f in OutputFormat], OutputFormat.CSV.value)

    p = sub.add_parser(Command.LIMITS.value, help="exact versus asymptotic work")
    _add_cycle_flags(p)
    p.add_argument("--regime", choices=["high", "low"], required=True)
    p.add_argument("--order", choices=[o.value for o in Order], default=Order.SECOND.value)
    p.add_argument("--values", type=_float_list, default=None,
                   help="regime parameters: omega1/T_c for low, omega2/T_h for high")
    _add_output_flags(p, [f.value for f in OutputFormat], OutputFormat.CSV.value)

    p = sub.add_parser(Command.OPTIMIZE.value, help="maximise total work over omega2")
    _add_cycle_flags(p)
    p.add_argument("--lower", type=float, default=None)
    p.add_argument("--upper", type=float, default=None)
    _add_output_flags(p, ["text", "json"], "text")

    p = sub.add_parser(Command.VERIFY.value, help="run the verification suite")
    p.add_argument("--tolerance-scale", type=float, default=1.0)
    p.add_argument("--only", action="append", default=None, help="run only this check (repeatable)")
    p.add_argument("--inject-fault", choices=list(FAULTS), default=None)
    _add_output_flags(p, ["text", "json"], "text")

    for action in sub.choices.values():
        action.add_argument("--config", default=None, help="key=value defaults file")
    return ap


def apply_config_file(parser: argparse.ArgumentParser, argv: List[str]) -> None:
    """Install --config values as defaults of the chosen sub-command."""
    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument("--config", default=None)
    pre.add_argument("command", nargs="?")
    known, _ = pre.parse_known_args(argv)
    if not known.config:
        return
    if not Path(known.config).is_file():
        raise UsageError(f"Config file not found: {known.config}")

    values = {k.strip().lstrip("-").replace("-", "_"): v for k, v in dotenv_values(known.config).items()}
    subparsers = next(a for a in parser._actions if isinstance(a, argparse._SubParsersAction))
    target = subparsers.choices.get(known.command)
    if target is None:
        return
    dests = {a.dest for a in target._actions}
    unknown = sorted(set(values) - dests)
    if unknown:
        raise UsageError(f"Unknown keys in {known.config}: {', '.join(unknown)}")
    # argparse checks choices on the command line only, never on defaults
    for action in target._actions:
        if action.choices is not None and action.dest in values and values[action.dest] not in action.choices:
            raise UsageError(f"Invalid {action.dest} '{values[action.dest]}' in {known.config}. "
                             f"Choose from: {', '.join(map(str, action.choices))}")
    target.set_defaults(**values)


def config_from_args(args: argparse.Namespace) -> CycleConfig:
    return CycleConfig(
        medium=Medium(args.medium),
        omega1=args.omega1,
        omega2=args.omega2,
        hot=Reservoir(temperature=args.th, squeeze_r=args.r, squeeze_phi=args.phi),
        cold=Reservoir.thermal(args.tc),
    )


def _run_spec(args: argparse.Namespace, command: Command, medium: Optional[Medium] = None) -> RunSpec:
    parameters = {k: v for k, v in vars(args).items() if k not in ("command", "format", "output", "preset", "config")}
    fmt = args.format if args.format in (f.value for f in OutputFormat) else OutputFormat.JSON.value
    return RunSpec(command=command, medium=medium, preset=getattr(args, "preset", None),
                   parameters=parameters, format=OutputFormat(fmt), output=args.output)


def _emit(document: TableDocument, output: Optional[str]) -> None:
    text = write_table(document, output)
    if not output:
        sys.stdout.write(text)


def cmd_cycle(args: argparse.Namespace) -> int:
    config = config_from_args(args)
    report = run_cycle(config)
    record = report_record(report)

    if args.format != "text":
        _emit(build_document(_run_spec(args, Command.CYCLE, config.medium), [record]), args.output)
        return EXIT_OK

    lines = [f"{key:>20}: {value.value if hasattr(value, 'value') else value}" for key, value in record.items()]
    perf = report.performance
    if perf.regime is EngineRegime.DEGENERATE:
        lines.append("note: degenerate cycle (omega1 == omega2), no work is exchanged")
    elif perf.regime is EngineRegime.NOT_AN_ENGINE:
        lines.append("note: Q_H <= 0, the cycle does not run as an engine")
    elif perf.surpasses_carnot:
        lines.append("note: surpasses Carnot (eta > eta_C)")
    elif config.hot.is_thermal:
        lines.append(f"note: eta <= eta_C holds ({perf.eta:.12g} <= {perf.eta_carnot:.12g})")
    text = "\n".join(lines) + "\n"
    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="\n") as f:
            f.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _sweep_document(args: argparse.Namespace, command: Command, config: CycleConfig, spec: SweepSpec) -> TableDocument:
    rows = sweep(config, spec)
    meta = _run_spec(args, command, config.medium)
    meta.parameters["sweep"] = spec.model_dump(mode="json")
    return build_document(meta, rows)


def cmd_sweep(args: argparse.Namespace) -> int:
    if args.preset:
        preset = get_preset(args.preset)
        config, spec = preset.config, preset.spec
    else:
        config = config_from_args(args)
        if args.series and not args.series_axis:
            raise UsageError("--series needs --series-axis")
        spec = SweepSpec(
            axis=SweepAxis(args.axis),
            range=AxisRange(start=args.start, stop=args.stop, steps=args.steps),
            series_axis=SweepAxis(args.series_axis) if args.series_axis else None,
            series_values=args.series or [],
        )
    command = Command.SURFACE if spec.axis is SweepAxis.SURFACE else Command.SWEEP
    _emit(_sweep_document(args, command, config, spec), args.output)
    return EXIT_OK


def cmd_surface(args: argparse.Namespace) -> int:
    if args.preset:
        preset = get_preset(args.preset)
        if preset.spec.axis is not SweepAxis.SURFACE:
            raise UsageError(f"Preset {args.preset} is not a surface")
        config, spec = preset.config, preset.spec
    else:
        config = config_from_args(args)
        spec = SweepSpec(
            axis=SweepAxis.SURFACE,
            range=AxisRange(start=args.ratio_start, stop=args.ratio_stop, steps=args.ratio_steps),
            squeeze_range=AxisRange(start=args.r_start, stop=args.r_stop, steps=args.r_steps),
        )
    _emit(_sweep_document(args, Command.SURFACE, config, spec), args.output)
    return EXIT_OK


def cmd_limits(args: argparse.Namespace) -> int:
    config = config_from_args(args)
    regime = Regime.HIGH_T if args.regime == "high" else Regime.LOW_T
    values = args.values if args.values is not None else _float_list(DEFAULT_LIMIT_VALUES[regime])
    if not values:
        raise UsageError("--values must not be empty")
    rows = limit_table(config, regime, values, Order(args.order))
    _emit(build_document(_run_spec(args, Command.LIMITS, config.medium), rows), args.output)
    return EXIT_OK


def cmd_optimize(args: argparse.Namespace) -> int:
    config = config_from_args(args)
    report = optimize_report(config, lower=args.lower, upper=args.upper)
    if args.format == "json":
        text = report.model_dump_json(indent=2) + "\n"
    else:
        lines = [f"{key:>20}: {value}" for key, value in report.model_dump(exclude={"config"}).items()]
        if report.at_boundary:
            lines.append("note: maximum sits on the search boundary")
        text = "\n".join(lines) + "\n"
    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="\n") as f:
            f.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    report = run_verification(args.tolerance_scale, args.only, fault=args.inject_fault)
    if args.format == "json":
        text = report.model_dump_json(indent=2) + "\n"
    else:
        lines = []
        for check in report.checks:
            error = "-" if check.max_error is None else f"{check.max_error:.3e}"
            tolerance = "-" if check.tolerance is None else f"{check.tolerance:.1e}"
            lines.append(f"{'PASS' if check.passed else 'FAIL'}  {check.name:<22} max_error={error:<10} "
                         f"tol={tolerance:<8} {check.seconds:6.2f}s  {check.detail}")
        failed = [c.name for c in report.checks if not c.passed]
        lines.append("all checks passed" if report.passed else f"failed: {', '.join(failed)}")
        text = "\n".join(lines) + "\n"
    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="\n") as f:
            f.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK if report.passed else EXIT_FAILURE


COMMANDS = {
    Command.CYCLE.value: cmd_cycle,
    Command.SWEEP.value: cmd_sweep,
    Command.SURFACE.value: cmd_surface,
    Command.LIMITS.value: cmd_limits,
    Command.OPTIMIZE.value: cmd_optimize,
    Command.VERIFY.value: cmd_verify,
}


def main(argv: Optional[List[str]] = None) -> int:
    logging.basicConfig(level=settings.log_level)
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        apply_config_file(parser, argv)
        args = parser.parse_args(argv)
        return COMMANDS[args.command](args)
    except (UsageError, DomainError) as e:
        logger.error(str(e))
        return EXIT_USAGE
    except ValidationError as e:
        logger.error(f"Invalid parameters: {e.errors()[0]['msg']}")
        return EXIT_USAGE
    except (ConvergenceError, OSError) as e:
        logger.error(str(e))
        return EXIT_FAILURE


if __name__ == "__main__":
    sys.exit(main())
