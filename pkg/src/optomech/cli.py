"""
Command-line front end: ``optomech point|sweep|validate``.

Configuration is a flat ``key = value`` file (``#`` starts a comment); every
key can also be given as ``--key value``, which overrides the file. Sweep
axes are written ``axis1 = name:start:stop:count``.

Exit codes: 0 ok, 1 validation failure, 2 config error, 3 numerical error.
"""

import argparse
import sys
from dataclasses import dataclass, field

from .entanglement import CONVENTIONS
from .errors import InvalidParam, NumericalError
from .model import PhysicalParams, validate
from .output import write_csv, write_svg, sweep_to_csv
from .sweep import SWEEPABLE, AxisSpec, evaluate_point, sweep
from .validation import run_checks

EXIT_OK, EXIT_VALIDATION, EXIT_CONFIG, EXIT_NUMERICAL = 0, 1, 2, 3

REQUIRED = ("kappa", "gamma_m", "g", "lambda_hop", "drive_E")
OPTIONAL = ("opa_gain", "opa_phase", "n_a", "n_m")
DETUNING = ("delta_eff", "delta0")
RUN_KEYS = ("axis1", "axis2", "out", "svg", "convention", "threads")
KNOWN = REQUIRED + OPTIONAL + DETUNING + RUN_KEYS


class ConfigError(Exception):
    pass


@dataclass
class RunConfig:
    params: PhysicalParams
    axes: list = field(default_factory=list)
    out: str | None = None
    svg: str | None = None
    convention: str = "ln2eta"
    threads: int = 1


def parse_config_text(text, source="<config>"):
    """Flat ``key = value`` lines into a dict of strings."""
    entries = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{source}:{lineno}: expected 'key = value', got {raw.strip()!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        if not key:
            raise ConfigError(f"{source}:{lineno}: missing key")
        if key in entries:
            raise ConfigError(f"{source}:{lineno}: duplicate key {key!r}")
        entries[key] = value
    return entries


def _float(key, value):
    try:
        return float(value)
    except (TypeError, ValueError):
        raise ConfigError(f"{key}: expected a number, got {value!r}") from None


def parse_axis(key, value):
    parts = value.split(":")
    if len(parts) != 4:
        raise ConfigError(f"{key}: expected name:start:stop:count, got {value!r}")
    name, start, stop, count = parts
    name = name.strip()
    if name not in SWEEPABLE:
        raise ConfigError(f"{key}: unknown sweep parameter {name!r} (choose from {', '.join(SWEEPABLE)})")
    try:
        n = int(count)
    except ValueError:
        raise ConfigError(f"{key}: count must be an integer, got {count!r}") from None
    try:
        return AxisSpec(name, _float(key, start), _float(key, stop), n)
    except InvalidParam as exc:
        raise ConfigError(f"{key}: {exc}") from None


def build_config(entries) -> RunConfig:
    """Turn raw key/value strings into a validated :class:`RunConfig`."""
    unknown = sorted(set(entries) - set(KNOWN))
    if unknown:
        raise ConfigError(f"unknown key(s): {', '.join(unknown)}")
    missing = [k for k in REQUIRED if k not in entries]
    if missing:
        raise ConfigError(f"missing required key(s): {', '.join(missing)}")
    given = [k for k in DETUNING if k in entries]
    if len(given) != 1:
        raise ConfigError("exactly one of delta_eff / delta0 must be given"
                          + (f" (got {', '.join(given)})" if given else ""))

    values = {k: _float(k, entries[k]) for k in REQUIRED + OPTIONAL + DETUNING if k in entries}
    try:
        params = validate(PhysicalParams(**values))
    except InvalidParam as exc:
        raise ConfigError(f"{exc.name}: {exc}") from None

    axes = [parse_axis(k, entries[k]) for k in ("axis1", "axis2") if k in entries]
    if "axis2" in entries and "axis1" not in entries:
        raise ConfigError("axis2 given without axis1")
    if len(axes) == 2 and axes[0].param_name == axes[1].param_name:
        raise ConfigError("axis1 and axis2 must sweep different parameters")

    convention = entries.get("convention", "ln2eta")
    if convention not in CONVENTIONS:
        raise ConfigError(f"convention: expected one of {', '.join(CONVENTIONS)}, got {convention!r}")
    threads = entries.get("threads", "1")
    try:
        threads = int(threads)
        if threads < 1:
            raise ValueError
    except ValueError:
        raise ConfigError(f"threads: expected a positive integer, got {threads!r}") from None
    return RunConfig(params=params, axes=axes, out=entries.get("out"), svg=entries.get("svg"),
                     convention=convention, threads=threads)


def _overrides(tokens):
    """``--key value`` / ``--key=value`` pairs left over by argparse."""
    out = {}
    it = iter(tokens)
    for tok in it:
        if not tok.startswith("--"):
            raise ConfigError(f"unexpected argument {tok!r}")
        key = tok[2:]
        if "=" in key:
            key, value = key.split("=", 1)
        else:
            try:
                value = next(it)
            except StopIteration:
                raise ConfigError(f"--{key}: missing value") from None
        out[key.replace("-", "_")] = value
    return out


def _fmt(x):
    return "" if x is None else format(x, ".12g")


def cmd_point(cfg: RunConfig, out=None) -> int:
    out = out or sys.stdout
    rec = evaluate_point(cfg.params, cfg.convention)
    print(f"stable={'true' if rec.stable else 'false'}", file=out)
    print(f"margin={_fmt(rec.margin)}", file=out)
    print(f"eta_minus={_fmt(rec.eta_minus)}", file=out)
    print(f"e_n={_fmt(rec.e_n)}", file=out)
    print(f"a_s_abs={_fmt(rec.a_s_abs)}", file=out)
    return EXIT_OK


def cmd_sweep(cfg: RunConfig, out=None) -> int:
    out = out or sys.stdout
    if not cfg.axes:
        raise ConfigError("sweep needs axis1 (name:start:stop:count)")
    result = sweep(cfg.params, cfg.axes, workers=cfg.threads, convention=cfg.convention)
    if cfg.out:
        write_csv(result, cfg.out)
    else:
        out.write(sweep_to_csv(result))
    if cfg.svg:
        write_svg(result, cfg.svg)
    return EXIT_OK


def cmd_validate(cfg: RunConfig, out=None) -> int:
    out = out or sys.stdout
    checks = run_checks(cfg.params)
    for c in checks:
        print(f"{c.status.upper():4s} {c.name}: {c.detail}", file=out)
    return EXIT_OK if all(c.ok for c in checks) else EXIT_VALIDATION


COMMANDS = {"point": cmd_point, "sweep": cmd_sweep, "validate": cmd_validate}


def make_parser():
    parser = argparse.ArgumentParser(
        prog="optomech",
        description="Steady-state mirror-mirror entanglement in coupled optomechanical cavities.",
        epilog="Any configuration key may also be passed as --key value.",
    )
    parser.add_argument("command", choices=sorted(COMMANDS))
    parser.add_argument("--config", help="flat key = value configuration file")
    parser.add_argument("--out", help="CSV output path (sweep)")
    parser.add_argument("--svg", help="SVG heatmap output path (sweep)")
    parser.add_argument("--convention", choices=CONVENTIONS)
    parser.add_argument("--threads", help="worker processes for sweeps")
    return parser


def main(argv=None) -> int:
    parser = make_parser()
    args, rest = parser.parse_known_args(argv)
    try:
        entries = {}
        if args.config:
            try:
                with open(args.config) as fh:
                    entries = parse_config_text(fh.read(), args.config)
            except OSError as exc:
                raise ConfigError(f"cannot read config: {exc}") from None
        entries.update(_overrides(rest))
        for key in ("out", "svg", "convention", "threads"):
            if getattr(args, key) is not None:
                entries[key] = getattr(args, key)
        cfg = build_config(entries)
        return COMMANDS[args.command](cfg)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except NumericalError as exc:
        print(f"numerical error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except OSError as exc:
        print(f"config error: cannot write output: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
