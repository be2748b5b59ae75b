"""Command-line front end: sweep, extremum and triangle subcommands.

Exit codes: 0 success, 2 configuration error, 3 I/O error.
"""

import argparse
import contextlib
import json
import sys
from importlib import resources

from . import measures, sweep
from .sweep import ConfigError, SweepConfig

PRESETS = {
    "electron": "electron_linear.json",
    "muon": "muon_log.json",
}


def load_preset(name):
    ref = resources.files("trinu.presets") / PRESETS[name]
    return SweepConfig.from_dict(json.loads(ref.read_text()))


def _add_sweep_flags(parser, with_grid=True):
    parser.add_argument("--initial", choices=sweep.INITIALS, default=None,
                        help="initial flavor (default: e)")
    parser.add_argument("--unit", choices=sweep.UNITS, default=None,
                        help="unit of the L/E values (default: km/MeV)")
    parser.add_argument("--path", choices=sweep.PATHS, default=None,
                        help="evaluation route (default: closed-form)")
    parser.add_argument("--params", metavar="FILE", default=None,
                        help="JSON file overriding the physics parameters")
    if with_grid:
        parser.add_argument("--le-min", type=float, default=None)
        parser.add_argument("--le-max", type=float, default=None)
        parser.add_argument("--points", type=int, default=None)
        parser.add_argument("--scale", choices=sweep.SCALES, default=None)
        parser.add_argument("--workers", type=int, default=None,
                            help="worker processes for the generic route")
    parser.add_argument("--output", metavar="FILE", default=None,
                        help="output file (default: stdout)")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="trinu",
        description="Tripartite entanglement measures along three-flavor "
                    "neutrino oscillations.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_sweep = sub.add_parser("sweep", help="run an L/E sweep and emit CSV")
    p_sweep.add_argument("--config", metavar="FILE",
                         help="JSON SweepConfig to start from")
    p_sweep.add_argument("--preset", choices=sorted(PRESETS),
                         help="shipped sweep preset to start from")
    p_sweep.add_argument("--slopes", metavar="FILE",
                         help="also write finite-difference slopes of the "
                              "measures to FILE")
    _add_sweep_flags(p_sweep)

    p_ext = sub.add_parser("extremum", help="locate an extremum of one measure")
    p_ext.add_argument("--measure", choices=measures.MEASURE_NAMES, required=True)
    p_ext.add_argument("--kind", choices=("max", "min"), required=True)
    p_ext.add_argument("--window", type=float, nargs=2, metavar=("LO", "HI"),
                       required=True, help="search window, in --unit")
    _add_sweep_flags(p_ext)

    p_tri = sub.add_parser("triangle", help="print a concurrence-triangle report")
    p_tri.add_argument("--le", type=float, required=True,
                       help="L/E value, in --unit")
    p_tri.add_argument("--json", action="store_true", dest="as_json",
                       help="emit a JSON record instead of the text block")
    _add_sweep_flags(p_tri, with_grid=False)

    return parser


def _config_from_args(args, with_grid=True):
    if getattr(args, "config", None) and getattr(args, "preset", None):
        raise ConfigError("config", "--config and --preset are mutually exclusive")
    if getattr(args, "config", None):
        config = SweepConfig.from_json(args.config)
    elif getattr(args, "preset", None):
        config = load_preset(args.preset)
    else:
        config = SweepConfig()
    overrides = {
        "initial": args.initial,
        "unit": args.unit,
        "path": args.path,
        "params_file": args.params,
        "output": args.output,
    }
    if with_grid:
        overrides.update({
            "le_min": getattr(args, "le_min", None),
            "le_max": getattr(args, "le_max", None),
            "points": getattr(args, "points", None),
            "scale": getattr(args, "scale", None),
            "workers": getattr(args, "workers", None),
        })
    for name, value in overrides.items():
        if value is not None:
            setattr(config, name, value)
    return config.validate()


@contextlib.contextmanager
def _open_output(path):
    if path is None:
        yield sys.stdout
    else:
        with open(path, "w", newline="") as fh:
            yield fh


def _cmd_sweep(args):
    config = _config_from_args(args)
    result = sweep.run_sweep(config)
    with _open_output(config.output) as fh:
        sweep.write_csv(result, fh)
    if args.slopes:
        with open(args.slopes, "w", newline="") as fh:
            sweep.write_slopes(result, fh)
    for line in sweep.summary_lines(result):
        print(line, file=sys.stderr)
    return 0


def _cmd_extremum(args):
    config = _config_from_args(args)
    record = sweep.find_extremum(config, args.measure, args.kind,
                                 tuple(args.window))
    payload = {
        "kind": record.kind,
        "measure": record.measure,
        "le_km_per_GeV": record.le,
        "value": record.value,
        "bracket": list(record.bracket),
        "boundary": record.boundary,
    }
    with _open_output(config.output) as fh:
        json.dump(payload, fh, indent=2)
        fh.write("\n")
    return 0


def _cmd_triangle(args):
    config = _config_from_args(args, with_grid=False)
    params = config.load_params()
    le = args.le * config.unit_factor()
    record = sweep.triangle_record(params, config.initial, le)
    with _open_output(config.output) as fh:
        if args.as_json:
            json.dump(record, fh, indent=2)
            fh.write("\n")
        else:
            fh.write(sweep.triangle_text(record) + "\n")
    return 0


COMMANDS = {"sweep": _cmd_sweep, "extremum": _cmd_extremum, "triangle": _cmd_triangle}


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except (ConfigError, ValueError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
