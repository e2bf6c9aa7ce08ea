"""Command-line entry point.

Exit codes: 0 success, 1 validation failure, 2 parse or I/O error.
"""

import argparse
import sys

import numpy as np

from . import dataset as dsmod
from . import robot, sweeps
from .errors import ParseError, ValidationError
from .output import emit_csv


def _onoff(s):
    if s not in ("on", "off"):
        raise argparse.ArgumentTypeError("expected 'on' or 'off'")
    return s == "on"


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--dataset", default="ifw", help="built-in name or dataset file (default: ifw)")
    common.add_argument("--out", default="-", help="CSV output path (default: stdout)")
    common.add_argument("--tool-compliance", type=_onoff, default=True, metavar="{on,off}",
                        help="attach the tool compliance to leg 1 (default: on)")
    common.add_argument("--elements", type=int, default=20, help="rigid elements per leg (modal)")
    common.add_argument("--workers", type=int, default=None, help="worker threads")

    p = argparse.ArgumentParser(prog="biglide", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    for name, hlp in (("stiffness-map", "deflections under 1000 N loads across the workspace"),
                      ("frequency-map", "first natural frequencies across the workspace")):
        s = sub.add_parser(name, parents=[common], help=hlp)
        s.add_argument("--model", choices=("simplified", "refined"), default="simplified")
        s.add_argument("--grid", type=int, default=41, help="grid points (default: 41)")

    s = sub.add_parser("alpha-sweep", parents=[common], help="leg-length scaling study")
    s.add_argument("--model", choices=("simplified", "refined", "all"), default="all")
    s.add_argument("--alpha-min", type=float, default=0.7)
    s.add_argument("--alpha-max", type=float, default=1.3)
    s.add_argument("--alpha-step", type=float, default=0.1)
    s.add_argument("--trends", action="store_true", help="print trend verdicts to stderr")

    s = sub.add_parser("validate", parents=[common], help="check dataset invariants")
    s = sub.add_parser("show-dataset", parents=[common], help="print the dataset file")
    return p


def alpha_grid(lo, hi, step):
    if step <= 0 or hi < lo:
        raise ValueError("alpha grid needs alpha-min <= alpha-max and a positive step")
    n = int(np.floor((hi - lo) / step + 1e-9)) + 1
    return tuple(float(np.round(lo + i * step, 12)) for i in range(n))


def run(args):
    ds = dsmod.load_dataset(args.dataset, validate=args.command != "validate")
    opts = robot.ModelOptions(tool_compliance=args.tool_compliance, n_elements=args.elements)

    if args.command == "validate":
        print(ds.report())
        return 0 if not ds.check() else 1
    if args.command == "show-dataset":
        text = dsmod.dumps(ds)
        if args.out == "-":
            sys.stdout.write(text)
        else:
            dsmod.save_dataset(ds, args.out)
        return 0

    if args.command == "stiffness-map":
        recs = sweeps.stiffness_map(ds, args.model, args.grid, options=opts, workers=args.workers)
    elif args.command == "frequency-map":
        recs = sweeps.frequency_map(ds, args.model, args.grid, options=opts, workers=args.workers)
    else:
        models = {"simplified": (sweeps.SIMPLIFIED_STIFFNESS, sweeps.SIMPLIFIED_MODAL),
                  "refined": (sweeps.REFINED_STIFFNESS, sweeps.REFINED_MODAL),
                  "all": sweeps.MODELS}[args.model]
        alphas = alpha_grid(args.alpha_min, args.alpha_max, args.alpha_step)
        recs = sweeps.alpha_sweep(ds, alphas, models=models, options=opts, workers=args.workers)
        if args.trends:
            for (m, k, s), v in sorted(sweeps.trend_report(recs).items()):
                print(f"{m:20s} {k:30s} {s:7s} {v}", file=sys.stderr)
    text = emit_csv(recs, args.out)
    if args.out == "-":
        sys.stdout.write(text)
    return 0


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return run(args)
    except ValidationError as exc:
        print(f"validation failed: {exc}", file=sys.stderr)
        return 1
    except (ParseError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
