"""Command-line interface: ``betaroc <command> [options]``.

Exit codes (all commands):

  0  success
  1  input error (unreadable or malformed input, bad flags)
  2  fit failure (a class could not be fitted or did not converge);
     ``analyze`` still writes its report in that case

Data goes to stdout (or ``--output``); diagnostics go to stderr.
"""

import argparse
import json
import sys

from . import __version__
from .analysis import (DEFAULT_ROC_GRID, empirical_roc, theoretical_roc,
                       threshold_metrics)
from .beta import BetaPair, BetaParams
from .errors import BetaRocError, FitError, InputError
from .fitting import FitConfig, fit_mle
from .ingest import DEFAULT_BINS, read_scores, to_csv, to_jsonl
from .reference_fits import COLUMNS, IMPOSTER_ROWS, reference_pair
from .report import build_report, from_json, plot_density, plot_roc, to_json
from .sweep import SYNTHETIC_CLAMP_EPSILON, SweepGrid, generate_dataset, iter_sweep, parse_axis, write_sweep_csv

EXIT_OK, EXIT_INPUT, EXIT_FIT = 0, 1, 2

_EPILOG = "exit codes: 0 success, 1 input error, 2 fit failure"


class _Parser(argparse.ArgumentParser):
    """ArgumentParser that reports usage errors with exit code 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


class _Fail(Exception):
    def __init__(self, message, code):
        super().__init__(message)
        self.code = code


def _floats(text):
    try:
        return [float(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")


def _params(text):
    vals = _floats(text)
    if len(vals) != 2:
        raise argparse.ArgumentTypeError(f"expected ALPHA,BETA, got {text!r}")
    return vals


def _axis(text):
    try:
        return parse_axis(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _write(args, data):
    if isinstance(data, str):
        data = data.encode("utf-8")
    if args.output in (None, "-"):
        sys.stdout.buffer.write(data)
        sys.stdout.flush()
    else:
        with open(args.output, "wb") as fh:
            fh.write(data)


def _load(args):
    try:
        return read_scores(args.input, args.format)
    except OSError as exc:
        raise _Fail(f"cannot read {args.input}: {exc.strerror or exc}", EXIT_INPUT)


def _config(args):
    try:
        return FitConfig(clamp_epsilon=args.epsilon)
    except ValueError as exc:
        raise _Fail(str(exc), EXIT_INPUT)


def _add_input(p, what="labeled score file (CSV or JSONL)"):
    p.add_argument("input", help=what)
    p.add_argument("--format", choices=("csv", "jsonl"), default=None,
                   help="input format (default: guessed from the extension, csv otherwise)")


def _add_output(p, what):
    p.add_argument("-o", "--output", default=None, help=f"{what} (default: stdout)")


def _add_epsilon(p):
    p.add_argument("--epsilon", type=float, default=1e-6,
                   help="clamp scores into [eps, 1-eps] before fitting (default: 1e-6)")


# ---------------------------------------------------------------- commands

def cmd_fit(args):
    scores = _load(args)
    cfg = _config(args)
    out, failed = {}, False
    for label, data in (("client", scores.clients), ("imposter", scores.imposters)):
        try:
            f = fit_mle(data, cfg)
        except FitError as exc:
            out[label] = {"error": str(exc)}
            failed = True
            print(f"betaroc fit: {label}: {exc}", file=sys.stderr)
            continue
        out[label] = {"alpha": f.alpha, "beta": f.beta, "log_likelihood": f.log_likelihood,
                      "converged": f.converged, "iterations": f.iterations,
                      "n_clamped": f.n_clamped}
        failed |= not f.converged
    _write(args, json.dumps(out, sort_keys=True, indent=2) + "\n")
    return EXIT_FIT if failed else EXIT_OK


def cmd_analyze(args):
    scores = _load(args)
    report = build_report(scores, _config(args), thresholds=args.thresholds)
    _write(args, to_json(report))
    if not report.converged:
        errors = [f"{k}: {v['error']}" for k, v in report.fits.items() if "error" in v]
        msg = "; ".join(errors) if errors else "fit did not converge"
        print(f"betaroc analyze: {msg}", file=sys.stderr)
        return EXIT_FIT
    return EXIT_OK


def _fitted_pair(scores, cfg):
    try:
        c = fit_mle(scores.clients, cfg)
        i = fit_mle(scores.imposters, cfg)
    except FitError as exc:
        raise _Fail(str(exc), EXIT_FIT)
    return BetaPair(c.params, i.params)


def cmd_roc(args):
    scores = _load(args)
    rows = []
    if args.kind in ("empirical", "both"):
        r = empirical_roc(scores.clients, scores.imposters)
        rows += [("empirical", f, t) for f, t in zip(r.fpr, r.tpr)]
    if args.kind in ("theoretical", "both"):
        r = theoretical_roc(_fitted_pair(scores, _config(args)), grid=args.grid)
        rows += [("theoretical", f, t) for f, t in zip(r.fpr, r.tpr)]
    lines = ["kind,fpr,tpr"] + [f"{k},{float(f)!r},{float(t)!r}" for k, f, t in rows]
    _write(args, "\n".join(lines) + "\n")
    return EXIT_OK


def cmd_metrics(args):
    scores = _load(args)
    lines = ["threshold,tp,fp,tn,fn,tpr,ppv,f1"]
    for t in args.thresholds:
        m = threshold_metrics(scores.clients, scores.imposters, t)
        k = m.counts
        cells = [repr(m.threshold), k.tp, k.fp, k.tn, k.fn, repr(m.tpr),
                 "" if m.ppv is None else repr(m.ppv), "" if m.f1 is None else repr(m.f1)]
        lines.append(",".join(str(c) for c in cells))
    _write(args, "\n".join(lines) + "\n")
    return EXIT_OK


def cmd_sweep(args):
    grid = SweepGrid(args.alpha1, args.beta1, args.alpha2, args.beta2,
                     seed=args.seed, n_per_cell=args.n_per_cell,
                     clamp_epsilon=args.epsilon)
    rows = iter_sweep(grid, workers=args.workers)
    if args.output in (None, "-"):
        write_sweep_csv(rows, sys.stdout, with_recovery=grid.n_per_cell > 0)
        sys.stdout.flush()
    else:
        with open(args.output, "w", newline="", encoding="utf-8") as fh:
            write_sweep_csv(rows, fh, with_recovery=grid.n_per_cell > 0)
    return EXIT_OK


def cmd_synth(args):
    if args.reference:
        try:
            column, row = args.reference.split(":")
            pair = reference_pair(column, row)
        except (ValueError, KeyError):
            raise _Fail(f"unknown reference {args.reference!r}; expected COLUMN:ROW with "
                        f"COLUMN in {', '.join(COLUMNS)} and ROW in {', '.join(IMPOSTER_ROWS)}",
                        EXIT_INPUT)
    elif args.client and args.imposter:
        pair = BetaPair(BetaParams(*args.client), BetaParams(*args.imposter))
    else:
        raise _Fail("give --reference or both --client and --imposter", EXIT_INPUT)
    data = generate_dataset(pair, args.n_client, args.n_imposter, args.seed)
    _write(args, to_jsonl(data) if args.out_format == "jsonl" else to_csv(data))
    return EXIT_OK


def cmd_plot(args):
    if args.kind not in ("density", "roc"):
        args.parser.print_usage(sys.stderr)
        raise _Fail(f"unknown plot kind {args.kind!r} (choose density or roc)", EXIT_INPUT)
    if args.input.endswith(".json") and args.format is None:
        return _plot_from_report(args)
    scores = _load(args)
    cfg = _config(args)
    if args.kind == "density":
        data = scores.clients if args.cls == "client" else scores.imposters
        try:
            fit = fit_mle(data, cfg).params
        except FitError as exc:
            raise _Fail(f"{args.cls}: {exc}", EXIT_FIT)
        svg = plot_density(data, fit, bins=args.bins, title=f"{args.cls} responses")
    else:
        pair = _fitted_pair(scores, cfg)
        svg = plot_roc(empirical_roc(scores.clients, scores.imposters),
                       theoretical_roc(pair, grid=args.grid))
    _write(args, svg)
    return EXIT_OK


def _plot_from_report(args):
    try:
        with open(args.input, "rb") as fh:
            report = from_json(fh.read())
    except OSError as exc:
        raise _Fail(f"cannot read {args.input}: {exc.strerror or exc}", EXIT_INPUT)
    except (ValueError, TypeError) as exc:
        raise _Fail(f"{args.input}: not an analysis report ({exc})", EXIT_INPUT)
    if args.kind == "density":
        raise _Fail("density plots need the score file, not a report", EXIT_INPUT)
    pair = report.pair()
    if pair is None:
        raise _Fail("report has no fitted pair", EXIT_FIT)
    _write(args, plot_roc(theoretical=theoretical_roc(pair, grid=args.grid)))
    return EXIT_OK


# ------------------------------------------------------------------ parser

def build_parser():
    parser = _Parser(prog="betaroc", description=__doc__.split("\n")[0],
                     epilog=_EPILOG)
    parser.add_argument("--version", action="version", version=f"betaroc {__version__}")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND", parser_class=_Parser)
    sub.required = True

    def command(name, func, help):
        p = sub.add_parser(name, help=help, description=help, epilog=_EPILOG,
                           formatter_class=argparse.ArgumentDefaultsHelpFormatter)
        p.set_defaults(func=func, parser=p)
        return p

    p = command("fit", cmd_fit, "fit client and imposter beta distributions")
    _add_input(p)
    _add_epsilon(p)
    _add_output(p, "JSON output path")

    p = command("analyze", cmd_analyze,
                "full analysis: fits, shapes, extremal ROC behaviour, AUC, KS")
    _add_input(p)
    _add_epsilon(p)
    p.add_argument("--thresholds", type=_floats, default=[],
                   help="comma-separated thresholds for TPR/PPV/F1")
    _add_output(p, "JSON report path")

    p = command("roc", cmd_roc, "emit ROC curve points as CSV")
    _add_input(p)
    _add_epsilon(p)
    p.add_argument("--kind", choices=("empirical", "theoretical", "both"), default="both")
    p.add_argument("--grid", type=int, default=DEFAULT_ROC_GRID,
                   help="uniform thresholds in the theoretical curve")
    _add_output(p, "CSV output path")

    p = command("metrics", cmd_metrics, "TPR, PPV and F1 at given thresholds")
    _add_input(p)
    p.add_argument("--thresholds", type=_floats, required=True,
                   help="comma-separated thresholds")
    _add_output(p, "CSV output path")

    p = command("sweep", cmd_sweep, "shape/extremal atlas over a parameter grid")
    for name in ("alpha1", "beta1", "alpha2", "beta2"):
        p.add_argument(f"--{name}", type=_axis, required=True,
                       help="comma-separated values or start:stop:step (inclusive)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--n-per-cell", type=int, default=0,
                   help="synthetic samples per class for the fit round trip (0 = analytic only)")
    p.add_argument("--workers", type=int, default=1, help="worker processes")
    p.add_argument("--epsilon", type=float, default=SYNTHETIC_CLAMP_EPSILON,
                   help="clamp epsilon for round-trip fits (default: %(default)g)")
    _add_output(p, "CSV output path")

    p = command("synth", cmd_synth, "generate a seeded synthetic score file")
    p.add_argument("--client", type=_params, help="client ALPHA,BETA")
    p.add_argument("--imposter", type=_params, help="imposter ALPHA,BETA")
    p.add_argument("--reference", help="published fit as COLUMN:ROW, e.g. ann-within:imp0")
    p.add_argument("--n-client", type=int, default=1000)
    p.add_argument("--n-imposter", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out-format", choices=("csv", "jsonl"), default="csv")
    _add_output(p, "score file path")

    p = command("plot", cmd_plot, "SVG density (histogram + fit) or ROC figure")
    _add_input(p, "score file, or an analysis report (.json) for kind=roc")
    p.add_argument("--kind", default="density", help="density or roc")
    p.add_argument("--class", dest="cls", choices=("client", "imposter"), default="client",
                   help="class shown by kind=density")
    p.add_argument("--bins", type=int, default=DEFAULT_BINS)
    p.add_argument("--grid", type=int, default=DEFAULT_ROC_GRID)
    _add_epsilon(p)
    _add_output(p, "SVG output path")
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except _Fail as exc:
        print(f"betaroc {args.command}: {exc}", file=sys.stderr)
        return exc.code
    except FitError as exc:
        print(f"betaroc {args.command}: {exc}", file=sys.stderr)
        return EXIT_FIT
    except (InputError, BetaRocError, ValueError) as exc:
        print(f"betaroc {args.command}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"betaroc {args.command}: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
