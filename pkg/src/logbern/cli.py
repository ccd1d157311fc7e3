"""Batch command-line front end.

Exit codes: 0 success, 1 verification failed, 2 configuration error,
3 numeric failure, 4 data error.
"""
import argparse
import json
import os
import sys

import numpy as np

from . import core, denoise, functions, operators, signal_io, verify
from .errors import DomainError, InputError, LogBernError, ParameterError
from .grid import uniform_grid
from .warp import check_mu

EXIT_OK, EXIT_FAILED, EXIT_CONFIG, EXIT_NUMERIC, EXIT_DATA = 0, 1, 2, 3, 4


class ConfigError(Exception):
    pass


class NumericError(Exception):
    pass


def _n_list(text):
    try:
        vals = [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad integer list {text!r}") from None
    if not vals or any(v < 1 for v in vals):
        raise argparse.ArgumentTypeError("n-list needs positive integers")
    return vals


def _add_common(p, need_n=True):
    p.add_argument("--mu", type=float, default=1.0, help="shift parameter (> 0)")
    if need_n:
        p.add_argument("--n", type=int, default=10, help="operator degree")
    p.add_argument("--grid", type=int, default=1001, help="evaluation grid points (>= 2)")
    p.add_argument("--out", default=None, help="output path (default: stdout)")


def build_parser():
    parser = argparse.ArgumentParser(prog="logbern", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("approximate", help="apply an operator on a grid and write CSV")
    _add_common(p)
    p.add_argument("--fn", default=None, help=f"built-in function: {', '.join(functions.BUILTIN_NAMES)}")
    p.add_argument("--in", dest="input_path", default=None, help="signal file with node values")
    p.add_argument("--family", default="logarithmic", choices=["logarithmic", "bernstein", "exponential"])

    p = sub.add_parser("denoise", help="remove multiplicative noise from samples")
    _add_common(p)
    p.add_argument("--fn", default=None, help="truth function (synthesises samples when --in is absent)")
    p.add_argument("--in", dest="input_path", default=None, help="signal file with samples y_k")
    p.add_argument("--paper-example", action="store_true", help="run the six reference cases")

    p = sub.add_parser("verify", help="run an invariant suite and emit JSON")
    _add_common(p, need_n=False)
    p.add_argument("--suite", required=True, help=f"one of {', '.join(verify.SUITES)}")
    p.add_argument("--fn", default=None)
    p.add_argument("--n-list", type=_n_list, default=None, help="unused by most suites; recorded in the report")

    p = sub.add_parser("moments", help="algebraic moments T_{n,s} and the first absolute moment")
    _add_common(p)
    p.add_argument("--order", type=int, default=4, help="highest moment order s")

    p = sub.add_parser("paper-example", help="the six reference denoising cases")
    p.add_argument("--grid", type=int, default=1001)
    p.add_argument("--out", default=None, help="directory for per-case CSV series")
    return parser


def _validate(args):
    try:
        check_mu(args.mu) if hasattr(args, "mu") else None
    except ParameterError as exc:
        raise ConfigError(str(exc)) from None
    if getattr(args, "n", 1) < 1:
        raise ConfigError("--n must be >= 1")
    if args.grid < 2:
        raise ConfigError("--grid must be >= 2")


def _builtin(name, mu):
    try:
        return functions.builtin(name, mu)
    except InputError as exc:
        raise ConfigError(str(exc)) from None


def _finite(*arrays):
    for a in arrays:
        if not np.all(np.isfinite(a)):
            raise NumericError("non-finite values in the result")


def cmd_approximate(args):
    mu, n = args.mu, args.n
    x = uniform_grid(args.grid)
    if args.input_path:
        values, n, file_mu, _ = signal_io.read_signal_file(args.input_path)
        mu = file_mu if file_mu is not None else mu
        check_mu(mu)

        def f(t, values=values, n=n):
            return values[np.rint(np.asarray(t) * n).astype(int)]

        on_node = np.isclose(x * n, np.rint(x * n), atol=1e-9, rtol=0.0)
        truth = np.where(on_node, values[np.rint(x * n).astype(int)], np.nan)
    elif args.fn:
        f = _builtin(args.fn, mu)
        truth = f(x)
    else:
        raise ConfigError("approximate needs --fn or --in")
    spec = operators.OperatorSpec(args.family, n, None if args.family == "bernstein" else mu)
    approx = operators.operator_on_grid(f, spec, x).values
    _finite(approx)
    signal_io.write_csv(args.out, ["x", "f", "Lnf", "error"], [x, truth, approx, approx - truth])
    return EXIT_OK


def _print_reference_rows(rows, stream):
    for r in rows:
        print(f"{r['case']}: max_error={r['max_error']:.4f} (reference {r['reference_error']:.4f})", file=stream)


def cmd_paper_example(args):
    rows = denoise.reference_suite(args.grid, out_dir=args.out)
    _print_reference_rows(rows, sys.stdout if args.out else sys.stderr)
    if args.out is None:
        json.dump([{k: v for k, v in r.items() if k != "path"} for r in rows], sys.stdout, indent=2)
        print()
    return EXIT_OK


def cmd_denoise(args):
    if args.paper_example:
        return cmd_paper_example(args)
    x = uniform_grid(args.grid)
    truth_fn = _builtin(args.fn, args.mu) if args.fn else None
    if args.input_path:
        values, n, file_mu, schema = signal_io.read_signal_file(args.input_path)
        if schema != "samples":
            raise InputError("denoise expects schema=samples")
        mu = file_mu if file_mu is not None else args.mu
        signal = denoise.NoisySignal(n, values, mu)
    elif truth_fn is not None:
        signal = denoise.synthesize_noisy(truth_fn, args.mu, args.n)
    else:
        raise ConfigError("denoise needs --in, --fn or --paper-example")
    res = denoise.denoise(signal, x, truth=truth_fn)
    rec = res.reconstruction.values
    _finite(rec)
    if truth_fn is not None:
        truth = truth_fn(x)
        noisy = (1.0 + signal.mu_t + x) * truth
    else:
        truth = np.full_like(x, np.nan)
        on_node = np.isclose(x * signal.n, np.rint(x * signal.n), atol=1e-9, rtol=0.0)
        noisy = np.where(on_node, signal.samples[np.rint(x * signal.n).astype(int)], np.nan)
    signal_io.write_csv(args.out, ["x", "truth", "noisy", "reconstruction"], [x, truth, noisy, rec])
    if res.max_error is not None:
        print(f"max_error={res.max_error:.12g}", file=sys.stderr if args.out is None else sys.stdout)
    return EXIT_OK


def cmd_verify(args):
    if args.suite not in verify.SUITES:
        raise ConfigError(f"unknown suite {args.suite!r}; choose from {', '.join(verify.SUITES)}")
    fn = _builtin(args.fn, args.mu) if args.fn else None
    report = verify.run_suite(args.suite, mu=args.mu, fn=fn, grid_points=args.grid)
    report["fn"] = args.fn
    if args.n_list:
        report["n_list"] = args.n_list
    text = json.dumps(report, indent=2, default=_json_default)
    if args.out:
        tmp = f"{args.out}.tmp"
        with open(tmp, "w") as fh:
            fh.write(text + "\n")
        os.replace(tmp, args.out)
    else:
        print(text)
    return EXIT_OK if report["passed"] else EXIT_FAILED


def _json_default(obj):
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    if isinstance(obj, (np.floating, np.integer)):
        return obj.item()
    if isinstance(obj, np.bool_):
        return bool(obj)
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def cmd_moments(args):
    x = uniform_grid(args.grid)
    if args.order < 0:
        raise ConfigError("--order must be >= 0")
    cols = [x] + [core.algebraic_moment(args.n, s, x) for s in range(args.order + 1)]
    absm = core.first_absolute_moment(args.n, x)
    header = ["x"] + [f"T{s}" for s in range(args.order + 1)] + ["abs_moment", "abs_bound"]
    cols += [absm, np.full_like(x, 0.5 / np.sqrt(args.n))]
    signal_io.write_csv(args.out, header, cols)
    return EXIT_OK


COMMANDS = {
    "approximate": cmd_approximate,
    "denoise": cmd_denoise,
    "verify": cmd_verify,
    "moments": cmd_moments,
    "paper-example": cmd_paper_example,
}


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        _validate(args)
        with np.errstate(all="ignore"):
            return COMMANDS[args.command](args)
    except (ConfigError, ParameterError, DomainError) as exc:
        print(f"logbern: configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except InputError as exc:
        print(f"logbern: data error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except (NumericError, FloatingPointError, LogBernError) as exc:
        print(f"logbern: numeric error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
