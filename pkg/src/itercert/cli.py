"""Command-line interface.

Exit codes: 0 success, 2 usage/input error, 3 numerical failure (singular
``A1``, eigensolver failure), 4 solve refused because the certificate
predicts divergence (override with ``--force``). Diagnostics go to stderr
prefixed with a stable error code.
"""

import argparse
import sys
import time

import numpy as np

from . import report as rpt
from .certify import Verdict, certificate_report
from .dense_linalg import lu_solve
from .errors import DivergentSystemError, InsufficientData, ItercertError
from .estimator import StationarySolver
from .iterative import DEFAULT_MAX_ITERS, observed_rate
from .mmio import load_matrix_market
from .poisson import run_demo

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_NUMERIC = 3
EXIT_DIVERGES = 4

_EXIT_FOR_CODE = {"E_SINGULAR": EXIT_NUMERIC, "E_EIG": EXIT_NUMERIC}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"E_USAGE: {message}\n")


def _unit_interval(text):
    value = float(text)
    if not 0.0 < value < 1.0:
        raise argparse.ArgumentTypeError(f"must lie in (0, 1), got {text}")
    return value


def _positive_int(text):
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {text}")
    return value


def build_parser():
    parser = _Parser(prog="itercert", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p, needs_matrix=True):
        if needs_matrix:
            p.add_argument("--matrix", required=True, help="Matrix Market file holding A")
        p.add_argument("--method", choices=["jacobi", "gauss-seidel"], default="jacobi")
        p.add_argument("--output", choices=["json", "table"], default="json")
        p.add_argument("--target-reduction", type=_unit_interval, default=1e-10)

    def iteration(p):
        p.add_argument("--tol", type=_unit_interval, default=1e-10)
        p.add_argument("--max-iters", type=_positive_int, default=DEFAULT_MAX_ITERS)
        p.add_argument("--x0", choices=["zero", "random"], default="zero")
        p.add_argument("--seed", type=int, default=0, help="seed for --x0 random")

    p = sub.add_parser("certify", help="certify convergence of the splitting")
    common(p)
    p.add_argument("--criterion", choices=["spectral_radius", "reich"], default="spectral_radius")

    p = sub.add_parser("spectrum", help="eigenvalues of the iteration matrix")
    common(p)

    p = sub.add_parser("solve", help="certify, then iterate")
    common(p)
    iteration(p)
    p.add_argument("--rhs", required=True, help="Matrix Market file holding b")
    p.add_argument("--criterion", choices=["spectral_radius", "reich"], default="spectral_radius")
    p.add_argument("--force", action="store_true", help="iterate despite a diverges verdict")

    p = sub.add_parser("poisson", help="certified solve of the 1-D Poisson benchmark")
    common(p, needs_matrix=False)
    iteration(p)
    p.add_argument("--n", type=_positive_int, default=3, help="interior grid points")
    return parser


def _start_vector(args, n):
    if args.x0 == "zero":
        return None
    return np.random.default_rng(args.seed).standard_normal(n)


def _fmt(x):
    return "-" if x is None else (f"{x:.6g}" if isinstance(x, float) else str(x))


def render_table(report):
    lines = [
        f"command      {report['command']}",
        f"matrix       {report['matrix']['source']} (n={report['matrix']['n']})",
    ]
    cert = report["certificate"]
    if cert is not None:
        lines += [
            f"verdict      {cert['verdict']} ({cert['criterion']})",
            f"rho(S)       {_fmt(cert['spectral_radius'])}",
            f"pred. rate   {_fmt(cert['predicted_rate'])}",
            f"pred. iters  {_fmt(cert['predicted_iters'])}",
        ]
        if cert["notes"]:
            lines.append(f"notes        {cert['notes']}")
        if report["command"] == "spectrum":
            lines.append("eigenvalues")
            for i, e in enumerate(cert["eigenvalues"]):
                lines.append(f"  {i:4d}  {e['re']: .12e} {e['im']:+.12e}i")
    trace = report["trace"]
    if trace is not None:
        lines += [
            f"status       {trace['status']} after {trace['iterations']} iterations",
            f"last update  {_fmt(trace['final_update_norm'])}",
            f"last error   {_fmt(trace['final_error_norm'])}",
            f"obs. rate    {_fmt(trace['observed_rate'])}",
        ]
    lines.append(f"time         {report['timing_ms']:.1f} ms")
    return "\n".join(lines)


def _emit(report, output, stream):
    text = rpt.dumps(report) if output == "json" else render_table(report)
    stream.write(text + "\n")


def _rate(trace):
    try:
        return observed_rate(trace)
    except InsufficientData:
        return None


def _run(args, stdout):
    start = time.perf_counter()
    exit_code = EXIT_OK

    if args.command == "poisson":
        demo = run_demo(args.n, args.method, tol=args.tol, max_iters=args.max_iters,
                        x0=_start_vector(args, args.n))
        if demo.error is not None:
            code = demo.error.split(":", 1)[0]
            raise _Reported(demo.error, _EXIT_FOR_CODE.get(code, EXIT_USAGE))
        report = rpt.build_report(
            "poisson",
            args.n,
            "poisson",
            certificate_report(demo.certificate),
            rpt.trace_summary(demo.trace, demo.observed_rate),
        )
    else:
        A = load_matrix_market(args.matrix)
        criterion = getattr(args, "criterion", "spectral_radius")
        solver = StationarySolver(
            method=args.method,
            criterion=criterion,
            target_reduction=args.target_reduction,
            tol=getattr(args, "tol", 1e-10),
            max_iters=getattr(args, "max_iters", DEFAULT_MAX_ITERS),
            force=getattr(args, "force", False),
        ).fit(A)
        cert = solver.certificate_
        if cert.error_code is not None:
            raise _Reported(cert.notes, _EXIT_FOR_CODE.get(cert.error_code, EXIT_NUMERIC))
        trace = None
        if args.command == "solve":
            b = load_matrix_market(args.rhs)
            x_ref = lu_solve(A, b)
            try:
                solver.solve(b, x0=_start_vector(args, A.shape[0]), x_ref=x_ref)
            except DivergentSystemError as exc:
                sys.stderr.write(f"{exc.code}: {exc}\n")
                exit_code = EXIT_DIVERGES
            else:
                trace = rpt.trace_summary(solver.trace_, _rate(solver.trace_))
        report = rpt.build_report(
            args.command, A.shape[0], args.matrix, certificate_report(cert), trace
        )
    report["timing_ms"] = (time.perf_counter() - start) * 1e3
    _emit(report, args.output, stdout)
    return exit_code


class _Reported(Exception):
    def __init__(self, message, exit_code):
        super().__init__(message)
        self.exit_code = exit_code


def main(argv=None, stdout=None):
    stdout = sys.stdout if stdout is None else stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _run(args, stdout)
    except _Reported as exc:
        sys.stderr.write(f"{exc}\n")
        return exc.exit_code
    except ItercertError as exc:
        sys.stderr.write(f"{exc.code}: {exc}\n")
        return _EXIT_FOR_CODE.get(exc.code, EXIT_USAGE)
    except ValueError as exc:
        sys.stderr.write(f"E_USAGE: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
