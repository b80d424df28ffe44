"""Command-line entry point: ``skewnum <command> ...``.

Exit codes: 0 success / no violation, 1 reference verification failed,
2 input error, 3 violation found (check commands), 4 numerical failure.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import instance_io
from .counterexample import verify_counterexample
from .errors import ConvergenceError
from .inequalities import (BipartiteInstance, embed_sa_as_ssa, sa_gap, skew_entropy, ssa_gap)
from .metric import wyd_via_quadrature
from .quadrature import QuadratureConfig
from .search import SearchConfig, p_sweep, search_sa_violation
from .tensor import local_sum, partial_trace

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_INPUT = 2
EXIT_VIOLATION = 3
EXIT_NUMERICAL = 4


class InputError(Exception):
    pass


def _load(args):
    if args.instance == "hansen2006":
        return instance_io.loads(instance_io.packaged_counterexample_text(), args.p)
    try:
        return instance_io.read_instance(args.instance, args.p)
    except OSError as exc:
        raise InputError(f"cannot read {args.instance}: {exc.strerror}") from exc


def _state(inst):
    return inst.rho12 if isinstance(inst, BipartiteInstance) else inst.rho123


def _print_json(obj):
    print(json.dumps(obj, indent=2))


def _matrix_lines(a: np.ndarray) -> str:
    return np.array2string(np.asarray(a), precision=10, suppress_small=True)


def cmd_verify_paper(args) -> int:
    report = verify_counterexample(tol=args.tol, p=args.p)
    for check in report.checks:
        status = "PASS" if check.passed else "FAIL"
        kind = "exact" if check.exact else f"tol {args.tol:g}"
        print(f"{status}  {check.name:<40s} err={check.error:.3e} ({kind})")
    print(f"subadditivity gap = {report.gap:.10f}  (-725 + 81*sqrt(69) = {-725 + 81 * 69 ** 0.5:.10f})")
    print(f"elapsed {report.seconds * 1e3:.1f} ms")
    if report.passed:
        print("all checks passed")
        return EXIT_OK
    print("failed checks: " + ", ".join(c.name for c in report.failures))
    return EXIT_VERIFY_FAILED


def cmd_eval(args) -> int:
    inst = _load(args)
    state = _state(inst)
    n = state.nfactors
    label = "".join(str(i + 1) for i in range(n))
    k_all = local_sum(inst.observables, state.dims).matrix
    print(f"p = {inst.p}")
    print(f"S_p(rho{label}, k{label}) = {skew_entropy(state.matrix, k_all, inst.p):.12g}")
    for i in range(n):
        marginal = partial_trace(state, {i}).matrix
        print(f"rho{i + 1} =\n{_matrix_lines(marginal)}")
        print(f"S_p(rho{i + 1}, k{i + 1}) = {skew_entropy(marginal, inst.observables[i], inst.p):.12g}")
    return EXIT_OK


def _check(report) -> int:
    _print_json(report.to_dict())
    return EXIT_VIOLATION if report.violated else EXIT_OK


def cmd_check_sa(args) -> int:
    inst = _load(args)
    if not isinstance(inst, BipartiteInstance):
        raise InputError("check-sa needs a two-factor instance")
    return _check(sa_gap(inst, args.tol))


def cmd_check_ssa(args) -> int:
    inst = _load(args)
    if isinstance(inst, BipartiteInstance):
        inst = embed_sa_as_ssa(inst)
    return _check(ssa_gap(inst, args.tol))


def cmd_quadrature(args) -> int:
    inst = _load(args)
    state = _state(inst)
    k_all = local_sum(inst.observables, state.dims).matrix
    closed = skew_entropy(state.matrix, k_all, inst.p)
    result = wyd_via_quadrature(state.matrix, k_all, inst.p, QuadratureConfig(abs_tol=args.abs_tol),
                                full_output=True)
    _print_json({
        "p": inst.p,
        "closed_form": closed,
        "quadrature": result.value,
        "difference": result.value - closed,
        "error_estimate": result.error,
        "panels": result.panels,
    })
    return EXIT_OK


def _parse_dims(text: str) -> tuple[int, int]:
    try:
        dims = tuple(int(x) for x in text.split(","))
    except ValueError as exc:
        raise InputError(f"bad --dims {text!r}") from exc
    if len(dims) != 2 or min(dims) < 1:
        raise InputError("--dims needs two positive integers, e.g. 2,2")
    return dims


def cmd_search(args) -> int:
    try:
        cfg = SearchConfig(dims=_parse_dims(args.dims), p=args.p, restarts=args.restarts, seed=args.seed,
                           max_iters=args.max_iters, k2_zero=args.k2_zero,
                           complex_entries=args.complex_entries)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    warm = None
    if args.warm_start:
        warm = instance_io.read_instance(args.warm_start)
        if not isinstance(warm, BipartiteInstance) or tuple(warm.dims) != cfg.dims:
            raise InputError("warm start must be a two-factor instance with the search dims")
        if args.k2_zero:
            warm = BipartiteInstance(warm.rho12, warm.k1, np.zeros_like(warm.k2), cfg.p)
    result = search_sa_violation(cfg, warm)
    out = result.report.to_dict()
    out["start"] = "warm" if result.start < 0 else result.start
    out["starts_violating"] = sum(g < -result.report.tolerance for g in result.start_gaps)
    out["instance_file"] = args.out
    instance_io.write_instance(result.instance, args.out)
    _print_json(out)
    return EXIT_OK


def _parse_grid(text: str) -> list[float]:
    try:
        start, stop, step = (float(x) for x in text.split(":"))
    except ValueError as exc:
        raise InputError(f"bad --grid {text!r}; expected start:stop:step") from exc
    if step <= 0 or stop < start:
        raise InputError("--grid needs step > 0 and stop >= start")
    count = int(np.floor((stop - start) / step + 1e-9)) + 1
    return [round(start + i * step, 12) for i in range(count)]


def _write_svg(reports, path):
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(5, 3.2))
    ax.plot([r.p for r in reports], [r.gap for r in reports], "o-")
    ax.axhline(0.0, color="grey", lw=0.8)
    ax.set_xlabel("p")
    ax.set_ylabel("subadditivity gap")
    fig.tight_layout()
    fig.savefig(path, format="svg")
    plt.close(fig)


def cmd_sweep(args) -> int:
    inst = _load(args)
    if not isinstance(inst, BipartiteInstance):
        raise InputError("sweep needs a two-factor instance")
    grid = _parse_grid(args.grid)
    reports = p_sweep(inst, grid)
    print(f"{'p':>6}  {'S12':>16}  {'S1':>16}  {'S2':>16}  {'gap':>16}  violated")
    for r in reports:
        t = r.terms
        print(f"{r.p:6.3f}  {t['S12']:16.8f}  {t['S1']:16.8f}  {t['S2']:16.8f}  {r.gap:16.8f}  {r.violated}")
    negative = sum(r.violated for r in reports)
    print(f"{negative}/{len(reports)} grid points violate subadditivity "
          "(numerical evidence only, not a proof)")
    if args.svg:
        _write_svg(reports, args.svg)
        print(f"plot written to {args.svg}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="skewnum", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify-paper", help="recheck the built-in two-qubit counterexample")
    p.add_argument("--tol", type=float, default=1e-9)
    p.add_argument("--p", type=float, default=0.5)
    p.set_defaults(func=cmd_verify_paper)

    def with_instance(name, helptext, func):
        q = sub.add_parser(name, help=helptext)
        q.add_argument("--instance", required=True,
                       help="instance JSON file, or 'hansen2006' for the built-in counterexample")
        q.add_argument("--p", type=float, default=None, help="overrides p from the file")
        q.set_defaults(func=func)
        return q

    with_instance("eval", "print entropies and partial traces", cmd_eval)
    with_instance("check-sa", "subadditivity gap", cmd_check_sa).add_argument("--tol", type=float)
    with_instance("check-ssa", "strong subadditivity gap", cmd_check_ssa).add_argument("--tol", type=float)
    with_instance("quadrature", "closed form vs integral representation", cmd_quadrature).add_argument(
        "--abs-tol", type=float, default=1e-8)
    sw = with_instance("sweep", "subadditivity gap over a grid of p", cmd_sweep)
    sw.add_argument("--grid", default="0.1:0.9:0.1")
    sw.add_argument("--svg", default=None)

    s = sub.add_parser("search", help="Nelder-Mead search for subadditivity violations")
    s.add_argument("--dims", default="2,2")
    s.add_argument("--p", type=float, default=0.5)
    s.add_argument("--restarts", type=int, default=20)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--max-iters", type=int, default=500)
    s.add_argument("--warm-start", default=None)
    s.add_argument("--k2-zero", action="store_true")
    s.add_argument("--complex", dest="complex_entries", action="store_true")
    s.add_argument("--out", default="best-instance.json")
    s.set_defaults(func=cmd_search)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (InputError, ValueError, OSError) as exc:
        # instance format, Hermitian, dimension and positivity errors are all ValueErrors
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (ConvergenceError, ArithmeticError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
