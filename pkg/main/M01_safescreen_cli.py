# ====================================================================================================
# M01_safescreen_cli.py
# ----------------------------------------------------------------------------------------------------
# Command-line entry point for SafeScreen.
#
# Purpose:
#   - screen     one SAFE screening pass (lasso / svm / logreg) at a single lambda.
#   - path       recursive SAFE regularisation path for the LASSO.
#   - memsolve   memory-limited LASSO solve with a kept-feature budget.
#   - threshold  KKT or TR(alpha) thresholding of a stored LASSO solution.
#   - bench      screening rates and timings over a lambda grid (JSON + CSV).
#   - synth      write a seeded synthetic dataset in svmlight format.
#
# Usage:
#   python -m main.M01_safescreen_cli screen --task lasso --data d.svm --lambda-frac 0.5 --out r.json
#
#   Exit codes: 0 success, 1 usage, 2 data error, 3 numerical failure. Errors are written to
#   standard error as "safescreen-error[<category>]: <message>".
#
# ----------------------------------------------------------------------------------------------------
# Author:       Gerry Pidgeon
# Created:      2025-12-19
# Project:      SafeScreen v1.0
# ====================================================================================================


# ====================================================================================================
# 1. SYSTEM IMPORTS
# ----------------------------------------------------------------------------------------------------
from __future__ import annotations

import sys
from pathlib import Path

project_root = str(Path(__file__).resolve().parent.parent)
if project_root not in sys.path:
    sys.path.append(project_root)

if "" in sys.path:
    sys.path.remove("")

sys.dont_write_bytecode = True


# ====================================================================================================
# 2. PROJECT IMPORTS
# ----------------------------------------------------------------------------------------------------
from core.C00_set_packages import *

from core.C03_logging_handler import get_logger, init_logging, log_divider
logger = get_logger(__name__)

from core.C04_config_loader import apply_overrides, get_config, initialise_config
from core.C05_error_handler import DataError, UsageError, format_error_line, handle_error, install_global_exception_hook

from implementation.I02_problem_instances import (
    LassoInstance,
    LassoVariant,
    LogRegInstance,
    SolveOptions,
    SolverResult,
    SvmInstance,
    WarmStart,
    intercept_from_centered,
    to_plain,
)
from implementation.I03_numeric_constants import setting
from implementation.data_io.IO01_dataset_loaders import (
    load_dataset,
    make_synthetic_classification,
    make_synthetic_lasso,
    to_labels,
    write_svmlight,
)
from implementation.data_io.IO02_report_writer import (
    build_report,
    read_solution,
    sparse_solution,
    write_bench_table,
    write_report,
)
from implementation.screening.SC01_safe_lasso import ScreenOptions, lambda_max, screen
from implementation.screening.SC02_safe_svm import lambda_max_bar, screen_svm
from implementation.screening.SC03_safe_logreg import default_dual_point, dual_point_from_primal, screen_logreg
from implementation.solvers.SO01_lasso_solver import duality_gap_lasso
from implementation.solvers.SO03_thresholding import certified_eps, kkt_threshold, tr_threshold
from implementation.workflows.WF01_budget_workflows import reduced_solve, solve_memory_limited
from implementation.workflows.WF02_recursive_path import PathSpec, solve_path_recursive


# ====================================================================================================
# 3. ARGUMENT PARSING
# ----------------------------------------------------------------------------------------------------
TASKS: Tuple[str, ...] = ("lasso", "svm", "logreg")


class ArgumentUsageError(UsageError):
    """Bad command line; carries the usage text of the parser that rejected it."""

    def __init__(self, message: str, usage: str) -> None:
        super().__init__(message)
        self.usage = usage


class SafeScreenArgumentParser(argparse.ArgumentParser):
    """ArgumentParser that raises instead of exiting, so bad flags map to exit code 1."""

    def error(self, message: str) -> None:  # type: ignore[override]
        raise ArgumentUsageError(message, self.format_usage())


def _add_data_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--data", required=True, type=Path, help="Input dataset (svmlight or CSV).")
    parser.add_argument("--format", choices=("svmlight", "csv"), default=None, help="Input format; inferred from the suffix by default.")
    parser.add_argument("--header", action="store_true", help="CSV input has a header row.")
    parser.add_argument("--out", required=True, type=Path, help="JSON report path.")


def _add_lambda_options(parser: argparse.ArgumentParser, required: bool = True) -> None:
    group = parser.add_mutually_exclusive_group(required=required)
    group.add_argument("--lambda", dest="lam", type=float, help="Penalty value.")
    group.add_argument("--lambda-frac", dest="lambda_frac", type=float, help="Penalty as a fraction of the task's lambda scale.")


def _add_variant_options(parser: argparse.ArgumentParser) -> None:
    group = parser.add_mutually_exclusive_group()
    group.add_argument("--intercept", action="store_true", help="LASSO with an unpenalised intercept.")
    group.add_argument("--elastic", type=float, default=None, metavar="EPS", help="Elastic-net weight epsilon > 0.")


def build_parser() -> argparse.ArgumentParser:
    """Builds the safescreen argument parser with one subparser per command."""
    parser = SafeScreenArgumentParser(prog="safescreen", description="SAFE feature elimination for sparse supervised learning.")
    parser.add_argument("--threads", type=int, default=None, help="Worker threads for per-feature screening.")
    parser.add_argument("--seed", type=int, default=None, help="Seed recorded in reports (default: cli.seed, 42).")
    parser.add_argument("--log-level", default="INFO", choices=("DEBUG", "INFO", "WARNING", "ERROR"))
    sub = parser.add_subparsers(dest="command", required=True, parser_class=SafeScreenArgumentParser)

    p_screen = sub.add_parser("screen", help="One SAFE screening pass.")
    p_screen.add_argument("--task", choices=TASKS, default="lasso")
    _add_data_options(p_screen)
    _add_lambda_options(p_screen)
    _add_variant_options(p_screen)
    p_screen.add_argument("--warm-start", type=Path, default=None, help="JSON solution used as warm start (lasso, logreg).")
    p_screen.add_argument("--certificates", action="store_true", help="Include per-feature certificates in the report.")
    p_screen.add_argument("--nu-free", action="store_true", help="Conservative logistic test with nu fixed at 0.")

    p_path = sub.add_parser("path", help="Recursive SAFE regularisation path (LASSO).")
    _add_data_options(p_path)
    grid = p_path.add_mutually_exclusive_group(required=True)
    grid.add_argument("--lambdas", help="Comma-separated strictly decreasing penalties.")
    grid.add_argument("--grid", help="log:lo:hi:count, as fractions of lambda_max.")
    p_path.add_argument("--tol", type=float, default=None, help="Relative duality-gap target.")
    p_path.add_argument("--no-screening", action="store_true", help="Solve every step on all features.")
    p_path.add_argument("--no-recertify", action="store_true", help="Skip the full-problem gap check.")
    _add_variant_options(p_path)

    p_mem = sub.add_parser("memsolve", help="Memory-limited LASSO solve.")
    _add_data_options(p_mem)
    _add_lambda_options(p_mem)
    p_mem.add_argument("--budget", type=int, required=True, help="Kept-feature budget M.")
    p_mem.add_argument("--eps-f", type=int, default=0, help="Bisection window eps_F.")
    p_mem.add_argument("--tol", type=float, default=None)
    _add_variant_options(p_mem)

    p_thr = sub.add_parser("threshold", help="Threshold a stored LASSO solution.")
    _add_data_options(p_thr)
    _add_lambda_options(p_thr)
    p_thr.add_argument("--solution", type=Path, required=True, help="JSON solution file.")
    p_thr.add_argument("--rule", choices=("kkt", "tr"), required=True)
    p_thr.add_argument("--alpha", type=float, default=None, help="TR degradation factor > 1.")
    p_thr.add_argument("--eps", type=float, default=None, help="Certified accuracy of the solution; from its gap by default.")

    p_bench = sub.add_parser("bench", help="Screening rates and timings over a grid.")
    p_bench.add_argument("--task", choices=TASKS, default="lasso")
    _add_data_options(p_bench)
    p_bench.add_argument("--grid", required=True, help="log:lo:hi:count, as fractions of the task's lambda scale.")
    p_bench.add_argument("--tol", type=float, default=None)

    p_synth = sub.add_parser("synth", help="Write a seeded synthetic dataset.")
    p_synth.add_argument("--task", choices=TASKS, default="lasso")
    p_synth.add_argument("--m", type=int, required=True, help="Samples.")
    p_synth.add_argument("--n", type=int, required=True, help="Features.")
    p_synth.add_argument("--density", type=float, default=0.1)
    p_synth.add_argument("--nnz-true", type=int, default=10)
    p_synth.add_argument("--noise", type=float, default=0.1)
    p_synth.add_argument("--out", required=True, type=Path, help="svmlight output path.")

    return parser


# ====================================================================================================
# 4. SHARED HELPERS
# ----------------------------------------------------------------------------------------------------
def _solve_options(args: argparse.Namespace) -> SolveOptions:
    tol = args.tol if getattr(args, "tol", None) is not None else float(setting("solver", "tol"))
    max_iters = int(setting("solver", "max_iters"))
    return SolveOptions(tol=tol, max_iters=max_iters)


def _lasso_instance(args: argparse.Namespace) -> LassoInstance:
    X, y = load_dataset(args.data, args.format, args.header)
    if getattr(args, "intercept", False):
        return LassoInstance(X, y, LassoVariant.INTERCEPT)
    if getattr(args, "elastic", None) is not None:
        if args.elastic <= 0:
            raise UsageError(f"--elastic must be > 0, got {args.elastic:g}")
        return LassoInstance(X, y, LassoVariant.ELASTIC, args.elastic)
    return LassoInstance(X, y)


def _classification_instance(args: argparse.Namespace) -> Tuple[SvmInstance | LogRegInstance, bool]:
    Z, targets = load_dataset(args.data, args.format, args.header)
    labels, remapped = to_labels(targets)
    cls = SvmInstance if args.task == "svm" else LogRegInstance
    return cls(Z, labels), remapped


def _resolve_lambda(args: argparse.Namespace, scale: float) -> float:
    if args.lam is not None:
        return float(args.lam)
    if not args.lambda_frac > 0:
        raise UsageError(f"--lambda-frac must be > 0, got {args.lambda_frac:g}")
    return float(args.lambda_frac) * scale


def _intercept_field(instance: LassoInstance, w: np.ndarray) -> Dict[str, Any]:
    if instance.variant is LassoVariant.INTERCEPT:
        return {"intercept": intercept_from_centered(instance, w)}
    return {}


def _shape(instance: LassoInstance | SvmInstance | LogRegInstance) -> Dict[str, int]:
    return {"n": instance.n_features, "m": instance.n_rows}


# ====================================================================================================
# 5. COMMANDS
# ----------------------------------------------------------------------------------------------------
def run_screen(args: argparse.Namespace) -> Dict[str, Any]:
    """screen: one SAFE pass for the chosen task."""
    opts = ScreenOptions(keep_certificates=args.certificates, max_workers=args.threads)
    start = time.perf_counter()
    extra: Dict[str, Any] = {"task": args.task}

    if args.task == "lasso":
        instance = _lasso_instance(args)
        plain = to_plain(instance)
        scale = lambda_max(plain.X, plain.y)
        lam = _resolve_lambda(args, scale)
        ws = None
        if args.warm_start is not None:
            w0, lambda0 = read_solution(args.warm_start, plain.n_features)
            if lambda0 is None:
                raise DataError(f"{args.warm_start.name}: warm start needs the 'lambda' it was solved at")
            ws = WarmStart.from_solution(plain, lambda0, w0)
        report = screen(plain, lam, ws, opts)
        extra["variant"] = instance.variant.value
        shape = _shape(instance)
    else:
        if args.intercept or args.elastic is not None:
            raise UsageError("--intercept and --elastic apply to the lasso task only")
        instance, remapped = _classification_instance(args)
        extra["labels_remapped"] = remapped
        if args.task == "svm":
            if args.warm_start is not None:
                raise UsageError("--warm-start is not supported for the svm task")
            scale = lambda_max_bar(instance, max_workers=args.threads)
            lam = _resolve_lambda(args, scale)
            report = screen_svm(instance, lam, opts=opts)
        else:
            scale = default_dual_point(instance).lambda0
            lam = _resolve_lambda(args, scale)
            point = None
            if args.warm_start is not None:
                w0, _ = read_solution(args.warm_start, instance.n_features)
                point = dual_point_from_primal(instance, w0)
            report = screen_logreg(instance, lam, point=point, nu_free=args.nu_free, opts=opts)
        shape = _shape(instance)

    payload = report.to_dict()
    payload.update(extra)
    payload["lambda_scale"] = scale
    logger.info("screen (%s): eliminated %s / %s at lambda=%.6g", args.task, report.eliminated_count, report.n_features, lam)
    return build_report("screen", args.data, seed=args.seed, timings={"screen": time.perf_counter() - start}, **shape, **payload)


def run_path(args: argparse.Namespace) -> Dict[str, Any]:
    """path: recursive SAFE path with full-problem re-certification."""
    instance = _lasso_instance(args)
    plain = to_plain(instance)
    scale = lambda_max(plain.X, plain.y)
    opts = _solve_options(args)
    spec = PathSpec.from_grid(args.grid, scale, opts) if args.grid else PathSpec.from_text(args.lambdas, opts)

    start = time.perf_counter()
    outcome = solve_path_recursive(
        plain,
        spec,
        screen_opts=ScreenOptions(max_workers=args.threads),
        recertify=False if args.no_recertify else None,
        use_screening=not args.no_screening,
    )
    records = []
    for record in outcome.records:
        entry = record.to_dict()
        entry.update(_intercept_field(instance, record.dense(plain.n_features)))
        records.append(entry)

    return build_report(
        "path",
        args.data,
        seed=args.seed,
        timings={"path": time.perf_counter() - start},
        lambda_max=scale,
        variant=instance.variant.value,
        screening=not args.no_screening,
        records=records,
        total_coordinate_updates=outcome.total_updates,
        **_shape(instance),
    )


def run_memsolve(args: argparse.Namespace) -> Dict[str, Any]:
    """memsolve: staged reduced solves under a kept-feature budget."""
    instance = _lasso_instance(args)
    plain = to_plain(instance)
    scale = lambda_max(plain.X, plain.y)
    lam = _resolve_lambda(args, scale)

    start = time.perf_counter()
    outcome = solve_memory_limited(
        plain,
        lam,
        args.budget,
        eps_f=args.eps_f,
        opts=_solve_options(args),
        screen_opts=ScreenOptions(max_workers=args.threads),
    )
    return build_report(
        "memsolve",
        args.data,
        seed=args.seed,
        timings={"memsolve": time.perf_counter() - start},
        variant=instance.variant.value,
        **{"lambda": lam},
        lambda_max=scale,
        budget=args.budget,
        eps_f=args.eps_f,
        stages=outcome.stages,
        max_kept=max((s["kept"] for s in outcome.stages), default=0),
        solution=sparse_solution(outcome.w),
        objective=outcome.result.objective,
        gap=outcome.result.duality_gap,
        **_intercept_field(instance, outcome.w),
        **_shape(instance),
    )


def run_threshold(args: argparse.Namespace) -> Dict[str, Any]:
    """threshold: KKT or TR(alpha) post-processing of a stored solution."""
    X, y = load_dataset(args.data, args.format, args.header)
    instance = LassoInstance(X, y)
    lam = _resolve_lambda(args, lambda_max(X, y))
    w, _ = read_solution(args.solution, instance.n_features)

    start = time.perf_counter()
    objective_before = instance.objective(w, lam)
    result = SolverResult(w=w, objective=objective_before, duality_gap=duality_gap_lasso(instance, lam, w), iterations=0)
    eps = certified_eps(result) if args.eps is None else float(args.eps)

    if args.rule == "kkt":
        w_new = kkt_threshold(w, instance, lam)
        alpha = None
    else:
        alpha = float(setting("thresholding", "alpha") if args.alpha is None else args.alpha)
        w_new = tr_threshold(w, instance, lam, eps, alpha)

    objective_after = instance.objective(w_new, lam)
    logger.info(
        "threshold (%s): nnz %s -> %s, objective %.9g -> %.9g",
        args.rule, int(np.count_nonzero(w)), int(np.count_nonzero(w_new)), objective_before, objective_after,
    )
    return build_report(
        "threshold",
        args.data,
        seed=args.seed,
        timings={"threshold": time.perf_counter() - start},
        **{"lambda": lam},
        rule=args.rule,
        alpha=alpha,
        eps=eps,
        nnz_before=int(np.count_nonzero(w)),
        nnz_after=int(np.count_nonzero(w_new)),
        objective_before=objective_before,
        objective=objective_after,
        solution=sparse_solution(w_new),
        **_shape(instance),
    )


def run_bench(args: argparse.Namespace) -> Dict[str, Any]:
    """bench: per-lambda elimination rates and timings, written as JSON and CSV."""
    opts = ScreenOptions(max_workers=args.threads)
    rows: List[Dict[str, Any]] = []
    start_all = time.perf_counter()

    if args.task == "lasso":
        X, y = load_dataset(args.data, args.format, args.header)
        instance = LassoInstance(X, y)
        scale = lambda_max(X, y)
        spec = PathSpec.from_grid(args.grid, scale, _solve_options(args))
        ws = WarmStart.default(instance)
        w = np.zeros(instance.n_features)
        for lam in spec.lambdas:
            lam = float(lam)
            t0 = time.perf_counter()
            default_report = screen(instance, lam, None, opts)
            t1 = time.perf_counter()
            recursive_report = screen(instance, lam, ws, opts) if lam <= ws.lambda0 else default_report
            t2 = time.perf_counter()
            if lam < scale:
                w, _ = reduced_solve(instance, lam, recursive_report.kept, w, spec.opts)
                ws = WarmStart.from_solution(instance, lam, w)
            else:
                w = np.zeros(instance.n_features)
            t3 = time.perf_counter()
            rows.append({
                "lambda": lam,
                "lambda_frac": lam / scale,
                "eliminated_default": default_report.eliminated_count / max(instance.n_features, 1),
                "eliminated_recursive": recursive_report.eliminated_count / max(instance.n_features, 1),
                "screen_seconds_default": t1 - t0,
                "screen_seconds_recursive": t2 - t1,
                "solve_seconds": t3 - t2,
            })
    else:
        instance, _ = _classification_instance(args)
        scale = lambda_max_bar(instance, args.threads) if args.task == "svm" else default_dual_point(instance).lambda0
        spec = PathSpec.from_grid(args.grid, scale)
        for lam in spec.lambdas:
            lam = float(lam)
            t0 = time.perf_counter()
            report = screen_svm(instance, lam, opts=opts) if args.task == "svm" else screen_logreg(instance, lam, opts=opts)
            rows.append({
                "lambda": lam,
                "lambda_frac": lam / scale,
                "eliminated_default": report.eliminated_count / max(instance.n_features, 1),
                "eliminated_recursive": None,
                "screen_seconds_default": time.perf_counter() - t0,
                "screen_seconds_recursive": None,
                "solve_seconds": None,
            })

    write_bench_table(rows, args.out)
    return build_report(
        "bench",
        args.data,
        seed=args.seed,
        timings={"bench": time.perf_counter() - start_all},
        task=args.task,
        lambda_scale=scale,
        rows=rows,
        **_shape(instance),
    )


def run_synth(args: argparse.Namespace) -> None:
    """synth: seeded synthetic data written as svmlight."""
    seed = int(get_config("cli", "seed", default=42) if args.seed is None else args.seed)
    if args.task == "lasso":
        instance, _ = make_synthetic_lasso(args.m, args.n, args.density, args.nnz_true, args.noise, seed)
        write_svmlight(args.out, instance.X, instance.y)
    else:
        instance = make_synthetic_classification(args.m, args.n, args.density, args.nnz_true, args.noise, seed, task=args.task)
        write_svmlight(args.out, instance.Z, instance.labels)
    logger.info("synth (%s): wrote %s x %s data with seed %s to %s", args.task, args.m, args.n, seed, args.out)


COMMANDS: Dict[str, Callable[[argparse.Namespace], Dict[str, Any] | None]] = {
    "screen": run_screen,
    "path": run_path,
    "memsolve": run_memsolve,
    "threshold": run_threshold,
    "bench": run_bench,
    "synth": run_synth,
}


# ====================================================================================================
# 6. DISPATCH
# ----------------------------------------------------------------------------------------------------
def cli_dispatch(argv: Sequence[str] | None = None) -> int:
    """
    Description:
        Parses argv, runs the command and writes its report.

    Args:
        argv (Sequence[str] | None): Arguments without the program name; sys.argv[1:] when None.

    Returns:
        int: 0 success, 1 usage, 2 data error, 3 numerical failure.

    Notes:
        - Usage errors print the usage text, then the error line, to stderr.
        - --help exits 0 after printing help.
    """
    parser = build_parser()
    argv = list(sys.argv[1:] if argv is None else argv)

    try:
        args = parser.parse_args(argv)
    except ArgumentUsageError as exc:
        sys.stderr.write(exc.usage)
        sys.stderr.write(format_error_line(exc) + "\n")
        return exc.exit_code
    except SystemExit as exc:
        return int(exc.code or 0)

    init_logging(level=getattr(logging, args.log_level))
    initialise_config()
    if args.threads is not None:
        if args.threads < 1:
            sys.stderr.write(format_error_line(UsageError("--threads must be >= 1")) + "\n")
            return UsageError.exit_code
        apply_overrides({"parallel": {"threads": args.threads}})

    log_divider(label=f"safescreen {args.command}")
    try:
        report = COMMANDS[args.command](args)
        if report is not None:
            write_report(report, args.out)
        return 0
    except Exception as exc:
        code = handle_error(exc, context=args.command)
        sys.stderr.write(format_error_line(exc) + "\n")
        return code


def main() -> None:
    install_global_exception_hook()
    sys.exit(cli_dispatch())


# ====================================================================================================
# 7. MAIN EXECUTION
# ----------------------------------------------------------------------------------------------------
if __name__ == "__main__":
    main()
