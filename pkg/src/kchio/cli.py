"""Command-line front end: ``kchio det|solve|bench|optimal-k``."""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass, field
from typing import Sequence

from . import complexity
from .condense import GREEDY, STRATEGIES, determinant
from .errors import KChioError
from .io import parse_matrix_file, parse_vector_file
from .matrix import Matrix
from .scalar import Backend, OpCounter, format_value
from .solver import GAUSSIAN, METHODS, solve_all, solve_for

COMMANDS = ("det", "solve", "bench", "optimal-k")
FORMATS = ("text", "json", "csv")

EXIT_CODES = {
    "error": 1,
    "parse": 3,
    "singular": 4,
    "singular-pivot": 5,
    "rank-deficient": 5,
    "index": 6,
    "backend-mismatch": 7,
}


@dataclass
class RunConfig:
    command: str
    k: int | str = "auto"
    backend: str | None = None
    pivot: str = GREEDY
    targets: list[int] | None = None
    group_size: int | None = None
    workers: int = 1
    matrix_path: str | None = None
    vector_path: str | None = None
    format: str = "text"
    seed: int = 0
    method: str = GAUSSIAN
    ns: list[int] = field(default_factory=list)
    ks: list[int] = field(default_factory=list)
    count_adds: bool = False

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise ValueError(f"unknown command {self.command!r}")
        if self.command != "solve" and (self.targets is not None or self.group_size is not None):
            raise ValueError("--targets and --group-size only apply to solve")
        if self.targets is not None and self.group_size is not None:
            raise ValueError("--targets and --group-size are mutually exclusive")
        if self.k != "auto" and (not isinstance(self.k, int) or self.k < 1):
            raise ValueError("k must be a positive integer or 'auto'")
        if self.workers < 1:
            raise ValueError("workers must be >= 1")
        if self.format not in FORMATS:
            raise ValueError(f"unknown format {self.format!r}")


def _resolve_k(k, n: int) -> int:
    if k == "auto":
        return complexity.optimal_k(n) if n >= 3 else 1
    return k


def _has_fractions(A: Matrix) -> bool:
    return A.backend is Backend.EXACT and any(not isinstance(v, int) for v in A.data)


def _load_matrix(cfg: RunConfig, default: Backend) -> Matrix:
    if cfg.backend is not None:
        return parse_matrix_file(cfg.matrix_path, cfg.backend)
    A = parse_matrix_file(cfg.matrix_path)
    if A.backend is Backend.FLOAT or _has_fractions(A):
        return A
    return A.astype(default)


def _csv(rows: list[dict]) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    return buf.getvalue()


def _ops_line(counter: OpCounter) -> str:
    return f"# ops: mul_div={counter.mul_div} add_sub={counter.add_sub}"


def _run_det(cfg: RunConfig) -> str:
    A = _load_matrix(cfg, Backend.FLOAT)
    k = _resolve_k(cfg.k, A.rows)
    counter = OpCounter()
    det = determinant(A, k, cfg.pivot, counter, cfg.workers)
    value = format_value(det, A.backend)
    if cfg.format == "json":
        return json.dumps({"command": "det", "n": A.rows, "backend": A.backend.value, "k": k,
                           "pivot": cfg.pivot, "determinant": value, "ops": counter.as_dict()}) + "\n"
    if cfg.format == "csv":
        return _csv([{"quantity": "determinant", "value": value}, {"quantity": "k", "value": k},
                     {"quantity": "mul_div", "value": counter.mul_div},
                     {"quantity": "add_sub", "value": counter.add_sub}])
    return f"{value}\n# n={A.rows} k={k} backend={A.backend.value}\n{_ops_line(counter)}\n"


def _run_solve(cfg: RunConfig) -> str:
    if cfg.vector_path is None:
        raise ValueError("solve needs a right-hand side file")
    A = _load_matrix(cfg, Backend.EXACT)
    b = parse_vector_file(cfg.vector_path, A.backend)
    if A.backend is Backend.EXACT and any(isinstance(v, float) for v in b):
        raise ValueError("right-hand side is float but the matrix is exact; pass --backend")
    k = _resolve_k(cfg.k, A.rows)
    counter = OpCounter()
    if cfg.targets is not None:
        sol = solve_for(A, b, cfg.targets, k, cfg.pivot, counter, cfg.method, cfg.workers)
    else:
        sol = solve_all(A, b, cfg.group_size, k, cfg.pivot, counter, cfg.method, cfg.workers)
    values = sol.as_strings()
    if cfg.format == "json":
        return json.dumps({"command": "solve", "n": A.rows, "backend": A.backend.value, "k": k,
                           "pivot": cfg.pivot, "solution": {str(i): v for i, v in values.items()},
                           "ops": counter.as_dict()}) + "\n"
    if cfg.format == "csv":
        return _csv([{"variable": f"x{i}", "value": v} for i, v in values.items()])
    lines = [f"x{i}={v}" for i, v in values.items()]
    return "\n".join(lines) + f"\n{_ops_line(counter)}\n"


def _run_bench(cfg: RunConfig) -> str:
    ns = cfg.ns or [128]
    ks = cfg.ks or ([cfg.k] if isinstance(cfg.k, int) else [1, 2, 4, 8])
    rows = [complexity.measured_vs_model(n, k, cfg.seed, cfg.pivot, cfg.workers).as_dict()
            for n in ns for k in ks if k < n]
    if cfg.format == "json":
        return json.dumps(rows) + "\n"
    if cfg.format == "csv":
        return _csv(rows)
    out = [f"{'n':>6} {'k':>4} {'measured_mul':>14} {'measured_add':>14} {'model_mul':>14} {'deviation':>10}"]
    for r in rows:
        out.append(f"{r['n']:>6} {r['k']:>4} {r['measured_mul']:>14} {r['measured_add']:>14} "
                   f"{r['model_mul']:>14} {r['deviation']:>+10.4f}")
    return "\n".join(out) + "\n"


def _run_optimal_k(cfg: RunConfig) -> str:
    ns = cfg.ns or [100, 500, 1000, 5000, 20000]
    rows = complexity.optimal_k_table(ns, count_adds=cfg.count_adds)
    if cfg.format == "json":
        return json.dumps(rows) + "\n"
    if cfg.format == "csv":
        return _csv(rows)
    out = [f"{'n':>8} {'k_opt':>6} {'model_cost':>22}"]
    for r in rows:
        out.append(f"{r['n']:>8} {r['k_opt']:>6} {r['model_cost']:>22}")
    return "\n".join(out) + "\n"


_RUNNERS = {"det": _run_det, "solve": _run_solve, "bench": _run_bench, "optimal-k": _run_optimal_k}


def _error_output(cfg_format: str, error_class: str, message: str) -> str:
    if cfg_format == "json":
        return json.dumps({"error": error_class, "message": message}) + "\n"
    return f"error[{error_class}]: {message}\n"


def run(cfg: RunConfig) -> tuple[int, str, str]:
    """Execute one command. Returns (exit code, stdout text, stderr text)."""
    try:
        return 0, _RUNNERS[cfg.command](cfg), ""
    except KChioError as exc:
        return EXIT_CODES.get(exc.error_class, 1), "", _error_output(cfg.format, exc.error_class, str(exc))
    except OSError as exc:
        return EXIT_CODES["parse"], "", _error_output(cfg.format, "io", str(exc))
    except (ValueError, ZeroDivisionError) as exc:
        return 2, "", _error_output(cfg.format, "usage", str(exc))


def _int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.replace(",", " ").split()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _k_arg(text: str):
    if text == "auto":
        return "auto"
    try:
        k = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError("k must be a positive integer or 'auto'")
    if k < 1:
        raise argparse.ArgumentTypeError("k must be >= 1")
    return k


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--k", type=_k_arg, default="auto", help="pivot block size, or 'auto' (cost model)")
    common.add_argument("--backend", choices=[b.value for b in Backend], default=None)
    common.add_argument("--pivot", choices=STRATEGIES, default=GREEDY)
    common.add_argument("--workers", type=int, default=1)
    common.add_argument("--format", choices=FORMATS, default="text")
    common.add_argument("--seed", type=int, default=0)

    parser = argparse.ArgumentParser(prog="kchio", description="Determinants and linear systems by K-Chio condensation.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("det", parents=[common], help="determinant of a matrix file")
    p.add_argument("matrix")

    p = sub.add_parser("solve", parents=[common], help="solve A x = b")
    p.add_argument("matrix")
    p.add_argument("rhs")
    group = p.add_mutually_exclusive_group()
    group.add_argument("--targets", type=_int_list, help="unknowns to solve for, e.g. 2,4,6")
    group.add_argument("--group-size", type=int)
    p.add_argument("--method", choices=METHODS, default=GAUSSIAN)

    p = sub.add_parser("bench", parents=[common], help="measured operation counts vs the cost model")
    p.add_argument("--n", type=_int_list, default=None, help="matrix orders (default 128)")
    p.add_argument("--ks", type=_int_list, default=None, help="block sizes (default 1,2,4,8)")

    p = sub.add_parser("optimal-k", parents=[common], help="model-optimal block size over a dimension sweep")
    p.add_argument("--n", type=_int_list, default=None, help="matrix orders")
    p.add_argument("--count-adds", action="store_true", help="minimise mult/div plus add/sub")
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    return RunConfig(
        command=args.command,
        k=args.k,
        backend=args.backend,
        pivot=args.pivot,
        targets=getattr(args, "targets", None),
        group_size=getattr(args, "group_size", None),
        workers=args.workers,
        matrix_path=getattr(args, "matrix", None),
        vector_path=getattr(args, "rhs", None),
        format=args.format,
        seed=args.seed,
        method=getattr(args, "method", GAUSSIAN),
        ns=getattr(args, "n", None) or [],
        ks=getattr(args, "ks", None) or [],
        count_adds=getattr(args, "count_adds", False),
    )


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = config_from_args(args)
    except ValueError as exc:
        parser.error(str(exc))
    code, out, err = run(cfg)
    sys.stdout.write(out)
    sys.stderr.write(err)
    return code


if __name__ == "__main__":
    sys.exit(main())
