"""Linear systems by condensation.

Condensing A x = b with a nonsingular pivot block A[I, J] gives a smaller system
C_hat x_{J'} = b_hat whose solution is exactly the J' part of x. The right-hand
side is condensed with the same row cofactors as the matrix, so b behaves like
one more column. Repeating this on the condensed system narrows the unknowns
further; variable labels are carried along so they always refer to the
original system.
"""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .condense import GREEDY, _check_selection, _condense_rows, _fraction_free_step, _normalize, _select
from .dense import cramer_solve, gaussian_solve
from .errors import SingularPivotError
from .matrix import IndexSelection, Matrix, as_vector
from .scalar import Backend, Number, OpCounter, counter_merge, format_value

TERMINAL_SOLVE_SIZE = 4
GAUSSIAN = "gaussian"
CRAMER = "cramer"
METHODS = (GAUSSIAN, CRAMER)


@dataclass(frozen=True)
class CondensedSystem:
    C: Matrix
    b: tuple
    unknown_labels: tuple[int, ...]
    pivot_det: Number = None

    def __post_init__(self):
        size = self.C.rows
        if self.C.cols != size or len(self.b) != size or len(self.unknown_labels) != size:
            raise ValueError("condensed system dimensions disagree")
        if any(b <= a for a, b in zip(self.unknown_labels, self.unknown_labels[1:])):
            raise ValueError("unknown labels must be strictly increasing")


@dataclass
class Solution:
    assignments: dict[int, Number]
    backend: Backend = Backend.EXACT
    counter: OpCounter = field(default_factory=OpCounter)

    def __getitem__(self, var: int) -> Number:
        return self.assignments[var]

    def as_strings(self) -> dict[int, str]:
        return {i: format_value(v, self.backend) for i, v in sorted(self.assignments.items())}

    def vector(self) -> list[Number]:
        return [self.assignments[i] for i in sorted(self.assignments)]


def _rhs(A: Matrix, b: Sequence) -> list[Number]:
    vec = as_vector(b, A.backend)
    if len(vec) != A.rows:
        raise ValueError(f"right-hand side has {len(vec)} entries, matrix has {A.rows} rows")
    return vec


def condense_rhs(A: Matrix, b: Sequence, sel: IndexSelection,
                 counter: OpCounter | None = None, workers: int = 1) -> list[Number]:
    """b'_p = det of A0 bordered by column b[I] and row (A[p, J], b_p), for p in I'."""
    _check_selection(A, sel)
    counter = counter if counter is not None else OpCounter()
    vec = _rhs(A, b)
    # the cofactor pass also produces matrix columns; only the rhs is kept
    rows = [list(r) for r in A.row_list()]
    _, _, ext = _condense_rows(rows, sel.rows0(), sel.cols0(), A.backend, counter, workers,
                               extra=[vec])
    canon = A.backend.canonical
    return [canon(v) for v in ext[0]]


def condense_system(A: Matrix, b: Sequence, sel: IndexSelection,
                    counter: OpCounter | None = None, workers: int = 1,
                    labels: Sequence[int] | None = None) -> CondensedSystem:
    """Condense A x = b on the pivot block A[I, J].

    ``labels`` names the unknowns of this system (default 1..n); the result's
    ``unknown_labels`` are the labels of J'.
    """
    _check_selection(A, sel)
    counter = counter if counter is not None else OpCounter()
    vec = _rhs(A, b)
    labels = tuple(labels) if labels is not None else tuple(range(1, A.rows + 1))
    if len(labels) != A.rows:
        raise ValueError("one label per unknown required")
    rows, det_a0, ext = _condense_rows(A.row_list(), sel.rows0(), sel.cols0(), A.backend,
                                       counter, workers, extra=[vec])
    if det_a0 == 0:
        raise SingularPivotError(f"pivot block A[{sel.I}, {sel.J}] is singular; choose another selection")
    canon = A.backend.canonical
    return CondensedSystem(
        C=Matrix._trusted(rows, A.backend),
        b=tuple(ext[0]),
        unknown_labels=tuple(labels[j] for j in sel.cols0_prime()),
        pivot_det=canon(det_a0),
    )


def terminal_solve(C: Matrix, d: Sequence, method: str = GAUSSIAN,
                   counter: OpCounter | None = None) -> list[Number]:
    if not C.is_square:
        raise ValueError("terminal_solve needs a square matrix")
    vec = _rhs(C, d)
    if method == GAUSSIAN:
        return gaussian_solve(C.row_list(), vec, C.backend, counter)
    if method == CRAMER:
        return cramer_solve(C.row_list(), vec, C.backend, counter)
    raise ValueError(f"unknown terminal method {method!r}")


def _targets(targets, n: int) -> tuple[int, ...]:
    if targets is None or targets == "all":
        return tuple(range(1, n + 1))
    out = tuple(sorted(set(int(t) for t in targets)))
    if not out:
        raise ValueError("no target unknowns given")
    for t in out:
        if not 1 <= t <= n:
            raise ValueError(f"target x{t} outside 1..{n}")
    return out


def solve_for(A: Matrix, b: Sequence, targets: Iterable[int] | None = None, k: int = 1,
              strategy: str = GREEDY, counter: OpCounter | None = None,
              method: str = GAUSSIAN, workers: int = 1) -> Solution:
    """Solve for the unknowns in ``targets`` (1-based) only.

    Pivot columns are taken from non-target unknowns so the targets survive
    every condensation. Condensation repeats while the system is larger than
    both the target count and the terminal size. Between steps the exact backend
    divides out the previous cumulative pivot minor (fraction-free, integers stay
    integers); the float backend divides each condensed row by its pivot
    determinant. If no nonsingular block avoids the targets, k is reduced, down
    to solving the current system directly.
    """
    if not A.is_square:
        raise ValueError("solve_for needs a square matrix")
    if k < 1:
        raise ValueError("block size k must be >= 1")
    counter = counter if counter is not None else OpCounter()
    backend = A.backend
    tset = _targets(targets, A.rows)
    wanted = set(tset)
    rows = [list(r) for r in A.row_list()]
    rhs = _rhs(A, b)
    labels = list(range(1, A.rows + 1))
    prev: Number = 1

    while len(rows) > max(len(tset), TERMINAL_SOLVE_SIZE):
        size = len(rows)
        allowed = [c for c in range(size) if labels[c] not in wanted]
        ks = min(k, size - len(tset))
        picked = None
        while ks >= 1:
            try:
                picked = _select(rows, ks, strategy, backend, allowed)
                break
            except SingularPivotError:
                ks -= 1
        if picked is None:
            break
        I0, J0 = picked
        condensed, det_a0, ext = _condense_rows(rows, I0, J0, backend, counter, workers,
                                                extra=[rhs])
        if det_a0 == 0:
            break
        if backend is Backend.EXACT:
            rows, rhs, prev = _fraction_free_step(condensed, det_a0, prev, ks, counter, ext[0])
        else:
            rows, rhs = _normalize(condensed, ext[0], det_a0, backend, counter)
        dropped = set(J0)
        labels = [lab for c, lab in enumerate(labels) if c not in dropped]

    x = terminal_solve(Matrix._trusted(rows, backend), rhs, method, counter)
    values = dict(zip(labels, x))
    return Solution({t: values[t] for t in tset}, backend, counter)


def solve_all(A: Matrix, b: Sequence, group_size: int | None = None, k: int = 1,
              strategy: str = GREEDY, counter: OpCounter | None = None,
              method: str = GAUSSIAN, workers: int = 1) -> Solution:
    """Solve for every unknown, in independent groups of at most ``group_size``.

    Groups are contiguous runs of unknowns; each is solved by :func:`solve_for`
    on the shared (immutable) system, concurrently when ``workers`` > 1.
    """
    n = A.rows
    group_size = n if group_size is None else group_size
    if group_size < 1:
        raise ValueError("group_size must be >= 1")
    counter = counter if counter is not None else OpCounter()
    groups = [tuple(range(s, min(s + group_size, n + 1))) for s in range(1, n + 1, group_size)]

    def run(group):
        local = OpCounter()
        return solve_for(A, b, group, k, strategy, local, method), local

    if workers > 1 and len(groups) > 1:
        with ThreadPoolExecutor(max_workers=min(workers, len(groups))) as pool:
            results = list(pool.map(run, groups))
    else:
        results = [run(g) for g in groups]
    merged: dict[int, Number] = {}
    for sol, _ in results:
        merged.update(sol.assignments)
    counter.absorb(counter_merge(c for _, c in results))
    return Solution(dict(sorted(merged.items())), A.backend, counter)

