"""Determinant condensation by Sylvester's identity.

For a nonsingular pivot block A0 = A[I, J] of size k, every entry of the
condensed matrix C_hat is the (k+1) x (k+1) determinant that borders A0 with
one more row p (from I') and one more column q (from J'). Then

    (det A0)^(n-k-1) * det A = sign(I, J) * det C_hat

where sign(I, J) is +1 for the leading block. Block size k = 1 with the pivot
in the bottom-right corner is Chio's method.

Rows of C_hat are formed with the row-cofactor scheme: for a row p, the k
signed minors cof_j = -det(A0 with row j replaced by A[p, J]) are computed
once, and the whole row is the inner product

    [cof_1, ..., cof_k, det A0] . [A[I, J'] ; A[p, J']]

so each row is an independent unit of work.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from ._parallel import run_partitioned
from .dense import cofactor_det, elimination_det
from .errors import IndexSelectionError, RankDeficientError, SingularPivotError
from .matrix import IndexSelection, Matrix, check_index_list
from .scalar import Backend, Number, OpCounter

TERMINAL_SIZE = 3

LEADING = "leading"
GREEDY = "greedy"
STRATEGIES = (LEADING, GREEDY)


@dataclass(frozen=True)
class RowCofactors:
    cof: tuple
    det_A0: Number
    row_index: int  # 1-based p


def _require_square(A: Matrix) -> None:
    if not A.is_square:
        raise ValueError(f"expected a square matrix, got {A.rows}x{A.cols}")


def _check_selection(A: Matrix, sel: IndexSelection) -> None:
    _require_square(A)
    if sel.n != A.rows:
        raise IndexSelectionError(f"selection built for n={sel.n}, matrix is {A.rows}x{A.cols}")


def hat_entry(A: Matrix, sel: IndexSelection, p: int, q: int) -> Number:
    """One condensed entry as the determinant of A0 bordered by row p and column q."""
    _check_selection(A, sel)
    if p in sel.I or not 1 <= p <= sel.n:
        raise IndexSelectionError(f"row {p} is not in I'")
    if q in sel.J or not 1 <= q <= sel.n:
        raise IndexSelectionError(f"column {q} is not in J'")
    rows = A.row_list()
    ri = sel.rows0() + [p - 1]
    ci = sel.cols0() + [q - 1]
    bordered = [[rows[i][j] for j in ci] for i in ri]
    return A.backend.canonical(elimination_det(bordered, A.backend))


def _cofactors(rows, I0: Sequence[int], J0: Sequence[int], p: int, backend: Backend,
               counter: OpCounter) -> list[Number]:
    a0 = [[rows[i][j] for j in J0] for i in I0]
    rp = [rows[p][j] for j in J0]
    out = []
    for j in range(len(I0)):
        replaced = a0[:j] + [rp] + a0[j + 1:]
        out.append(-elimination_det(replaced, backend, counter))
    return out


def row_cofactors(A: Matrix, sel: IndexSelection, p: int,
                  counter: OpCounter | None = None) -> RowCofactors:
    _check_selection(A, sel)
    if p in sel.I or not 1 <= p <= sel.n:
        raise IndexSelectionError(f"row {p} is not in I'")
    counter = counter if counter is not None else OpCounter()
    rows = A.row_list()
    I0, J0 = sel.rows0(), sel.cols0()
    det_a0 = elimination_det([[rows[i][j] for j in J0] for i in I0], A.backend, counter)
    cof = _cofactors(rows, I0, J0, p - 1, A.backend, counter)
    canon = A.backend.canonical
    return RowCofactors(tuple(canon(c) for c in cof), canon(det_a0), p)


def _condense_rows(rows, I0: Sequence[int], J0: Sequence[int], backend: Backend,
                   counter: OpCounter, workers: int = 1,
                   extra: Sequence[Sequence[Number]] = ()):
    """Core row-cofactor pass on 0-based indices.

    ``extra`` holds additional length-n columns (right-hand sides) condensed with
    the same cofactors. Returns (condensed rows, det A0, condensed extras) where
    condensed extras are indexed [column][row].
    """
    n = len(rows)
    taken_r, taken_c = set(I0), set(J0)
    rp_list = [i for i in range(n) if i not in taken_r]
    cq_list = [j for j in range(n) if j not in taken_c]
    k = len(I0)
    det_a0 = elimination_det([[rows[i][j] for j in J0] for i in I0], backend, counter)
    top = [rows[i] for i in I0]
    top_extra = [[col[i] for i in I0] for col in extra]
    width = len(cq_list) + len(extra)

    def one_row(p: int, local: OpCounter):
        cof = _cofactors(rows, I0, J0, p, backend, local)
        rp = rows[p]
        out = []
        for q in cq_list:
            s = cof[0] * top[0][q]
            for j in range(1, k):
                s += cof[j] * top[j][q]
            out.append(s + det_a0 * rp[q])
        ext = []
        for col, tcol in zip(extra, top_extra):
            s = cof[0] * tcol[0]
            for j in range(1, k):
                s += cof[j] * tcol[j]
            ext.append(s + det_a0 * col[p])
        local.mul((k + 1) * width)
        local.add(k * width)
        return out, ext

    results = run_partitioned(rp_list, one_row, workers, counter)
    condensed = [r for r, _ in results]
    ext_cols = [[e[c] for _, e in results] for c in range(len(extra))]
    return condensed, det_a0, ext_cols


def condense(A: Matrix, sel: IndexSelection, counter: OpCounter | None = None,
             workers: int = 1) -> Matrix:
    """Condensed matrix C_hat for the pivot block A[I, J], rows over I', columns over J'."""
    _check_selection(A, sel)
    counter = counter if counter is not None else OpCounter()
    rows, _, _ = _condense_rows(A.row_list(), sel.rows0(), sel.cols0(), A.backend, counter, workers)
    return Matrix._trusted(rows, A.backend)


def _chio_rows(rows, counter: OpCounter, workers: int = 1):
    n = len(rows)
    last = rows[n - 1]
    pivot = last[n - 1]

    def one_row(i: int, local: OpCounter):
        r = rows[i]
        a_in = r[n - 1]
        local.mul(2 * (n - 1))
        local.add(n - 1)
        return [r[j] * pivot - a_in * last[j] for j in range(n - 1)]

    return run_partitioned(range(n - 1), one_row, workers, counter)


def condense_chio(A: Matrix, counter: OpCounter | None = None, workers: int = 1) -> Matrix:
    """Chio condensation on the bottom-right pivot: e_ij = a_ij a_nn - a_in a_nj."""
    _require_square(A)
    if A.rows < 2:
        raise ValueError("Chio condensation needs n >= 2")
    counter = counter if counter is not None else OpCounter()
    return Matrix._trusted(_chio_rows(A.row_list(), counter, workers), A.backend)


def _normalize(rows, rhs, det_a0, backend: Backend, counter: OpCounter):
    if det_a0 == 0:
        raise ZeroDivisionError("cannot normalize rows by a zero pivot determinant")
    div = backend.div
    out = [[div(v, det_a0) for v in r] for r in rows]
    b = [div(v, det_a0) for v in rhs]
    counter.mul(sum(len(r) for r in rows) + len(b))
    return out, b


def normalize_rows(C: Matrix, rhs: Sequence[Number] | None, det_A0: Number,
                   counter: OpCounter | None = None) -> tuple[Matrix, list]:
    """Divide every row (and right-hand side entry) of a condensed system by det A0."""
    counter = counter if counter is not None else OpCounter()
    rows, b = _normalize(C.row_list(), list(rhs or ()), det_A0, C.backend, counter)
    canon = C.backend.canonical
    return Matrix._trusted([[canon(v) for v in r] for r in rows], C.backend), [canon(v) for v in b]


def _greedy_pivots(rows, k: int, backend: Backend, allowed_cols: Sequence[int]):
    # complete pivoting on a scratch copy; the chosen block's determinant is
    # +-(product of pivots), hence nonzero
    n = len(rows)
    work = [list(r) for r in rows]
    free_rows = list(range(n))
    free_cols = list(allowed_cols)
    I0, J0 = [], []
    div = backend.div
    for step in range(k):
        best, br, bc = None, -1, -1
        for r in free_rows:
            wr = work[r]
            for c in free_cols:
                a = abs(wr[c])
                if best is None or a > best:
                    best, br, bc = a, r, c
        if best is None or best == 0:
            raise RankDeficientError(f"no nonsingular {k}x{k} pivot block (rank < {k})")
        I0.append(br)
        J0.append(bc)
        free_rows.remove(br)
        free_cols.remove(bc)
        if step == k - 1:
            break
        prow = work[br]
        pv = prow[bc]
        for r in free_rows:
            wr = work[r]
            x = wr[bc]
            if x == 0:
                continue
            f = div(x, pv)
            for c in free_cols:
                wr[c] -= f * prow[c]
    return sorted(I0), sorted(J0)


def _select(rows, k: int, strategy: str, backend: Backend, allowed_cols: Sequence[int]):
    n = len(rows)
    if not 1 <= k <= n - 1:
        raise IndexSelectionError(f"block size must satisfy 1 <= k <= n-1, got k={k}, n={n}")
    if len(allowed_cols) < k:
        raise RankDeficientError(f"only {len(allowed_cols)} candidate columns for a {k}x{k} block")
    if strategy == LEADING:
        I0, J0 = list(range(k)), list(allowed_cols[:k])
        if elimination_det([[rows[i][j] for j in J0] for i in I0], backend) == 0:
            raise SingularPivotError("leading pivot block is singular; use greedy pivoting")
        return I0, J0
    if strategy == GREEDY:
        return _greedy_pivots(rows, k, backend, allowed_cols)
    raise ValueError(f"unknown pivot strategy {strategy!r}")


def select_pivot_block(A: Matrix, k: int, strategy: str = GREEDY,
                       allowed_cols: Sequence[int] | None = None) -> IndexSelection:
    """Choose a nonsingular k x k pivot block.

    ``leading`` takes I = (1..k) and the first k allowed columns and fails if that
    block is singular. ``greedy`` runs k steps of complete pivoting, so it finds a
    nonsingular block whenever rank(A) >= k. Pivot search arithmetic is not
    counted.
    """
    _require_square(A)
    n = A.rows
    if allowed_cols is None:
        cols0 = list(range(n))
    else:
        cols0 = [j - 1 for j in check_index_list(sorted(allowed_cols), n, "allowed_cols")]
    I0, J0 = _select(A.row_list(), k, strategy, A.backend, cols0)
    return IndexSelection(tuple(i + 1 for i in I0), tuple(j + 1 for j in J0), n)


def _exact_quotient(v: Number, divisor: Number) -> Number:
    if type(v) is int and type(divisor) is int:
        q, r = divmod(v, divisor)
        if r:
            raise ArithmeticError("fraction-free condensation produced an inexact quotient")
        return q
    q = Fraction(v) / divisor
    return q.numerator if q.denominator == 1 else q


def _fraction_free_step(rows, d: Number, prev: Number, k: int, counter: OpCounter,
                        extra: Sequence[Number] = ()):
    """Divide a freshly condensed exact matrix (and rhs) by prev^k.

    ``prev`` is the cumulative pivot minor D of the matrix that was condensed
    (1 for the original matrix). By Sylvester's identity every entry of the new
    matrix is prev^k times a minor of the original, so the division is exact.
    Returns (rows, extra, new cumulative minor d / prev^(k-1)).
    """
    if prev == 1:
        return rows, list(extra), d
    div = prev ** k
    rows = [[_exact_quotient(v, div) for v in r] for r in rows]
    extra = [_exact_quotient(v, div) for v in extra]
    counter.mul(sum(len(r) for r in rows) + len(extra) + 1)
    return rows, extra, _exact_quotient(d, prev ** (k - 1))


def _rescale_pow2(rows):
    # exact power-of-two scaling keeps float entries from overflowing across steps
    peak = max((abs(v) for r in rows for v in r), default=0.0)
    if peak == 0 or not math.isfinite(peak):
        return rows, 0
    e = math.frexp(peak)[1]
    if e == 0:
        return rows, 0
    return [[math.ldexp(v, -e) for v in r] for r in rows], e


def _pow_scaled(x: float, p: int) -> tuple[float, int]:
    """x**p as (mantissa, exponent) without intermediate overflow."""
    m, e = math.frexp(x)
    rm, re_ = 1.0, 0
    while p:
        if p & 1:
            rm, de = math.frexp(rm * m)
            re_ += de + e
        p >>= 1
        if p:
            m, de = math.frexp(m * m)
            e = 2 * e + de
    return rm, re_


def _finish_float(mant: float, exp2: int) -> float:
    m, e = math.frexp(mant)
    try:
        return math.ldexp(m, e + exp2)
    except OverflowError:
        return math.copysign(math.inf, m)


def determinant(A: Matrix, k: int = 1, strategy: str = GREEDY, counter: OpCounter | None = None,
                workers: int = 1) -> Number:
    """Determinant by repeated condensation with pivot blocks of size ``k``.

    Each step condenses the current n x n matrix with a block of size
    min(k, n - 1) until n <= 3; that matrix is expanded by cofactors.
    Block size 1 uses the Chio kernel with the pivot moved to the bottom-right.

    Exact backend: fraction-free. After each step the condensed matrix is
    divided exactly by D^k, where D is the cumulative pivot minor of the previous
    step, so its entries are themselves minors of A (integers for integer A).
    The single divisor D^(s-1) is applied once at the end.
    Float backend: condensed matrices are rescaled by powers of two and the
    determinant is carried as mantissa/exponent.

    A singular matrix yields 0. With the ``leading`` strategy a singular leading
    block raises :class:`SingularPivotError`.
    """
    _require_square(A)
    if k < 1:
        raise ValueError("block size k must be >= 1")
    counter = counter if counter is not None else OpCounter()
    backend = A.backend
    exact = backend is Backend.EXACT
    rows = [list(r) for r in A.row_list()]
    n = len(rows)
    sign_total = 1
    prev: Number = 1
    mant, exp2 = 1.0, 0
    all_cols = list(range(n))

    while n > TERMINAL_SIZE:
        ks = min(k, n - 1)
        try:
            I0, J0 = _select(rows, ks, strategy, backend, all_cols[:n])
        except RankDeficientError:
            return backend.canonical(backend.zero())
        if ks == 1:
            r, c = I0[0], J0[0]
            ro = [i for i in range(n) if i != r] + [r]
            co = [j for j in range(n) if j != c] + [c]
            permuted = [[rows[i][j] for j in co] for i in ro]
            sign = -1 if ((n - 1 - r) + (n - 1 - c)) % 2 else 1
            d = rows[r][c]
            condensed = _chio_rows(permuted, counter, workers)
        else:
            sel = IndexSelection(tuple(i + 1 for i in I0), tuple(j + 1 for j in J0), n)
            sign = sel.sign
            condensed, d, _ = _condense_rows(rows, I0, J0, backend, counter, workers)
        if d == 0:
            # only reachable through float round-off in the pivot determinant
            return backend.canonical(backend.zero())
        s = n - ks
        if exact:
            condensed, _, prev = _fraction_free_step(condensed, d, prev, ks, counter)
            sign_total *= sign
        else:
            # det(prev) = sign * 2^(e*s) * det(scaled) / d^(s-1)
            condensed, e = _rescale_pow2(condensed)
            pm, pe = _pow_scaled(d, s - 1)
            mant, de = math.frexp(sign * mant / pm)
            exp2 += de + e * s - pe
            counter.mul()
        rows, n = condensed, s

    tail = cofactor_det(rows, counter)
    if n < A.rows:
        counter.mul()  # combine the terminal value with the accumulated scale
    if exact:
        # det A = sign * det(S) / D^(n-1) for the current condensed matrix S
        return sign_total * Fraction(tail) / Fraction(prev) ** (n - 1)
    return _finish_float(mant * tail, exp2)
