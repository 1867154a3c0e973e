"""Small dense kernels: determinants and direct solvers on row lists.

All functions take plain lists of rows plus a backend, and tally their
arithmetic on an optional :class:`~kchio.scalar.OpCounter`. Pivoting: the
float backend uses partial pivoting (largest magnitude in the column), the
exact backend takes the first nonzero entry.
"""
from __future__ import annotations

from typing import Sequence

from .errors import SingularSystemError
from .scalar import Backend, Number, OpCounter


def _pivot_row(m: list[list[Number]], c: int, backend: Backend) -> int:
    n = len(m)
    if backend is Backend.FLOAT:
        best, best_abs = c, abs(m[c][c])
        for r in range(c + 1, n):
            a = abs(m[r][c])
            if a > best_abs:
                best, best_abs = r, a
        return best
    for r in range(c, n):
        if m[r][c] != 0:
            return r
    return c


def _bareiss_det(m: list[list[int]], counter: OpCounter | None) -> int:
    # fraction-free elimination; every division is exact
    n = len(m)
    negate = False
    prev = 1
    muls = adds = 0
    for c in range(n - 1):
        p = c
        while p < n and m[p][c] == 0:
            p += 1
        if p == n:
            if counter is not None:
                counter.mul(muls)
                counter.add(adds)
            return 0
        if p != c:
            m[p], m[c] = m[c], m[p]
            negate = not negate
        prow = m[c]
        pv = prow[c]
        for r in range(c + 1, n):
            row = m[r]
            x = row[c]
            for j in range(c + 1, n):
                row[j] = (pv * row[j] - x * prow[j]) // prev
        width = (n - c - 1) ** 2
        muls += 3 * width
        adds += width
        prev = pv
    if counter is not None:
        counter.mul(muls)
        counter.add(adds)
    return -m[n - 1][n - 1] if negate else m[n - 1][n - 1]


def elimination_det(rows: Sequence[Sequence[Number]], backend: Backend,
                    counter: OpCounter | None = None) -> Number:
    """Determinant by Gaussian elimination.

    A k x k determinant costs (k^3 - k)/3 + (k - 1) multiplications/divisions
    when no zero sub-column entries are skipped. All-integer exact input goes
    through fraction-free (Bareiss) elimination instead, at 3 mult/div per
    update.
    """
    n = len(rows)
    if n == 0:
        return backend.one()
    if n == 1:
        return rows[0][0]
    m = [list(r) for r in rows]
    if backend is Backend.EXACT and all(type(v) is int for r in m for v in r):
        return _bareiss_det(m, counter)
    div = backend.div
    muls = adds = 0
    negate = False
    zero = False
    for c in range(n - 1):
        p = _pivot_row(m, c, backend)
        if m[p][c] == 0:
            zero = True
            break
        if p != c:
            m[p], m[c] = m[c], m[p]
            negate = not negate
        prow = m[c]
        pv = prow[c]
        width = n - c - 1
        for r in range(c + 1, n):
            row = m[r]
            x = row[c]
            if x == 0:
                continue
            f = div(x, pv)
            for j in range(c + 1, n):
                row[j] -= f * prow[j]
            muls += 1 + width
            adds += width
    if counter is not None:
        counter.mul(muls)
        counter.add(adds)
    if zero:
        return backend.zero()
    det = m[0][0]
    for i in range(1, n):
        det *= m[i][i]
    if counter is not None:
        counter.mul(n - 1)
    return -det if negate else det


def cofactor_det(rows: Sequence[Sequence[Number]], counter: OpCounter | None = None) -> Number:
    """Laplace expansion along the first row. Exponential; meant for n <= 3."""
    n = len(rows)
    if n == 1:
        return rows[0][0]
    if n == 2:
        if counter is not None:
            counter.mul(2)
            counter.add(1)
        return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    total = None
    for j in range(n):
        minor = [r[:j] + r[j + 1:] for r in (list(x) for x in rows[1:])]
        term = rows[0][j] * cofactor_det(minor, counter)
        if counter is not None:
            counter.mul()
        if total is None:
            total = term
        else:
            total = total - term if j % 2 else total + term
            if counter is not None:
                counter.add()
    return total


def gaussian_solve(rows: Sequence[Sequence[Number]], rhs: Sequence[Number], backend: Backend,
                   counter: OpCounter | None = None) -> list[Number]:
    """Solve a square system by forward elimination and back substitution."""
    n = len(rows)
    if len(rhs) != n or any(len(r) != n for r in rows):
        raise ValueError("gaussian_solve needs a square system with matching right-hand side")
    m = [list(r) + [b] for r, b in zip(rows, rhs)]
    div = backend.div
    muls = adds = 0
    for c in range(n):
        p = _pivot_row(m, c, backend)
        if m[p][c] == 0:
            raise SingularSystemError(f"singular system (no pivot in column {c + 1})")
        if p != c:
            m[p], m[c] = m[c], m[p]
        prow = m[c]
        pv = prow[c]
        width = n - c
        for r in range(c + 1, n):
            row = m[r]
            x = row[c]
            if x == 0:
                continue
            f = div(x, pv)
            for j in range(c + 1, n + 1):
                row[j] -= f * prow[j]
            muls += 1 + width
            adds += width
    x: list[Number] = [backend.zero()] * n
    for i in range(n - 1, -1, -1):
        row = m[i]
        s = row[n]
        for j in range(i + 1, n):
            s -= row[j] * x[j]
        muls += n - i - 1
        adds += n - i - 1
        x[i] = div(s, row[i])
        muls += 1
    if counter is not None:
        counter.mul(muls)
        counter.add(adds)
    return [backend.canonical(v) for v in x]


def cramer_solve(rows: Sequence[Sequence[Number]], rhs: Sequence[Number], backend: Backend,
                 counter: OpCounter | None = None) -> list[Number]:
    """x_i = det(A_i(b)) / det(A), each determinant by elimination."""
    n = len(rows)
    if len(rhs) != n or any(len(r) != n for r in rows):
        raise ValueError("cramer_solve needs a square system with matching right-hand side")
    det = elimination_det(rows, backend, counter)
    if det == 0:
        raise SingularSystemError("singular system (zero determinant)")
    out = []
    for i in range(n):
        replaced = [list(r[:i]) + [b] + list(r[i + 1:]) for r, b in zip(rows, rhs)]
        out.append(backend.canonical(backend.div(elimination_det(replaced, backend, counter), det)))
        if counter is not None:
            counter.mul()
    return out
