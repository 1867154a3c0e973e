"""Reference computations that share no code with the package."""
from __future__ import annotations

import random
from fractions import Fraction
from functools import lru_cache


def laplace_det(rows):
    """Cofactor expansion along successive rows, memoised on the set of used columns."""
    n = len(rows)
    rows = tuple(tuple(r) for r in rows)

    @lru_cache(maxsize=None)
    def expand(i, used):
        if i == n:
            return 1
        total = 0
        sign = 1
        for j in range(n):
            if used >> j & 1:
                continue
            a = rows[i][j]
            if a:
                total += sign * a * expand(i + 1, used | (1 << j))
            sign = -sign
        return total

    return expand(0, 0)


def gauss_jordan(rows, rhs):
    """Exact solution of a nonsingular system, or None if singular."""
    n = len(rows)
    m = [[Fraction(v) for v in r] + [Fraction(b)] for r, b in zip(rows, rhs)]
    for c in range(n):
        p = next((r for r in range(c, n) if m[r][c] != 0), None)
        if p is None:
            return None
        m[c], m[p] = m[p], m[c]
        piv = m[c][c]
        m[c] = [v / piv for v in m[c]]
        for r in range(n):
            if r != c and m[r][c] != 0:
                f = m[r][c]
                m[r] = [a - f * b for a, b in zip(m[r], m[c])]
    return [m[i][n] for i in range(n)]


def bordered(rows, I, J, p, q):
    """(k+1) x (k+1) bordered block, 1-based indices."""
    ri = [i - 1 for i in I] + [p - 1]
    ci = [j - 1 for j in J] + [q - 1]
    return [[rows[i][j] for j in ci] for i in ri]


def submatrix(rows, I, J):
    return [[rows[i - 1][j - 1] for j in J] for i in I]


def replace_column(rows, j, col):
    return [list(r[:j]) + [c] + list(r[j + 1:]) for r, c in zip(rows, col)]


def random_int_matrix(rng: random.Random, n: int, lo: int = -9, hi: int = 9):
    return [[rng.randint(lo, hi) for _ in range(n)] for _ in range(n)]


def random_selection(rng: random.Random, n: int, k: int):
    I = tuple(sorted(rng.sample(range(1, n + 1), k)))
    J = tuple(sorted(rng.sample(range(1, n + 1), k)))
    return I, J


def permutation_parity_to_front(idx, n):
    """Parity of listing idx first, then the rest, computed by bubble counting."""
    order = list(idx) + [i for i in range(1, n + 1) if i not in idx]
    inv = 0
    for a in range(n):
        for b in range(a + 1, n):
            if order[a] > order[b]:
                inv += 1
    return inv % 2


def diag_dominant(rng: random.Random, n: int):
    rows = [[rng.randint(-9, 9) for _ in range(n)] for _ in range(n)]
    for i in range(n):
        rows[i][i] = rng.choice((-1, 1)) * (9 * n + rng.randint(1, 9))
    return rows
