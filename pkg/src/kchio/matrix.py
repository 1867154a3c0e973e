"""Dense matrices and ordered index selections.

Public index lists (``I``, ``J``, unknown labels) are 1-based, matching the
usual mathematical notation a_ij, i, j = 1..n. Kernels use 0-based offsets
internally.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import BackendMismatchError, IndexSelectionError
from .scalar import Backend, Number, format_value, infer_backend


class Matrix:
    """Immutable dense row-major matrix with a single scalar backend."""

    __slots__ = ("rows", "cols", "backend", "_rows")

    def __init__(self, data: Iterable[Iterable], backend: Backend | str | None = None):
        rows = [list(r) for r in data]
        if not rows or not rows[0]:
            raise ValueError("matrix must have at least one row and one column")
        cols = len(rows[0])
        for i, r in enumerate(rows):
            if len(r) != cols:
                raise ValueError(f"row {i + 1} has {len(r)} entries, expected {cols}")
        if backend is None:
            backend = infer_backend(v for r in rows for v in r)
        backend = Backend(backend)
        conv = backend.coerce
        if backend is Backend.EXACT:
            def conv(v, _c=backend.coerce):
                v = _c(v)
                return v.numerator if v.denominator == 1 else v
        self._rows = tuple(tuple(conv(v) for v in r) for r in rows)
        self.rows = len(rows)
        self.cols = cols
        self.backend = backend

    @classmethod
    def _trusted(cls, rows: Sequence[Sequence[Number]], backend: Backend) -> Matrix:
        # kernel outputs: already coerced, skip validation
        self = cls.__new__(cls)
        self._rows = tuple(tuple(r) for r in rows)
        self.rows = len(self._rows)
        self.cols = len(self._rows[0]) if self._rows else 0
        self.backend = backend
        return self

    @classmethod
    def identity(cls, n: int, backend: Backend | str = Backend.EXACT) -> Matrix:
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)], backend)

    @classmethod
    def zeros(cls, rows: int, cols: int, backend: Backend | str = Backend.EXACT) -> Matrix:
        return cls([[0] * cols for _ in range(rows)], backend)

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    @property
    def data(self) -> tuple:
        """Flat row-major entries."""
        return tuple(v for r in self._rows for v in r)

    def row(self, i: int) -> tuple:
        return self._rows[i]

    def row_list(self) -> tuple[tuple, ...]:
        return self._rows

    def tolist(self) -> list[list]:
        return [list(r) for r in self._rows]

    def astype(self, backend: Backend | str) -> Matrix:
        return Matrix(self._rows, backend)

    def __getitem__(self, ij: tuple[int, int]) -> Number:
        i, j = ij
        return self._rows[i][j]

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.backend is other.backend and self._rows == other._rows

    def __hash__(self):
        return hash((self.backend, self._rows))

    def __repr__(self) -> str:
        body = "; ".join(" ".join(format_value(v, self.backend) for v in r) for r in self._rows)
        return f"Matrix({self.rows}x{self.cols}, {self.backend.value}: [{body}])"


def as_vector(values: Iterable, backend: Backend) -> list[Number]:
    """Coerce a right-hand side into ``backend``; floats never become exact silently."""
    out = []
    for v in values:
        if backend is Backend.EXACT and isinstance(v, float):
            raise BackendMismatchError("float entry in an exact right-hand side")
        v = backend.coerce(v)
        if isinstance(v, Fraction) and v.denominator == 1:
            v = v.numerator
        out.append(v)
    return out


def check_index_list(idx: Sequence[int], n: int, name: str = "index list") -> tuple[int, ...]:
    idx = tuple(int(i) for i in idx)
    for a, b in zip(idx, idx[1:]):
        if b <= a:
            raise IndexSelectionError(f"{name} must be strictly increasing, got {idx}")
    for i in idx:
        if not 1 <= i <= n:
            raise IndexSelectionError(f"{name} entry {i} outside 1..{n}")
    return idx


def complement(idx: Sequence[int], n: int) -> tuple[int, ...]:
    taken = set(idx)
    return tuple(i for i in range(1, n + 1) if i not in taken)


def _inversions_to_front(idx: Sequence[int], n: int) -> int:
    # parity of the permutation listing idx first, then its complement
    rest = complement(idx, n)
    count = 0
    for i in idx:
        count += sum(1 for r in rest if r < i)
    return count


@dataclass(frozen=True)
class IndexSelection:
    """Ordered pivot rows ``I`` and columns ``J`` (1-based) inside an n x n matrix."""

    I: tuple[int, ...]
    J: tuple[int, ...]
    n: int

    def __post_init__(self):
        I = check_index_list(self.I, self.n, "I")
        J = check_index_list(self.J, self.n, "J")
        if len(I) != len(J):
            raise IndexSelectionError(f"I and J differ in length ({len(I)} vs {len(J)})")
        if not 1 <= len(I) <= self.n - 1:
            raise IndexSelectionError(f"block size must satisfy 1 <= k <= n-1, got k={len(I)}, n={self.n}")
        object.__setattr__(self, "I", I)
        object.__setattr__(self, "J", J)

    @property
    def k(self) -> int:
        return len(self.I)

    @property
    def I_prime(self) -> tuple[int, ...]:
        return complement(self.I, self.n)

    @property
    def J_prime(self) -> tuple[int, ...]:
        return complement(self.J, self.n)

    @property
    def sign(self) -> int:
        """Sign relating det(C_hat) to (det A0)^(n-k-1) det A for this selection.

        Moving rows I and columns J to the leading position (keeping the
        relative order of the rest) is a permutation whose parity this returns.
        """
        parity = _inversions_to_front(self.I, self.n) + _inversions_to_front(self.J, self.n)
        return -1 if parity % 2 else 1

    # 0-based views for kernels
    def rows0(self) -> list[int]:
        return [i - 1 for i in self.I]

    def cols0(self) -> list[int]:
        return [j - 1 for j in self.J]

    def rows0_prime(self) -> list[int]:
        return [i - 1 for i in self.I_prime]

    def cols0_prime(self) -> list[int]:
        return [j - 1 for j in self.J_prime]


def extract_submatrix(A: Matrix, I: Sequence[int], J: Sequence[int]) -> Matrix:
    """A[I, J] for 1-based, strictly increasing index lists."""
    I = check_index_list(I, A.rows, "I")
    J = check_index_list(J, A.cols, "J")
    if not I or not J:
        raise IndexSelectionError("index lists must be non-empty")
    rows = A.row_list()
    return Matrix._trusted([[rows[i - 1][j - 1] for j in J] for i in I], A.backend)
