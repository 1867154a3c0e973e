"""Operation-count model for K-Chio condensation and optimal block size search."""
from __future__ import annotations

import json
import random
from dataclasses import asdict, dataclass
from typing import Callable, Iterable

from .condense import GREEDY, determinant
from .matrix import Matrix
from .scalar import OpCounter

MAX_K = 64


def default_m(k: int) -> int:
    """Mult/div count charged for one k-order determinant: round(k^3/3), at least 1."""
    return max(1, round(k ** 3 / 3))


@dataclass(frozen=True)
class CostModelParams:
    n: int
    k: int
    m: int | None = None

    def __post_init__(self):
        if self.n < 2:
            raise ValueError("n must be >= 2")
        if not 1 <= self.k <= self.n - 1:
            raise ValueError(f"k must be in 1..n-1, got k={self.k}, n={self.n}")
        if self.m is None:
            object.__setattr__(self, "m", default_m(self.k))
        elif self.m < 1:
            raise ValueError("m must be >= 1")


def _condensed_sizes(n: int, k: int) -> list[int]:
    # sizes k, 2k, ..., floor((n-k)/k) k; a remainder adds one more step of size n-k
    terms = (n - k) // k
    sizes = [t * k for t in range(1, terms + 1)]
    if (n - k) % k:
        sizes.append(n - k)
    return sizes


def kchio_mult_cost(params: CostModelParams | None = None, *, n: int | None = None,
                    k: int | None = None, m: int | None = None) -> int:
    """Multiplications/divisions of K-Chio condensation on an n-order determinant:

        (k+1) * S2 + k*m * S1 + ceil((n-k)/k) * (m+1) + m

    with S2 = sum of squared and S1 = sum of condensed sizes k, 2k, ..., n-k.
    """
    if params is None:
        params = CostModelParams(n, k, m)
    n, k, m = params.n, params.k, params.m
    sizes = _condensed_sizes(n, k)
    s2 = sum(s * s for s in sizes)
    s1 = sum(sizes)
    steps = -(-(n - k) // k)
    return (k + 1) * s2 + k * m * s1 + steps * (m + 1) + m


def kchio_add_cost(params: CostModelParams | None = None, *, n: int | None = None,
                   k: int | None = None, m: int | None = None) -> int:
    """Additions/subtractions under the same accounting: k per condensed entry,
    and m per k-order determinant."""
    if params is None:
        params = CostModelParams(n, k, m)
    n, k, m = params.n, params.k, params.m
    sizes = _condensed_sizes(n, k)
    steps = -(-(n - k) // k)
    return k * sum(s * s for s in sizes) + k * m * sum(sizes) + steps * m + m


@dataclass(frozen=True)
class Table1Costs:
    """Leading-order counts for an n-order determinant."""

    n: int
    gaussian_mul_div: float
    chio_mul_div: float
    add_sub: float
    kchio_mul_div: float | None = None

    def as_dict(self) -> dict:
        return asdict(self)


def table1_costs(n: int, k: int | None = None) -> Table1Costs:
    if n < 2:
        raise ValueError("n must be >= 2")
    cube = n ** 3 / 3
    kchio = None if k is None else (1 + 1 / k) * cube
    return Table1Costs(n=n, gaussian_mul_div=cube, chio_mul_div=2 * cube, add_sub=cube,
                       kchio_mul_div=kchio)


def model_cost(n: int, k: int, m_fn: Callable[[int], int] = default_m,
               count_adds: bool = False) -> int:
    m = m_fn(k)
    cost = kchio_mult_cost(n=n, k=k, m=m)
    if count_adds:
        cost += kchio_add_cost(n=n, k=k, m=m)
    return cost


def optimal_k(n: int, m_fn: Callable[[int], int] = default_m, count_adds: bool = False) -> int:
    """Block size minimising the model cost over k = 1..min(n-1, 64); ties go to the smaller k."""
    if n < 3:
        raise ValueError("n must be >= 3")
    best_k, best = 1, None
    for k in range(1, min(n - 1, MAX_K) + 1):
        c = model_cost(n, k, m_fn, count_adds)
        if best is None or c < best:
            best_k, best = k, c
    return best_k


def optimal_k_table(ns: Iterable[int], m_fn: Callable[[int], int] = default_m,
                    count_adds: bool = False) -> list[dict]:
    rows = []
    for n in ns:
        k = optimal_k(n, m_fn, count_adds)
        rows.append({"n": n, "k_opt": k, "model_cost": model_cost(n, k, m_fn, count_adds),
                     "count_adds": count_adds})
    return rows


@dataclass(frozen=True)
class BenchReport:
    n: int
    k: int
    measured_mul: int
    measured_add: int
    model_mul: int
    deviation: float

    def as_dict(self) -> dict:
        return asdict(self)

    def to_json(self) -> str:
        return json.dumps(self.as_dict())


def random_float_matrix(n: int, seed: int) -> Matrix:
    rng = random.Random(seed)
    return Matrix([[rng.uniform(-1.0, 1.0) for _ in range(n)] for _ in range(n)], "float")


def measured_vs_model(n: int, k: int, seed: int = 0, strategy: str = GREEDY,
                      workers: int = 1) -> BenchReport:
    """Count the operations of one float determinant and set them against the model."""
    if n > 512:
        raise ValueError("measured_vs_model is meant for n <= 512")
    counter = OpCounter()
    determinant(random_float_matrix(n, seed), k, strategy, counter, workers)
    model = kchio_mult_cost(n=n, k=min(k, n - 1))
    return BenchReport(n=n, k=k, measured_mul=counter.mul_div, measured_add=counter.add_sub,
                       model_mul=model, deviation=(counter.mul_div - model) / model)
