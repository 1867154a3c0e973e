import json

import pytest

from kchio import CostModelParams, kchio_mult_cost, measured_vs_model, optimal_k, table1_costs
from kchio.complexity import default_m, kchio_add_cost, model_cost, optimal_k_table


@pytest.mark.parametrize("k", [2, 5, 10])
def test_leading_order_ratio(k):
    n = 10 ** 4
    ratio = kchio_mult_cost(n=n, k=k) / (n ** 3 / 3)
    assert abs(ratio - (1 + 1 / k)) < 0.05


def test_small_hand_evaluation():
    # S2 = 4, S1 = 2: 3*4 + 2*2*2 + 1*(2+1) + 2
    assert kchio_mult_cost(CostModelParams(4, 2, 2)) == 25
    assert kchio_mult_cost(n=4, k=2, m=2) == 25


def test_single_step_when_k_is_n_minus_1():
    n, k, m = 7, 6, 5
    # one condensed size (n-k = 1): (k+1)*1 + k*m*1 + 1*(m+1) + m
    assert kchio_mult_cost(n=n, k=k, m=m) == (k + 1) + k * m + (m + 1) + m


def test_remainder_step_is_folded():
    # n=10, k=4: sizes 4 and a remainder step of 6; ceil(6/4) = 2
    m = 3
    want = 5 * (16 + 36) + 4 * m * (4 + 6) + 2 * (m + 1) + m
    assert kchio_mult_cost(n=10, k=4, m=m) == want


def test_default_m():
    assert [default_m(k) for k in (1, 2, 3, 6, 10)] == [1, 3, 9, 72, 333]


def test_params_validation():
    for bad in ((1, 1), (5, 0), (5, 5)):
        with pytest.raises(ValueError):
            CostModelParams(*bad)
    with pytest.raises(ValueError):
        CostModelParams(5, 2, 0)


def test_table1():
    t = table1_costs(3)
    assert (t.gaussian_mul_div, t.chio_mul_div) == (9, 18)
    for n in (3, 12, 300):
        t = table1_costs(n)
        assert t.chio_mul_div == 2 * t.gaussian_mul_div


@pytest.mark.parametrize("k", [1, 2, 3, 7])
def test_model_strictly_increasing_in_n(k):
    costs = [kchio_mult_cost(n=n, k=k) for n in range(k + 1, 300)]
    assert all(a < b for a, b in zip(costs, costs[1:]))


def test_k1_exceeds_optimum_for_large_n():
    for n in list(range(100, 400, 37)) + [1000, 5000, 20000]:
        kstar = optimal_k(n)
        assert kstar > 1
        assert model_cost(n, 1) > model_cost(n, kstar)


def test_optimal_k_small_n_exhaustive():
    # only k in {1, 2} is feasible at n = 3; the argmin is whichever model value is smaller
    costs = {k: model_cost(3, k) for k in (1, 2)}
    assert optimal_k(3) == min(costs, key=lambda k: (costs[k], k))


def test_optimal_k_trend_and_anchor():
    ns = [500, 1000, 5000, 20000]
    ks = [optimal_k(n) for n in ns]
    assert ks == sorted(ks)
    assert 5 <= ks[-1] <= 20


def test_optimal_k_with_adds_is_deterministic():
    a = optimal_k_table([100, 1000, 20000], count_adds=True)
    b = optimal_k_table([100, 1000, 20000], count_adds=True)
    assert a == b
    assert all(r["count_adds"] for r in a)
    assert [r["k_opt"] for r in a] == sorted(r["k_opt"] for r in a)


def test_optimal_k_tie_breaks_low():
    assert optimal_k(50, m_fn=lambda k: 1) == min(
        range(1, 50), key=lambda k: (model_cost(50, k, lambda _: 1), k))


def test_add_cost_positive():
    assert kchio_add_cost(n=100, k=4) > 0


def test_measured_trivial_2x2():
    r = measured_vs_model(2, 1)
    assert (r.measured_mul, r.measured_add) == (2, 1)


def test_measured_chio_n128():
    r = measured_vs_model(128, 1, seed=1)
    assert 0.8 <= r.measured_mul / (2 * 128 ** 3 / 3) <= 1.2


def test_measured_k4_n128():
    r = measured_vs_model(128, 4, seed=1)
    assert abs(r.deviation) <= 0.25
    d = json.loads(r.to_json())
    assert set(d) == {"n", "k", "measured_mul", "measured_add", "model_mul", "deviation"}


def test_measured_size_limit():
    with pytest.raises(ValueError):
        measured_vs_model(513, 2)
