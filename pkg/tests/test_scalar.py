import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from kchio import (BackendMismatchError, OpCounter, Scalar, counter_merge, scalar_add, scalar_div,
                   scalar_mul, scalar_sub)
from kchio.scalar import Backend, format_value, infer_backend

rationals = st.fractions(max_denominator=10 ** 6)


def test_add_fractions_counts_one_add():
    c = OpCounter()
    r = scalar_add(Scalar.exact("1/2"), Scalar.exact("1/3"), c)
    assert r.value == Fraction(5, 6)
    assert (c.mul_div, c.add_sub) == (0, 1)


def test_each_op_counts_in_its_category():
    c = OpCounter()
    a, b = Scalar.exact(3), Scalar.exact(4)
    scalar_sub(a, b, c)
    scalar_mul(a, b, c)
    scalar_div(a, b, c)
    assert (c.mul_div, c.add_sub) == (2, 1)


def test_eq16_cramer_chain_stays_canonical():
    # x2 of the 2x2 system [182520 -32760 | 393120], [684450 -410670 | -636480]
    S = Scalar.exact
    num = scalar_sub(scalar_mul(S(393120), S(-410670)), scalar_mul(S(-32760), S(-636480)))
    den = scalar_sub(scalar_mul(S(182520), S(-410670)), scalar_mul(S(-32760), S(684450)))
    x2 = scalar_div(num, den)
    assert x2.value == Fraction(406, 117)
    assert math.gcd(x2.value.numerator, x2.value.denominator) == 1
    assert str(x2) == "406/117"


@pytest.mark.parametrize("backend", list(Backend))
def test_division_by_zero(backend):
    with pytest.raises(ZeroDivisionError):
        scalar_div(Scalar(1, backend), Scalar(0, backend))


def test_backend_mismatch_rejected():
    with pytest.raises(BackendMismatchError):
        scalar_add(Scalar.exact(1), Scalar.floating(1.0))


def test_zero_has_unit_denominator():
    assert Scalar.exact(0).value.denominator == 1
    assert scalar_sub(Scalar.exact("2/3"), Scalar.exact("2/3")).value.denominator == 1


def test_float_is_ieee_round_to_nearest():
    assert scalar_add(Scalar.floating(0.1), Scalar.floating(0.2)).value == 0.1 + 0.2


def test_serialization():
    assert format_value(Fraction(-7, 39), Backend.EXACT) == "-7/39"
    assert format_value(4, Backend.EXACT) == "4"
    assert format_value(0.1, Backend.FLOAT) == "0.1"
    assert float(format_value(1 / 3, Backend.FLOAT)) == 1 / 3


def test_infer_backend():
    assert infer_backend([1, 2]) is Backend.EXACT
    assert infer_backend([1, 2.5]) is Backend.FLOAT
    with pytest.raises(BackendMismatchError):
        infer_backend([Fraction(1, 2), 0.5])


@given(st.lists(st.tuples(st.sampled_from(["add", "sub", "mul", "div"]), rationals), max_size=30))
def test_rational_canonical_after_any_sequence(ops):
    acc = Scalar.exact(1)
    for op, v in ops:
        b = Scalar.exact(v)
        if op == "div" and v == 0:
            continue
        acc = {"add": scalar_add, "sub": scalar_sub, "mul": scalar_mul, "div": scalar_div}[op](acc, b)
        q = acc.value
        assert q.denominator > 0
        assert math.gcd(abs(q.numerator), q.denominator) == 1


def test_counter_merge_basics():
    assert counter_merge([]) == OpCounter(0, 0)
    assert counter_merge([OpCounter(3, 1), OpCounter(4, 2)]) == OpCounter(7, 3)


counters = st.builds(OpCounter, st.integers(0, 10 ** 9), st.integers(0, 10 ** 9))


@given(counters, counters, counters)
def test_counter_merge_associative_commutative(a, b, c):
    left = counter_merge([counter_merge([a, b]), c])
    right = counter_merge([a, counter_merge([b, c])])
    assert left == right == counter_merge([c, b, a])
    assert counter_merge([a, OpCounter()]) == a


def test_counter_totals_independent_of_partition():
    rng = random.Random(7)
    parts = [OpCounter(rng.randint(0, 99), rng.randint(0, 99)) for _ in range(20)]
    whole = counter_merge(parts)
    for cut in (1, 5, 13):
        assert counter_merge([counter_merge(parts[:cut]), counter_merge(parts[cut:])]) == whole
