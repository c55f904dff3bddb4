import math

import pytest
from hypothesis import given, strategies as st

from hypermin.logreal import LogReal, log1mexp, log_at_least_once, log_never, log_sum, within

reals = st.floats(min_value=-1e6, max_value=1e6, allow_nan=False).filter(lambda v: v == 0 or abs(v) > 1e-200)


def test_zero_normalization():
    assert LogReal(1, float("-inf")).sign == 0
    assert LogReal.zero() == LogReal(0)
    assert float(LogReal.zero()) == 0.0
    with pytest.raises(ValueError):
        LogReal(2, 0.0)


@given(reals, reals)
def test_arithmetic_matches_floats(a, b):
    x, y = LogReal.from_float(a), LogReal.from_float(b)
    assert math.isclose(float(x + y), a + b, rel_tol=1e-9, abs_tol=1e-6 * (abs(a) + abs(b)))
    assert math.isclose(float(x - y), a - b, rel_tol=1e-9, abs_tol=1e-6 * (abs(a) + abs(b)))
    assert math.isclose(float(x * y), a * b, rel_tol=1e-12)
    assert (x < y) == (a < b) and (x <= y) == (a <= b) and (x > y) == (a > b)
    if b:
        assert math.isclose(float(x / y), a / b, rel_tol=1e-12)


def test_extreme_values_survive():
    tiny = LogReal.from_log(-1e6)
    assert float(tiny) == 0.0 and tiny.sign == 1
    assert (tiny * LogReal.from_log(1e6)) == LogReal.one()
    assert math.isclose((tiny ** 0.5).log, -5e5)
    assert tiny.one_minus() == LogReal.one()
    assert math.isclose(LogReal.from_float(0.25).one_minus().log, math.log(0.75))
    assert LogReal.from_log(2000.0).to_json() == {"sign": 1, "log10_magnitude": 2000.0 / math.log(10)}
    assert LogReal.zero().to_json() == {"sign": 0, "log10_magnitude": None}


def test_log_helpers():
    assert log1mexp(0.0) == float("-inf")
    assert math.isclose(log1mexp(-1e-20), math.log(1e-20))
    assert math.isclose(log_sum([math.log(1), math.log(2), math.log(3)]), math.log(6))
    assert log_sum([]) == float("-inf")
    q = 1e-300
    lq, l1 = math.log(q), math.log1p(-q)
    assert math.isclose(log_never(lq, l1, math.log(1e300)), -1.0, rel_tol=1e-12)
    assert math.isclose(log_at_least_once(lq, l1, math.log(1e300)), math.log(1 - math.exp(-1)), rel_tol=1e-12)
    assert math.isclose(log_at_least_once(math.log(0.5), math.log(0.5), math.log(3)), math.log(7 / 8))


def test_within_slack():
    one = LogReal.one()
    assert within(one, LogReal.from_float(1 - 1e-12), one, 1e-9)
    assert not within(one, LogReal.from_float(0.99), one, 1e-9)
