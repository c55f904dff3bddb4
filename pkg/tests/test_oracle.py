import math
from fractions import Fraction

import pytest

from hypermin import oracle
from hypermin.bounds import expected_min_exact
from hypermin.errors import DomainError, ResourceCapError, VerificationError
from hypermin.logreal import LogReal


def test_enumeration_values():
    assert oracle.enumerate_expected_min(2, Fraction(1, 2), 2) == Fraction(18, 16)
    assert oracle.enumerate_expected_min(1, Fraction(3, 10), 3) == 1
    v = oracle.enumerate_expected_min(3, 0.25, 2)
    assert abs(v - float(expected_min_exact(3, 0.25, 2))) <= 1e-12
    assert isinstance(oracle.enumerate_expected_min(2, Fraction(1, 4), 1), Fraction)


def test_enumeration_cap():
    with pytest.raises(ResourceCapError):
        oracle.enumerate_expected_min(8, Fraction(1, 2), 3)
    with pytest.raises(DomainError):
        oracle.enumerate_expected_min(2, Fraction(3, 2), 1)


def test_binomial_tail_values():
    assert oracle.exact_binomial_tail(30, 0.37, 30) == LogReal.one() or math.isclose(
        float(oracle.exact_binomial_tail(30, 0.37, 30)), 1.0, rel_tol=1e-14)
    assert oracle.exact_binomial_tail_rational(10, Fraction(1, 2), 3) == Fraction(176, 1024)
    assert math.isclose(float(oracle.exact_binomial_tail(10, 0.5, 3)), 176 / 1024, rel_tol=1e-14)
    assert oracle.exact_binomial_tail(12, 0.0, 0) == LogReal.one()
    assert oracle.exact_binomial_tail(12, 0.0, 1, "upper") == LogReal.zero()


def test_large_tail_matches_rational():
    log_value = oracle.exact_binomial_tail(2000, 0.7, 1200, "lower")
    exact = oracle.exact_binomial_tail_rational(2000, 0.7, 1200, "lower")
    log_exact = math.log(exact.numerator) - math.log(exact.denominator)
    assert abs(math.expm1(log_value.log - log_exact)) <= 1e-10


def test_tail_monotone_in_k():
    vals = [oracle.exact_binomial_tail(80, 0.3, k) for k in range(81)]
    assert all(b >= a for a, b in zip(vals, vals[1:]))


def test_dual_path_disagreement_raises(monkeypatch):
    monkeypatch.setattr(oracle, "log_binomial_pmf_row", lambda n, p: tuple(0.0 for _ in range(n + 1)))
    with pytest.raises(VerificationError):
        oracle.exact_binomial_tail(10, 0.5, 3)


def test_tail_domain():
    with pytest.raises(DomainError):
        oracle.exact_binomial_tail(5, 0.5, 6)
    with pytest.raises(DomainError):
        oracle.exact_binomial_tail(5, 0.5, 2, "middle")


def test_conditional_survival():
    assert oracle.enumerate_conditional_survival(Fraction(1, 5), Fraction(3, 10), 1) == (1, 1)
    assert oracle.enumerate_conditional_survival(Fraction(0), Fraction(1, 3), 5) == (1, 1)
    lhs, rhs = oracle.enumerate_conditional_survival(Fraction(1, 5), Fraction(3, 10), 4)
    assert lhs <= rhs
    with pytest.raises(DomainError):
        oracle.enumerate_conditional_survival(Fraction(1, 2), Fraction(0), 3)


def test_conditional_survival_closed_form_matches_enumeration():
    for pA, pB in [(Fraction(1, 5), Fraction(3, 10)), (Fraction(1, 2), Fraction(1, 2)), (Fraction(0), Fraction(1, 7))]:
        for m in range(1, 7):
            assert oracle.enumerate_conditional_survival(pA, pB, m) == \
                oracle.enumerate_conditional_survival_bruteforce(pA, pB, m)
