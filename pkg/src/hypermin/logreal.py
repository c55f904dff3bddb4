"""Signed log-magnitude reals and numerically careful log-domain helpers."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

NEG_INF = float("-inf")
LN2 = math.log(2.0)
LN10 = math.log(10.0)


def log1mexp(x: float) -> float:
    """``log(1 - exp(x))`` for ``x <= 0``."""
    if x > 0:
        raise ValueError(f"log1mexp needs x <= 0, got {x}")
    if x == 0:
        return NEG_INF
    if x > -LN2:
        return math.log(-math.expm1(x))
    return math.log1p(-math.exp(x))


def logaddexp(a: float, b: float) -> float:
    if a == NEG_INF:
        return b
    if b == NEG_INF:
        return a
    hi, lo = (a, b) if a >= b else (b, a)
    return hi + math.log1p(math.exp(lo - hi))


def log_sum(terms: Iterable[float]) -> float:
    """``log(sum(exp(t)))`` rescaled by the largest term and summed with ``fsum``."""
    terms = [t for t in terms if t != NEG_INF]
    if not terms:
        return NEG_INF
    top = max(terms)
    if math.isinf(top):
        return top
    return top + math.log(math.fsum(math.exp(t - top) for t in terms))


def log_neglog1m(log_q: float, log_1mq: float) -> float:
    """``log(-log(1 - q))`` given both ``log q`` and ``log(1 - q)``.

    For tiny ``q`` the value is built from ``log q`` so it survives when ``q``
    itself underflows.
    """
    if log_q == NEG_INF:
        return NEG_INF
    if log_1mq == NEG_INF:
        return math.inf
    if log_q < -20.0:
        q = math.exp(log_q)
        return log_q + math.log1p(q / 2 + q * q / 3)
    return math.log(-log_1mq)


def log_never(log_q: float, log_1mq: float, log_m: float) -> float:
    """``log((1 - q)^m)``: the event of probability ``q`` never occurs in ``m`` trials."""
    if log_m == NEG_INF:
        return 0.0
    t = log_neglog1m(log_q, log_1mq)
    if t == NEG_INF:
        return 0.0
    if t == math.inf:
        return NEG_INF
    return -math.exp(log_m + t) if log_m + t < 709.0 else NEG_INF


def log_at_least_once(log_q: float, log_1mq: float, log_m: float) -> float:
    """``log(1 - (1 - q)^m)``."""
    if log_m == NEG_INF:
        return NEG_INF
    t = log_neglog1m(log_q, log_1mq)
    if t == NEG_INF:
        return NEG_INF
    if t == math.inf:
        return 0.0
    s = log_m + t
    if s < -30.0:
        # 1 - exp(-e^s) = e^s (1 - e^s / 2 + ...)
        return s + math.log1p(-math.exp(s) / 2)
    if s >= 709.0:
        return 0.0
    return log1mexp(-math.exp(s))


@dataclass(frozen=True)
class LogReal:
    """A real number stored as ``sign * exp(log)``.

    ``sign`` is -1, 0 or +1 and is 0 exactly when the value is zero.
    """

    sign: int
    log: float = NEG_INF

    def __post_init__(self) -> None:
        if self.sign not in (-1, 0, 1):
            raise ValueError(f"sign must be -1, 0 or 1, got {self.sign}")
        if math.isnan(self.log):
            raise ValueError("log magnitude is NaN")
        if self.sign == 0 and self.log != NEG_INF:
            object.__setattr__(self, "log", NEG_INF)
        if self.sign != 0 and self.log == NEG_INF:
            object.__setattr__(self, "sign", 0)

    @classmethod
    def from_log(cls, log: float) -> "LogReal":
        return cls(1, log)

    @classmethod
    def from_float(cls, x: float) -> "LogReal":
        if x == 0:
            return cls(0)
        return cls(1 if x > 0 else -1, math.log(abs(x)))

    @classmethod
    def coerce(cls, x) -> "LogReal":
        return x if isinstance(x, LogReal) else cls.from_float(x)

    @classmethod
    def zero(cls) -> "LogReal":
        return cls(0)

    @classmethod
    def one(cls) -> "LogReal":
        return cls(1, 0.0)

    def __float__(self) -> float:
        if self.sign == 0:
            return 0.0
        if self.log > 709.78:
            return self.sign * math.inf
        return self.sign * math.exp(self.log)

    @property
    def log10(self) -> float:
        return self.log / LN10

    @property
    def log2(self) -> float:
        return self.log / LN2

    def __neg__(self) -> "LogReal":
        return LogReal(-self.sign, self.log)

    def __abs__(self) -> "LogReal":
        return LogReal(abs(self.sign), self.log)

    def __mul__(self, other) -> "LogReal":
        other = LogReal.coerce(other)
        if self.sign == 0 or other.sign == 0:
            return LogReal(0)
        return LogReal(self.sign * other.sign, self.log + other.log)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "LogReal":
        other = LogReal.coerce(other)
        if other.sign == 0:
            raise ZeroDivisionError("LogReal division by zero")
        if self.sign == 0:
            return LogReal(0)
        return LogReal(self.sign * other.sign, self.log - other.log)

    def __rtruediv__(self, other) -> "LogReal":
        return LogReal.coerce(other) / self

    def __pow__(self, exponent: float) -> "LogReal":
        if self.sign < 0:
            raise ValueError("real power of a negative LogReal")
        if self.sign == 0:
            if exponent > 0:
                return LogReal(0)
            if exponent == 0:
                return LogReal.one()
            raise ZeroDivisionError("zero to a negative power")
        return LogReal(1, self.log * exponent)

    def __add__(self, other) -> "LogReal":
        other = LogReal.coerce(other)
        if self.sign == 0:
            return other
        if other.sign == 0:
            return self
        if self.sign == other.sign:
            return LogReal(self.sign, logaddexp(self.log, other.log))
        big, small = (self, other) if self.log >= other.log else (other, self)
        if big.log == small.log:
            return LogReal(0)
        return LogReal(big.sign, big.log + log1mexp(small.log - big.log))

    __radd__ = __add__

    def __sub__(self, other) -> "LogReal":
        return self + (-LogReal.coerce(other))

    def __rsub__(self, other) -> "LogReal":
        return LogReal.coerce(other) - self

    def one_minus(self) -> "LogReal":
        """``1 - x`` for ``0 <= x <= 1`` without leaving the log domain."""
        if self.sign == 0:
            return LogReal.one()
        if self.sign < 0 or self.log > 0:
            raise ValueError("one_minus needs a value in [0, 1]")
        return LogReal(1, log1mexp(self.log))

    def _cmp(self, other) -> int:
        other = LogReal.coerce(other)
        if self.sign != other.sign:
            return (self.sign > other.sign) - (self.sign < other.sign)
        if self.sign == 0 or self.log == other.log:
            return 0
        bigger = self.log > other.log
        return (1 if bigger else -1) * self.sign

    def __lt__(self, other) -> bool:
        return self._cmp(other) < 0

    def __le__(self, other) -> bool:
        return self._cmp(other) <= 0

    def __gt__(self, other) -> bool:
        return self._cmp(other) > 0

    def __ge__(self, other) -> bool:
        return self._cmp(other) >= 0

    def to_json(self) -> dict:
        return {"sign": self.sign, "log10_magnitude": None if self.sign == 0 else self.log10}

    def __repr__(self) -> str:
        if self.sign == 0:
            return "LogReal(0)"
        return f"LogReal({'-' if self.sign < 0 else ''}e^{self.log:.6g})"


def within(lower: LogReal, value: LogReal, upper: LogReal, rel_slack: float = 1e-9) -> bool:
    """``lower <= value <= upper`` up to a relative slack on each side."""
    lo = lower - abs(lower) * rel_slack
    hi = upper + abs(upper) * rel_slack
    return lo <= value <= hi
