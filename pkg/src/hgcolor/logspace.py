"""Log-space arithmetic for nonnegative reals.

The bound formulas in this package routinely produce quantities like
r**(k-1) or r**(-(t+1)*(k-1)) at k in the millions, far outside binary64
range, so every bound is evaluated as a natural-log magnitude plus a sign
bit (sign 0 encodes exact zero).  Sums use log-sum-exp, binomial
coefficients go through lgamma.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

__all__ = ["LogValue", "log_add", "log_comb"]

LOGZERO = float("-inf")


def log_add(a: float, b: float) -> float:
    """Return log(exp(a) + exp(b)) without leaving log space."""
    if a == LOGZERO:
        return b
    if b == LOGZERO:
        return a
    hi, lo = (a, b) if a >= b else (b, a)
    return hi + math.log1p(math.exp(lo - hi))


def log_comb(n: float, k: int) -> float:
    """log of the binomial coefficient C(n, k) for real n >= 0, integer k.

    Uses lgamma so n may be far beyond integer range; returns -inf when the
    coefficient is zero (k < 0 or k > n).
    """
    if k < 0 or n < k:
        return LOGZERO
    if k == 0 or k == n:
        return 0.0
    return math.lgamma(n + 1) - math.lgamma(k + 1) - math.lgamma(n - k + 1)


@dataclass(frozen=True)
class LogValue:
    """A nonnegative real stored as (log magnitude, sign).

    sign is +1 for positive values and 0 for exact zero (log is -inf then).
    Arithmetic never leaves log space, so products and quotients of
    astronomically large or small values stay exact to ~1 ulp per operation;
    sums are log-sum-exp and carry relative error below 1e-12 per operation.
    """

    log: float
    sign: int

    def __post_init__(self):
        if self.sign not in (0, 1):
            raise ValueError(f"sign must be 0 or 1, got {self.sign}")
        if self.sign == 0 and self.log != LOGZERO:
            object.__setattr__(self, "log", LOGZERO)
        if self.sign == 1 and math.isnan(self.log):
            raise ValueError("log magnitude is NaN")

    @classmethod
    def from_float(cls, x: float) -> "LogValue":
        if x < 0:
            raise ValueError(f"LogValue represents nonnegative reals, got {x}")
        if x == 0:
            return cls.zero()
        return cls(math.log(x), 1)

    @classmethod
    def from_log(cls, log: float) -> "LogValue":
        if log == LOGZERO:
            return cls.zero()
        return cls(log, 1)

    @classmethod
    def zero(cls) -> "LogValue":
        return cls(LOGZERO, 0)

    @classmethod
    def one(cls) -> "LogValue":
        return cls(0.0, 1)

    def is_zero(self) -> bool:
        return self.sign == 0

    def to_float(self) -> float:
        """Exponentiate back to linear scale.

        Overflows to inf and underflows to 0.0 silently; the log field is
        the authoritative representation.
        """
        if self.sign == 0:
            return 0.0
        try:
            return math.exp(self.log)
        except OverflowError:
            return float("inf")

    def __float__(self) -> float:
        return self.to_float()

    def __mul__(self, other: "LogValue") -> "LogValue":
        other = _coerce(other)
        if self.sign == 0 or other.sign == 0:
            return LogValue.zero()
        return LogValue(self.log + other.log, 1)

    __rmul__ = __mul__

    def __truediv__(self, other: "LogValue") -> "LogValue":
        other = _coerce(other)
        if other.sign == 0:
            raise ZeroDivisionError("division by LogValue zero")
        if self.sign == 0:
            return LogValue.zero()
        return LogValue(self.log - other.log, 1)

    def __add__(self, other: "LogValue") -> "LogValue":
        other = _coerce(other)
        if self.sign == 0:
            return other
        if other.sign == 0:
            return self
        return LogValue(log_add(self.log, other.log), 1)

    __radd__ = __add__

    def __sub__(self, other: "LogValue") -> "LogValue":
        """Clamped difference max(self - other, 0).

        LogValue has no negative range; subtraction saturates at zero,
        which is the semantics the degree-cap formula needs.
        """
        other = _coerce(other)
        if other.sign == 0:
            return self
        if self.sign == 0 or other.log >= self.log:
            return LogValue.zero()
        return LogValue(self.log + math.log1p(-math.exp(other.log - self.log)), 1)

    def pow(self, exponent: float) -> "LogValue":
        """self ** exponent for a real exponent (0 ** 0 is 1)."""
        if self.sign == 0:
            if exponent == 0:
                return LogValue.one()
            if exponent < 0:
                raise ZeroDivisionError("zero LogValue to a negative power")
            return LogValue.zero()
        return LogValue(self.log * exponent, 1)

    def _cmp_key(self):
        return self.log if self.sign == 1 else LOGZERO

    def __lt__(self, other: "LogValue") -> bool:
        return self._cmp_key() < _coerce(other)._cmp_key()

    def __le__(self, other: "LogValue") -> bool:
        return self._cmp_key() <= _coerce(other)._cmp_key()

    def __gt__(self, other: "LogValue") -> bool:
        return self._cmp_key() > _coerce(other)._cmp_key()

    def __ge__(self, other: "LogValue") -> bool:
        return self._cmp_key() >= _coerce(other)._cmp_key()

    def __repr__(self) -> str:
        if self.sign == 0:
            return "LogValue(0)"
        return f"LogValue(log={self.log:.12g})"


def _coerce(x) -> LogValue:
    if isinstance(x, LogValue):
        return x
    if isinstance(x, (int, float)):
        return LogValue.from_float(float(x))
    raise TypeError(f"cannot interpret {type(x).__name__} as LogValue")
