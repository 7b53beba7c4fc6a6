"""
Certified real numbers: :class:`RealBound` is an interval with exact
rational endpoints, optionally backed by an exact element of Q(p^{1/L}).

Also provides interval enclosures of rational powers, logarithms and
exponentials, and the precision settings they use. Precision is measured
in bits of relative width; the defaults can be overridden with the
environment variables ``PADICMAX_PRECISION`` and ``PADICMAX_BISECTION``
and changed locally with :func:`working_precision`.
"""

#  Copyright (c) 2021. Harvard University
#
#  Developed by Research Software Engineering,
#  Faculty of Arts and Sciences, Research Computing (FAS RC)
#  Author: Michael A Bouzinier
#
#  Licensed under the Apache License, Version 2.0 (the "License");
#  you may not use this file except in compliance with the License.
#  You may obtain a copy of the License at
#
#         http://www.apache.org/licenses/LICENSE-2.0
#
#  Unless required by applicable law or agreed to in writing, software
#  distributed under the License is distributed on an "AS IS" BASIS,
#  WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
#  See the License for the specific language governing permissions and
#  limitations under the License.
#

import logging
import os
from contextlib import contextmanager
from contextvars import ContextVar
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Tuple, Union, Iterable

from padicmax import PRECISION_ENV, BISECTION_ENV, DEFAULT_PRECISION, \
    DEFAULT_BISECTION, format_rational
from padicmax.errors import ConfigurationError
from padicmax.radicals import Radical, root_interval, integer_root

log = logging.getLogger(__name__)


def _env_bits(name: str, default: int) -> int:
    value = os.getenv(name, None)
    if not value:
        return default
    try:
        bits = int(value)
    except ValueError:
        raise ConfigurationError(
            "Environment variable {} must be an integer, got '{}'"
            .format(name, value)
        )
    if bits < 8:
        raise ConfigurationError("{} must be at least 8".format(name))
    return bits


_precision = ContextVar("padicmax_precision",
                        default=_env_bits(PRECISION_ENV, DEFAULT_PRECISION))
_bisection = ContextVar("padicmax_bisection",
                        default=_env_bits(BISECTION_ENV, DEFAULT_BISECTION))


def current_precision() -> int:
    """Bits of relative width for powers, logarithms and exponentials"""
    return _precision.get()


def current_bisection() -> int:
    """Bits of relative width at which Luxemburg bisections stop"""
    return _bisection.get()


@contextmanager
def working_precision(bits: int = None, bisection: int = None):
    """
    Temporarily changes precision settings in the current context

    :param bits: precision of elementary functions
    :param bisection: target width of bisections
    """

    tokens = []
    if bits is not None:
        tokens.append((_precision, _precision.set(bits)))
    if bisection is not None:
        tokens.append((_bisection, _bisection.set(bisection)))
    try:
        yield
    finally:
        for var, token in reversed(tokens):
            var.reset(token)


Number = Union[int, Fraction, "RealBound", Radical]


@dataclass(frozen=True)
class RealBound:
    """
    A real number x known through rational bounds lo ≤ x ≤ hi.

    When ``exact`` is set the number is known exactly as an element of
    Q(p^{1/L}); arithmetic between exact values stays exact and
    comparisons between them are decided exactly. Otherwise comparisons
    are three-valued: True, False or None (inconclusive).
    """

    lo: Fraction
    hi: Fraction
    exact: Optional[Radical] = None

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError("Empty interval [{}, {}]".format(self.lo, self.hi))

    @classmethod
    def of(cls, value: Number) -> "RealBound":
        if isinstance(value, RealBound):
            return value
        if isinstance(value, Radical):
            return cls.from_radical(value)
        value = Fraction(value)
        return cls(value, value, Radical.rational(value))

    @classmethod
    def from_radical(cls, value: Radical) -> "RealBound":
        lo, hi = value.bounds(current_precision())
        return cls(lo, hi, value)

    @classmethod
    def between(cls, lo, hi) -> "RealBound":
        lo, hi = Fraction(lo), Fraction(hi)
        if lo == hi:
            return cls.of(lo)
        return cls(lo, hi)

    @classmethod
    def power_of_p(cls, p: int, exponent) -> "RealBound":
        """Exact p^{exponent}"""
        return cls.from_radical(Radical.power_of_p(p, Fraction(exponent)))

    @property
    def is_exact(self) -> bool:
        return self.exact is not None

    @property
    def is_rational(self) -> bool:
        return self.exact is not None and self.exact.is_rational

    @property
    def value(self) -> Fraction:
        """The exact rational value; fails for anything else"""
        if not self.is_rational:
            raise ValueError("{} is not an exact rational".format(self))
        return self.exact.rational_value

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def relative_width(self) -> Optional[Fraction]:
        scale = max(abs(self.lo), abs(self.hi))
        if scale == 0:
            return Fraction(0)
        return self.width / scale

    def __add__(self, other: Number) -> "RealBound":
        other = RealBound.of(other)
        if self.is_exact and other.is_exact:
            return RealBound.from_radical(self.exact + other.exact)
        return RealBound(self.lo + other.lo, self.hi + other.hi)

    __radd__ = __add__

    def __neg__(self) -> "RealBound":
        if self.is_exact:
            return RealBound(-self.hi, -self.lo, -self.exact)
        return RealBound(-self.hi, -self.lo)

    def __sub__(self, other: Number) -> "RealBound":
        return self + (-RealBound.of(other))

    def __rsub__(self, other: Number) -> "RealBound":
        return RealBound.of(other) - self

    def __mul__(self, other: Number) -> "RealBound":
        other = RealBound.of(other)
        if self.is_exact and other.is_exact:
            return RealBound.from_radical(self.exact * other.exact)
        products = (self.lo * other.lo, self.lo * other.hi,
                    self.hi * other.lo, self.hi * other.hi)
        return RealBound(min(products), max(products))

    __rmul__ = __mul__

    def __truediv__(self, other: Number) -> "RealBound":
        other = RealBound.of(other)
        if other.is_rational:
            d = other.value
            if d == 0:
                raise ZeroDivisionError("Division of {} by zero".format(self))
            if self.is_exact:
                return RealBound.from_radical(self.exact.scale(1 / d))
            lo, hi = sorted((self.lo / d, self.hi / d))
            return RealBound(lo, hi)
        if other.lo <= 0 <= other.hi:
            raise ZeroDivisionError(
                "Division by an interval containing zero: {}".format(other)
            )
        return self * other.reciprocal()

    def __rtruediv__(self, other: Number) -> "RealBound":
        return RealBound.of(other) / self

    def reciprocal(self) -> "RealBound":
        if self.is_rational:
            return RealBound.of(1 / self.value)
        if self.lo <= 0 <= self.hi:
            raise ZeroDivisionError("Reciprocal of {}".format(self))
        return RealBound(1 / self.hi, 1 / self.lo)

    def __abs__(self) -> "RealBound":
        if self.is_exact:
            return -self if self.exact.sign() < 0 else self
        if self.lo >= 0:
            return self
        if self.hi <= 0:
            return -self
        return RealBound(Fraction(0), max(-self.lo, self.hi))

    def __pow__(self, k: int) -> "RealBound":
        if not isinstance(k, int) or k < 0:
            raise ValueError("Only nonnegative integer powers: {}".format(k))
        result = RealBound.of(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def sign(self) -> Optional[int]:
        if self.is_exact:
            return self.exact.sign()
        if self.lo > 0:
            return 1
        if self.hi < 0:
            return -1
        if self.lo == self.hi == 0:
            return 0
        return None

    def compare(self, other: Number) -> Optional[int]:
        """-1, 0, 1 or None when the intervals overlap"""
        return (self - RealBound.of(other)).sign()

    def le(self, other: Number) -> Optional[bool]:
        c = self.compare(other)
        return None if c is None else c <= 0

    def lt(self, other: Number) -> Optional[bool]:
        c = self.compare(other)
        return None if c is None else c < 0

    def ge(self, other: Number) -> Optional[bool]:
        c = self.compare(other)
        return None if c is None else c >= 0

    def equals(self, other: Number) -> Optional[bool]:
        c = self.compare(other)
        return None if c is None else c == 0

    def contains(self, value) -> bool:
        return self.lo <= Fraction(value) <= self.hi

    def refresh(self) -> "RealBound":
        """Recomputes the enclosure of an exact value at current precision"""
        if self.is_exact:
            return RealBound.from_radical(self.exact)
        return self

    def to_text(self) -> str:
        return "{} {}".format(format_rational(self.lo), format_rational(self.hi))

    def __str__(self):
        if self.is_rational:
            return format_rational(self.value)
        return "[{}, {}]".format(format_rational(self.lo),
                                 format_rational(self.hi))


def maximum(values: Iterable[Number]) -> RealBound:
    """
    Certified maximum. Exact when all arguments are exact, otherwise the
    interval hull of the possible maxima
    """

    result = None
    for v in values:
        v = RealBound.of(v)
        if result is None:
            result = v
            continue
        result = larger(result, v)
    if result is None:
        raise ValueError("Maximum of an empty sequence")
    return result


def larger(a: RealBound, b: RealBound) -> RealBound:
    if a.is_exact and b.is_exact:
        return a if a.exact.compare(b.exact) >= 0 else b
    if a.lo >= b.hi:
        return a
    if b.lo >= a.hi:
        return b
    return RealBound(max(a.lo, b.lo), max(a.hi, b.hi))


def _down(x: Fraction, g: int) -> Fraction:
    return Fraction((x.numerator << g) // x.denominator, 1 << g)


def _up(x: Fraction, g: int) -> Fraction:
    return Fraction(-((-x.numerator << g) // x.denominator), 1 << g)


def _relative_round(lo: Fraction, hi: Fraction, bits: int) \
        -> Tuple[Fraction, Fraction]:
    scale = max(abs(lo), abs(hi))
    if scale == 0:
        return lo, hi
    g = bits + 4 - (scale.numerator.bit_length()
                    - scale.denominator.bit_length())
    g = max(g, 0)
    return _down(lo, g), _up(hi, g)


def power(base: Number, exponent) -> RealBound:
    """
    Certified base^exponent for a nonnegative base and a rational exponent.
    Exact when the result is rational or when the base is p-power exact
    and the exponent is an integer.
    """

    exponent = Fraction(exponent)
    base = RealBound.of(base)
    if base.lo < 0:
        if base.is_exact and base.exact.sign() >= 0:
            base = RealBound(Fraction(0), base.hi, base.exact)
        else:
            raise ValueError("Power of a possibly negative base {}".format(base))
    if exponent.denominator == 1:
        k = exponent.numerator
        if k >= 0:
            return base ** k
        return (base ** (-k)).reciprocal()
    if base.is_rational:
        return _rational_power(base.value, exponent)
    lo = _rational_power(base.lo, exponent)
    hi = _rational_power(base.hi, exponent)
    if exponent > 0:
        return RealBound.between(lo.lo, hi.hi)
    return RealBound.between(hi.lo, lo.hi)


@lru_cache(maxsize=8192)
def _cached_root(x: Fraction, k: int, bits: int) -> Tuple[Fraction, Fraction]:
    return root_interval(x, k, bits)


def _exact_root(x: Fraction, k: int) -> Optional[Fraction]:
    """x^{1/k} when numerator and denominator are both k-th powers"""
    num = integer_root(x.numerator, k)
    den = integer_root(x.denominator, k)
    if num ** k == x.numerator and den ** k == x.denominator:
        return Fraction(num, den)
    return None


def _rational_power(x: Fraction, exponent: Fraction) -> RealBound:
    if x == 0:
        if exponent > 0:
            return RealBound.of(0)
        raise ZeroDivisionError("Zero to a nonpositive power")
    bits = current_precision() + 4
    a, k = abs(exponent.numerator), exponent.denominator
    exact = _exact_root(x ** a, k)
    if exact is not None:
        return RealBound.of(exact if exponent > 0 else 1 / exact)
    lo, hi = _cached_root(x ** a, k, bits)
    if exponent < 0:
        if lo == hi:
            return RealBound.of(1 / lo)
        lo, hi = _relative_round(1 / hi, 1 / lo, bits)
    if lo == hi:
        return RealBound.of(lo)
    return RealBound(lo, hi)


def _atanh(z: Fraction, bits: int) -> Tuple[Fraction, Fraction]:
    """Enclosure of atanh(z) for 0 ≤ z ≤ 1/3"""

    g = bits + 8
    terms = (bits + 6) // 3 + 2
    result = []
    for rnd, zz in ((_down, _down(z, g)), (_up, _up(z, g))):
        w = rnd(zz * zz, g)
        pw = zz
        total = Fraction(0)
        for i in range(terms + 1):
            total += rnd(pw / (2 * i + 1), g)
            pw = rnd(pw * w, g)
        result.append((total, pw))
    lo = result[0][0]
    hi = result[1][0] + Fraction(9, 8) * result[1][1]
    return lo, hi


@lru_cache(maxsize=64)
def _ln2(bits: int) -> Tuple[Fraction, Fraction]:
    lo, hi = _atanh(Fraction(1, 3), bits)
    return 2 * lo, 2 * hi


def log_bound(x) -> RealBound:
    """Certified natural logarithm of a positive rational"""

    x = Fraction(x)
    if x <= 0:
        raise ValueError("Logarithm of a nonpositive number {}".format(x))
    if x == 1:
        return RealBound.of(0)
    bits = current_precision() + 8
    m = x.numerator.bit_length() - x.denominator.bit_length()
    y = x / Fraction(2) ** m
    if y < 1:
        m -= 1
        y *= 2
    elif y >= 2:
        m += 1
        y /= 2
    ylo, yhi = _atanh((y - 1) / (y + 1), bits + m.bit_length())
    ln2lo, ln2hi = _ln2(bits + m.bit_length())
    if m >= 0:
        lo = m * ln2lo + 2 * ylo
        hi = m * ln2hi + 2 * yhi
    else:
        lo = m * ln2hi + 2 * ylo
        hi = m * ln2lo + 2 * yhi
    lo, hi = _relative_round(lo, hi, bits)
    return RealBound(lo, hi)


def _exp_positive(x: Fraction, bits: int) -> Tuple[Fraction, Fraction]:
    s = max(0, x.numerator.bit_length() - x.denominator.bit_length() + 2)
    g = bits + s + 12
    r = x / (1 << s)
    bounds = []
    for rnd, rr in ((_down, _down(r, g)), (_up, _up(r, g))):
        total = Fraction(0)
        term = Fraction(1)
        i = 0
        while True:
            total += term
            i += 1
            term = rnd(term * rr / i, g)
            # rr < 1, so past i > 2rr the remainder is at most 2 * term
            if term <= Fraction(1, 1 << g) and i > 2 * rr:
                break
        bounds.append((total, term))
    lo = bounds[0][0]
    hi = bounds[1][0] + 2 * bounds[1][1] + Fraction(1, 1 << g)
    for _ in range(s):
        lo = _down(lo * lo, g)
        hi = _up(hi * hi, g)
    return lo, hi


def exp_bound(x) -> RealBound:
    """Certified exponential of a rational"""

    x = Fraction(x)
    if x == 0:
        return RealBound.of(1)
    bits = current_precision() + 8
    lo, hi = _exp_positive(abs(x), bits)
    if x < 0:
        lo, hi = 1 / hi, 1 / lo
    lo, hi = _relative_round(lo, hi, bits)
    return RealBound(lo, hi)


def exp_of(value: Number) -> RealBound:
    """Exponential of an interval (monotone)"""
    value = RealBound.of(value)
    if value.is_rational:
        return exp_bound(value.value)
    return RealBound(exp_bound(value.lo).lo, exp_bound(value.hi).hi)


def log_of(value: Number) -> RealBound:
    """Natural logarithm of a positive interval (monotone)"""
    value = RealBound.of(value)
    if value.is_rational:
        return log_bound(value.value)
    return RealBound(log_bound(value.lo).lo, log_bound(value.hi).hi)


def log_base(value: Number, base: int) -> RealBound:
    """log_base(value) for an integer base ≥ 2"""
    return log_of(value) / log_bound(base)
