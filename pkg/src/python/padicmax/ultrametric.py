"""
Exact representation of p-adic points, balls and spheres in Q_p^n
together with valuations and Haar measure.

A ball B_γ(a) = a + p^{-γ}Z_p^n is addressed canonically by its level γ
and, for every coordinate, the digits of its center at indices below -γ.
The digits are kept as the rational Σ_{k<-γ} d_k p^k, so two addresses
denote the same ball if and only if they compare equal.
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

import itertools
import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from typing import Tuple, List, Sequence, Iterable

from padicmax import DIGITS, as_rational, format_rational
from padicmax.errors import ParameterError, ParseError


def is_prime(p: int) -> bool:
    """Deterministic primality check by trial division"""

    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    for d in range(3, math.isqrt(p) + 1, 2):
        if p % d == 0:
            return False
    return True


@dataclass(frozen=True)
class FieldParams:
    """
    The field Q_p^n: a prime p and a dimension n
    """

    p: int
    '''The prime'''
    n: int = 1
    '''Dimension of the space'''

    def __post_init__(self):
        if not isinstance(self.p, int) or not is_prime(self.p):
            raise ParameterError("p must be a prime, got {}".format(self.p))
        if not isinstance(self.n, int) or self.n < 1:
            raise ParameterError(
                "Dimension must be a positive integer, got {}".format(self.n)
            )

    def __str__(self):
        return "{:d}^{:d}".format(self.p, self.n)

    @classmethod
    def parse(cls, text: str) -> "FieldParams":
        try:
            p, n = text.strip().split('^')
            return cls(int(p), int(n))
        except ValueError as x:
            if isinstance(x, ParameterError):
                raise ParseError(str(x))
            raise ParseError("Malformed field '{}', expected p^n".format(text))

    def power(self, exponent: int) -> Fraction:
        """p raised to an integer power, exactly"""
        return Fraction(self.p) ** exponent


class BallRelation(Enum):
    """Relative position of two p-adic balls, no partial overlaps exist"""

    DISJOINT = "disjoint"
    '''Balls do not intersect'''
    FIRST_INSIDE_SECOND = "first_inside_second"
    '''The first ball is a proper subset of the second'''
    SECOND_INSIDE_FIRST = "second_inside_first"
    '''The second ball is a proper subset of the first'''
    EQUAL = "equal"
    '''The same ball'''


def valuation(x, p: int) -> int:
    """
    p-adic valuation of a nonzero rational: the power of p in its
    factorization

    :param x: nonzero rational
    :param p: prime
    :return: integer valuation
    """

    x = as_rational(x)
    if x == 0:
        raise ParameterError("Valuation of zero is not defined")
    return _multiplicity(x.numerator, p) - _multiplicity(x.denominator, p)


def _multiplicity(m: int, p: int) -> int:
    m = abs(m)
    k = 0
    while m % p == 0:
        m //= p
        k += 1
    return k


def padic_abs(x, p: int) -> Fraction:
    """
    p-adic absolute value |x|_p = p^{-v(x)}, with |0|_p = 0
    """

    x = as_rational(x)
    if x == 0:
        return Fraction(0)
    return Fraction(p) ** (-valuation(x, p))


def truncate(x, p: int, k: int) -> Fraction:
    """
    The part of the canonical expansion x = Σ d_j p^j below index k,
    i.e. the rational Σ_{j<k} d_j p^j with digits d_j in {0, ..., p-1}.
    Works for every rational number, including negative numbers and
    numbers with infinite periodic expansions.

    :param x: rational number
    :param p: prime
    :param k: index bound (exclusive)
    :return: nonnegative rational with a power of p as denominator
    """

    x = as_rational(x)
    if x == 0:
        return Fraction(0)
    s = _multiplicity(x.denominator, p)
    m = k + s
    if m <= 0:
        return Fraction(0)
    unit = x.denominator // p ** s
    modulus = p ** m
    residue = (x.numerator * pow(unit, -1, modulus)) % modulus
    return Fraction(residue, p ** s)


def digits(x, p: int, k: int) -> Tuple[int, List[int]]:
    """
    Digits of x below index k, lowest index first

    :return: a tuple (starting index, digit list); the list is empty
        when all digits below k vanish
    """

    t = truncate(x, p, k)
    if t == 0:
        return k, []
    v = valuation(t, p)
    m = t * Fraction(p) ** (-v)
    m = m.numerator
    result = []
    for _ in range(k - v):
        m, d = divmod(m, p)
        result.append(d)
    return v, result


@dataclass(frozen=True)
class PAdicPoint:
    """
    A point of Q^n embedded into Q_p^n. Coordinates are exact rationals,
    their canonical digit expansions are available through
    :meth:`digits`
    """

    params: FieldParams
    coordinates: Tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.coordinates) != self.params.n:
            raise ParameterError(
                "Point has {:d} coordinates in dimension {:d}"
                .format(len(self.coordinates), self.params.n)
            )

    @classmethod
    def from_rationals(cls, params: FieldParams, values: Iterable) \
            -> "PAdicPoint":
        return cls(params, tuple(as_rational(v) for v in values))

    @classmethod
    def from_digits(cls, params: FieldParams,
                    expansions: Sequence[Tuple[int, Sequence[int]]]) \
            -> "PAdicPoint":
        """
        Builds a point from finite expansions, one (starting valuation,
        digits) pair per coordinate
        """

        coordinates = []
        for start, ds in expansions:
            if ds and ds[0] == 0:
                raise ParameterError("Leading digit must be nonzero")
            value = Fraction(0)
            for i, d in enumerate(ds):
                if not 0 <= d < params.p:
                    raise ParameterError(
                        "Digit {} out of range for p={:d}".format(d, params.p)
                    )
                value += d * params.power(start + i)
            coordinates.append(value)
        return cls(params, tuple(coordinates))

    @classmethod
    def origin(cls, params: FieldParams) -> "PAdicPoint":
        return cls(params, tuple(Fraction(0) for _ in range(params.n)))

    def digits(self, coordinate: int, k: int) -> Tuple[int, List[int]]:
        return digits(self.coordinates[coordinate], self.params.p, k)

    def __sub__(self, other: "PAdicPoint") -> "PAdicPoint":
        _same_field(self.params, other.params)
        return PAdicPoint(self.params, tuple(
            a - b for a, b in zip(self.coordinates, other.coordinates)
        ))

    def __str__(self):
        return ",".join(format_rational(c) for c in self.coordinates)


def point_norm(x: PAdicPoint) -> Fraction:
    """Max-norm |x|_p = max_j |x_j|_p"""
    return max(padic_abs(c, x.params.p) for c in x.coordinates)


def parse_point(text: str, params: FieldParams) -> PAdicPoint:
    """Parses comma separated rational coordinates, e.g. "1/2,3" """

    parts = [t for t in text.strip().split(',')]
    if len(parts) != params.n:
        raise ParseError(
            "Point '{}' has {:d} coordinates, expected {:d}"
            .format(text, len(parts), params.n)
        )
    return PAdicPoint.from_rationals(params, parts)


def _same_field(a: FieldParams, b: FieldParams):
    if a != b:
        raise ParameterError("Mismatched fields: {} and {}".format(a, b))


@dataclass(frozen=True)
class BallAddress:
    """
    A node of the p^n-ary ultrametric tree: the ball
    B_γ(a) = {x : |x - a|_p ≤ p^γ}.

    ``center`` holds, per coordinate, the truncation of the center below
    index -γ, which makes the address canonical
    """

    params: FieldParams
    level: int
    center: Tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.center) != self.params.n:
            raise ParameterError("Center dimension does not match the field")
        for c in self.center:
            if truncate(c, self.params.p, -self.level) != c:
                raise ParameterError(
                    "Center {} is not canonical at level {:d}"
                    .format(c, self.level)
                )

    @classmethod
    def around(cls, x: PAdicPoint, level: int) -> "BallAddress":
        return cls(x.params, level, tuple(
            truncate(c, x.params.p, -level) for c in x.coordinates
        ))

    @classmethod
    def centered(cls, params: FieldParams, level: int) -> "BallAddress":
        """B_γ(0)"""
        return cls(params, level, tuple(Fraction(0) for _ in range(params.n)))

    def center_point(self) -> PAdicPoint:
        return PAdicPoint(self.params, self.center)

    def center_digits(self) -> List[List[int]]:
        """Per coordinate digit lists, lowest index first, ending at -γ-1"""
        return [digits(c, self.params.p, -self.level)[1] for c in self.center]

    def measure(self) -> Fraction:
        return ball_measure(self)

    def contains(self, x: PAdicPoint) -> bool:
        return ball_contains(self, x)

    def __str__(self):
        return format_ball(self)


def ball_order_key(ball: BallAddress):
    """Canonical order used to break ties deterministically"""
    return ball.level, ball.center


@dataclass(frozen=True)
class SphereAddress:
    """
    The sphere S_γ(a) = {x : |x - a|_p = p^γ} = B_γ(a) ∖ B_{γ-1}(a).
    The center is kept canonical below index 1-γ, the resolution at which
    the sphere is determined
    """

    params: FieldParams
    level: int
    center: Tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.center) != self.params.n:
            raise ParameterError("Center dimension does not match the field")
        for c in self.center:
            if truncate(c, self.params.p, 1 - self.level) != c:
                raise ParameterError(
                    "Sphere center {} is not canonical at level {:d}"
                    .format(c, self.level)
                )

    @classmethod
    def around(cls, x: PAdicPoint, level: int) -> "SphereAddress":
        return cls(x.params, level, tuple(
            truncate(c, x.params.p, 1 - level) for c in x.coordinates
        ))

    def inner(self) -> BallAddress:
        """The removed ball B_{γ-1}(a)"""
        return BallAddress(self.params, self.level - 1, self.center)

    def outer(self) -> BallAddress:
        """The ball B_γ(a)"""
        return BallAddress.around(PAdicPoint(self.params, self.center),
                                  self.level)

    def contains(self, x: PAdicPoint) -> bool:
        return ball_contains(self.outer(), x) \
               and not ball_contains(self.inner(), x)

    def __str__(self):
        return _format_address(self.params, self.level, self.center,
                               1 - self.level)


def ball_measure(ball: BallAddress) -> Fraction:
    """Haar measure |B_γ| = p^{nγ}"""
    return ball.params.power(ball.params.n * ball.level)


def sphere_measure(sphere: SphereAddress) -> Fraction:
    """Haar measure |S_γ| = p^{nγ}(1 - p^{-n})"""
    params = sphere.params
    return params.power(params.n * sphere.level) * (1 - params.power(-params.n))


def ball_of_point(x: PAdicPoint, level: int) -> BallAddress:
    """The unique ball of the given level containing x"""
    return BallAddress.around(x, level)


def ball_contains(ball: BallAddress, x: PAdicPoint) -> bool:
    _same_field(ball.params, x.params)
    return ball_of_point(x, ball.level) == ball


def ball_relation(first: BallAddress, second: BallAddress) -> BallRelation:
    """
    Two p-adic balls are either disjoint or nested; this returns which
    of the cases takes place
    """

    _same_field(first.params, second.params)
    p = first.params.p
    if first.level == second.level:
        if first.center == second.center:
            return BallRelation.EQUAL
        return BallRelation.DISJOINT
    if first.level < second.level:
        small, large = first, second
        inside = BallRelation.FIRST_INSIDE_SECOND
    else:
        small, large = second, first
        inside = BallRelation.SECOND_INSIDE_FIRST
    projected = tuple(truncate(c, p, -large.level) for c in small.center)
    if projected == large.center:
        return inside
    return BallRelation.DISJOINT


def is_subset(small: BallAddress, large: BallAddress) -> bool:
    """True when small ⊆ large"""
    return ball_relation(small, large) in (
        BallRelation.EQUAL, BallRelation.FIRST_INSIDE_SECOND
    )


def parent(ball: BallAddress) -> BallAddress:
    p = ball.params.p
    return BallAddress(ball.params, ball.level + 1, tuple(
        truncate(c, p, -ball.level - 1) for c in ball.center
    ))


def children(ball: BallAddress) -> List[BallAddress]:
    """
    The p^n balls of level γ-1 partitioning the ball, in canonical order
    (lexicographic by the new digits, first coordinate first)
    """

    params = ball.params
    step = params.power(-ball.level)
    return [
        BallAddress(params, ball.level - 1, tuple(
            c + d * step for c, d in zip(ball.center, ds)
        ))
        for ds in itertools.product(range(params.p), repeat=params.n)
    ]


def descendants(ball: BallAddress, level: int) -> List[BallAddress]:
    """
    All balls of the given level inside the ball, in canonical depth
    first order
    """

    if level > ball.level:
        raise ParameterError(
            "Descendant level {:d} above ball level {:d}"
            .format(level, ball.level)
        )
    return list(_descendants(ball, level))


@lru_cache(maxsize=256)
def _descendants(ball: BallAddress, level: int) -> Tuple[BallAddress, ...]:
    balls = [ball]
    for _ in range(ball.level - level):
        balls = [c for b in balls for c in children(b)]
    return tuple(balls)


def min_enclosing_level(x: PAdicPoint, ball: BallAddress) -> int:
    """
    Smallest γ* such that the ball of level γ* around x contains the
    given ball: max(level(B), max_j log_p |x_j - c_j|_p)
    """

    _same_field(x.params, ball.params)
    p = x.params.p
    result = ball.level
    for xc, c in zip(x.coordinates, ball.center):
        d = xc - c
        if d != 0:
            result = max(result, -valuation(d, p))
    return result


def enclosing_chain(x: PAdicPoint, lo: int, hi: int) -> List[BallAddress]:
    """Balls B_γ(x) for γ = lo, ..., hi"""
    return [ball_of_point(x, g) for g in range(lo, hi + 1)]


def dilate(ball: BallAddress, k: int) -> BallAddress:
    """The image p^{-k}B of the ball under multiplication by p^{-k}"""
    scale = ball.params.power(-k)
    return BallAddress(ball.params, ball.level + k, tuple(
        c * scale for c in ball.center
    ))


def _format_address(params: FieldParams, level: int,
                    center: Tuple[Fraction, ...], top: int) -> str:
    if params.p > len(DIGITS):
        raise ParameterError(
            "Text addresses support p up to {:d}".format(len(DIGITS))
        )
    coords = []
    for c in center:
        _, ds = digits(c, params.p, top)
        coords.append("".join(DIGITS[d] for d in ds))
    return "{}:{:d}:{}".format(params, level, "|".join(coords))


def format_ball(ball: BallAddress) -> str:
    """
    Canonical text form "p^n:γ:digits|digits|...". The digits of each
    coordinate are listed from the lowest index up to index -γ-1, so the
    most significant index comes last
    """

    return _format_address(ball.params, ball.level, ball.center, -ball.level)


def _parse_address(text: str) -> Tuple[FieldParams, int, Tuple[Fraction, ...]]:
    fields = text.strip().split(':')
    if len(fields) != 3:
        raise ParseError(
            "Malformed address '{}', expected p^n:level:digits".format(text)
        )
    params = FieldParams.parse(fields[0])
    try:
        level = int(fields[1])
    except ValueError:
        raise ParseError("Malformed level in address '{}'".format(text))
    coords = fields[2].split('|')
    if len(coords) != params.n:
        raise ParseError(
            "Address '{}' has {:d} coordinates, expected {:d}"
            .format(text, len(coords), params.n)
        )
    return params, level, tuple(coords)


def _digits_value(params: FieldParams, text: str, top: int, where: str) \
        -> Fraction:
    if text and text[0] == '0':
        raise ParseError("Leading zero digit in {}".format(where))
    start = top - len(text)
    value = Fraction(0)
    for i, ch in enumerate(text):
        d = DIGITS.find(ch.lower())
        if d < 0 or d >= params.p:
            raise ParseError(
                "Invalid digit '{}' at position {:d} in {}"
                .format(ch, i, where)
            )
        value += d * params.power(start + i)
    return value


def parse_ball(text: str) -> BallAddress:
    params, level, coords = _parse_address(text)
    return BallAddress(params, level, tuple(
        _digits_value(params, c, -level, "'{}'".format(text)) for c in coords
    ))


def parse_sphere(text: str) -> SphereAddress:
    params, level, coords = _parse_address(text)
    return SphereAddress(params, level, tuple(
        _digits_value(params, c, 1 - level, "'{}'".format(text))
        for c in coords
    ))
