"""
Exact arithmetic in the field Q(p^{1/L}).

Fractional maximal operators multiply Haar integrals by powers p^{γα}
with rational α. With α = u/L every such power is an element of
Q(p^{1/L}), a field of degree L over Q with basis 1, t, ..., t^{L-1},
t = p^{1/L}. Keeping values in this basis makes sums, differences and
products exact, and makes equality decidable: an element is zero if and
only if all its coordinates are zero. Signs of nonzero elements are found
by interval evaluation with growing precision.
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

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Tuple

MAX_SIGN_BITS = 1 << 16


def integer_root(value: int, k: int) -> int:
    """floor(value^{1/k}) for a nonnegative integer"""

    if value < 0:
        raise ValueError("Root of a negative number")
    if value < 2 or k == 1:
        return value
    x = 1 << ((value.bit_length() + k - 1) // k)
    while True:
        y = ((k - 1) * x + value // x ** (k - 1)) // k
        if y >= x:
            break
        x = y
    while x ** k > value:
        x -= 1
    while (x + 1) ** k <= value:
        x += 1
    return x


def root_interval(x: Fraction, k: int, bits: int) -> Tuple[Fraction, Fraction]:
    """
    Rational bounds lo ≤ x^{1/k} ≤ hi with relative width about 2^{-bits};
    lo = hi when the root is an exact rational with a dyadic scale

    :param x: nonnegative rational
    :param k: positive root order
    :param bits: requested relative precision
    """

    if x < 0:
        raise ValueError("Root of a negative number")
    if x == 0 or k == 1:
        return x, x
    magnitude = (x.numerator.bit_length() - x.denominator.bit_length()) // k
    shift = max(bits - magnitude + 2, 0)
    scaled = (x.numerator << (shift * k)) // x.denominator
    r = integer_root(scaled, k)
    lo = Fraction(r, 1 << shift)
    if r ** k * x.denominator == x.numerator << (shift * k):
        return lo, lo
    return lo, Fraction(r + 1, 1 << shift)


@lru_cache(maxsize=4096)
def _basis_bounds(p: int, root: int, j: int, bits: int) \
        -> Tuple[Fraction, Fraction]:
    return root_interval(Fraction(p ** j), root, bits)


@dataclass(frozen=True)
class Radical:
    """
    Element Σ_j c_j p^{j/root} of Q(p^{1/root}), j = 0, ..., root-1.
    Rationals have root = 1 and p = 0
    """

    p: int
    root: int
    coefficients: Tuple[Fraction, ...]

    @classmethod
    def rational(cls, value) -> "Radical":
        return cls(0, 1, (Fraction(value),))

    @classmethod
    def power_of_p(cls, p: int, exponent: Fraction) -> "Radical":
        """p^{exponent} for a rational exponent"""

        exponent = Fraction(exponent)
        root = exponent.denominator
        q, r = divmod(exponent.numerator, root)
        if root == 1:
            return cls.rational(Fraction(p) ** q)
        coefficients = [Fraction(0)] * root
        coefficients[r] = Fraction(p) ** q
        return cls(p, root, tuple(coefficients))

    @property
    def is_rational(self) -> bool:
        return self.root == 1

    @property
    def rational_value(self) -> Fraction:
        if not self.is_rational:
            raise ValueError("Not a rational number")
        return self.coefficients[0]

    def is_zero(self) -> bool:
        return not any(self.coefficients)

    def _lift(self, root: int) -> Tuple[Fraction, ...]:
        step = root // self.root
        coefficients = [Fraction(0)] * root
        for j, c in enumerate(self.coefficients):
            coefficients[j * step] = c
        return tuple(coefficients)

    def _common(self, other: "Radical"):
        if self.root > 1 and other.root > 1 and self.p != other.p:
            raise ValueError("Radicals of different primes: {:d} and {:d}"
                             .format(self.p, other.p))
        p = self.p if self.root > 1 else other.p
        root = self.root * other.root // math.gcd(self.root, other.root)
        return p, root, self._lift(root), other._lift(root)

    @staticmethod
    def _normalized(p: int, root: int, coefficients) -> "Radical":
        coefficients = tuple(coefficients)
        nonzero = [j for j, c in enumerate(coefficients) if c != 0]
        g = root
        for j in nonzero:
            g = math.gcd(g, j)
        if g > 1:
            root //= g
            coefficients = tuple(coefficients[j * g] for j in range(root))
        if root == 1:
            return Radical(0, 1, coefficients)
        return Radical(p, root, coefficients)

    def __add__(self, other: "Radical") -> "Radical":
        p, root, a, b = self._common(other)
        return self._normalized(p, root, (x + y for x, y in zip(a, b)))

    def __neg__(self) -> "Radical":
        return Radical(self.p, self.root, tuple(-c for c in self.coefficients))

    def __sub__(self, other: "Radical") -> "Radical":
        return self + (-other)

    def __mul__(self, other: "Radical") -> "Radical":
        p, root, a, b = self._common(other)
        product = [Fraction(0)] * root
        for i, x in enumerate(a):
            if x == 0:
                continue
            for j, y in enumerate(b):
                if y == 0:
                    continue
                k = i + j
                if k >= root:
                    product[k - root] += p * x * y
                else:
                    product[k] += x * y
        return self._normalized(p, root, product)

    def scale(self, factor) -> "Radical":
        factor = Fraction(factor)
        return Radical(self.p, self.root,
                       tuple(c * factor for c in self.coefficients))

    def bounds(self, bits: int) -> Tuple[Fraction, Fraction]:
        """Rational enclosure of the real value"""

        if self.is_rational:
            c = self.coefficients[0]
            return c, c
        lo = hi = Fraction(0)
        for j, c in enumerate(self.coefficients):
            if c == 0:
                continue
            blo, bhi = _basis_bounds(self.p, self.root, j, bits)
            if c > 0:
                lo += c * blo
                hi += c * bhi
            else:
                lo += c * bhi
                hi += c * blo
        return lo, hi

    def sign(self) -> int:
        """Exact sign: -1, 0 or 1"""

        if self.is_zero():
            return 0
        bits = 64
        while bits <= MAX_SIGN_BITS:
            lo, hi = self.bounds(bits)
            if lo > 0:
                return 1
            if hi < 0:
                return -1
            bits *= 2
        raise ArithmeticError("Sign of {} not resolved".format(self))

    def compare(self, other: "Radical") -> int:
        return (self - other).sign()

    def __str__(self):
        if self.is_rational:
            return str(self.coefficients[0])
        terms = []
        for j, c in enumerate(self.coefficients):
            if c == 0:
                continue
            if j == 0:
                terms.append(str(c))
            else:
                terms.append("{}*{:d}^({:d}/{:d})".format(c, self.p, j,
                                                          self.root))
        return " + ".join(terms) if terms else "0"
