"""
Toolkit for exact and interval-certified computation of p-adic maximal
operators, their commutators and the function space norms they are
measured in, together with a verification harness that checks the
pointwise inequalities and identities of the theory on finitely representable
functions over Q_p^n
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

from fractions import Fraction
from typing import Union

PRECISION_ENV = "PADICMAX_PRECISION"
BISECTION_ENV = "PADICMAX_BISECTION"
DEFAULT_PRECISION = 60
DEFAULT_BISECTION = 40
DIGITS = "0123456789abcdefghijklmnopqrstuvwxyz"

Rational = Union[int, Fraction]


def as_rational(value) -> Fraction:
    """
    Converts an integer, a Fraction or a string "num/den" into an exact
    Fraction. Floats are accepted only through their decimal string
    representation, so that "0.5" and 0.5 mean the same thing.

    :param value: value to convert
    :return: Fraction
    """

    from padicmax.errors import ParseError

    if isinstance(value, bool):
        raise ParseError("Boolean is not a rational number: {}".format(value))
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        value = repr(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as x:
            raise ParseError("Malformed rational '{}': {}".format(value, x))
    raise ParseError("Unsupported rational value: {!r}".format(value))


def format_rational(value: Fraction) -> str:
    """Reduced "num/den" text, integers without a denominator"""
    return str(Fraction(value))
