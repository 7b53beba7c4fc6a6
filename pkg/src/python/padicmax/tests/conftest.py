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

import pytest

from padicmax.lcfun import LCFunction, char_fn
from padicmax.ultrametric import FieldParams, BallAddress, PAdicPoint


@pytest.fixture
def q2() -> FieldParams:
    return FieldParams(2, 1)


@pytest.fixture
def q2_squared() -> FieldParams:
    return FieldParams(2, 2)


@pytest.fixture
def z2(q2) -> BallAddress:
    """The unit ball B_0(0) of Q_2"""
    return BallAddress.centered(q2, 0)


@pytest.fixture
def chi_z2(z2) -> LCFunction:
    return char_fn(z2)


@pytest.fixture
def point(q2):
    """Builds a point of Q_2 from a rational"""

    def build(value) -> PAdicPoint:
        return PAdicPoint.from_rationals(q2, [value])

    return build


@pytest.fixture
def two_valued(q2) -> LCFunction:
    """2 on B_0(0), 1 on B_0(1/2) and 0 outside of B_1(0)"""
    return LCFunction(q2, 1, 0, (Fraction(2), Fraction(1)), Fraction(0))
