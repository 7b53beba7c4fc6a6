"""
Luxemburg type norms: inf{ν > 0 : modular(ν) ≤ 1} for modulars that
are continuous and strictly decreasing in ν, found by certified
bisection. Also the two Young functions of the Zygmund pair and the
Orlicz averages they define on balls.
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
from enum import Enum
from fractions import Fraction
from typing import Callable, Dict

from padicmax.bounds import RealBound, log_bound, exp_bound, \
    current_precision, current_bisection, working_precision
from padicmax.lcfun import LCFunction, value_distribution
from padicmax.ultrametric import BallAddress, ball_measure

log = logging.getLogger(__name__)

MAX_BISECTION_STEPS = 400


class YoungKind(Enum):
    """Young functions of the Zygmund pair"""

    LLOGL = "llogl"
    '''Φ(t) = t(1 + log⁺t), the space L log L'''
    EXPL = "expl"
    '''Ψ(t) = e^t - 1, the space exp L'''

    @classmethod
    def values(cls):
        return {k.value for k in cls}


def young(kind: YoungKind, t) -> RealBound:
    """Certified value of the Young function at a nonnegative rational"""

    t = Fraction(t)
    if kind == YoungKind.LLOGL:
        if t <= 1:
            return RealBound.of(t)
        return t * (1 + log_bound(t))
    if t == 0:
        return RealBound.of(0)
    return exp_bound(t) - 1


def _dyadic_bracket(lo: Fraction, hi: Fraction):
    g = current_precision() + 8 \
        - (lo.numerator.bit_length() - lo.denominator.bit_length())
    g = max(g, 0)
    scale = 1 << g
    dlo = Fraction((lo.numerator * scale) // lo.denominator, scale)
    dhi = Fraction(-((-hi.numerator * scale) // hi.denominator), scale)
    if dlo <= 0:
        dlo = lo
    return dlo, dhi


def luxemburg_bisection(modular: Callable[[Fraction], RealBound],
                        lo: Fraction, hi: Fraction) -> RealBound:
    """
    Encloses ν* = inf{ν > 0 : modular(ν) ≤ 1}.

    :param modular: continuous, strictly decreasing where positive
    :param lo: positive number with modular(lo) ≥ 1
    :param hi: number with modular(hi) ≤ 1
    :return: interval [lo, hi] around ν* of relative width
        2^{-bisection bits}, or an exact value when the modular hits 1
        exactly at a bisection point
    """

    lo, hi = Fraction(lo), Fraction(hi)
    if lo == hi:
        return RealBound.of(lo)
    for candidate in (lo, hi):
        m = modular(candidate)
        if m.is_rational and m.value == 1:
            return RealBound.of(candidate)
    lo, hi = _dyadic_bracket(lo, hi)
    target = Fraction(1, 1 << current_bisection())
    steps = 0
    while hi - lo > lo * target and steps < MAX_BISECTION_STEPS:
        steps += 1
        mid = (lo + hi) / 2
        m = modular(mid)
        if m.is_rational and m.value == 1:
            return RealBound.of(mid)
        if m.lo > 1:
            lo = mid
            continue
        if m.hi <= 1:
            hi = mid
            continue
        with working_precision(current_precision() * 2):
            m = modular(mid)
        if m.lo > 1:
            lo = mid
        elif m.hi <= 1:
            hi = mid
        else:
            log.debug("Bisection stalled at {} after {:d} steps"
                      .format(mid, steps))
            break
    return RealBound.between(lo, hi)


def distribution_modular(kind: YoungKind, distribution: Dict[Fraction, Fraction],
                         measure: Fraction) -> Callable[[Fraction], RealBound]:
    """(1/|B|) Σ_v |{f = v}| Φ(|v|/ν) as a function of ν"""

    weights = {}
    for v, m in distribution.items():
        if v != 0:
            weights[abs(v)] = weights.get(abs(v), Fraction(0)) + m / measure

    def modular(nu: Fraction) -> RealBound:
        total = RealBound.of(0)
        for v, w in weights.items():
            total = total + w * young(kind, v / nu)
        return total

    return modular


def orlicz_average(f: LCFunction, ball: BallAddress,
                   kind: YoungKind) -> RealBound:
    """
    Luxemburg average ‖f‖_{Φ,B} = inf{ν > 0 : (1/|B|)∫_B Φ(|f|/ν) ≤ 1}.

    Since Φ(t) ≥ t for both Young functions the root lies above the mean
    of |f|; it lies below max|f| for L log L and below 2 max|f| for exp L
    """

    distribution = value_distribution(f, ball)
    measure = ball_measure(ball)
    magnitudes = [abs(v) for v, m in distribution.items() if v != 0 and m > 0]
    if not magnitudes:
        return RealBound.of(0)
    mean = sum(abs(v) * m for v, m in distribution.items()) / measure
    largest = max(magnitudes)
    if kind == YoungKind.LLOGL:
        if mean == largest:
            return RealBound.of(largest)
        hi = largest
    else:
        hi = 2 * largest
    return luxemburg_bisection(
        distribution_modular(kind, distribution, measure), mean, hi
    )
