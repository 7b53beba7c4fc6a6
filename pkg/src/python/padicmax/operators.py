"""
Fractional maximal operators, the maximal commutator and the nonlinear
commutator on Q_p^n.

For 0 ≤ α < n

    M_α f(x) = sup_γ p^{γ(α-n)} ∫_{B_γ(x)} |f(y)| dy.

Every supremum over balls is reduced to finitely many candidates:

* Below the resolution of the input the integrand is constant, so the
  candidate p^{γα}|f(x)| grows with γ and the ball of the resolution
  level dominates all smaller balls.
* Between the resolution and γ* = min_enclosing_level(x, B_Γ(0)) the
  balls around x are enumerated.
* Beyond γ* the balls are B_γ(0) and contain the whole structure ball.
  For compactly supported input the integral is constant there and
  p^{γ(α-n)} decreases, so γ* is the last candidate. For inputs with a
  power-law tail c·p^{ke} the integral grows geometrically and the
  candidates are enumerated until a closed-form upper bound of all
  remaining candidates drops below the best one found.

Values p^{γα} are exact elements of Q(p^{1/L}) so that all operators
return exact :class:`RealBound` values whenever the input is exact.
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
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache, cached_property
from typing import Tuple, Union, Dict, List, Optional

from padicmax import as_rational
from padicmax.bounds import RealBound, maximum, larger, power, log_bound
from padicmax.errors import ParameterError, DivergenceError, DomainError
from padicmax.lcfun import LCFunction, cell_grid, constant, \
    pointwise_combine, CombineOp, align, integrate_global, linf_norm, \
    _grid_index, _ancestor
from padicmax.luxemburg import orlicz_average, YoungKind
from padicmax.ultrametric import FieldParams, BallAddress, PAdicPoint, \
    BallRelation, ball_relation, ball_measure, ball_of_point, \
    min_enclosing_level, point_norm, valuation, truncate, descendants

log = logging.getLogger(__name__)

MAX_TAIL_STEPS = 200


@dataclass(frozen=True)
class Alpha:
    """Order of a fractional maximal operator, 0 ≤ α < n"""

    value: Fraction

    @classmethod
    def of(cls, value, params: FieldParams) -> "Alpha":
        if isinstance(value, Alpha):
            alpha = value
        else:
            alpha = cls(as_rational(value))
        alpha.check(params)
        return alpha

    def check(self, params: FieldParams):
        if not 0 <= self.value < params.n:
            raise ParameterError(
                "α must satisfy 0 ≤ α < n = {:d}, got {}"
                .format(params.n, self.value)
            )

    def __str__(self):
        return str(self.value)


def sphere_index(x: PAdicPoint) -> int:
    """k such that x lies on the sphere S_k(0), x ≠ 0"""
    return valuation(point_norm(x), x.params.p)


@dataclass(frozen=True)
class TailProfile:
    """
    A function on Q_p^n given by certified values on the level γ_res
    cells of B_Γ(0) and by the value c·p^{k·e} on every sphere S_k(0),
    k > Γ. Exponent e = 0 denotes a constant tail.
    """

    params: FieldParams
    top: int
    resolution: int
    values: Tuple[RealBound, ...]
    '''Cell values in grid order'''
    coefficient: RealBound
    exponent: Fraction

    def __post_init__(self):
        expected = self.params.p ** (self.params.n * (self.top - self.resolution))
        if len(self.values) != expected:
            raise ParameterError("Expected {:d} cell values, got {:d}"
                                 .format(expected, len(self.values)))
        if self.exponent > 0 and self.coefficient.sign() != 0:
            raise ParameterError("Tail exponent must not be positive")

    @classmethod
    def from_function(cls, f: LCFunction) -> "TailProfile":
        return cls(f.params, f.top, f.resolution,
                   tuple(RealBound.of(v) for v in f.values),
                   RealBound.of(f.tail), Fraction(0))

    @property
    def grid(self) -> Tuple[BallAddress, ...]:
        return cell_grid(self.params, self.top, self.resolution)

    @property
    def structure_ball(self) -> BallAddress:
        return BallAddress.centered(self.params, self.top)

    @property
    def cell_measure(self) -> Fraction:
        return self.params.power(self.params.n * self.resolution)

    @property
    def has_tail(self) -> bool:
        return self.coefficient.sign() != 0

    def sphere_value(self, k: int) -> RealBound:
        """Value on S_k(0), k > Γ"""
        if self.exponent == 0 or not self.has_tail:
            return self.coefficient
        return self.coefficient \
            * RealBound.power_of_p(self.params.p, k * self.exponent)

    def sphere_measure(self, k: int) -> Fraction:
        n = self.params.n
        return self.params.power(n * k) * (1 - self.params.power(-n))

    def sphere_integral(self, k: int) -> RealBound:
        """Integral over S_k(0), k > Γ"""
        return self.sphere_value(k) * self.sphere_measure(k)

    def cell_value(self, cell: BallAddress) -> RealBound:
        return self.values[_grid_index(self.params, self.top,
                                       self.resolution)[cell]]

    def value_at(self, x: PAdicPoint) -> RealBound:
        if point_norm(x) <= self.params.power(self.top):
            return self.cell_value(ball_of_point(x, self.resolution))
        return self.sphere_value(sphere_index(x))

    def abs(self) -> "TailProfile":
        return TailProfile(self.params, self.top, self.resolution,
                           tuple(abs(v) for v in self.values),
                           abs(self.coefficient), self.exponent)

    @cached_property
    def _ball_sums(self) -> Dict[BallAddress, RealBound]:
        k = self.params.p ** self.params.n
        level_values = [v * self.cell_measure for v in self.values]
        sums = {}
        for level in range(self.resolution, self.top + 1):
            sums.update(zip(cell_grid(self.params, self.top, level),
                            level_values))
            level_values = [_sum(level_values[i:i + k])
                            for i in range(0, len(level_values), k)]
        return sums

    def integral_over(self, ball: BallAddress) -> RealBound:
        """Integral over a ball, exact when the profile is exact"""

        structure = self.structure_ball
        relation = ball_relation(ball, structure)
        if relation == BallRelation.DISJOINT:
            k = sphere_index(ball.center_point())
            return self.sphere_value(k) * ball_measure(ball)
        if relation == BallRelation.SECOND_INSIDE_FIRST:
            total = self._ball_sums[structure]
            for k in range(self.top + 1, ball.level + 1):
                total = total + self.sphere_integral(k)
            return total
        if ball.level >= self.resolution:
            return self._ball_sums[ball]
        return self.cell_value(_ancestor(ball, self.resolution)) \
            * ball_measure(ball)

    def pieces(self, ball: BallAddress) -> List[Tuple[RealBound, Fraction]]:
        """
        The function on the ball as (value, measure) pieces: cells inside
        the structure ball and whole spheres outside of it
        """

        structure = self.structure_ball
        relation = ball_relation(ball, structure)
        if relation == BallRelation.DISJOINT:
            k = sphere_index(ball.center_point())
            return [(self.sphere_value(k), ball_measure(ball))]
        if relation == BallRelation.SECOND_INSIDE_FIRST:
            result = [(v, self.cell_measure) for v in self.values]
            for k in range(self.top + 1, ball.level + 1):
                result.append((self.sphere_value(k), self.sphere_measure(k)))
            return result
        if ball.level < self.resolution:
            cell = _ancestor(ball, self.resolution)
            return [(self.cell_value(cell), ball_measure(ball))]
        index = _grid_index(self.params, self.top, self.resolution)
        first = index[descendants(ball, self.resolution)[0]]
        count = self.params.p ** (self.params.n * (ball.level - self.resolution))
        return [(v, self.cell_measure)
                for v in self.values[first:first + count]]

    def refine(self, resolution: int, top: int) -> "TailProfile":
        """
        The same function on a finer grid and a larger structure ball;
        spheres between the old and the new structure ball are
        materialized as cells
        """

        if resolution > self.resolution or top < self.top:
            raise ParameterError("Cannot refine a profile to a coarser grid")
        if resolution == self.resolution and top == self.top:
            return self
        p = self.params.p
        values = []
        for cell in cell_grid(self.params, top, resolution):
            if all(truncate(c, p, -self.top) == 0 for c in cell.center):
                values.append(self.cell_value(_ancestor(cell, self.resolution)))
            else:
                values.append(self.sphere_value(sphere_index(cell.center_point())))
        return TailProfile(self.params, top, resolution, tuple(values),
                           self.coefficient, self.exponent)


def _sum(values) -> RealBound:
    total = RealBound.of(0)
    for v in values:
        total = total + v
    return total


Source = Union[LCFunction, TailProfile]


@lru_cache(maxsize=256)
def _abs_profile(f: Source) -> TailProfile:
    if isinstance(f, TailProfile):
        return f.abs()
    return TailProfile.from_function(abs(f))


def _scale_power(params: FieldParams, level: int, alpha: Fraction) \
        -> RealBound:
    """p^{γ(α-n)} = |B_γ|^{α/n - 1}"""
    return RealBound.power_of_p(params.p, level * (alpha - params.n))


def _tail_bound(g: TailProfile, alpha: Fraction, level: int) \
        -> Optional[RealBound]:
    """
    Upper bound of p^{γ(α-n)}∫_{B_γ(0)}|g| over all γ ≥ level > Γ, or
    None when the closed form is not yet decreasing at this level
    """

    p, n = g.params.p, g.params.n
    s = g.exponent + n
    a = g._ball_sums[g.structure_ball]
    c = g.coefficient * (1 - g.params.power(-n))
    decay = _scale_power(g.params, level, alpha)
    if s > 0:
        ps = RealBound.power_of_p(p, s)
        growth = RealBound.power_of_p(p, level * s)
        return decay * (a + c * growth * ps / (ps - 1))
    if s < 0:
        ps = RealBound.power_of_p(p, s)
        total = c * RealBound.power_of_p(p, (g.top + 1) * s) / (1 - ps)
        return decay * (a + total)
    ratio = RealBound.power_of_p(p, n - alpha) - 1
    threshold = g.top + math.ceil(1 / ratio.lo)
    if level < threshold:
        return None
    return decay * (a + c * (level - g.top))


def _maximal_at(g: TailProfile, alpha: Fraction, x: PAdicPoint) -> RealBound:
    """M_α of a nonnegative profile at x"""

    params = g.params
    structure = g.structure_ball
    gstar = min_enclosing_level(x, structure)
    candidates = []
    if gstar == g.top:
        start = g.resolution
    else:
        inner = g.sphere_value(gstar)
        candidates.append(inner * RealBound.power_of_p(
            params.p, (gstar - 1) * alpha
        ))
        start = gstar
    for level in range(start, gstar + 1):
        ball = ball_of_point(x, level)
        candidates.append(_scale_power(params, level, alpha)
                          * g.integral_over(ball))
    best = maximum(candidates)
    if not g.has_tail:
        return best
    if g.exponent == 0:
        if alpha != 0:
            raise DivergenceError(
                "M_α with α = {} diverges for a nonzero constant tail"
                .format(alpha)
            )
        return larger(best, g.coefficient)
    if alpha + g.exponent >= 0:
        raise DivergenceError(
            "M_α with α = {} diverges for a tail decaying as p^({}k)"
            .format(alpha, g.exponent)
        )
    level = gstar
    integral = g.integral_over(ball_of_point(x, gstar))
    bound = None
    for _ in range(MAX_TAIL_STEPS):
        bound = _tail_bound(g, alpha, level + 1)
        if bound is not None and bound.hi <= best.lo:
            log.debug("Tail truncated at level {:d}".format(level))
            return best
        level += 1
        integral = integral + g.sphere_integral(level)
        best = larger(best, _scale_power(params, level, alpha) * integral)
    log.warning("Tail of M_α not separated after {:d} levels"
                .format(MAX_TAIL_STEPS))
    hi = best.hi if bound is None else max(best.hi, bound.hi)
    return RealBound(best.lo, hi)


def frac_maximal_at(f: Source, alpha, x: PAdicPoint) -> RealBound:
    """
    Fractional maximal function M_α f(x). Exact when f is exact.

    :param f: compactly supported LCFunction, or any bounded LCFunction
        when α = 0, or a TailProfile with a decaying tail
    :param alpha: order α, 0 ≤ α < n
    :param x: point
    """

    alpha = Alpha.of(alpha, f.params).value
    return _maximal_at(_abs_profile(f), alpha, x)


def hardy_littlewood_at(f: Source, x: PAdicPoint) -> RealBound:
    """M f(x) = M_0 f(x)"""
    return frac_maximal_at(f, 0, x)


def frac_maximal_field(f: LCFunction, alpha) -> TailProfile:
    """
    M_α f on all of Q_p^n: values on the grid of f (M_α f is constant on
    each of its cells) and the tail law c = ∫|f|, e = α - n on the
    spheres beyond the structure ball
    """

    alpha = Alpha.of(alpha, f.params).value
    if isinstance(f, TailProfile) or f.tail != 0:
        raise DivergenceError(
            "The field of M_α needs a compactly supported LCFunction"
        )
    g = _abs_profile(f)
    values = tuple(_maximal_at(g, alpha, cell.center_point())
                   for cell in g.grid)
    total = integrate_global(abs(f))
    return TailProfile(f.params, f.top, f.resolution, values,
                       RealBound.of(total), alpha - f.params.n)


def restricted_frac_maximal(b: Source, alpha, bstar: BallAddress,
                            y: PAdicPoint) -> RealBound:
    """
    M_{α,B*} b(y): the supremum over the balls B_γ(y) ⊆ B* only
    """

    alpha = Alpha.of(alpha, b.params).value
    if not bstar.contains(y):
        raise DomainError("Point {} is not in the ball {}".format(y, bstar))
    g = _abs_profile(b)
    candidates = []
    for level in range(min(g.resolution, bstar.level), bstar.level + 1):
        candidates.append(_scale_power(b.params, level, alpha)
                          * g.integral_over(ball_of_point(y, level)))
    return maximum(candidates)


def sphere_point(params: FieldParams, k: int) -> PAdicPoint:
    """The point (p^{-k}, 0, ..., 0) of the sphere S_k(0)"""
    return PAdicPoint.from_rationals(
        params, [params.power(-k)] + [0] * (params.n - 1)
    )


def restricted_deviation(b: LCFunction, alpha, bstar: BallAddress) \
        -> List[Tuple[RealBound, Fraction, PAdicPoint]]:
    """
    b(y) - |B*|^{-α/n} M_{α,B*} b(y) for y ∈ B* as (value, measure,
    representative point) pieces. The difference is constant on every
    piece: pieces are the grid cells of b inside B* and, when B* contains
    the structure ball, the spheres S_k(0) between the two
    """

    alpha = Alpha.of(alpha, b.params).value
    params = b.params
    scale = RealBound.power_of_p(params.p, -bstar.level * alpha)
    relation = ball_relation(bstar, b.structure_ball)
    if relation == BallRelation.DISJOINT or bstar.level < b.resolution:
        y = bstar.center_point()
        v = RealBound.of(b.value_at(y))
        return [(v - abs(v), ball_measure(bstar), y)]

    def piece(y: PAdicPoint, measure: Fraction):
        value = RealBound.of(b.value_at(y)) \
            - scale * restricted_frac_maximal(b, alpha, bstar, y)
        return value, measure, y

    if relation == BallRelation.SECOND_INSIDE_FIRST:
        cells = b.grid
    else:
        cells = descendants(bstar, b.resolution)
    pieces = [piece(cell.center_point(), b.cell_measure) for cell in cells]
    for k in range(b.top + 1, bstar.level + 1):
        measure = params.power(params.n * k) * (1 - params.power(-params.n))
        pieces.append(piece(sphere_point(params, k), measure))
    return pieces


@lru_cache(maxsize=1024)
def _deviation_weight(b: LCFunction, f: LCFunction, bx: Fraction) \
        -> LCFunction:
    """|b(x) - b(y)||f(y)| as a function of y"""
    d = pointwise_combine(constant(b.params, bx) - b, None, CombineOp.ABS)
    return d * abs(f)


def maximal_commutator(b: LCFunction, f: LCFunction, alpha,
                       x: PAdicPoint) -> RealBound:
    """
    M_{α,b} f(x) = sup_γ p^{γ(α-n)} ∫_{B_γ(x)} |b(x) - b(y)||f(y)| dy
    """

    if f.tail != 0:
        raise DivergenceError("Maximal commutator needs compactly supported f")
    return frac_maximal_at(_deviation_weight(b, f, b.value_at(x)), alpha, x)


def nonlinear_commutator(b: LCFunction, f: LCFunction, alpha,
                         x: PAdicPoint) -> RealBound:
    """
    [b, M_α] f(x) = b(x) M_α f(x) - M_α(bf)(x); may be negative
    """

    bf = b * f
    if bf.tail != 0:
        raise DivergenceError("Nonlinear commutator needs compactly "
                              "supported bf")
    return b.value_at(x) * frac_maximal_at(f, alpha, x) \
        - frac_maximal_at(bf, alpha, x)


def commutator_field(b: LCFunction, f: LCFunction, alpha) -> TailProfile:
    """[b, M_α] f on all of Q_p^n as a profile with tail exponent α - n"""

    alpha = Alpha.of(alpha, b.params).value
    if f.tail != 0:
        raise DivergenceError("Commutator field needs compactly supported f")
    b, f = align(b, f)
    bf = b * f
    mf = frac_maximal_field(f, alpha)
    mbf = frac_maximal_field(bf, alpha)
    values = tuple(v * m - mb for v, m, mb in
                   zip(b.values, mf.values, mbf.values))
    coefficient = b.tail * integrate_global(abs(f)) \
        - integrate_global(abs(bf))
    return TailProfile(b.params, b.top, b.resolution, values,
                       RealBound.of(coefficient), alpha - b.params.n)


def maximal_commutator_field(b: LCFunction, f: LCFunction, alpha) \
        -> TailProfile:
    """M_{α,b} f on all of Q_p^n as a profile with tail exponent α - n"""

    alpha = Alpha.of(alpha, b.params).value
    if f.tail != 0:
        raise DivergenceError("Maximal commutator field needs compactly "
                              "supported f")
    b, f = align(b, f)
    values = tuple(maximal_commutator(b, f, alpha, cell.center_point())
                   for cell in b.grid)
    far = integrate_global(_deviation_weight(b, f, b.tail))
    return TailProfile(b.params, b.top, b.resolution, values,
                       RealBound.of(far), alpha - b.params.n)


def power_maximal(f: LCFunction, eps, x: PAdicPoint) -> RealBound:
    """M_ε f(x) = (M(|f|^ε)(x))^{1/ε}"""

    eps = as_rational(eps)
    if eps <= 0:
        raise ParameterError("ε must be positive, got {}".format(eps))
    g = TailProfile(f.params, f.top, f.resolution,
                    tuple(power(abs(v), eps) for v in f.values),
                    power(abs(f.tail), eps), Fraction(0))
    return power(_maximal_at(g, Fraction(0), x), 1 / eps)


def llogl_maximal(f: LCFunction, alpha, x: PAdicPoint) -> RealBound:
    """
    M_{α,L log L} f(x) = sup_γ |B_γ(x)|^{α/n} ‖f‖_{L log L, B_γ(x)}.

    Beyond the ball containing the support the average is bounded by
    (A/|B|)(1 + log(max|f|·|B|/A)), A = ∫|f|, which makes the candidates
    bounded by A p^{γ(α-n)}(a + bγ) with a = 1 + ln(max|f|/A) and
    b = n ln p; this bound decreases once a + bγ > n/(n-α)
    """

    alpha = Alpha.of(alpha, f.params).value
    if f.tail != 0:
        raise DivergenceError("L log L maximal function needs compactly "
                              "supported f")
    params = f.params
    n = params.n
    structure = f.structure_ball
    gstar = min_enclosing_level(x, structure)
    start = f.resolution if gstar == f.top else gstar
    candidates = []
    for level in range(start, gstar + 1):
        ball = ball_of_point(x, level)
        candidates.append(
            RealBound.power_of_p(params.p, level * alpha)
            * orlicz_average(f, ball, YoungKind.LLOGL)
        )
    best = maximum(candidates)
    total = integrate_global(abs(f))
    if total == 0:
        return best
    largest = linf_norm(f)
    a = 1 + log_bound(largest / total)
    b = n * log_bound(params.p)
    knee = RealBound.of(Fraction(n) / (n - alpha))
    level = gstar
    bound = None
    for _ in range(MAX_TAIL_STEPS):
        level += 1
        bound = total * _scale_power(params, level, alpha) * (a + b * level)
        if (a + b * level).lo > knee.hi and bound.hi <= best.lo:
            return best
        ball = BallAddress.centered(params, level)
        best = larger(best, RealBound.power_of_p(params.p, level * alpha)
                      * orlicz_average(f, ball, YoungKind.LLOGL))
    return RealBound(best.lo, max(best.hi, bound.hi))
