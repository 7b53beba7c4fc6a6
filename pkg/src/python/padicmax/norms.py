"""
Norms and averages on Q_p^n: L^q, weak L^q on balls, Morrey, BMO and
BMO_q, Zygmund Orlicz averages, variable exponent Luxemburg norms and
the log-Hölder constants of an exponent function.

Suprema over balls are reduced to finitely many candidates the same way
as in :mod:`padicmax.operators`: balls inside the structure ball are
enumerated level by level, balls below the resolution are dominated by
the cell containing them, and balls around the structure ball are
enumerated until a closed-form bound of all remaining candidates falls
below the best candidate found. Every sup-type norm reports the ball
attaining it; ties are broken by the canonical ball order.
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
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Dict, List, Tuple, Union

from padicmax import as_rational, format_rational
from padicmax.bounds import RealBound, larger, power, exp_bound, log_base, \
    current_precision
from padicmax.errors import ParameterError, DivergenceError
from padicmax.lcfun import LCFunction, cell_grid, value_distribution, \
    linf_norm, refine, constant
from padicmax.luxemburg import luxemburg_bisection, orlicz_average, \
    YoungKind
from padicmax.operators import TailProfile, Alpha, restricted_deviation, \
    sphere_point, MAX_TAIL_STEPS
from padicmax.ultrametric import FieldParams, BallAddress, PAdicPoint, \
    ball_measure, ball_order_key, descendants, format_ball, point_norm

log = logging.getLogger(__name__)

DEFAULT_EXTRA_LEVELS = 8
MAX_BRACKET_STEPS = 400

Source = Union[LCFunction, TailProfile]

__all__ = [
    "NormResult", "MorreyParams", "ExponentFunction", "LogHolderConstants",
    "Supremum", "YoungKind", "lq_modular", "lq_norm", "lq_modular_on_ball",
    "lq_norm_on_ball", "characteristic_norm",
    "linf_norm", "weak_lq_norm", "morrey_norm", "bmo_norm", "bmo_q_norm",
    "orlicz_average", "luxemburg_variable_norm", "luxemburg_of_pieces",
    "conjugate_exponent", "log_holder_constants", "fractional_partner",
    "oscillation_distribution", "oscillation_level_set",
    "exp_oscillation_mean", "nonlinear_oscillation", "he_oscillation",
    "clear_caches",
]


@dataclass(frozen=True)
class NormResult:
    """A certified norm value with the ball attaining a sup-type norm"""

    name: str
    value: RealBound
    witness: Optional[BallAddress] = None
    '''Ball attaining the supremum, None for limits and integral norms'''
    parameters: Tuple[Tuple[str, str], ...] = ()
    modular: Optional[RealBound] = None
    '''The supremum before the final 1/q power, when there is one'''

    def to_dict(self) -> Dict:
        result = {
            "name": self.name,
            "params": dict(self.parameters),
            "lo": format_rational(self.value.lo),
            "hi": format_rational(self.value.hi),
            "witness": format_ball(self.witness) if self.witness else None
        }
        return result


def _tie_key(ball: Optional[BallAddress]):
    if ball is None:
        return 1,
    return 0, ball_order_key(ball)


class Supremum:
    """
    Accumulates candidates of a supremum: the certified hull of their
    maximum and the candidate with the largest value as the witness
    """

    def __init__(self):
        self.hull: Optional[RealBound] = None
        self.best: Optional[RealBound] = None
        self.witness: Optional[BallAddress] = None

    def offer(self, value, ball: Optional[BallAddress] = None):
        value = RealBound.of(value)
        self.hull = value if self.hull is None else larger(self.hull, value)
        if self.best is None:
            self.best, self.witness = value, ball
            return
        if value.is_exact and self.best.is_exact:
            c = value.exact.compare(self.best.exact)
        else:
            c = (value.lo > self.best.lo) - (value.lo < self.best.lo)
        if c > 0 or (c == 0 and _tie_key(ball) < _tie_key(self.witness)):
            self.best, self.witness = value, ball

    @property
    def lo(self) -> Fraction:
        return self.hull.lo

    def separated(self, bound: RealBound) -> bool:
        """True when the bound of the remaining candidates is not above"""
        return bound.hi <= self.hull.lo

    def result(self, bound: Optional[RealBound] = None) -> RealBound:
        """The hull, widened by the bound of candidates not enumerated"""
        if bound is None or self.separated(bound):
            return self.hull
        return RealBound(self.hull.lo, max(self.hull.hi, bound.hi))


@dataclass(frozen=True)
class MorreyParams:
    """Parameters of the Morrey space L^{q,λ}: q ≥ 1, 0 ≤ λ < n"""

    q: Fraction
    lam: Fraction

    @classmethod
    def of(cls, q, lam) -> "MorreyParams":
        return cls(as_rational(q), as_rational(lam))

    def check(self, params: FieldParams):
        if self.q < 1:
            raise ParameterError("Morrey exponent q must be at least 1, "
                                 "got {}".format(self.q))
        if self.lam == params.n:
            raise ParameterError(
                "λ = n is the space L^∞, use the L^∞ norm instead"
            )
        if not 0 <= self.lam < params.n:
            raise ParameterError("λ must satisfy 0 ≤ λ < n = {:d}, got {}"
                                 .format(params.n, self.lam))


def _as_profile(f: Source) -> TailProfile:
    if isinstance(f, TailProfile):
        return f
    return TailProfile.from_function(f)


def _check_positive(q, name: str = "q") -> Fraction:
    q = as_rational(q)
    if q <= 0:
        raise ParameterError("{} must be positive, got {}".format(name, q))
    return q


def _power_profile(f: Source, q: Fraction) -> TailProfile:
    """|f|^q at the working precision"""
    return _cached_power_profile(f, q, current_precision())


@lru_cache(maxsize=256)
def _cached_power_profile(f: Source, q: Fraction, bits: int) -> TailProfile:
    g = _as_profile(f)
    return TailProfile(g.params, g.top, g.resolution,
                       tuple(power(abs(v), q) for v in g.values),
                       power(abs(g.coefficient), q), g.exponent * q)


def clear_caches():
    """Drops cached powers of all precisions"""
    _cached_power_profile.cache_clear()


def _tail_total(h: TailProfile) -> RealBound:
    """Σ_{k>Γ} ∫_{S_k(0)} h for a nonnegative profile, in closed form"""

    if not h.has_tail:
        return RealBound.of(0)
    p, n = h.params.p, h.params.n
    s = h.exponent + n
    if s >= 0:
        raise DivergenceError(
            "Tail c·p^({}k) is not integrable over Q_p^{:d}"
            .format(h.exponent, n)
        )
    ratio = RealBound.power_of_p(p, s)
    return h.coefficient * (1 - h.params.power(-n)) \
        * RealBound.power_of_p(p, (h.top + 1) * s) / (1 - ratio)


def lq_modular(f: Source, q) -> RealBound:
    """∫|f|^q over Q_p^n, exact for exact input and integer q"""

    q = _check_positive(q)
    h = _power_profile(f, q)
    return h._ball_sums[h.structure_ball] + _tail_total(h)


def lq_norm(f: Source, q) -> RealBound:
    """
    (∫|f|^q)^{1/q}, 1 ≤ q < ∞. Tails c·p^{ke} of a TailProfile are summed
    in closed form and must satisfy n + qe < 0
    """

    q = as_rational(q)
    if q < 1:
        raise ParameterError("L^q needs q ≥ 1, got {}".format(q))
    return power(lq_modular(f, q), 1 / q)


def lq_modular_on_ball(f: Source, q, ball: BallAddress) -> RealBound:
    """∫_B |f|^q for q > 0"""
    q = _check_positive(q)
    return _power_profile(f, q).integral_over(ball)


def lq_norm_on_ball(f: Source, q, ball: BallAddress) -> RealBound:
    """(∫_B |f|^q)^{1/q} for q > 0"""
    return power(lq_modular_on_ball(f, q, ball), 1 / as_rational(q))


def weak_lq_norm(f: LCFunction, q, ball: BallAddress) -> RealBound:
    """
    sup_t t·|{y ∈ B : |f(y)| > t}|^{1/q}. The level set only changes at
    the values of |f|, so the supremum is the largest of
    v·|{|f| ≥ v} ∩ B|^{1/q} over the distinct values v
    """

    q = _check_positive(q)
    levels = defaultdict(Fraction)
    for v, m in value_distribution(f, ball).items():
        if v != 0:
            levels[abs(v)] += m
    sup = Supremum()
    cumulative = Fraction(0)
    for v in sorted(levels, reverse=True):
        cumulative += levels[v]
        sup.offer(v * power(cumulative, 1 / q))
    if sup.hull is None:
        return RealBound.of(0)
    return sup.result()


def morrey_norm(f: Source, params: MorreyParams) -> NormResult:
    """
    ‖f‖_{L^{q,λ}} = sup_B (|B|^{-λ/n} ∫_B |f|^q)^{1/q}.

    With h = |f|^q having the tail c'·p^{ks}/(1 - p^{-n}) per sphere
    measure, s = qe + n, the balls B_γ(0) beyond the structure ball give
    p^{-γλ}(J + C Σ_{Γ<k≤γ} p^{ks}); balls inside a far sphere S_k give
    at most c'p^{-(n-λ)} p^{k(s-λ)}. The supremum is infinite when
    s > λ or s = λ = 0
    """

    f_params = f.params
    params.check(f_params)
    p, n = f_params.p, f_params.n
    q, lam = params.q, params.lam
    h = _power_profile(f, q)
    sup = Supremum()

    def weight(level: int) -> RealBound:
        return RealBound.power_of_p(p, -level * lam)

    for level in range(h.resolution, h.top + 1):
        for ball in cell_grid(f_params, h.top, level):
            sup.offer(h._ball_sums[ball] * weight(level), ball)

    bound = None
    if h.has_tail:
        s = h.exponent + n
        if s > lam or (s == 0 and lam == 0):
            raise DivergenceError(
                "Morrey norm diverges: |f|^q decays as p^({}k) on spheres "
                "and λ = {}".format(h.exponent, lam)
            )
        k = h.top + 1
        far = BallAddress.around(sphere_point(f_params, k), k - 1)
        sup.offer(h.sphere_value(k) * ball_measure(far) * weight(k - 1), far)
        bound = _morrey_chain(h, lam, sup)
    return NormResult(
        "morrey", power(sup.result(bound), 1 / q), sup.witness,
        (("q", format_rational(q)), ("lambda", format_rational(lam))),
        sup.result(bound)
    )


def _morrey_chain(h: TailProfile, lam: Fraction, sup: Supremum) \
        -> Optional[RealBound]:
    """
    Candidates p^{-γλ}∫_{B_γ(0)} h, γ > Γ; returns the bound of the
    candidates left out, None when the chain was closed exactly
    """

    p, n = h.params.p, h.params.n
    s = h.exponent + n
    core = h._ball_sums[h.structure_ball]
    c = h.coefficient * (1 - h.params.power(-n))
    ps = RealBound.power_of_p(p, s)
    if s < 0 and lam == 0:
        sup.offer(core + _tail_total(h))
        return None
    if s == lam:
        first = BallAddress.centered(h.params, h.top + 1)
        sup.offer(h.integral_over(first) * RealBound.power_of_p(
            p, -(h.top + 1) * lam), first)
        sup.offer(c * ps / (ps - 1))
        return None

    def upper(level: int) -> Optional[RealBound]:
        decay = RealBound.power_of_p(p, -level * lam)
        if s < 0:
            return decay * (core + _tail_total(h))
        if s > 0:
            return decay * core + c * ps / (ps - 1) \
                * RealBound.power_of_p(p, level * (s - lam))
        threshold = h.top + math.ceil(
            1 / (RealBound.power_of_p(p, lam) - 1).lo
        )
        if level < threshold:
            return None
        return decay * (core + c * (level - h.top))

    level = h.top
    integral = core
    bound = None
    for _ in range(MAX_TAIL_STEPS):
        bound = upper(level + 1)
        if bound is not None and sup.separated(bound):
            log.debug("Morrey chain closed at level {:d}".format(level))
            return None
        level += 1
        integral = integral + h.sphere_integral(level)
        ball = BallAddress.centered(h.params, level)
        sup.offer(integral * RealBound.power_of_p(p, -level * lam), ball)
    log.warning("Morrey chain not closed after {:d} levels"
                .format(MAX_TAIL_STEPS))
    return bound


def _mean(distribution: Dict[Fraction, Fraction], measure: Fraction) \
        -> Fraction:
    return sum((v * m for v, m in distribution.items()), Fraction(0)) \
        / measure


def oscillation_distribution(b: LCFunction, ball: BallAddress) \
        -> Dict[Fraction, Fraction]:
    """Maps the values of |b - b_B| on B to the measures of their level sets"""

    distribution = value_distribution(b, ball)
    mean = _mean(distribution, ball_measure(ball))
    result = defaultdict(Fraction)
    for v, m in distribution.items():
        result[abs(v - mean)] += m
    return dict(result)


def oscillation_level_set(b: LCFunction, ball: BallAddress, t) -> Fraction:
    """|{y ∈ B : |b(y) - b_B| > t}|"""
    t = as_rational(t)
    return sum((m for v, m in oscillation_distribution(b, ball).items()
                if v > t), Fraction(0))


def exp_oscillation_mean(b: LCFunction, lam, ball: BallAddress) \
        -> RealBound:
    """(1/|B|) ∫_B exp(λ|b(y) - b_B|) dy"""

    lam = as_rational(lam)
    total = RealBound.of(0)
    for v, m in oscillation_distribution(b, ball).items():
        total = total + exp_bound(lam * v) * m
    return total / ball_measure(ball)


def _mean_oscillation(b: LCFunction, ball: BallAddress) -> Fraction:
    return sum((v * m for v, m in oscillation_distribution(b, ball).items()),
               Fraction(0)) / ball_measure(ball)


def _core_deviation(b: LCFunction) -> Tuple[Fraction, Fraction]:
    """(∫_{B_Γ}|b - c_∞|, max_{B_Γ}|b - c_∞|)"""
    total = sum((abs(v - b.tail) for v in b.values), Fraction(0)) \
        * b.cell_measure
    return total, max(abs(v - b.tail) for v in b.values)


def bmo_norm(b: LCFunction) -> NormResult:
    """
    ‖b‖_BMO = sup_B (1/|B|)∫_B |b - b_B|. Balls beyond the structure
    ball have mean oscillation at most 2p^{-nγ}∫_{B_Γ}|b - c_∞|
    """

    params = b.params
    sup = Supremum()
    for level in range(b.resolution, b.top + 1):
        for ball in cell_grid(params, b.top, level):
            sup.offer(_mean_oscillation(b, ball), ball)
    deviation, _ = _core_deviation(b)
    level = b.top
    bound = None
    while deviation != 0 and level - b.top < MAX_TAIL_STEPS:
        bound = RealBound.of(2 * deviation
                             * params.power(-params.n * (level + 1)))
        if sup.separated(bound):
            bound = None
            break
        level += 1
        ball = BallAddress.centered(params, level)
        sup.offer(_mean_oscillation(b, ball), ball)
    value = sup.result(bound)
    return NormResult("bmo", value, sup.witness, (), value)


def bmo_q_norm(b: LCFunction, q) -> NormResult:
    """
    ‖b‖_{BMO_q} = sup_B ((1/|B|)∫_B |b - b_B|^q)^{1/q}. Candidates are
    compared before the 1/q power; beyond the structure ball

        (1/|B|)∫_B |b - b_B|^q ≤ p^{n(Γ-γ)}(M + Dp^{-nγ})^q + (Dp^{-nγ})^q

    with D = ∫_{B_Γ}|b - c_∞| and M = max_{B_Γ}|b - c_∞|
    """

    q = _check_positive(q)
    params = b.params
    n = params.n

    def candidate(ball: BallAddress) -> RealBound:
        total = RealBound.of(0)
        for v, m in oscillation_distribution(b, ball).items():
            if v != 0:
                total = total + power(v, q) * m
        return total / ball_measure(ball)

    sup = Supremum()
    for level in range(b.resolution, b.top + 1):
        for ball in cell_grid(params, b.top, level):
            sup.offer(candidate(ball), ball)
    deviation, largest = _core_deviation(b)
    level = b.top
    bound = None
    while deviation != 0 and level - b.top < MAX_TAIL_STEPS:
        shrink = deviation * params.power(-n * (level + 1))
        bound = params.power(n * (b.top - level - 1)) \
            * power(largest + shrink, q) + power(shrink, q)
        if sup.separated(bound):
            bound = None
            break
        level += 1
        ball = BallAddress.centered(params, level)
        sup.offer(candidate(ball), ball)
    modular = sup.result(bound)
    return NormResult("bmo_q", power(modular, 1 / q), sup.witness,
                      (("q", format_rational(q)),), modular)


def fractional_partner(r, alpha, n: int) -> Fraction:
    """q with 1/q = 1/r - α/n; needs 1 < r < n/α"""

    r, alpha = as_rational(r), as_rational(alpha)
    if r <= 1:
        raise ParameterError("r must be greater than 1, got {}".format(r))
    if alpha * r >= n:
        raise ParameterError("r must be below n/α = {}, got {}"
                             .format(Fraction(n) / alpha, r))
    return 1 / (1 / r - alpha / n)


@dataclass(frozen=True)
class ExponentFunction:
    """
    A variable exponent q(·): a locally constant function with
    1 < q_- ≤ q(x) ≤ q_+ < ∞ and the constant q_∞ outside of its
    structure ball
    """

    shape: LCFunction

    def __post_init__(self):
        if self.q_minus <= 1:
            raise ParameterError("Variable exponent needs q_- > 1, got {}"
                                 .format(self.q_minus))

    @classmethod
    def constant(cls, params: FieldParams, q, level: int = 0) \
            -> "ExponentFunction":
        return cls(constant(params, q, level))

    @property
    def params(self) -> FieldParams:
        return self.shape.params

    @property
    def q_infinity(self) -> Fraction:
        return self.shape.tail

    @property
    def q_minus(self) -> Fraction:
        return min(min(self.shape.values), self.shape.tail)

    @property
    def q_plus(self) -> Fraction:
        return max(max(self.shape.values), self.shape.tail)

    @property
    def is_constant(self) -> bool:
        return self.q_minus == self.q_plus

    def value_at(self, x: PAdicPoint) -> Fraction:
        return self.shape.value_at(x)

    def local(self, x: PAdicPoint, level: int) -> Fraction:
        """q(x, γ): q(x) for γ < 0 and q_∞ for γ ≥ 0"""
        if level < 0:
            return self.value_at(x)
        return self.q_infinity

    def conjugate(self) -> "ExponentFunction":
        """q'(x) = q(x)/(q(x) - 1)"""
        return ExponentFunction(self.shape.map(lambda q: q / (q - 1)))

    def partner(self, alpha) -> "ExponentFunction":
        """q(·) with 1/q(·) = 1/r(·) - α/n for this r(·)"""
        n = self.params.n
        return ExponentFunction(self.shape.map(
            lambda r: fractional_partner(r, alpha, n)
        ))

    def refined(self, resolution: int, top: int) -> "ExponentFunction":
        return ExponentFunction(refine(self.shape, resolution, top))


def conjugate_exponent(qfun: ExponentFunction) -> ExponentFunction:
    return qfun.conjugate()


Piece = Tuple[RealBound, Fraction, Fraction]


ModularTerms = List[Tuple[Fraction, RealBound]]


def _modular_terms(pieces: List[Piece],
                   tail: Optional[Tuple[RealBound, Fraction, RealBound]]) \
        -> ModularTerms:
    """
    Pieces (value, exponent, measure) and the optional tail term
    (|c|, q_∞, factor) collected as pairs (q, Σ measure·|value|^q), so that
    the modular is ν -> Σ_q S_q ν^{-q}
    """

    sums: Dict[Fraction, RealBound] = {}
    for v, q, m in pieces:
        sums[q] = sums.get(q, RealBound.of(0)) + power(v, q) * m
    if tail is not None:
        c, q, factor = tail
        sums[q] = sums.get(q, RealBound.of(0)) + power(c, q) * factor
    return sorted(sums.items())


def _luxemburg(terms: ModularTerms) -> RealBound:
    if len(terms) == 1:
        q, s = terms[0]
        return power(s, 1 / q)

    def modular(nu: Fraction) -> RealBound:
        total = RealBound.of(0)
        for q, s in terms:
            total = total + s * power(1 / nu, q)
        return total

    hi = Fraction(1)
    steps = 0
    while modular(hi).hi > 1:
        hi *= 2
        steps += 1
        if steps > MAX_BRACKET_STEPS:
            raise DivergenceError("Luxemburg modular is not bracketed")
    lo = hi
    while True:
        m = modular(lo)
        if m.lo >= 1:
            break
        if m.hi <= 1:
            hi = lo
        lo /= 2
        steps += 1
        if steps > MAX_BRACKET_STEPS:
            raise DivergenceError("Luxemburg modular is not bracketed")
    return luxemburg_bisection(modular, lo, hi)


def luxemburg_of_pieces(pieces: List[Piece]) -> RealBound:
    """
    inf{η > 0 : Σ measure·(|value|/η)^{exponent} ≤ 1} for a function
    given by (value, exponent, measure) pieces
    """

    pieces = [(abs(RealBound.of(v)), as_rational(q), m) for v, q, m in pieces
              if m != 0 and abs(RealBound.of(v)).hi > 0]
    if not pieces:
        return RealBound.of(0)
    return _luxemburg(_modular_terms(pieces, None))


def luxemburg_variable_norm(f: Source, qfun: ExponentFunction) -> RealBound:
    """
    ‖f‖_{L^{q(·)}} = inf{η > 0 : ∫ (|f|/η)^{q(x)} dx ≤ 1}. The modular is
    a finite sum over the common grid of f and q(·) plus, for a
    TailProfile, the closed-form sum over the far spheres with the
    constant exponent q_∞
    """

    g = _as_profile(f).abs()
    if g.params != qfun.params:
        raise ParameterError("Mismatched fields: {} and {}"
                             .format(g.params, qfun.params))
    resolution = min(g.resolution, qfun.shape.resolution)
    top = max(g.top, qfun.shape.top)
    g = g.refine(resolution, top)
    shape = refine(qfun.shape, resolution, top)
    pieces = [(v, q, g.cell_measure) for v, q in zip(g.values, shape.values)
              if v.hi > 0]
    tail = None
    if g.has_tail:
        p, n = g.params.p, g.params.n
        qi = qfun.q_infinity
        s = qi * g.exponent + n
        if s >= 0:
            raise DivergenceError(
                "Modular diverges: tail c·p^({}k) with exponent q_∞ = {}"
                .format(g.exponent, qi)
            )
        factor = (1 - g.params.power(-n)) \
            * RealBound.power_of_p(p, (top + 1) * s) \
            / (1 - RealBound.power_of_p(p, s))
        tail = (g.coefficient, qi, factor)
    if not pieces and tail is None:
        return RealBound.of(0)
    return _luxemburg(_modular_terms(pieces, tail))


def characteristic_norm(ball: BallAddress, qfun: ExponentFunction) \
        -> RealBound:
    """‖χ_B‖_{L^{q(·)}} from the distribution of the exponent on the ball"""

    pieces = [(RealBound.of(1), q, m)
              for q, m in sorted(value_distribution(qfun.shape, ball).items())]
    return luxemburg_of_pieces(pieces)


@dataclass(frozen=True)
class LogHolderConstants:
    """Best constants of the two log-Hölder conditions"""

    c0: Fraction
    '''
    sup over all balls of γ(q_-(B_γ(x)) - q_+(B_γ(x))). Balls with γ ≥ 0
    contribute nonpositive terms, so c0 always equals c0_local
    '''
    c0_local: Fraction
    '''sup over balls of radius below 1 of |γ|(q_+(B) - q_-(B))'''
    c_infinity: RealBound
    '''sup |q(x) - q(y)|·log_p(p + min(|x|_p, |y|_p))'''


def log_holder_constants(qfun: ExponentFunction) -> LogHolderConstants:
    """
    Both constants by enumeration: only balls inside the structure ball
    of q(·) at levels above its resolution, and the balls B_γ(0) with
    Γ < γ < 0, carry more than one exponent value. For the decay
    condition only the largest norm of each exponent value matters, and
    the value q_∞ has unbounded support
    """

    shape = qfun.shape
    params = shape.params
    spread = []
    for level in range(shape.resolution, shape.top + 1):
        for ball in cell_grid(params, shape.top, level):
            values = value_distribution(shape, ball).keys()
            spread.append((level, max(values) - min(values)))
    total = qfun.q_plus - qfun.q_minus
    for level in range(shape.top + 1, max(shape.top + 2, 1)):
        spread.append((level, total))
    c0 = max([Fraction(0)] + [-level * d for level, d in spread])
    c0_local = max([Fraction(0)] + [abs(level) * d for level, d in spread
                                    if level < 0])

    reach: Dict[Fraction, Optional[Fraction]] = {qfun.q_infinity: None}
    origin_cell = BallAddress.centered(params, shape.resolution)
    for cell, q in zip(shape.grid, shape.values):
        if q in reach and reach[q] is None:
            continue
        if cell == origin_cell:
            r = params.power(shape.resolution)
        else:
            r = point_norm(cell.center_point())
        reach[q] = max(reach.get(q, r), r)
    sup = Supremum()
    sup.offer(0)
    values = sorted(reach)
    for i, a in enumerate(values):
        for b in values[i + 1:]:
            radii = [r for r in (reach[a], reach[b]) if r is not None]
            sup.offer((b - a) * log_base(params.p + min(radii), params.p))
    return LogHolderConstants(c0, c0_local, sup.result())


def _deviation_bound(b: LCFunction, q: Fraction, level: int) -> RealBound:
    """
    Bound of (1/|B|)∫_B |b - |B|^{-α/n}M_{α,B}b|^q over all B_γ(0),
    γ ≥ level > Γ. On S_k(0), Γ < k ≤ γ, the deviation is at most
    2c⁻ + |E|p^{-nk} with E = ∫_{B_Γ}(|b| - |c_∞|); on B_Γ it is at most
    2‖b‖_∞. The spheres are split at h = (Γ + γ)//2
    """

    params = b.params
    n = params.n
    c = b.tail
    a = 2 * max(-c, Fraction(0))
    e = abs(sum((abs(v) - abs(c) for v in b.values), Fraction(0))
            * b.cell_measure)
    w = 2 * linf_norm(b)
    h = (b.top + level) // 2
    return params.power(n * (b.top - level)) * power(w, q) \
        + params.power(n * (h - level)) \
        * power(a + e * params.power(-n * (b.top + 1)), q) \
        + power(a + e * params.power(-n * (h + 1)), q)


def nonlinear_oscillation(b: LCFunction, alpha, q,
                          extra_levels: int = DEFAULT_EXTRA_LEVELS) \
        -> NormResult:
    """
    sup_B ((1/|B|)∫_B |b - |B|^{-α/n} M_{α,B} b|^q)^{1/q}.

    Balls where b is constant contribute 2b⁻; balls of the structure
    ball are enumerated and the balls B_γ(0), Γ < γ ≤ Γ + extra_levels,
    are enumerated until the bound of the remaining ones separates
    """

    alpha = Alpha.of(alpha, b.params).value
    q = _check_positive(q)
    params = b.params
    sup = Supremum()

    def candidate(ball: BallAddress) -> RealBound:
        total = RealBound.of(0)
        for v, m, _ in restricted_deviation(b, alpha, ball):
            if v.sign() != 0:
                total = total + power(abs(v), q) * m
        return total / ball_measure(ball)

    for cell, v in zip(b.grid, b.values):
        if v < 0:
            sub = descendants(cell, cell.level - 1)[0]
            sup.offer(power(-2 * v, q), sub)
    far = BallAddress.around(sphere_point(params, b.top + 1), b.top)
    sup.offer(power(2 * max(-b.tail, Fraction(0)), q), far)
    for level in range(b.resolution, b.top + 1):
        for ball in cell_grid(params, b.top, level):
            sup.offer(candidate(ball), ball)
    bound = None
    if any(v != b.tail for v in b.values):
        level = b.top
        while level < b.top + extra_levels:
            bound = _deviation_bound(b, q, level + 1)
            if sup.separated(bound):
                bound = None
                break
            level += 1
            ball = BallAddress.centered(params, level)
            sup.offer(candidate(ball), ball)
        else:
            bound = _deviation_bound(b, q, level + 1)
    modular = sup.result(bound)
    return NormResult(
        "nonlinear_oscillation", power(modular, 1 / q), sup.witness,
        (("alpha", format_rational(alpha)), ("q", format_rational(q))),
        modular
    )


def he_oscillation(b: LCFunction, q,
                   extra_levels: int = DEFAULT_EXTRA_LEVELS) -> NormResult:
    """
    sup_B ((1/|B|)∫_B |b - M_B b|^q)^{1/q} with the restricted
    Hardy-Littlewood maximal function M_B; finite exactly when b is in
    BMO with a bounded negative part
    """
    return nonlinear_oscillation(b, 0, q, extra_levels)
