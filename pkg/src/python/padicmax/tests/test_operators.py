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

from padicmax.bounds import RealBound
from padicmax.errors import DivergenceError, DomainError, ParameterError
from padicmax.lcfun import constant, char_fn
from padicmax.operators import Alpha, TailProfile, sphere_index, \
    frac_maximal_at, hardy_littlewood_at, frac_maximal_field, \
    restricted_frac_maximal, restricted_deviation, sphere_point, \
    maximal_commutator, nonlinear_commutator, commutator_field, \
    maximal_commutator_field, power_maximal, llogl_maximal
from padicmax.ultrametric import BallAddress


POINTS = [0, 1, Fraction(1, 2), Fraction(3, 2), Fraction(1, 4),
          Fraction(1, 8), 6, Fraction(5, 4)]


def test_alpha_range(q2, q2_squared):
    assert Alpha.of("1/2", q2).value == Fraction(1, 2)
    assert Alpha.of(Fraction(3, 2), q2_squared).value == Fraction(3, 2)
    for bad in (1, -1, Fraction(3, 2)):
        with pytest.raises(ParameterError):
            Alpha.of(bad, q2)


def test_sphere_index(q2, point):
    assert sphere_index(point(Fraction(1, 4))) == 2
    assert sphere_index(point(12)) == -2
    assert sphere_index(sphere_point(q2, 3)) == 3


class TestHardyLittlewood:
    def test_indicator(self, chi_z2, point):
        assert hardy_littlewood_at(chi_z2, point(Fraction(1, 4))).value \
            == Fraction(1, 4)
        assert hardy_littlewood_at(chi_z2, point(Fraction(1, 2))).value \
            == Fraction(1, 2)
        assert hardy_littlewood_at(chi_z2, point(3)).value == 1

    def test_maximal_function_dominates(self, two_valued, point):
        for x in POINTS:
            m = hardy_littlewood_at(two_valued, point(x))
            assert m.ge(abs(two_valued.value_at(point(x))))

    def test_constant_tail(self, q2, point):
        assert hardy_littlewood_at(constant(q2, -2), point(7)).value == 2
        with pytest.raises(DivergenceError):
            frac_maximal_at(constant(q2, 1), Fraction(1, 2), point(0))


class TestFractionalMaximal:
    def test_indicator(self, chi_z2, point):
        half = Fraction(1, 2)
        assert frac_maximal_at(chi_z2, half, point(0)).value == 1
        assert frac_maximal_at(chi_z2, half, point(Fraction(1, 4))).value \
            == half
        m = frac_maximal_at(chi_z2, half, point(half))
        assert m.compare(RealBound.power_of_p(2, -half)) == 0

    def test_monotone_in_the_function(self, chi_z2, two_valued, point):
        for x in POINTS:
            small = frac_maximal_at(chi_z2, Fraction(1, 3), point(x))
            large = frac_maximal_at(two_valued, Fraction(1, 3), point(x))
            assert small.le(large)

    def test_field_matches_pointwise_values(self, two_valued, point):
        for alpha in (0, Fraction(1, 2)):
            field = frac_maximal_field(two_valued, alpha)
            assert field.exponent == alpha - 1
            assert field.coefficient.value == 3
            for x in POINTS:
                direct = frac_maximal_at(two_valued, alpha, point(x))
                assert field.value_at(point(x)).compare(direct) == 0

    def test_field_needs_compact_support(self, q2, chi_z2):
        with pytest.raises(DivergenceError):
            frac_maximal_field(chi_z2 + constant(q2, 1), 0)

    def test_maximal_function_of_decaying_profile(self, chi_z2, point):
        field = frac_maximal_field(chi_z2, 0)
        assert hardy_littlewood_at(field, point(0)).value == 1
        assert field.integral_over(BallAddress.centered(field.params, 1)) \
            .value == Fraction(3, 2)

    def test_refined_profile(self, chi_z2, point):
        field = frac_maximal_field(chi_z2, 0).refine(-1, 1)
        assert field.value_at(point(Fraction(1, 2))).value == Fraction(1, 2)
        assert field.value_at(point(1)).value == 1
        assert field.value_at(point(Fraction(1, 4))).value == Fraction(1, 4)

    def test_growing_tail_is_rejected(self, q2):
        with pytest.raises(ParameterError):
            TailProfile(q2, 0, 0, (RealBound.of(1),), RealBound.of(1),
                        Fraction(1))


class TestRestricted:
    def test_values(self, q2, chi_z2, point):
        b1 = BallAddress.centered(q2, 1)
        assert restricted_frac_maximal(chi_z2, 0, b1, point(0)).value == 1
        assert restricted_frac_maximal(chi_z2, 0, b1,
                                       point(Fraction(1, 2))).value \
            == Fraction(1, 2)
        with pytest.raises(DomainError):
            restricted_frac_maximal(chi_z2, 0, b1, point(Fraction(1, 4)))

    def test_deviation_pieces(self, q2, chi_z2):
        b1 = BallAddress.centered(q2, 1)
        pieces = restricted_deviation(chi_z2, 0, b1)
        values = sorted((v.value, m) for v, m, _ in pieces)
        assert values == [(Fraction(-1, 2), 1), (0, 1)]
        assert sum(m for _, m, _ in pieces) == 2

    def test_deviation_pieces_cover_the_ball(self, q2, two_valued):
        for level in (-1, 0, 1, 3):
            ball = BallAddress.centered(q2, level)
            pieces = restricted_deviation(two_valued, 0, ball)
            assert sum(m for _, m, _ in pieces) == ball.measure()
            for v, m, y in pieces:
                assert ball.contains(y)
                assert v.le(0)


class TestCommutators:
    def test_maximal_commutator_of_indicator(self, chi_z2, point):
        m = maximal_commutator(chi_z2, chi_z2, 0, point(Fraction(1, 2)))
        assert m.value == Fraction(1, 2)
        assert maximal_commutator(chi_z2, chi_z2, 0, point(0)).value == 0

    def test_nonlinear_commutator(self, q2, chi_z2, point):
        assert nonlinear_commutator(chi_z2, chi_z2, 0, point(1)).value == 0
        assert nonlinear_commutator(chi_z2, chi_z2, 0,
                                    point(Fraction(1, 4))).value \
            == Fraction(-1, 4)
        b = constant(q2, 3)
        for x in POINTS:
            assert nonlinear_commutator(b, chi_z2, Fraction(1, 2),
                                        point(x)).value == 0

    def test_compact_support_is_required(self, q2, chi_z2, point):
        one = constant(q2, 1)
        with pytest.raises(DivergenceError):
            maximal_commutator(chi_z2, one, 0, point(0))
        with pytest.raises(DivergenceError):
            nonlinear_commutator(one, one, 0, point(0))

    def test_fields_match_pointwise_values(self, chi_z2, two_valued, point):
        signed = two_valued - chi_z2 * 3
        for alpha in (0, Fraction(1, 2)):
            mc = maximal_commutator_field(signed, chi_z2, alpha)
            nc = commutator_field(signed, chi_z2, alpha)
            for x in POINTS:
                y = point(x)
                assert mc.value_at(y).compare(
                    maximal_commutator(signed, chi_z2, alpha, y)) == 0
                assert nc.value_at(y).compare(
                    nonlinear_commutator(signed, chi_z2, alpha, y)) == 0


class TestOtherMaximalFunctions:
    def test_power_maximal(self, chi_z2, two_valued, point):
        assert power_maximal(chi_z2, 2, point(Fraction(1, 4))).value \
            == Fraction(1, 2)
        assert power_maximal(two_valued, 1, point(0)).value == 2
        with pytest.raises(ParameterError):
            power_maximal(chi_z2, 0, point(0))

    def test_llogl_maximal_of_indicator(self, q2, point):
        ball = BallAddress.centered(q2, -1)
        assert llogl_maximal(char_fn(ball), 0, point(2)).value == 1

    def test_llogl_dominates_hardy_littlewood(self, two_valued, point):
        for x in (0, Fraction(1, 2), Fraction(1, 4)):
            m = hardy_littlewood_at(two_valued, point(x))
            big = llogl_maximal(two_valued, 0, point(x))
            assert big.hi >= m.lo
