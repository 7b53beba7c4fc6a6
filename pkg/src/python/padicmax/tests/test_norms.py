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


import threading
from fractions import Fraction

import pytest

from padicmax.bounds import RealBound, working_precision
from padicmax.errors import DivergenceError, ParameterError
from padicmax.lcfun import LCFunction, constant, char_fn, cell_grid, \
    value_distribution
from padicmax.norms import NormResult, Supremum, MorreyParams, \
    ExponentFunction, lq_modular, lq_norm, lq_modular_on_ball, \
    lq_norm_on_ball, weak_lq_norm, morrey_norm, bmo_norm, bmo_q_norm, \
    oscillation_distribution, oscillation_level_set, exp_oscillation_mean, \
    fractional_partner, conjugate_exponent, luxemburg_variable_norm, \
    luxemburg_of_pieces, characteristic_norm, log_holder_constants, \
    nonlinear_oscillation, he_oscillation, clear_caches
from padicmax.operators import frac_maximal_field
from padicmax.ultrametric import BallAddress


def overlaps(a: RealBound, b: RealBound) -> bool:
    return a.lo <= b.hi and b.lo <= a.hi


@pytest.fixture
def split_exponent(q2) -> ExponentFunction:
    """2 on Z_2 and 3 outside"""
    return ExponentFunction(LCFunction.from_values(q2, 0, 0, [2], 3))


class TestLebesgue:
    def test_indicator(self, q2, chi_z2):
        assert lq_norm(chi_z2, 2).value == 1
        ball = BallAddress.centered(q2, 2)
        assert lq_norm(char_fn(ball), 2).value == 2
        assert lq_norm(char_fn(ball), 1).value == 4

    def test_modular(self, q2, two_valued):
        assert lq_modular(two_valued, 2).value == 5
        assert lq_norm(two_valued, 1).value == 3
        assert lq_modular_on_ball(two_valued, 3,
                                  BallAddress.centered(q2, 0)).value == 8
        assert lq_norm_on_ball(two_valued, 2,
                               BallAddress.centered(q2, 0)).value == 2

    def test_square_norm_of_maximal_function(self, chi_z2):
        field = frac_maximal_field(chi_z2, 0)
        assert lq_modular(field, 2).value == Fraction(3, 2)

    def test_divergence_and_range(self, q2, chi_z2):
        with pytest.raises(DivergenceError):
            lq_norm(constant(q2, 1), 2)
        with pytest.raises(DivergenceError):
            lq_norm(frac_maximal_field(chi_z2, 0), 1)
        with pytest.raises(ParameterError):
            lq_norm(chi_z2, Fraction(1, 2))
        with pytest.raises(ParameterError):
            lq_modular(chi_z2, 0)


class TestWeak:
    def test_two_valued(self, q2, two_valued):
        ball = BallAddress.centered(q2, 1)
        # max(2·1^{1/q}, 1·2^{1/q})
        assert weak_lq_norm(two_valued, 2, ball).value == 2
        assert weak_lq_norm(two_valued, Fraction(1, 2), ball).value == 4
        assert weak_lq_norm(two_valued, 1, ball).value == 2

    def test_indicator_and_zero(self, q2):
        ball = BallAddress.centered(q2, 2)
        assert weak_lq_norm(char_fn(ball), 2, ball).value == 2
        assert weak_lq_norm(constant(q2, 0), 2, ball).value == 0


class TestMorrey:
    def test_unit_ball(self, chi_z2, z2):
        result = morrey_norm(chi_z2, MorreyParams.of(2, "1/2"))
        assert result.value.value == 1
        assert result.witness == z2
        assert result.to_dict()["params"] == {"q": "2", "lambda": "1/2"}

    def test_indicator_of_larger_ball(self, q2):
        ball = BallAddress.centered(q2, 1)
        result = morrey_norm(char_fn(ball), MorreyParams.of(2, "1/2"))
        # |B|^{(1-λ/n)/q} = 2^{1/4}
        assert result.value.lo ** 4 <= 2 <= result.value.hi ** 4
        assert result.witness == ball

    def test_zero_lambda_is_lebesgue(self, two_valued):
        result = morrey_norm(two_valued, MorreyParams.of(2, 0))
        expected = lq_norm(two_valued, 2)
        assert (result.value.lo, result.value.hi) == (expected.lo, expected.hi)

    def test_decaying_profile(self, chi_z2):
        field = frac_maximal_field(chi_z2, 0)
        result = morrey_norm(field, MorreyParams.of(2, "1/2"))
        assert result.value.lo >= 1
        assert result.modular.hi < 2

    @pytest.mark.parametrize("q, lam", [(2, 1), (Fraction(1, 2), 0),
                                        (2, Fraction(-1, 2)), (2, 2)])
    def test_parameter_range(self, chi_z2, q, lam):
        with pytest.raises(ParameterError):
            morrey_norm(chi_z2, MorreyParams.of(q, lam))

    def test_constant_diverges(self, q2):
        with pytest.raises(DivergenceError):
            morrey_norm(constant(q2, 1), MorreyParams.of(2, 0))


class TestBmo:
    def test_indicator(self, q2, chi_z2):
        result = bmo_norm(chi_z2)
        assert result.value.value == Fraction(1, 2)
        assert result.witness == BallAddress.centered(q2, 1)
        assert result.to_dict() == {"name": "bmo", "params": {},
                                    "lo": "1/2", "hi": "1/2",
                                    "witness": "2^1:1:"}

    def test_constant(self, q2):
        assert bmo_norm(constant(q2, 5)).value.value == 0

    def test_homogeneity(self, two_valued):
        base = bmo_norm(two_valued).value.value
        assert bmo_norm(two_valued * -3).value.value == 3 * base

    def test_bmo_q(self, chi_z2, two_valued):
        assert bmo_q_norm(chi_z2, 2).value.value == Fraction(1, 2)
        assert bmo_q_norm(chi_z2, 2).modular.value == Fraction(1, 4)
        for b in (chi_z2, two_valued, two_valued - chi_z2 * 3):
            q1 = bmo_q_norm(b, 1).value
            assert q1.compare(bmo_norm(b).value) == 0
            for q in (Fraction(3, 2), 2, 3):
                assert bmo_norm(b).value.le(bmo_q_norm(b, q).value) \
                    is not False

    def test_oscillation(self, q2, chi_z2):
        ball = BallAddress.centered(q2, 1)
        assert oscillation_distribution(chi_z2, ball) == {Fraction(1, 2): 2}
        assert oscillation_level_set(chi_z2, ball, Fraction(1, 4)) == 2
        assert oscillation_level_set(chi_z2, ball, Fraction(1, 2)) == 0
        assert exp_oscillation_mean(chi_z2, 0, ball).value == 1
        e = exp_oscillation_mean(chi_z2, 2, ball)
        assert e.lo <= Fraction("2.718281828459045235361")
        assert Fraction("2.718281828459045235360") <= e.hi


class TestVariableExponent:
    def test_constant_exponent(self, q2):
        qfun = ExponentFunction.constant(q2, 2)
        assert qfun.is_constant
        assert conjugate_exponent(qfun) == qfun
        constants = log_holder_constants(qfun)
        assert constants.c0 == 0 and constants.c0_local == 0
        assert constants.c_infinity.value == 0
        with pytest.raises(ParameterError):
            ExponentFunction.constant(q2, 1)

    def test_exponent_values(self, split_exponent, point):
        assert (split_exponent.q_minus, split_exponent.q_plus) == (2, 3)
        assert split_exponent.q_infinity == 3
        assert split_exponent.local(point(1), -1) == 2
        assert split_exponent.local(point(1), 0) == 3
        assert split_exponent.local(point(Fraction(1, 2)), -3) == 3
        conjugate = split_exponent.conjugate()
        assert conjugate.q_plus == split_exponent.q_minus \
            / (split_exponent.q_minus - 1)
        assert conjugate.q_minus == Fraction(3, 2)

    def test_partner(self, q2):
        assert fractional_partner("3/2", "1/2", 1) == 6
        partner = ExponentFunction.constant(q2, "3/2").partner("1/2")
        assert partner.q_minus == 6 and partner.is_constant
        with pytest.raises(ParameterError):
            fractional_partner(1, "1/2", 1)
        with pytest.raises(ParameterError):
            fractional_partner(2, "1/2", 1)

    def test_log_holder_constants(self, q2, split_exponent):
        constants = log_holder_constants(split_exponent)
        assert constants.c0 == 0
        # |2 - 3|·log_2(2 + 1)
        assert Fraction("1.5849") < constants.c_infinity.lo
        assert constants.c_infinity.hi < Fraction("1.5850")
        fine = ExponentFunction(LCFunction.from_values(q2, -1, -2, [2, 3], 3))
        constants = log_holder_constants(fine)
        assert constants.c0 == 1 and constants.c0_local == 1

    def test_log_holder_c0_is_a_sup_over_all_levels(self, q2):
        fine = ExponentFunction(LCFunction.from_values(q2, -1, -2, [2, 3], 3))
        terms = {}
        for level in range(-2, 3):
            for ball in cell_grid(q2, 2, level):
                values = value_distribution(fine.shape, ball).keys()
                d = max(values) - min(values)
                terms.setdefault(level, []).append(-level * d)
        assert all(t <= 0 for level in (0, 1, 2) for t in terms[level])
        assert max(t for ts in terms.values() for t in ts) == 1
        constants = log_holder_constants(fine)
        assert constants.c0 == max(max(ts) for ts in terms.values())
        assert constants.c0_local == max(max(terms[-2]), max(terms[-1]))

    def test_luxemburg_norm(self, q2, chi_z2, split_exponent):
        assert luxemburg_variable_norm(
            chi_z2, ExponentFunction.constant(q2, 2)).value == 1
        # η^{-2} + η^{-3} = 1, i.e. η³ = η + 1
        eta = luxemburg_variable_norm(char_fn(BallAddress.centered(q2, 1)),
                                      split_exponent)
        assert eta.lo ** 3 - eta.lo - 1 <= 0 <= eta.hi ** 3 - eta.hi - 1
        assert eta.width < Fraction(1, 2 ** 30)

    def test_constant_exponent_matches_lebesgue(self, q2, two_valued):
        for q in (2, 3):
            qfun = ExponentFunction.constant(q2, q)
            assert overlaps(luxemburg_variable_norm(two_valued, qfun),
                            lq_norm(two_valued, q))

    def test_decaying_profile(self, q2, chi_z2):
        field = frac_maximal_field(chi_z2, 0)
        qfun = ExponentFunction.constant(q2, 2)
        assert overlaps(luxemburg_variable_norm(field, qfun),
                        lq_norm(field, 2))
        with pytest.raises(DivergenceError):
            luxemburg_variable_norm(frac_maximal_field(chi_z2, "1/2"), qfun)

    def test_characteristic_norms(self, q2, z2, split_exponent):
        assert characteristic_norm(z2, split_exponent).value == 1
        ball = BallAddress.centered(q2, 1)
        norm = characteristic_norm(ball, ExponentFunction.constant(q2, 2))
        assert norm.lo ** 2 <= 2 <= norm.hi ** 2
        assert luxemburg_of_pieces([]).value == 0
        assert luxemburg_of_pieces([(2, 1, 1)]).value == 2

    def test_pieces_sharing_an_exponent_are_summed(self):
        # 1/η² + 3/η² = 1
        assert luxemburg_of_pieces([(1, 2, 1), (1, 2, 3)]).value == 2
        assert luxemburg_of_pieces([(1, 2, 1), (-1, 2, 3)]).value == 2
        # 1/η² + 1/η³ = 1 needs a bisection
        eta = luxemburg_of_pieces([(1, 2, Fraction(1, 2)), (1, 3, 1),
                                   (1, 2, Fraction(1, 2))])
        assert eta.lo ** 3 - eta.lo - 1 <= 0 <= eta.hi ** 3 - eta.hi - 1


class TestOscillationNorms:
    def test_nonnegative_constant(self, q2):
        for alpha in (0, Fraction(1, 2)):
            result = nonlinear_oscillation(constant(q2, 2), alpha, 2)
            assert result.value.value == 0

    def test_negative_part_is_seen(self, q2, chi_z2):
        result = he_oscillation(chi_z2 - constant(q2, 1), 1)
        assert result.value.lo >= 2

    def test_result_record(self, chi_z2):
        result = nonlinear_oscillation(chi_z2, Fraction(1, 2), 2)
        assert isinstance(result, NormResult)
        assert result.name == "nonlinear_oscillation"
        assert result.value.lo >= 0


def test_supremum_breaks_ties_by_ball_order(q2):
    sup = Supremum()
    sup.offer(1, BallAddress.centered(q2, 1))
    sup.offer(1, BallAddress.centered(q2, 0))
    assert sup.witness == BallAddress.centered(q2, 0)
    sup.offer(RealBound(Fraction(1, 2), Fraction(3, 2)))
    assert sup.witness == BallAddress.centered(q2, 0)
    assert (sup.result().lo, sup.result().hi) == (1, Fraction(3, 2))
    assert sup.result(RealBound.of(3)).hi == 3


def test_cached_powers_follow_working_precision(two_valued):
    clear_caches()
    with working_precision(16):
        coarse = lq_modular(two_valued, Fraction(3, 2))
    with working_precision(96):
        fine = lq_modular(two_valued, Fraction(3, 2))
    with working_precision(16):
        again = lq_modular(two_valued, Fraction(3, 2))
    assert 0 < fine.width < coarse.width
    assert again.width == coarse.width
    assert overlaps(coarse, fine)


def test_concurrent_precisions_do_not_share_powers(two_valued):
    results = {}

    def evaluate(bits):
        with working_precision(bits):
            results[bits] = [lq_modular(two_valued, Fraction(5, 2)).width
                             for _ in range(20)]

    threads = [threading.Thread(target=evaluate, args=(bits,))
               for bits in (16, 96)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert len(set(results[16])) == 1
    assert len(set(results[96])) == 1
    assert results[96][0] < results[16][0]
