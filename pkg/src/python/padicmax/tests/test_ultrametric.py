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
from fractions import Fraction

import pytest

from padicmax.errors import ParameterError, ParseError
from padicmax.ultrametric import FieldParams, BallAddress, BallRelation, \
    PAdicPoint, SphereAddress, valuation, padic_abs, truncate, digits, \
    ball_measure, sphere_measure, ball_of_point, ball_relation, is_subset, \
    children, parent, descendants, min_enclosing_level, dilate, \
    format_ball, parse_ball, parse_sphere, parse_point


@pytest.mark.parametrize("x, p, expected", [
    (0, 2, Fraction(0)),
    (12, 2, Fraction(1, 4)),
    (Fraction(3, 2), 2, Fraction(2)),
    (Fraction(-9, 5), 3, Fraction(1, 9)),
    (7, 5, Fraction(1)),
])
def test_padic_abs(x, p, expected):
    assert padic_abs(x, p) == expected


def test_valuation_of_zero_is_rejected():
    with pytest.raises(ParameterError):
        valuation(0, 2)


def test_ultrametric_inequality_on_small_rationals():
    values = [Fraction(a, b) for a in range(-6, 7) for b in (1, 2, 3, 4)]
    for x, y in itertools.product(values, repeat=2):
        assert padic_abs(x + y, 2) <= max(padic_abs(x, 2), padic_abs(y, 2))


def test_truncate_handles_negative_and_periodic_numbers():
    # -1 = ...1111 in base 2
    assert truncate(-1, 2, 3) == 7
    # 1/3 = ...0101011 in base 2
    assert truncate(Fraction(1, 3), 2, 4) == 11
    assert truncate(Fraction(5, 4), 2, 0) == Fraction(1, 4)
    assert digits(Fraction(5, 4), 2, 1) == (-2, [1, 0, 1])


@pytest.mark.parametrize("p, n, level, expected", [
    (2, 1, 0, Fraction(1)),
    (3, 2, 2, Fraction(81)),
    (2, 1, -3, Fraction(1, 8)),
])
def test_ball_measure(p, n, level, expected):
    assert ball_measure(BallAddress.centered(FieldParams(p, n), level)) \
        == expected


@pytest.mark.parametrize("p, n, level, expected", [
    (2, 1, 0, Fraction(1, 2)),
    (3, 1, 1, Fraction(2)),
    (2, 2, 0, Fraction(3, 4)),
])
def test_sphere_measure(p, n, level, expected):
    sphere = SphereAddress(FieldParams(p, n), level,
                           tuple(Fraction(0) for _ in range(n)))
    assert sphere_measure(sphere) == expected


@pytest.mark.parametrize("p, n", [(2, 1), (3, 1), (5, 1), (2, 2), (3, 2)])
def test_spheres_telescope(p, n):
    params = FieldParams(p, n)
    origin = tuple(Fraction(0) for _ in range(n))
    for lo in range(-4, 4):
        for hi in range(lo + 1, 5):
            total = sum((sphere_measure(SphereAddress(params, k, origin))
                         for k in range(lo + 1, hi + 1)), Fraction(0))
            assert total == ball_measure(BallAddress.centered(params, hi)) \
                - ball_measure(BallAddress.centered(params, lo))


def test_ball_relation_examples(q2, point):
    b0 = BallAddress.centered(q2, 0)
    assert ball_relation(b0, BallAddress.centered(q2, 1)) \
        == BallRelation.FIRST_INSIDE_SECOND
    assert ball_relation(b0, ball_of_point(point(1), 0)) == BallRelation.EQUAL
    assert ball_relation(BallAddress.centered(q2, -1),
                         ball_of_point(point(1), -1)) == BallRelation.DISJOINT
    assert ball_relation(BallAddress.centered(q2, 2), b0) \
        == BallRelation.SECOND_INSIDE_FIRST


@pytest.mark.parametrize("p, n", [(2, 1), (3, 1), (2, 2)])
def test_balls_are_nested_or_disjoint(p, n):
    params = FieldParams(p, n)
    top = BallAddress.centered(params, 1 if n == 2 else 2)
    balls = [b for level in range(top.level - 2, top.level + 1)
             for b in descendants(top, level)]
    for first, second in itertools.product(balls, repeat=2):
        relation = ball_relation(first, second)
        a, b = first.center_point(), second.center_point()
        if relation == BallRelation.DISJOINT:
            assert not first.contains(b) and not second.contains(a)
        elif relation == BallRelation.FIRST_INSIDE_SECOND:
            assert second.contains(a) and first.level < second.level
        elif relation == BallRelation.SECOND_INSIDE_FIRST:
            assert first.contains(b) and second.level < first.level
        else:
            assert first == second


@pytest.mark.parametrize("p, n, lowest", [
    (2, 1, -3), (3, 1, -2), (2, 2, -1), (3, 2, 1)
])
def test_every_pair_of_balls_matches_cell_membership(p, n, lowest):
    """All balls of levels lowest..3 inside B_3(0), compared as cell sets"""

    params = FieldParams(p, n)
    top = BallAddress.centered(params, 3)
    cells = [c.center_point() for c in descendants(top, lowest)]
    balls = [b for level in range(lowest, 4) for b in descendants(top, level)]
    members = {b: frozenset(i for i, x in enumerate(cells) if b.contains(x))
               for b in balls}
    assert all(len(members[b]) == p ** (n * (b.level - lowest))
               for b in balls)
    for first, second in itertools.combinations_with_replacement(balls, 2):
        a, b = members[first], members[second]
        if a == b:
            expected = BallRelation.EQUAL
        elif not a & b:
            expected = BallRelation.DISJOINT
        elif a < b:
            expected = BallRelation.FIRST_INSIDE_SECOND
        else:
            assert a > b, "{} and {} overlap partially".format(first, second)
            expected = BallRelation.SECOND_INSIDE_FIRST
        assert ball_relation(first, second) == expected
        assert is_subset(first, second) == (a <= b)


def test_ball_of_point_examples(point):
    params = FieldParams(3, 1)
    ball = ball_of_point(PAdicPoint.origin(params), 2)
    assert ball.level == 2 and ball.center_digits() == [[]]
    assert ball_of_point(point(1), 0) == BallAddress.centered(point(1).params,
                                                               0)
    half = ball_of_point(point(Fraction(1, 2)), 0)
    assert half.center == (Fraction(1, 2),)
    assert half.center_digits() == [[1]]


def test_children_and_parent(q2, point):
    b0 = BallAddress.centered(q2, 0)
    kids = children(b0)
    assert kids == [BallAddress.centered(q2, -1), ball_of_point(point(1), -1)]
    assert parent(ball_of_point(point(1), -1)) == b0
    assert sum(ball_measure(k) for k in kids) == ball_measure(b0)
    assert all(is_subset(k, b0) for k in kids)


def test_children_partition_in_two_dimensions(q2_squared):
    ball = BallAddress.centered(q2_squared, 1)
    kids = children(ball)
    assert len(kids) == 4
    assert len(set(kids)) == 4
    assert sum(ball_measure(k) for k in kids) == ball_measure(ball)
    assert all(parent(k) == ball for k in kids)


def test_min_enclosing_level(q2, z2, point):
    assert min_enclosing_level(point(Fraction(1, 2)), z2) == 1
    assert min_enclosing_level(point(Fraction(1, 4)), z2) == 2
    assert min_enclosing_level(point(1), z2) == 0
    assert min_enclosing_level(point(Fraction(1, 2)),
                               BallAddress.centered(q2, -3)) == 1


def test_dilation_scales_measure(q2, point):
    ball = ball_of_point(point(Fraction(3, 4)), -1)
    for k in (-1, 1, 2):
        image = dilate(ball, k)
        assert image.level == ball.level + k
        assert ball_measure(image) == q2.power(k) * ball_measure(ball)


def test_address_text_form(q2_squared):
    x = PAdicPoint.from_rationals(q2_squared, [Fraction(3, 4), 1])
    ball = ball_of_point(x, -1)
    text = format_ball(ball)
    assert text == "2^2:-1:110|1"
    assert parse_ball(text) == ball
    sphere = SphereAddress.around(x, 0)
    assert parse_sphere(str(sphere)) == sphere
    assert format_ball(BallAddress.centered(FieldParams(2, 1), 1)) == "2^1:1:"


@pytest.mark.parametrize("text", [
    "2^1:0",
    "4^1:0:1",
    "2^1:x:1",
    "2^1:-2:21",
    "2^1:-2:01",
    "2^2:-1:1",
])
def test_malformed_addresses(text):
    with pytest.raises((ParseError, ParameterError)):
        parse_ball(text)


def test_parse_point(q2_squared):
    x = parse_point("1/2,3", q2_squared)
    assert x.coordinates == (Fraction(1, 2), Fraction(3))
    with pytest.raises(ParseError):
        parse_point("1/2", q2_squared)
