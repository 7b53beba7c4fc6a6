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

from padicmax.bounds import RealBound, maximum, larger, power, log_bound, \
    exp_bound, exp_of, log_of, log_base, working_precision, \
    current_precision, current_bisection
from padicmax.radicals import Radical, integer_root, root_interval


LN2 = (Fraction("0.693147180559945309417"), Fraction("0.693147180559945309418"))
E = (Fraction("2.718281828459045235360"), Fraction("2.718281828459045235361"))


def meets(bound: RealBound, interval) -> bool:
    lo, hi = interval
    return bound.lo <= hi and lo <= bound.hi


class TestRealBound:
    def test_rationals_are_exact(self):
        x = RealBound.of(Fraction(1, 3))
        assert x.is_exact and x.is_rational
        assert x.value == Fraction(1, 3)
        assert x.to_text() == "1/3 1/3"
        assert str(x * 3) == "1"
        assert (x + Fraction(2, 3)).value == 1
        assert (1 - x).value == Fraction(2, 3)
        assert (x / 2).value == Fraction(1, 6)

    def test_interval_arithmetic(self):
        x = RealBound(Fraction(1), Fraction(2))
        assert not x.is_exact
        y = x * RealBound(Fraction(-1), Fraction(3))
        assert (y.lo, y.hi) == (-2, 6)
        assert abs(RealBound(Fraction(-3), Fraction(1))).hi == 3
        assert abs(RealBound(Fraction(-3), Fraction(1))).lo == 0
        assert (1 / x).lo == Fraction(1, 2)
        with pytest.raises(ValueError):
            _ = x.value
        with pytest.raises(ZeroDivisionError):
            _ = x / 0
        with pytest.raises(ZeroDivisionError):
            _ = x / RealBound(Fraction(-1), Fraction(1))

    def test_empty_interval_is_rejected(self):
        with pytest.raises(ValueError):
            RealBound(Fraction(2), Fraction(1))

    def test_comparisons_are_three_valued(self):
        overlap = RealBound(Fraction(0), Fraction(2))
        assert overlap.compare(1) is None
        assert overlap.le(1) is None
        assert overlap.le(3) is True
        assert overlap.lt(0) is None
        assert RealBound(Fraction(1), Fraction(2)).lt(Fraction(1, 2)) is False
        assert RealBound.of(1).equals(Fraction(2, 2)) is True
        assert RealBound.between(1, 1).is_rational

    def test_radicals_compare_exactly(self):
        root2 = RealBound.power_of_p(2, Fraction(1, 2))
        assert root2.is_exact and not root2.is_rational
        assert (root2 * root2).value == 2
        assert (root2 ** 4).value == 4
        assert root2.compare(Fraction(99, 70)) == -1
        assert root2.compare(Fraction(140, 99)) == 1
        assert root2.le(Fraction(3, 2)) is True
        assert RealBound.power_of_p(2, -2).value == Fraction(1, 4)


class TestRadical:
    def test_cube_root(self):
        c = Radical.power_of_p(3, Fraction(1, 3))
        assert (c * c * c).rational_value == 3
        assert (c * c).compare(c) == 1

    def test_normalization(self):
        a = Radical.power_of_p(2, Fraction(1, 2))
        b = Radical.power_of_p(2, Fraction(3, 2))
        assert (b - a - a).is_zero()
        assert (a * Radical.power_of_p(2, Fraction(1, 2))).is_rational

    def test_roots(self):
        assert integer_root(10 ** 20, 2) == 10 ** 10
        assert integer_root(26, 3) == 2
        lo, hi = root_interval(Fraction(2), 2, 40)
        assert lo * lo <= 2 <= hi * hi
        assert hi - lo <= Fraction(1, 2 ** 40)
        assert root_interval(Fraction(9, 4), 2, 40) == (Fraction(3, 2),
                                                         Fraction(3, 2))


class TestElementary:
    def test_power(self):
        assert power(Fraction(9, 4), Fraction(1, 2)).value == Fraction(3, 2)
        assert power(2, -3).value == Fraction(1, 8)
        assert power(0, Fraction(1, 2)).value == 0
        r = power(2, Fraction(1, 2))
        assert r.lo * r.lo <= 2 <= r.hi * r.hi
        assert r.relative_width() <= Fraction(1, 2 ** current_precision())
        inverse = power(2, Fraction(-1, 2))
        assert inverse.lo * inverse.lo <= Fraction(1, 2) \
            <= inverse.hi * inverse.hi
        with pytest.raises(ValueError):
            power(-1, Fraction(1, 2))

    @pytest.mark.parametrize("base, exponent, expected", [
        (Fraction(4, 9), Fraction(1, 2), Fraction(2, 3)),
        (Fraction(27, 8), Fraction(2, 3), Fraction(9, 4)),
        (Fraction(1, 9), Fraction(-1, 2), Fraction(3)),
        (Fraction(125, 343), Fraction(-1, 3), Fraction(7, 5)),
    ])
    def test_perfect_roots_are_exact(self, base, exponent, expected):
        root = power(base, exponent)
        assert root.is_rational
        assert root.compare(expected) == 0

    def test_imperfect_root_stays_an_interval(self):
        root = power(Fraction(4, 3), Fraction(1, 2))
        assert not root.is_rational
        assert root.lo * root.lo <= Fraction(4, 3) <= root.hi * root.hi

    def test_power_of_interval_is_monotone(self):
        x = RealBound(Fraction(1), Fraction(4))
        y = power(x, Fraction(1, 2))
        assert y.lo <= 1 and y.hi >= 2
        z = power(x, Fraction(-1, 2))
        assert z.lo <= Fraction(1, 2) and z.hi >= 1

    def test_logarithm(self):
        assert log_bound(1).value == 0
        assert meets(log_bound(2), LN2)
        assert meets(log_bound(Fraction(1, 2)), (-LN2[1], -LN2[0]))
        assert log_bound(2).width <= Fraction(1, 2 ** 55)
        with pytest.raises(ValueError):
            log_bound(0)

    def test_exponential(self):
        assert exp_bound(0).value == 1
        assert meets(exp_bound(1), E)
        assert meets(exp_bound(-1), (Fraction("0.367879441171442321595"),
                                     Fraction("0.367879441171442321596")))
        assert exp_of(log_bound(3)).contains(3)
        assert log_of(exp_bound(2)).contains(2)

    @pytest.mark.parametrize("x", [1, -1, Fraction(1, 3), 7, Fraction(-25, 2)])
    def test_exponential_returns_in_time(self, x):
        result = []
        worker = threading.Thread(target=lambda: result.append(exp_bound(x)),
                                  daemon=True)
        worker.start()
        worker.join(timeout=10)
        assert result, "exp_bound({}) did not return".format(x)
        assert log_of(result[0]).contains(x)

    def test_log_base(self):
        b = log_base(8, 2)
        assert b.contains(3)
        assert b.width <= Fraction(1, 2 ** 50)

    def test_maximum(self):
        root2 = RealBound.power_of_p(2, Fraction(1, 2))
        m = maximum([Fraction(1, 2), root2, 1])
        assert m.is_exact and m.compare(root2) == 0
        with pytest.raises(ValueError):
            maximum([])
        hull = larger(RealBound(Fraction(0), Fraction(2)),
                      RealBound(Fraction(1), Fraction(3)))
        assert (hull.lo, hull.hi) == (1, 3)


def test_working_precision_is_scoped():
    default = current_precision()
    bisection = current_bisection()
    with working_precision(100, 20):
        assert current_precision() == 100
        assert current_bisection() == 20
        fine = power(3, Fraction(1, 2))
    assert current_precision() == default
    assert current_bisection() == bisection
    assert fine.width < power(3, Fraction(1, 2)).width
