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

from padicmax.errors import ConfigurationError, ParameterError
from padicmax.families import Constraint, FamilySpec, FamilyGenerator, \
    generate, satisfies, write_family, build_family, check_constraints, \
    EXPONENT_COUNT, EXPONENT_RANGE
from padicmax.lcfun import load_function, char_fn, constant
from padicmax.ultrametric import BallAddress, is_subset


@pytest.fixture
def spec(q2):
    return FamilySpec(q2, top=2, resolution=-2, max_cells=16)


class TestGenerate:
    def test_same_seed_same_family(self, spec):
        constraints = {Constraint.SIGNED, Constraint.SYMBOL}
        assert generate(spec, constraints, 5, 7) == \
            generate(spec, constraints, 5, 7)

    def test_other_seed_other_family(self, spec):
        assert generate(spec, set(), 8, 1) != generate(spec, set(), 8, 2)

    @pytest.mark.parametrize("constraints", [
        {Constraint.NONNEGATIVE},
        {Constraint.COMPACT},
        {Constraint.SYMBOL},
        {Constraint.NONNEGATIVE, Constraint.COMPACT, Constraint.SYMBOL},
        {Constraint.SIGNED, Constraint.SYMBOL},
    ])
    def test_constraints_hold(self, spec, constraints):
        for f in generate(spec, constraints, 20, 11):
            assert satisfies(f, constraints)

    def test_grids_stay_within_range(self, spec):
        for f in generate(spec, set(), 30, 3):
            assert spec.resolution <= f.resolution <= f.top <= spec.top
            assert len(f.values) <= spec.max_cells

    def test_explicit_levels(self, spec):
        for f in generate(spec, {Constraint.COMPACT}, 4, 5, top=1,
                          resolution=0):
            assert (f.top, f.resolution) == (1, 0)
            assert len(f.values) == 2
            assert f.tail == 0

    def test_count_zero(self, spec):
        assert generate(spec, set(), 0, 1) == []

    def test_negative_count(self, spec):
        with pytest.raises(ConfigurationError):
            generate(spec, set(), -1, 1)

    def test_conflicting_constraints(self, spec):
        with pytest.raises(ConfigurationError):
            generate(spec, {Constraint.NONNEGATIVE, Constraint.SIGNED}, 1, 1)
        with pytest.raises(ConfigurationError):
            check_constraints([Constraint.SIGNED, Constraint.NONNEGATIVE])

    def test_resolution_above_top(self, q2, spec):
        with pytest.raises(ParameterError):
            FamilySpec(q2, top=0, resolution=1).validate()
        with pytest.raises(ParameterError):
            generate(spec, set(), 1, 1, top=0, resolution=1)

    def test_symbols_need_numerators(self, q2):
        spec = FamilySpec(q2, top=0, resolution=0, max_numerator=0)
        with pytest.raises(ConfigurationError):
            generate(spec, {Constraint.SYMBOL}, 1, 1)

    def test_constraint_values(self):
        assert Constraint.values() == \
            {"nonnegative", "signed", "compact", "symbol"}


def test_satisfies(q2):
    chi = char_fn(BallAddress.centered(q2, 0))
    assert satisfies(chi, {Constraint.NONNEGATIVE, Constraint.COMPACT,
                           Constraint.SYMBOL})
    assert not satisfies(constant(q2, 1), {Constraint.SYMBOL})
    assert not satisfies(constant(q2, 1), {Constraint.COMPACT})
    assert not satisfies(chi - constant(q2, 1), {Constraint.NONNEGATIVE})


class TestGenerator:
    def test_points_lie_in_the_structure_ball(self, q2, spec):
        generator = FamilyGenerator(spec, 4)
        outer = BallAddress.centered(q2, 1)
        for _ in range(20):
            assert outer.contains(generator.point(1, -2))

    def test_balls_lie_in_the_enlarged_ball(self, q2, spec):
        generator = FamilyGenerator(spec, 4)
        outer = BallAddress.centered(q2, spec.top + 1)
        for _ in range(20):
            ball = generator.ball()
            assert spec.resolution - 1 <= ball.level <= spec.top + 1
            assert is_subset(ball, outer)

    def test_exponent_range(self, spec):
        generator = FamilyGenerator(spec, 9)
        qfun = generator.exponent("3/2", 3)
        values = list(qfun.shape.values) + [qfun.shape.tail]
        assert all(Fraction(3, 2) <= v <= 3 for v in values)

    @pytest.mark.parametrize("low, high", [(1, 2), (3, 2), ("1/2", 2)])
    def test_exponent_range_rejected(self, spec, low, high):
        with pytest.raises(ConfigurationError):
            FamilyGenerator(spec, 9).exponent(low, high)


def test_write_family(spec, tmp_path):
    functions = generate(spec, {Constraint.COMPACT}, 3, 21)
    paths = write_family(functions, str(tmp_path / "family"))
    assert [p.rsplit("/", 1)[-1] for p in paths] == \
        ["fn_000.yaml", "fn_001.yaml", "fn_002.yaml"]
    for path, f in zip(paths, functions):
        with open(path) as stream:
            assert load_function(stream.read()) == f


class TestBuildFamily:
    def test_fixtures_come_first(self, q2, spec):
        family = build_family(spec, 2, 1)
        chi = char_fn(BallAddress.centered(q2, 0))
        one = constant(q2, 1)
        assert family.symbols[:2] == (chi, one)
        assert family.signed[0] == chi - one
        assert family.densities[0] == chi
        assert len(family.symbols) == 4
        assert len(family.signed) == 3
        assert len(family.densities) == 3
        assert len(family.balls) == 100

    def test_sample_labels(self, spec):
        family = build_family(spec, 2, 1)
        assert [label for label, _ in family.sample("symbols", 1)] == \
            ["b0", "b1", "b2"]
        assert [label for label, _ in family.sample("signed", 0)] == ["s0"]
        assert [label for label, _ in family.sample("densities", 5)] == \
            ["f0", "f1", "f2"]

    def test_generated_members(self, spec):
        family = build_family(spec, 3, 8)
        for f in family.symbols[2:]:
            assert satisfies(f, {Constraint.NONNEGATIVE, Constraint.SYMBOL})
        for f in family.densities:
            assert f.tail == 0

    def test_empty_family(self, spec):
        family = build_family(spec, 0, 1)
        assert family.empty
        assert family.sample("symbols", 3) == []

    def test_reproducible(self, spec):
        assert build_family(spec, 2, 13) == build_family(spec, 2, 13)

    def test_drawn_exponents(self, spec):
        family = build_family(spec, 2, 5)
        assert len(family.exponents) == EXPONENT_COUNT
        low, high = EXPONENT_RANGE
        for qfun in family.exponents:
            assert qfun.params == spec.params
            assert low <= qfun.q_minus <= qfun.q_plus <= high
        assert build_family(spec, 0, 5).exponents == ()


def test_drawn_function_is_checked_against_constraints(spec, monkeypatch):
    monkeypatch.setattr("padicmax.families.satisfies", lambda f, c: False)
    with pytest.raises(ParameterError):
        FamilyGenerator(spec, 3).function({Constraint.NONNEGATIVE})
