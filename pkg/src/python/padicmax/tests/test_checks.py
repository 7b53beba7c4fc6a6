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



import pytest

from padicmax.bounds import RealBound
from padicmax.checks import CHECKS
from padicmax.families import build_family
from padicmax.ultrametric import BallRelation
from padicmax.verify import ProbeConfig, Verdict, run_check


def _negative(*args):
    return RealBound.of(-1000)


def _zero(*args):
    return RealBound.of(0)


BROKEN = {
    "pointwise_bounds_nonnegative": [("maximal_commutator", _negative)],
    "pointwise_bounds_signed": [("maximal_commutator", _negative)],
    "sandwich": [("hardy_littlewood_at", _zero), ("frac_maximal_at", _zero)],
    "restriction_cutoff": [("restricted_frac_maximal", _negative)],
    "kolmogorov": [("weak_lq_norm", _zero)],
    "haar_structure": [("ball_relation",
                        lambda first, second: BallRelation.EQUAL)],
}


@pytest.fixture(scope="module")
def small():
    return ProbeConfig.from_dict({
        "family_size": 1,
        "sample_size": 1,
        "extra_levels": 4
    })


@pytest.fixture(scope="module")
def family(small):
    return build_family(small.family_spec, small.family_size, small.seed)


def _check(name: str):
    return next(c for c in CHECKS if c.name == name)


@pytest.mark.parametrize("name", sorted(BROKEN))
def test_intact_check_does_not_fail(name, small, family):
    record = run_check(_check(name), small, family)
    assert record.verdict != Verdict.FAIL
    assert record.instances > 0


@pytest.mark.parametrize("name", sorted(BROKEN))
def test_broken_operator_fails_with_witness(name, small, family,
                                            monkeypatch):
    for attribute, replacement in BROKEN[name]:
        monkeypatch.setattr("padicmax.checks." + attribute, replacement)
    record = run_check(_check(name), small, family)
    assert record.verdict == Verdict.FAIL
    assert record.failed > 0
    assert record.witness is not None
    assert record.witness.instance
    assert not record.retried
