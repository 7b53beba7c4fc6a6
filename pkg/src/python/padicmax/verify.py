"""
Verification suites: turn identities and inequalities of the theory of
fractional maximal commutators on Q_p^n into pass/fail/inconclusive
records over seeded families of locally constant functions.

A suite is described by a :class:`ProbeConfig` (YAML or JSON). The
checks themselves live in :mod:`padicmax.checks`; this module builds the
family, runs the selected checks (optionally in parallel), retries
inconclusive checks once at doubled precision and assembles a
deterministic :class:`VerificationReport`.
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

import json
import logging
import os
import time
from concurrent.futures import ThreadPoolExecutor
from contextvars import copy_context
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Dict, List, Optional, Tuple, Any

import yaml

from padicmax import as_rational, format_rational
from padicmax.bounds import RealBound, larger, working_precision, \
    current_precision, current_bisection
from padicmax.checks import CHECKS, Check
from padicmax.errors import ConfigurationError, PAdicError
from padicmax.families import FamilySpec, Family, build_family
from padicmax.lcfun import LCFunction
from padicmax.norms import ExponentFunction, fractional_partner
from padicmax.operators import Alpha
from padicmax.ultrametric import FieldParams

log = logging.getLogger(__name__)

DEFAULT_SUITE = os.path.join(os.path.dirname(__file__), "default_suite.yaml")
ACCEPTANCE_SUITE = os.path.join(os.path.dirname(__file__),
                                "acceptance_suite.yaml")
SUITES = {"default": DEFAULT_SUITE, "acceptance": ACCEPTANCE_SUITE}


class MorreyMode(Enum):
    """Relation between the exponents of a Morrey boundedness probe"""

    SAME_LAMBDA = "same_lambda"
    '''L^{r,λ} to L^{q,λ} with 1/q = 1/r - α/(n-λ)'''
    LAMBDA_MU = "lambda_mu"
    '''L^{r,λ} to L^{q,μ} with 1/q = 1/r - α/n and λ/r = μ/q'''

    @classmethod
    def values(cls):
        return {m.value for m in cls}


class Verdict(Enum):
    PASS = "pass"
    FAIL = "fail"
    INCONCLUSIVE = "inconclusive"


CONFIG_KEYS = {
    "p", "n", "top", "resolution", "max_cells", "max_numerator",
    "max_denominator", "family_size", "sample_size", "seed", "alpha", "r",
    "q", "lambda", "mu", "morrey_mode", "exponents", "eps", "bmo_q",
    "kolmogorov", "jn_fraction", "extra_levels", "tolerance", "checks",
    "self_test", "timing", "workers"
}


def _integer(doc: Dict, key: str, default: int) -> int:
    value = doc.get(key, default)
    if not isinstance(value, int) or isinstance(value, bool):
        raise ConfigurationError("'{}' must be an integer, got {!r}"
                                 .format(key, value))
    return value


def _flag(doc: Dict, key: str) -> bool:
    value = doc.get(key, False)
    if not isinstance(value, bool):
        raise ConfigurationError("'{}' must be true or false".format(key))
    return value


def _rational(value, key: str) -> Fraction:
    try:
        return as_rational(value)
    except PAdicError as x:
        raise ConfigurationError("'{}': {}".format(key, x))


def _rationals(doc: Dict, key: str, default) -> Tuple[Fraction, ...]:
    values = doc.get(key, default)
    if not isinstance(values, list):
        raise ConfigurationError("'{}' must be a list".format(key))
    return tuple(_rational(v, key) for v in values)


@dataclass
class ProbeConfig:
    """
    Configuration of a verification suite. Exponent relations are
    validated on construction; q and μ are derived when omitted
    """

    params: FieldParams
    top: int = 1
    '''Largest structure level of generated functions'''
    resolution: int = -1
    '''Smallest resolution of generated functions'''
    max_cells: int = 16
    max_numerator: int = 4
    max_denominator: int = 3
    family_size: int = 4
    '''Generated members per kind; 0 runs no checks'''
    sample_size: int = 2
    '''Members used by checks that evaluate operators on pairs'''
    seed: int = 0
    alpha: Fraction = Fraction(1, 2)
    r: Fraction = Fraction(3, 2)
    q: Optional[Fraction] = None
    '''1/q = 1/r - α/n'''
    lam: Fraction = Fraction(1, 8)
    mu: Optional[Fraction] = None
    morrey_mode: MorreyMode = MorreyMode.LAMBDA_MU
    exponents: Tuple[ExponentFunction, ...] = ()
    '''Sampled variable exponents r(·)'''
    eps: Tuple[Fraction, ...] = (Fraction(1), Fraction(2), Fraction(3))
    bmo_q: Tuple[Fraction, ...] = (Fraction(3, 2), Fraction(2), Fraction(3))
    kolmogorov: Tuple[Tuple[Fraction, Fraction], ...] = (
        (Fraction(1, 2), Fraction(2)), (Fraction(1), Fraction(2)),
        (Fraction(3, 2), Fraction(3))
    )
    jn_fraction: Fraction = Fraction(1, 2)
    extra_levels: int = 8
    tolerance: int = 40
    '''Relative width 2^-tolerance at which overlapping values are equal'''
    checks: Tuple[str, ...] = ()
    '''Names of the checks to run, all when empty'''
    self_test: bool = False
    timing: bool = False
    workers: int = 1

    def __post_init__(self):
        self.validate()

    def validate(self):
        if self.resolution > self.top:
            raise ConfigurationError(
                "Resolution {:d} above structure level {:d}"
                .format(self.resolution, self.top)
            )
        for key in ("max_cells", "max_denominator", "sample_size",
                    "workers"):
            if getattr(self, key) < 1:
                raise ConfigurationError("'{}' must be positive".format(key))
        for key in ("max_numerator", "family_size", "extra_levels"):
            if getattr(self, key) < 0:
                raise ConfigurationError("'{}' must not be negative"
                                         .format(key))
        if self.tolerance < 8:
            raise ConfigurationError("'tolerance' must be at least 8 bits")
        n = self.params.n
        try:
            Alpha.of(self.alpha, self.params)
            q = fractional_partner(self.r, self.alpha, n)
        except PAdicError as x:
            raise ConfigurationError(str(x))
        if self.q is None:
            self.q = q
        elif self.q != q:
            raise ConfigurationError(
                "q = {} violates 1/q = 1/r - α/n, expected {}"
                .format(self.q, q)
            )
        if not 0 < self.lam < n - self.alpha * self.r:
            raise ConfigurationError(
                "λ must satisfy 0 < λ < n - αr = {}, got {}"
                .format(n - self.alpha * self.r, self.lam)
            )
        if self.morrey_mode == MorreyMode.LAMBDA_MU:
            mu = self.lam * self.q / self.r
            if self.mu is None:
                self.mu = mu
            elif self.mu != mu:
                raise ConfigurationError(
                    "μ = {} violates λ/r = μ/q, expected {}".format(self.mu, mu)
                )
        elif self.mu is not None and self.mu != self.lam:
            raise ConfigurationError(
                "Mode same_lambda uses μ = λ, got μ = {}".format(self.mu)
            )
        for rfun in self.exponents:
            if rfun.params != self.params:
                raise ConfigurationError("Exponent function on field {}"
                                         .format(rfun.params))
            if self.alpha * rfun.q_plus >= n:
                raise ConfigurationError(
                    "Exponent function needs r_+ < n/α, got r_+ = {}"
                    .format(rfun.q_plus)
                )
        if any(e <= 0 for e in self.eps):
            raise ConfigurationError("'eps' values must be positive")
        if any(q < 1 for q in self.bmo_q):
            raise ConfigurationError("'bmo_q' values must be at least 1")
        for r, q in self.kolmogorov:
            if not 0 < r < q:
                raise ConfigurationError(
                    "Kolmogorov pairs need 0 < r < q, got [{}, {}]"
                    .format(r, q)
                )
        if not 0 < self.jn_fraction <= 1:
            raise ConfigurationError("'jn_fraction' must be in (0, 1]")
        known = {c.name for c in CHECKS}
        unknown = set(self.checks) - known
        if unknown:
            raise ConfigurationError("Unknown checks: {}"
                                     .format(", ".join(sorted(unknown))))
        FamilySpec(self.params, self.top, self.resolution, self.max_numerator,
                   self.max_denominator, self.max_cells).validate()

    @property
    def morrey_q(self) -> Fraction:
        """Target exponent of the Morrey probe"""
        if self.morrey_mode == MorreyMode.SAME_LAMBDA:
            n = self.params.n
            return 1 / (1 / self.r - self.alpha / (n - self.lam))
        return self.q

    @property
    def morrey_lambda(self) -> Fraction:
        """Target Morrey index: λ or μ"""
        if self.morrey_mode == MorreyMode.SAME_LAMBDA:
            return self.lam
        return self.mu

    @property
    def family_spec(self) -> FamilySpec:
        return FamilySpec(self.params, self.top, self.resolution,
                          self.max_numerator, self.max_denominator,
                          self.max_cells)

    def selected(self) -> List[Check]:
        result = []
        for c in CHECKS:
            if c.self_test:
                if self.self_test:
                    result.append(c)
            elif not self.checks or c.name in self.checks:
                result.append(c)
        return result

    @classmethod
    def from_dict(cls, doc: Optional[Dict]) -> "ProbeConfig":
        doc = doc or {}
        if not isinstance(doc, dict):
            raise ConfigurationError("Configuration must be a mapping")
        unknown = set(doc) - CONFIG_KEYS
        if unknown:
            raise ConfigurationError("Unknown configuration keys: {}"
                                     .format(", ".join(sorted(unknown))))
        try:
            params = FieldParams(_integer(doc, "p", 2), _integer(doc, "n", 1))
        except PAdicError as x:
            raise ConfigurationError(str(x))
        mode = doc.get("morrey_mode", MorreyMode.LAMBDA_MU.value)
        if mode not in MorreyMode.values():
            raise ConfigurationError("'morrey_mode' must be one of {}"
                                     .format(sorted(MorreyMode.values())))
        checks = doc.get("checks", [])
        if not isinstance(checks, list) \
                or not all(isinstance(c, str) for c in checks):
            raise ConfigurationError("'checks' must be a list of names")
        if not isinstance(doc.get("exponents", []), list):
            raise ConfigurationError("'exponents' must be a list")
        pairs = doc.get("kolmogorov", None)
        if pairs is None:
            kolmogorov = cls.kolmogorov
        else:
            if not isinstance(pairs, list) or \
                    not all(isinstance(p, list) and len(p) == 2 for p in pairs):
                raise ConfigurationError("'kolmogorov' must be a list of "
                                         "[r, q] pairs")
            kolmogorov = tuple((_rational(r, "kolmogorov"),
                                _rational(q, "kolmogorov")) for r, q in pairs)
        return cls(
            params=params,
            top=_integer(doc, "top", cls.top),
            resolution=_integer(doc, "resolution", cls.resolution),
            max_cells=_integer(doc, "max_cells", cls.max_cells),
            max_numerator=_integer(doc, "max_numerator", cls.max_numerator),
            max_denominator=_integer(doc, "max_denominator",
                                     cls.max_denominator),
            family_size=_integer(doc, "family_size", cls.family_size),
            sample_size=_integer(doc, "sample_size", cls.sample_size),
            seed=_integer(doc, "seed", 0),
            alpha=_rational(doc.get("alpha", cls.alpha), "alpha"),
            r=_rational(doc.get("r", cls.r), "r"),
            q=_rational(doc["q"], "q") if doc.get("q") is not None else None,
            lam=_rational(doc.get("lambda", cls.lam), "lambda"),
            mu=_rational(doc["mu"], "mu") if doc.get("mu") is not None
            else None,
            morrey_mode=MorreyMode(mode),
            exponents=tuple(_exponent(params, e)
                            for e in doc.get("exponents", [])),
            eps=_rationals(doc, "eps", list(cls.eps)),
            bmo_q=_rationals(doc, "bmo_q", list(cls.bmo_q)),
            kolmogorov=kolmogorov,
            jn_fraction=_rational(doc.get("jn_fraction", cls.jn_fraction),
                                  "jn_fraction"),
            extra_levels=_integer(doc, "extra_levels", cls.extra_levels),
            tolerance=_integer(doc, "tolerance", cls.tolerance),
            checks=tuple(checks),
            self_test=_flag(doc, "self_test"),
            timing=_flag(doc, "timing"),
            workers=_integer(doc, "workers", 1)
        )

    @classmethod
    def load(cls, path: str) -> "ProbeConfig":
        """
        Reads a configuration from a YAML or JSON file or a bundled suite
        given by its name: default or acceptance
        """

        path = SUITES.get(path, path)
        if not os.path.isfile(path):
            raise ConfigurationError("Configuration file {} not found"
                                     .format(path))
        with open(path) as fp:
            try:
                if path.endswith(".json"):
                    content = json.load(fp)
                else:
                    content = yaml.safe_load(fp)
            except (json.JSONDecodeError, yaml.YAMLError) as x:
                raise ConfigurationError("Malformed configuration {}: {}"
                                         .format(path, x))
        log.info("Suite configuration has been read from {}".format(path))
        return cls.from_dict(content)

    def to_dict(self) -> Dict[str, Any]:
        def text(values):
            return [format_rational(v) for v in values]

        return {
            "p": self.params.p,
            "n": self.params.n,
            "top": self.top,
            "resolution": self.resolution,
            "max_cells": self.max_cells,
            "max_numerator": self.max_numerator,
            "max_denominator": self.max_denominator,
            "family_size": self.family_size,
            "sample_size": self.sample_size,
            "seed": self.seed,
            "alpha": format_rational(self.alpha),
            "r": format_rational(self.r),
            "q": format_rational(self.q),
            "lambda": format_rational(self.lam),
            "mu": format_rational(self.mu) if self.mu is not None else None,
            "morrey_mode": self.morrey_mode.value,
            "exponents": [{
                "top": e.shape.top,
                "resolution": e.shape.resolution,
                "values": text(e.shape.values),
                "tail": format_rational(e.shape.tail)
            } for e in self.exponents],
            "eps": text(self.eps),
            "bmo_q": text(self.bmo_q),
            "kolmogorov": [text(pair) for pair in self.kolmogorov],
            "jn_fraction": format_rational(self.jn_fraction),
            "extra_levels": self.extra_levels,
            "tolerance": self.tolerance,
            "checks": list(self.checks),
            "self_test": self.self_test,
            "timing": self.timing,
            "workers": self.workers
        }


def _exponent(params: FieldParams, doc) -> ExponentFunction:
    if not isinstance(doc, dict) or \
            set(doc) != {"top", "resolution", "values", "tail"}:
        raise ConfigurationError("Exponent functions are mappings with "
                                 "top, resolution, values and tail")
    try:
        shape = LCFunction.from_values(params, _integer(doc, "top", 0),
                                       _integer(doc, "resolution", 0),
                                       doc["values"], doc["tail"])
        return ExponentFunction(shape)
    except PAdicError as x:
        raise ConfigurationError("Exponent function: {}".format(x))


@dataclass
class Witness:
    """An instance of a check with both sides of its relation"""

    instance: str
    lhs: Optional[RealBound] = None
    rhs: Optional[RealBound] = None

    @property
    def margin(self) -> Fraction:
        return self.rhs.lo - self.lhs.hi

    def to_dict(self) -> Dict[str, Optional[str]]:
        def end(bound: Optional[RealBound], attr: str) -> Optional[str]:
            return None if bound is None \
                else format_rational(getattr(bound, attr))

        return {
            "instance": self.instance,
            "lhs_lo": end(self.lhs, "lo"),
            "lhs_hi": end(self.lhs, "hi"),
            "rhs_lo": end(self.rhs, "lo"),
            "rhs_hi": end(self.rhs, "hi")
        }


@dataclass
class CheckRecord:
    name: str
    anchor: str
    verdict: Verdict
    instances: int = 0
    passed: int = 0
    failed: int = 0
    inconclusive: int = 0
    skipped: int = 0
    witness: Optional[Witness] = None
    constant: Optional[RealBound] = None
    '''Smallest constant that makes every instance hold'''
    details: Dict[str, str] = field(default_factory=dict)
    retried: bool = False
    seconds: Optional[float] = None

    def to_dict(self) -> Dict[str, Any]:
        result = {
            "name": self.name,
            "anchor": self.anchor,
            "verdict": self.verdict.value,
            "instances": self.instances,
            "passed": self.passed,
            "failed": self.failed,
            "inconclusive": self.inconclusive,
            "skipped": self.skipped,
            "witness": self.witness.to_dict() if self.witness else None,
            "constant": {
                "lo": format_rational(self.constant.lo),
                "hi": format_rational(self.constant.hi)
            } if self.constant is not None else None,
            "details": dict(sorted(self.details.items())),
            "retried": self.retried
        }
        if self.seconds is not None:
            result["seconds"] = round(self.seconds, 3)
        return result


class Tally:
    """
    Collects the instances of one check. Every method decides one
    instance and returns its verdict
    """

    def __init__(self, name: str, anchor: str, tolerance: int):
        self.name = name
        self.anchor = anchor
        self.tolerance = tolerance
        self.counts = {v: 0 for v in Verdict}
        self.skipped = 0
        self.failure: Optional[Witness] = None
        self.undecided: Optional[Witness] = None
        self.tightest: Optional[Witness] = None
        self.ratio: Optional[RealBound] = None
        self.ratios: Dict[str, RealBound] = {}
        self.details: Dict[str, str] = {}

    def _count(self, verdict: Verdict, witness: Witness) -> Verdict:
        self.counts[verdict] += 1
        if verdict == Verdict.FAIL:
            if self.failure is None:
                self.failure = witness
                log.debug("{}: fails at {}".format(self.name,
                                                   witness.instance))
        elif verdict == Verdict.INCONCLUSIVE:
            if self.undecided is None:
                self.undecided = witness
        elif witness.lhs is not None and witness.rhs is not None:
            if self.tightest is None \
                    or witness.margin < self.tightest.margin:
                self.tightest = witness
        return verdict

    def inequality(self, instance: str, lhs, rhs) -> Verdict:
        """lhs ≤ rhs; passes only when the intervals are separated"""

        lhs, rhs = RealBound.of(lhs), RealBound.of(rhs)
        c = lhs.compare(rhs)
        if c is None:
            verdict = Verdict.INCONCLUSIVE
        elif c <= 0:
            verdict = Verdict.PASS
        else:
            verdict = Verdict.FAIL
        return self._count(verdict, Witness(instance, lhs, rhs))

    def equality(self, instance: str, lhs, rhs,
                 tolerance: Optional[int] = None) -> Verdict:
        """
        lhs = rhs: exact values are compared exactly, disjoint intervals
        fail and overlapping intervals pass when their hull is within
        the relative tolerance
        """

        lhs, rhs = RealBound.of(lhs), RealBound.of(rhs)
        c = lhs.compare(rhs)
        if c is not None:
            verdict = Verdict.PASS if c == 0 else Verdict.FAIL
        else:
            hull = RealBound(min(lhs.lo, rhs.lo), max(lhs.hi, rhs.hi))
            bits = self.tolerance if tolerance is None else tolerance
            if hull.relative_width() <= Fraction(1, 1 << bits):
                verdict = Verdict.PASS
            else:
                verdict = Verdict.INCONCLUSIVE
        return self._count(verdict, Witness(instance, lhs, rhs))

    def holds(self, instance: str, condition: bool) -> Verdict:
        """An exactly decided statement without numeric sides"""
        verdict = Verdict.PASS if condition else Verdict.FAIL
        return self._count(verdict, Witness(instance))

    def constant(self, instance: str, lhs, rhs,
                 key: Optional[str] = None) -> Verdict:
        """
        lhs ≤ C·rhs for an empirical C: the ratio is accumulated, per key
        when one is given; only a positive lhs over a zero rhs fails
        """

        lhs, rhs = RealBound.of(lhs), RealBound.of(rhs)
        witness = Witness(instance, lhs, rhs)
        s = rhs.sign()
        if s == 0:
            if lhs.sign() == 0:
                return self._count(Verdict.PASS, witness)
            verdict = Verdict.FAIL if lhs.sign() == 1 \
                else Verdict.INCONCLUSIVE
            return self._count(verdict, witness)
        if s is None:
            return self._count(Verdict.INCONCLUSIVE, witness)
        ratio = lhs / rhs
        self.ratio = ratio if self.ratio is None else larger(self.ratio, ratio)
        if key is not None:
            known = self.ratios.get(key)
            self.ratios[key] = ratio if known is None \
                else larger(known, ratio)
        self.counts[Verdict.PASS] += 1
        return Verdict.PASS

    def failed(self, instance: str, reason: str) -> Verdict:
        """An instance that could not be evaluated"""
        return self._count(Verdict.FAIL,
                           Witness("{}: {}".format(instance, reason)))

    def skip(self, count: int = 1):
        self.skipped += count

    def note(self, key: str, value):
        if isinstance(value, RealBound):
            value = value.to_text()
        elif isinstance(value, Fraction):
            value = format_rational(value)
        self.details[key] = str(value)

    def record(self) -> CheckRecord:
        for key, ratio in self.ratios.items():
            self.note("constant.{}".format(key), ratio)
        counts = self.counts
        if counts[Verdict.FAIL]:
            verdict, witness = Verdict.FAIL, self.failure
        elif counts[Verdict.INCONCLUSIVE]:
            verdict, witness = Verdict.INCONCLUSIVE, self.undecided
        else:
            verdict, witness = Verdict.PASS, self.tightest
        return CheckRecord(
            name=self.name, anchor=self.anchor, verdict=verdict,
            instances=sum(counts.values()), passed=counts[Verdict.PASS],
            failed=counts[Verdict.FAIL],
            inconclusive=counts[Verdict.INCONCLUSIVE],
            skipped=self.skipped, witness=witness, constant=self.ratio,
            details=dict(self.details)
        )


@dataclass
class VerificationReport:
    config: ProbeConfig
    records: List[CheckRecord]
    seconds: Optional[float] = None

    @property
    def summary(self) -> Dict[str, int]:
        result = {v.value: 0 for v in Verdict}
        for r in self.records:
            result[r.verdict.value] += 1
        result["checks"] = len(self.records)
        return result

    @property
    def failed(self) -> bool:
        return any(r.verdict == Verdict.FAIL for r in self.records)

    def to_dict(self) -> Dict[str, Any]:
        result = {
            "config": self.config.to_dict(),
            "seed": self.config.seed,
            "records": [r.to_dict() for r in self.records],
            "summary": self.summary,
            "status": Verdict.FAIL.value if self.failed else Verdict.PASS.value
        }
        if self.seconds is not None:
            result["seconds"] = round(self.seconds, 3)
        return result


def _attempt(check: Check, config: ProbeConfig, family: Family) \
        -> CheckRecord:
    tally = Tally(check.name, check.anchor, config.tolerance)
    try:
        check.run(config, family, tally)
    except PAdicError as x:
        log.exception("Check {} raised an error".format(check.name))
        tally.failed(check.name, str(x))
    return tally.record()


def run_check(check: Check, config: ProbeConfig, family: Family) \
        -> CheckRecord:
    """
    Runs one check; an inconclusive check is run once more at doubled
    precision
    """

    start = time.perf_counter()
    record = _attempt(check, config, family)
    if record.verdict == Verdict.INCONCLUSIVE:
        bits, bisection = 2 * current_precision(), 2 * current_bisection()
        log.info("Check {} is inconclusive, retrying with {:d} bits"
                 .format(check.name, bits))
        with working_precision(bits, bisection):
            record = _attempt(check, config, family)
        record.retried = True
    if config.timing:
        record.seconds = time.perf_counter() - start
    log.info("{}: {}".format(check.name, record.verdict.value))
    return record


def run_suite(config: ProbeConfig) -> VerificationReport:
    """
    Runs the selected checks over the family of the configured seed.
    Records follow the canonical order of the checks regardless of the
    order in which parallel workers finish
    """

    start = time.perf_counter()
    family = build_family(config.family_spec, config.family_size,
                          config.seed)
    if family.empty:
        checks = []
    else:
        checks = config.selected()
    if config.workers > 1 and len(checks) > 1:
        with ThreadPoolExecutor(max_workers=config.workers) as executor:
            futures = [
                executor.submit(copy_context().run, run_check, c, config,
                                family)
                for c in checks
            ]
            records = [f.result() for f in futures]
    else:
        records = [run_check(c, config, family) for c in checks]
    report = VerificationReport(config, records)
    if config.timing:
        report.seconds = time.perf_counter() - start
    log.info("Suite finished: {}".format(report.summary))
    return report
