"""
padicmax command line toolkit.

Usage::

    python -m padicmax eval --op M --fn chi.yaml --point 1/4
    python -m padicmax norm --kind bmo --fn chi.yaml
    python -m padicmax gen --count 10 --seed 7 --constraints nonnegative
    python -m padicmax verify --config suite.yaml --out report.json
    python -m padicmax report --in report.json --format csv

Exit statuses: 0 on success, 1 when a verification check fails, 2 on
malformed input or inconsistent parameters, 3 when the requested
quantity diverges.
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

import dataclasses
import logging
import os
import sys
from typing import List, Optional

from nsaph import init_logging

from padicmax import format_rational
from padicmax.bounds import RealBound, working_precision
from padicmax.cli_ds_def import EvalContext, NormContext, GenContext, \
    VerifyContext, ReportContext, Operator, NormKind
from padicmax.errors import PAdicError, ConfigurationError, ParseError, \
    EXIT_OK, EXIT_BAD_INPUT, EXIT_CHECK_FAILED
from padicmax.families import FamilySpec, generate, write_family
from padicmax.lcfun import LCFunction, load_function
from padicmax.luxemburg import orlicz_average
from padicmax.norms import NormResult, MorreyParams, ExponentFunction, \
    lq_norm, weak_lq_norm, morrey_norm, bmo_norm, bmo_q_norm, \
    luxemburg_variable_norm
from padicmax.operators import hardy_littlewood_at, frac_maximal_at, \
    restricted_frac_maximal, maximal_commutator, nonlinear_commutator, \
    power_maximal, llogl_maximal
from padicmax.report import atomic_write, render_value, render_norm, \
    render_report, load_report
from padicmax.ultrametric import BallAddress, FieldParams, parse_ball, \
    parse_point
from padicmax.verify import DEFAULT_SUITE, ProbeConfig, Verdict, run_suite

log = logging.getLogger(__name__)


def read_function(path: str) -> LCFunction:
    """Reads a function document; parse errors are prefixed by the path"""

    if not os.path.isfile(path):
        raise ParseError("Function file {} not found".format(path))
    with open(path, "rt") as f:
        text = f.read()
    try:
        return load_function(text)
    except ParseError as x:
        raise ParseError("{}: {}".format(path, x))


def _emit(text: str, destination: Optional[str] = None):
    if destination:
        atomic_write(destination, text)
    else:
        sys.stdout.write(text)


def _required(value, option: str, purpose: str):
    if value is None:
        raise ConfigurationError("--{} is required for {}"
                                 .format(option, purpose))
    return value


def _ball(address: Optional[str], params: FieldParams,
          purpose: str) -> BallAddress:
    ball = parse_ball(_required(address, "ball", purpose))
    if ball.params != params:
        raise ParseError("Ball {} is not in the field {} of the function"
                         .format(address, params))
    return ball


class Evaluator:
    """
    Evaluates a maximal operator or a commutator at one point and prints
    the certified interval
    """

    def __init__(self, context: EvalContext = None):
        init_logging()
        if not context:
            context = EvalContext(__doc__)
        self.context = context

    def evaluate(self) -> RealBound:
        ctx = self.context
        f = read_function(ctx.fn)
        x = parse_point(ctx.point, f.params)
        alpha = ctx.alpha
        op = ctx.op
        if op == Operator.M:
            return hardy_littlewood_at(f, x)
        if op == Operator.M_ALPHA:
            return frac_maximal_at(f, alpha, x)
        if op == Operator.M_RESTRICTED:
            ball = _ball(ctx.ball, f.params, op.value)
            return restricted_frac_maximal(f, alpha, ball, x)
        if op in (Operator.M_COMMUTATOR, Operator.COMMUTATOR):
            b = read_function(_required(ctx.symbol, "symbol", op.value))
            if op == Operator.M_COMMUTATOR:
                return maximal_commutator(b, f, alpha, x)
            return nonlinear_commutator(b, f, alpha, x)
        if op == Operator.M_EPS:
            return power_maximal(f, _required(ctx.eps, "eps", op.value), x)
        return llogl_maximal(f, alpha, x)

    def run(self) -> int:
        ctx = self.context
        with working_precision(ctx.precision):
            value = self.evaluate()
        description = {
            "op": ctx.op.value,
            "alpha": format_rational(ctx.alpha),
            "point": ctx.point
        }
        _emit(render_value(value, ctx.format, description))
        return EXIT_OK


class NormCalculator:
    """Computes a norm and prints the certified interval and witness ball"""

    def __init__(self, context: NormContext = None):
        init_logging()
        if not context:
            context = NormContext(__doc__)
        self.context = context

    def morrey_params(self) -> MorreyParams:
        ctx = self.context
        if ctx.lam is not None and ctx.mu is not None:
            raise ConfigurationError("Give either --lambda or --mu, not both")
        lam = ctx.mu if ctx.mu is not None else ctx.lam
        q = _required(ctx.q, "q", "morrey")
        return MorreyParams.of(q, _required(lam, "lambda", "morrey"))

    def compute(self) -> NormResult:
        ctx = self.context
        f = read_function(ctx.fn)
        kind = ctx.kind
        if kind == NormKind.BMO:
            return bmo_norm(f)
        if kind == NormKind.MORREY:
            return morrey_norm(f, self.morrey_params())
        if kind == NormKind.ORLICZ:
            ball = _ball(ctx.ball, f.params, kind.value)
            return NormResult(kind.value, orlicz_average(f, ball, ctx.young),
                              parameters=(("young", ctx.young.value),))
        if kind == NormKind.LUXVAR:
            path = _required(ctx.qfun, "qfun", kind.value)
            qfun = ExponentFunction(read_function(path))
            return NormResult(kind.value, luxemburg_variable_norm(f, qfun),
                              parameters=(("qfun", path),))
        q = _required(ctx.q, "q", kind.value)
        parameters = (("q", format_rational(q)),)
        if kind == NormKind.LQ:
            return NormResult(kind.value, lq_norm(f, q),
                              parameters=parameters)
        if kind == NormKind.WEAK:
            ball = _ball(ctx.ball, f.params, kind.value)
            return NormResult(kind.value, weak_lq_norm(f, q, ball),
                              parameters=parameters)
        return bmo_q_norm(f, q)

    def run(self) -> int:
        ctx = self.context
        with working_precision(ctx.precision):
            result = self.compute()
        _emit(render_norm(result, ctx.format))
        return EXIT_OK


class FamilyWriter:
    """Writes a seeded family of function documents"""

    def __init__(self, context: GenContext = None):
        init_logging()
        if not context:
            context = GenContext(__doc__)
        self.context = context

    def write(self) -> List[str]:
        ctx = self.context
        spec = FamilySpec(FieldParams(ctx.p, ctx.n), ctx.top,
                          ctx.resolution, ctx.max_numerator,
                          ctx.max_denominator)
        functions = generate(spec, ctx.constraints, ctx.count, ctx.seed)
        return write_family(functions, ctx.destination)

    def run(self) -> int:
        with working_precision(self.context.precision):
            self.write()
        return EXIT_OK


class Verifier:
    """Runs a verification suite; fails when any check fails"""

    def __init__(self, context: VerifyContext = None):
        init_logging()
        if not context:
            context = VerifyContext(__doc__)
        self.context = context

    def configuration(self) -> ProbeConfig:
        ctx = self.context
        config = ProbeConfig.load(ctx.config or DEFAULT_SUITE)
        if ctx.self_test or ctx.timing:
            config = dataclasses.replace(
                config,
                self_test=config.self_test or bool(ctx.self_test),
                timing=config.timing or bool(ctx.timing)
            )
        return config

    def run(self) -> int:
        ctx = self.context
        config = self.configuration()
        with working_precision(ctx.precision):
            report = run_suite(config)
        _emit(render_report(report.to_dict(), ctx.format), ctx.out)
        if report.failed:
            for record in report.records:
                if record.verdict == Verdict.FAIL and record.witness:
                    log.error("Check {} failed at {}".format(
                        record.name, record.witness.instance
                    ))
            return EXIT_CHECK_FAILED
        return EXIT_OK


class Reporter:
    """Renders a saved JSON report in another format"""

    def __init__(self, context: ReportContext = None):
        init_logging()
        if not context:
            context = ReportContext(__doc__)
        self.context = context

    def run(self) -> int:
        ctx = self.context
        report = load_report(ctx.input)
        _emit(render_report(report, ctx.format), ctx.out)
        return EXIT_OK


COMMANDS = {
    "eval": Evaluator,
    "norm": NormCalculator,
    "gen": FamilyWriter,
    "verify": Verifier,
    "report": Reporter
}


def main(argv: List[str] = None) -> int:
    """
    Dispatches ``padicmax <subcommand> [options]``; the options are parsed
    by the context of the subcommand
    """

    argv = list(sys.argv[1:] if argv is None else argv)
    if not argv or argv[0] not in COMMANDS:
        sys.stderr.write("usage: padicmax {{{}}} [options]\n"
                         .format(",".join(COMMANDS)))
        return EXIT_BAD_INPUT
    command = argv[0]
    sys.argv = ["padicmax {}".format(command)] + argv[1:]
    try:
        return COMMANDS[command]().run()
    except PAdicError as x:
        log.error(str(x))
        sys.stderr.write("padicmax {}: {}\n".format(command, x))
        return x.exit_status


if __name__ == '__main__':
    sys.exit(main())
