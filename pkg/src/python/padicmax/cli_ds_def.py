"""
Command line contexts of the padicmax toolkit: one
:class:`nsaph_utils.utils.context.Context` subclass per subcommand and the
enumerations of operators and norms they refer to
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

from enum import Enum

from nsaph_utils.utils.context import Context, Argument, Cardinality

from padicmax import as_rational
from padicmax.errors import ConfigurationError
from padicmax.families import Constraint
from padicmax.luxemburg import YoungKind
from padicmax.report import OutputFormat


class Operator(Enum):
    """Operators evaluated by ``padicmax eval``"""

    M = "M"
    '''Hardy-Littlewood maximal function M f(x)'''
    M_ALPHA = "M_alpha"
    '''fractional maximal function M_α f(x)'''
    M_RESTRICTED = "M_restricted"
    '''maximal function restricted to a ball B*, M_{α,B*} f(x)'''
    M_COMMUTATOR = "M_commutator"
    '''maximal commutator M_{α,b} f(x), needs a symbol'''
    COMMUTATOR = "commutator"
    '''nonlinear commutator [b, M_α] f(x), needs a symbol'''
    M_EPS = "M_eps"
    '''power maximal function (M |f|^ε)^{1/ε}(x), needs ε'''
    M_LLOGL = "M_llogl"
    '''fractional Orlicz maximal function M_{α,L log L} f(x)'''

    @classmethod
    def values(cls):
        return {o.value for o in cls}


class NormKind(Enum):
    """Norms computed by ``padicmax norm``"""

    LQ = "lq"
    '''Lebesgue norm ‖f‖_q'''
    WEAK = "weak"
    '''weak norm ‖f‖_{L^{q,∞}(B)} on a ball'''
    MORREY = "morrey"
    '''Morrey norm ‖f‖_{L^{q,λ}}'''
    BMO = "bmo"
    '''‖b‖_BMO with the witness ball'''
    BMOQ = "bmoq"
    '''‖b‖_{BMO_q} with the witness ball'''
    ORLICZ = "orlicz"
    '''Luxemburg average ‖f‖_{Φ,B} on a ball'''
    LUXVAR = "luxvar"
    '''variable exponent norm ‖f‖_{L^{q(·)}}'''

    @classmethod
    def values(cls):
        return {k.value for k in cls}


def _precision_argument():
    return Argument("precision",
                    type=int,
                    required=False,
                    cardinality=Cardinality.single,
                    help="Bits of relative width of certified powers, "
                         "logarithms and exponentials"
                    )


def _format_argument(default: str):
    return Argument("format",
                    aliases=["f"],
                    cardinality=Cardinality.single,
                    default=default,
                    help="Output format",
                    valid_values=[f.value for f in OutputFormat]
                    )


def _rational(value):
    if value is None:
        return None
    return as_rational(value)


class EvalContext(Context):
    """
    Evaluates a maximal operator or a commutator of a function read from
    a YAML document at one point
    """

    _op = Argument("op",
                   cardinality=Cardinality.single,
                   required=True,
                   help="Operator to evaluate",
                   valid_values=[o.value for o in Operator]
                   )
    _fn = Argument("fn",
                   cardinality=Cardinality.single,
                   required=True,
                   help="Path to the function f"
                   )
    _point = Argument("point",
                      aliases=["x"],
                      cardinality=Cardinality.single,
                      required=True,
                      help="Point as comma separated rational coordinates, "
                           "e.g. 1/4 or 1/2,3"
                      )
    _alpha = Argument("alpha",
                      cardinality=Cardinality.single,
                      default="0",
                      help="Order α of the fractional operator, 0 ≤ α < n"
                      )
    _symbol = Argument("symbol",
                       aliases=["b"],
                       cardinality=Cardinality.single,
                       required=False,
                       help="Path to the symbol b of a commutator"
                       )
    _ball = Argument("ball",
                     cardinality=Cardinality.single,
                     required=False,
                     help="Address p^n:level:digits of the ball B* of "
                          "M_restricted"
                     )
    _eps = Argument("eps",
                    cardinality=Cardinality.single,
                    required=False,
                    help="Exponent ε > 0 of M_eps"
                    )
    _format = _format_argument("text")
    _precision = _precision_argument()

    def __init__(self, doc=None):
        self.op = None
        '''Operator to evaluate'''
        self.fn = None
        '''Path to the function f'''
        self.point = None
        '''Point in canonical text form'''
        self.alpha = None
        '''Order α'''
        self.symbol = None
        '''Path to the symbol b'''
        self.ball = None
        '''Address of the ball B*'''
        self.eps = None
        '''Exponent ε'''
        self.format = None
        '''Output format'''
        self.precision = None
        '''Bits of relative width'''
        super().__init__(EvalContext, doc, include_default=False)
        self.instantiate()

    def validate(self, attr, value):
        value = super().validate(attr, value)
        if attr == "op":
            return Operator(value)
        if attr in ("alpha", "eps"):
            return _rational(value)
        if attr == "format":
            return OutputFormat(value)
        return value


class NormContext(Context):
    """Computes a norm of a function read from a YAML document"""

    _kind = Argument("kind",
                     aliases=["k"],
                     cardinality=Cardinality.single,
                     required=True,
                     help="Norm to compute",
                     valid_values=[k.value for k in NormKind]
                     )
    _fn = Argument("fn",
                   cardinality=Cardinality.single,
                   required=True,
                   help="Path to the function"
                   )
    _q = Argument("q",
                  cardinality=Cardinality.single,
                  required=False,
                  help="Exponent q of lq, weak, morrey and bmoq norms"
                  )
    _lam = Argument("lam",
                    aliases=["lambda"],
                    cardinality=Cardinality.single,
                    required=False,
                    help="Morrey parameter λ, 0 ≤ λ < n"
                    )
    _mu = Argument("mu",
                   cardinality=Cardinality.single,
                   required=False,
                   help="Morrey parameter μ of a target space L^{q,μ}, "
                        "used instead of λ"
                   )
    _qfun = Argument("qfun",
                     cardinality=Cardinality.single,
                     required=False,
                     help="Path to the exponent function q(·) of luxvar, "
                          "stored as a function document"
                     )
    _ball = Argument("ball",
                     cardinality=Cardinality.single,
                     required=False,
                     help="Address of the ball of weak and orlicz norms"
                     )
    _young = Argument("young",
                      cardinality=Cardinality.single,
                      default=YoungKind.LLOGL.value,
                      help="Young function of the orlicz norm",
                      valid_values=[y.value for y in YoungKind]
                      )
    _format = _format_argument("text")
    _precision = _precision_argument()

    def __init__(self, doc=None):
        self.kind = None
        '''Norm to compute'''
        self.fn = None
        '''Path to the function'''
        self.q = None
        '''Exponent q'''
        self.lam = None
        '''Morrey parameter λ'''
        self.mu = None
        '''Morrey parameter μ'''
        self.qfun = None
        '''Path to the exponent function'''
        self.ball = None
        '''Address of the ball'''
        self.young = None
        '''Young function'''
        self.format = None
        '''Output format'''
        self.precision = None
        '''Bits of relative width'''
        super().__init__(NormContext, doc, include_default=False)
        self.instantiate()

    def validate(self, attr, value):
        value = super().validate(attr, value)
        if attr == "kind":
            return NormKind(value)
        if attr in ("q", "lam", "mu"):
            return _rational(value)
        if attr == "young":
            return YoungKind(value)
        if attr == "format":
            return OutputFormat(value)
        return value


class GenContext(Context):
    """Writes a seeded family of locally constant functions"""

    _count = Argument("count",
                      aliases=["c"],
                      type=int,
                      cardinality=Cardinality.single,
                      default=10,
                      help="Number of functions"
                      )
    _seed = Argument("seed",
                     aliases=["s"],
                     type=int,
                     cardinality=Cardinality.single,
                     default=0,
                     help="Seed of the generator"
                     )
    _p = Argument("p",
                  type=int,
                  cardinality=Cardinality.single,
                  default=2,
                  help="Prime p"
                  )
    _n = Argument("n",
                  type=int,
                  cardinality=Cardinality.single,
                  default=1,
                  help="Dimension n"
                  )
    _top = Argument("top",
                    type=int,
                    cardinality=Cardinality.single,
                    default=1,
                    help="Largest structure level Γ"
                    )
    _resolution = Argument("resolution",
                           type=int,
                           cardinality=Cardinality.single,
                           default=-1,
                           help="Smallest resolution γ_res"
                           )
    _max_numerator = Argument("max_numerator",
                              type=int,
                              cardinality=Cardinality.single,
                              default=4,
                              help="Largest numerator of generated values"
                              )
    _max_denominator = Argument("max_denominator",
                                type=int,
                                cardinality=Cardinality.single,
                                default=3,
                                help="Largest denominator of generated "
                                     "values"
                                )
    _constraints = Argument("constraints",
                            cardinality=Cardinality.multiple,
                            default=[],
                            help="Constraints every function satisfies",
                            valid_values=[c.value for c in Constraint]
                            )
    _destination = Argument("destination",
                            aliases=["dest", "d"],
                            cardinality=Cardinality.single,
                            default=".",
                            help="Directory for the function documents"
                            )
    _precision = _precision_argument()

    def __init__(self, doc=None):
        self.count = None
        '''Number of functions'''
        self.seed = None
        '''Seed of the generator'''
        self.p = None
        '''Prime p'''
        self.n = None
        '''Dimension n'''
        self.top = None
        '''Largest structure level'''
        self.resolution = None
        '''Smallest resolution'''
        self.max_numerator = None
        '''Largest numerator'''
        self.max_denominator = None
        '''Largest denominator'''
        self.constraints = None
        '''Constraints'''
        self.destination = None
        '''Destination directory'''
        self.precision = None
        '''Bits of relative width'''
        super().__init__(GenContext, doc, include_default=False)
        self.instantiate()

    def validate(self, attr, value):
        value = super().validate(attr, value)
        if attr == "constraints":
            return [Constraint(c) for c in value or []]
        if attr == "count" and value is not None and value < 0:
            raise ConfigurationError("Count must not be negative")
        return value


class VerifyContext(Context):
    """Runs a verification suite and writes its report"""

    _config = Argument("config",
                       cardinality=Cardinality.single,
                       required=False,
                       help="Path to a YAML or JSON suite configuration "
                            "or a bundled suite: default, acceptance; "
                            "the default suite when omitted"
                       )
    _out = Argument("out",
                    aliases=["o"],
                    cardinality=Cardinality.single,
                    required=False,
                    help="Path of the report, standard output when omitted"
                    )
    _self_test = Argument("self_test",
                          type=bool,
                          help="Run the planted violation that must fail"
                          )
    _timing = Argument("timing",
                       type=bool,
                       help="Record running times of the checks"
                       )
    _format = _format_argument("json")
    _precision = _precision_argument()

    def __init__(self, doc=None):
        self.config = None
        '''Path to the suite configuration'''
        self.out = None
        '''Path of the report'''
        self.self_test = None
        '''Self-test mode'''
        self.timing = None
        '''Record running times'''
        self.format = None
        '''Report format'''
        self.precision = None
        '''Bits of relative width'''
        super().__init__(VerifyContext, doc, include_default=False)
        self.instantiate()

    def validate(self, attr, value):
        value = super().validate(attr, value)
        if attr == "format":
            return OutputFormat(value)
        return value


class ReportContext(Context):
    """Renders a saved JSON report in another format"""

    _input = Argument("input",
                      aliases=["in", "i"],
                      cardinality=Cardinality.single,
                      required=True,
                      help="Path of a report saved in JSON format"
                      )
    _out = Argument("out",
                    aliases=["o"],
                    cardinality=Cardinality.single,
                    required=False,
                    help="Path of the rendered report, standard output "
                         "when omitted"
                    )
    _format = _format_argument("text")
    _precision = _precision_argument()

    def __init__(self, doc=None):
        self.input = None
        '''Path of the saved report'''
        self.out = None
        '''Path of the rendered report'''
        self.format = None
        '''Output format'''
        self.precision = None
        '''Bits of relative width'''
        super().__init__(ReportContext, doc, include_default=False)
        self.instantiate()

    def validate(self, attr, value):
        value = super().validate(attr, value)
        if attr == "format":
            return OutputFormat(value)
        return value
