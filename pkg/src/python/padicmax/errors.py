"""
Exceptions raised by the toolkit. Every exception knows the process exit
status the command line front end reports for it.
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

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_BAD_INPUT = 2
EXIT_DIVERGENCE = 3


class PAdicError(ValueError):
    """Base class for all errors raised by the toolkit"""

    exit_status = EXIT_BAD_INPUT


class ParameterError(PAdicError):
    """
    Inconsistent parameters: mismatched fields, violated level order,
    exponents or orders outside of their admissible ranges
    """


class DomainError(PAdicError):
    """A point lies outside of the set where the operation is defined"""


class DivergenceError(PAdicError):
    """
    The requested quantity is infinite for the given input, e.g. a
    non-summable tail or a nonzero tail value where compact support
    is required
    """

    exit_status = EXIT_DIVERGENCE


class ParseError(PAdicError):
    """Malformed text: addresses, rationals or function documents"""


class ConfigurationError(PAdicError):
    """Malformed or inconsistent verification or generation settings"""
