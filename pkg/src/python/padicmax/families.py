"""
Seeded generation of locally constant test functions: symbols b,
compactly supported densities f, balls, points and exponent functions.

All randomness of a run flows through one :class:`random.Random`
instance, so that a family is determined by its ranges and seed.
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

import logging
import os
import random
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterable, List, Set, Tuple

from padicmax import as_rational
from padicmax.errors import ConfigurationError, ParameterError
from padicmax.lcfun import LCFunction, cell_grid, dump_function, char_fn, \
    constant
from padicmax.norms import ExponentFunction
from padicmax.report import atomic_write
from padicmax.ultrametric import FieldParams, BallAddress, PAdicPoint

log = logging.getLogger(__name__)


class Constraint(Enum):
    """Constraints a generated function must satisfy"""

    NONNEGATIVE = "nonnegative"
    '''values and tail are nonnegative'''
    SIGNED = "signed"
    '''values of both signs are allowed'''
    COMPACT = "compact"
    '''the tail value c_∞ is 0'''
    SYMBOL = "symbol"
    '''the function takes at least two distinct values'''

    @classmethod
    def values(cls):
        return {c.value for c in cls}


def check_constraints(constraints: Iterable[Constraint]) -> Set[Constraint]:
    constraints = set(constraints)
    if {Constraint.NONNEGATIVE, Constraint.SIGNED} <= constraints:
        raise ConfigurationError(
            "Constraints 'nonnegative' and 'signed' exclude each other"
        )
    return constraints


@dataclass(frozen=True)
class FamilySpec:
    """Ranges of generated functions"""

    params: FieldParams
    top: int
    '''Largest structure level Γ'''
    resolution: int
    '''Smallest resolution γ_res'''
    max_numerator: int = 4
    max_denominator: int = 3
    max_cells: int = 64
    '''Largest number of cells of a generated grid'''

    def validate(self):
        if self.resolution > self.top:
            raise ParameterError(
                "Resolution {:d} above structure level {:d}"
                .format(self.resolution, self.top)
            )
        if self.max_numerator < 0:
            raise ConfigurationError("max_numerator must not be negative")
        if self.max_denominator < 1:
            raise ConfigurationError("max_denominator must be positive")
        if self.max_cells < 1:
            raise ConfigurationError("max_cells must be positive")
        return self

    @property
    def arity(self) -> int:
        return self.params.p ** self.params.n


class FamilyGenerator:
    """
    Draws functions, balls, points and exponents from one seeded
    generator
    """

    def __init__(self, spec: FamilySpec, seed: int):
        self.spec = spec.validate()
        self.seed = seed
        self.rng = random.Random(seed)

    def rational(self, signed: bool = True) -> Fraction:
        spec = self.spec
        numerator = self.rng.randint(0, spec.max_numerator)
        denominator = self.rng.randint(1, spec.max_denominator)
        if signed and self.rng.random() < 0.5:
            numerator = -numerator
        return Fraction(numerator, denominator)

    def levels(self) -> Tuple[int, int]:
        """(Γ, γ_res) within the configured range and the cell cap"""

        spec = self.spec
        top = self.rng.randint(spec.resolution, spec.top)
        lowest = top
        while lowest > spec.resolution \
                and spec.arity ** (top - lowest + 1) <= spec.max_cells:
            lowest -= 1
        return top, self.rng.randint(lowest, top)

    def function(self, constraints: Iterable[Constraint],
                 top: int = None, resolution: int = None) -> LCFunction:
        """
        A function satisfying the constraints on the grid (Γ, γ_res), or
        on a drawn grid when the levels are not given
        """

        constraints = check_constraints(constraints)
        if top is None or resolution is None:
            top, resolution = self.levels()
        if resolution > top:
            raise ParameterError(
                "Resolution {:d} above structure level {:d}"
                .format(resolution, top)
            )
        signed = Constraint.NONNEGATIVE not in constraints
        if Constraint.SYMBOL in constraints and self.spec.max_numerator < 1:
            raise ConfigurationError(
                "Symbols need nonzero values, max_numerator is 0"
            )
        grid = cell_grid(self.spec.params, top, resolution)
        values = []
        for _ in grid:
            if self.rng.random() < 1 / 3:
                values.append(Fraction(0))
            else:
                values.append(self.rational(signed))
        if Constraint.COMPACT in constraints:
            tail = Fraction(0)
        else:
            tail = self.rational(signed)
        if Constraint.SYMBOL in constraints \
                and all(v == tail for v in values):
            i = self.rng.randrange(len(values))
            values[i] = tail + 1
        f = LCFunction(self.spec.params, top, resolution, tuple(values), tail)
        if not satisfies(f, constraints):
            raise ParameterError("Drawn function violates {}".format(
                sorted(c.value for c in constraints)
            ))
        return f

    def point(self, top: int, resolution: int) -> PAdicPoint:
        """Center of a random level γ_res cell of B_Γ(0)"""

        p = self.spec.params.p
        coordinates = []
        for _ in range(self.spec.params.n):
            value = Fraction(0)
            for j in range(-top, -resolution):
                value += self.rng.randrange(p) * self.spec.params.power(j)
            coordinates.append(value)
        return PAdicPoint(self.spec.params, tuple(coordinates))

    def ball(self, margin: int = 1) -> BallAddress:
        """A ball at levels γ_res - margin .. Γ + margin inside B_{Γ+margin}(0)"""

        spec = self.spec
        top = spec.top + margin
        level = self.rng.randint(spec.resolution - margin, top)
        x = self.point(top, level)
        return BallAddress.around(x, level)

    def exponent(self, low, high, steps: int = 4) -> ExponentFunction:
        """An exponent function with values in [low, high] on a drawn grid"""

        low, high = as_rational(low), as_rational(high)
        if not 1 < low <= high:
            raise ConfigurationError(
                "Exponent range must satisfy 1 < low ≤ high, got [{}, {}]"
                .format(low, high)
            )
        top, resolution = self.levels()

        def draw():
            return low + (high - low) * Fraction(self.rng.randint(0, steps),
                                                 steps)

        grid = cell_grid(self.spec.params, top, resolution)
        shape = LCFunction(self.spec.params, top, resolution,
                           tuple(draw() for _ in grid), draw())
        return ExponentFunction(shape)


def generate(spec: FamilySpec, constraints: Iterable[Constraint], count: int,
             seed: int, top: int = None, resolution: int = None) \
        -> List[LCFunction]:
    """
    A reproducible family of functions

    :param spec: ranges
    :param constraints: constraints every member satisfies
    :param count: number of members
    :param seed: seed of the generator
    :param top: structure level of all members, drawn when omitted
    :param resolution: resolution of all members, drawn when omitted
    """

    if count < 0:
        raise ConfigurationError("Count must not be negative")
    generator = FamilyGenerator(spec, seed)
    constraints = check_constraints(constraints)
    return [generator.function(constraints, top, resolution)
            for _ in range(count)]


def satisfies(f: LCFunction, constraints: Iterable[Constraint]) -> bool:
    values = list(f.values) + [f.tail]
    for c in constraints:
        if c == Constraint.NONNEGATIVE and min(values) < 0:
            return False
        if c == Constraint.COMPACT and f.tail != 0:
            return False
        if c == Constraint.SYMBOL and len(set(values)) < 2:
            return False
    return True


def write_family(functions: List[LCFunction], destination: str,
                 prefix: str = "fn") -> List[str]:
    """Writes every member to ``<destination>/<prefix>_<index>.yaml``"""

    os.makedirs(destination, exist_ok=True)
    paths = []
    width = max(3, len(str(len(functions))))
    for i, f in enumerate(functions):
        path = os.path.join(destination, "{}_{}.yaml".format(
            prefix, str(i).zfill(width)
        ))
        atomic_write(path, dump_function(f))
        paths.append(path)
    log.info("Written {:d} functions to {}".format(len(paths), destination))
    return paths


FIXTURES = {"symbols": 2, "signed": 1, "densities": 1}
LABELS = {"symbols": "b", "signed": "s", "densities": "f"}
BALL_COUNT = 100
EXPONENT_COUNT = 2
EXPONENT_RANGE = (Fraction(3, 2), Fraction(3))


@dataclass(frozen=True)
class Family:
    """
    Inputs shared by the checks of a suite. Fixtures with known values
    come first: χ_{B_0(0)} and the constant 1 among the nonnegative
    symbols, χ_{B_0(0)} - 1 among the signed ones and χ_{B_0(0)} among
    the densities
    """

    params: FieldParams
    symbols: Tuple[LCFunction, ...]
    '''Nonnegative symbols b'''
    signed: Tuple[LCFunction, ...]
    '''Symbols b of both signs'''
    densities: Tuple[LCFunction, ...]
    '''Compactly supported functions f'''
    balls: Tuple[BallAddress, ...]
    exponents: Tuple[ExponentFunction, ...] = ()
    '''Exponent functions with values in EXPONENT_RANGE on drawn grids'''

    @property
    def empty(self) -> bool:
        return not (self.symbols or self.signed or self.densities)

    def sample(self, kind: str, count: int) -> List[Tuple[str, LCFunction]]:
        """The fixtures and the first generated members, with labels"""

        members = getattr(self, kind)[:FIXTURES[kind] + count]
        return [("{}{:d}".format(LABELS[kind], i), f)
                for i, f in enumerate(members)]


def build_family(spec: FamilySpec, size: int, seed: int) -> Family:
    """Draws ``size`` members of every kind and the balls from one seed"""

    params = spec.params
    if size == 0:
        return Family(params, (), (), (), ())
    generator = FamilyGenerator(spec, seed)
    unit = char_fn(BallAddress.centered(params, 0))
    one = constant(params, 1)
    symbols = [unit, one] + [
        generator.function({Constraint.NONNEGATIVE, Constraint.SYMBOL})
        for _ in range(size)
    ]
    signed = [unit - one] + [
        generator.function({Constraint.SIGNED, Constraint.SYMBOL})
        for _ in range(size)
    ]
    densities = [unit] + [
        generator.function({Constraint.COMPACT}) for _ in range(size)
    ]
    balls = [generator.ball() for _ in range(BALL_COUNT)]
    exponents = [generator.exponent(*EXPONENT_RANGE)
                 for _ in range(EXPONENT_COUNT)]
    log.info("Family of {:d} symbols, {:d} signed symbols and {:d} "
             "densities drawn with seed {:d}"
             .format(len(symbols), len(signed), len(densities), seed))
    return Family(params, tuple(symbols), tuple(signed), tuple(densities),
                  tuple(balls), tuple(exponents))
