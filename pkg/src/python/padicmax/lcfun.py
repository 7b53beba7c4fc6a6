"""
Locally constant functions on Q_p^n with a constant tail.

An :class:`LCFunction` is given by a structure ball B_Γ(0), a resolution
γ_res ≤ Γ, one rational value per level γ_res cell of B_Γ(0) and a tail
value c_∞ taken everywhere outside of B_Γ(0). Haar integrals of such
functions over balls are exact rationals.
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

from collections import defaultdict
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache, cached_property
from typing import Tuple, Dict, Mapping, Optional, Callable

import yaml

from padicmax import as_rational, format_rational
from padicmax.errors import ParameterError, DivergenceError, ParseError
from padicmax.ultrametric import FieldParams, BallAddress, PAdicPoint, \
    BallRelation, ball_relation, ball_measure, descendants, truncate, \
    min_enclosing_level, format_ball, parse_ball, ball_of_point


class CombineOp(Enum):
    """Cellwise operations on locally constant functions"""

    ADD = "add"
    '''f + g'''
    SUB = "sub"
    '''f - g'''
    MUL = "mul"
    '''f * g'''
    MAX = "max"
    '''max(f, g)'''
    MIN = "min"
    '''min(f, g)'''
    ABS = "abs"
    '''|f|, the second argument is ignored'''
    NEG_PART = "neg_part"
    '''f⁻ = -min(f, 0), the second argument is ignored'''
    POS_PART = "pos_part"
    '''f⁺ = max(f, 0), the second argument is ignored'''

    @classmethod
    def values(cls):
        return {op.value for op in cls}

    @property
    def unary(self) -> bool:
        return self in (CombineOp.ABS, CombineOp.NEG_PART, CombineOp.POS_PART)


_OPERATIONS: Dict[CombineOp, Callable[[Fraction, Fraction], Fraction]] = {
    CombineOp.ADD: lambda a, b: a + b,
    CombineOp.SUB: lambda a, b: a - b,
    CombineOp.MUL: lambda a, b: a * b,
    CombineOp.MAX: max,
    CombineOp.MIN: min,
    CombineOp.ABS: lambda a, b: abs(a),
    CombineOp.NEG_PART: lambda a, b: -min(a, Fraction(0)),
    CombineOp.POS_PART: lambda a, b: max(a, Fraction(0)),
}


@lru_cache(maxsize=512)
def cell_grid(params: FieldParams, top: int, resolution: int) \
        -> Tuple[BallAddress, ...]:
    """
    Ordered level-γ_res cells of B_Γ(0). Cells of every ball of the tree
    form a contiguous block of the grid.
    """

    if resolution > top:
        raise ParameterError(
            "Resolution {:d} above structure level {:d}".format(resolution, top)
        )
    return tuple(descendants(BallAddress.centered(params, top), resolution))


@lru_cache(maxsize=512)
def _grid_index(params: FieldParams, top: int, resolution: int) \
        -> Dict[BallAddress, int]:
    return {c: i for i, c in enumerate(cell_grid(params, top, resolution))}


@dataclass(frozen=True)
class LCFunction:
    """
    Locally constant function: ``values[i]`` on the i-th cell of
    :func:`cell_grid` and ``tail`` outside of the structure ball
    """

    params: FieldParams
    top: int
    '''Level Γ of the structure ball B_Γ(0)'''
    resolution: int
    '''Level γ_res of the cells'''
    values: Tuple[Fraction, ...]
    '''Cell values in grid order'''
    tail: Fraction = Fraction(0)
    '''Value c_∞ outside of the structure ball'''

    def __post_init__(self):
        if self.resolution > self.top:
            raise ParameterError(
                "Resolution {:d} above structure level {:d}"
                .format(self.resolution, self.top)
            )
        expected = self.params.p ** (self.params.n * (self.top - self.resolution))
        if len(self.values) != expected:
            raise ParameterError(
                "Expected {:d} cell values, got {:d}"
                .format(expected, len(self.values))
            )

    @classmethod
    def from_cells(cls, params: FieldParams, top: int, resolution: int,
                   cells: Mapping[BallAddress, object], tail=0) \
            -> "LCFunction":
        """
        Builds a function from a complete mapping cell -> value
        """

        grid = cell_grid(params, top, resolution)
        if set(cells) != set(grid):
            raise ParameterError("Cells do not form the level {:d} partition "
                                 "of B_{:d}(0)".format(resolution, top))
        return cls(params, top, resolution,
                   tuple(as_rational(cells[c]) for c in grid),
                   as_rational(tail))

    @classmethod
    def from_values(cls, params: FieldParams, top: int, resolution: int,
                    values, tail=0) -> "LCFunction":
        return cls(params, top, resolution,
                   tuple(as_rational(v) for v in values), as_rational(tail))

    @property
    def grid(self) -> Tuple[BallAddress, ...]:
        return cell_grid(self.params, self.top, self.resolution)

    @property
    def cells(self) -> Dict[BallAddress, Fraction]:
        return dict(zip(self.grid, self.values))

    @property
    def structure_ball(self) -> BallAddress:
        return BallAddress.centered(self.params, self.top)

    @property
    def cell_measure(self) -> Fraction:
        return self.params.power(self.params.n * self.resolution)

    @property
    def is_compact(self) -> bool:
        return self.tail == 0

    def cell_of(self, x: PAdicPoint) -> Optional[BallAddress]:
        """The grid cell containing x or None outside of the structure ball"""

        cell = ball_of_point(x, self.resolution)
        if cell in _grid_index(self.params, self.top, self.resolution):
            return cell
        return None

    def value_at(self, x: PAdicPoint) -> Fraction:
        cell = self.cell_of(x)
        if cell is None:
            return self.tail
        return self.cell_value(cell)

    def cell_value(self, cell: BallAddress) -> Fraction:
        return self.values[_grid_index(self.params, self.top,
                                       self.resolution)[cell]]

    def value_on(self, ball: BallAddress) -> Optional[Fraction]:
        """The value on a ball where the function is constant, else None"""

        relation = ball_relation(ball, self.structure_ball)
        if relation == BallRelation.DISJOINT:
            return self.tail
        if relation == BallRelation.SECOND_INSIDE_FIRST:
            return None
        if ball.level <= self.resolution:
            return self.cell_value(_ancestor(ball, self.resolution))
        distinct = set(self.distribution(ball))
        if len(distinct) == 1:
            return distinct.pop()
        return None

    @cached_property
    def _ball_sums(self) -> Dict[BallAddress, Fraction]:
        """Integrals over all balls of levels γ_res..Γ inside B_Γ(0)"""

        k = self.params.p ** self.params.n
        level_values = [v * self.cell_measure for v in self.values]
        sums = {}
        for level in range(self.resolution, self.top + 1):
            sums.update(zip(cell_grid(self.params, self.top, level),
                            level_values))
            level_values = [sum(level_values[i:i + k])
                            for i in range(0, len(level_values), k)]
        return sums

    def map(self, fn: Callable[[Fraction], Fraction]) -> "LCFunction":
        return LCFunction(self.params, self.top, self.resolution,
                          tuple(fn(v) for v in self.values), fn(self.tail))

    def distribution(self, ball: BallAddress) -> Dict[Fraction, Fraction]:
        return value_distribution(self, ball)

    def __add__(self, other: "LCFunction") -> "LCFunction":
        return pointwise_combine(self, other, CombineOp.ADD)

    def __sub__(self, other: "LCFunction") -> "LCFunction":
        return pointwise_combine(self, other, CombineOp.SUB)

    def __mul__(self, other) -> "LCFunction":
        if isinstance(other, LCFunction):
            return pointwise_combine(self, other, CombineOp.MUL)
        return scale(self, other)

    __rmul__ = __mul__

    def __neg__(self) -> "LCFunction":
        return scale(self, -1)

    def __abs__(self) -> "LCFunction":
        return self.map(abs)


def _ancestor(ball: BallAddress, level: int) -> BallAddress:
    p = ball.params.p
    return BallAddress(ball.params, level,
                       tuple(truncate(c, p, -level) for c in ball.center))


def constant(params: FieldParams, value, level: int = 0) -> LCFunction:
    """The constant function"""
    value = as_rational(value)
    return LCFunction(params, level, level, (value,), value)


def scale(f: LCFunction, factor) -> LCFunction:
    factor = as_rational(factor)
    return f.map(lambda v: v * factor)


def char_fn(ball: BallAddress) -> LCFunction:
    """Characteristic function χ_B, structured on the smallest B_Γ(0) ⊇ B"""

    params = ball.params
    top = min_enclosing_level(PAdicPoint.origin(params), ball)
    grid = cell_grid(params, top, ball.level)
    return LCFunction(params, top, ball.level, tuple(
        Fraction(1) if c == ball else Fraction(0) for c in grid
    ))


def refine(f: LCFunction, resolution: int, top: int) -> LCFunction:
    """
    The same function on a finer grid and a larger structure ball: new
    cells inherit the values of the cells they lie in, cells added between
    B_Γ and B_Γ' take the tail value
    """

    if resolution > f.resolution or top < f.top:
        raise ParameterError(
            "Cannot refine from (γ_res={:d}, Γ={:d}) to (γ_res={:d}, Γ={:d})"
            .format(f.resolution, f.top, resolution, top)
        )
    if resolution == f.resolution and top == f.top:
        return f
    p = f.params.p
    index = _grid_index(f.params, f.top, f.resolution)
    values = []
    for cell in cell_grid(f.params, top, resolution):
        if all(truncate(c, p, -f.top) == 0 for c in cell.center):
            values.append(f.values[index[_ancestor(cell, f.resolution)]])
        else:
            values.append(f.tail)
    return LCFunction(f.params, top, resolution, tuple(values), f.tail)


def align(f: LCFunction, g: LCFunction) -> Tuple[LCFunction, LCFunction]:
    """Refines both functions to their common grid"""

    if f.params != g.params:
        raise ParameterError("Mismatched fields: {} and {}"
                             .format(f.params, g.params))
    resolution = min(f.resolution, g.resolution)
    top = max(f.top, g.top)
    return refine(f, resolution, top), refine(g, resolution, top)


def pointwise_combine(f: LCFunction, g: Optional[LCFunction],
                      op: CombineOp) -> LCFunction:
    """
    Exact cellwise combination on the common grid; tails combine by the
    same operation
    """

    fn = _OPERATIONS[op]
    if op.unary or g is None:
        if not op.unary:
            raise ParameterError("Operation {} needs two arguments"
                                 .format(op.value))
        return f.map(lambda v: fn(v, v))
    f, g = align(f, g)
    return LCFunction(f.params, f.top, f.resolution,
                      tuple(fn(a, b) for a, b in zip(f.values, g.values)),
                      fn(f.tail, g.tail))


def neg_part(f: LCFunction) -> LCFunction:
    return pointwise_combine(f, None, CombineOp.NEG_PART)


def pos_part(f: LCFunction) -> LCFunction:
    return pointwise_combine(f, None, CombineOp.POS_PART)


def restrict(f: LCFunction, ball: BallAddress) -> LCFunction:
    """f·χ_B"""
    return pointwise_combine(f, char_fn(ball), CombineOp.MUL)


def integrate(f: LCFunction, ball: BallAddress) -> Fraction:
    """Exact Haar integral of f over the ball"""

    structure = f.structure_ball
    relation = ball_relation(ball, structure)
    if relation == BallRelation.DISJOINT:
        return f.tail * ball_measure(ball)
    if relation == BallRelation.SECOND_INSIDE_FIRST:
        return f._ball_sums[structure] \
               + f.tail * (ball_measure(ball) - ball_measure(structure))
    if ball.level >= f.resolution:
        return f._ball_sums[ball]
    return f.cell_value(_ancestor(ball, f.resolution)) * ball_measure(ball)


def integrate_global(f: LCFunction) -> Fraction:
    """Integral over Q_p^n, finite only for compactly supported f"""

    if f.tail != 0:
        raise DivergenceError(
            "Integral over Q_p^n diverges: tail value is {}".format(f.tail)
        )
    return f._ball_sums[f.structure_ball]


def ball_mean(f: LCFunction, ball: BallAddress) -> Fraction:
    """Average f_B = (1/|B|)∫_B f"""
    return integrate(f, ball) / ball_measure(ball)


def value_distribution(f: LCFunction, ball: BallAddress) \
        -> Dict[Fraction, Fraction]:
    """
    Maps every value f takes on the ball to the measure of its level set
    inside the ball
    """

    structure = f.structure_ball
    relation = ball_relation(ball, structure)
    if relation == BallRelation.DISJOINT:
        return {f.tail: ball_measure(ball)}
    result = defaultdict(Fraction)
    if relation == BallRelation.SECOND_INSIDE_FIRST:
        for v in f.values:
            result[v] += f.cell_measure
        result[f.tail] += ball_measure(ball) - ball_measure(structure)
        return dict(result)
    if ball.level < f.resolution:
        return {f.cell_value(_ancestor(ball, f.resolution)): ball_measure(ball)}
    index = _grid_index(f.params, f.top, f.resolution)
    first = index[descendants(ball, f.resolution)[0]]
    count = f.params.p ** (f.params.n * (ball.level - f.resolution))
    for v in f.values[first:first + count]:
        result[v] += f.cell_measure
    return dict(result)


def level_set_measure(f: LCFunction, ball: BallAddress, t) -> Fraction:
    """|{y ∈ B : |f(y)| > t}|"""
    t = as_rational(t)
    return sum((m for v, m in value_distribution(f, ball).items()
                if abs(v) > t), Fraction(0))


def linf_norm(f: LCFunction) -> Fraction:
    """Exact sup |f| over Q_p^n"""
    return max(max(abs(v) for v in f.values), abs(f.tail))


def dump_function(f: LCFunction) -> str:
    """
    YAML document with fields p, n, top, resolution, tail and cells;
    rationals are written as reduced "num/den" strings
    """

    doc = {
        "p": f.params.p,
        "n": f.params.n,
        "top": f.top,
        "resolution": f.resolution,
        "tail": format_rational(f.tail),
        "cells": [[format_ball(c), format_rational(v)]
                  for c, v in zip(f.grid, f.values)]
    }
    return yaml.safe_dump(doc, sort_keys=False, default_flow_style=None,
                          width=1000)


def load_function(text: str) -> LCFunction:
    """Parses a document written by :func:`dump_function`"""

    try:
        doc = yaml.safe_load(text)
    except yaml.YAMLError as x:
        raise ParseError("Malformed function document: {}".format(x))
    if not isinstance(doc, dict):
        raise ParseError("Function document must be a mapping")
    expected = {"p", "n", "top", "resolution", "tail", "cells"}
    if set(doc) != expected:
        raise ParseError("Function document fields {} differ from {}"
                         .format(sorted(doc), sorted(expected)))
    for key in ("p", "n", "top", "resolution"):
        if not isinstance(doc[key], int) or isinstance(doc[key], bool):
            raise ParseError("Field '{}' must be an integer".format(key))
    try:
        params = FieldParams(doc["p"], doc["n"])
    except ParameterError as x:
        raise ParseError(str(x))
    cells = {}
    if not isinstance(doc["cells"], list):
        raise ParseError("Field 'cells' must be a list")
    for i, entry in enumerate(doc["cells"]):
        if not isinstance(entry, (list, tuple)) or len(entry) != 2:
            raise ParseError("Cell #{:d} must be an [address, value] pair"
                             .format(i))
        address, value = entry
        try:
            ball = parse_ball(str(address))
        except ParameterError as x:
            raise ParseError("Cell #{:d}: {}".format(i, x))
        if ball.params != params or ball.level != doc["resolution"]:
            raise ParseError("Cell #{:d} '{}' does not belong to the grid"
                             .format(i, address))
        if ball in cells:
            raise ParseError("Cell #{:d} '{}' is repeated".format(i, address))
        cells[ball] = as_rational(value)
    try:
        return LCFunction.from_cells(params, doc["top"], doc["resolution"],
                                     cells, as_rational(doc["tail"]))
    except ParseError:
        raise
    except ParameterError as x:
        raise ParseError(str(x))
