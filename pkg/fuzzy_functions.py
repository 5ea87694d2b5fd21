"""
Fuzzy Functions Module.

Exact piecewise-linear membership functions on the rationals, their pointwise
lattice operations, and closure of a generator set under min, max and the
Lukasiewicz negation 1 - f.

Functions are constant to the left of their first and to the right of their
last breakpoint, and are kept in canonical form so that equality of two
functions is equality of their breakpoint tuples.
"""
import bisect
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from formulas import And, Const, Iff, Imp, Not, Or, Var, parse
from logic_analysis import LogicStructure, NegationMap
from order_core import BadParams, LatticeError, UnknownElement, lattice_from_poset, poset_from_matrix

logger = logging.getLogger(__name__)

DEFAULT_CLOSURE_BUDGET = 4096

Number = Union[Fraction, int, str]


class InvalidMembership(LatticeError, ValueError):
    pass


class ClosureBudgetExceeded(LatticeError):
    def __init__(self, budget: int):
        super().__init__(f"closure grew beyond {budget} functions")
        self.budget = budget


def _canonical(points: List[Tuple[Fraction, Fraction]]) -> Tuple[Tuple[Fraction, Fraction], ...]:
    # drop flat ends: the constant extension already covers them
    while len(points) > 1 and points[0][1] == points[1][1]:
        points.pop(0)
    while len(points) > 1 and points[-1][1] == points[-2][1]:
        points.pop()
    if len(points) == 1:
        return ((Fraction(0), points[0][1]),)
    kept = [points[0]]
    for k in range(1, len(points) - 1):
        (x0, y0), (x1, y1), (x2, y2) = kept[-1], points[k], points[k + 1]
        if (y1 - y0) * (x2 - x1) != (y2 - y1) * (x1 - x0):
            kept.append(points[k])
    kept.append(points[-1])
    return tuple(kept)


@dataclass(frozen=True)
class PiecewiseLinear:
    points: Tuple[Tuple[Fraction, Fraction], ...]

    def __post_init__(self):
        try:
            points = [(Fraction(x), Fraction(y)) for x, y in self.points]
        except (ValueError, TypeError, ZeroDivisionError) as e:
            raise InvalidMembership(f"breakpoints must be rational pairs: {e}") from e
        if not points:
            raise InvalidMembership("a membership function needs at least one breakpoint")
        for (x0, _), (x1, _) in zip(points, points[1:]):
            if x1 <= x0:
                raise InvalidMembership(f"breakpoints not strictly increasing at x = {x1}")
        for x, y in points:
            if not 0 <= y <= 1:
                raise InvalidMembership(f"membership {y} at x = {x} is outside [0, 1]")
        object.__setattr__(self, "points", _canonical(points))

    @classmethod
    def constant(cls, value: Number) -> "PiecewiseLinear":
        return cls(((0, Fraction(value)),))

    @property
    def xs(self) -> List[Fraction]:
        return [x for x, _ in self.points]

    def is_constant(self) -> bool:
        return len(self.points) == 1

    def __call__(self, x: Number) -> Fraction:
        x = Fraction(x)
        xs = self.xs
        if x <= xs[0]:
            return self.points[0][1]
        if x >= xs[-1]:
            return self.points[-1][1]
        k = bisect.bisect_right(xs, x)
        (x0, y0), (x1, y1) = self.points[k - 1], self.points[k]
        return y0 + (y1 - y0) * (x - x0) / (x1 - x0)

    def to_json(self) -> List[List[str]]:
        return [[str(x), str(y)] for x, y in self.points]

    @classmethod
    def from_json(cls, data: Sequence[Sequence[str]]) -> "PiecewiseLinear":
        return cls(tuple((x, y) for x, y in data))


# =============================================================================
# Pointwise operations
# =============================================================================

def _refinement(f: PiecewiseLinear, g: PiecewiseLinear) -> List[Fraction]:
    """Merged breakpoints plus every point where f - g changes sign."""
    xs = sorted(set(f.xs) | set(g.xs))
    out = [xs[0]]
    for p, q in zip(xs, xs[1:]):
        dp, dq = f(p) - g(p), f(q) - g(q)
        if dp * dq < 0:
            out.append(p + (q - p) * dp / (dp - dq))
        out.append(q)
    return out


def pwl_combine(op: str, f: PiecewiseLinear, g: Optional[PiecewiseLinear] = None) -> PiecewiseLinear:
    """
    Pointwise min, max or 1 - f with crossing points inserted.

    Args:
        op: "min", "max" or "luk_neg"
        f: first operand
        g: second operand for min and max
    """
    if op == "luk_neg":
        return PiecewiseLinear(tuple((x, 1 - y) for x, y in f.points))
    if op not in ("min", "max"):
        raise BadParams(f"unknown pointwise operation {op!r}")
    if g is None:
        raise BadParams(f"{op} needs two operands")
    pick = min if op == "min" else max
    return PiecewiseLinear(tuple((x, pick(f(x), g(x))) for x in _refinement(f, g)))


def pwl_leq(f: PiecewiseLinear, g: PiecewiseLinear) -> bool:
    """f(x) <= g(x) everywhere; checking the merged breakpoints is enough."""
    return all(f(x) <= g(x) for x in sorted(set(f.xs) | set(g.xs)))


def temperature_generators() -> Tuple[PiecewiseLinear, PiecewiseLinear, PiecewiseLinear]:
    """cold, warm and hot over degrees Celsius, breakpoints at 5, 15, 25 and 35."""
    a = PiecewiseLinear(((5, 1), (15, 0)))
    b = PiecewiseLinear(((5, 0), (15, 1), (25, 1), (35, 0)))
    c = PiecewiseLinear(((25, 0), (35, 1)))
    return a, b, c


# expression names of the 18 nodes, top to bottom
TEMPERATURE_FIGURE_LABELS = (
    "1", "c|~c", "a|~a", "~c", "b|~b", "~a", "a|b", "~b", "b|c",
    "~b&~c", "b", "~a&~b", "a", "b&~b", "c", "a&~a", "c&~c", "0",
)


# =============================================================================
# Closure
# =============================================================================

@dataclass(frozen=True, eq=False)
class FunctionLogic:
    elements: Tuple[PiecewiseLinear, ...]
    labels: Tuple[str, ...]
    structure: LogicStructure

    def element(self, label: str) -> PiecewiseLinear:
        return self.elements[self.structure.lattice.index(label)]

    def label_of(self, f: PiecewiseLinear) -> str:
        try:
            return self.labels[self.elements.index(f)]
        except ValueError:
            raise UnknownElement(f.to_json()) from None


def _operand(label: str) -> str:
    return f"({label})" if "&" in label or "|" in label else label


def closure_lattice(generators: Sequence[PiecewiseLinear], names: Optional[Sequence[str]] = None,
                    budget: int = DEFAULT_CLOSURE_BUDGET) -> FunctionLogic:
    """
    Least set containing the generators, 0 and 1, closed under min, max and 1 - f.

    Elements are numbered in insertion order: generators, the constants, then
    breadth-first results; each new element is labelled by the expression that
    first produced it.
    """
    if not generators:
        raise BadParams("closure needs at least one generator")
    names = list(names) if names is not None else [chr(ord("a") + k) for k in range(len(generators))]
    if len(names) != len(generators):
        raise BadParams("one name per generator")

    elements: List[PiecewiseLinear] = []
    labels: List[str] = []
    seen: Dict[PiecewiseLinear, int] = {}

    def add(f: PiecewiseLinear, label: str):
        if f in seen:
            return
        if len(elements) >= budget:
            raise ClosureBudgetExceeded(budget)
        seen[f] = len(elements)
        elements.append(f)
        labels.append(label)

    for f, name in zip(generators, names):
        add(f, name)
    add(PiecewiseLinear.constant(0), "0")
    add(PiecewiseLinear.constant(1), "1")

    i = 0
    while i < len(elements):
        f = elements[i]
        add(pwl_combine("luk_neg", f), "~" + _operand(labels[i]))
        for j in range(i):
            g = elements[j]
            add(pwl_combine("min", g, f), f"{_operand(labels[j])}&{_operand(labels[i])}")
            add(pwl_combine("max", g, f), f"{_operand(labels[j])}|{_operand(labels[i])}")
        i += 1
    logger.debug("closure of %d generators has %d elements", len(generators), len(elements))

    leq = np.array([[pwl_leq(f, g) for g in elements] for f in elements], dtype=bool)
    lattice = lattice_from_poset(poset_from_matrix(labels, leq))
    negation = NegationMap([seen[pwl_combine("luk_neg", f)] for f in elements])
    return FunctionLogic(tuple(elements), tuple(labels), LogicStructure(lattice, negation, "closure"))


def temperature_logic(budget: int = DEFAULT_CLOSURE_BUDGET) -> FunctionLogic:
    return closure_lattice(temperature_generators(), ["a", "b", "c"], budget)


# =============================================================================
# Expressions
# =============================================================================

def evaluate_expression(text: str, env: Dict[str, PiecewiseLinear]) -> PiecewiseLinear:
    """Evaluate a formula pointwise: & is min, | is max, ~ is 1 - f, x -> y is ~x | y."""

    def walk(node) -> PiecewiseLinear:
        if isinstance(node, Var):
            if node.name not in env:
                raise UnknownElement(node.name)
            return env[node.name]
        if isinstance(node, Const):
            return PiecewiseLinear.constant(node.value)
        if isinstance(node, Not):
            return pwl_combine("luk_neg", walk(node.arg))
        if isinstance(node, And):
            return pwl_combine("min", walk(node.left), walk(node.right))
        if isinstance(node, Or):
            return pwl_combine("max", walk(node.left), walk(node.right))
        if isinstance(node, Imp):
            return pwl_combine("max", pwl_combine("luk_neg", walk(node.left)), walk(node.right))
        if isinstance(node, Iff):
            there = walk(Imp(node.left, node.right))
            back = walk(Imp(node.right, node.left))
            return pwl_combine("min", there, back)
        raise BadParams(f"cannot evaluate {node!r}")

    return walk(parse(text))


def match_labels(logic: FunctionLogic, expressions: Sequence[str],
                 env: Optional[Dict[str, PiecewiseLinear]] = None) -> Dict[str, str]:
    """Map each expression to the closure label of the function it denotes."""
    if env is None:
        env = {label: f for label, f in zip(logic.labels, logic.elements) if label.isidentifier()}
    return {text: logic.label_of(evaluate_expression(text, env)) for text in expressions}


if __name__ == "__main__":
    logic = temperature_logic()
    print(f"[FuzzyFunctions] temperature closure: {len(logic.elements)} elements")
    print(f"[FuzzyFunctions] labels: {list(logic.labels)}")
    a, b, c = temperature_generators()
    print(f"[FuzzyFunctions] a(10) = {a(10)}")
