"""
Formulas Module.

Propositional formulas over ~ & | -> <-> with constants 0 and 1:
- parse / format_formula: text grammar with minimal parentheses
- evaluate / holds_identity: evaluation over any lattice with negation
- boolean_tautology: classical 0-1 truth tables
- normal_form: join-of-meets and meet-of-joins forms of negation-free formulas
"""
import logging
import re
from dataclasses import dataclass
from enum import Enum
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple, Union

import numpy as np

from logic_analysis import LogicStructure, negation_axiom_report
from order_core import LatticeError, PropertyReport, Verdict, Witness
from residuation import NotImplicative, residuum_table

logger = logging.getLogger(__name__)


class FormulaSyntaxError(LatticeError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.message = message
        self.position = position


class UnboundVariable(LatticeError):
    def __init__(self, name: str):
        super().__init__(f"variable {name!r} has no value")
        self.name = name


class SemanticsUnavailable(LatticeError):
    pass


class UnsupportedConnective(LatticeError):
    pass


# =============================================================================
# AST
# =============================================================================

@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Const:
    value: int  # 0 or 1


@dataclass(frozen=True)
class Not:
    arg: "Formula"


@dataclass(frozen=True)
class And:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Or:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Imp:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Iff:
    left: "Formula"
    right: "Formula"


Formula = Union[Var, Const, Not, And, Or, Imp, Iff]

_PRECEDENCE = {Iff: 1, Imp: 2, Or: 3, And: 4, Not: 5, Var: 6, Const: 6}
_SYMBOL = {Iff: "<->", Imp: "->", Or: "|", And: "&"}

_TOKEN = re.compile(r"\s*(?:(?P<op><->|->|[~&|()])|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<const>[01]))")


def _tokenize(text: str) -> List[Tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        match = _TOKEN.match(text, pos)
        if match is None or match.end() == pos:
            bad = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise FormulaSyntaxError(f"unexpected character {text[bad]!r}", bad)
        kind = match.lastgroup
        tokens.append((kind, match.group(kind), match.start(kind)))
        pos = match.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.k = 0

    def peek(self) -> Tuple[str, str, int]:
        return self.tokens[self.k]

    def take(self, value: Optional[str] = None) -> Tuple[str, str, int]:
        token = self.tokens[self.k]
        if value is not None and token[1] != value:
            found = token[1] or "end of input"
            raise FormulaSyntaxError(f"expected {value!r}, found {found!r}", token[2])
        self.k += 1
        return token

    def formula(self) -> Formula:
        node = self.implication()
        while self.peek()[1] == "<->":
            self.take()
            node = Iff(node, self.implication())
        return node

    def implication(self) -> Formula:
        node = self.disjunction()
        if self.peek()[1] == "->":
            self.take()
            return Imp(node, self.implication())
        return node

    def disjunction(self) -> Formula:
        node = self.conjunction()
        while self.peek()[1] == "|":
            self.take()
            node = Or(node, self.conjunction())
        return node

    def conjunction(self) -> Formula:
        node = self.unary()
        while self.peek()[1] == "&":
            self.take()
            node = And(node, self.unary())
        return node

    def unary(self) -> Formula:
        if self.peek()[1] == "~":
            self.take()
            return Not(self.unary())
        kind, value, position = self.take()
        if kind == "name":
            return Var(value)
        if kind == "const":
            return Const(int(value))
        if value == "(":
            node = self.formula()
            self.take(")")
            return node
        raise FormulaSyntaxError(f"unexpected {value or 'end of input'!r}", position)


def parse(text: str) -> Formula:
    parser = _Parser(text)
    node = parser.formula()
    kind, value, position = parser.peek()
    if kind != "end":
        raise FormulaSyntaxError(f"unexpected {value!r}", position)
    return node


def _as_formula(f: Union[str, Formula]) -> Formula:
    return parse(f) if isinstance(f, str) else f


def format_formula(f: Formula) -> str:
    """Canonical text with the fewest parentheses that parse back to the same tree."""
    if isinstance(f, Var):
        return f.name
    if isinstance(f, Const):
        return str(f.value)

    def wrap(child: Formula, needs: bool) -> str:
        text = format_formula(child)
        return f"({text})" if needs else text

    p = _PRECEDENCE[type(f)]
    if isinstance(f, Not):
        return "~" + wrap(f.arg, _PRECEDENCE[type(f.arg)] < p)
    lp, rp = _PRECEDENCE[type(f.left)], _PRECEDENCE[type(f.right)]
    if isinstance(f, Imp):
        left, right = wrap(f.left, lp <= p), wrap(f.right, rp < p)
    else:
        left, right = wrap(f.left, lp < p), wrap(f.right, rp <= p)
    return f"{left} {_SYMBOL[type(f)]} {right}"


def variables(f: Formula) -> List[str]:
    found = set()

    def walk(node):
        if isinstance(node, Var):
            found.add(node.name)
        elif isinstance(node, Not):
            walk(node.arg)
        elif not isinstance(node, Const):
            walk(node.left)
            walk(node.right)

    walk(f)
    return sorted(found)


# =============================================================================
# Semantics
# =============================================================================

class ImplicationKind(Enum):
    ORTHO = "ortho"            # x -> y := x' | y
    RESIDUATED = "residuated"  # relative pseudocomplement
    TABLE = "table"            # explicit arrow table


@dataclass(frozen=True, eq=False)
class ImplicationSemantics:
    kind: ImplicationKind
    table: Optional[np.ndarray] = None

    @classmethod
    def ortho(cls) -> "ImplicationSemantics":
        return cls(ImplicationKind.ORTHO)

    @classmethod
    def residuated(cls) -> "ImplicationSemantics":
        return cls(ImplicationKind.RESIDUATED)

    @classmethod
    def from_table(cls, table) -> "ImplicationSemantics":
        return cls(ImplicationKind.TABLE, np.asarray(table, dtype=np.intp))

    def arrow(self, s: LogicStructure) -> np.ndarray:
        l = s.lattice
        if self.kind is ImplicationKind.ORTHO:
            return l.join_table[s.neg.table[:, None], np.arange(l.size)[None, :]]
        if self.kind is ImplicationKind.RESIDUATED:
            try:
                return residuum_table(l).arrow
            except NotImplicative as e:
                raise SemanticsUnavailable(f"residuated arrow needs an implicative lattice: {e}") from e
        if self.table is None or self.table.shape != (l.size, l.size):
            raise SemanticsUnavailable(f"arrow table must be {l.size} x {l.size}")
        return self.table


def default_semantics(s: LogicStructure) -> ImplicationSemantics:
    """Residuated arrow on implicative lattices, x' | y with a fuzzy negation, else an error."""
    try:
        residuum_table(s.lattice)
        return ImplicationSemantics.residuated()
    except NotImplicative:
        pass
    if negation_axiom_report(s).holds("fuzzy-negation"):
        return ImplicationSemantics.ortho()
    raise SemanticsUnavailable(f"{s.name or 'structure'} is neither implicative nor a fuzzy logic")


def _assignments(n: int, k: int) -> np.ndarray:
    """All n^k assignments in mixed-radix order, first variable most significant; shape (k, n^k)."""
    idx = np.arange(n ** k)
    return np.array([(idx // n ** (k - 1 - i)) % n for i in range(k)], dtype=np.intp).reshape(k, n ** k)


def _evaluate_vector(f: Formula, s: LogicStructure, arrow: np.ndarray,
                     env: Dict[str, np.ndarray], size: int) -> np.ndarray:
    l = s.lattice
    M, J, N = l.meet_table, l.join_table, s.neg.table

    def walk(node) -> np.ndarray:
        if isinstance(node, Var):
            if node.name not in env:
                raise UnboundVariable(node.name)
            return env[node.name]
        if isinstance(node, Const):
            return np.full(size, l.top if node.value else l.bottom, dtype=np.intp)
        if isinstance(node, Not):
            return N[walk(node.arg)]
        a, b = walk(node.left), walk(node.right)
        if isinstance(node, And):
            return M[a, b]
        if isinstance(node, Or):
            return J[a, b]
        if isinstance(node, Imp):
            return arrow[a, b]
        return M[arrow[a, b], arrow[b, a]]

    return walk(f)


def evaluate(f: Union[str, Formula], s: LogicStructure, sem: Optional[ImplicationSemantics] = None,
             env: Optional[Dict[str, str]] = None) -> str:
    """Value of f under env (variable -> element label); <-> is (x -> y) & (y -> x)."""
    f = _as_formula(f)
    env = env or {}
    sem = sem or default_semantics(s)
    arrow = sem.arrow(s)
    values = {name: np.array([s.lattice.index(label)], dtype=np.intp) for name, label in env.items()}
    return s.lattice.label(_evaluate_vector(f, s, arrow, values, 1)[0])


def holds_identity(s: LogicStructure, sem: Optional[ImplicationSemantics],
                   lhs: Union[str, Formula], rhs: Union[str, Formula]) -> Tuple[bool, Optional[Witness]]:
    """
    Compare both sides under every assignment of elements to variables.

    Returns:
        (holds, witness) with the first counterexample in mixed-radix order
    """
    lhs, rhs = _as_formula(lhs), _as_formula(rhs)
    sem = sem or default_semantics(s)
    arrow = sem.arrow(s)
    names = sorted(set(variables(lhs)) | set(variables(rhs)))
    n, k = s.size, len(names)
    grid = _assignments(n, k)
    env = {name: grid[i] for i, name in enumerate(names)}
    left = _evaluate_vector(lhs, s, arrow, env, n ** k)
    right = _evaluate_vector(rhs, s, arrow, env, n ** k)
    bad = np.flatnonzero(left != right)
    if bad.size == 0:
        return True, None
    first = int(bad[0])
    l = s.lattice
    witness = Witness(tuple(l.label(grid[i, first]) for i in range(k)),
                      f"{format_formula(lhs)} = {format_formula(rhs)}",
                      l.label(left[first]), l.label(right[first]))
    return False, witness


def identity_verdict(s: LogicStructure, sem: Optional[ImplicationSemantics], name: str,
                     lhs: Union[str, Formula], rhs: Union[str, Formula]) -> Verdict:
    holds, witness = holds_identity(s, sem, lhs, rhs)
    return Verdict(name, holds, witness)


# =============================================================================
# Classical truth tables
# =============================================================================

CLASSICAL_TAUTOLOGIES = (
    "x | ~x",
    "0 -> x",
    "x -> 1",
    "x -> x",
    "x <-> x",
    "x -> (y -> x)",
    "(x <-> y) <-> (y <-> x)",
    "(x <-> 0) | (x <-> 1)",
    "(x -> y) | (y -> x)",
)


def _truth_table(f: Formula, env: Dict[str, np.ndarray], size: int) -> np.ndarray:
    if isinstance(f, Var):
        return env[f.name]
    if isinstance(f, Const):
        return np.full(size, bool(f.value))
    if isinstance(f, Not):
        return ~_truth_table(f.arg, env, size)
    a, b = _truth_table(f.left, env, size), _truth_table(f.right, env, size)
    if isinstance(f, And):
        return a & b
    if isinstance(f, Or):
        return a | b
    if isinstance(f, Imp):
        return ~a | b
    return a == b


def boolean_tautology(f: Union[str, Formula]) -> Tuple[bool, Optional[Dict[str, int]]]:
    """True under every 0-1 assignment; otherwise the first falsifying assignment."""
    f = _as_formula(f)
    names = variables(f)
    k = len(names)
    grid = _assignments(2, k).astype(bool)
    values = _truth_table(f, {name: grid[i] for i, name in enumerate(names)}, 2 ** k)
    bad = np.flatnonzero(~values)
    if bad.size == 0:
        return True, None
    first = int(bad[0])
    return False, {name: int(grid[i, first]) for i, name in enumerate(names)}


def boolean_entails(f: Union[str, Formula], g: Union[str, Formula]) -> bool:
    """f <= g in the two-element Boolean algebra."""
    return boolean_tautology(Imp(_as_formula(f), _as_formula(g)))[0]


def _xor(p: Formula, q: Formula) -> Formula:
    return Or(And(p, Not(q)), And(Not(p), q))


def boolean_ring_report(s: LogicStructure) -> PropertyReport:
    """Ring identities with x + y := (x & ~y) | (~x & y) and x * y := x & y."""
    x, y, z = Var("x"), Var("y"), Var("z")
    sem = ImplicationSemantics.ortho()
    report = PropertyReport()
    report.add(identity_verdict(s, sem, "join-as-ring", Or(x, y), _xor(_xor(x, y), And(x, y))))
    report.add(identity_verdict(s, sem, "negation-as-ring", Not(x), _xor(Const(1), x)))
    report.add(identity_verdict(s, sem, "xor-commutative", _xor(x, y), _xor(y, x)))
    report.add(identity_verdict(s, sem, "xor-associative", _xor(x, _xor(y, z)), _xor(_xor(x, y), z)))
    report.add(identity_verdict(s, sem, "xor-nilpotent", _xor(x, x), Const(0)))
    report.add(identity_verdict(s, sem, "meet-distributes-over-xor",
                                And(x, _xor(y, z)), _xor(And(x, y), And(x, z))))
    return report


# =============================================================================
# Normal forms
# =============================================================================

JOIN_OF_MEETS = "join_of_meets"
MEET_OF_JOINS = "meet_of_joins"


def _antichain(sets) -> FrozenSet[FrozenSet[str]]:
    sets = set(sets)
    return frozenset(s for s in sets if not any(t < s for t in sets))


def normal_form(f: Union[str, Formula], mode: str = JOIN_OF_MEETS) -> FrozenSet[FrozenSet[str]]:
    """
    Index sets S such that f equals the join over S of the meet of its
    variables (or the dual form), absorbed to an antichain.
    """
    f = _as_formula(f)
    if mode not in (JOIN_OF_MEETS, MEET_OF_JOINS):
        raise UnsupportedConnective(f"unknown normal form {mode!r}")
    outer = Or if mode == JOIN_OF_MEETS else And

    def walk(node) -> FrozenSet[FrozenSet[str]]:
        if isinstance(node, Var):
            return frozenset([frozenset([node.name])])
        if not isinstance(node, (And, Or)):
            raise UnsupportedConnective(f"normal forms take only variables, & and |, not {format_formula(node)}")
        a, b = walk(node.left), walk(node.right)
        if isinstance(node, outer):
            return _antichain(a | b)
        return _antichain(s | t for s in a for t in b)

    return walk(f)


def from_normal_form(sets: FrozenSet[FrozenSet[str]], mode: str = JOIN_OF_MEETS) -> Formula:
    """Rebuild a formula from normal_form output."""
    if not sets:
        raise UnsupportedConnective("empty normal form")
    inner, outer = (And, Or) if mode == JOIN_OF_MEETS else (Or, And)

    def fold(op, parts: Sequence[Formula]) -> Formula:
        node = parts[0]
        for part in parts[1:]:
            node = op(node, part)
        return node

    clauses = sorted(sorted(s) for s in sets)
    return fold(outer, [fold(inner, [Var(name) for name in clause]) for clause in clauses])


if __name__ == "__main__":
    for text in CLASSICAL_TAUTOLOGIES:
        print(f"[Formulas] {text}: {boolean_tautology(text)[0]}")
    nf = normal_form("x & (y | z)")
    print(f"[Formulas] x & (y | z) = {format_formula(from_normal_form(nf))}")
