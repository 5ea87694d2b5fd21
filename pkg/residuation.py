"""
Residuation Module.

Relative pseudocomplements and implicative (Heyting) lattices, the Boolean
equivalence conditions, Curry fixed points, and exact-rational t-norms:
- Lukasiewicz: max(x + y - 1, 0)
- Goedel: min(x, y)
- Product: x * y
"""
import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from math import lcm
from typing import List, Optional, Tuple, Union

import numpy as np

from logic_analysis import LogicStructure, NegationMap
from order_core import (
    BadParams,
    FiniteLattice,
    LatticeError,
    PropertyReport,
    Verdict,
    Witness,
    chain,
    property_scan,
    triple_leq_verdict,
    triple_verdict,
)

logger = logging.getLogger(__name__)

ORACLE_DENOMINATOR = 48

Number = Union[Fraction, int, str]


class NotImplicative(LatticeError):
    def __init__(self, pair: Tuple[str, str]):
        super().__init__(f"{pair[0]} -> {pair[1]} has no greatest candidate")
        self.pair = pair


class OutOfRange(LatticeError, ValueError):
    pass


class ProductNotClosed(LatticeError):
    pass


class CarrierNotClosed(LatticeError):
    pass


# =============================================================================
# Relative pseudocomplements
# =============================================================================

@dataclass(frozen=True, eq=False)
class ResiduumTable:
    carrier: Tuple[str, ...]
    arrow: np.ndarray  # arrow[a, b] is the index of a -> b

    def at(self, a: str, b: str) -> str:
        return self.carrier[self.arrow[self.carrier.index(a), self.carrier.index(b)]]

    def to_json(self) -> List[List[str]]:
        return [[self.carrier[j] for j in row] for row in self.arrow]


def _greatest(leq: np.ndarray, candidates: np.ndarray) -> Optional[int]:
    sub = leq[np.ix_(candidates, candidates)]
    greatest = candidates[sub.all(axis=0)]
    return int(greatest[0]) if greatest.size == 1 else None


def _rpc_index(l: FiniteLattice, a: int, b: int) -> Optional[int]:
    return _greatest(l.leq, np.flatnonzero(l.leq[l.meet_table[a], b]))


def relative_pseudocomplement(l: FiniteLattice, a, b) -> Optional[str]:
    """Greatest x with a & x <= b, or None when the candidates have no maximum."""
    found = _rpc_index(l, l.index(a), l.index(b))
    return None if found is None else l.label(found)


def _arrow_table(l: FiniteLattice) -> Tuple[Optional[np.ndarray], Optional[Tuple[int, int]]]:
    n = l.size
    arrow = np.empty((n, n), dtype=np.intp)
    for a in range(n):
        for b in range(n):
            found = _rpc_index(l, a, b)
            if found is None:
                return None, (a, b)
            arrow[a, b] = found
    return arrow, None


def residuum_table(l: FiniteLattice) -> ResiduumTable:
    arrow, missing = _arrow_table(l)
    if arrow is None:
        raise NotImplicative((l.label(missing[0]), l.label(missing[1])))
    return ResiduumTable(l.names, arrow)


def fusion_residuum(l: FiniteLattice, fusion) -> Optional[np.ndarray]:
    """arrow[a, b] = greatest x with a * x <= b for an explicit fusion table, or None."""
    fusion = np.asarray(fusion, dtype=np.intp)
    n = l.size
    arrow = np.empty((n, n), dtype=np.intp)
    for a in range(n):
        for b in range(n):
            found = _greatest(l.leq, np.flatnonzero(l.leq[fusion[a], b]))
            if found is None:
                return None
            arrow[a, b] = found
    return arrow


def _pair_verdict(l: FiniteLattice, name: str, identity: str, lhs: np.ndarray, rhs: np.ndarray,
                  inequality: bool = False, assertion_only: bool = True) -> Verdict:
    bad = ~l.leq[lhs, rhs] if inequality else lhs != rhs
    hits = np.argwhere(bad)
    if hits.size == 0:
        return Verdict(name, True, assertion_only=assertion_only)
    a, b = (int(v) for v in hits[0])
    witness = Witness((l.label(a), l.label(b)), identity, l.label(lhs[a, b]), l.label(rhs[a, b]))
    return Verdict(name, False, witness, assertion_only)


def implicative_report(l: FiniteLattice) -> Tuple[PropertyReport, Optional[ResiduumTable]]:
    """
    Decide implicativity and verify the Heyting identities exhaustively.

    Returns:
        (report, residuum table) where the table is None when some pair has
        no relative pseudocomplement
    """
    report = PropertyReport()
    arrow, missing = _arrow_table(l)
    if arrow is None:
        a, b = l.label(missing[0]), l.label(missing[1])
        report.add(Verdict("implicative", False, Witness((a, b), "greatest x with a & x <= b", "none", b)))
        return report, None
    report.add(Verdict("implicative", True))

    n = l.size
    A, M, J, leq = arrow, l.meet_table, l.join_table, l.leq
    rows = np.arange(n)
    aa = np.broadcast_to(rows[:, None], (n, n))
    bb = np.broadcast_to(rows[None, :], (n, n))
    neg = A[:, l.bottom]

    report.add(_pair_verdict(l, "modus-ponens", "a & (a -> b) <= b", M[aa, A], bb, inequality=True))

    # a & c <= b  iff  c <= a -> b, scanned over (a, b, c)
    hits = np.argwhere(leq[M[:, None, :], rows[None, :, None]] != leq[rows[None, None, :], A[:, :, None]])
    if hits.size == 0:
        report.add(Verdict("residuation", True, assertion_only=True))
    else:
        a, b, c = (int(v) for v in hits[0])
        report.add(Verdict("residuation", False, Witness(
            (l.label(a), l.label(b), l.label(c)), "a & c <= b iff c <= a -> b",
            l.label(M[a, c]), l.label(A[a, b])), True))

    report.add(triple_leq_verdict(
        l, "left-antitone", "a <= b implies b -> c <= a -> c",
        lambda a: (A, np.broadcast_to(A[a][None, :], (n, n)), np.broadcast_to(leq[a][:, None], (n, n)))))
    report.add(triple_leq_verdict(
        l, "right-monotone", "b <= c implies a -> b <= a -> c",
        lambda a: (np.broadcast_to(A[a][:, None], (n, n)), np.broadcast_to(A[a][None, :], (n, n)), leq)))
    report.add(_pair_verdict(l, "consequent-below-arrow", "b <= a -> b", bb, A, inequality=True))
    report.add(triple_verdict(
        l, "exportation", "a -> (b -> c) = (a & b) -> c",
        lambda a: (A[a][A], A[M[a]], None), True))
    report.add(triple_verdict(
        l, "exchange", "a -> (b -> c) = b -> (a -> c)",
        lambda a: (A[a][A], A[rows[:, None], A[a][None, :]], None), True))
    report.add(triple_leq_verdict(
        l, "arrow-self-distribution", "a -> (b -> c) <= (a -> b) -> (a -> c)",
        lambda a: (A[a][A], A[A[a][:, None], A[a][None, :]], None)))
    report.add(triple_verdict(
        l, "arrow-over-meet", "a -> (b & c) = (a -> b) & (a -> c)",
        lambda a: (A[a][M], M[A[a][:, None], A[a][None, :]], None), True))
    report.add(_pair_verdict(l, "contraction", "a -> (a -> b) = a -> b", A[aa, A], A))
    report.add(_pair_verdict(l, "top-antecedent", "1 -> a = a",
                             np.broadcast_to(A[l.top][:, None], (n, n)), aa))
    is_top = (A == l.top)
    if (is_top != leq).any():
        a, b = (int(v) for v in np.argwhere(is_top != leq)[0])
        report.add(Verdict("order-as-arrow", False, Witness(
            (l.label(a), l.label(b)), "a <= b iff a -> b = 1", l.label(A[a, b]), l.label(l.top)), True))
    else:
        report.add(Verdict("order-as-arrow", True, assertion_only=True))
    report.add(_pair_verdict(l, "negation-below-arrow", "~a | b <= a -> b",
                             J[neg[:, None], bb], A, inequality=True))
    report.add(_pair_verdict(l, "excluded-middle-arrow", "(~a | a) & (a -> b) <= ~a | b",
                             M[J[neg, rows][:, None], A], J[neg[:, None], bb], inequality=True))
    report.add(triple_verdict(
        l, "join-antecedent", "(a | b) -> c = (a -> c) & (b -> c)",
        lambda a: (A[J[a]], M[A[a][None, :], A], None), True))

    distributive = property_scan(l)["distributive"]
    report.add(Verdict("distributive", distributive.holds, distributive.witness, assertion_only=True))
    return report, ResiduumTable(l.names, arrow)


def pseudocomplement_structure(l: FiniteLattice, name: str = "") -> LogicStructure:
    """Implicative lattice with the negation ~a = a -> 0."""
    table = residuum_table(l)
    return LogicStructure(l, NegationMap(table.arrow[:, l.bottom]), name)


def boolean_equivalence_report(l: FiniteLattice) -> PropertyReport:
    """
    Stability, tertium, Peirce and a | (a -> b) = 1, which hold or fail together.
    """
    A = residuum_table(l).arrow
    n = l.size
    J = l.join_table
    rows = np.arange(n)
    aa = np.broadcast_to(rows[:, None], (n, n))
    neg = A[:, l.bottom]
    ones = np.full((n, n), l.top)
    report = PropertyReport()

    def unary(name, identity, lhs, rhs):
        hits = np.flatnonzero(lhs != rhs)
        if hits.size == 0:
            return report.add(Verdict(name, True))
        a = int(hits[0])
        return report.add(Verdict(name, False, Witness((l.label(a),), identity,
                                                       l.label(lhs[a]), l.label(rhs[a]))))

    unary("stability", "a = ~~a", rows, neg[neg])
    unary("tertium", "a | ~a = 1", J[rows, neg], ones[0])
    report.add(_pair_verdict(l, "peirce", "(a -> b) -> a = a", A[A, aa], aa, assertion_only=False))
    report.add(_pair_verdict(l, "arrow-excluded-middle", "a | (a -> b) = 1", J[aa, A], ones,
                             assertion_only=False))

    conditions = [v.holds for v in report]
    report.add(Verdict("agreement", len(set(conditions)) == 1, assertion_only=True))
    return report


def curry_scan(l: FiniteLattice) -> List[Tuple[str, List[str]]]:
    """Fixed points of x -> (x -> y) for every y."""
    A = residuum_table(l).arrow
    rows = np.arange(l.size)
    return [(l.label(y), [l.label(x) for x in np.flatnonzero(A[:, y] == rows)]) for y in range(l.size)]


# =============================================================================
# Rational t-norms
# =============================================================================

class TNormKind(Enum):
    LUKASIEWICZ = "Lukasiewicz"
    GOEDEL = "Goedel"
    PRODUCT = "Product"

    @classmethod
    def parse(cls, text: Union[str, "TNormKind"]) -> "TNormKind":
        if isinstance(text, cls):
            return text
        key = str(text).strip().lower().replace("ö", "oe").replace("ł", "l")
        aliases = {"l": cls.LUKASIEWICZ, "luk": cls.LUKASIEWICZ, "lukasiewicz": cls.LUKASIEWICZ,
                   "g": cls.GOEDEL, "godel": cls.GOEDEL, "goedel": cls.GOEDEL,
                   "p": cls.PRODUCT, "product": cls.PRODUCT}
        if key in aliases:
            return aliases[key]
        raise BadParams(f"unknown t-norm {text!r}; expected Lukasiewicz, Goedel or Product")


def parse_rational(text: Number) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError, TypeError) as e:
        raise BadParams(f"not a rational number: {text!r}") from e


def format_rational(value: Fraction) -> str:
    return str(Fraction(value))


def _unit(value: Number) -> Fraction:
    value = parse_rational(value)
    if not 0 <= value <= 1:
        raise OutOfRange(f"{value} is outside [0, 1]")
    return value


def tnorm_eval(kind: Union[str, TNormKind], x: Number, y: Number) -> Fraction:
    kind = TNormKind.parse(kind)
    x, y = _unit(x), _unit(y)
    if kind is TNormKind.LUKASIEWICZ:
        return max(x + y - 1, Fraction(0))
    if kind is TNormKind.GOEDEL:
        return min(x, y)
    return x * y


def tnorm_residuum(kind: Union[str, TNormKind], x: Number, y: Number) -> Fraction:
    """Closed-form sup{z : x * z <= y}."""
    kind = TNormKind.parse(kind)
    x, y = _unit(x), _unit(y)
    if x <= y:
        return Fraction(1)
    if kind is TNormKind.LUKASIEWICZ:
        return 1 - x + y
    if kind is TNormKind.GOEDEL:
        return y
    return y / x


def tnorm_negation(kind: Union[str, TNormKind], x: Number) -> Fraction:
    return tnorm_residuum(kind, x, 0)


def grid_sup_residuum(kind: Union[str, TNormKind], x: Number, y: Number,
                      base: int = ORACLE_DENOMINATOR) -> Fraction:
    """Largest z = k/d with x * z <= y, d = lcm of both denominators and base."""
    kind = TNormKind.parse(kind)
    x, y = _unit(x), _unit(y)
    d = lcm(x.denominator, y.denominator, base)
    lo, hi = 0, d  # x * 0 = 0 <= y always
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if tnorm_eval(kind, x, Fraction(mid, d)) <= y:
            lo = mid
        else:
            hi = mid - 1
    return Fraction(lo, d)


def residuum_oracle_agrees(kind: Union[str, TNormKind], x: Number, y: Number,
                           base: int = ORACLE_DENOMINATOR) -> bool:
    """Closed form dominates the grid sup and equals it when it lies on the grid."""
    x, y = _unit(x), _unit(y)
    closed = tnorm_residuum(kind, x, y)
    grid = grid_sup_residuum(kind, x, y, base)
    d = lcm(x.denominator, y.denominator, base)
    if closed < grid:
        return False
    return closed == grid if d % closed.denominator == 0 else True


@dataclass(frozen=True, eq=False)
class TNormLogic:
    kind: TNormKind
    values: Tuple[Fraction, ...]
    structure: LogicStructure
    fusion: np.ndarray
    residuum: ResiduumTable

    def fusion_labels(self) -> List[List[str]]:
        names = self.structure.lattice.names
        return [[names[j] for j in row] for row in self.fusion]

    def implication_labels(self) -> List[List[str]]:
        return self.residuum.to_json()


def build_tnorm_logic(kind: Union[str, TNormKind], n: int) -> TNormLogic:
    """
    Finite chain {0, 1/n, ..., 1} with t-norm fusion, residuum and derived negation.

    Raises:
        ProductNotClosed: for the product t-norm
        BadParams: n < 1
        CarrierNotClosed: fusion or residuum leaves the grid
    """
    kind = TNormKind.parse(kind)
    if kind is TNormKind.PRODUCT:
        raise ProductNotClosed("product residuum y/x leaves the grid {0, 1/n, ..., 1}")
    if n < 1:
        raise BadParams(f"{kind.value} logic needs n >= 1, got {n}")
    values = tuple(Fraction(i, n) for i in range(n + 1))
    names = [format_rational(v) for v in values]
    position = {v: i for i, v in enumerate(values)}

    def lookup(v: Fraction, op: str, x: Fraction, y: Fraction) -> int:
        if v not in position:
            raise CarrierNotClosed(f"{x} {op} {y} = {v} is not in the carrier")
        return position[v]

    fusion = np.array([[lookup(tnorm_eval(kind, x, y), "*", x, y) for y in values] for x in values],
                      dtype=np.intp)
    arrow = np.array([[lookup(tnorm_residuum(kind, x, y), "->", x, y) for y in values] for x in values],
                     dtype=np.intp)
    lattice = chain(names)
    prefix = "LUK" if kind is TNormKind.LUKASIEWICZ else "GOEDEL"
    structure = LogicStructure(lattice, NegationMap(arrow[:, 0]), f"{prefix}({n})")
    logger.debug("built %s chain with %d values", kind.value, n + 1)
    return TNormLogic(kind, values, structure, fusion, ResiduumTable(lattice.names, arrow))


if __name__ == "__main__":
    g3 = build_tnorm_logic("Goedel", 2)
    report, table = implicative_report(g3.structure.lattice)
    print(f"[Residuation] G3 implicative: {report.holds('implicative')}")
    print(f"[Residuation] G3 arrow: {table.to_json()}")
    print(f"[Residuation] product 3/4 -> 1/2 = {tnorm_residuum('Product', '3/4', '1/2')}")
