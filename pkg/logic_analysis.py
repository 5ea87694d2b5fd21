"""
Logic Analysis Module.

Negation axioms, logic-level laws and classification of a lattice with a
negation into the hierarchy fuzzy logic / paraconsistent / logic / quantum /
distributive / intuitionistic / Boolean.
"""
import logging
from dataclasses import dataclass, field
from typing import Dict, List, Mapping, Optional, Sequence, Union

import numpy as np

from order_core import (
    FiniteLattice,
    LatticeError,
    PropertyReport,
    Verdict,
    Witness,
    property_scan,
)

logger = logging.getLogger(__name__)

FLAG_NAMES = (
    "fuzzy_negation",
    "non_contradictory",
    "paraconsistent",
    "orthomodular",
    "distributive",
    "involutive",
    "tertium",
    "conj_de_morgan",
    "complemented",
    "boolean",
    "intuitionistic",
)

NOT_FUZZY = "not-a-fuzzy-logic"
FUZZY = "fuzzy logic"
PARACONSISTENT = "paraconsistent logic"
LOGIC = "logic"
PARACONSISTENT_LOGIC = "paraconsistent logic (non-contradictory)"
QUANTUM = "quantum logic"
DISTRIBUTIVE = "distributive logic"
INTUITIONISTIC = "intuitionistic logic"
BOOLEAN = "Boolean logic"


class CarrierMismatch(LatticeError):
    pass


class ClassificationInconsistent(LatticeError):
    """Flags contradict a theorem that holds on every structure."""


@dataclass(frozen=True, eq=False)
class NegationMap:
    table: np.ndarray  # table[i] is the index of i'

    def __post_init__(self):
        table = np.array(self.table, dtype=np.intp, copy=True)
        table.setflags(write=False)
        object.__setattr__(self, "table", table)

    @property
    def size(self) -> int:
        return int(self.table.shape[0])

    def __getitem__(self, i: int) -> int:
        return int(self.table[i])


@dataclass(frozen=True, eq=False)
class LogicStructure:
    lattice: FiniteLattice
    neg: NegationMap
    name: str = ""

    def __post_init__(self):
        if self.neg.size != self.lattice.size:
            raise CarrierMismatch(
                f"negation covers {self.neg.size} elements, lattice has {self.lattice.size}")
        if self.neg.size and (self.neg.table.min() < 0 or self.neg.table.max() >= self.lattice.size):
            raise CarrierMismatch("negation table points outside the carrier")

    @property
    def size(self) -> int:
        return self.lattice.size

    def negate(self, x) -> str:
        return self.lattice.label(self.neg[self.lattice.index(x)])

    def negation_labels(self) -> List[str]:
        return [self.lattice.label(j) for j in self.neg.table]


def structure_from_labels(lattice: FiniteLattice,
                          negation: Union[Mapping[str, str], Sequence[str]],
                          name: str = "") -> LogicStructure:
    """Attach a negation given as label -> label mapping or as a per-position label list."""
    if isinstance(negation, Mapping):
        table = [lattice.index(negation[label]) for label in lattice.names]
    else:
        if len(negation) != lattice.size:
            raise CarrierMismatch(f"negation has {len(negation)} entries for {lattice.size} elements")
        table = [lattice.index(label) for label in negation]
    return LogicStructure(lattice, NegationMap(table), name)


# =============================================================================
# Verdict helpers
# =============================================================================

def _unary(l: FiniteLattice, name: str, identity: str, lhs: np.ndarray, rhs: np.ndarray,
           bad: Optional[np.ndarray] = None) -> Verdict:
    if bad is None:
        bad = lhs != rhs
    hits = np.flatnonzero(bad)
    if hits.size == 0:
        return Verdict(name, True)
    x = int(hits[0])
    return Verdict(name, False, Witness((l.label(x),), identity, l.label(lhs[x]), l.label(rhs[x])))


def _binary(l: FiniteLattice, name: str, identity: str, lhs: np.ndarray, rhs: np.ndarray,
            bad: Optional[np.ndarray] = None) -> Verdict:
    if bad is None:
        bad = lhs != rhs
    hits = np.argwhere(bad)
    if hits.size == 0:
        return Verdict(name, True)
    x, y = (int(v) for v in hits[0])
    return Verdict(name, False, Witness((l.label(x), l.label(y)), identity,
                                        l.label(lhs[x, y]), l.label(rhs[x, y])))


# =============================================================================
# Reports
# =============================================================================

def negation_axiom_report(s: LogicStructure) -> PropertyReport:
    """Weak double negation, antitony and the Boolean boundary condition."""
    l = s.lattice
    N = s.neg.table
    leq = l.leq
    rows = np.arange(l.size)
    report = PropertyReport()

    NN = N[N]
    report.add(_unary(l, "weak-double-negation", "x <= x''", rows, NN, bad=~leq[rows, NN]))

    flipped = leq[np.ix_(N, N)].T  # flipped[x, y] = y' <= x'
    lhs = np.broadcast_to(N[None, :], (l.size, l.size))
    rhs = np.broadcast_to(N[:, None], (l.size, l.size))
    report.add(_binary(l, "antitony", "x <= y implies y' <= x'", lhs, rhs, bad=leq & ~flipped))

    if N[l.bottom] != l.top:
        boundary = Verdict("boolean-boundary", False,
                           Witness((l.label(l.bottom),), "0' = 1", l.label(N[l.bottom]), l.label(l.top)))
    elif N[l.top] != l.bottom:
        boundary = Verdict("boolean-boundary", False,
                           Witness((l.label(l.top),), "1' = 0", l.label(N[l.top]), l.label(l.bottom)))
    else:
        boundary = Verdict("boolean-boundary", True)
    report.add(boundary)

    failed = report.failures()
    report.add(Verdict("fuzzy-negation", not failed, failed[0].witness if failed else None))
    return report


def law_report(s: LogicStructure) -> PropertyReport:
    """
    Logic-level laws with witnesses.

    Covers non-contradiction, tertium non datur, involutivity, both De Morgan
    laws, the conjunctive De Morgan inequality, paraconsistency,
    orthomodularity and complementedness.
    """
    l = s.lattice
    n = l.size
    N = s.neg.table
    M, J, leq = l.meet_table, l.join_table, l.leq
    rows = np.arange(n)
    zeros = np.full(n, l.bottom)
    ones = np.full(n, l.top)
    report = PropertyReport()

    x_and_not = M[rows, N]
    x_or_not = J[rows, N]
    report.add(_unary(l, "non-contradiction", "x & x' = 0", x_and_not, zeros))
    report.add(_unary(l, "tertium-non-datur", "x | x' = 1", x_or_not, ones))
    report.add(_unary(l, "involutive", "x'' = x", N[N], rows))

    neg_x = N[:, None]
    neg_y = N[None, :]
    report.add(_binary(l, "disjunctive-de-morgan", "(x | y)' = x' & y'", N[J], M[neg_x, neg_y]))
    report.add(_binary(l, "conjunctive-de-morgan", "(x & y)' = x' | y'", N[M], J[neg_x, neg_y]))
    lower, upper = J[neg_x, neg_y], N[M]
    report.add(_binary(l, "conjunctive-de-morgan-inequality", "x' | y' <= (x & y)'",
                       lower, upper, bad=~leq[lower, upper]))

    xs = np.broadcast_to(rows[:, None], (n, n))
    ys = np.broadcast_to(rows[None, :], (n, n))
    disjoint = M[neg_x, ys] == l.bottom
    report.add(_binary(l, "paraconsistency", "x <= y and x' & y = 0 imply x = y",
                       xs, ys, bad=leq & disjoint & (xs != ys)))

    ortho = J[xs, M[neg_x, ys]]
    report.add(_binary(l, "orthomodularity", "x <= y implies x | (x' & y) = y",
                       ortho, ys, bad=leq & (ortho != ys)))

    meet_bad = x_and_not != l.bottom
    join_bad = x_or_not != l.top
    hits = np.flatnonzero(meet_bad | join_bad)
    if hits.size == 0:
        report.add(Verdict("complemented", True))
    else:
        x = int(hits[0])
        if meet_bad[x]:
            witness = Witness((l.label(x),), "x & x' = 0", l.label(x_and_not[x]), l.label(l.bottom))
        else:
            witness = Witness((l.label(x),), "x | x' = 1", l.label(x_or_not[x]), l.label(l.top))
        report.add(Verdict("complemented", False, witness))
    return report


# =============================================================================
# Classification
# =============================================================================

@dataclass
class LogicClass:
    flags: Dict[str, bool]
    label: str
    notes: List[str] = field(default_factory=list)

    def to_dict(self) -> Dict:
        data = {"flags": dict(self.flags), "label": self.label}
        if self.notes:
            data["notes"] = list(self.notes)
        return data


def _label(flags: Dict[str, bool]) -> str:
    if not flags["fuzzy_negation"]:
        return NOT_FUZZY
    if flags["boolean"]:
        return BOOLEAN
    if flags["intuitionistic"]:
        return INTUITIONISTIC
    non_contradictory = flags["non_contradictory"]
    if non_contradictory and flags["distributive"]:
        return DISTRIBUTIVE
    if non_contradictory and flags["orthomodular"]:
        return QUANTUM
    if non_contradictory and flags["paraconsistent"]:
        return PARACONSISTENT_LOGIC
    if non_contradictory:
        return LOGIC
    if flags["paraconsistent"]:
        return PARACONSISTENT
    return FUZZY


def classify(s: LogicStructure, reports: Optional[Dict[str, PropertyReport]] = None) -> LogicClass:
    """
    Compute every flag and the most specific hierarchy label.

    Args:
        s: lattice with negation
        reports: optional precomputed {"axioms", "laws", "lattice"} reports

    Returns:
        LogicClass with flags, label and notes
    """
    reports = reports or {}
    axioms = reports.get("axioms") or negation_axiom_report(s)
    laws = reports.get("laws") or law_report(s)
    lattice = reports.get("lattice") or property_scan(s.lattice)

    N = s.neg.table
    leq = s.lattice.leq
    rows = np.arange(s.size)
    NN = N[N]
    strictly_below = leq[rows, NN] & (NN != rows)

    flags = {
        "fuzzy_negation": axioms.holds("fuzzy-negation"),
        "non_contradictory": laws.holds("non-contradiction"),
        "paraconsistent": laws.holds("paraconsistency"),
        "orthomodular": laws.holds("orthomodularity"),
        "distributive": lattice.holds("distributive"),
        "involutive": laws.holds("involutive"),
        "tertium": laws.holds("tertium-non-datur"),
        "conj_de_morgan": laws.holds("conjunctive-de-morgan"),
        "complemented": laws.holds("complemented"),
    }
    flags["boolean"] = flags["non_contradictory"] and flags["distributive"] and flags["complemented"]
    flags["intuitionistic"] = (flags["fuzzy_negation"] and flags["distributive"]
                               and flags["non_contradictory"] and bool(strictly_below.any()))

    notes = []
    if flags["fuzzy_negation"] and flags["non_contradictory"]:
        if flags["orthomodular"] and not flags["involutive"]:
            raise ClassificationInconsistent(
                f"{s.name or 'structure'}: orthomodular logic with a non-involutive negation")
        if flags["involutive"] and not flags["orthomodular"]:
            witness = laws["orthomodularity"].witness
            notes.append(f"involutive logic that is not orthomodular ({witness})")
    if flags["orthomodular"] and not flags["paraconsistent"]:
        raise ClassificationInconsistent(f"{s.name or 'structure'}: orthomodular but not paraconsistent")

    result = LogicClass(flags, _label(flags), notes)
    logger.debug("classified %s as %s", s.name or "structure", result.label)
    return result


# =============================================================================
# Metaproperty sweep
# =============================================================================

@dataclass(frozen=True)
class MetapropertyViolation:
    law: str
    table: List[str]


def random_negation_table(lattice: FiniteLattice, rng: np.random.Generator, strategy: int) -> np.ndarray:
    """
    Random candidate negation.

    strategy 0: uniform table; 1: uniform with 0' = 1 and 1' = 0;
    2: random antitone map with the boundary condition.
    """
    n = lattice.size
    if strategy == 0:
        return rng.integers(0, n, size=n)
    if strategy == 1:
        table = rng.integers(0, n, size=n)
        table[lattice.bottom] = lattice.top
        table[lattice.top] = lattice.bottom
        return table

    leq, M = lattice.leq, lattice.meet_table
    extension = np.argsort(leq.sum(axis=0), kind="stable")  # by size of the down-set
    table = np.full(n, -1, dtype=np.intp)
    for x in extension:
        if x == lattice.bottom:
            table[x] = lattice.top
            continue
        if x == lattice.top:
            table[x] = lattice.bottom
            continue
        bound = lattice.top
        for y in np.flatnonzero(leq[:, x]):
            if y != x:
                bound = M[bound, table[y]]
        candidates = np.flatnonzero(leq[:, bound])
        table[x] = candidates[rng.integers(0, candidates.size)]
    return table


def metaproperty_sweep(lattice: FiniteLattice, samples: int = 200, seed: int = 0) -> List[MetapropertyViolation]:
    """
    Check the implications between negation laws on random negation tables.

    - weak double negation: antitony iff disjunctive De Morgan
    - fuzzy and involutive: conjunctive De Morgan
    - fuzzy, non-contradictory and involutive: tertium non datur
    - fuzzy: conjunctive De Morgan inequality
    """
    rng = np.random.default_rng(seed)
    violations = []
    for k in range(samples):
        table = random_negation_table(lattice, rng, k % 3)
        s = LogicStructure(lattice, NegationMap(table))
        axioms = negation_axiom_report(s)
        laws = law_report(s)
        fuzzy = axioms.holds("fuzzy-negation")
        involutive = laws.holds("involutive")
        broken = []
        if axioms.holds("weak-double-negation") and axioms.holds("antitony") != laws.holds("disjunctive-de-morgan"):
            broken.append("antitony iff disjunctive De Morgan")
        if fuzzy and involutive and not laws.holds("conjunctive-de-morgan"):
            broken.append("involutive implies conjunctive De Morgan")
        if fuzzy and involutive and laws.holds("non-contradiction") and not laws.holds("tertium-non-datur"):
            broken.append("non-contradictory and involutive implies tertium non datur")
        if fuzzy and not laws.holds("conjunctive-de-morgan-inequality"):
            broken.append("fuzzy negation implies conjunctive De Morgan inequality")
        for law in broken:
            violations.append(MetapropertyViolation(law, s.negation_labels()))
    if violations:
        logger.warning("metaproperty sweep found %d violations", len(violations))
    return violations


if __name__ == "__main__":
    from order_core import lattice_from_covers

    m5 = lattice_from_covers(["0", "a", "b", "c", "1"],
                             [("0", "a"), ("0", "b"), ("0", "c"), ("a", "1"), ("b", "1"), ("c", "1")])
    s = structure_from_labels(m5, ["1", "c", "0", "a", "0"], "M5")
    for verdict in law_report(s):
        print(f"[LogicAnalysis] {verdict.name}: {verdict.holds} {verdict.witness or ''}")
    print(f"[LogicAnalysis] {classify(s).to_dict()}")
