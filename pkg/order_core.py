"""
Order Core Module.

Finite posets and lattices stored as dense numpy tables:
- FinitePoset: labels plus a boolean leq matrix (leq[i, j] means i <= j)
- FiniteLattice: poset plus meet/join tables and the universal bounds

Element identity is positional; labels are only used for presentation,
witnesses and the JSON lattice format.
"""
import json
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple, Union

import networkx as nx
import numpy as np

logger = logging.getLogger(__name__)

DEFAULT_SUBLATTICE_BUDGET = 50_000_000


# =============================================================================
# Errors
# =============================================================================

class LatticeError(Exception):
    """Base class for every error raised by the toolkit."""


class DuplicateLabel(LatticeError):
    def __init__(self, label: str):
        super().__init__(f"duplicate element label {label!r}")
        self.label = label


class UnknownElement(LatticeError, KeyError):
    def __init__(self, label):
        super().__init__(f"unknown element {label!r}")
        self.label = label

    def __str__(self):
        return self.args[0]


class CycleDetected(LatticeError):
    def __init__(self, cycle: Sequence[str]):
        super().__init__("cover relation has a cycle: " + " < ".join(cycle))
        self.cycle = list(cycle)


class OrderViolation(LatticeError):
    """Relation matrix is not reflexive, antisymmetric and transitive."""


class NotALattice(LatticeError):
    def __init__(self, pair: Tuple[str, str], operation: str):
        super().__init__(f"{pair[0]} and {pair[1]} have no unique {operation}")
        self.pair = pair
        self.operation = operation


class NoBounds(LatticeError):
    pass


class SearchBudgetExceeded(LatticeError):
    def __init__(self, budget: int):
        super().__init__(f"search budget of {budget} candidates exhausted")
        self.budget = budget


class EmptyBlockList(LatticeError):
    pass


class BadParams(LatticeError, ValueError):
    pass


class DocumentError(LatticeError):
    """Malformed lattice JSON document."""


# =============================================================================
# Reports
# =============================================================================

@dataclass(frozen=True)
class Witness:
    """First tuple violating a named identity, with both evaluated sides."""
    elements: Tuple[str, ...]
    identity: str
    lhs: str
    rhs: str

    def to_dict(self) -> Dict:
        return {"elements": list(self.elements), "identity": self.identity,
                "lhs": self.lhs, "rhs": self.rhs}

    def __str__(self):
        args = ", ".join(self.elements)
        return f"{self.identity} fails at ({args}): {self.lhs} vs {self.rhs}"


@dataclass(frozen=True)
class Verdict:
    name: str
    holds: bool
    witness: Optional[Witness] = None
    assertion_only: bool = False  # theorems that must hold on every input

    def to_dict(self) -> Dict:
        return {
            "property": self.name,
            "holds": self.holds,
            "witness": list(self.witness.elements) if self.witness else None,
        }


@dataclass
class PropertyReport:
    """Ordered collection of verdicts, addressable by property name."""
    verdicts: List[Verdict] = field(default_factory=list)

    def add(self, verdict: Verdict) -> Verdict:
        self.verdicts.append(verdict)
        return verdict

    def extend(self, other: "PropertyReport") -> "PropertyReport":
        self.verdicts.extend(other.verdicts)
        return self

    def __getitem__(self, name: str) -> Verdict:
        for verdict in self.verdicts:
            if verdict.name == name:
                return verdict
        raise KeyError(name)

    def __contains__(self, name: str) -> bool:
        return any(v.name == name for v in self.verdicts)

    def __iter__(self):
        return iter(self.verdicts)

    def holds(self, name: str) -> bool:
        return self[name].holds

    def names(self) -> List[str]:
        return [v.name for v in self.verdicts]

    def failures(self) -> List[Verdict]:
        return [v for v in self.verdicts if not v.holds]

    def to_json(self) -> List[Dict]:
        return [v.to_dict() for v in self.verdicts]


# =============================================================================
# Posets and lattices
# =============================================================================

def _frozen(array: np.ndarray) -> np.ndarray:
    array = np.array(array, copy=True)
    array.setflags(write=False)
    return array


@dataclass(frozen=True, eq=False)
class FinitePoset:
    names: Tuple[str, ...]
    leq: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "names", tuple(self.names))
        object.__setattr__(self, "leq", _frozen(np.asarray(self.leq, dtype=bool)))
        object.__setattr__(self, "_positions", {name: i for i, name in enumerate(self.names)})

    @property
    def size(self) -> int:
        return len(self.names)

    def index(self, label: Union[str, int]) -> int:
        if isinstance(label, (int, np.integer)) and not isinstance(label, bool):
            if 0 <= label < self.size:
                return int(label)
            raise UnknownElement(label)
        try:
            return self._positions[label]
        except KeyError:
            raise UnknownElement(label) from None

    def label(self, i: int) -> str:
        return self.names[int(i)]

    def le(self, x: Union[str, int], y: Union[str, int]) -> bool:
        return bool(self.leq[self.index(x), self.index(y)])

    def strict_graph(self) -> nx.DiGraph:
        graph = nx.DiGraph()
        graph.add_nodes_from(range(self.size))
        lower, upper = np.nonzero(self.leq & ~np.eye(self.size, dtype=bool))
        graph.add_edges_from(zip(lower.tolist(), upper.tolist()))
        return graph

    def covers(self) -> List[Tuple[int, int]]:
        """Cover pairs (lower, upper): the transitive reduction of the order."""
        reduced = nx.transitive_reduction(self.strict_graph())
        return sorted(reduced.edges())

    def cover_labels(self) -> List[Tuple[str, str]]:
        return [(self.names[i], self.names[j]) for i, j in self.covers()]


@dataclass(frozen=True, eq=False)
class FiniteLattice:
    poset: FinitePoset
    meet_table: np.ndarray
    join_table: np.ndarray
    bottom: int
    top: int

    def __post_init__(self):
        object.__setattr__(self, "meet_table", _frozen(np.asarray(self.meet_table, dtype=np.intp)))
        object.__setattr__(self, "join_table", _frozen(np.asarray(self.join_table, dtype=np.intp)))

    @property
    def names(self) -> Tuple[str, ...]:
        return self.poset.names

    @property
    def leq(self) -> np.ndarray:
        return self.poset.leq

    @property
    def size(self) -> int:
        return self.poset.size

    def index(self, label) -> int:
        return self.poset.index(label)

    def label(self, i: int) -> str:
        return self.poset.label(i)

    def le(self, x, y) -> bool:
        return self.poset.le(x, y)

    def meet(self, x, y) -> str:
        return self.label(self.meet_table[self.index(x), self.index(y)])

    def join(self, x, y) -> str:
        return self.label(self.join_table[self.index(x), self.index(y)])

    def covers(self) -> List[Tuple[int, int]]:
        return self.poset.covers()


def _check_labels(names: Sequence[str]) -> Tuple[str, ...]:
    seen = set()
    for name in names:
        if name in seen:
            raise DuplicateLabel(name)
        seen.add(name)
    return tuple(names)


def poset_from_covers(names: Sequence[str], covers: Iterable[Tuple[str, str]]) -> FinitePoset:
    """
    Build a poset from a Hasse diagram.

    Args:
        names: distinct element labels
        covers: (lower, upper) label pairs

    Returns:
        FinitePoset whose order is the reflexive-transitive closure of the covers
    """
    names = _check_labels(names)
    positions = {name: i for i, name in enumerate(names)}
    graph = nx.DiGraph()
    graph.add_nodes_from(range(len(names)))
    for lower, upper in covers:
        if lower not in positions:
            raise UnknownElement(lower)
        if upper not in positions:
            raise UnknownElement(upper)
        graph.add_edge(positions[lower], positions[upper])

    if not nx.is_directed_acyclic_graph(graph):
        cycle = [names[u] for u, _ in nx.find_cycle(graph)]
        raise CycleDetected(cycle + cycle[:1])

    closure = nx.transitive_closure_dag(graph)
    leq = np.eye(len(names), dtype=bool)
    for u, v in closure.edges():
        leq[u, v] = True
    return FinitePoset(names, leq)


def poset_from_matrix(names: Sequence[str], leq) -> FinitePoset:
    """Wrap an explicit relation matrix after checking reflexivity, antisymmetry, transitivity."""
    names = _check_labels(names)
    leq = np.asarray(leq, dtype=bool)
    n = len(names)
    if leq.shape != (n, n):
        raise OrderViolation(f"relation has shape {leq.shape}, expected {(n, n)}")
    if not leq.diagonal().all():
        i = int(np.flatnonzero(~leq.diagonal())[0])
        raise OrderViolation(f"not reflexive at {names[i]}")
    both = leq & leq.T & ~np.eye(n, dtype=bool)
    if both.any():
        i, j = np.argwhere(both)[0]
        raise CycleDetected([names[i], names[j], names[i]])
    # leq∘leq must stay inside leq
    composed = (leq.astype(np.int64) @ leq.astype(np.int64)) > 0
    if (composed & ~leq).any():
        i, j = np.argwhere(composed & ~leq)[0]
        raise OrderViolation(f"not transitive: {names[i]} <= ... <= {names[j]}")
    return FinitePoset(names, leq)


def _extremum(leq: np.ndarray, candidates: np.ndarray, greatest: bool) -> Optional[int]:
    if candidates.size == 0:
        return None
    sub = leq[np.ix_(candidates, candidates)]
    # greatest: every candidate is below it; least: it is below every candidate
    hits = candidates[sub.all(axis=0)] if greatest else candidates[sub.all(axis=1)]
    return int(hits[0]) if hits.size == 1 else None


def lattice_from_poset(p: FinitePoset) -> FiniteLattice:
    """
    Fill meet/join tables by scanning lower and upper bound sets.

    Raises NotALattice for the lexicographically first pair lacking a unique
    infimum or supremum.
    """
    n = p.size
    if n == 0:
        raise NoBounds("empty poset has no universal bounds")
    leq = p.leq
    meet = np.empty((n, n), dtype=np.intp)
    join = np.empty((n, n), dtype=np.intp)
    for i in range(n):
        meet[i, i] = join[i, i] = i
        for j in range(i + 1, n):
            lower = np.flatnonzero(leq[:, i] & leq[:, j])
            m = _extremum(leq, lower, greatest=True)
            if m is None:
                raise NotALattice((p.names[i], p.names[j]), "meet")
            upper = np.flatnonzero(leq[i, :] & leq[j, :])
            s = _extremum(leq, upper, greatest=False)
            if s is None:
                raise NotALattice((p.names[i], p.names[j]), "join")
            meet[i, j] = meet[j, i] = m
            join[i, j] = join[j, i] = s

    bottoms = np.flatnonzero(leq.all(axis=1))
    tops = np.flatnonzero(leq.all(axis=0))
    assert bottoms.size == 1 and tops.size == 1, "finite lattice without bounds"
    return FiniteLattice(p, meet, join, int(bottoms[0]), int(tops[0]))


def lattice_from_covers(names: Sequence[str], covers: Iterable[Tuple[str, str]]) -> FiniteLattice:
    return lattice_from_poset(poset_from_covers(names, covers))


def chain(names: Sequence[str]) -> FiniteLattice:
    """Total order in the given sequence."""
    return lattice_from_covers(names, zip(names, names[1:]))


def dual(l: FiniteLattice) -> FiniteLattice:
    """Order reversed, meet and join swapped, bounds swapped."""
    poset = FinitePoset(l.names, l.leq.T)
    return FiniteLattice(poset, l.join_table, l.meet_table, l.top, l.bottom)


# =============================================================================
# Property scans
# =============================================================================

def _first_violation(n: int, compute) -> Optional[Tuple[int, int, int, int, int]]:
    """
    Scan triples in lexicographic order.

    compute(x) returns (lhs, rhs, mask) arrays of shape (n, n) indexed by
    (y, z); mask may be None. Returns (x, y, z, lhs, rhs) of the first
    masked position where lhs != rhs.
    """
    for x in range(n):
        lhs, rhs, mask = compute(x)
        bad = lhs != rhs
        if mask is not None:
            bad &= mask
        if bad.any():
            y, z = np.argwhere(bad)[0]
            return x, int(y), int(z), int(lhs[y, z]), int(rhs[y, z])
    return None


def triple_verdict(l: FiniteLattice, name: str, identity: str, compute,
                   assertion_only: bool = False) -> Verdict:
    found = _first_violation(l.size, compute)
    if found is None:
        return Verdict(name, True, assertion_only=assertion_only)
    x, y, z, lhs, rhs = found
    witness = Witness((l.label(x), l.label(y), l.label(z)), identity, l.label(lhs), l.label(rhs))
    return Verdict(name, False, witness, assertion_only)


def triple_leq_verdict(l: FiniteLattice, name: str, identity: str, compute,
                       assertion_only: bool = True) -> Verdict:
    """Inequality lhs <= rhs over all triples; compute returns (lhs, rhs, mask)."""
    leq = l.leq

    def as_equality(x):
        lhs, rhs, mask = compute(x)
        ok = leq[lhs, rhs]
        # encode the inequality as an equality on a marker array
        marker = np.where(ok, 0, 1)
        return marker, np.zeros_like(marker), mask

    found = _first_violation(l.size, as_equality)
    if found is None:
        return Verdict(name, True, assertion_only=assertion_only)
    x, y, z, _, _ = found
    lhs, rhs, _ = compute(x)
    witness = Witness((l.label(x), l.label(y), l.label(z)), identity,
                      l.label(lhs[y, z]), l.label(rhs[y, z]))
    return Verdict(name, False, witness, assertion_only)


def property_scan(l: FiniteLattice) -> PropertyReport:
    """
    Distributivity, modularity and cancellation with witnesses, plus the
    inequalities every lattice satisfies.
    """
    n = l.size
    M, J, leq = l.meet_table, l.join_table, l.leq
    rows = np.arange(n)
    report = PropertyReport()

    def distributive(x):
        lhs = M[x][J]
        rhs = J[M[x][:, None], M[x][None, :]]
        return lhs, rhs, None

    report.add(triple_verdict(l, "distributive", "x & (y | z) = (x & y) | (x & z)", distributive))

    def modular(x):
        lhs = J[x][M]
        rhs = M[J[x][:, None], rows[None, :]]
        mask = np.broadcast_to(leq[x][None, :], (n, n))
        return lhs, rhs, mask

    report.add(triple_verdict(l, "modular", "x <= z implies x | (y & z) = (x | y) & z", modular))

    def cancellation(a):
        same = (M[a][:, None] == M[a][None, :]) & (J[a][:, None] == J[a][None, :])
        xs = np.broadcast_to(rows[:, None], (n, n))
        ys = np.broadcast_to(rows[None, :], (n, n))
        return xs, ys, same

    report.add(triple_verdict(
        l, "cancellation", "a & x = a & y and a | x = a | y imply x = y", cancellation))

    def distributive_inequality(x):
        # (x & y) | (x & z) <= x & (y | z)
        return J[M[x][:, None], M[x][None, :]], M[x][J], None

    def dual_distributive_inequality(x):
        # x | (y & z) <= (x | y) & (x | z)
        return J[x][M], M[J[x][:, None], J[x][None, :]], None

    def modular_inequality(x):
        # x <= z implies x | (y & z) <= (x | y) & z
        mask = np.broadcast_to(leq[x][None, :], (n, n))
        return J[x][M], M[J[x][:, None], rows[None, :]], mask

    report.add(triple_leq_verdict(l, "distributive-inequality",
                            "(x & y) | (x & z) <= x & (y | z)", distributive_inequality))
    report.add(triple_leq_verdict(l, "dual-distributive-inequality",
                            "x | (y & z) <= (x | y) & (x | z)", dual_distributive_inequality))
    report.add(triple_leq_verdict(l, "modular-inequality",
                            "x <= z implies x | (y & z) <= (x | y) & z", modular_inequality))
    # finite carriers are complete
    report.add(Verdict("complete", True, assertion_only=True))
    return report


def lattice_law_report(l: FiniteLattice) -> PropertyReport:
    """Idempotence, commutativity, associativity, absorption and consistency."""
    n = l.size
    M, J, leq = l.meet_table, l.join_table, l.leq
    rows = np.arange(n)
    report = PropertyReport()

    def pointwise(name, identity, lhs, rhs):
        bad = np.flatnonzero(lhs != rhs)
        if bad.size == 0:
            return report.add(Verdict(name, True, assertion_only=True))
        x = int(bad[0])
        return report.add(Verdict(name, False, Witness(
            (l.label(x),), identity, l.label(lhs[x]), l.label(rhs[x])), True))

    pointwise("idempotent-meet", "x & x = x", M[rows, rows], rows)
    pointwise("idempotent-join", "x | x = x", J[rows, rows], rows)

    def pairwise(name, identity, lhs, rhs):
        bad = np.argwhere(lhs != rhs)
        if bad.size == 0:
            return report.add(Verdict(name, True, assertion_only=True))
        x, y = bad[0]
        return report.add(Verdict(name, False, Witness(
            (l.label(x), l.label(y)), identity, l.label(lhs[x, y]), l.label(rhs[x, y])), True))

    pairwise("commutative-meet", "x & y = y & x", M, M.T)
    pairwise("commutative-join", "x | y = y | x", J, J.T)
    pairwise("absorption-meet", "x & (x | y) = x", M[rows[:, None], J], np.broadcast_to(rows[:, None], (n, n)))
    pairwise("absorption-join", "x | (x & y) = x", J[rows[:, None], M], np.broadcast_to(rows[:, None], (n, n)))

    report.add(triple_verdict(l, "associative-meet", "x & (y & z) = (x & y) & z",
                               lambda x: (M[x][M], M[M[x][:, None], rows[None, :]], None), True))
    report.add(triple_verdict(l, "associative-join", "x | (y | z) = (x | y) | z",
                               lambda x: (J[x][J], J[J[x][:, None], rows[None, :]], None), True))

    # x <= y  <=>  x & y = x  <=>  x | y = y
    by_meet = M == rows[:, None]
    by_join = J == rows[None, :]
    bad = np.argwhere((leq != by_meet) | (leq != by_join))
    if bad.size == 0:
        report.add(Verdict("consistency", True, assertion_only=True))
    else:
        x, y = bad[0]
        report.add(Verdict("consistency", False, Witness(
            (l.label(x), l.label(y)), "x <= y iff x & y = x iff x | y = y",
            l.label(M[x, y]), l.label(J[x, y])), True))
    return report


def complements(l: FiniteLattice, x) -> List[str]:
    """All y with x & y = 0 and x | y = 1."""
    i = l.index(x)
    hits = np.flatnonzero((l.meet_table[i] == l.bottom) & (l.join_table[i] == l.top))
    return [l.label(j) for j in hits]


def generated_sublattice(l: FiniteLattice, xs: Iterable) -> frozenset:
    """Smallest subset containing xs closed under meet and join."""
    members = {l.index(x) for x in xs}
    if not members:
        raise BadParams("generated_sublattice needs at least one element")
    while True:
        idx = np.array(sorted(members))
        grid = np.ix_(idx, idx)
        grown = members | set(l.meet_table[grid].ravel().tolist()) | set(l.join_table[grid].ravel().tolist())
        if grown == members:
            break
        members = grown
    return frozenset(l.label(i) for i in members)


# =============================================================================
# Forbidden sublattices
# =============================================================================

# search order lists generators first; the rest is forced by meets and joins
PATTERNS: Dict[str, Dict] = {
    "M5": {
        "names": ["0", "a", "b", "c", "1"],
        "covers": [("0", "a"), ("0", "b"), ("0", "c"), ("a", "1"), ("b", "1"), ("c", "1")],
        "order": ["a", "b", "c", "0", "1"],
    },
    "N5": {
        "names": ["0", "a", "b", "c", "1"],
        "covers": [("0", "a"), ("a", "c"), ("c", "1"), ("0", "b"), ("b", "1")],
        "order": ["a", "c", "b", "0", "1"],
    },
    "O6": {
        "names": ["0", "x", "y", "x'", "y'", "1"],
        "covers": [("0", "x"), ("x", "y"), ("y", "1"), ("0", "y'"), ("y'", "x'"), ("x'", "1")],
        "order": ["x", "y'", "y", "x'", "0", "1"],
    },
}


def pattern_lattice(pattern: str) -> FiniteLattice:
    try:
        shape = PATTERNS[pattern.upper()]
    except KeyError:
        raise BadParams(f"unknown sublattice pattern {pattern!r}; expected one of {sorted(PATTERNS)}") from None
    return lattice_from_covers(shape["names"], shape["covers"])


def find_forbidden_sublattice(l: FiniteLattice, pattern: str,
                              budget: int = DEFAULT_SUBLATTICE_BUDGET) -> Optional[Dict[str, str]]:
    """
    Search for a meet/join preserving injection of M5, N5 or O6 into l.

    Args:
        l: lattice to search
        pattern: "M5", "N5" or "O6"
        budget: cap on candidate assignments before SearchBudgetExceeded

    Returns:
        pattern label -> lattice label, or None when no such sublattice exists
    """
    shape = PATTERNS.get(pattern.upper())
    p = pattern_lattice(pattern)
    order = [p.index(name) for name in shape["order"]]
    k, n = p.size, l.size
    PM, PJ, Pleq = p.meet_table, p.join_table, p.leq
    LM, LJ, Lleq = l.meet_table, l.join_table, l.leq
    examined = 0

    def consistent(assign: Dict[int, int], q: int, v: int) -> bool:
        for r, w in assign.items():
            if w == v:
                return False
            if Pleq[q, r] != Lleq[v, w] or Pleq[r, q] != Lleq[w, v]:
                return False
            m, j = PM[q, r], PJ[q, r]
            if m in assign and LM[v, w] != assign[m]:
                return False
            if j in assign and LJ[v, w] != assign[j]:
                return False
        return True

    def propagate(assign: Dict[int, int]) -> Optional[Dict[int, int]]:
        assign = dict(assign)
        changed = True
        while changed:
            changed = False
            for q in range(k):
                if q in assign:
                    continue
                forced = None
                for r in assign:
                    for s in assign:
                        if PM[r, s] == q:
                            forced = LM[assign[r], assign[s]]
                        elif PJ[r, s] == q:
                            forced = LJ[assign[r], assign[s]]
                        if forced is not None:
                            break
                    if forced is not None:
                        break
                if forced is None:
                    continue
                if not consistent(assign, q, int(forced)):
                    return None
                assign[q] = int(forced)
                changed = True
        return assign

    def preserves(assign: Dict[int, int]) -> bool:
        f = np.array([assign[q] for q in range(k)])
        return bool((LM[f[:, None], f[None, :]] == f[PM]).all()
                    and (LJ[f[:, None], f[None, :]] == f[PJ]).all())

    def extend(assign: Dict[int, int]) -> Optional[Dict[int, int]]:
        nonlocal examined
        assign = propagate(assign)
        if assign is None:
            return None
        if len(assign) == k:
            return assign if preserves(assign) else None
        q = next(q for q in order if q not in assign)
        for v in range(n):
            examined += 1
            if examined > budget:
                logger.debug("sublattice search for %s stopped after %d candidates", pattern, examined)
                raise SearchBudgetExceeded(budget)
            if consistent(assign, q, v):
                found = extend({**assign, q: v})
                if found is not None:
                    return found
        return None

    found = extend({})
    logger.debug("sublattice search for %s examined %d candidates", pattern, examined)
    if found is None:
        return None
    return {p.label(q): l.label(v) for q, v in sorted(found.items())}


# =============================================================================
# Combinators
# =============================================================================

def horizontal_sum(blocks: Sequence[FiniteLattice]) -> FiniteLattice:
    """
    Paste blocks along their bounds: one shared 0, one shared 1, elements of
    distinct blocks incomparable.
    """
    if not blocks:
        raise EmptyBlockList("horizontal_sum needs at least one block")
    for block in blocks:
        if block.size < 2:
            raise BadParams("every block needs distinct bottom and top")
    if len(blocks) == 1:
        return blocks[0]

    inner = [[block.label(i) for i in range(block.size) if i not in (block.bottom, block.top)]
             for block in blocks]
    flat = [name for names in inner for name in names]
    clash = len(set(flat)) != len(flat) or {"0", "1"} & set(flat)

    def rename(k: int, block: FiniteLattice, i: int) -> str:
        if i == block.bottom:
            return "0"
        if i == block.top:
            return "1"
        return f"{k + 1}.{block.label(i)}" if clash else block.label(i)

    names = ["0"] + [rename(k, b, i) for k, b in enumerate(blocks)
                     for i in range(b.size) if i not in (b.bottom, b.top)] + ["1"]
    covers = [(rename(k, b, i), rename(k, b, j)) for k, b in enumerate(blocks) for i, j in b.covers()]
    return lattice_from_covers(names, sorted(set(covers)))


def _pair_label(x: str, y: str) -> str:
    return f"({x},{y})"


def direct_product(a: FiniteLattice, b: FiniteLattice,
                   label: Callable[[str, str], str] = _pair_label) -> FiniteLattice:
    """Componentwise order, meet and join; element (i, j) sits at i * |b| + j."""
    na, nb = a.size, b.size
    names = [label(x, y) for x in a.names for y in b.names]
    leq = np.kron(a.leq, b.leq).astype(bool)

    def combine(ta: np.ndarray, tb: np.ndarray) -> np.ndarray:
        table = ta[:, None, :, None] * nb + tb[None, :, None, :]
        return table.reshape(na * nb, na * nb)

    poset = FinitePoset(_check_labels(names), leq)
    return FiniteLattice(poset, combine(a.meet_table, b.meet_table), combine(a.join_table, b.join_table),
                         a.bottom * nb + b.bottom, a.top * nb + b.top)


def find_isomorphism(a: FiniteLattice, b: FiniteLattice) -> Optional[Dict[str, str]]:
    """Order isomorphism as a label map, or None."""
    if a.size != b.size:
        return None
    matcher = nx.algorithms.isomorphism.DiGraphMatcher(a.poset.strict_graph(), b.poset.strict_graph())
    if not matcher.is_isomorphic():
        return None
    return {a.label(i): b.label(j) for i, j in sorted(matcher.mapping.items())}


# =============================================================================
# Lattice JSON documents
# =============================================================================

def lattice_document(l: FiniteLattice, negation: Optional[Sequence[int]] = None) -> Dict:
    doc = {"elements": list(l.names), "covers": [list(pair) for pair in l.poset.cover_labels()]}
    if negation is not None:
        doc["negation"] = [l.label(j) for j in negation]
    return doc


def parse_lattice_document(data: Dict) -> Tuple[FiniteLattice, Optional[List[int]]]:
    """
    Parse {"elements": [...], "covers": [[lo, hi], ...], "negation": [...]}.

    Returns:
        (lattice, negation table as element indices or None)
    """
    if not isinstance(data, dict) or "elements" not in data:
        raise DocumentError("lattice document needs an 'elements' array")
    names = data["elements"]
    if not all(isinstance(name, str) for name in names):
        raise DocumentError("element labels must be strings")
    covers = []
    seen = set()
    for pair in data.get("covers", []):
        if not isinstance(pair, (list, tuple)) or len(pair) != 2:
            raise DocumentError(f"cover entry {pair!r} is not a two-element array")
        key = tuple(pair)
        if key in seen:
            raise DocumentError(f"duplicate cover {list(key)}")
        seen.add(key)
        covers.append(key)
    lattice = lattice_from_covers(names, covers)
    negation = data.get("negation")
    if negation is None:
        return lattice, None
    if len(negation) != lattice.size:
        raise DocumentError(f"negation has {len(negation)} entries for {lattice.size} elements")
    return lattice, [lattice.index(name) for name in negation]


def load_document(path: Union[str, Path]) -> Tuple[FiniteLattice, Optional[List[int]]]:
    path = Path(path)
    try:
        with open(path, "r", encoding="utf-8") as f:
            data = json.load(f)
    except json.JSONDecodeError as e:
        raise DocumentError(f"{path}: {e}") from e
    return parse_lattice_document(data)


if __name__ == "__main__":
    m5 = lattice_from_covers(["0", "a", "b", "c", "1"],
                             [("0", "a"), ("0", "b"), ("0", "c"), ("a", "1"), ("b", "1"), ("c", "1")])
    for verdict in property_scan(m5):
        print(f"[OrderCore] {verdict.name}: {verdict.holds} {verdict.witness or ''}")
    print(f"[OrderCore] N5 inside M5: {find_forbidden_sublattice(m5, 'N5')}")
