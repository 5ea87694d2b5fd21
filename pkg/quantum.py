"""
Quantum Module.

Compatibility in orthomodular logics, subspace lattices of GF(2)^n with the
orthogonal complement, the order of 2x2 effects, and the MacNeille completion
of a poset with involution.
"""
import json
import logging
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Dict, FrozenSet, List, Optional, Tuple, Union

import numpy as np

from logic_analysis import LogicStructure, NegationMap, law_report
from order_core import (
    BadParams,
    FiniteLattice,
    FinitePoset,
    LatticeError,
    SearchBudgetExceeded,
    lattice_from_poset,
    poset_from_matrix,
)

logger = logging.getLogger(__name__)

MAX_GF2_DIMENSION = 4
DEFAULT_MACNEILLE_LIMIT = 20


class NotOrthomodular(LatticeError):
    pass


class DimensionTooLarge(LatticeError, ValueError):
    pass


class InvolutionViolated(LatticeError):
    pass


class InvalidEffect(LatticeError, ValueError):
    pass


# =============================================================================
# Compatibility
# =============================================================================

def _require_orthomodular(s: LogicStructure):
    if not law_report(s).holds("orthomodularity"):
        raise NotOrthomodular(f"{s.name or 'structure'} violates x <= y implies x | (x' & y) = y")


def are_orthogonal(s: LogicStructure, x, y) -> bool:
    """x <= y'."""
    l = s.lattice
    return bool(l.leq[l.index(x), s.neg[l.index(y)]])


def is_compatible(s: LogicStructure, x, y) -> bool:
    """x = (x & y) | (x & y') and y = (y & x) | (y & x')."""
    _require_orthomodular(s)
    l = s.lattice
    M, J, N = l.meet_table, l.join_table, s.neg.table
    i, j = l.index(x), l.index(y)
    return bool(J[M[i, j], M[i, N[j]]] == i and J[M[j, i], M[j, N[i]]] == j)


def compatible_decomposition(s: LogicStructure, x, y) -> Optional[Tuple[str, str, str]]:
    """
    Split a compatible pair into pairwise orthogonal parts.

    Returns:
        (u, v, w) = (x & y', x & y, x' & y) with u | v = x and v | w = y,
        or None when x and y are not compatible
    """
    if not is_compatible(s, x, y):
        return None
    l = s.lattice
    M, N = l.meet_table, s.neg.table
    i, j = l.index(x), l.index(y)
    u, v, w = M[i, N[j]], M[i, j], M[N[i], j]
    return l.label(u), l.label(v), l.label(w)


# =============================================================================
# Subspaces of GF(2)^n
# =============================================================================

def _lead(v: int) -> int:
    return v.bit_length() - 1


def _rref(vectors, n: int) -> Tuple[int, ...]:
    """Reduced row echelon basis; rows are bitmasks, most significant bit is coordinate 1."""
    rows: List[int] = []
    for v in vectors:
        for r in rows:
            if v >> _lead(r) & 1:
                v ^= r
        if not v:
            continue
        rows = [r ^ v if r >> _lead(v) & 1 else r for r in rows]
        rows.append(v)
    return tuple(sorted(rows, reverse=True))


@dataclass(frozen=True)
class GF2Subspace:
    basis: Tuple[int, ...]
    dimension: int  # ambient n

    @classmethod
    def span(cls, vectors, n: int) -> "GF2Subspace":
        return cls(_rref(vectors, n), n)

    @property
    def rank(self) -> int:
        return len(self.basis)

    def vectors(self) -> FrozenSet[int]:
        out = {0}
        for row in self.basis:
            out |= {v ^ row for v in out}
        return frozenset(out)

    def orthocomplement(self) -> "GF2Subspace":
        n = self.dimension
        perp = [v for v in range(1, 1 << n)
                if all(bin(v & row).count("1") % 2 == 0 for row in self.basis)]
        return GF2Subspace.span(perp, n)

    def label(self) -> str:
        if not self.basis:
            return "0"
        return "<" + ",".join(format(row, f"0{self.dimension}b") for row in self.basis) + ">"


def gf2_subspaces(n: int) -> List[GF2Subspace]:
    if n < 1:
        raise BadParams(f"GF(2)^n needs n >= 1, got {n}")
    if n > MAX_GF2_DIMENSION:
        raise DimensionTooLarge(f"GF(2)^{n} exceeds the supported dimension {MAX_GF2_DIMENSION}")
    seen = {GF2Subspace((), n)}
    frontier = list(seen)
    while frontier:
        grown = []
        for space in frontier:
            members = space.vectors()
            for v in range(1, 1 << n):
                if v in members:
                    continue
                bigger = GF2Subspace.span(space.basis + (v,), n)
                if bigger not in seen:
                    seen.add(bigger)
                    grown.append(bigger)
        frontier = grown
    return sorted(seen, key=lambda s: (s.rank, tuple(-r for r in s.basis)))


def gf2_subspace_lattice(n: int) -> Tuple[FiniteLattice, NegationMap]:
    """
    All subspaces of GF(2)^n ordered by inclusion, with the orthogonal
    complement under the standard dot product as negation.
    """
    spaces = gf2_subspaces(n)
    members = [space.vectors() for space in spaces]
    leq = np.array([[a <= b for b in members] for a in members], dtype=bool)
    lattice = lattice_from_poset(poset_from_matrix([s.label() for s in spaces], leq))
    position = {space: i for i, space in enumerate(spaces)}
    negation = NegationMap([position[space.orthocomplement()] for space in spaces])
    logger.debug("GF(2)^%d has %d subspaces", n, len(spaces))
    return lattice, negation


# =============================================================================
# Effects on a qubit
# =============================================================================

def _psd(a11: Fraction, a12: Fraction, a22: Fraction) -> bool:
    """Symmetric 2x2 matrix is positive semidefinite iff trace >= 0 and det >= 0."""
    return a11 + a22 >= 0 and a11 * a22 - a12 * a12 >= 0


@dataclass(frozen=True)
class Effect2:
    """Real symmetric 2x2 matrix [[a11, a12], [a12, a22]] with 0 <= A <= I."""
    a11: Fraction
    a12: Fraction
    a22: Fraction

    def __post_init__(self):
        for name in ("a11", "a12", "a22"):
            try:
                object.__setattr__(self, name, Fraction(getattr(self, name)))
            except (ValueError, TypeError, ZeroDivisionError) as e:
                raise InvalidEffect(f"{name} is not a rational: {getattr(self, name)!r}") from e

    def is_valid(self) -> bool:
        return _psd(self.a11, self.a12, self.a22) and _psd(1 - self.a11, -self.a12, 1 - self.a22)

    def to_json(self) -> Dict[str, str]:
        return {"a11": str(self.a11), "a12": str(self.a12), "a22": str(self.a22)}

    @classmethod
    def from_json(cls, data: Dict[str, str]) -> "Effect2":
        try:
            effect = cls(data["a11"], data["a12"], data["a22"])
        except KeyError as e:
            raise InvalidEffect(f"effect is missing entry {e.args[0]}") from None
        if not effect.is_valid():
            raise InvalidEffect(f"{effect.to_json()} is not between 0 and I")
        return effect


ZERO = Effect2(0, 0, 0)
IDENTITY = Effect2(1, 0, 1)


def effect_leq(a: Effect2, b: Effect2) -> bool:
    """B - A positive semidefinite."""
    return _psd(b.a11 - a.a11, b.a12 - a.a12, b.a22 - a.a22)


def effect_negation(a: Effect2) -> Effect2:
    if not a.is_valid():
        raise InvalidEffect(f"{a.to_json()} is not between 0 and I")
    return Effect2(1 - a.a11, -a.a12, 1 - a.a22)


def effect_fixture() -> Dict[str, Effect2]:
    """Four effects with no infimum for C, D plus bounds and the negations needed for closure."""
    h, q = Fraction(1, 2), Fraction(1, 4)
    a = Effect2(h, 0, h)
    b = Effect2(Fraction(3, 4), 0, q)
    c = Effect2(h, 0, q)
    d = Effect2(Fraction(7, 16), Fraction(1, 8), Fraction(3, 16))
    return {
        "O": ZERO, "C": c, "D": d, "A": a, "B": b,
        "I-B": effect_negation(b), "I-C": effect_negation(c), "I-D": effect_negation(d),
        "I": IDENTITY,
    }


# =============================================================================
# MacNeille completion
# =============================================================================

@dataclass(frozen=True, eq=False)
class InvolutedPoset:
    poset: FinitePoset
    inv: NegationMap

    def __post_init__(self):
        if self.inv.size != self.poset.size:
            raise InvolutionViolated("involution table does not cover the carrier")
        N = self.inv.table
        back = np.flatnonzero(N[N] != np.arange(self.poset.size))
        if back.size:
            x = self.poset.label(back[0])
            raise InvolutionViolated(f"{x}'' = {self.poset.label(N[N[back[0]]])} differs from {x}")
        leq = self.poset.leq
        bad = np.argwhere(leq & ~leq[np.ix_(N, N)].T)
        if bad.size:
            x, y = (self.poset.label(i) for i in bad[0])
            raise InvolutionViolated(f"{x} <= {y} but not {y}' <= {x}'")


def parse_effect_document(data: Dict) -> Dict[str, Effect2]:
    """{"effects": {name: {"a11": "p/q", "a12": "p/q", "a22": "p/q"}, ...}} in listed order."""
    if not isinstance(data, dict) or not isinstance(data.get("effects"), dict):
        raise InvalidEffect("effect document needs an 'effects' object")
    return {name: Effect2.from_json(entry) for name, entry in data["effects"].items()}


def load_effects(path: Union[str, Path]) -> Dict[str, Effect2]:
    with open(path, "r", encoding="utf-8") as f:
        try:
            data = json.load(f)
        except json.JSONDecodeError as e:
            raise InvalidEffect(f"{path}: {e}") from e
    return parse_effect_document(data)


def effect_poset(effects: Dict[str, Effect2]) -> InvolutedPoset:
    """Effects ordered by effect_leq with A' = I - A; the set must be closed under it."""
    names = list(effects)
    values = [effects[name] for name in names]
    leq = np.array([[effect_leq(a, b) for b in values] for a in values], dtype=bool)
    position = {value: i for i, value in enumerate(values)}
    table = []
    for name, value in zip(names, values):
        negated = effect_negation(value)
        if negated not in position:
            raise InvolutionViolated(f"I - {name} is missing from the effect set")
        table.append(position[negated])
    return InvolutedPoset(poset_from_matrix(names, leq), NegationMap(table))


def _cut_label(p: FinitePoset, cut: FrozenSet[int]) -> str:
    members = sorted(cut)
    sub = p.leq[np.ix_(members, members)] if members else np.zeros((0, 0), dtype=bool)
    # maximal members: nothing else in the cut lies above them
    maximal = [m for k, m in enumerate(members) if sub[k].sum() == 1]
    if len(maximal) == 1:
        return p.label(maximal[0])
    return "sup{" + ",".join(p.label(m) for m in maximal) + "}"


def macneille_completion(p: InvolutedPoset, limit: int = DEFAULT_MACNEILLE_LIMIT,
                         name: str = "") -> LogicStructure:
    """
    Lattice of cuts X = l(u(X)) ordered by inclusion.

    Cuts are exactly the intersections of principal down-sets, the whole
    carrier included. The negation is X' = {a : a <= b' for every b in X}.
    """
    poset = p.poset
    n = poset.size
    if n > limit:
        raise SearchBudgetExceeded(limit)
    leq = poset.leq
    everything = frozenset(range(n))
    principal = [frozenset(np.flatnonzero(leq[:, x]).tolist()) for x in range(n)]

    cuts = {everything, *principal}
    frontier = list(cuts)
    while frontier:
        grown = []
        for a in frontier:
            for b in principal:
                c = a & b
                if c not in cuts:
                    cuts.add(c)
                    grown.append(c)
        frontier = grown
    ordered = sorted(cuts, key=lambda cut: (len(cut), sorted(cut)))
    position = {cut: i for i, cut in enumerate(ordered)}
    logger.debug("completion of %d elements has %d cuts", n, len(ordered))

    N = p.inv.table
    table = []
    for cut in ordered:
        negated = everything
        for b in cut:
            negated = negated & principal[N[b]]
        table.append(position[negated])

    relation = np.array([[a <= b for b in ordered] for a in ordered], dtype=bool)
    labels = [_cut_label(poset, cut) for cut in ordered]
    lattice = lattice_from_poset(poset_from_matrix(labels, relation))
    return LogicStructure(lattice, NegationMap(table), name or "MacNeille completion")


if __name__ == "__main__":
    fixture = effect_fixture()
    print(f"[Quantum] C <= A: {effect_leq(fixture['C'], fixture['A'])}, "
          f"C <= D: {effect_leq(fixture['C'], fixture['D'])}")
    completed = macneille_completion(effect_poset(fixture))
    print(f"[Quantum] completion: {list(completed.lattice.names)}")
    lattice, negation = gf2_subspace_lattice(2)
    print(f"[Quantum] GF(2)^2 subspaces: {list(lattice.names)}")
