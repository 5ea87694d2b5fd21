"""
Catalog Module.

Named finite structures with their negations and the classification flags
each one is known to have:
- lattices without negation: M5, N5, L7, F2
- logics: M5 and O6 variants, CUBE(n), MO(n), MO1, BN4, LUK(n), GOEDEL(n),
  RM(2n+1), G6, G8, G14, LSTAR_GRID(n), REGISTER2, GF2(n), TEMPERATURE
- posets with involution for completion: P6, EFFECTS

Names follow the grammar NAME or NAME(k), case-insensitive.
"""
import logging
import re
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Tuple

import numpy as np

from fuzzy_functions import DEFAULT_CLOSURE_BUDGET, temperature_logic
from logic_analysis import LogicStructure, NegationMap, classify, law_report, structure_from_labels
from order_core import (
    BadParams,
    FiniteLattice,
    LatticeError,
    chain,
    find_forbidden_sublattice,
    horizontal_sum,
    lattice_document,
    lattice_from_covers,
    lattice_from_poset,
    poset_from_covers,
    poset_from_matrix,
    property_scan,
)
from quantum import InvolutedPoset, effect_fixture, effect_poset, gf2_subspace_lattice
from residuation import build_tnorm_logic, format_rational, fusion_residuum

logger = logging.getLogger(__name__)

_NAME = re.compile(r"^\s*([A-Za-z][A-Za-z0-9_]*)\s*(?:\(\s*(\d+)\s*\))?\s*$")


class UnknownName(LatticeError, KeyError):
    def __init__(self, name: str):
        super().__init__(f"no catalog entry named {name!r}")
        self.name = name

    def __str__(self):
        return self.args[0]


@dataclass(frozen=True, eq=False)
class CatalogEntry:
    name: str
    params: Tuple[int, ...]
    lattice: FiniteLattice
    structure: Optional[LogicStructure] = None
    expected: Dict[str, bool] = field(default_factory=dict)
    expected_label: Optional[str] = None
    expected_witnesses: Dict[str, Tuple[str, ...]] = field(default_factory=dict)
    # fusion / implication as computed and as published, both in label form
    operations: Dict[str, List[List[str]]] = field(default_factory=dict)
    reference: Dict[str, List[List[str]]] = field(default_factory=dict)

    @property
    def negation(self) -> Optional[List[int]]:
        return None if self.structure is None else self.structure.neg.table.tolist()


# =============================================================================
# Reference tables, rows and columns in carrier order
# =============================================================================

BN4_FUSION = [
    ["f", "f", "f", "f"],
    ["f", "f", "n", "n"],
    ["f", "n", "b", "t"],
    ["f", "n", "t", "t"],
]
BN4_IMPLICATION = [
    ["t", "t", "t", "t"],
    ["n", "t", "n", "t"],
    ["f", "n", "b", "t"],
    ["f", "n", "f", "t"],
]
LUK3_FUSION = [
    ["0", "0", "0"],
    ["0", "0", "1/2"],
    ["0", "1/2", "1"],
]
LUK3_IMPLICATION = [
    ["1", "1", "1"],
    ["1/2", "1", "1"],
    ["0", "1/2", "1"],
]
G3_FUSION = [
    ["0", "0", "0"],
    ["0", "1/2", "1/2"],
    ["0", "1/2", "1"],
]
G3_IMPLICATION = [
    ["1", "1", "1"],
    ["0", "1", "1"],
    ["0", "1/2", "1"],
]
RM3_FUSION = [
    ["-1", "-1", "-1"],
    ["-1", "0", "1"],
    ["-1", "1", "1"],
]
RM3_IMPLICATION = [
    ["1", "1", "1"],
    ["-1", "0", "1"],
    ["-1", "-1", "1"],
]

BOOLEAN_FLAGS = {
    "fuzzy_negation": True, "non_contradictory": True, "tertium": True, "involutive": True,
    "distributive": True, "orthomodular": True, "paraconsistent": True, "complemented": True,
    "conj_de_morgan": True, "boolean": True, "intuitionistic": False,
}


def _labels(l: FiniteLattice, table: np.ndarray) -> List[List[str]]:
    return [[l.label(j) for j in row] for row in table]


# =============================================================================
# Builders
# =============================================================================

def _m5() -> CatalogEntry:
    l = lattice_from_covers(["0", "a", "b", "c", "1"],
                            [("0", "a"), ("0", "b"), ("0", "c"), ("a", "1"), ("b", "1"), ("c", "1")])
    s = structure_from_labels(l, ["1", "c", "0", "a", "0"], "M5")
    expected = {"fuzzy_negation": True, "non_contradictory": True, "involutive": False,
                "conj_de_morgan": False, "distributive": False, "modular": True,
                "tertium": False, "paraconsistent": False, "orthomodular": False}
    return CatalogEntry("M5", (), l, s, expected, "logic",
                        expected_witnesses={"conjunctive-de-morgan": ("a", "b")})


def _n5() -> CatalogEntry:
    l = lattice_from_covers(["0", "a", "b", "c", "1"],
                            [("0", "a"), ("a", "c"), ("c", "1"), ("0", "b"), ("b", "1")])
    return CatalogEntry("N5", (), l, expected={"distributive": False, "modular": False})


def _hexagon() -> FiniteLattice:
    return lattice_from_covers(["0", "x", "y", "x'", "y'", "1"],
                               [("0", "x"), ("x", "y"), ("y", "1"), ("0", "y'"), ("y'", "x'"), ("x'", "1")])


def _o6() -> CatalogEntry:
    l = _hexagon()
    s = structure_from_labels(l, ["1", "x'", "y'", "x", "y", "0"], "O6")
    expected = {"fuzzy_negation": True, "non_contradictory": True, "complemented": True,
                "involutive": True, "tertium": True, "orthomodular": False,
                "paraconsistent": False, "distributive": False, "modular": False}
    return CatalogEntry("O6", (), l, s, expected, "logic",
                        expected_witnesses={"orthomodularity": ("x", "y")})


def _o6_pseudo() -> CatalogEntry:
    l = _hexagon()
    s = structure_from_labels(l, ["1", "x'", "x'", "y", "y", "0"], "O6_PSEUDO")
    expected = {"fuzzy_negation": True, "non_contradictory": True, "complemented": True,
                "involutive": False, "paraconsistent": False, "orthomodular": False}
    return CatalogEntry("O6_PSEUDO", (), l, s, expected, "logic")


def _l7() -> CatalogEntry:
    l = lattice_from_covers(
        ["0", "x", "y'", "z", "y", "x'", "1"],
        [("0", "x"), ("x", "y"), ("0", "z"), ("z", "y"), ("z", "x'"), ("0", "y'"), ("y'", "x'"),
         ("y", "1"), ("x'", "1")])
    return CatalogEntry("L7", (), l, expected={"distributive": False, "modular": False})


def _f2() -> CatalogEntry:
    l = lattice_from_covers(["x&y", "x", "y", "x|y"],
                            [("x&y", "x"), ("x&y", "y"), ("x", "x|y"), ("y", "x|y")])
    return CatalogEntry("F2", (), l, expected={"distributive": True, "modular": True})


def _cube(n: int) -> CatalogEntry:
    if not 1 <= n <= 6:
        raise BadParams(f"CUBE(n) needs 1 <= n <= 6, got {n}")
    size = 1 << n
    names = [format(m, f"0{n}b") for m in range(size)]
    covers = [(names[m], names[m | 1 << k]) for m in range(size) for k in range(n) if not m >> k & 1]
    l = lattice_from_covers(names, covers)
    s = LogicStructure(l, NegationMap([(size - 1) ^ m for m in range(size)]), f"CUBE({n})")
    return CatalogEntry(f"CUBE({n})", (n,), l, s, dict(BOOLEAN_FLAGS), "Boolean logic")


def _mo_block(j: int) -> FiniteLattice:
    plus, minus = f"p{j}+", f"p{j}-"
    return lattice_from_covers(["0", plus, minus, "1"], [("0", plus), ("0", minus), (plus, "1"), (minus, "1")])


def _mo(n: int) -> CatalogEntry:
    if n < 1:
        raise BadParams(f"MO(n) needs n >= 1, got {n}")
    l = horizontal_sum([_mo_block(j) for j in range(1, n + 1)])
    negation = {"0": "1", "1": "0"}
    for j in range(1, n + 1):
        negation[f"p{j}+"] = f"p{j}-"
        negation[f"p{j}-"] = f"p{j}+"
    s = structure_from_labels(l, negation, f"MO({n})")
    if n == 1:
        return CatalogEntry("MO(1)", (1,), l, s, dict(BOOLEAN_FLAGS), "Boolean logic")
    expected = {"fuzzy_negation": True, "non_contradictory": True, "tertium": True, "involutive": True,
                "orthomodular": True, "paraconsistent": True, "distributive": False, "modular": True,
                "boolean": False}
    return CatalogEntry(f"MO({n})", (n,), l, s, expected, "quantum logic")


def _bn4_lattice() -> FiniteLattice:
    return lattice_from_covers(["f", "n", "b", "t"], [("f", "n"), ("f", "b"), ("n", "t"), ("b", "t")])


def _mo1() -> CatalogEntry:
    l = _bn4_lattice()
    s = structure_from_labels(l, {"f": "t", "n": "b", "b": "n", "t": "f"}, "MO1")
    return CatalogEntry("MO1", (), l, s, dict(BOOLEAN_FLAGS), "Boolean logic")


def _bn4() -> CatalogEntry:
    l = _bn4_lattice()
    s = structure_from_labels(l, {"f": "t", "n": "n", "b": "b", "t": "f"}, "BN4")
    expected = {"fuzzy_negation": True, "involutive": True, "non_contradictory": False,
                "tertium": False, "conj_de_morgan": True, "distributive": True, "paraconsistent": True}
    fusion = np.array([[l.index(x) for x in row] for row in BN4_FUSION])
    implication = fusion_residuum(l, fusion)
    operations = {"fusion": _labels(l, fusion)}
    if implication is not None:
        operations["implication"] = _labels(l, implication)
    return CatalogEntry("BN4", (), l, s, expected, "paraconsistent logic", operations=operations,
                        reference={"fusion": BN4_FUSION, "implication": BN4_IMPLICATION})


def _tnorm_entry(kind: str, prefix: str, n: int) -> CatalogEntry:
    logic = build_tnorm_logic(kind, n)
    s = logic.structure
    operations = {"fusion": logic.fusion_labels(), "implication": logic.implication_labels()}
    return CatalogEntry(f"{prefix}({n})", (n,), s.lattice, s, operations=operations)


def _luk(n: int) -> CatalogEntry:
    entry = _tnorm_entry("Lukasiewicz", "LUK", n)
    if n == 1:
        return replace(entry, expected=dict(BOOLEAN_FLAGS), expected_label="Boolean logic")
    expected = {"fuzzy_negation": True, "involutive": True, "conj_de_morgan": True, "distributive": True,
                "non_contradictory": False, "tertium": False}
    reference = {"fusion": LUK3_FUSION, "implication": LUK3_IMPLICATION} if n == 2 else {}
    return replace(entry, expected=expected, reference=reference)


def _goedel(n: int) -> CatalogEntry:
    entry = _tnorm_entry("Goedel", "GOEDEL", n)
    if n == 1:
        return replace(entry, expected=dict(BOOLEAN_FLAGS), expected_label="Boolean logic")
    expected = {"fuzzy_negation": True, "non_contradictory": True, "distributive": True,
                "tertium": False, "involutive": False, "intuitionistic": True}
    reference = {"fusion": G3_FUSION, "implication": G3_IMPLICATION} if n == 2 else {}
    return replace(entry, expected=expected, expected_label="intuitionistic logic", reference=reference)


def _rm(size: int) -> CatalogEntry:
    if size < 3 or size % 2 == 0:
        raise BadParams(f"RM(k) needs an odd carrier size k >= 3, got {size}")
    k = size // 2
    values = list(range(-k, k + 1))
    l = chain([str(v) for v in values])
    s = LogicStructure(l, NegationMap([values.index(-v) for v in values]), f"RM({size})")

    def fusion(a: int, b: int) -> int:
        return min(a, b) if a <= -b else max(a, b)

    def arrow(a: int, b: int) -> int:
        return max(-a, b) if a <= b else min(-a, b)

    operations = {
        "fusion": [[str(fusion(a, b)) for b in values] for a in values],
        "implication": [[str(arrow(a, b)) for b in values] for a in values],
    }
    reference = {"fusion": RM3_FUSION, "implication": RM3_IMPLICATION} if size == 3 else {}
    expected = {"fuzzy_negation": True, "involutive": True, "tertium": False,
                "non_contradictory": False, "distributive": True}
    return CatalogEntry(f"RM({size})", (size,), l, s, expected, operations=operations, reference=reference)


_PQL_FLAGS = {"fuzzy_negation": True, "paraconsistent": True, "orthomodular": False,
              "involutive": True, "non_contradictory": False}


def _g6() -> CatalogEntry:
    l = lattice_from_covers(["0", "x", "y", "y'", "x'", "1"],
                            [("0", "x"), ("x", "y"), ("x", "y'"), ("y", "x'"), ("y'", "x'"), ("x'", "1")])
    s = structure_from_labels(l, {"0": "1", "x": "x'", "y": "y'", "y'": "y", "x'": "x", "1": "0"}, "G6")
    return CatalogEntry("G6", (), l, s, dict(_PQL_FLAGS), "paraconsistent logic")


def _g8() -> CatalogEntry:
    l = lattice_from_covers(
        ["0", "f", "x", "y'", "y", "x'", "f'", "1"],
        [("0", "f"), ("f", "x"), ("f", "y'"), ("x", "y"), ("y'", "x'"), ("y", "f'"), ("x'", "f'"), ("f'", "1")])
    negation = {"0": "1", "f": "f'", "x": "x'", "y": "y'", "y'": "y", "x'": "x", "f'": "f", "1": "0"}
    s = structure_from_labels(l, negation, "G8")
    return CatalogEntry("G8", (), l, s, dict(_PQL_FLAGS), "paraconsistent logic",
                        expected_witnesses={"orthomodularity": ("f", "1")})


def _g14() -> CatalogEntry:
    atoms = ["a", "b", "c", "d", "e"]
    names = ["0", "f"] + atoms + [p + "'" for p in atoms] + ["f'", "1"]
    covers = [("0", "f")] + [("f", p) for p in atoms] + [(p + "'", "f'") for p in atoms] + [("f'", "1")]
    # pentagon: each atom sits under the coatoms of its two neighbours
    for k, p in enumerate(atoms):
        for q in (atoms[k - 1], atoms[(k + 1) % 5]):
            covers.append((p, q + "'"))
    l = lattice_from_covers(names, covers)
    negation = {"0": "1", "1": "0", "f": "f'", "f'": "f"}
    for p in atoms:
        negation[p], negation[p + "'"] = p + "'", p
    s = structure_from_labels(l, negation, "G14")
    return CatalogEntry("G14", (), l, s, dict(_PQL_FLAGS), "paraconsistent logic")


def _lstar_grid(n: int) -> CatalogEntry:
    if n < 1:
        raise BadParams(f"LSTAR_GRID(n) needs n >= 1, got {n}")
    points = [(i, j) for i in range(n + 1) for j in range(n + 1 - i)]
    names = [f"({format_rational(Fraction(i, n))},{format_rational(Fraction(j, n))})" for i, j in points]
    leq = np.array([[p[0] <= q[0] and p[1] >= q[1] for q in points] for p in points], dtype=bool)
    l = lattice_from_poset(poset_from_matrix(names, leq))
    s = LogicStructure(l, NegationMap([points.index((j, i)) for i, j in points]), f"LSTAR_GRID({n})")
    expected = {"fuzzy_negation": True, "distributive": True, "involutive": True, "conj_de_morgan": True,
                "non_contradictory": False, "tertium": False}
    return CatalogEntry(f"LSTAR_GRID({n})", (n,), l, s, expected)


_REGISTER_ATOMS = ["p00", "p01", "p10", "p11"]
_REGISTER_PAIRS = {0b0011: "u", 0b0101: "v", 0b1001: "w", 0b0110: "x", 0b1010: "y", 0b1100: "z"}


def _register_label(mask: int) -> str:
    if mask == 0:
        return "0"
    if mask == 0b1111:
        return "1"
    ones = [k for k in range(4) if mask >> k & 1]
    if len(ones) == 1:
        return _REGISTER_ATOMS[ones[0]]
    if len(ones) == 2:
        return _REGISTER_PAIRS[mask]
    missing = next(k for k in range(4) if not mask >> k & 1)
    return _REGISTER_ATOMS[missing] + "'"


def _register2() -> CatalogEntry:
    masks = sorted(range(16), key=lambda m: (bin(m).count("1"), m))
    names = [_register_label(m) for m in masks]
    covers = [(_register_label(m), _register_label(m | 1 << k)) for m in masks for k in range(4) if not m >> k & 1]
    l = lattice_from_covers(names, covers)
    s = structure_from_labels(l, {_register_label(m): _register_label(0b1111 ^ m) for m in masks}, "REGISTER2")
    return CatalogEntry("REGISTER2", (), l, s, dict(BOOLEAN_FLAGS), "Boolean logic")


def _gf2(n: int) -> CatalogEntry:
    l, negation = gf2_subspace_lattice(n)
    s = LogicStructure(l, negation, f"GF2({n})")
    if n == 1:
        return CatalogEntry("GF2(1)", (1,), l, s, dict(BOOLEAN_FLAGS), "Boolean logic")
    expected = {"fuzzy_negation": True, "involutive": True, "modular": True,
                "non_contradictory": False, "distributive": False}
    return CatalogEntry(f"GF2({n})", (n,), l, s, expected)


def _temperature(budget: int = DEFAULT_CLOSURE_BUDGET) -> CatalogEntry:
    logic = temperature_logic(budget)
    s = logic.structure
    expected = {"fuzzy_negation": True, "non_contradictory": False, "orthomodular": False,
                "distributive": True, "involutive": True}
    return CatalogEntry("TEMPERATURE", (), s.lattice, s, expected)


# name -> (builder, default parameter or None when the entry takes none)
_BUILDERS: Dict[str, Tuple[Callable[..., CatalogEntry], Optional[int]]] = {
    "M5": (_m5, None),
    "N5": (_n5, None),
    "O6": (_o6, None),
    "O6_PSEUDO": (_o6_pseudo, None),
    "L7": (_l7, None),
    "F2": (_f2, None),
    "CUBE": (_cube, 3),
    "MO": (_mo, 2),
    "MO1": (_mo1, None),
    "BN4": (_bn4, None),
    "LUK": (_luk, 2),
    "GOEDEL": (_goedel, 2),
    "RM": (_rm, 3),
    "G6": (_g6, None),
    "G8": (_g8, None),
    "G14": (_g14, None),
    "LSTAR_GRID": (_lstar_grid, 2),
    "REGISTER2": (_register2, None),
    "GF2": (_gf2, 2),
    "TEMPERATURE": (_temperature, None),
}

SELFTEST_SUITE = (
    "M5", "N5", "O6", "O6_PSEUDO", "L7", "F2",
    "CUBE(1)", "CUBE(2)", "CUBE(3)", "CUBE(4)",
    "MO(1)", "MO(2)", "MO(3)", "MO(4)", "MO(5)", "MO1",
    "BN4", "LUK(1)", "LUK(2)", "LUK(3)", "GOEDEL(2)", "GOEDEL(3)", "RM(3)", "RM(5)",
    "G6", "G8", "G14", "LSTAR_GRID(2)", "LSTAR_GRID(3)", "REGISTER2", "GF2(2)", "GF2(3)",
    "TEMPERATURE",
)


def entry_names() -> List[str]:
    return list(_BUILDERS)


def parse_name(text: str) -> Tuple[str, Optional[int]]:
    match = _NAME.match(text)
    if match is None:
        raise UnknownName(text)
    key = match.group(1).upper()
    if key not in _BUILDERS and key not in _POSETS:
        raise UnknownName(text)
    return key, None if match.group(2) is None else int(match.group(2))


def build(name: str, param: Optional[int] = None, closure_budget: int = DEFAULT_CLOSURE_BUDGET) -> CatalogEntry:
    """
    Build a catalog entry.

    Args:
        name: NAME or NAME(k), case-insensitive
        param: parameter when name carries none
        closure_budget: cap on the TEMPERATURE closure

    Raises:
        UnknownName, BadParams
    """
    key, inline = parse_name(name)
    if key not in _BUILDERS:
        raise UnknownName(name)
    if inline is not None and param is not None and inline != param:
        raise BadParams(f"{name} given with a second parameter {param}")
    param = inline if inline is not None else param
    builder, default = _BUILDERS[key]
    if default is None:
        if param is not None:
            raise BadParams(f"{key} takes no parameter")
        entry = _temperature(closure_budget) if key == "TEMPERATURE" else builder()
    else:
        entry = builder(default if param is None else param)
    logger.debug("built %s: %d elements", entry.name, entry.lattice.size)
    return entry


def export_entry(entry: CatalogEntry) -> Dict:
    doc = {"name": entry.name}
    doc.update(lattice_document(entry.lattice, entry.negation))
    return doc


# =============================================================================
# Posets with involution
# =============================================================================

def _p6() -> InvolutedPoset:
    names = ["0", "a", "b", "a'", "b'", "1"]
    covers = [("0", "a"), ("0", "b"), ("a", "a'"), ("a", "b'"), ("b", "a'"), ("b", "b'"), ("a'", "1"), ("b'", "1")]
    poset = poset_from_covers(names, covers)
    negation = {"0": "1", "a": "a'", "b": "b'", "a'": "a", "b'": "b", "1": "0"}
    return InvolutedPoset(poset, NegationMap([poset.index(negation[x]) for x in names]))


_POSETS: Dict[str, Callable[[], InvolutedPoset]] = {
    "P6": _p6,
    "EFFECTS": lambda: effect_poset(effect_fixture()),
}


def named_poset(name: str) -> InvolutedPoset:
    """Non-lattice posets with involution: P6 (two atoms under two coatoms) and EFFECTS."""
    key, param = parse_name(name)
    if key not in _POSETS or param is not None:
        raise UnknownName(name)
    return _POSETS[key]()


# =============================================================================
# Selftest
# =============================================================================

@dataclass
class SelftestResult:
    name: str
    passed: bool
    diagnostics: List[str] = field(default_factory=list)
    entry: Optional[CatalogEntry] = field(default=None, repr=False, compare=False)  # None on error

    def to_dict(self) -> Dict:
        return {"name": self.name, "passed": self.passed, "diagnostics": list(self.diagnostics)}


def check_entry(entry: CatalogEntry, budget: Optional[int] = None) -> SelftestResult:
    """Compare an entry against its expected flags, label, witnesses and tables."""
    problems = []
    scan = property_scan(entry.lattice)
    flags = {"distributive": scan.holds("distributive"), "modular": scan.holds("modular")}
    laws = None
    if entry.structure is not None:
        laws = law_report(entry.structure)
        result = classify(entry.structure, {"laws": laws, "lattice": scan})
        flags.update(result.flags)
        if entry.expected_label is not None and result.label != entry.expected_label:
            problems.append(f"label: expected {entry.expected_label!r}, got {result.label!r}")
    for flag, want in entry.expected.items():
        if flags.get(flag) != want:
            problems.append(f"{flag}: expected {want}, got {flags.get(flag)}")

    for law, elements in entry.expected_witnesses.items():
        verdict = laws[law] if laws is not None and law in laws else None
        got = verdict.witness.elements if verdict is not None and verdict.witness else None
        if got != elements:
            problems.append(f"{law} witness: expected {elements}, got {got}")

    for table, want in entry.reference.items():
        got = entry.operations.get(table)
        if got != want:
            problems.append(f"{table} table: expected {want}, got {got}")
    if "fusion" in entry.operations and "implication" in entry.operations:
        l = entry.lattice
        fusion = np.array([[l.index(x) for x in row] for row in entry.operations["fusion"]])
        arrow = fusion_residuum(l, fusion)
        if arrow is None or _labels(l, arrow) != entry.operations["implication"]:
            problems.append("implication is not the residuum of fusion")

    if entry.lattice.size <= 64:
        kwargs = {} if budget is None else {"budget": budget}
        forbidden = any(find_forbidden_sublattice(entry.lattice, p, **kwargs) is not None for p in ("M5", "N5"))
        if scan.holds("distributive") == forbidden:
            problems.append("distributivity disagrees with M5/N5 sublattice search")

    return SelftestResult(entry.name, not problems, problems, entry)


def catalog_selftest(suite=SELFTEST_SUITE, budget: Optional[int] = None,
                     closure_budget: int = DEFAULT_CLOSURE_BUDGET) -> List[SelftestResult]:
    results = []
    for name in suite:
        try:
            results.append(check_entry(build(name, closure_budget=closure_budget), budget))
        except LatticeError as e:
            results.append(SelftestResult(name, False, [f"{type(e).__name__}: {e}"]))
    failed = [r.name for r in results if not r.passed]
    if failed:
        logger.warning("catalog selftest failures: %s", ", ".join(failed))
    return results


if __name__ == "__main__":
    for result in catalog_selftest():
        status = "ok" if result.passed else "FAIL " + "; ".join(result.diagnostics)
        print(f"[Catalog] {result.name}: {status}")
