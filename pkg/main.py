"""
Lattice Logic Toolkit - Command Line
Load or build finite lattices with negation, run the law reports and export
Hasse diagrams as DOT or structures as JSON.
"""
import argparse
import json
import logging
import os
import sys
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence

import graphviz

import catalog
from fuzzy_functions import DEFAULT_CLOSURE_BUDGET
from formulas import ImplicationSemantics, default_semantics, evaluate, holds_identity
from logic_analysis import (
    LogicStructure,
    NegationMap,
    classify,
    law_report,
    metaproperty_sweep,
    negation_axiom_report,
)
from order_core import (
    DEFAULT_SUBLATTICE_BUDGET,
    PATTERNS,
    BadParams,
    FiniteLattice,
    LatticeError,
    PropertyReport,
    Verdict,
    Witness,
    find_forbidden_sublattice,
    lattice_law_report,
    load_document,
    property_scan,
)
from quantum import DEFAULT_MACNEILLE_LIMIT, compatible_decomposition, effect_poset, load_effects, macneille_completion
from residuation import (
    ORACLE_DENOMINATOR,
    boolean_equivalence_report,
    build_tnorm_logic,
    curry_scan,
    format_rational,
    implicative_report,
    residuum_oracle_agrees,
)

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_ASSERTION = 1
EXIT_ERROR = 2


@dataclass
class ToolkitConfig:
    """Configuration for searches, sampling and output."""
    # Search caps
    sublattice_budget: int = DEFAULT_SUBLATTICE_BUDGET
    closure_budget: int = DEFAULT_CLOSURE_BUDGET
    macneille_limit: int = DEFAULT_MACNEILLE_LIMIT

    # Random negation tables
    seed: int = 0
    metaproperty_samples: int = 200

    # Grid used to cross-check t-norm residua
    oracle_denominator: int = ORACLE_DENOMINATOR

    # Output
    verbose: bool = False
    json_indent: int = 2


def load_config_from_file(path: Optional[str] = None) -> ToolkitConfig:
    """Load configuration from config.toml if available."""
    try:
        import tomli
    except ImportError:
        return ToolkitConfig()
    config_path = path or os.path.join(os.path.dirname(__file__), "config.toml")
    if not os.path.exists(config_path):
        return ToolkitConfig()
    with open(config_path, "rb") as f:
        data = tomli.load(f)
    search = data.get("search", {})
    sampling = data.get("sampling", {})
    residuum = data.get("residuum", {})
    output = data.get("output", {})
    return ToolkitConfig(
        sublattice_budget=search.get("sublattice_budget", ToolkitConfig.sublattice_budget),
        closure_budget=search.get("closure_budget", ToolkitConfig.closure_budget),
        macneille_limit=search.get("macneille_limit", ToolkitConfig.macneille_limit),
        seed=sampling.get("seed", ToolkitConfig.seed),
        metaproperty_samples=sampling.get("metaproperty_samples", ToolkitConfig.metaproperty_samples),
        oracle_denominator=residuum.get("oracle_denominator", ToolkitConfig.oracle_denominator),
        verbose=output.get("verbose", ToolkitConfig.verbose),
        json_indent=output.get("json_indent", ToolkitConfig.json_indent),
    )


# =============================================================================
# DOT export
# =============================================================================

def render_dot(l: FiniteLattice, neg: Optional[NegationMap] = None) -> str:
    """Hasse diagram as DOT: one node per element, one edge per cover, bottom drawn lowest."""
    dot = graphviz.Digraph("lattice", graph_attr={"rankdir": "BT"}, node_attr={"shape": "plaintext"})
    for i, name in enumerate(l.names):
        label = name if neg is None else f"{name} / {l.label(neg[i])}"
        dot.node(f"n{i}", label)
    for lo, hi in l.covers():
        dot.edge(f"n{lo}", f"n{hi}")
    return dot.source


# =============================================================================
# Loading structures
# =============================================================================

@dataclass
class Loaded:
    name: str
    lattice: FiniteLattice
    structure: Optional[LogicStructure] = None
    entry: Optional[catalog.CatalogEntry] = None


def _load(args, config: ToolkitConfig) -> Loaded:
    if args.catalog:
        entry = catalog.build(args.catalog, closure_budget=config.closure_budget)
        return Loaded(entry.name, entry.lattice, entry.structure, entry)
    if args.file:
        try:
            lattice, negation = load_document(args.file)
        except OSError as e:
            raise BadParams(f"cannot read {args.file}: {e.strerror}") from e
        name = os.path.splitext(os.path.basename(args.file))[0]
        structure = None if negation is None else LogicStructure(lattice, NegationMap(negation), name)
        return Loaded(name, lattice, structure)
    raise BadParams("give --catalog NAME or --file PATH")


def _require_structure(loaded: Loaded) -> LogicStructure:
    if loaded.structure is None:
        raise BadParams(f"{loaded.name} carries no negation")
    return loaded.structure


def _semantics(loaded: Loaded, s: LogicStructure) -> ImplicationSemantics:
    if loaded.entry is not None and "implication" in loaded.entry.operations:
        l = loaded.lattice
        table = [[l.index(x) for x in row] for row in loaded.entry.operations["implication"]]
        return ImplicationSemantics.from_table(table)
    return default_semantics(s)


# =============================================================================
# Output
# =============================================================================

class Output:
    """Collects text lines or one JSON document per command."""

    def __init__(self, as_json: bool, indent: int):
        self.as_json = as_json
        self.indent = indent
        self.lines: List[str] = []

    def text(self, line: str = ""):
        self.lines.append(line)

    def flush(self, document: Dict):
        if self.as_json:
            print(json.dumps(document, indent=self.indent))
        else:
            print("\n".join(self.lines))


def _verdict_line(v: Verdict) -> str:
    status = "holds" if v.holds else "fails"
    line = f"  {v.name:<36} {status}"
    if v.witness is not None:
        line += f"  [{v.witness}]"
    return line


def _table_text(header: Sequence[str], rows: Sequence[Sequence[str]], corner: str) -> List[str]:
    width = max(len(x) for x in [corner, *header, *(c for row in rows for c in row)])
    lines = [" ".join(x.rjust(width) for x in [corner, *header])]
    for name, row in zip(header, rows):
        lines.append(" ".join(x.rjust(width) for x in [name, *row]))
    return lines


# =============================================================================
# Commands
# =============================================================================

def cmd_catalog(args, config: ToolkitConfig, out: Output) -> int:
    if args.action == "list":
        names = catalog.entry_names()
        for name in names:
            out.text(name)
        out.flush({"entries": names})
        return EXIT_OK
    if not args.name:
        raise BadParams(f"catalog {args.action} needs an entry name")
    entry = catalog.build(args.name, closure_budget=config.closure_budget)
    document = catalog.export_entry(entry)
    if args.action == "export":
        out.as_json = True
        out.flush(document)
        return EXIT_OK
    document["expected_label"] = entry.expected_label
    out.text(f"{entry.name}: {entry.lattice.size} elements")
    out.text(f"  elements: {' '.join(entry.lattice.names)}")
    out.text(f"  covers:   {' '.join(f'{lo}<{hi}' for lo, hi in entry.lattice.poset.cover_labels())}")
    if entry.structure is not None:
        out.text(f"  negation: {' '.join(entry.structure.negation_labels())}")
    if entry.expected_label:
        out.text(f"  expected: {entry.expected_label}")
    out.flush(document)
    return EXIT_OK


def _full_report(loaded: Loaded, config: ToolkitConfig, wanted: Optional[Sequence[str]] = None) -> PropertyReport:
    """Verdicts for the wanted properties; sublattice and implicative families only run when needed."""
    l = loaded.lattice
    report = property_scan(l)
    report.extend(lattice_law_report(l))
    negation = PropertyReport()
    if loaded.structure is not None:
        negation.extend(negation_axiom_report(loaded.structure))
        negation.extend(law_report(loaded.structure))
    for pattern in PATTERNS:
        name = f"{pattern.lower()}-free"
        if wanted is not None and name not in wanted:
            continue
        found = find_forbidden_sublattice(l, pattern, config.sublattice_budget)
        witness = None
        if found is not None:
            witness = Witness(tuple(found[k] for k in sorted(found)), f"{pattern} sublattice", "found", "absent")
        report.add(Verdict(name, found is None, witness))
    if wanted is None or any(name not in report and name not in negation for name in wanted):
        for verdict in implicative_report(l)[0]:
            if verdict.name not in report:
                report.add(verdict)
    return report.extend(negation)


def cmd_check(args, config: ToolkitConfig, out: Output) -> int:
    loaded = _load(args, config)
    report = _full_report(loaded, config, args.property)
    wanted = args.property or report.names()
    unknown = [name for name in wanted if name not in report]
    if unknown:
        skipped = [f"{p.lower()}-free" for p in PATTERNS if f"{p.lower()}-free" not in report]
        raise BadParams(f"unknown properties {unknown}; known: {report.names() + skipped}")
    verdicts = [report[name] for name in wanted]
    out.text(f"{loaded.name}:")
    for v in verdicts:
        out.text(_verdict_line(v))
    out.flush({"name": loaded.name, "verdicts": [v.to_dict() for v in verdicts]})
    if args.assert_ and any(not v.holds for v in verdicts):
        return EXIT_ASSERTION
    return EXIT_OK


def cmd_classify(args, config: ToolkitConfig, out: Output) -> int:
    loaded = _load(args, config)
    result = classify(_require_structure(loaded))
    out.text(f"{loaded.name}: {result.label}")
    for flag, value in result.flags.items():
        out.text(f"  {flag:<20} {value}")
    for note in result.notes:
        out.text(f"  note: {note}")
    document = {"name": loaded.name}
    document.update(result.to_dict())
    out.flush(document)
    return EXIT_OK


def cmd_residuum(args, config: ToolkitConfig, out: Output) -> int:
    loaded = _load(args, config)
    report, table = implicative_report(loaded.lattice)
    document = {"name": loaded.name, "implicative": table is not None, "verdicts": report.to_json()}
    out.text(f"{loaded.name}: {'implicative' if table is not None else 'not implicative'}")
    for v in report:
        out.text(_verdict_line(v))
    if table is not None:
        equivalences = boolean_equivalence_report(loaded.lattice)
        fixed = [[y, xs] for y, xs in curry_scan(loaded.lattice) if xs]
        document.update({"arrow": table.to_json(), "boolean": equivalences.to_json(), "curry_fixed_points": fixed})
        out.text()
        out.lines.extend(_table_text(table.carrier, table.to_json(), "->"))
        for v in equivalences:
            out.text(_verdict_line(v))
        out.text(f"  curry fixed points below 1: {fixed or 'none'}")
    out.flush(document)
    failed = table is None or any(not v.holds for v in report)
    return EXIT_ASSERTION if args.assert_ and failed else EXIT_OK


def cmd_tnorm(args, config: ToolkitConfig, out: Output) -> int:
    logic = build_tnorm_logic(args.kind, args.n)
    names = list(logic.structure.lattice.names)
    negation = logic.structure.negation_labels()
    disagreements = [[format_rational(x), format_rational(y)] for x in logic.values for y in logic.values
                     if not residuum_oracle_agrees(logic.kind, x, y, config.oracle_denominator)]
    out.text(f"{logic.structure.name} ({logic.kind.value})")
    out.lines.extend(_table_text(names, logic.fusion_labels(), "*"))
    out.text()
    out.lines.extend(_table_text(names, logic.implication_labels(), "->"))
    out.text()
    out.text("~   " + " ".join(f"{x}:{y}" for x, y in zip(names, negation)))
    out.text(f"grid oracle: {'agrees' if not disagreements else disagreements}")
    out.flush({"name": logic.structure.name, "kind": logic.kind.value, "values": names,
               "fusion": logic.fusion_labels(), "implication": logic.implication_labels(),
               "negation": negation, "oracle_disagreements": disagreements})
    return EXIT_OK


def _environment(pairs: Optional[List[str]]) -> Dict[str, str]:
    env = {}
    for pair in pairs or []:
        name, sep, value = pair.partition("=")
        if not sep:
            raise BadParams(f"--env expects NAME=ELEMENT, got {pair!r}")
        env[name.strip()] = value.strip()
    return env


def cmd_eval(args, config: ToolkitConfig, out: Output) -> int:
    loaded = _load(args, config)
    s = _require_structure(loaded)
    sem = _semantics(loaded, s)
    if args.equals is not None:
        holds, witness = holds_identity(s, sem, args.formula, args.equals)
        out.text(f"{args.formula} = {args.equals}: {'holds' if holds else 'fails'}")
        if witness is not None:
            out.text(f"  {witness}")
        out.flush({"identity": [args.formula, args.equals], "holds": holds,
                   "witness": witness.to_dict() if witness else None})
        return EXIT_ASSERTION if args.assert_ and not holds else EXIT_OK
    value = evaluate(args.formula, s, sem, _environment(args.env))
    out.text(value)
    out.flush({"formula": args.formula, "value": value})
    return EXIT_OK


def cmd_decompose(args, config: ToolkitConfig, out: Output) -> int:
    loaded = _load(args, config)
    parts = compatible_decomposition(_require_structure(loaded), args.x, args.y)
    if parts is None:
        out.text(f"{args.x} and {args.y} are not compatible")
        out.flush({"x": args.x, "y": args.y, "compatible": False})
        return EXIT_ASSERTION if args.assert_ else EXIT_OK
    u, v, w = parts
    out.text(f"{args.x} = {u} | {v}, {args.y} = {v} | {w}")
    out.flush({"x": args.x, "y": args.y, "compatible": True, "parts": [u, v, w]})
    return EXIT_OK


def cmd_macneille(args, config: ToolkitConfig, out: Output) -> int:
    if args.file:
        try:
            poset = effect_poset(load_effects(args.file))
        except OSError as e:
            raise BadParams(f"cannot read {args.file}: {e.strerror}") from e
        name = os.path.splitext(os.path.basename(args.file))[0]
    elif args.catalog:
        poset = catalog.named_poset(args.catalog)
        name = args.catalog.upper()
    else:
        raise BadParams("give --catalog P6|EFFECTS or --file PATH")
    s = macneille_completion(poset, config.macneille_limit, name)
    result = classify(s)
    l = s.lattice
    out.text(f"{name}: {poset.poset.size} elements, completion has {l.size}")
    for x, y in zip(l.names, s.negation_labels()):
        out.text(f"  {x:<20} ' {y}")
    out.text(f"  label: {result.label}")
    document = {"name": name, "elements": list(l.names), "negation": s.negation_labels(),
                "covers": [list(pair) for pair in l.poset.cover_labels()]}
    document.update(result.to_dict())
    out.flush(document)
    return EXIT_OK


def cmd_render(args, config: ToolkitConfig, out: Output) -> int:
    loaded = _load(args, config)
    neg = loaded.structure.neg if loaded.structure is not None else None
    source = render_dot(loaded.lattice, neg)
    out.text(source.rstrip("\n"))
    out.flush({"name": loaded.name, "dot": source})
    return EXIT_OK


def cmd_selftest(args, config: ToolkitConfig, out: Output) -> int:
    results = catalog.catalog_selftest(budget=config.sublattice_budget, closure_budget=config.closure_budget)
    sweep = {}
    for entry in (r.entry for r in results if r.entry is not None):
        violations = metaproperty_sweep(entry.lattice, config.metaproperty_samples, config.seed)
        sweep[entry.name] = [{"law": v.law, "table": v.table} for v in violations]
    for result in results:
        status = "ok" if result.passed else "FAIL " + "; ".join(result.diagnostics)
        out.text(f"{result.name:<16} {status}")
    broken = {name: found for name, found in sweep.items() if found}
    out.text(f"metaproperty sweep (seed {config.seed}, {config.metaproperty_samples} tables each): "
             f"{len(sweep)} lattices, {sum(len(v) for v in broken.values())} violations")
    out.flush({"entries": [r.to_dict() for r in results], "seed": config.seed, "metaproperty_violations": broken})
    return EXIT_OK if all(r.passed for r in results) and not broken else EXIT_ASSERTION


COMMANDS = {
    "catalog": cmd_catalog,
    "check": cmd_check,
    "classify": cmd_classify,
    "residuum": cmd_residuum,
    "tnorm": cmd_tnorm,
    "eval": cmd_eval,
    "decompose": cmd_decompose,
    "macneille": cmd_macneille,
    "render": cmd_render,
    "selftest": cmd_selftest,
}


# =============================================================================
# Argument parsing
# =============================================================================

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="Emit one JSON document")
    common.add_argument("--verbose", action="store_true", help="Log progress to stderr")
    common.add_argument("--config", help="Path to a config.toml")
    common.add_argument("--budget", type=int, help="Override sublattice and closure search caps")
    common.add_argument("--seed", type=int, help="Seed for random negation tables")
    common.add_argument("--assert", dest="assert_", action="store_true", help="Exit 1 when a verdict fails")

    source = argparse.ArgumentParser(add_help=False)
    group = source.add_mutually_exclusive_group()
    group.add_argument("--catalog", metavar="NAME", help="Catalog entry, NAME or NAME(k)")
    group.add_argument("--file", metavar="PATH", help="Lattice JSON document")

    parser = argparse.ArgumentParser(prog="lattice-logic", description="Finite lattice logic toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("catalog", parents=[common], help="List, show or export catalog entries")
    p.add_argument("action", choices=["list", "show", "export"])
    p.add_argument("name", nargs="?")

    p = sub.add_parser("check", parents=[common, source], help="Run law reports")
    p.add_argument("--property", action="append", metavar="NAME", help="Report only this property (repeatable)")

    sub.add_parser("classify", parents=[common, source], help="Flags and hierarchy label")
    sub.add_parser("residuum", parents=[common, source], help="Relative pseudocomplement and its laws")

    p = sub.add_parser("tnorm", parents=[common], help="Finite t-norm chain tables")
    p.add_argument("--kind", default="lukasiewicz", help="lukasiewicz or goedel")
    p.add_argument("--n", type=int, default=2, help="Carrier {0, 1/n, ..., 1}")

    p = sub.add_parser("eval", parents=[common, source], help="Evaluate a formula or test an identity")
    p.add_argument("formula")
    p.add_argument("--env", action="append", metavar="NAME=ELEMENT")
    p.add_argument("--equals", metavar="FORMULA", help="Check formula = FORMULA for all assignments")

    p = sub.add_parser("decompose", parents=[common, source], help="Split a compatible pair")
    p.add_argument("x")
    p.add_argument("y")

    sub.add_parser("macneille", parents=[common, source], help="Complete a poset with involution")

    p = sub.add_parser("render", parents=[common, source], help="Hasse diagram")
    p.add_argument("--dot", action="store_true", help="Emit raw DOT source; with --json it is the \"dot\" field")

    sub.add_parser("selftest", parents=[common], help="Catalog selftest and metaproperty sweep")
    return parser


def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code in (0, None) else EXIT_ERROR

    # Load from config.toml first, then override with CLI args
    config = load_config_from_file(args.config)
    if args.budget is not None:
        config.sublattice_budget = args.budget
        config.closure_budget = args.budget
    if args.seed is not None:
        config.seed = args.seed
    if args.verbose:
        config.verbose = True

    logging.basicConfig(format="[%(name)s] %(message)s",
                        level=logging.INFO if config.verbose else logging.WARNING, force=True)
    logger.info("running %s", args.command)

    out = Output(args.json, config.json_indent)
    try:
        return COMMANDS[args.command](args, config, out)
    except LatticeError as e:
        if args.json:
            print(json.dumps({"error": type(e).__name__, "message": str(e)}), file=sys.stderr)
        else:
            print(f"error: {e}", file=sys.stderr)
        return EXIT_ERROR


def main():
    """Entry point."""
    sys.exit(run())


if __name__ == "__main__":
    main()
