"""Tests for the formula parser, evaluator, truth tables and normal forms."""
import numpy as np
import pytest

from formulas import (
    CLASSICAL_TAUTOLOGIES,
    JOIN_OF_MEETS,
    MEET_OF_JOINS,
    And,
    Const,
    FormulaSyntaxError,
    Iff,
    ImplicationKind,
    ImplicationSemantics,
    Imp,
    Not,
    Or,
    SemanticsUnavailable,
    UnboundVariable,
    UnsupportedConnective,
    Var,
    boolean_entails,
    boolean_ring_report,
    boolean_tautology,
    default_semantics,
    evaluate,
    format_formula,
    from_normal_form,
    holds_identity,
    identity_verdict,
    normal_form,
    parse,
    variables,
)
from catalog import build
from logic_analysis import structure_from_labels
from order_core import chain, lattice_from_covers

x, y, z = Var("x"), Var("y"), Var("z")


@pytest.fixture
def m5():
    l = lattice_from_covers(["0", "a", "b", "c", "1"],
                            [("0", "a"), ("0", "b"), ("0", "c"), ("a", "1"), ("b", "1"), ("c", "1")])
    return structure_from_labels(l, ["1", "c", "0", "a", "0"], "M5")


@pytest.fixture
def square():
    l = lattice_from_covers(["0", "a", "b", "1"], [("0", "a"), ("0", "b"), ("a", "1"), ("b", "1")])
    return structure_from_labels(l, ["1", "b", "a", "0"], "2x2")


@pytest.fixture
def bn4():
    l = lattice_from_covers(["f", "n", "b", "t"], [("f", "n"), ("f", "b"), ("n", "t"), ("b", "t")])
    return structure_from_labels(l, {"f": "t", "n": "n", "b": "b", "t": "f"}, "BN4")


# =============================================================================
# Parsing and printing
# =============================================================================

class TestParse:
    @pytest.mark.parametrize("text, tree", [
        ("x | y & z", Or(x, And(y, z))),
        ("x -> y -> z", Imp(x, Imp(y, z))),
        ("x <-> y <-> z", Iff(Iff(x, y), z)),
        ("~~x", Not(Not(x))),
        ("~x & 1", And(Not(x), Const(1))),
        ("(x | y) & z", And(Or(x, y), z)),
        ("x | y -> z", Imp(Or(x, y), z)),
    ])
    def test_precedence(self, text, tree):
        assert parse(text) == tree

    @pytest.mark.parametrize("text, printed", [
        ("((x))", "x"),
        ("(x | y) & z", "(x | y) & z"),
        ("(x -> y) -> z", "(x -> y) -> z"),
        ("x -> (y -> z)", "x -> y -> z"),
        ("x | (y | z)", "x | (y | z)"),
        ("~(x & y)", "~(x & y)"),
        ("x <-> (y <-> z)", "x <-> (y <-> z)"),
    ])
    def test_minimal_parentheses(self, text, printed):
        assert format_formula(parse(text)) == printed
        assert parse(printed) == parse(text)

    @pytest.mark.parametrize("text, position", [
        ("x $ y", 2),
        ("(x & y", 6),
        ("x y", 2),
        ("x &", 3),
    ])
    def test_syntax_error_position(self, text, position):
        with pytest.raises(FormulaSyntaxError) as info:
            parse(text)
        assert info.value.position == position

    def test_variables_sorted(self):
        assert variables(parse("z & (x | ~y) -> 1")) == ["x", "y", "z"]


# =============================================================================
# Evaluation
# =============================================================================

class TestEvaluate:
    def test_bn4_glut(self, bn4):
        assert evaluate("x & ~x", bn4, env={"x": "b"}) == "b"
        assert evaluate("x | ~x", bn4, env={"x": "b"}) == "b"

    def test_constants(self, m5):
        assert evaluate("~1 | 0", m5) == "0"

    def test_unbound(self, m5):
        with pytest.raises(UnboundVariable) as info:
            evaluate("x & y", m5, env={"x": "a"})
        assert info.value.name == "y"

    def test_m5_de_morgan_counterexample(self, m5):
        holds, witness = holds_identity(m5, None, "~(x & y)", "~x | ~y")
        assert not holds
        assert witness.elements == ("a", "b")
        assert (witness.lhs, witness.rhs) == ("1", "c")

    def test_identity_holds(self, square):
        holds, witness = holds_identity(square, None, "x -> y", "~x | y")
        assert holds and witness is None

    def test_identity_verdict(self, square):
        verdict = identity_verdict(square, None, "double-negation", "~~x", "x")
        assert verdict.name == "double-negation"
        assert verdict.holds

    def test_table_semantics(self, bn4):
        l = bn4.lattice
        # rows x, columns y, carrier order f n b t
        table = [[l.index(v) for v in row] for row in
                 [["t", "t", "t", "t"], ["n", "t", "n", "t"], ["f", "n", "b", "t"], ["f", "n", "f", "t"]]]
        sem = ImplicationSemantics.from_table(table)
        assert evaluate("x -> y", bn4, sem, {"x": "t", "y": "b"}) == "f"
        assert evaluate("x -> y", bn4, None, {"x": "t", "y": "b"}) == "b"


class TestSemantics:
    def test_default_is_residuated_on_implicative(self, square):
        assert default_semantics(square).kind is ImplicationKind.RESIDUATED

    def test_default_is_ortho_on_fuzzy(self, m5):
        assert default_semantics(m5).kind is ImplicationKind.ORTHO

    def test_unavailable(self, m5):
        broken = structure_from_labels(m5.lattice, ["0", "a", "b", "c", "1"])
        with pytest.raises(SemanticsUnavailable):
            default_semantics(broken)

    def test_residuated_needs_implicative(self, m5):
        with pytest.raises(SemanticsUnavailable):
            ImplicationSemantics.residuated().arrow(m5)

    def test_table_shape(self, m5):
        with pytest.raises(SemanticsUnavailable):
            ImplicationSemantics.from_table(np.zeros((2, 2))).arrow(m5)

    def test_ortho_arrow(self, m5):
        arrow = ImplicationSemantics.ortho().arrow(m5)
        l = m5.lattice
        assert l.label(arrow[l.index("a"), l.index("b")]) == "1"
        assert l.label(arrow[l.index("a"), l.index("0")]) == "c"


# =============================================================================
# Classical truth tables
# =============================================================================

class TestClassical:
    @pytest.mark.parametrize("text", CLASSICAL_TAUTOLOGIES)
    def test_tautologies(self, text):
        assert boolean_tautology(text) == (True, None)

    def test_first_falsifying_assignment(self):
        assert boolean_tautology("x -> y") == (False, {"x": 1, "y": 0})
        assert boolean_tautology("x & ~x") == (False, {"x": 0})

    def test_entailment(self):
        assert boolean_entails("x & y", "x")
        assert not boolean_entails("x", "x & y")
        assert boolean_entails(parse("0"), parse("x"))

    def test_ring_identities_on_boolean(self, square):
        assert boolean_ring_report(square).failures() == []

    def test_ring_fails_on_bn4(self, bn4):
        verdict = boolean_ring_report(bn4)["xor-nilpotent"]
        assert not verdict.holds
        assert verdict.witness.elements == ("n",)

    def test_chain_is_not_a_ring(self):
        s = structure_from_labels(chain(["0", "1/2", "1"]), ["1", "1/2", "0"])
        assert not boolean_ring_report(s).holds("xor-nilpotent")


# =============================================================================
# Normal forms
# =============================================================================

class TestNormalForms:
    def test_join_of_meets(self):
        assert normal_form("x & (y | z)") == frozenset({frozenset({"x", "y"}), frozenset({"x", "z"})})

    def test_meet_of_joins(self):
        assert normal_form("x & (y | z)", MEET_OF_JOINS) == frozenset({frozenset({"x"}), frozenset({"y", "z"})})

    def test_absorption(self):
        assert normal_form("x | x & y") == frozenset({frozenset({"x"})})
        assert normal_form("x & (x | y)", MEET_OF_JOINS) == frozenset({frozenset({"x"})})

    def test_rebuild(self):
        rebuilt = from_normal_form(normal_form("x & (y | z)"), JOIN_OF_MEETS)
        assert format_formula(rebuilt) == "x & y | x & z"
        assert boolean_entails(rebuilt, "x & (y | z)") and boolean_entails("x & (y | z)", rebuilt)

    @pytest.mark.parametrize("text", ["~x", "x -> y", "x | 1"])
    def test_only_lattice_terms(self, text):
        with pytest.raises(UnsupportedConnective):
            normal_form(text)

    def test_unknown_mode(self):
        with pytest.raises(UnsupportedConnective):
            normal_form("x", "prenex")

    @pytest.mark.parametrize("cube", ["CUBE(3)", "CUBE(4)"])
    @pytest.mark.parametrize("mode", [JOIN_OF_MEETS, MEET_OF_JOINS])
    def test_random_terms_round_trip(self, cube, mode):
        s = build(cube).structure
        failures = []
        for f in _random_lattice_terms(100, seed=0):
            rebuilt = from_normal_form(normal_form(f, mode), mode)
            holds, witness = holds_identity(s, ImplicationSemantics.ortho(), f, rebuilt)
            if not holds:
                failures.append((format_formula(f), witness))
        assert failures == []


def _random_lattice_terms(count: int, seed: int, names=("w", "x", "y", "z"), depth: int = 4):
    rng = np.random.default_rng(seed)

    def term(level):
        if level == 0 or rng.random() < 0.3:
            return Var(names[rng.integers(len(names))])
        op = And if rng.integers(2) else Or
        return op(term(level - 1), term(level - 1))

    return [term(depth) for _ in range(count)]
