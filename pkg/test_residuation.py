"""Tests for relative pseudocomplements, Heyting identities and t-norm chains."""
from fractions import Fraction

import numpy as np
import pytest

from catalog import SELFTEST_SUITE, build
from order_core import BadParams, chain, direct_product, lattice_from_covers, property_scan
from residuation import (
    NotImplicative,
    OutOfRange,
    ProductNotClosed,
    TNormKind,
    boolean_equivalence_report,
    build_tnorm_logic,
    curry_scan,
    format_rational,
    fusion_residuum,
    grid_sup_residuum,
    implicative_report,
    parse_rational,
    pseudocomplement_structure,
    relative_pseudocomplement,
    residuum_oracle_agrees,
    residuum_table,
    tnorm_eval,
    tnorm_negation,
    tnorm_residuum,
)

HEYTING_IDENTITIES = (
    "modus-ponens", "residuation", "left-antitone", "right-monotone", "consequent-below-arrow",
    "exportation", "exchange", "arrow-self-distribution", "arrow-over-meet", "contraction",
    "top-antecedent", "order-as-arrow", "negation-below-arrow", "excluded-middle-arrow",
    "join-antecedent", "distributive",
)


@pytest.fixture
def m5():
    return lattice_from_covers(["0", "a", "b", "c", "1"],
                               [("0", "a"), ("0", "b"), ("0", "c"), ("a", "1"), ("b", "1"), ("c", "1")])


@pytest.fixture
def square():
    return lattice_from_covers(["0", "a", "b", "1"], [("0", "a"), ("0", "b"), ("a", "1"), ("b", "1")])


@pytest.fixture
def g3():
    return chain(["0", "1/2", "1"])


# =============================================================================
# Relative pseudocomplement
# =============================================================================

class TestRelativePseudocomplement:
    def test_chain(self, g3):
        assert relative_pseudocomplement(g3, "1", "1/2") == "1/2"
        assert relative_pseudocomplement(g3, "1/2", "1") == "1"
        assert relative_pseudocomplement(g3, "1/2", "0") == "0"

    def test_missing_in_m5(self, m5):
        assert relative_pseudocomplement(m5, "a", "0") is None
        assert relative_pseudocomplement(m5, "0", "a") == "1"

    def test_table_raises_on_first_missing_pair(self, m5):
        with pytest.raises(NotImplicative) as info:
            residuum_table(m5)
        assert info.value.pair == ("a", "0")

    def test_square_table(self, square):
        table = residuum_table(square)
        assert table.at("a", "b") == "b"
        assert table.at("a", "0") == "b"
        assert table.at("0", "0") == "1"
        assert table.to_json()[0] == ["1", "1", "1", "1"]

    def test_fusion_residuum_of_meet(self, square):
        assert np.array_equal(fusion_residuum(square, square.meet_table), residuum_table(square).arrow)


# =============================================================================
# Implicative report
# =============================================================================

class TestImplicativeReport:
    def test_m5_is_not_implicative(self, m5):
        report, table = implicative_report(m5)
        assert table is None
        verdict = report["implicative"]
        assert not verdict.holds
        assert verdict.witness.elements == ("a", "0")
        assert verdict.witness.lhs == "none"

    @pytest.mark.parametrize("lattice", [
        chain(["0", "1/3", "2/3", "1"]),
        lattice_from_covers(["0", "a", "b", "1"], [("0", "a"), ("0", "b"), ("a", "1"), ("b", "1")]),
        direct_product(chain(["0", "m", "1"]), chain(["0", "1"])),
    ])
    def test_heyting_identities_hold(self, lattice):
        report, table = implicative_report(lattice)
        assert table is not None
        assert report.holds("implicative")
        for name in HEYTING_IDENTITIES:
            assert report[name].holds, name

    def test_pseudocomplement_negation(self, g3, square):
        assert pseudocomplement_structure(g3).negation_labels() == ["1", "0", "0"]
        assert pseudocomplement_structure(square).negation_labels() == ["1", "b", "a", "0"]

    def test_boolean_conditions_agree_on_boolean(self, square):
        report = boolean_equivalence_report(square)
        assert all(v.holds for v in report)

    def test_boolean_conditions_fail_together_on_chain(self, g3):
        report = boolean_equivalence_report(g3)
        assert report["stability"].witness.elements == ("1/2",)
        assert report["peirce"].witness.elements == ("1/2", "0")
        assert not report.holds("tertium")
        assert not report.holds("arrow-excluded-middle")
        assert report.holds("agreement")

    def test_curry_scan(self, g3):
        assert curry_scan(g3) == [("0", []), ("1/2", []), ("1", ["1"])]

    def test_curry_scan_on_product(self):
        product = direct_product(chain(["0", "m", "1"]), chain(["0", "1"]))
        top = product.label(product.top)
        for y, fixed in curry_scan(product):
            assert fixed == ([top] if y == top else [])


# =============================================================================
# Rational t-norms
# =============================================================================

class TestTNorms:
    @pytest.mark.parametrize("text, kind", [
        ("L", TNormKind.LUKASIEWICZ),
        ("Łukasiewicz", TNormKind.LUKASIEWICZ),
        ("goedel", TNormKind.GOEDEL),
        ("Gödel", TNormKind.GOEDEL),
        ("product", TNormKind.PRODUCT),
    ])
    def test_kind_aliases(self, text, kind):
        assert TNormKind.parse(text) is kind

    def test_unknown_kind(self):
        with pytest.raises(BadParams):
            TNormKind.parse("hamacher")

    def test_values(self):
        half = Fraction(1, 2)
        assert tnorm_eval("L", half, half) == 0
        assert tnorm_eval("G", "1/3", "1/2") == Fraction(1, 3)
        assert tnorm_eval("P", half, half) == Fraction(1, 4)

    def test_residua(self):
        assert tnorm_residuum("L", "3/4", "1/4") == Fraction(1, 2)
        assert tnorm_residuum("G", "3/4", "1/4") == Fraction(1, 4)
        assert tnorm_residuum("P", "1/2", "1/4") == Fraction(1, 2)
        assert tnorm_residuum("P", "1/4", "1/2") == 1

    def test_negations(self):
        assert tnorm_negation("L", "1/3") == Fraction(2, 3)
        assert tnorm_negation("G", "1/3") == 0
        assert tnorm_negation("G", 0) == 1

    def test_out_of_range(self):
        with pytest.raises(OutOfRange):
            tnorm_eval("L", "3/2", 0)

    def test_rationals(self):
        assert parse_rational("2/4") == Fraction(1, 2)
        assert format_rational(Fraction(1, 2)) == "1/2"
        assert format_rational(Fraction(1)) == "1"
        with pytest.raises(BadParams):
            parse_rational("half")

    def test_grid_oracle(self):
        assert grid_sup_residuum("L", "3/4", "1/4") == Fraction(1, 2)
        for kind in ("L", "G", "P"):
            for x in ("0", "1/3", "1/2", "5/7", "1"):
                for y in ("0", "1/4", "2/3", "1"):
                    assert residuum_oracle_agrees(kind, x, y), (kind, x, y)

    @pytest.mark.parametrize("kind", list(TNormKind))
    def test_grid_oracle_on_small_denominators(self, kind):
        values = sorted({Fraction(p, q) for q in range(1, 13) for p in range(q + 1)})
        assert len(values) == 47
        disagreements = [(x, y) for x in values for y in values if not residuum_oracle_agrees(kind, x, y)]
        assert disagreements == []


class TestTNormLogic:
    def test_luk3_tables(self):
        logic = build_tnorm_logic("Lukasiewicz", 2)
        assert logic.structure.name == "LUK(2)"
        assert logic.fusion_labels() == [["0", "0", "0"], ["0", "0", "1/2"], ["0", "1/2", "1"]]
        assert logic.implication_labels() == [["1", "1", "1"], ["1/2", "1", "1"], ["0", "1/2", "1"]]
        assert logic.structure.negation_labels() == ["1", "1/2", "0"]

    def test_luk3_weak_contraction_fails(self):
        logic = build_tnorm_logic("L", 2)
        half = logic.structure.lattice.index("1/2")
        assert logic.structure.lattice.label(logic.fusion[half, half]) == "0"

    @pytest.mark.parametrize("n", range(1, 7))
    def test_goedel_fusion_is_meet(self, n):
        logic = build_tnorm_logic("Goedel", n)
        assert np.array_equal(logic.fusion, logic.structure.lattice.meet_table)
        assert np.array_equal(logic.residuum.arrow, residuum_table(logic.structure.lattice).arrow)

    def test_product_is_not_closed(self):
        with pytest.raises(ProductNotClosed):
            build_tnorm_logic("product", 2)

    def test_needs_positive_n(self):
        with pytest.raises(BadParams):
            build_tnorm_logic("L", 0)

    @pytest.mark.parametrize("n", [2, 3, 5])
    def test_luk_implication_is_fusion_residuum(self, n):
        logic = build_tnorm_logic("L", n)
        lattice = logic.structure.lattice
        assert np.array_equal(fusion_residuum(lattice, logic.fusion), logic.residuum.arrow)


# =============================================================================
# Catalog entries
# =============================================================================

@pytest.fixture(scope="module")
def suite_lattices():
    return {name: build(name).lattice for name in SELFTEST_SUITE}


class TestCatalogImplicative:
    @pytest.mark.parametrize("name", SELFTEST_SUITE)
    def test_implicative_exactly_when_distributive(self, name, suite_lattices):
        lattice = suite_lattices[name]
        report, table = implicative_report(lattice)
        assert (table is not None) == property_scan(lattice).holds("distributive")
        if table is None:
            return
        assert report.failures() == []
        for identity in HEYTING_IDENTITIES:
            assert identity in report, identity
        assert boolean_equivalence_report(lattice).holds("agreement")
        top = lattice.label(lattice.top)
        assert [y for y, fixed in curry_scan(lattice) if fixed] == [top]

    @pytest.mark.parametrize("name", ["M5", "N5", "O6", "MO(2)", "MO(3)", "MO(4)", "MO(5)"])
    def test_not_implicative(self, name, suite_lattices):
        lattice = suite_lattices[name]
        report, table = implicative_report(lattice)
        assert table is None
        assert not report.holds("implicative")
        with pytest.raises(NotImplicative):
            residuum_table(lattice)
