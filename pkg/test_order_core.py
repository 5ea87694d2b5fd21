"""Tests for posets, lattices, law scans and sublattice search."""
import json

import numpy as np
import pytest

from order_core import (
    CycleDetected,
    DocumentError,
    DuplicateLabel,
    EmptyBlockList,
    NoBounds,
    NotALattice,
    OrderViolation,
    SearchBudgetExceeded,
    UnknownElement,
    chain,
    complements,
    direct_product,
    dual,
    find_forbidden_sublattice,
    find_isomorphism,
    generated_sublattice,
    horizontal_sum,
    lattice_document,
    lattice_from_covers,
    lattice_from_poset,
    lattice_law_report,
    load_document,
    parse_lattice_document,
    poset_from_covers,
    poset_from_matrix,
    property_scan,
)

M5_COVERS = [("0", "a"), ("0", "b"), ("0", "c"), ("a", "1"), ("b", "1"), ("c", "1")]
N5_COVERS = [("0", "a"), ("a", "c"), ("c", "1"), ("0", "b"), ("b", "1")]
HEXAGON_COVERS = [("0", "x"), ("x", "y"), ("y", "1"), ("0", "y'"), ("y'", "x'"), ("x'", "1")]


@pytest.fixture
def m5():
    return lattice_from_covers(["0", "a", "b", "c", "1"], M5_COVERS)


@pytest.fixture
def n5():
    return lattice_from_covers(["0", "a", "b", "c", "1"], N5_COVERS)


@pytest.fixture
def square():
    return lattice_from_covers(["0", "a", "b", "1"], [("0", "a"), ("0", "b"), ("a", "1"), ("b", "1")])


@pytest.fixture
def hexagon():
    return lattice_from_covers(["0", "x", "y", "x'", "y'", "1"], HEXAGON_COVERS)


# =============================================================================
# Construction
# =============================================================================

class TestConstruction:
    def test_covers_close_transitively(self, n5):
        assert n5.le("a", "1")
        assert n5.le("0", "c")
        assert not n5.le("b", "c")
        assert n5.leq.dtype == bool

    def test_meet_and_join_by_label(self, m5):
        assert m5.meet("a", "b") == "0"
        assert m5.join("a", "b") == "1"
        assert m5.meet("a", "1") == "a"
        assert m5.label(m5.bottom) == "0"
        assert m5.label(m5.top) == "1"

    def test_tables_are_read_only(self, m5):
        with pytest.raises(ValueError):
            m5.meet_table[0, 0] = 3

    def test_duplicate_label(self):
        with pytest.raises(DuplicateLabel):
            poset_from_covers(["0", "a", "a"], [])

    def test_unknown_cover_endpoint(self):
        with pytest.raises(UnknownElement):
            poset_from_covers(["0", "1"], [("0", "z")])

    def test_unknown_element_is_a_key_error(self, m5):
        with pytest.raises(KeyError):
            m5.index("z")

    def test_cycle(self):
        with pytest.raises(CycleDetected) as info:
            poset_from_covers(["a", "b", "c"], [("a", "b"), ("b", "c"), ("c", "a")])
        assert info.value.cycle[0] == info.value.cycle[-1]

    def test_missing_meet_names_first_pair(self):
        bow_tie = poset_from_covers(["a", "b", "c", "d"], [("a", "c"), ("a", "d"), ("b", "c"), ("b", "d")])
        with pytest.raises(NotALattice) as info:
            lattice_from_poset(bow_tie)
        assert info.value.pair == ("a", "b")
        assert info.value.operation == "meet"

    def test_empty_poset_has_no_bounds(self):
        with pytest.raises(NoBounds):
            lattice_from_poset(poset_from_covers([], []))

    def test_matrix_must_be_reflexive(self):
        with pytest.raises(OrderViolation):
            poset_from_matrix(["a", "b"], [[True, True], [False, False]])

    def test_matrix_must_be_transitive(self):
        leq = [[True, True, False], [False, True, True], [False, False, True]]
        with pytest.raises(OrderViolation):
            poset_from_matrix(["a", "b", "c"], leq)

    def test_matrix_must_be_antisymmetric(self):
        with pytest.raises(CycleDetected):
            poset_from_matrix(["a", "b"], [[True, True], [True, True]])

    def test_covers_are_transitive_reduction(self, n5):
        assert sorted(n5.poset.cover_labels()) == sorted(N5_COVERS)

    def test_chain(self):
        l = chain(["0", "1/2", "1"])
        assert l.meet("1/2", "1") == "1/2"
        assert l.join("0", "1/2") == "1/2"
        assert len(l.covers()) == 2

    def test_dual_swaps_operations(self, n5):
        d = dual(n5)
        assert d.label(d.bottom) == "1"
        assert d.meet("a", "b") == "1"
        assert d.le("c", "a")


# =============================================================================
# Property scans
# =============================================================================

class TestPropertyScan:
    def test_m5_distributive_witness(self, m5):
        verdict = property_scan(m5)["distributive"]
        assert not verdict.holds
        assert verdict.witness.elements == ("a", "b", "c")
        assert (verdict.witness.lhs, verdict.witness.rhs) == ("a", "0")

    def test_m5_is_modular(self, m5):
        assert property_scan(m5).holds("modular")

    def test_n5_distributive_witness(self, n5):
        verdict = property_scan(n5)["distributive"]
        assert verdict.witness.elements == ("c", "a", "b")
        assert (verdict.witness.lhs, verdict.witness.rhs) == ("c", "a")

    def test_n5_modular_witness(self, n5):
        verdict = property_scan(n5)["modular"]
        assert not verdict.holds
        assert verdict.witness.elements == ("a", "b", "c")
        assert (verdict.witness.lhs, verdict.witness.rhs) == ("a", "c")

    @pytest.mark.parametrize("shape, witness", [
        ("m5", ("a", "b", "c")),
        ("n5", ("b", "a", "c")),
    ])
    def test_cancellation_fails(self, shape, witness, request):
        verdict = property_scan(request.getfixturevalue(shape))["cancellation"]
        assert not verdict.holds
        assert verdict.witness.elements == witness

    def test_distributive_square(self, square):
        report = property_scan(square)
        assert report.holds("distributive")
        assert report.holds("modular")
        assert report.holds("cancellation")
        assert report.failures() == []

    @pytest.mark.parametrize("shape", ["m5", "n5", "square", "hexagon"])
    def test_inequalities_always_hold(self, shape, request):
        report = property_scan(request.getfixturevalue(shape))
        for name in ("distributive-inequality", "dual-distributive-inequality", "modular-inequality", "complete"):
            assert report[name].holds
            assert report[name].assertion_only

    @pytest.mark.parametrize("shape", ["m5", "n5", "hexagon"])
    def test_lattice_laws(self, shape, request):
        report = lattice_law_report(request.getfixturevalue(shape))
        assert report.failures() == []
        assert "consistency" in report
        assert "associative-join" in report

    def test_report_json(self, m5):
        rows = property_scan(m5).to_json()
        assert rows[0] == {"property": "distributive", "holds": False, "witness": ["a", "b", "c"]}


# =============================================================================
# Complements and sublattices
# =============================================================================

class TestSublattices:
    def test_complements(self, m5, n5, square):
        assert complements(m5, "a") == ["b", "c"]
        assert complements(n5, "b") == ["a", "c"]
        assert complements(square, "a") == ["b"]
        assert complements(square, "0") == ["1"]

    def test_generated_sublattice(self, m5):
        assert generated_sublattice(m5, ["a", "b"]) == frozenset({"0", "a", "b", "1"})
        assert generated_sublattice(m5, ["a"]) == frozenset({"a"})

    def test_m5_inside_m5(self, m5):
        found = find_forbidden_sublattice(m5, "M5")
        assert found is not None
        assert sorted(found.values()) == ["0", "1", "a", "b", "c"]

    def test_n5_not_in_m5(self, m5):
        assert find_forbidden_sublattice(m5, "N5") is None

    def test_hexagon_contains_n5_and_o6(self, hexagon):
        found = find_forbidden_sublattice(hexagon, "N5")
        assert found is not None
        assert found["0"] == "0" and found["1"] == "1"
        assert find_forbidden_sublattice(hexagon, "O6") is not None

    def test_distributive_has_no_forbidden_sublattice(self, square):
        for pattern in ("M5", "N5", "O6"):
            assert find_forbidden_sublattice(square, pattern) is None

    def test_pattern_name_case_insensitive(self, m5):
        assert find_forbidden_sublattice(m5, "m5") is not None

    def test_budget(self, m5):
        with pytest.raises(SearchBudgetExceeded) as info:
            find_forbidden_sublattice(m5, "M5", budget=1)
        assert info.value.budget == 1

    def test_unknown_pattern(self, m5):
        with pytest.raises(ValueError):
            find_forbidden_sublattice(m5, "K4")


# =============================================================================
# Combinators
# =============================================================================

class TestCombinators:
    def test_horizontal_sum(self, square):
        l = horizontal_sum([square, square])
        assert l.size == 6
        assert l.names[0] == "0" and l.names[-1] == "1"
        assert "1.a" in l.names and "2.b" in l.names
        assert l.join("1.a", "2.a") == "1"
        assert l.meet("1.a", "2.b") == "0"

    def test_horizontal_sum_keeps_distinct_labels(self):
        blocks = [lattice_from_covers(["0", p, q, "1"], [("0", p), ("0", q), (p, "1"), (q, "1")])
                  for p, q in (("p", "p'"), ("q", "q'"))]
        assert horizontal_sum(blocks).names == ("0", "p", "p'", "q", "q'", "1")

    def test_horizontal_sum_needs_blocks(self):
        with pytest.raises(EmptyBlockList):
            horizontal_sum([])

    def test_direct_product(self, square):
        two = chain(["0", "1"])
        product = direct_product(two, two)
        assert product.size == 4
        assert product.join("(0,1)", "(1,0)") == "(1,1)"
        assert product.meet("(0,1)", "(1,0)") == "(0,0)"
        assert find_isomorphism(product, square) is not None

    def test_isomorphism(self, m5, n5):
        assert find_isomorphism(m5, n5) is None
        mapping = find_isomorphism(n5, dual(n5))
        assert mapping is not None
        assert mapping["0"] == "1"

    def test_product_with_chain_is_distributive(self):
        three = chain(["0", "m", "1"])
        assert property_scan(direct_product(three, three)).holds("distributive")


# =============================================================================
# Documents
# =============================================================================

class TestDocuments:
    def test_document_rebuilds_the_order(self, n5):
        lattice, negation = parse_lattice_document(lattice_document(n5))
        assert negation is None
        assert np.array_equal(lattice.leq, n5.leq)

    def test_negation_by_label(self, m5):
        doc = lattice_document(m5, [4, 3, 0, 1, 0])
        assert doc["negation"] == ["1", "c", "0", "a", "0"]
        _, negation = parse_lattice_document(doc)
        assert negation == [4, 3, 0, 1, 0]

    @pytest.mark.parametrize("doc", [
        [],
        {"covers": []},
        {"elements": ["0", 1]},
        {"elements": ["0", "1"], "covers": [["0"]]},
        {"elements": ["0", "1"], "covers": [["0", "1"], ["0", "1"]]},
        {"elements": ["0", "1"], "covers": [["0", "1"]], "negation": ["1"]},
    ])
    def test_malformed(self, doc):
        with pytest.raises(DocumentError):
            parse_lattice_document(doc)

    def test_load_from_disk(self, tmp_path, m5):
        path = tmp_path / "m5.json"
        path.write_text(json.dumps(lattice_document(m5)))
        lattice, _ = load_document(path)
        assert lattice.names == m5.names

    def test_load_invalid_json(self, tmp_path):
        path = tmp_path / "broken.json"
        path.write_text("{not json")
        with pytest.raises(DocumentError):
            load_document(path)
