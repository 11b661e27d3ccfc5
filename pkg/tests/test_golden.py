import pytest
from hypothesis import given
from hypothesis import strategies as st

from bkcone.golden import (associativity_failures, compare_tables, deformed_tables, explain_mismatches,
                           format_cell, hilbert_degree, parse_cell, table_degree, table_entry)
from bkcone.rootsys import build_root_system
from bkcone.schubert import top_coefficient
from bkcone.weyl import dim_gp, maximal_parabolic

# Two cells of the G2/P1 table carry the coefficient 5 where the ring has 2.
KNOWN_MISPRINTS = {("G2/P1", "a1", "a2"), ("G2/P1", "a2", "a2")}

TABLES = [e["name"] for e in deformed_tables()]


def test_all_ten_tables_present():
    assert TABLES == ["B2/P1", "B2/P2", "G2/P1", "G2/P2", "B3/P1", "B3/P2", "B3/P3", "C3/P1", "C3/P2", "C3/P3"]
    assert sum(len(e["cells"]) for e in deformed_tables()) == 176


@pytest.mark.parametrize("name", TABLES)
def test_table_cells(name):
    for r in compare_tables(name):
        assert not r.note
        if (r.table, r.row, r.col) in KNOWN_MISPRINTS:
            assert not r.ok
        else:
            assert r.ok, (r.row, r.col, r.expected, r.computed)


def test_misprints_are_explained_by_invariants():
    reports = explain_mismatches(compare_tables())
    assert [r.table for r in reports] == ["G2/P1"]
    rep = reports[0]
    assert rep.printed_degree == 5 and rep.corrected_degree == rep.expected_degree == 2
    assert rep.printed_assoc_failures == 0 and rep.corrected_assoc_failures == 0
    assert rep.explained


@pytest.mark.parametrize("name", TABLES)
def test_tables_are_associative_and_degrees_agree(name):
    entry = table_entry(name)
    if name != "G2/P1":
        assert table_degree(entry) == hilbert_degree(entry["type"], entry["parabolic"])
    assert associativity_failures(entry) == []


@pytest.mark.parametrize("label, p", [("B3", 2), ("C3", 3), ("G2", 2), ("G2", 1), ("B2", 1)])
def test_hilbert_degree_matches_ring(label, p):
    R = build_root_system(label)
    P = maximal_parabolic(R, p)
    divisor = "rstu"[p - 1]
    assert top_coefficient(R, P, [divisor] * dim_gp(R, P), basis="epsilon") == hilbert_degree(label, p)


@pytest.mark.parametrize(
    "text, parsed",
    [("0", {}), ("2 b2", {"b2": (2, 0)}), ("t b4'", {"b4'": (1, 1)}), ("t^2 a2", {"a2": (1, 2)}),
     ("2 t b4' + t b4''", {"b4'": (2, 1), "b4''": (1, 1)}), ("5 t a3", {"a3": (5, 1)})],
)
def test_parse_cell(text, parsed):
    assert parse_cell(text) == parsed


@given(st.dictionaries(st.sampled_from(["a1", "b2", "b4'", "b4''", "b10"]),
                       st.tuples(st.integers(1, 9), st.integers(0, 4)), max_size=4))
def test_format_parse_round_trip(terms):
    assert parse_cell(format_cell(terms)) == terms


def test_parse_cell_rejects_garbage():
    with pytest.raises(ValueError):
        parse_cell("2 q b1")
