"""Reference data shipped with the package and comparison helpers."""
from __future__ import annotations

import itertools
import json
import re
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from math import comb

from .bkprod import deformed_product
from .rootsys import build_root_system
from .weyl import dim_gp, maximal_parabolic, str_to_word, weyl_group, word_to_str

_TERM = re.compile(r"^\s*(\d+)?\s*(?:t(?:\^(\d+))?)?\s*([ab]\d+'*)\s*$")


def load_json(name: str):
    with resources.files("bkcone.data").joinpath(name).open("r", encoding="utf-8") as fh:
        return json.load(fh)


@lru_cache(maxsize=None)
def deformed_tables() -> tuple:
    return tuple(load_json("deformed_tables.json")["tables"])


def parse_cell(expr: str) -> dict[str, tuple[int, int]]:
    """``"2 t b4' + t b4''" -> {"b4'": (2, 1), "b4''": (1, 1)}`` (coefficient, tau power)."""
    expr = expr.strip()
    if expr == "0":
        return {}
    out = {}
    for term in expr.split("+"):
        m = _TERM.match(term)
        if not m:
            raise ValueError(f"cannot parse table term {term!r}")
        coef = int(m.group(1) or 1)
        has_t = "t" in term.replace(m.group(3), "")
        power = int(m.group(2)) if m.group(2) else (1 if has_t else 0)
        out[m.group(3)] = (coef, power)
    return out


def format_cell(terms: dict) -> str:
    """Inverse of :func:`parse_cell`; terms are ordered by label."""
    if not terms:
        return "0"
    parts = []
    for lab in sorted(terms, key=lambda x: (len(x.rstrip("'")), x)):
        c, k = terms[lab]
        coef = "" if c == 1 else f"{c} "
        tau = "" if k == 0 else ("t " if k == 1 else f"t^{k} ")
        parts.append(f"{coef}{tau}{lab}")
    return " + ".join(parts)


def table_entry(name: str) -> dict:
    for entry in deformed_tables():
        if entry["name"] == name:
            return entry
    raise KeyError(name)


@dataclass
class CellResult:
    table: str
    row: str
    col: str
    expected: dict
    computed: dict
    note: str = ""

    @property
    def ok(self) -> bool:
        return self.expected == self.computed


def recompute_cell(entry: dict, row: str, col: str) -> tuple[dict, str]:
    """Recompute one table cell; returns the labelled result and a note on labels.

    Terms whose Weyl element has no label are reported by canonical word.
    """
    R = build_root_system(entry["type"])
    P = maximal_parabolic(R, entry["parabolic"])
    W = weyl_group(R)
    labels = entry["labels"]
    elems = {lab: W.from_word(str_to_word(word)) for lab, word in labels.items()}
    reps = set(W.coset_reps(P))
    notes = []
    for lab, w in elems.items():
        if w not in reps or w.length != len(str_to_word(labels[lab])):
            notes.append(f"label {lab}={labels[lab]} is not a reduced minimal coset word")
    back = {}
    for lab, w in elems.items():
        if w in reps and w.length == len(str_to_word(labels[lab])):
            back.setdefault(w, lab)
    prod = deformed_product(R, P, elems[row], elems[col], basis="epsilon")
    out = {}
    for w, (c, e) in prod.terms.items():
        out[back.get(w, word_to_str(w.word))] = (c, sum(e))
    return out, "; ".join(notes)


def compare_tables(name: str | None = None) -> list[CellResult]:
    results = []
    for entry in deformed_tables():
        if name is not None and entry["name"] != name:
            continue
        for row, col, expr in entry["cells"]:
            computed, note = recompute_cell(entry, row, col)
            results.append(CellResult(entry["name"], row, col, parse_cell(expr), computed, note))
    return results


# -- typo diagnostics -----------------------------------------------------------


def hilbert_degree(label: str, p: int) -> int:
    """Degree of ``G/P_p`` in the embedding by ``omega_p`` (finite differences of ``dim V(k omega_p)``)."""
    from .tensor import weyl_dim

    R = build_root_system(label)
    N = dim_gp(R, maximal_parabolic(R, p))
    vals = [weyl_dim(R, [k * int(i == p - 1) for i in range(R.rank)]) for k in range(N + 1)]
    return sum((-1) ** (N - k) * comb(N, k) * v for k, v in enumerate(vals))


def _cell_map(entry: dict, overrides: dict | None = None) -> dict:
    cells = {}
    for row, col, expr in entry["cells"]:
        val = parse_cell(expr)
        if overrides and (row, col) in overrides:
            val = overrides[(row, col)]
        cells[(row, col)] = val
        cells[(col, row)] = val
    return cells


def _mul(cells: dict, x: dict, y: dict):
    """Product of labelled combinations ``{label: (coef, tau power)}`` at a single formal ``tau``."""
    out: dict = {}
    for (a, (ca, ka)), (b, (cb, kb)) in itertools.product(x.items(), y.items()):
        if (a, b) not in cells:
            return None
        for lab, (c, k) in cells[(a, b)].items():
            key = (lab, ka + kb + k)
            out[key] = out.get(key, 0) + ca * cb * c
    merged: dict = {}
    for (lab, k), c in out.items():
        if c:
            if lab in merged:
                return None  # mixed tau powers cannot be represented
            merged[lab] = (c, k)
    return merged


def table_degree(entry: dict, overrides: dict | None = None) -> int | None:
    """``(divisor)^N`` read off the table at ``tau = 1``; ``None`` if a needed cell is absent."""
    cells = _cell_map(entry, overrides)
    div = [lab for lab, w in entry["labels"].items() if len(w) == 1]
    if len(div) != 1:
        return None
    d = div[0]
    acc = {d: (1, 0)}
    top = max(entry["labels"], key=lambda lab: len(entry["labels"][lab]))
    for _ in range(len(entry["labels"][top]) - 1):
        acc = _mul(cells, acc, {d: (1, 0)})
        if acc is None:
            return None
    if set(acc) - {top}:
        return None
    return acc.get(top, (0, 0))[0]


def associativity_failures(entry: dict, overrides: dict | None = None) -> list:
    """Label triples with ``(ab)c != a(bc)`` among products the table determines."""
    cells = _cell_map(entry, overrides)
    labels = sorted(entry["labels"])
    bad = []
    for a, b, c in itertools.product(labels, repeat=3):
        left = _mul(cells, _mul(cells, {a: (1, 0)}, {b: (1, 0)}) or {}, {c: (1, 0)})
        right = _mul(cells, {a: (1, 0)}, _mul(cells, {b: (1, 0)}, {c: (1, 0)}) or {})
        if left is not None and right is not None and left != right:
            bad.append((a, b, c))
    return bad


@dataclass
class TypoReport:
    table: str
    cells: list
    printed_degree: int | None
    corrected_degree: int | None
    expected_degree: int
    printed_assoc_failures: int
    corrected_assoc_failures: int
    notes: list = field(default_factory=list)

    @property
    def explained(self) -> bool:
        """The corrected table passes both invariants and the printed one fails one."""
        corrected_ok = self.corrected_degree == self.expected_degree and self.corrected_assoc_failures == 0
        printed_bad = self.printed_degree != self.expected_degree or self.printed_assoc_failures > 0
        return corrected_ok and printed_bad


def explain_mismatches(results: list[CellResult]) -> list[TypoReport]:
    """Test each table with mismatches against the degree identity and associativity."""
    reports = []
    by_table: dict = {}
    for r in results:
        if not r.ok:
            by_table.setdefault(r.table, []).append(r)
    for name, bad in sorted(by_table.items()):
        entry = table_entry(name)
        overrides = {(r.row, r.col): r.computed for r in bad}
        reports.append(TypoReport(
            name,
            [(r.row, r.col, format_cell(r.expected), format_cell(r.computed)) for r in bad],
            table_degree(entry),
            table_degree(entry, overrides),
            hilbert_degree(entry["type"], entry["parabolic"]),
            len(associativity_failures(entry)),
            len(associativity_failures(entry, overrides)),
            [r.note for r in bad if r.note],
        ))
    return reports
