import itertools
import json
from fractions import Fraction
from importlib import resources

import jsonschema
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from bkcone.eigencone import (Inequality, InequalitySystem, chart_functional_to_cartan, compare_with_golden,
                              diagram_automorphism_test, format_inequality, generate, golden_keys, implied,
                              irredundancy_check, parse_linear, primitive, restrict_system)
from bkcone.errors import ConfigurationError, PreconditionError
from bkcone.golden import load_json
from bkcone.rootsys import build_root_system
from bkcone.tensor import dual_weight
from bkcone.typea import hermitian_membership, hermitian_to_cartan, horn_set

from oracles import horn_inequalities_hold, random_hermitian, spectrum

COUNTS = load_json("facet_counts.json")["counts"]
SMALL = ["A2", "B2", "G2", "A3", "B3", "C3"]


def _schema(name):
    return json.loads(resources.files("bkcone.schemas").joinpath(name).read_text())


@pytest.mark.parametrize("label", list(COUNTS))
def test_facet_counts(label):
    assert generate(label, 3, "bk").counts_by_parabolic() == COUNTS[label]


@pytest.mark.parametrize("label", ["A2", "B2", "G2", "A3", "B3", "C3"])
def test_matches_published_lists(label):
    cmp = compare_with_golden(generate(label, 3, "bk"))
    assert cmp.equal, (cmp.missing, cmp.extra)


@pytest.mark.parametrize("label", ["B3", "C3"])
def test_klm_totals(label):
    assert len(generate(label, 3, "klm")) == load_json("facet_counts.json")["klm_totals"][label]


@pytest.mark.parametrize("label", SMALL)
def test_criteria_are_nested(label):
    bk, klm, bs = (generate(label, 3, c).keys() for c in ("bk", "klm", "bs"))
    assert bk <= klm <= bs


@pytest.mark.parametrize("label", ["A2", "A3"])
def test_type_a_criteria_agree(label):
    assert generate(label, 3, "bk").keys() == generate(label, 3, "klm").keys()


@pytest.mark.parametrize("label", SMALL)
def test_system_is_symmetric_under_slot_permutations(label):
    system = generate(label, 3, "bk")
    keys = system.keys()
    n = system.R.rank
    for key in keys:
        slots = [key[j * n:(j + 1) * n] for j in range(3)]
        for perm in itertools.permutations(range(3)):
            assert tuple(itertools.chain.from_iterable(slots[j] for j in perm)) in keys


@pytest.mark.parametrize("label", SMALL)
def test_weight_and_cartan_covectors_agree(label):
    system = generate(label, 3, "bk")
    R = system.R
    for ineq in system.inequalities:
        # lambda_j = a_j / d_j, so the weight covector is the Cartan covector scaled by d_j
        scaled = [c for cov in ineq.cartan_covectors for c in R.weight_to_cartan(cov)]
        assert primitive(scaled) == tuple(itertools.chain.from_iterable(ineq.covectors))


@pytest.mark.parametrize("label", SMALL)
def test_each_inequality_is_a_facet(label):
    system = generate(label, 3, "bk")
    reports = irredundancy_check(system)
    assert all(r.is_facet for r in reports)
    for r in reports:
        assert all(x >= 1 for x in r.witness)


def test_redundant_inequality_is_detected():
    system = generate("A2", 3, "bk")
    a, b = system.inequalities[0], system.inequalities[-1]
    combo = tuple(x + y for x, y in zip(a.key, b.key))
    rows = [list(i.key) for i in system.inequalities]
    assert implied(combo, rows)
    n = system.R.rank
    split = tuple(tuple(combo[j * n:(j + 1) * n]) for j in range(3))
    extra = Inequality("A2", 1, ((), (), ()), split, split)
    bigger = InequalitySystem("A2", 3, "bk", system.inequalities + [extra])
    reports = irredundancy_check(bigger, [len(bigger) - 1])
    assert not reports[0].is_facet


def test_non_consequence_is_not_implied():
    rows = [list(i.key) for i in generate("A2", 3, "bk").inequalities]
    # a single positive coordinate is never forced non-positive
    assert not implied([1, 0, 0, 0, 0, 0], rows)


@pytest.mark.parametrize("label", SMALL)
def test_serialisation_round_trip_and_schema(label):
    system = generate(label, 3, "bk")
    data = json.loads(system.to_json())
    jsonschema.validate(data, _schema("eigencone_system.schema.json"))
    back = InequalitySystem.from_dict(data)
    assert back.inequalities == system.inequalities
    assert back.to_json() == system.to_json()


def test_disk_cache(tmp_path, monkeypatch):
    monkeypatch.setenv("BKCONE_CACHE_DIR", str(tmp_path))
    first = generate("B2", 3, "bk")
    files = list(tmp_path.iterdir())
    assert [f.name for f in files] == ["eigencone-B2-s3-bk.json"]
    again = generate("B2", 3, "bk")
    assert again.inequalities == first.inequalities


def test_generation_is_deterministic():
    assert generate("B3", 3, "bk").to_json() == generate("B3", 3, "bk").to_json()


def test_selected_parabolics():
    part = generate("B3", 3, "bk", parabolics=[2])
    assert part.counts_by_parabolic() == [0, COUNTS["B3"][1], 0]


@pytest.mark.parametrize("label", ["A2", "B2", "G2", "B3"])
def test_batch_membership_matches_exact(label):
    system = generate(label, 3, "bk")
    n = system.R.rank
    rng = np.random.default_rng(7)
    pts = rng.integers(0, 5, size=(300, 3 * n))
    batch = system.contains_batch(pts)
    exact = [system.contains([row[j * n:(j + 1) * n] for j in range(3)]) for row in pts.tolist()]
    assert batch.tolist() == exact
    assert 0 < batch.sum() < len(batch)


@pytest.mark.parametrize("label", SMALL)
def test_dual_pairs_lie_in_the_cone(label):
    system = generate(label, 3, "bk")
    R = system.R
    rng = np.random.default_rng(3)
    for _ in range(20):
        a = [int(x) for x in rng.integers(0, 6, size=R.rank)]
        # h, -w0 h and 0 sum to zero after moving to the dominant chamber
        dual = list(dual_weight(R, a))
        assert system.contains([a, dual, [0] * R.rank], kind="cartan")


@pytest.mark.parametrize("label", SMALL)
def test_single_nonzero_point_is_outside(label):
    system = generate(label, 3, "bk")
    n = system.R.rank
    for i in range(n):
        e = [int(i == j) for j in range(n)]
        assert not system.contains([e, [0] * n, [0] * n], kind="cartan")


def test_membership_input_errors():
    system = generate("A2", 3, "bk")
    with pytest.raises(PreconditionError):
        system.contains([[1, -1], [0, 0], [0, 0]])
    with pytest.raises(ConfigurationError):
        system.contains([[1, 1, 1], [0, 0], [0, 0]])
    with pytest.raises(ConfigurationError):
        system.contains([[1, 1], [0, 0]])
    with pytest.raises(PreconditionError):
        system.contains_batch(np.array([[0, 0, 0, 0, 0, -1]]))


@pytest.mark.parametrize("label", ["A5", "E6", "X2"])
def test_generate_rejects_unsupported_types(label):
    with pytest.raises(ConfigurationError):
        generate(label)


def test_generate_rejects_bad_arguments():
    with pytest.raises(ConfigurationError):
        generate("A2", 3, "nope")
    with pytest.raises(ConfigurationError):
        generate("A2", 1)


@pytest.mark.parametrize("label", ["A2", "B2", "A3", "B3", "C3"])
def test_formatted_text_parses_back(label):
    system = generate(label, 3, "bk")
    entry = load_json("inequality_lists.json")["systems"][label]
    R = system.R
    for ineq in system.inequalities:
        text = format_inequality(ineq, entry["chart"])
        slots = parse_linear(text, entry["variables"], 3)
        cart = [chart_functional_to_cartan(R, entry["chart"], sl) for sl in slots]
        assert primitive(list(itertools.chain.from_iterable(cart))) == ineq.key


def test_golden_keys_are_closed_under_permutation():
    for p, keys in golden_keys("B3").items():
        assert len(keys) == COUNTS["B3"][p - 1]


# -- Hermitian eigenvalues ------------------------------------------------------


def _rational_spectra(rng, n):
    a, b = random_hermitian(rng, n), random_hermitian(rng, n)
    e1, e2, e3 = spectrum(a), spectrum(b), spectrum(a + b)
    e1, e2, e3 = ([Fraction(x).limit_denominator(10 ** 6) for x in e] for e in (e1, e2, e3))
    shift = (sum(e1) + sum(e2) - sum(e3)) / n
    return e1, e2, [x + shift for x in e3]


@pytest.mark.parametrize("n", [2, 3, 4])
def test_random_hermitian_sums_satisfy_horn(n):
    rng = np.random.default_rng(n)
    triples = [t for r in range(1, n) for t in horn_set(r, n)]
    for _ in range(50):
        a, b = random_hermitian(rng, n), random_hermitian(rng, n)
        assert horn_inequalities_hold(spectrum(a), spectrum(b), spectrum(a + b), triples)


@pytest.mark.parametrize("n", [3, 4])
def test_hermitian_membership_matches_eigencone(n):
    system = generate(f"A{n - 1}", 3, "bk")
    rng = np.random.default_rng(10 + n)
    for _ in range(40):
        e1, e2, e3 = _rational_spectra(rng, n)
        assert hermitian_membership(e1, e2, e3)
        assert system.contains(hermitian_to_cartan(e1, e2, e3), kind="cartan")
    # perturb the sum outside the cone by inflating its top eigenvalue
    for _ in range(40):
        e1, e2, e3 = _rational_spectra(rng, n)
        gap = abs(e1[0]) + abs(e2[0]) + abs(e3[0]) + 1
        bad = [e3[0] + gap] + e3[1:-1] + [e3[-1] - gap]
        assert not hermitian_membership(e1, e2, bad)
        assert not system.contains(hermitian_to_cartan(e1, e2, bad), kind="cartan")


@given(st.lists(st.integers(0, 6), min_size=9, max_size=9))
def test_cartan_and_horn_membership_agree_sl4(vals):
    # spectra built from gaps, third one chosen to balance the trace
    system = generate("A3", 3, "bk")
    pts = [vals[0:3], vals[3:6], vals[6:9]]
    tails = []
    for gaps in pts:
        spec = [Fraction(sum(gaps[i:])) for i in range(3)] + [Fraction(0)]
        mean = sum(spec) / 4
        tails.append([x - mean for x in spec])
    e1, e2, c = tails
    e3 = [-x for x in reversed(c)]
    assert hermitian_membership(e1, e2, e3) == system.contains(pts, kind="cartan")


# -- diagram automorphisms ------------------------------------------------------


@pytest.mark.parametrize("sub,amb", [("C2", "A3"), ("B2", "A4")])
def test_diagram_automorphism_restriction(sub, amb):
    rep = diagram_automorphism_test(sub, amb, samples=200, seed=1)
    assert rep.restricted_implied and rep.sub_implied
    assert rep.disagreements == 0


def test_restriction_is_nonempty():
    rows = restrict_system(generate("A3", 3, "bk"), build_root_system("C2"))
    assert rows and all(any(r) for r in rows)


def test_embedding_rejects_mismatched_ranks():
    with pytest.raises(ConfigurationError):
        diagram_automorphism_test("C2", "A4", samples=1)
