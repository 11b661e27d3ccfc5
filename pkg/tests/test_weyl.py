import itertools
from math import prod

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from bkcone.errors import ConfigurationError
from bkcone.rootsys import build_root_system
from bkcone.weyl import (Parabolic, borel, dim_gp, maximal_parabolic, parabolic_from_complement, str_to_word,
                         weyl_group, word_to_str)


def all_parabolics(n):
    return [Parabolic(n, frozenset(c)) for k in range(n + 1) for c in itertools.combinations(range(n), k)]


@pytest.mark.parametrize(
    "label, order",
    [("A1", 2), ("A2", 6), ("A3", 24), ("A4", 120), ("B2", 8), ("B3", 48), ("C3", 48), ("B4", 384),
     ("D4", 192), ("G2", 12), ("F4", 1152)],
)
def test_group_order(label, order):
    assert len(weyl_group(label)) == order


@pytest.mark.parametrize("label", ["A3", "B3", "G2", "D4"])
def test_longest_element(label):
    R = build_root_system(label)
    W = weyl_group(R)
    assert W.longest.length == R.num_positive
    assert len(W.inversion_set(W.longest)) == R.num_positive


@pytest.mark.parametrize(
    "label, sizes",
    [("B3", [6, 12, 8]), ("C3", [6, 12, 8]), ("A3", [4, 6, 4]), ("G2", [6, 6]), ("D4", [8, 24, 8, 8]),
     ("F4", [24, 96, 96, 24])],
)
def test_coset_rep_counts(label, sizes):
    R = build_root_system(label)
    W = weyl_group(R)
    assert [len(W.coset_reps(maximal_parabolic(R, p))) for p in range(1, R.rank + 1)] == sizes


def test_b2_coset_words():
    R = build_root_system("B2")
    W = weyl_group(R)
    assert [str(w) for w in W.coset_reps(maximal_parabolic(R, 1))] == ["e", "r", "sr", "rsr"]
    assert [str(w) for w in W.coset_reps(maximal_parabolic(R, 2))] == ["e", "s", "rs", "srs"]


@pytest.mark.parametrize("label", ["A3", "B3", "G2"])
def test_canonical_word_is_lex_least_reduced(label):
    W = weyl_group(label)
    for w in W.elements:
        for i in range(W.R.rank):
            # any reduced word starting with a smaller letter would be lex-smaller
            if w.word and i < w.word[0]:
                assert W.lengths[W.lmul[w.index, i]] > w.length


def test_word_strings_round_trip():
    for word in [(), (0,), (1, 0, 2), (3, 2, 1, 0)]:
        assert str_to_word(word_to_str(word)) == word
    with pytest.raises(ConfigurationError):
        str_to_word("rx")


@pytest.mark.parametrize("label", ["A2", "B2", "G2", "A3", "B3"])
def test_inversion_sets(label):
    W = weyl_group(label)
    for w in W.elements:
        inv = W.inversion_set(w)
        assert len(inv) == w.length
        assert W.from_inversion_set(inv) == w


@pytest.mark.parametrize("label", ["A2", "B2", "G2", "A3", "B3", "C3"])
def test_parabolic_sizes_and_dimensions(label):
    R = build_root_system(label)
    W = weyl_group(R)
    for P in all_parabolics(R.rank):
        reps = W.coset_reps(P)
        levi_order = sum(1 for w in W.elements if W.in_levi_group(w, P))
        assert len(reps) * levi_order == len(W)
        assert max(w.length for w in reps) == dim_gp(R, P)


@pytest.mark.parametrize("label", ["B2", "G2", "A3", "B3"])
def test_parabolic_factorisation(label):
    R = build_root_system(label)
    W = weyl_group(R)
    for P in all_parabolics(R.rank):
        for w in W.elements:
            u = W.min_coset_rep(w, P)
            v = W.mul(W.inverse(u), w)
            assert W.is_min_coset_rep(u, P)
            assert W.in_levi_group(v, P)
            assert u.length + v.length == w.length


@pytest.mark.parametrize("label", ["B2", "G2", "A3", "C3"])
def test_duality_is_a_length_reversing_involution(label):
    R = build_root_system(label)
    W = weyl_group(R)
    for P in all_parabolics(R.rank):
        N = dim_gp(R, P)
        for w in W.coset_reps(P):
            d = W.dual(w, P)
            assert W.is_min_coset_rep(d, P)
            assert d.length == N - w.length
            assert W.dual(d, P) == w


def _bruhat_by_reflections(W, w):
    """Lower interval via chains ``w > w t > ...`` of reflections."""
    refl = set()
    for x in W.elements:
        for i in range(W.R.rank):
            refl.add(W.mul(W.mul(x, W.elements[int(W.rmul[0, i])]), W.inverse(x)))
    seen, todo = {w}, [w]
    while todo:
        y = todo.pop()
        for t in refl:
            z = W.mul(y, t)
            if z.length < y.length and z not in seen:
                seen.add(z)
                todo.append(z)
    return seen


@pytest.mark.parametrize("label", ["A2", "B2", "G2", "A3"])
def test_bruhat_matches_reflection_chains(label):
    W = weyl_group(label)
    for w in W.elements:
        expected = _bruhat_by_reflections(W, w)
        assert {u for u in W.elements if W.bruhat_leq(u, w)} == expected


@pytest.mark.parametrize("label", ["A2", "B2", "G2", "A3", "B3", "C3"])
def test_chi_dual_formula(label):
    R = build_root_system(label)
    W = weyl_group(R)
    for P in all_parabolics(R.rank):
        for w in W.coset_reps(P):
            W.chi(w, P)  # raises on disagreement


def test_chi_of_identity_on_borel_is_rho():
    R = build_root_system("B3")
    W = weyl_group(R)
    assert W.chi(W.identity, borel(R)) == (2, 2, 2)
    assert W.chi(W.longest, borel(R)) == (0, 0, 0)


@pytest.mark.parametrize("label", ["A3", "B3", "G2", "F4"])
@given(data=st.data())
def test_weight_action_is_a_group_action(label, data):
    W = weyl_group(label)
    u = W.elements[data.draw(st.integers(0, len(W) - 1))]
    v = W.elements[data.draw(st.integers(0, len(W) - 1))]
    lam = tuple(data.draw(st.lists(st.integers(-5, 5), min_size=W.R.rank, max_size=W.R.rank)))
    assert W.act_weight(W.mul(u, v), lam) == W.act_weight(u, W.act_weight(v, lam))
    assert W.R.form(W.act_weight(u, lam), W.act_weight(u, lam)) == W.R.form(lam, lam)
    assert W.mul(u, W.inverse(u)) == W.identity


@pytest.mark.parametrize("label", ["B3", "G2"])
@given(data=st.data())
def test_length_is_number_of_inversions_of_products(label, data):
    W = weyl_group(label)
    u = W.elements[data.draw(st.integers(0, len(W) - 1))]
    i = data.draw(st.integers(0, W.R.rank - 1))
    us = W.elements[int(W.rmul[u.index, i])]
    assert abs(us.length - u.length) == 1
    simple = tuple(int(k == i) for k in range(W.R.rank))
    # l(u s_i) > l(u) iff u alpha_i > 0
    assert (us.length > u.length) == all(x >= 0 for x in W.act_root(u, simple))


def test_parabolic_helpers():
    R = build_root_system("B3")
    P = parabolic_from_complement(R, [1, 3])
    assert P.complement == (0, 2)
    assert maximal_parabolic(R, 2).is_maximal
    assert borel(R).is_borel
    assert maximal_parabolic(R, 2).contains(borel(R))
    with pytest.raises(ConfigurationError):
        maximal_parabolic(R, 4)


@pytest.mark.parametrize("label", ["A3", "B3", "G2"])
def test_poincare_polynomial_of_w_is_product_of_degrees(label):
    degrees = {"A3": (2, 3, 4), "B3": (2, 4, 6), "G2": (2, 6)}[label]
    W = weyl_group(label)
    counts = np.bincount(W.lengths)
    poly = np.array([1])
    for d in degrees:
        poly = np.convolve(poly, np.ones(d, dtype=np.int64))
    assert counts.tolist() == poly.tolist()
    assert prod(degrees) == len(W)
