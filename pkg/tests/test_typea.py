import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from bkcone.errors import ConfigurationError, PreconditionError
from bkcone.rootsys import build_root_system
from bkcone.schubert import schubert_ring
from bkcone.tensor import invariant_dim
from bkcone.typea import (box_complement, dual_partition, dual_subset, fundamental_to_partition, gl_dim,
                          grassmannian_product_nonzero, grassmannian_top_coefficient, hermitian_membership,
                          horn_set, horn_set_by_lr, horn_set_hat, lr_coefficient, lr_product, partition,
                          saturation_scan_sln, sl_invariant_dim_lr, subset_partition)
from bkcone.weyl import maximal_parabolic, weyl_group


def partitions(max_parts=3, max_part=4):
    return st.lists(st.integers(0, max_part), max_size=max_parts).map(
        lambda xs: tuple(sorted((x for x in xs if x), reverse=True)))


# -- Littlewood-Richardson --------------------------------------------------------


@pytest.mark.parametrize("lam,mu,expected", [
    ((1,), (1,), {(2,): 1, (1, 1): 1}),
    ((2, 1), (2, 1), {(4, 2): 1, (4, 1, 1): 1, (3, 3): 1, (3, 2, 1): 2, (3, 1, 1, 1): 1,
                      (2, 2, 2): 1, (2, 2, 1, 1): 1}),
    ((), (3, 1), {(3, 1): 1}),
])
def test_known_products(lam, mu, expected):
    assert lr_product(lam, mu) == expected


@given(partitions(), partitions())
def test_lr_is_symmetric(lam, mu):
    assert lr_product(lam, mu) == lr_product(mu, lam)


@given(partitions(), partitions(), st.integers(1, 5))
def test_dimension_identity(lam, mu, n):
    # dim V(lam) dim V(mu) = sum_nu c^nu dim V(nu) over shapes with at most n rows
    total = sum(c * gl_dim(nu, n) for nu, c in lr_product(lam, mu).items() if len(nu) <= n)
    assert total == gl_dim(lam, n) * gl_dim(mu, n)


@given(partitions(2, 3), partitions(2, 3), partitions(2, 3))
def test_lr_associativity(a, b, c):
    left, right = {}, {}
    for nu, x in lr_product(a, b).items():
        for rho, y in lr_product(nu, c).items():
            left[rho] = left.get(rho, 0) + x * y
    for nu, x in lr_product(b, c).items():
        for rho, y in lr_product(a, nu).items():
            right[rho] = right.get(rho, 0) + x * y
    assert left == right


def test_max_rows_truncates():
    assert lr_product((1,), (1,), 1) == {(2,): 1}
    assert lr_product((1, 1), (1,), 1) == {}


def test_lr_coefficient_degree_mismatch():
    assert lr_coefficient((2,), (1,), (2, 2)) == 0


@pytest.mark.parametrize("bad", [(1, 2), (-1,)])
def test_partition_validation(bad):
    with pytest.raises(PreconditionError):
        partition(bad)


@pytest.mark.parametrize("lam,n,dim", [((1,), 3, 3), ((2,), 3, 6), ((1, 1), 4, 6), ((2, 1), 3, 8), ((), 5, 1),
                                       ((1, 1, 1), 2, 0)])
def test_gl_dim(lam, n, dim):
    assert gl_dim(lam, n) == dim


# -- Grassmannians -------------------------------------------------------------------


def _coset_rep(W, P, subset):
    """Minimal coset representative ``w`` with ``w({1..r}) = subset``."""
    r = len(subset)
    for w in W.coset_reps(P):
        image = []
        for x in range(1, r + 1):
            for a in reversed(w.word):
                if x == a + 1:
                    x = a + 2
                elif x == a + 2:
                    x = a + 1
            image.append(x)
        if sorted(image) == list(subset):
            return w
    raise AssertionError(subset)


@pytest.mark.parametrize("n,r", [(3, 1), (4, 1), (4, 2), (5, 2), (5, 3)])
def test_grassmannian_coefficients_match_schubert_ring(n, r):
    R = build_root_system(f"A{n - 1}")
    W, P = weyl_group(R), maximal_parabolic(R, r)
    ring = schubert_ring(R, P)
    subs = list(itertools.combinations(range(1, n + 1), r))
    for I, J, K in itertools.product(subs, repeat=3):
        ws = [_coset_rep(W, P, dual_subset(I, n)), _coset_rep(W, P, dual_subset(J, n)), _coset_rep(W, P, K)]
        if sum(ring.dim - w.length for w in ws) == ring.dim:
            expected = ring.top_coefficient(ws, basis="X")
        else:
            expected = 0
        assert grassmannian_top_coefficient(I, J, K, n) == expected


def test_subset_helpers():
    assert subset_partition((2, 4)) == (2, 1)
    assert dual_subset((1, 3), 5) == (3, 5)
    assert box_complement((2, 1), 2, 3) == (2, 1)
    assert box_complement((), 2, 2) == (2, 2)


@pytest.mark.parametrize("args", [((1,), (1, 2), (1,), 3), ((2, 1), (1, 2), (1, 2), 3), ((1, 4), (1, 2), (1, 2), 3),
                                  ((1, 2, 3), (1, 2, 3), (1, 2, 3), 3)])
def test_subset_validation(args):
    with pytest.raises(ConfigurationError):
        grassmannian_top_coefficient(*args)


# -- Horn ----------------------------------------------------------------------------------


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_horn_recursion_matches_lr(n):
    for r in range(1, n):
        assert horn_set(r, n) == horn_set_by_lr(r, n)
        assert horn_set_hat(r, n) == horn_set_by_lr(r, n, nonzero=True)


@pytest.mark.parametrize("r,n,count", [(1, 2, 3), (1, 3, 6), (2, 4, 21), (2, 5, 56)])
def test_horn_counts(r, n, count):
    assert len(horn_set(r, n)) == count


def test_horn_recursion_matches_lr_in_rank_six():
    assert horn_set(3, 6) == horn_set_by_lr(3, 6)


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_horn_set_is_symmetric_in_first_two_slots(n):
    for r in range(1, n):
        S = horn_set(r, n)
        assert all((J, I, K) in S for I, J, K in S)


def test_nonzero_product_is_weaker_than_top_coefficient():
    for I, J, K in horn_set_hat(2, 4):
        assert grassmannian_product_nonzero(I, J, K, 4)


def test_hermitian_membership_basics():
    assert hermitian_membership([1, 0], [1, 0], [2, 0])
    assert hermitian_membership([1, 0], [1, 0], [1, 1])
    assert not hermitian_membership([1, 0], [1, 0], [3, -1])
    assert not hermitian_membership([1, 0], [1, 0], [1, 0])
    with pytest.raises(PreconditionError):
        hermitian_membership([0, 1], [0, 0], [0, 1])
    with pytest.raises(ConfigurationError):
        hermitian_membership([1, 0], [1, 0, 0], [1, 0])


# -- saturation for SL(n) ----------------------------------------------------------


def test_weight_to_partition():
    assert fundamental_to_partition((1, 0, 2)) == (3, 2, 2)
    assert dual_partition((3, 1), 3) == (3, 2)


@pytest.mark.parametrize("label,bound", [("A1", 4), ("A2", 2), ("A3", 1)])
def test_lr_invariants_match_freudenthal(label, bound):
    R = build_root_system(label)
    wts = list(itertools.product(range(bound + 1), repeat=R.rank))
    for a, b, c in itertools.product(wts, repeat=3):
        assert sl_invariant_dim_lr(a, b, c) == invariant_dim(R, a, b, c)


@pytest.mark.parametrize("n,bound", [(2, 6), (3, 3), (4, 2)])
def test_saturation_scan_sln(n, bound):
    result = saturation_scan_sln(n, bound)
    assert result["discrepancies"] == []
    assert result["members"] == result["nonzero"] > 0
