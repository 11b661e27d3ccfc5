"""Type A specialisations: Littlewood-Richardson coefficients and Horn's sets.

Subsets of ``{1..n}`` are sorted tuples of 1-based integers.  Partitions are
non-increasing tuples without trailing zeros.
"""
from __future__ import annotations

import itertools
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Iterable, Sequence

import numpy as np

from .errors import ConfigurationError, PreconditionError

Subset = tuple
Triple = tuple


def partition(p: Iterable[int]) -> tuple[int, ...]:
    vals = [int(x) for x in p]
    if any(x < 0 for x in vals):
        raise PreconditionError(f"negative part in {vals}")
    if any(a < b for a, b in zip(vals, vals[1:])):
        raise PreconditionError(f"{vals} is not a partition")
    while vals and vals[-1] == 0:
        vals.pop()
    return tuple(vals)


# -- Littlewood-Richardson ------------------------------------------------------


@lru_cache(maxsize=None)
def lr_product(lam: tuple, mu: tuple, max_rows: int | None = None) -> dict:
    """``s_lam * s_mu = sum_nu c^nu_{lam,mu} s_nu`` via Littlewood-Richardson tableaux.

    The letters ``k = 1, 2, ..`` of ``mu`` are added as horizontal strips; the
    reverse reading word must be a lattice word, i.e. for every row ``i`` the
    number of ``k+1`` in rows ``<= i`` is at most the number of ``k`` in rows
    ``< i``.  With ``max_rows`` set, shapes with more rows are dropped.
    """
    lam, mu = partition(lam), partition(mu)
    rows = len(lam) + len(mu)
    if max_rows is not None:
        rows = min(rows, max_rows)
        if len(lam) > rows:
            return {}
    start = list(lam) + [0] * (rows - len(lam))
    out: dict = {}

    def place(k: int, shape: list[int], prev_counts: list[int]):
        if k == len(mu):
            nu = partition(shape)
            out[nu] = out.get(nu, 0) + 1
            return
        need = mu[k]
        counts = [0] * rows

        def row(j: int, remaining: int, new_shape: list[int], cum: int, cum_prev: int):
            if j == rows:
                if remaining == 0:
                    place(k + 1, new_shape, counts[:])
                return
            upper = remaining if j == 0 else min(remaining, new_shape_prev_old[j - 1] - shape[j])
            if k > 0:
                # lattice: cum + x <= sum of previous letter in rows < j
                upper = min(upper, cum_prev - cum)
            for x in range(max(upper, -1), -1, -1):
                counts[j] = x
                new_shape[j] = shape[j] + x
                row(j + 1, remaining - x, new_shape, cum + x, cum_prev + prev_counts[j])
            counts[j] = 0
            new_shape[j] = shape[j]

        new_shape_prev_old = shape  # horizontal strip: new row j ends by old row j-1
        row(0, need, shape[:], 0, 0)

    place(0, start, [0] * rows)
    return out


def lr_coefficient(lam: Sequence[int], mu: Sequence[int], nu: Sequence[int]) -> int:
    lam, mu, nu = partition(lam), partition(mu), partition(nu)
    if sum(lam) + sum(mu) != sum(nu):
        return 0
    return lr_product(lam, mu).get(nu, 0)


def gl_dim(lam: Sequence[int], n: int) -> int:
    """Dimension of the ``GL(n)`` polynomial representation (Weyl's product formula)."""
    lam = partition(lam)
    if len(lam) > n:
        return 0
    lam = list(lam) + [0] * (n - len(lam))
    num, den = 1, 1
    for i in range(n):
        for j in range(i + 1, n):
            num *= lam[i] - lam[j] + j - i
            den *= j - i
    return num // den


# -- Grassmannian Schubert calculus -------------------------------------------


def subset_partition(I: Sequence[int]) -> tuple[int, ...]:
    """``lambda_I = (i_r - r, .., i_1 - 1)``; codimension of ``X_{I'}``."""
    r = len(I)
    return partition(I[r - 1 - k] - (r - k) for k in range(r))


def dual_subset(I: Sequence[int], n: int) -> tuple[int, ...]:
    return tuple(sorted(n + 1 - i for i in I))


def box_complement(lam: Sequence[int], r: int, c: int) -> tuple[int, ...]:
    lam = list(lam) + [0] * r
    return partition(c - lam[r - 1 - i] for i in range(r))


def _check_subsets(I, J, K, n):
    r = len(I)
    if not (0 < r < n) or len(J) != r or len(K) != r:
        raise ConfigurationError("subsets must have a common size r with 0 < r < n")
    for S in (I, J, K):
        if list(S) != sorted(set(S)) or S[0] < 1 or S[-1] > n:
            raise ConfigurationError(f"{S} is not an increasing subset of 1..{n}")


def grassmannian_top_coefficient(I, J, K, n: int) -> int:
    """Coefficient ``d`` in ``[X_{I'}][X_{J'}][X_K] = d [X_e]`` on ``Gr(r, n)``."""
    _check_subsets(I, J, K, n)
    r = len(I)
    a, b, c = subset_partition(I), subset_partition(J), subset_partition(dual_subset(K, n))
    if sum(a) + sum(b) + sum(c) != r * (n - r):
        return 0
    return lr_coefficient(a, b, box_complement(c, r, n - r))


def grassmannian_product_nonzero(I, J, K, n: int) -> bool:
    """Whether ``[X_{I'}][X_{J'}][X_K]`` is non-zero (any degree)."""
    _check_subsets(I, J, K, n)
    r = len(I)
    a, b, c = subset_partition(I), subset_partition(J), subset_partition(dual_subset(K, n))
    target = list(box_complement(c, r, n - r)) + [0] * r
    for nu, coef in lr_product(a, b, r).items():
        nu_l = list(nu) + [0] * r
        if coef and all(nu_l[i] <= target[i] for i in range(r)):
            return True
    return False


# -- Horn's recursion ------------------------------------------------------------


def _subsets(r: int, n: int) -> list[tuple[int, ...]]:
    return list(itertools.combinations(range(1, n + 1), r))


def _recursive_ok(I, J, K, lower: dict) -> bool:
    for p, triples in lower.items():
        tri = p * (p + 1) // 2
        for F, G, H in triples:
            if sum(I[f - 1] for f in F) + sum(J[g - 1] for g in G) > tri + sum(K[h - 1] for h in H):
                return False
    return True


@lru_cache(maxsize=None)
def horn_set(r: int, n: int) -> frozenset:
    """Horn's set ``S^r_n`` (equality in the top condition)."""
    return _horn(r, n, exact=True)


@lru_cache(maxsize=None)
def horn_set_hat(r: int, n: int) -> frozenset:
    """The set with the top condition relaxed to an inequality."""
    return _horn(r, n, exact=False)


def _horn(r: int, n: int, exact: bool) -> frozenset:
    if not 0 < r < n:
        raise ConfigurationError("need 0 < r < n")
    lower = {p: (horn_set if exact else horn_set_hat)(p, r) for p in range(1, r)}
    tri = r * (r + 1) // 2
    subs = _subsets(r, n)
    sums = {S: sum(S) for S in subs}
    out = set()
    for I in subs:
        for J in subs:
            for K in subs:
                lhs, rhs = sums[I] + sums[J], tri + sums[K]
                if (lhs == rhs) if exact else (lhs <= rhs):
                    if _recursive_ok(I, J, K, lower):
                        out.add((I, J, K))
    return frozenset(out)


def horn_set_by_lr(r: int, n: int, nonzero: bool = False) -> frozenset:
    """The same set computed from Littlewood-Richardson coefficients."""
    subs = _subsets(r, n)
    out = set()
    for I, J, K in itertools.product(subs, repeat=3):
        if nonzero:
            if grassmannian_product_nonzero(I, J, K, n):
                out.add((I, J, K))
        elif grassmannian_top_coefficient(I, J, K, n):
            out.add((I, J, K))
    return frozenset(out)


# -- Hermitian eigenvalue problem ---------------------------------------------


def _spectrum(a: Sequence) -> list[Fraction]:
    vals = [Fraction(x) for x in a]
    if any(x < y for x, y in zip(vals, vals[1:])):
        raise PreconditionError("eigenvalues must be listed in non-increasing order")
    return vals


def hermitian_membership(a1: Sequence, a2: Sequence, a3: Sequence) -> bool:
    """Whether Hermitian ``A, B`` with spectra ``a1, a2`` can have ``A + B`` of spectrum ``a3``."""
    e1, e2, e3 = _spectrum(a1), _spectrum(a2), _spectrum(a3)
    n = len(e1)
    if len(e2) != n or len(e3) != n:
        raise ConfigurationError("spectra must have equal length")
    if sum(e3) != sum(e1) + sum(e2):
        return False
    for r in range(1, n):
        for I, J, K in horn_set(r, n):
            if sum(e3[k - 1] for k in K) > sum(e1[i - 1] for i in I) + sum(e2[j - 1] for j in J):
                return False
    return True


def hermitian_to_cartan(a1: Sequence, a2: Sequence, a3: Sequence) -> list[list[Fraction]]:
    """Map ``(a1, a2, a3)`` to ``(a1, a2, a3*)`` in ``alpha_i(h)`` coordinates of ``sl(n)``."""
    out = []
    for k, spec in enumerate((a1, a2, a3)):
        e = _spectrum(spec)
        if k == 2:
            e = [-x for x in reversed(e)]
        out.append([e[i] - e[i + 1] for i in range(len(e) - 1)])
    return out


# -- saturation for SL(n) -------------------------------------------------------


def fundamental_to_partition(lam: Sequence[int]) -> tuple[int, ...]:
    """Fundamental coordinates of an ``SL(n)`` weight to a partition with ``< n`` rows."""
    out, acc = [], 0
    for x in reversed(list(lam)):
        acc += int(x)
        out.append(acc)
    return partition(reversed(out))


def dual_partition(nu: Sequence[int], n: int) -> tuple[int, ...]:
    nu = list(nu) + [0] * n
    nu = nu[:n]
    return partition(nu[0] - nu[n - 1 - i] for i in range(n))


def sl_invariant_dim_lr(lam: Sequence[int], mu: Sequence[int], nu: Sequence[int]) -> int:
    """``dim (V(lam) x V(mu) x V(nu))^{SL(n)}`` from LR coefficients (fundamental coordinates)."""
    n = len(lam) + 1
    a, b = fundamental_to_partition(lam), fundamental_to_partition(mu)
    c = dual_partition(fundamental_to_partition(nu), n)
    diff = sum(a) + sum(b) - sum(c)
    if diff < 0 or diff % n:
        return 0
    k = diff // n
    target = partition([x + k for x in list(c) + [0] * (n - len(c))])
    return lr_product(a, b, n).get(target, 0)


def saturation_scan_sln(n: int, bound: int, system=None) -> dict:
    """Compare cone membership with non-vanishing of invariants for ``SL(n)``.

    Scans all triples of dominant weights with fundamental coordinates in
    ``0..bound`` satisfying the root-lattice condition.  Returns counts and
    the list of discrepancies (expected empty).
    """
    from .eigencone import generate

    if n < 2:
        raise ConfigurationError("n must be at least 2")
    system = system or generate(f"A{n - 1}", 3, "bk")
    wts = list(itertools.product(range(bound + 1), repeat=n - 1))
    level = {w: sum((i + 1) * x for i, x in enumerate(w)) % n for w in wts}
    triples = [(a, b, c) for a in wts for b in wts for c in wts
               if (level[a] + level[b] + level[c]) % n == 0]
    pts = np.array([a + b + c for a, b, c in triples], dtype=np.int64).reshape(len(triples), 3 * (n - 1))
    member = system.contains_batch(pts)
    discrepancies = []
    positive = 0
    for (a, b, c), inside in zip(triples, member):
        dim = sl_invariant_dim_lr(a, b, c)
        positive += dim > 0
        if bool(inside) != (dim > 0):
            discrepancies.append((a, b, c, bool(inside), dim))
    return {"n": n, "bound": bound, "triples": len(triples), "members": int(member.sum()),
            "nonzero": positive, "discrepancies": discrepancies}


def horn_count(r: int, n: int) -> int:
    return len(horn_set(r, n))


def num_subsets(r: int, n: int) -> int:
    return comb(n, r)
