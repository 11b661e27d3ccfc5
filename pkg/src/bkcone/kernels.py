"""Integer hot loops, each with a numba implementation and a numpy fallback.

All kernels work in ``int64``.  Callers check overflow bounds up front and
switch to the object-dtype numpy path when a bound is exceeded, so results are
always exact.
"""
from __future__ import annotations

import numpy as np

from . import _accel
from ._accel import njit

INT64_SAFE = 2**62


# -- Billey localisation over a reduced word ----------------------------------


@njit
def _localization_numba(rmul, lengths, word, heights):
    size = rmul.shape[0]
    val = np.zeros(size, dtype=np.int64)
    val[0] = 1
    for j in range(word.shape[0]):
        i = word[j]
        h = heights[j]
        new = val.copy()
        for y in range(size):
            if val[y] != 0:
                z = rmul[y, i]
                if lengths[z] > lengths[y]:
                    new[z] += val[y] * h
        val = new
    return val


def _localization_numpy(rmul, lengths, word, heights, dtype=np.int64):
    size = rmul.shape[0]
    val = np.zeros(size, dtype=dtype)
    val[0] = 1
    for i, h in zip(word.tolist(), heights.tolist()):
        targets = rmul[:, i]
        mask = (val != 0) & (lengths[targets] > lengths)
        new = val.copy()
        np.add.at(new, targets[mask], val[mask] * h)
        val = new
    return val


def localization_vector(rmul, lengths, word, heights) -> np.ndarray:
    """Specialised Billey values ``xi^u(v)`` for every ``u`` at once.

    ``word`` is a reduced word of ``v``; ``heights[j]`` is the value of the
    partially reflected root ``s_{i1} .. s_{i(j-1)} alpha_{ij}`` at the chosen
    regular point.  Entry ``u`` of the result sums, over reduced subwords for
    ``u``, the product of the selected heights.
    """
    word = np.asarray(word, dtype=np.int64)
    heights = np.asarray(heights, dtype=np.int64)
    bound = 1
    for h in heights.tolist():
        bound *= 1 + abs(h)
    if bound >= INT64_SAFE:
        return _localization_numpy(rmul, lengths, word, heights.astype(object), dtype=object)
    if _accel.numba_enabled():
        return _localization_numba(rmul, lengths, word, heights)
    return _localization_numpy(rmul, lengths, word, heights)


# -- dot-action dominance (Racah-Speiser / Klimyk) -----------------------------


@njit
def _dominate_numba(points, cartan):
    n, rank = points.shape
    out = points.copy()
    sign = np.ones(n, dtype=np.int64)
    for r in range(n):
        while True:
            found = -1
            for i in range(rank):
                if out[r, i] == 0:
                    found = -2
                    break
                if out[r, i] < 0 and found == -1:
                    found = i
            if found == -2:
                sign[r] = 0
                break
            if found == -1:
                break
            c = out[r, found]
            for k in range(rank):
                out[r, k] -= c * cartan[k, found]
            sign[r] = -sign[r]
    return out, sign


def _dominate_numpy(points, cartan):
    out = points.copy()
    sign = np.ones(out.shape[0], dtype=np.int64)
    active = np.ones(out.shape[0], dtype=bool)
    cart_t = cartan.T
    while True:
        zero = np.any(out == 0, axis=1) & active
        sign[zero] = 0
        active &= ~zero
        neg = (out < 0) & active[:, None]
        rows = np.nonzero(neg.any(axis=1))[0]
        if rows.size == 0:
            break
        idx = np.argmax(neg[rows], axis=1)
        coef = out[rows, idx]
        out[rows] -= coef[:, None] * cart_t[idx]
        sign[rows] = -sign[rows]
    return out, sign


def dominate(points: np.ndarray, cartan: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Reflect each row into the dominant chamber.

    Rows are strictly dominant after reflection (fundamental coordinates all
    positive) or hit a wall; ``sign`` is ``(-1)^length`` of the reflecting
    element, and ``0`` for rows fixed by some reflection.
    """
    points = np.ascontiguousarray(points, dtype=np.int64)
    cartan = np.ascontiguousarray(cartan, dtype=np.int64)
    if _accel.numba_enabled():
        return _dominate_numba(points, cartan)
    return _dominate_numpy(points, cartan)


# -- Freudenthal recursion on dominant weights --------------------------------


@njit
def _freudenthal_numba(dom, lam_rho_norm, rho, gram, roots_f, cartan, dims, strides):
    k_count, rank = dom.shape
    table = np.zeros(strides[0] * dims[0], dtype=np.int64)
    mult = np.zeros(k_count, dtype=np.int64)
    x = np.zeros(rank, dtype=np.int64)
    for r in range(k_count):
        mu = dom[r]
        if r == 0:
            mult[0] = 1
        else:
            total = 0
            for b in range(roots_f.shape[0]):
                beta = roots_f[b]
                kk = 1
                while True:
                    for i in range(rank):
                        x[i] = mu[i] + kk * beta[i]
                    pair = 0
                    for i in range(rank):
                        for j in range(rank):
                            pair += x[i] * gram[i, j] * beta[j]
                    # reflect x to the dominant chamber
                    while True:
                        found = -1
                        for i in range(rank):
                            if x[i] < 0:
                                found = i
                                break
                        if found == -1:
                            break
                        c = x[found]
                        for i in range(rank):
                            x[i] -= c * cartan[i, found]
                    pos = 0
                    inside = True
                    for i in range(rank):
                        if x[i] >= dims[i]:
                            inside = False
                            break
                        pos += x[i] * strides[i]
                    m = table[pos] if inside else 0
                    if m == 0:
                        break
                    total += m * pair
                    kk += 1
            mu_rho_norm = 0
            for i in range(rank):
                for j in range(rank):
                    mu_rho_norm += (mu[i] + rho[i]) * gram[i, j] * (mu[j] + rho[j])
            denom = lam_rho_norm - mu_rho_norm
            mult[r] = (2 * total) // denom
        pos = 0
        for i in range(rank):
            pos += mu[i] * strides[i]
        table[pos] = mult[r]
    return mult


def _freudenthal_python(dom, lam_rho_norm, rho, gram, roots_f, cartan, dims, strides):
    dom = [tuple(int(v) for v in row) for row in dom]
    gram = gram.tolist()
    cart = cartan.tolist()
    rank = len(rho)
    roots = [tuple(int(v) for v in row) for row in roots_f]
    table: dict = {}

    def dominant(x):
        x = list(x)
        while True:
            for i in range(rank):
                if x[i] < 0:
                    c = x[i]
                    for k in range(rank):
                        x[k] -= c * cart[k][i]
                    break
            else:
                return tuple(x)

    def norm(a, b):
        return sum(a[i] * gram[i][j] * b[j] for i in range(rank) for j in range(rank))

    mult = []
    for r, mu in enumerate(dom):
        if r == 0:
            m = 1
        else:
            total = 0
            for beta in roots:
                kk = 1
                while True:
                    x = tuple(mu[i] + kk * beta[i] for i in range(rank))
                    got = table.get(dominant(x), 0)
                    if got == 0:
                        break
                    total += got * norm(x, beta)
                    kk += 1
            shifted = tuple(mu[i] + rho[i] for i in range(rank))
            denom = lam_rho_norm - norm(shifted, shifted)
            m, rem = divmod(2 * total, denom)
            if rem:
                raise ArithmeticError("non-integral Freudenthal multiplicity")
        table[mu] = m
        mult.append(m)
    return np.array(mult, dtype=object)


def freudenthal(dom, lam_rho_norm, rho, gram, roots_f, cartan, big=False) -> np.ndarray:
    """Multiplicities of the dominant weights ``dom`` (highest first, by depth).

    ``gram`` is an integer multiple of the invariant form in fundamental
    coordinates, ``roots_f`` the positive roots in fundamental coordinates.
    ``big`` selects the arbitrary-precision path.
    """
    dom = np.ascontiguousarray(dom, dtype=np.int64)
    rank = dom.shape[1]
    dims = dom.max(axis=0) + 1
    strides = np.ones(rank, dtype=np.int64)
    for i in range(rank - 2, -1, -1):
        strides[i] = strides[i + 1] * dims[i + 1]
    args = (dom, int(lam_rho_norm), np.asarray(rho, dtype=np.int64),
            np.ascontiguousarray(gram, dtype=np.int64),
            np.ascontiguousarray(roots_f, dtype=np.int64),
            np.ascontiguousarray(cartan, dtype=np.int64), dims, strides)
    if big or not _accel.numba_enabled():
        return _freudenthal_python(*args)
    return _freudenthal_numba(*args)


# -- batch evaluation of linear inequalities ----------------------------------


@njit
def _count_violations_numba(cov, points):
    n_pts = points.shape[0]
    out = np.zeros(n_pts, dtype=np.int64)
    for p in range(n_pts):
        for r in range(cov.shape[0]):
            acc = 0
            for k in range(cov.shape[1]):
                acc += cov[r, k] * points[p, k]
            if acc > 0:
                out[p] += 1
    return out


def count_violations(cov: np.ndarray, points: np.ndarray) -> np.ndarray:
    """Number of inequalities ``cov @ p <= 0`` violated by each integer point."""
    cov = np.ascontiguousarray(cov, dtype=np.int64)
    points = np.ascontiguousarray(points, dtype=np.int64)
    if _accel.numba_enabled():
        return _count_violations_numba(cov, points)
    return (points @ cov.T > 0).sum(axis=1).astype(np.int64)
