"""Finite-dimensional representations: characters, tensor products, invariants.

Weights are integer tuples in fundamental coordinates.  Multiplicities come
from Freudenthal's recursion on dominant weights; tensor products use the
Racah-Speiser (Klimyk) reflection rule.  Everything is exact.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import lcm
from typing import Sequence

import numpy as np

from .errors import ConfigurationError, PreconditionError
from .parallel import pstarmap
from .kernels import INT64_SAFE, dominate, freudenthal
from .rootsys import RootSystem, build_root_system, k_g, levi_subsystem
from .weyl import Parabolic, weyl_group


def _as_system(R) -> RootSystem:
    return build_root_system(R) if isinstance(R, str) else R


def _check_weight(R: RootSystem, lam: Sequence[int]) -> tuple[int, ...]:
    lam = tuple(int(x) for x in lam)
    if len(lam) != R.rank:
        raise ConfigurationError(f"weight {lam} has wrong length for {R.name}")
    if any(x < 0 for x in lam):
        raise PreconditionError(f"weight {lam} is not dominant")
    return lam


def weyl_dim(R: RootSystem | str, lam: Sequence[int]) -> int:
    """Weyl dimension formula ``prod_{beta>0} (lam+rho, beta)/(rho, beta)``."""
    R = _as_system(R)
    lam = _check_weight(R, lam)
    shifted = tuple(x + 1 for x in lam)
    val = Fraction(1)
    for beta in R.positive_roots:
        bw = R.root_to_weight(beta)
        val *= R.form(shifted, bw) / R.form(R.rho, bw)
    assert val.denominator == 1
    return int(val)


@lru_cache(maxsize=None)
def _scaled_gram(key) -> tuple[np.ndarray, int]:
    R = _system_from_key(key)
    gram = R.weight_gram()
    scale = 1
    for row in gram:
        for q in row:
            scale = lcm(scale, q.denominator)
    return np.array([[int(q * scale) for q in row] for row in gram], dtype=np.int64), scale


_KEYED: dict = {}


def _system_from_key(key) -> RootSystem:
    return _KEYED[key]


def _register(R: RootSystem):
    key = R.cache_key()
    _KEYED.setdefault(key, R)
    return key


def dominant_weights(R: RootSystem, lam: Sequence[int]) -> list[tuple[int, ...]]:
    """Dominant weights of ``V(lam)``, ordered by depth below ``lam``."""
    lam = _check_weight(R, lam)
    roots_f = [R.root_to_weight(b) for b in R.positive_roots]
    seen = {lam}
    frontier = [lam]
    while frontier:
        nxt = []
        for mu in frontier:
            for b in roots_f:
                nu = tuple(m - x for m, x in zip(mu, b))
                if all(v >= 0 for v in nu) and nu not in seen:
                    seen.add(nu)
                    nxt.append(nu)
        frontier = nxt

    def depth(mu):
        return sum(R.weight_to_root([a - b for a, b in zip(lam, mu)]))

    return sorted(seen, key=lambda mu: (depth(mu), tuple(-x for x in mu)))


@lru_cache(maxsize=4096)
def _dominant_mults_cached(key, lam: tuple) -> dict:
    R = _system_from_key(key)
    dom = dominant_weights(R, lam)
    gram, _ = _scaled_gram(key)
    shifted = np.array(lam, dtype=np.int64) + 1
    lam_rho_norm = int(shifted @ gram @ shifted)
    roots_f = np.array([R.root_to_weight(b) for b in R.positive_roots], dtype=np.int64).reshape(-1, R.rank)
    max_root_norm = int(max((r @ gram @ r for r in roots_f), default=1))
    bound = 2 * max(len(roots_f), 1) * weyl_dim(R, lam) * (lam_rho_norm + 1) * (max_root_norm + 1)
    big = bound >= INT64_SAFE
    mults = freudenthal(np.array(dom, dtype=np.int64).reshape(len(dom), R.rank), lam_rho_norm,
                        np.ones(R.rank, dtype=np.int64), gram, roots_f, R.cartan, big=big)
    return {mu: int(m) for mu, m in zip(dom, mults)}


def dominant_multiplicities(R: RootSystem | str, lam: Sequence[int]) -> dict:
    """``{mu: mult}`` over the dominant weights of ``V(lam)``."""
    R = _as_system(R)
    lam = _check_weight(R, lam)
    if R.rank == 0:
        return {(): 1}
    return dict(_dominant_mults_cached(_register(R), lam))


def _orbit(R: RootSystem, mu: tuple) -> set:
    W = weyl_group(R)
    stack = np.stack(W.mats) if W.mats else np.zeros((1, 0, 0), dtype=np.int64)
    imgs = stack @ np.array(mu, dtype=np.int64)
    return {tuple(int(x) for x in row) for row in np.unique(imgs, axis=0)}


def weight_multiplicities(R: RootSystem | str, lam: Sequence[int]) -> dict:
    """All weights of ``V(lam)`` with multiplicities (Freudenthal on dominant weights)."""
    R = _as_system(R)
    out = {}
    for mu, m in dominant_multiplicities(R, lam).items():
        for nu in _orbit(R, mu):
            out[nu] = m
    return out


def _dominant_rep(R: RootSystem, x: Sequence[int]) -> tuple[int, ...]:
    x = list(x)
    A = R.cartan
    while True:
        for i in range(R.rank):
            if x[i] < 0:
                c = x[i]
                for k in range(R.rank):
                    x[k] -= c * int(A[k, i])
                break
        else:
            return tuple(x)


def multiplicity(R: RootSystem, lam: Sequence[int], mu: Sequence[int]) -> int:
    """Multiplicity of an arbitrary weight ``mu`` in ``V(lam)``."""
    table = dominant_multiplicities(R, lam)
    return table.get(_dominant_rep(R, mu), 0)


def tensor_decompose(R: RootSystem | str, lam: Sequence[int], mu: Sequence[int]) -> dict:
    """``V(lam) x V(mu) = sum_nu m_nu V(nu)`` by the Racah-Speiser reflection rule."""
    R = _as_system(R)
    lam, mu = _check_weight(R, lam), _check_weight(R, mu)
    if weyl_dim(R, lam) < weyl_dim(R, mu):
        lam, mu = mu, lam
    wm = weight_multiplicities(R, mu)
    if R.rank == 0:
        return {(): 1}
    keys = list(wm)
    pts = np.array(keys, dtype=np.int64) + np.array(lam, dtype=np.int64) + 1
    mults = np.array([wm[k] for k in keys], dtype=np.int64)
    dom, sign = dominate(pts, R.cartan)
    out: dict = {}
    for row, sg, m in zip(dom, sign, mults):
        if sg:
            nu = tuple(int(x) - 1 for x in row)
            out[nu] = out.get(nu, 0) + int(sg) * int(m)
    return {k: v for k, v in sorted(out.items()) if v}


def dual_weight(R: RootSystem, nu: Sequence[int]) -> tuple[int, ...]:
    """``nu* = -w0 nu``: highest weight of the dual representation."""
    W = weyl_group(R)
    img = W.act_weight(W.longest, tuple(int(x) for x in nu))
    return tuple(-x for x in img)


def invariant_dim(R: RootSystem | str, lam: Sequence[int], mu: Sequence[int], nu: Sequence[int]) -> int:
    """``dim (V(lam) x V(mu) x V(nu))^G``.

    Uses the single-multiplicity form of the reflection rule,
    ``sum_w sign(w) m_b(w(c* + rho) - a - rho)``, with ``b`` the factor of
    smallest dimension.
    """
    R = _as_system(R)
    lam, mu, nu = (_check_weight(R, x) for x in (lam, mu, nu))
    if R.rank == 0:
        return 1
    if not R.in_root_lattice([a + b + c for a, b, c in zip(lam, mu, nu)]):
        return 0
    trio = sorted((lam, mu, nu), key=lambda x: (weyl_dim(R, x), x))
    b, a, c = trio[0], trio[1], trio[2]
    target = np.array(dual_weight(R, c), dtype=np.int64) + 1
    W = weyl_group(R)
    table = dominant_multiplicities(R, b)
    shift = np.array(a, dtype=np.int64) + 1
    total = 0
    for w in W.elements:
        img = W.mats[w.index] @ target - shift
        m = table.get(_dominant_rep(R, img.tolist()), 0)
        if m:
            total += m if w.length % 2 == 0 else -m
    if total < 0:
        raise ArithmeticError("negative invariant dimension")
    return total


# -- saturation -----------------------------------------------------------------


@dataclass
class SaturationProbe:
    triple: tuple
    dims: dict = field(default_factory=dict)

    @property
    def restoring(self) -> list[int]:
        return [d for d, v in sorted(self.dims.items()) if v > 0]


@lru_cache(maxsize=None)
def _bk_system(label: str):
    from .eigencone import generate

    return generate(label, 3, "bk")


def _in_cone(R: RootSystem, triple) -> bool:
    return _bk_system(R.name).contains(list(triple), kind="weight")


def _scaled_dims(label: str, triple: tuple, multipliers: tuple) -> dict:
    R = build_root_system(label)
    return {d: invariant_dim(R, *[tuple(d * x for x in w) for w in triple]) for d in multipliers}


def saturation_factor_probe(R: RootSystem | str, triple: Sequence[Sequence[int]],
                            multipliers: Sequence[int] | int | None = None) -> SaturationProbe:
    """Invariant dimensions of ``(d lam, d mu, d nu)`` for the given multipliers.

    Requires the triple to lie in the eigencone and to satisfy the root-lattice
    condition.  ``multipliers`` defaults to ``1..k_g^2``; an integer ``d``
    means ``1..d``.
    """
    R = _as_system(R)
    triple = tuple(_check_weight(R, x) for x in triple)
    if not _in_cone(R, triple):
        raise PreconditionError("triple is not in the eigencone")
    if not R.in_root_lattice([sum(x) for x in zip(*triple)]):
        raise PreconditionError("triple violates the root-lattice condition")
    if multipliers is None:
        multipliers = range(1, k_g(R) ** 2 + 1)
    elif isinstance(multipliers, int):
        multipliers = range(1, multipliers + 1)
    probe = SaturationProbe(triple)
    for d in multipliers:
        probe.dims[d] = invariant_dim(R, *[tuple(d * x for x in w) for w in triple])
    return probe


def _sorted_triples(rank: int, bound: int):
    wts = list(itertools.product(range(bound + 1), repeat=rank))
    return [(a, b, c) for a, b, c in itertools.product(wts, repeat=3) if a <= b <= c]


def saturation_scan(R: RootSystem | str, bound: int, multipliers: Sequence[int] = (2, 3),
                    workers: int | None = 1) -> dict:
    """Triples in the eigencone with the root-lattice condition but no invariants.

    Triples are taken up to permutation with coordinates ``<= bound``.  Also
    records violations of the converse (invariants outside the cone), which
    must not occur.
    """
    R = _as_system(R)
    system = _bk_system(R.name)
    cands = [t for t in _sorted_triples(R.rank, bound)
             if R.in_root_lattice([x + y + z for x, y, z in zip(*t)])]
    dims = pstarmap(_scaled_dims, [(R.name, t, (1,)) for t in cands], workers)
    failing, converse_violations = [], []
    zero = []
    for t, d in zip(cands, dims):
        inside = system.contains(list(t), kind="weight")
        if d[1] and not inside:
            converse_violations.append(t)
        if inside and d[1] == 0:
            zero.append(t)
    mults = tuple(m for m in multipliers if m != 1)
    scaled = pstarmap(_scaled_dims, [(R.name, t, mults) for t in zero], workers)
    for t, d in zip(zero, scaled):
        failing.append(SaturationProbe(t, {1: 0, **d}))
    return {"type": R.name, "bound": bound, "checked": len(cands), "failing": failing,
            "converse_violations": converse_violations}


# -- rigidity -------------------------------------------------------------------


def rigidity_scan(r: int, bound: int, multipliers: Sequence[int] = (2, 3),
                  workers: int | None = 1) -> dict:
    """``SL(r)`` triples with a one-dimensional invariant space stay one-dimensional when scaled."""
    label = f"A{r - 1}"
    R = build_root_system(label)
    cands = _sorted_triples(R.rank, bound)
    base = pstarmap(_scaled_dims, [(label, t, (1,)) for t in cands], workers)
    rigid = [t for t, d in zip(cands, base) if d[1] == 1]
    scaled = pstarmap(_scaled_dims, [(label, t, tuple(multipliers)) for t in rigid], workers)
    violations = [(t, d, v) for t, dd in zip(rigid, scaled) for d, v in sorted(dd.items()) if v != 1]
    return {"r": r, "bound": bound, "rigid_triples": len(rigid), "violations": violations}


def levi_rigidity_check(R: RootSystem | str, P: Parabolic, ws: Sequence,
                        multipliers: Sequence[int] = (1, 2)) -> dict:
    """Invariants of the Levi for the characters ``chi_{w_j}`` restricted to ``Delta(P)``.

    For a Levi-movable tuple with ``d = 1`` the invariant spaces should be
    one-dimensional at every multiplier.
    """
    R = _as_system(R)
    W = weyl_group(R)
    idx = sorted(P.levi)
    L = levi_subsystem(R, idx)
    chis = [W.chi(W.elem(w), P) for w in ws]
    restricted = [tuple(c[i] for i in idx) for c in chis]
    dims = {}
    for d in multipliers:
        dims[d] = invariant_dim(L, *[tuple(d * x for x in c) for c in restricted])
    return {"levi": L.name, "weights": restricted, "dims": dims}
