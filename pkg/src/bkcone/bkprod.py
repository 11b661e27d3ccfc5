"""Deformed (Belkale-Kumar) cup product and Levi-movability.

For ``u, v, w`` in ``W^P`` the deformed product multiplies the cup-product
coefficient by ``prod_i tau_i^{e_i}`` with, for each ``alpha_i`` outside the
Levi,

* X basis: ``e_i = (w^{-1} rho - u^{-1} rho - v^{-1} rho - rho)(x_i)``
* epsilon basis: ``e_i = (u^{-1} rho + v^{-1} rho - w^{-1} rho - rho)(x_i)``

The product ``odot_0`` keeps exactly the terms with all exponents zero.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import prod
from typing import Iterable, Sequence

from .errors import ConfigurationError, InvariantViolation, PreconditionError
from .rootsys import RootSystem, levi_subsystem
from .schubert import CohomClass, SchubertRing, schubert_ring
from .weyl import Parabolic, WeylElem, WeylGroup, dim_gp, weyl_group


@dataclass
class DeformedClass:
    """Combination ``sum_w c_w tau^{e_w} class_w``; ``terms`` maps ``w -> (c, e)``."""

    R: RootSystem
    P: Parabolic
    basis: str
    terms: dict = field(default_factory=dict)

    def specialise(self, tau: int = 1) -> CohomClass:
        """Set every ``tau_i`` to ``tau`` (``tau=1`` recovers the cup product)."""
        out = {}
        for w, (c, e) in self.terms.items():
            val = c * (tau ** sum(e))
            if val:
                out[w] = val
        return CohomClass(self.R, self.P, self.basis, out)

    def bk0(self) -> CohomClass:
        """The ``tau = 0`` part."""
        return CohomClass(self.R, self.P, self.basis,
                          {w: c for w, (c, e) in self.terms.items() if not any(e)})

    def items_sorted(self):
        return sorted(self.terms.items(), key=lambda kv: (kv[0].length, kv[0].word))

    def __repr__(self) -> str:
        name = "e" if self.basis == "epsilon" else "X"
        parts = []
        for w, (c, e) in self.items_sorted():
            tau = "".join(f"t{i + 1}^{k}" for i, k in zip(self.P.complement, e) if k)
            parts.append(f"{c}{'*' + tau if tau else ''}*{name}[{w}]")
        return "DeformedClass(" + (" + ".join(parts) or "0") + ")"


def _exponents(R: RootSystem, W: WeylGroup, P: Parabolic, u: WeylElem, v: WeylElem,
               w: WeylElem, basis: str) -> tuple[int, ...]:
    iu, iv, iw = W.inv_rho(u), W.inv_rho(v), W.inv_rho(w)
    rho = R.rho
    if basis == "X":
        vec = [iw[k] - iu[k] - iv[k] - rho[k] for k in range(R.rank)]
    else:
        vec = [iu[k] + iv[k] - iw[k] - rho[k] for k in range(R.rank)]
    out = []
    for i in P.complement:
        val = R.weight_on_x(vec, i)
        if val.denominator != 1 or val < 0:
            raise InvariantViolation(f"deformation exponent {val} at alpha_{i + 1} for ({u},{v};{w})")
        out.append(int(val))
    return tuple(out)


def deformed_product(R: RootSystem, P: Parabolic, u, v, basis: str = "epsilon") -> DeformedClass:
    """Deformed product of two Schubert classes given in ``basis``."""
    if basis not in ("epsilon", "X"):
        raise ConfigurationError(f"unknown basis {basis!r}")
    ring = schubert_ring(R, P)
    W = ring.W
    u, v = W.elem(u), W.elem(v)
    if basis == "epsilon":
        prod_cls = ring.mult(u, v)
    else:
        prod_cls = ring.mult(W.dual(u, P), W.dual(v, P)).to_basis("X")
    terms = {}
    for w, c in prod_cls.coeffs.items():
        terms[w] = (c, _exponents(R, W, P, u, v, w, basis))
    return DeformedClass(R, P, basis, terms)


def bk0_product(R: RootSystem, P: Parabolic, classes: Sequence[CohomClass]) -> CohomClass:
    """Iterated ``odot_0`` product of cohomology classes (bilinear extension)."""
    if not classes:
        raise ConfigurationError("empty product")
    basis = classes[0].basis
    acc = classes[0].to_basis(basis)
    for nxt in classes[1:]:
        nxt = nxt.to_basis(basis)
        out: dict = {}
        for u, cu in acc.coeffs.items():
            for v, cv in nxt.coeffs.items():
                d = deformed_product(R, P, u, v, basis)
                for w, (c, e) in d.terms.items():
                    if not any(e):
                        out[w] = out.get(w, 0) + cu * cv * c
        acc = CohomClass(R, P, basis, out)
    return acc


def levi_exponent(R: RootSystem, P: Parabolic, ws: Sequence) -> tuple[Fraction, ...]:
    """``(rho + sum_j w_j^{-1} rho)(x_i)`` over the complement; ``ws`` in the X basis.

    This is ``(sum_j chi_{w_j} - chi_1)(x_i)`` and vanishes exactly when a
    non-zero top product of the classes survives in ``odot_0``.
    """
    W = weyl_group(R)
    total = list(R.rho)
    for w in ws:
        inv = W.inv_rho(W.elem(w))
        total = [a + b for a, b in zip(total, inv)]
    return tuple(R.weight_on_x(total, i) for i in P.complement)


def levi_exponent_via_chi(R: RootSystem, P: Parabolic, ws: Sequence) -> tuple[Fraction, ...]:
    W = weyl_group(R)
    chis = [W.chi(W.elem(w), P) for w in ws]
    chi_e = W.chi(W.identity, P)
    total = [sum(c[k] for c in chis) - chi_e[k] for k in range(R.rank)]
    return tuple(R.weight_on_x(total, i) for i in P.complement)


def is_levi_movable(R: RootSystem, P: Parabolic, ws: Sequence) -> bool:
    """Levi-movability of ``(w_1, .., w_s)`` in the X basis with a non-zero top product."""
    ring = schubert_ring(R, P)
    W = ring.W
    ws = [W.elem(w) for w in ws]
    if sum(ring.dim - w.length for w in ws) != ring.dim:
        return False
    if ring.top_coefficient(ws, basis="X") == 0:
        return False
    return all(x == 0 for x in levi_exponent(R, P, ws))


def bk0_top_coefficient(R: RootSystem, P: Parabolic, ws: Sequence) -> int:
    """Coefficient of ``[X_e]`` in ``[X_w1] odot_0 ... odot_0 [X_ws]``."""
    ring = schubert_ring(R, P)
    W = ring.W
    ws = [W.elem(w) for w in ws]
    if sum(ring.dim - w.length for w in ws) != ring.dim:
        return 0
    if any(levi_exponent(R, P, ws)):
        return 0
    return ring.top_coefficient(ws, basis="X")


# -- Kostant-type formula on G/B ------------------------------------------------


def _rho_product(R: RootSystem, roots: Iterable) -> Fraction:
    rho = R.rho
    out = Fraction(1)
    for beta in roots:
        out *= R.form(rho, R.root_to_weight(beta))
    return out


def kostant_product_borel(R: RootSystem, u, v) -> CohomClass:
    """``epsilon_u odot_0 epsilon_v`` on ``G/B`` from inversion sets alone.

    Zero unless ``Phi_u`` and ``Phi_v`` are disjoint with union ``Phi_w``; then
    the coefficient of ``epsilon_w`` is
    ``<rho, Phi_{u^-1}> <rho, Phi_{v^-1}> / <rho, Phi_{w^-1}>`` where
    ``<rho, S>`` is the product of ``(rho, beta)`` over ``S``.
    """
    W = weyl_group(R)
    B = Parabolic(R.rank, frozenset())
    u, v = W.elem(u), W.elem(v)
    pu, pv = W.inversion_set(u), W.inversion_set(v)
    if pu & pv:
        return CohomClass(R, B, "epsilon", {})
    w = W.from_inversion_set(pu | pv)
    if w is None:
        return CohomClass(R, B, "epsilon", {})
    num = _rho_product(R, W.inversion_set(W.inverse(u))) * _rho_product(R, W.inversion_set(W.inverse(v)))
    coef = num / _rho_product(R, W.inversion_set(W.inverse(w)))
    if coef.denominator != 1:
        raise InvariantViolation(f"non-integral Kostant coefficient {coef}")
    return CohomClass(R, B, "epsilon", {w: int(coef)})


# -- Levi factorisation of structure constants ---------------------------------


@dataclass
class LeviFactorization:
    hypothesis_met: bool
    d: int
    d1: int | None = None
    d2: int | None = None
    u: tuple = ()
    v: tuple = ()
    levi_movable: bool = False
    u_movable: bool | None = None
    v_movable: bool | None = None

    @property
    def holds(self) -> bool:
        return (not self.hypothesis_met) or self.d == self.d1 * self.d2


def levi_factorization_check(R: RootSystem, P: Parabolic, Q: Parabolic, ws: Sequence) -> LeviFactorization:
    """Compare ``d`` on ``G/P`` with ``d1`` on ``G/Q`` times ``d2`` on ``Q/P``.

    ``ws`` is a tuple in the X basis of ``W^P`` whose codimensions sum to
    ``dim G/P`` and ``P`` is contained in ``Q``.  Each ``w_j`` splits as
    ``u_j v_j`` with ``u_j`` in ``W^Q`` and ``v_j`` in ``W_Q``.  The product
    formula is asserted only when the ``u_j`` have codimensions summing to
    ``dim G/Q``; for Levi-movable tuples this always holds and the factors are
    again Levi-movable.
    """
    if not Q.contains(P):
        raise ConfigurationError("P must be contained in Q")
    W = weyl_group(R)
    ws = [W.elem(w) for w in ws]
    ringP = schubert_ring(R, P)
    if sum(ringP.dim - w.length for w in ws) != ringP.dim:
        raise PreconditionError("codimensions do not add up to dim G/P")
    movable = is_levi_movable(R, P, ws)
    d = ringP.top_coefficient(ws, basis="X")
    us, vs = [], []
    for w in ws:
        u = W.min_coset_rep(w, Q)
        v = W.mul(W.inverse(u), w)
        if not W.in_levi_group(v, Q) or u.length + v.length != w.length:
            raise InvariantViolation("parabolic factorisation failed")
        us.append(u)
        vs.append(v)
    dimQ = dim_gp(R, Q)
    if sum(dimQ - u.length for u in us) != dimQ:
        return LeviFactorization(False, d, u=tuple(us), v=tuple(vs), levi_movable=movable)
    d1 = schubert_ring(R, Q).top_coefficient(us, basis="X")
    # Q/P is the flag variety of the Levi of Q modulo the parabolic with Levi Delta(P).
    idx = sorted(Q.levi)
    L = levi_subsystem(R, idx)
    pos = {g: k for k, g in enumerate(idx)}
    WL = weyl_group(L)
    P_in_L = Parabolic(L.rank, frozenset(pos[i] for i in P.levi))
    vs_L = [WL.from_word([pos[i] for i in v.word]) for v in vs]
    if L.rank:
        d2 = schubert_ring(L, P_in_L).top_coefficient(vs_L, basis="X")
        v_mov = is_levi_movable(L, P_in_L, vs_L) if P_in_L.complement else True
    else:
        d2, v_mov = 1, True
    u_mov = is_levi_movable(R, Q, us) if Q.complement else True
    return LeviFactorization(True, d, d1, d2, tuple(us), tuple(vs), movable, u_mov, v_mov)


def levi_movable_tuples(R: RootSystem, P: Parabolic, s: int = 3) -> list[tuple[WeylElem, ...]]:
    """All Levi-movable ``s``-tuples (X basis) with non-zero top product."""
    ring = schubert_ring(R, P)
    reps = ring.reps
    out = []
    for ws in itertools.product(reps, repeat=s):
        if sum(ring.dim - w.length for w in ws) != ring.dim:
            continue
        if is_levi_movable(R, P, ws):
            out.append(ws)
    return out
