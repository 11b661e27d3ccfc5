"""Cohomology of ``G/P`` in the Schubert basis via Billey localisation.

Two bases are used.  ``epsilon_w`` (``w`` in ``W^P``) has degree ``2 l(w)``
and is the class whose localisation at ``v`` is Billey's sum over reduced
subwords.  ``[X_w] = epsilon_{w0 w w0^P}`` is the class of the Schubert
variety ``X_w = closure(B w P / P)``, of codimension ``dim G/P - l(w)``.

Structure constants ``epsilon_u epsilon_v = sum_w c_{uv}^w epsilon_w`` are
recovered by solving the lower-triangular system
``xi^u(x) xi^v(x) = sum_{y <= x} c_{uv}^y xi^y(x)`` over ``x`` in ``W^P``
after specialising every simple root to ``1``.  The specialised values are
the equivariant structure constants evaluated at a regular point; the
coefficients of the correct degree are the ordinary integer constants.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import ConfigurationError, InvariantViolation
from .kernels import localization_vector
from .rootsys import RootSystem, build_root_system
from .weyl import Parabolic, WeylElem, WeylGroup, dim_gp, weyl_group


class MultiPoly:
    """Polynomial with integer coefficients in the simple roots ``alpha_i``."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Mapping[tuple, int] | None = None):
        self.nvars = nvars
        self.terms = {k: v for k, v in (terms or {}).items() if v}

    @classmethod
    def constant(cls, nvars: int, c: int) -> "MultiPoly":
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def linear(cls, coeffs: Sequence[int]) -> "MultiPoly":
        n = len(coeffs)
        return cls(n, {tuple(int(i == j) for j in range(n)): int(c) for i, c in enumerate(coeffs)})

    def __add__(self, other: "MultiPoly") -> "MultiPoly":
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return MultiPoly(self.nvars, out)

    def __mul__(self, other: "MultiPoly") -> "MultiPoly":
        out: dict = {}
        for k1, v1 in self.terms.items():
            for k2, v2 in other.terms.items():
                k = tuple(a + b for a, b in zip(k1, k2))
                out[k] = out.get(k, 0) + v1 * v2
        return MultiPoly(self.nvars, out)

    def __eq__(self, other) -> bool:
        return isinstance(other, MultiPoly) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def evaluate(self, point: Sequence) -> Fraction:
        total = Fraction(0)
        for k, v in self.terms.items():
            term = Fraction(v)
            for x, e in zip(point, k):
                term *= Fraction(x) ** e
            total += term
        return total

    def degree(self) -> int:
        return max((sum(k) for k in self.terms), default=0)

    def is_zero(self) -> bool:
        return not self.terms

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for k in sorted(self.terms, reverse=True):
            mono = "*".join(f"a{i + 1}" + (f"^{e}" if e > 1 else "") for i, e in enumerate(k) if e)
            c = self.terms[k]
            parts.append(f"{c}" + (f"*{mono}" if mono else "") if c != 1 or not mono else mono)
        return " + ".join(parts)


def partial_roots(W: WeylGroup, word: Sequence[int]) -> list[tuple[int, ...]]:
    """``beta_j = s_{i1} ... s_{i(j-1)} alpha_{ij}`` in simple-root coordinates."""
    n = W.R.rank
    out = []
    prefix = W.identity
    for i in word:
        simple = tuple(int(k == i) for k in range(n))
        out.append(W.act_root(prefix, simple))
        prefix = W.elements[int(W.rmul[prefix.index, i])]
    return out


def billey_value(R: RootSystem, w: WeylElem, v: WeylElem) -> MultiPoly:
    """Localisation ``xi^w(v)`` as a polynomial in the simple roots.

    Sums, over subwords of the canonical reduced word of ``v`` that are reduced
    words of ``w``, the product of the partially reflected roots at the chosen
    positions.
    """
    W = weyl_group(R)
    w, v = W.elem(w), W.elem(v)
    n = R.rank
    roots = partial_roots(W, v.word)
    states: dict[int, MultiPoly] = {0: MultiPoly.constant(n, 1)}
    for i, beta in zip(v.word, roots):
        lin = MultiPoly.linear(beta)
        new = dict(states)
        for y, poly in states.items():
            z = int(W.rmul[y, i])
            if W.lengths[z] > W.lengths[y]:
                term = poly * lin
                new[z] = new[z] + term if z in new else term
        states = new
    return states.get(w.index, MultiPoly(n))


@dataclass
class CohomClass:
    """An integer combination of Schubert classes of ``G/P``.

    ``basis`` is ``"epsilon"`` or ``"X"``; ``coeffs`` maps :class:`WeylElem`
    in ``W^P`` to integers.
    """

    R: RootSystem
    P: Parabolic
    basis: str
    coeffs: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.basis not in ("epsilon", "X"):
            raise ConfigurationError(f"unknown basis {self.basis!r}")
        self.coeffs = {w: c for w, c in self.coeffs.items() if c}

    def is_zero(self) -> bool:
        return not self.coeffs

    def to_basis(self, basis: str) -> "CohomClass":
        if basis == self.basis:
            return self
        W = weyl_group(self.R)
        return CohomClass(self.R, self.P, basis, {W.dual(w, self.P): c for w, c in self.coeffs.items()})

    def items_sorted(self):
        return sorted(self.coeffs.items(), key=lambda kv: (kv[0].length, kv[0].word))

    def __eq__(self, other):
        if not isinstance(other, CohomClass):
            return NotImplemented
        return self.P == other.P and self.to_basis("epsilon").coeffs == other.to_basis("epsilon").coeffs

    def __repr__(self) -> str:
        name = "e" if self.basis == "epsilon" else "X"
        body = " + ".join(f"{c}*{name}[{w}]" for w, c in self.items_sorted()) or "0"
        return f"CohomClass({body})"


class SchubertRing:
    """Structure constants of ``H*(G/P, Z)`` in the ``epsilon`` basis."""

    def __init__(self, R: RootSystem, P: Parabolic):
        if P.rank != R.rank:
            raise ConfigurationError("parabolic rank does not match root system")
        self.R = R
        self.P = P
        self.W = weyl_group(R)
        self.reps: tuple[WeylElem, ...] = self.W.coset_reps(P)
        self.pos = {w.index: k for k, w in enumerate(self.reps)}
        self.dim = dim_gp(R, P)
        self._products: dict = {}
        self._build()

    # point where every simple root takes the value 1
    def _build(self) -> None:
        W = self.W
        n = len(self.reps)
        rep_idx = np.array([w.index for w in self.reps], dtype=np.int64)
        loc = []
        for v in self.reps:
            heights = [sum(b) for b in partial_roots(W, v.word)]
            vec = localization_vector(W.rmul, W.lengths, v.word, heights)
            loc.append([int(x) for x in vec[rep_idx]])
        self.loc = loc  # loc[x][u] = xi^u(x)
        lengths = [w.length for w in self.reps]
        for x in range(n):
            for u in range(n):
                if loc[x][u] and not (u == x or lengths[u] < lengths[x]):
                    raise InvariantViolation("localisation matrix is not triangular")
                if loc[x][u] and not W.bruhat_leq(self.reps[u], self.reps[x]):
                    raise InvariantViolation("support of a Schubert class violates Bruhat order")
            if loc[x][x] == 0:
                raise InvariantViolation("vanishing diagonal localisation")
        # Row-wise inverse with a common denominator per row: inv[x] = num[x] / den[x].
        inv: list[list[Fraction]] = []
        for x in range(n):
            row = [Fraction(0)] * n
            row[x] = Fraction(1, loc[x][x])
            for u in range(x):
                if loc[x][u]:
                    for y in range(u + 1):
                        if inv[u][y]:
                            row[y] -= Fraction(loc[x][u], loc[x][x]) * inv[u][y]
            inv.append(row)
        self._inv_num = []
        self._inv_den = []
        for row in inv:
            den = 1
            for q in row:
                den = den * q.denominator // _gcd(den, q.denominator)
            self._inv_num.append([int(q * den) for q in row])
            self._inv_den.append(den)
        self._by_length: dict[int, list[int]] = {}
        for k, w in enumerate(self.reps):
            self._by_length.setdefault(w.length, []).append(k)

    def index_of(self, w) -> int:
        w = self.W.elem(w)
        if w.index not in self.pos:
            raise ConfigurationError(f"{w} is not a minimal coset representative for {self.P.label}")
        return self.pos[w.index]

    def product_indices(self, a: int, b: int) -> dict[int, int]:
        """``epsilon_a * epsilon_b`` as ``{index: coefficient}`` (indices into ``reps``)."""
        key = (a, b) if a <= b else (b, a)
        hit = self._products.get(key)
        if hit is not None:
            return hit
        loc = self.loc
        n = len(self.reps)
        f = [loc[x][a] * loc[x][b] for x in range(n)]
        deg = self.reps[a].length + self.reps[b].length
        out: dict[int, int] = {}
        for w in self._by_length.get(deg, []):
            num = sum(c * fx for c, fx in zip(self._inv_num[w], f) if c)
            q, r = divmod(num, self._inv_den[w])
            if r:
                raise InvariantViolation("non-integral structure constant")
            if q:
                if q < 0:
                    raise InvariantViolation("negative structure constant")
                out[w] = q
        self._products[key] = out
        return out

    def lower_degree_residual(self, a: int, b: int) -> list[Fraction]:
        """Specialised equivariant coefficients of the classes of degree below ``l(a)+l(b)``.

        These are the equivariant correction terms evaluated at ``alpha_i = 1``;
        the ordinary product drops them.  Entries follow ``reps`` order.
        """
        loc = self.loc
        n = len(self.reps)
        f = [loc[x][a] * loc[x][b] for x in range(n)]
        deg = self.reps[a].length + self.reps[b].length
        res = []
        for w in range(n):
            if self.reps[w].length < deg:
                res.append(Fraction(sum(c * fx for c, fx in zip(self._inv_num[w], f)), self._inv_den[w]))
        return res

    def mult(self, u, v) -> CohomClass:
        """``epsilon_u * epsilon_v``."""
        a, b = self.index_of(u), self.index_of(v)
        return CohomClass(self.R, self.P, "epsilon",
                          {self.reps[k]: c for k, c in self.product_indices(a, b).items()})

    def mult_classes(self, x: CohomClass, y: CohomClass) -> CohomClass:
        xe, ye = x.to_basis("epsilon"), y.to_basis("epsilon")
        out: dict = {}
        for u, cu in xe.coeffs.items():
            for v, cv in ye.coeffs.items():
                for k, c in self.product_indices(self.index_of(u), self.index_of(v)).items():
                    w = self.reps[k]
                    out[w] = out.get(w, 0) + cu * cv * c
        res = CohomClass(self.R, self.P, "epsilon", out)
        return res.to_basis(x.basis)

    def schubert_class(self, w, basis: str = "X") -> CohomClass:
        return CohomClass(self.R, self.P, basis, {self.reps[self.index_of(w)]: 1})

    @cached_property
    def point_class_index(self) -> int:
        """Index of the top-degree class ``epsilon_{w0 w0^P} = [X_e]``."""
        return self.index_of(self.W.dual(self.W.identity, self.P))

    def top_coefficient(self, ws: Sequence, basis: str = "X") -> int:
        """Coefficient of the point class in the product of the given Schubert classes."""
        if not ws:
            return 1 if self.dim == 0 else 0
        eps = [self.W.elem(w) if basis == "epsilon" else self.W.dual(self.W.elem(w), self.P) for w in ws]
        total_deg = sum(w.length for w in eps)
        if total_deg != self.dim:
            return 0
        current = {self.index_of(eps[0]): 1}
        for w in eps[1:]:
            b = self.index_of(w)
            nxt: dict[int, int] = {}
            for a, ca in current.items():
                for k, c in self.product_indices(a, b).items():
                    nxt[k] = nxt.get(k, 0) + ca * c
            current = {k: c for k, c in nxt.items() if c}
        return current.get(self.point_class_index, 0)

    def table(self, basis: str = "epsilon") -> dict:
        """All products ``{(u, v): CohomClass}`` for ``u, v`` in ``W^P``."""
        out = {}
        for u in self.reps:
            for v in self.reps:
                if basis == "epsilon":
                    out[(u, v)] = self.mult(u, v)
                else:
                    prod = self.mult(self.W.dual(u, self.P), self.W.dual(v, self.P))
                    out[(u, v)] = prod.to_basis("X")
        return out


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a)


_RINGS: dict = {}


def schubert_ring(R: RootSystem | str, P: Parabolic) -> SchubertRing:
    if isinstance(R, str):
        R = build_root_system(R)
    key = (R.cache_key(), P)
    ring = _RINGS.get(key)
    if ring is None:
        ring = _RINGS[key] = SchubertRing(R, P)
    return ring


def cup_structure_constants(R: RootSystem, P: Parabolic) -> dict:
    """Products of Schubert classes ``[X_u][X_v]`` in the ``X`` basis."""
    return schubert_ring(R, P).table(basis="X")


def top_coefficient(R: RootSystem, P: Parabolic, ws: Iterable, basis: str = "X") -> int:
    return schubert_ring(R, P).top_coefficient(list(ws), basis=basis)
