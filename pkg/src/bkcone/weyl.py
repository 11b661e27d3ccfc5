"""Weyl groups, parabolic subgroups and minimal coset representatives.

Elements are represented by their integer matrices acting on fundamental
weight coordinates.  A word ``(i1, ..., ik)`` denotes the product
``s_i1 s_i2 ... s_ik``; letters are 0-based internally and printed with the
letters ``r, s, t, u`` (``s_1 .. s_4``).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Iterable, Sequence

import numpy as np

from .errors import ConfigurationError, InvariantViolation
from .rootsys import RootSystem, build_root_system

LETTERS = "rstu"


def word_to_str(word: Sequence[int]) -> str:
    """``(0, 1, 0) -> "rsr"``; the identity is ``"e"``."""
    return "".join(LETTERS[i] for i in word) or "e"


def str_to_word(text: str) -> tuple[int, ...]:
    text = text.strip()
    if text in ("", "e", "1"):
        return ()
    if all(ch in LETTERS for ch in text):
        return tuple(LETTERS.index(ch) for ch in text)
    parts = text.replace("s", " ").replace(",", " ").split()
    try:
        return tuple(int(p) - 1 for p in parts)
    except ValueError:
        raise ConfigurationError(f"cannot parse Weyl word {text!r}") from None


@dataclass(frozen=True, eq=False)
class WeylElem:
    """An element of a Weyl group; equality and hashing go through the matrix."""

    word: tuple[int, ...]
    matrix: tuple[tuple[int, ...], ...]
    index: int = field(default=-1)

    @property
    def length(self) -> int:
        return len(self.word)

    def __eq__(self, other):
        return isinstance(other, WeylElem) and self.matrix == other.matrix

    def __hash__(self):
        return hash(self.matrix)

    def __repr__(self) -> str:
        return f"WeylElem({word_to_str(self.word)})"

    def __str__(self) -> str:
        return word_to_str(self.word)


def _key(mat: np.ndarray) -> tuple[tuple[int, ...], ...]:
    return tuple(map(tuple, mat.tolist()))


@dataclass(frozen=True)
class Parabolic:
    """A standard parabolic subgroup, described by the simple roots of its Levi.

    ``levi`` holds 0-based indices of ``Delta(P)``; ``complement`` is
    ``Delta \\ Delta(P)``.
    """

    rank: int
    levi: frozenset

    @property
    def complement(self) -> tuple[int, ...]:
        return tuple(i for i in range(self.rank) if i not in self.levi)

    @property
    def is_maximal(self) -> bool:
        return len(self.complement) == 1

    @property
    def is_borel(self) -> bool:
        return not self.levi

    @property
    def label(self) -> str:
        if self.is_borel:
            return "B"
        return "P" + ",".join(str(i + 1) for i in self.complement)

    def contains(self, other: "Parabolic") -> bool:
        """True when ``other`` is a subgroup of ``self`` (``Delta(other)`` inside ``Delta(self)``)."""
        return other.levi <= self.levi


def borel(R: RootSystem) -> Parabolic:
    return Parabolic(R.rank, frozenset())


def maximal_parabolic(R: RootSystem, i: int) -> Parabolic:
    """The maximal parabolic ``P_i`` (1-based ``i``) with ``Delta \\ Delta(P) = {alpha_i}``."""
    if not 1 <= i <= R.rank:
        raise ConfigurationError(f"parabolic index {i} out of range for {R.name}")
    return Parabolic(R.rank, frozenset(range(R.rank)) - {i - 1})


def parabolic_from_complement(R: RootSystem, complement: Iterable[int]) -> Parabolic:
    """Parabolic with the given 1-based complement ``Delta \\ Delta(P)``."""
    comp = {int(i) - 1 for i in complement}
    if not comp <= set(range(R.rank)):
        raise ConfigurationError("complement index out of range")
    return Parabolic(R.rank, frozenset(range(R.rank)) - comp)


def dim_gp(R: RootSystem, P: Parabolic) -> int:
    """Complex dimension of ``G/P``: positive roots outside the Levi."""
    return sum(1 for beta in R.positive_roots if any(beta[i] for i in P.complement))


class WeylGroup:
    """Full enumeration of a finite Weyl group with multiplication tables."""

    def __init__(self, R: RootSystem):
        self.R = R
        n = R.rank
        A = R.cartan
        eye = np.eye(n, dtype=np.int64)
        self.gens = []
        self.root_gens = []
        for i in range(n):
            g = eye.copy()
            g[:, i] -= A[:, i]
            self.gens.append(g)
            rg = eye.copy()
            rg[i, :] -= A[i, :]
            self.root_gens.append(rg)
        self._enumerate()

    def _enumerate(self) -> None:
        n = self.R.rank
        ident = np.eye(n, dtype=np.int64)
        words = [()]
        mats = [ident]
        rmats = [ident]
        index = {_key(ident): 0}
        level = [0]
        while level:
            nxt = []
            for idx in level:
                for i in range(n):
                    m = mats[idx] @ self.gens[i]
                    k = _key(m)
                    if k in index:
                        continue
                    index[k] = len(words)
                    nxt.append(len(words))
                    words.append(words[idx] + (i,))
                    mats.append(m)
                    rmats.append(rmats[idx] @ self.root_gens[i])
            nxt.sort(key=lambda j: words[j])
            level = nxt
        # Order by length, then lexicographically by canonical word.
        order = sorted(range(len(words)), key=lambda j: (len(words[j]), words[j]))
        self.words = [words[j] for j in order]
        self.mats = [mats[j] for j in order]
        self.root_mats = [rmats[j] for j in order]
        self.index = {_key(m): pos for pos, m in enumerate(self.mats)}
        self.elements = [WeylElem(w, _key(m), pos) for pos, (w, m) in enumerate(zip(self.words, self.mats))]
        self.lengths = np.array([len(w) for w in self.words], dtype=np.int64)
        size = len(self.words)
        self.rmul = np.empty((size, n), dtype=np.int64)
        self.lmul = np.empty((size, n), dtype=np.int64)
        for pos, m in enumerate(self.mats):
            for i in range(n):
                self.rmul[pos, i] = self.index[_key(m @ self.gens[i])]
                self.lmul[pos, i] = self.index[_key(self.gens[i] @ m)]
        self.rmul.flags.writeable = False
        self.lmul.flags.writeable = False

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    # -- basic operations ---------------------------------------------------
    def elem(self, x) -> WeylElem:
        """Coerce an index, word, word string or element to a :class:`WeylElem`."""
        if isinstance(x, WeylElem):
            return self.elements[self.index[x.matrix]]
        if isinstance(x, (int, np.integer)):
            return self.elements[int(x)]
        if isinstance(x, str):
            x = str_to_word(x)
        return self.from_word(x)

    def from_word(self, word: Sequence[int]) -> WeylElem:
        pos = 0
        for i in word:
            if not 0 <= i < self.R.rank:
                raise ConfigurationError(f"letter {i} out of range")
            pos = int(self.rmul[pos, i])
        return self.elements[pos]

    @property
    def identity(self) -> WeylElem:
        return self.elements[0]

    @cached_property
    def longest(self) -> WeylElem:
        return self.elements[-1]

    def mul(self, u: WeylElem, v: WeylElem) -> WeylElem:
        return self.elements[self.index[_key(self.mats[u.index] @ self.mats[v.index])]]

    def inverse(self, w: WeylElem) -> WeylElem:
        return self.from_word(tuple(reversed(w.word)))

    def act_weight(self, w: WeylElem, lam: Sequence) -> tuple:
        m = self.mats[w.index]
        if all(isinstance(x, (int, np.integer)) for x in lam):
            return tuple(int(x) for x in m @ np.asarray(lam, dtype=np.int64))
        return tuple(sum((int(m[i, j]) * Fraction(lam[j]) for j in range(len(lam))), Fraction(0))
                     for i in range(len(lam)))

    def act_root(self, w: WeylElem, beta: Sequence[int]) -> tuple[int, ...]:
        return tuple(int(x) for x in self.root_mats[w.index] @ np.asarray(beta, dtype=np.int64))

    def inv_rho(self, w: WeylElem) -> tuple[int, ...]:
        """``w^{-1} rho`` in fundamental coordinates."""
        return self.act_weight(self.inverse(w), self.R.rho)

    # -- inversion sets -----------------------------------------------------
    @cached_property
    def _root_index(self) -> dict:
        return {tuple(int(x) for x in b): k for k, b in enumerate(self.R.positive_roots)}

    def inversion_set(self, w: WeylElem) -> frozenset:
        """``Phi_w = {beta > 0 : w beta < 0}`` as tuples in simple-root coordinates."""
        img = self.R.positive_roots @ self.root_mats[w.index].T
        neg = np.any(img < 0, axis=1)
        return frozenset(tuple(int(x) for x in self.R.positive_roots[k]) for k in np.nonzero(neg)[0])

    @cached_property
    def _inversion_lookup(self) -> dict:
        return {self.inversion_set(w): w for w in self.elements}

    def from_inversion_set(self, roots: Iterable) -> WeylElem | None:
        return self._inversion_lookup.get(frozenset(tuple(r) for r in roots))

    # -- parabolic structure ------------------------------------------------
    def is_min_coset_rep(self, w: WeylElem, P: Parabolic) -> bool:
        """``w`` is minimal in ``w W_P`` iff ``l(w s_i) > l(w)`` for every ``i`` in ``Delta(P)``."""
        return all(self.lengths[self.rmul[w.index, i]] > w.length for i in P.levi)

    @lru_cache(maxsize=None)
    def coset_reps(self, P: Parabolic) -> tuple[WeylElem, ...]:
        return tuple(w for w in self.elements if self.is_min_coset_rep(w, P))

    @lru_cache(maxsize=None)
    def longest_in_levi(self, P: Parabolic) -> WeylElem:
        best = self.identity
        for w in self.elements:
            if all(i in P.levi for i in w.word) and w.length > best.length:
                best = w
        return best

    def min_coset_rep(self, w: WeylElem, P: Parabolic) -> WeylElem:
        """Minimal representative of ``w W_P``."""
        pos = w.index
        changed = True
        while changed:
            changed = False
            for i in P.levi:
                nxt = int(self.rmul[pos, i])
                if self.lengths[nxt] < self.lengths[pos]:
                    pos = nxt
                    changed = True
        return self.elements[pos]

    def dual(self, w: WeylElem, P: Parabolic) -> WeylElem:
        """``w0 w w0^P``; the Poincare dual index within ``W^P``."""
        return self.mul(self.mul(self.longest, w), self.longest_in_levi(P))

    def in_levi_group(self, w: WeylElem, P: Parabolic) -> bool:
        return all(i in P.levi for i in w.word)

    # -- Bruhat order -------------------------------------------------------
    @lru_cache(maxsize=None)
    def lower_interval(self, idx: int) -> frozenset:
        """Indices of all ``u <= w`` (subword property on the canonical word)."""
        reach = {0}
        for i in self.words[idx]:
            reach |= {int(self.rmul[u, i]) for u in reach}
        return frozenset(reach)

    def bruhat_leq(self, u: WeylElem, w: WeylElem) -> bool:
        return u.index in self.lower_interval(w.index)

    # -- characters of Levi-movability -------------------------------------
    def two_rho_levi(self, P: Parabolic) -> tuple[int, ...]:
        total = np.zeros(self.R.rank, dtype=np.int64)
        for beta in self.R.positive_roots:
            if all(beta[i] == 0 for i in P.complement):
                total += beta
        return self.R.root_to_weight(total)

    def chi(self, w: WeylElem, P: Parabolic) -> tuple[int, ...]:
        """``chi_w = rho - 2 rho^L + w^{-1} rho``, checked against its root-sum form.

        The root-sum form is the sum of ``beta`` over positive roots outside the
        Levi with ``w beta`` positive.
        """
        two_rho_l = self.two_rho_levi(P)
        inv = self.inv_rho(w)
        direct = tuple(1 - a + b for a, b in zip(two_rho_l, inv))
        total = np.zeros(self.R.rank, dtype=np.int64)
        rm = self.root_mats[w.index]
        for beta in self.R.positive_roots:
            if all(beta[i] == 0 for i in P.complement):
                continue
            if np.all(rm @ beta >= 0):
                total += beta
        via_sum = self.R.root_to_weight(total)
        if via_sum != direct:
            raise InvariantViolation(f"chi mismatch for {w}: {direct} vs {via_sum}")
        return direct


def _group_key(R: RootSystem):
    return R.cache_key()


_GROUPS: dict = {}


def weyl_group(R: RootSystem | str) -> WeylGroup:
    """Cached :class:`WeylGroup` for a root system or type label."""
    if isinstance(R, str):
        R = build_root_system(R)
    key = _group_key(R)
    grp = _GROUPS.get(key)
    if grp is None:
        grp = _GROUPS[key] = WeylGroup(R)
    return grp


# Functional interface -------------------------------------------------------


def enumerate_weyl(R: RootSystem) -> list[WeylElem]:
    return list(weyl_group(R).elements)


def minimal_coset_reps(R: RootSystem, P: Parabolic) -> list[WeylElem]:
    return list(weyl_group(R).coset_reps(P))


def inversion_set(R: RootSystem, w: WeylElem) -> frozenset:
    return weyl_group(R).inversion_set(w)


def chi(R: RootSystem, w: WeylElem, P: Parabolic) -> tuple[int, ...]:
    return weyl_group(R).chi(w, P)


def bruhat_leq(R: RootSystem, u: WeylElem, w: WeylElem) -> bool:
    return weyl_group(R).bruhat_leq(u, w)
