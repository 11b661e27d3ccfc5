"""Root systems, weights and Cartan points with exact arithmetic.

Conventions
-----------
* Simple roots are numbered as in Bourbaki; internally indices are 0-based.
* ``cartan[i][j] = <alpha_j, alpha_i^vee>`` so that
  ``s_i(alpha_j) = alpha_j - cartan[i][j] * alpha_i``.
* Weights are stored in fundamental-weight coordinates
  ``lambda_i = <lambda, alpha_i^vee>``.  Roots are stored in simple-root
  coordinates.  The simple root ``alpha_j`` has fundamental coordinates equal to
  column ``j`` of the Cartan matrix.
* Elements of the Cartan subalgebra are stored in the dual basis ``x_i`` of the
  simple roots, i.e. by the values ``a_i = alpha_i(h)``.
* The invariant form is normalised so that long roots have squared length 2
  in every simple component.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import lcm
from typing import Sequence

import numpy as np

from .errors import ConfigurationError

SUPPORTED = {
    "A": (1, 2, 3, 4),
    "B": (2, 3, 4),
    "C": (2, 3, 4),
    "D": (4,),
    "G": (2,),
    "F": (4,),
}


def _frozen(arr) -> np.ndarray:
    out = np.array(arr, dtype=np.int64)
    out.flags.writeable = False
    return out


def _cartan_matrix(family: str, n: int) -> list[list[int]]:
    a = [[0] * n for _ in range(n)]
    for i in range(n):
        a[i][i] = 2
    if family in "ABC":
        for i in range(n - 1):
            a[i][i + 1] = a[i + 1][i] = -1
        if family == "B":
            a[n - 1][n - 2] = -2
        elif family == "C":
            a[n - 2][n - 1] = -2
    elif family == "D":
        for i in range(n - 2):
            a[i][i + 1] = a[i + 1][i] = -1
        a[n - 3][n - 1] = a[n - 1][n - 3] = -1
    elif family == "G":
        a[0][1] = -3
        a[1][0] = -1
    elif family == "F":
        a[0][1] = a[1][0] = -1
        a[1][2] = -1
        a[2][1] = -2
        a[2][3] = a[3][2] = -1
    return a


def _inverse_fraction(mat: Sequence[Sequence[int]]) -> tuple[tuple[Fraction, ...], ...]:
    n = len(mat)
    aug = [[Fraction(mat[i][j]) for j in range(n)] + [Fraction(int(i == j)) for j in range(n)]
           for i in range(n)]
    for col in range(n):
        piv = next(r for r in range(col, n) if aug[r][col] != 0)
        aug[col], aug[piv] = aug[piv], aug[col]
        p = aug[col][col]
        aug[col] = [x / p for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return tuple(tuple(row[n:]) for row in aug)


def _components(cartan: np.ndarray) -> list[list[int]]:
    n = cartan.shape[0]
    seen: set[int] = set()
    comps = []
    for start in range(n):
        if start in seen:
            continue
        comp, stack = [], [start]
        seen.add(start)
        while stack:
            i = stack.pop()
            comp.append(i)
            for j in range(n):
                if j not in seen and cartan[i, j] != 0:
                    seen.add(j)
                    stack.append(j)
        comps.append(sorted(comp))
    return comps


@dataclass(frozen=True, eq=False)
class RootSystem:
    """A (possibly reducible) reduced root system given by its Cartan matrix.

    Attributes
    ----------
    name : str
        ``"B3"`` for named systems, a descriptive label for Levi subsystems.
    family : str
        One of ``A B C D G F`` or ``"L"`` for systems built from a matrix.
    cartan : ndarray
        Integer Cartan matrix, read-only.
    positive_roots : ndarray
        Positive roots in simple-root coordinates, sorted by height.
    half_lengths : tuple of Fraction
        ``(alpha_i, alpha_i) / 2`` for each simple root.
    """

    name: str
    family: str
    cartan: np.ndarray
    positive_roots: np.ndarray
    half_lengths: tuple
    inv_cartan: tuple

    @property
    def rank(self) -> int:
        return self.cartan.shape[0]

    @property
    def num_positive(self) -> int:
        return self.positive_roots.shape[0]

    @property
    def components(self) -> list[list[int]]:
        return _components(self.cartan)

    @property
    def is_irreducible(self) -> bool:
        return len(self.components) == 1

    @property
    def highest_root(self) -> tuple[int, ...] | None:
        if not self.is_irreducible or self.rank == 0:
            return None
        return tuple(int(x) for x in self.positive_roots[-1])

    @property
    def rho(self) -> tuple[int, ...]:
        return (1,) * self.rank

    def cache_key(self) -> tuple:
        return tuple(map(tuple, self.cartan.tolist()))

    def __repr__(self) -> str:
        return f"RootSystem({self.name})"

    # -- coordinate changes -------------------------------------------------
    def root_to_weight(self, root: Sequence[int]) -> tuple[int, ...]:
        """Fundamental coordinates of a vector given in simple-root coordinates."""
        return tuple(int(x) for x in self.cartan @ np.asarray(root, dtype=np.int64))

    def weight_to_root(self, weight: Sequence) -> tuple[Fraction, ...]:
        """Simple-root coordinates (exact) of a weight in fundamental coordinates."""
        n = self.rank
        return tuple(sum((self.inv_cartan[i][j] * Fraction(weight[j]) for j in range(n)),
                         Fraction(0)) for i in range(n))

    def weight_on_x(self, weight: Sequence, i: int) -> Fraction:
        """Evaluate ``lambda(x_i)``: the coefficient of ``alpha_i`` in ``lambda``."""
        return sum((self.inv_cartan[i][j] * Fraction(weight[j]) for j in range(self.rank)),
                   Fraction(0))

    def form(self, lam: Sequence, mu: Sequence) -> Fraction:
        """Normalised invariant form on weights in fundamental coordinates."""
        c = self.weight_to_root(lam)
        return sum((c[k] * self.half_lengths[k] * Fraction(mu[k]) for k in range(self.rank)),
                   Fraction(0))

    def root_form(self, beta: Sequence[int], gamma: Sequence[int]) -> Fraction:
        """Invariant form on vectors in simple-root coordinates."""
        gw = self.root_to_weight(gamma)
        return sum((Fraction(int(beta[k])) * self.half_lengths[k] * gw[k] for k in range(self.rank)),
                   Fraction(0))

    def weight_gram(self) -> tuple[tuple[Fraction, ...], ...]:
        n = self.rank
        basis = [tuple(int(i == j) for j in range(n)) for i in range(n)]
        return tuple(tuple(self.form(basis[i], basis[j]) for j in range(n)) for i in range(n))

    def coroot_pairing(self, weight: Sequence, root: Sequence[int]) -> Fraction:
        """``<lambda, beta^vee>`` for a root ``beta`` in simple-root coordinates."""
        return 2 * self.form(weight, self.root_to_weight(root)) / self.root_form(root, root)

    def is_dominant(self, weight: Sequence) -> bool:
        return all(Fraction(x) >= 0 for x in weight)

    def in_root_lattice(self, weight: Sequence[int]) -> bool:
        return all(c.denominator == 1 for c in self.weight_to_root(weight))

    def cartan_to_weight(self, a: Sequence) -> tuple[Fraction, ...]:
        """Weight identified with the Cartan point ``sum a_i x_i`` by the form.

        ``x_j`` corresponds to ``2 omega_j / (alpha_j, alpha_j)``, so the
        fundamental coordinates are ``a_j / half_length_j``.
        """
        return tuple(Fraction(a[j]) / self.half_lengths[j] for j in range(self.rank))

    def weight_to_cartan(self, lam: Sequence) -> tuple[Fraction, ...]:
        return tuple(Fraction(lam[j]) * self.half_lengths[j] for j in range(self.rank))


def _positive_roots(cartan: np.ndarray) -> np.ndarray:
    n = cartan.shape[0]
    simple = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    roots = set(simple)
    frontier = list(simple)
    while frontier:
        nxt = []
        for beta in frontier:
            pair = cartan @ np.asarray(beta, dtype=np.int64)
            for i in range(n):
                img = list(beta)
                img[i] -= int(pair[i])
                img = tuple(img)
                if any(x < 0 for x in img) or not any(img):
                    continue
                if img not in roots:
                    roots.add(img)
                    nxt.append(img)
        frontier = nxt
    ordered = sorted(roots, key=lambda r: (sum(r), r))
    return _frozen(ordered) if ordered else np.zeros((0, n), dtype=np.int64)


def _half_lengths(cartan: np.ndarray, comps: list[list[int]]) -> tuple[Fraction, ...]:
    n = cartan.shape[0]
    d: list[Fraction | None] = [None] * n
    for comp in comps:
        d[comp[0]] = Fraction(1)
        stack = [comp[0]]
        while stack:
            i = stack.pop()
            for j in comp:
                if cartan[i, j] != 0 and d[j] is None:
                    # d_i A_ij = d_j A_ji
                    d[j] = d[i] * int(cartan[i, j]) / int(cartan[j, i])
                    stack.append(j)
        top = max(d[k] for k in comp)
        for k in comp:
            d[k] = d[k] / top
    return tuple(d)  # type: ignore[arg-type]


def from_cartan(cartan: Sequence[Sequence[int]], name: str = "L", family: str = "L") -> RootSystem:
    """Build a root system from any finite-type Cartan matrix (reducible allowed)."""
    mat = np.array(cartan, dtype=np.int64).reshape(len(cartan), len(cartan))
    return _from_cartan_cached(tuple(map(tuple, mat.tolist())), name, family)


@lru_cache(maxsize=None)
def _from_cartan_cached(key, name, family) -> RootSystem:
    mat = _frozen(key) if key else np.zeros((0, 0), dtype=np.int64)
    comps = _components(mat)
    inv = _inverse_fraction(key) if key else ()
    return RootSystem(name=name, family=family, cartan=mat,
                      positive_roots=_positive_roots(mat),
                      half_lengths=_half_lengths(mat, comps), inv_cartan=inv)


_LABEL = re.compile(r"^\s*([A-Ga-g])\s*_?\s*(\d+)\s*$")


def parse_type(label: str) -> tuple[str, int]:
    m = _LABEL.match(label)
    if not m:
        raise ConfigurationError(f"cannot parse Lie type {label!r}")
    fam, n = m.group(1).upper(), int(m.group(2))
    if fam == "E":
        raise ConfigurationError("exceptional types E6, E7, E8 are not supported")
    if fam not in SUPPORTED or n not in SUPPORTED[fam]:
        raise ConfigurationError(f"unsupported Lie type {fam}{n}")
    return fam, n


@lru_cache(maxsize=None)
def build_root_system(label: str) -> RootSystem:
    """Named root system, e.g. ``build_root_system("B3")``."""
    fam, n = parse_type(label)
    key = tuple(map(tuple, _cartan_matrix(fam, n)))
    base = _from_cartan_cached(key, f"{fam}{n}", fam)
    return base


def levi_subsystem(R: RootSystem, indices: Sequence[int]) -> RootSystem:
    """Root subsystem spanned by the simple roots with the given 0-based indices.

    Simple roots keep their relative order; the result may be reducible.
    """
    idx = sorted(indices)
    sub = [[int(R.cartan[i, j]) for j in idx] for i in idx]
    label = f"{R.name}[{','.join(str(i + 1) for i in idx)}]"
    return from_cartan(sub, name=label)


def highest_root(R: RootSystem) -> tuple[int, ...]:
    hr = R.highest_root
    if hr is None:
        raise ConfigurationError(f"{R.name} is not irreducible")
    return hr


def k_g(R: RootSystem) -> int:
    """Least common multiple of the highest-root coefficients."""
    return lcm(*highest_root(R))


# -- weights and Cartan points -------------------------------------------------


@dataclass(frozen=True)
class Weight:
    """A weight in fundamental-weight coordinates."""

    coords: tuple

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(Fraction(c) for c in self.coords))


@dataclass(frozen=True)
class CartanPoint:
    """An element of the Cartan subalgebra in the ``x_i`` basis (``a_i = alpha_i(h)``)."""

    coords: tuple

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(Fraction(c) for c in self.coords))


def _require_classical(R: RootSystem) -> str:
    if R.family not in ("A", "B", "C"):
        raise ConfigurationError(f"Bourbaki chart implemented for types A, B, C only (got {R.name})")
    return R.family


def _tail_sums(vals: Sequence[Fraction]) -> list[Fraction]:
    out, acc = [], Fraction(0)
    for v in reversed(vals):
        acc += v
        out.append(acc)
    return out[::-1]


def bourbaki_coords(R: RootSystem, v: Weight | CartanPoint) -> tuple[Fraction, ...]:
    """Coordinates in the standard orthonormal chart ``t_1, ..., t_m``.

    Type ``A_n`` uses ``n + 1`` coordinates summing to zero; ``B_n`` and ``C_n``
    use ``n`` coordinates.
    """
    fam = _require_classical(R)
    n = R.rank
    c = list(v.coords)
    if len(c) != n:
        raise ConfigurationError("coordinate length does not match rank")
    is_weight = isinstance(v, Weight)
    if fam == "A":
        t = _tail_sums(c + [Fraction(0)])
        mean = sum(t, Fraction(0)) / (n + 1)
        return tuple(x - mean for x in t)
    # B weights and C Cartan points carry a half on the last coordinate.
    halve_last = (fam == "B") == is_weight
    c2 = c[:-1] + [c[-1] / 2 if halve_last else c[-1]]
    return tuple(_tail_sums(c2))


def from_bourbaki(R: RootSystem, t: Sequence, kind: str = "cartan") -> Weight | CartanPoint:
    """Inverse of :func:`bourbaki_coords`; ``kind`` is ``"cartan"`` or ``"weight"``."""
    fam = _require_classical(R)
    n = R.rank
    t = [Fraction(x) for x in t]
    if fam == "A":
        if len(t) != n + 1:
            raise ConfigurationError(f"{R.name} chart has {n + 1} coordinates")
        if sum(t) != 0:
            raise ConfigurationError("type A coordinates must sum to zero")
        c = [t[i] - t[i + 1] for i in range(n)]
    else:
        if len(t) != n:
            raise ConfigurationError(f"{R.name} chart has {n} coordinates")
        c = [t[i] - t[i + 1] for i in range(n - 1)]
        double_last = (fam == "B") == (kind == "weight")
        c.append(2 * t[-1] if double_last else t[-1])
    return Weight(tuple(c)) if kind == "weight" else CartanPoint(tuple(c))


def embed_cartan(R_sub: RootSystem, R_amb: RootSystem, point: CartanPoint) -> tuple[Fraction, ...]:
    """Image of a Cartan point under ``C_n -> A_{2n-1}`` or ``B_n -> A_{2n}``.

    Returns the ambient point in Bourbaki coordinates.
    """
    t = list(bourbaki_coords(R_sub, point))
    n = R_sub.rank
    if R_sub.family == "C" and R_amb.family == "A" and R_amb.rank == 2 * n - 1:
        return tuple(t + [-x for x in reversed(t)])
    if R_sub.family == "B" and R_amb.family == "A" and R_amb.rank == 2 * n:
        return tuple(t + [Fraction(0)] + [-x for x in reversed(t)])
    raise ConfigurationError(f"no diagram embedding {R_sub.name} -> {R_amb.name}")


def embed_cartan_point(R_sub: RootSystem, R_amb: RootSystem, point: CartanPoint) -> CartanPoint:
    out = from_bourbaki(R_amb, embed_cartan(R_sub, R_amb, point), kind="cartan")
    assert isinstance(out, CartanPoint)
    return out
