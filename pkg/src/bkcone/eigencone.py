"""Inequalities of the multiplicative-free eigencone from Schubert calculus.

For a maximal parabolic ``P`` (complement ``{alpha_p}``) and a tuple
``(w_1, .., w_s)`` in ``W^P`` (X basis) with codimensions summing to
``dim G/P``, the inequality on ``(h_1, .., h_s)`` in the dominant chamber is

    ``sum_j omega_p(w_j^{-1} h_j) <= 0``

or, on weights, ``sum_j lambda_j(w_j x_p) <= 0``.  Three criteria select the
tuples:

``bs``  top cup-product coefficient non-zero,
``klm`` top coefficient equal to 1,
``bk``  top coefficient of the ``odot_0`` product equal to 1.
"""
from __future__ import annotations

import itertools
import json
import os
import random
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import gcd
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .bkprod import levi_exponent
from .errors import ConfigurationError, PreconditionError
from .golden import load_json
from .kernels import count_violations
from .lp import linprog_max
from .rootsys import (CartanPoint, RootSystem, Weight, bourbaki_coords, build_root_system,
                      embed_cartan, from_bourbaki)
from .schubert import schubert_ring
from .weyl import Parabolic, WeylElem, maximal_parabolic, str_to_word, weyl_group, word_to_str

CRITERIA = ("bs", "klm", "bk")
COORD_NAMES = "xyzw"


def primitive(vec: Sequence) -> tuple[int, ...]:
    """Smallest positive rescaling of a rational vector to coprime integers."""
    fr = [Fraction(v) for v in vec]
    den = 1
    for v in fr:
        den = den * v.denominator // gcd(den, v.denominator)
    ints = [int(v * den) for v in fr]
    g = 0
    for v in ints:
        g = gcd(g, v)
    if g == 0:
        return tuple(ints)
    return tuple(v // g for v in ints)


@dataclass(frozen=True)
class Inequality:
    """``sum_j <covector_j, point_j> <= 0`` for one Schubert tuple.

    ``covectors`` act on fundamental-weight coordinates of weights;
    ``cartan_covectors`` act on the ``a_i = alpha_i(h)`` coordinates of Cartan
    points.  Both are primitive integer vectors (jointly over the slots).
    """

    type: str
    parabolic: int
    words: tuple
    covectors: tuple
    cartan_covectors: tuple

    @property
    def s(self) -> int:
        return len(self.words)

    @property
    def key(self) -> tuple[int, ...]:
        return tuple(itertools.chain.from_iterable(self.cartan_covectors))

    def word_strings(self) -> list[str]:
        return [word_to_str(w) for w in self.words]

    def evaluate_weights(self, weights: Sequence[Sequence]) -> Fraction:
        return sum((Fraction(c) * Fraction(x) for cov, lam in zip(self.covectors, weights)
                    for c, x in zip(cov, lam)), Fraction(0))

    def evaluate_cartan(self, points: Sequence[Sequence]) -> Fraction:
        return sum((Fraction(c) * Fraction(x) for cov, a in zip(self.cartan_covectors, points)
                    for c, x in zip(cov, a)), Fraction(0))


def _slot_covectors(R: RootSystem, w: WeylElem, p: int) -> tuple[list[Fraction], list[Fraction]]:
    """Weight-side and Cartan-side functionals for one slot (unnormalised)."""
    W = weyl_group(R)
    n = R.rank
    winv = W.inverse(w)
    m_inv = W.mats[winv.index]
    m = W.mats[w.index]
    # lambda -> (w^{-1} lambda)(x_p) = row p of A^{-1} M_{w^{-1}}
    weight_cov = [sum((R.inv_cartan[p][k] * int(m_inv[k, j]) for k in range(n)), Fraction(0))
                  for j in range(n)]
    # h -> omega_p(w^{-1} h) = (w omega_p)(h) = sum_k a_k * [alpha_k coefficient of w omega_p]
    w_omega = [int(m[k, p]) for k in range(n)]
    cartan_cov = [R.weight_on_x(w_omega, k) for k in range(n)]
    return weight_cov, cartan_cov


def make_inequality(R: RootSystem, p: int, ws: Sequence[WeylElem]) -> Inequality:
    """Inequality attached to the maximal parabolic ``P_p`` (1-based) and tuple ``ws``."""
    weight, cartan = [], []
    for w in ws:
        wc, cc = _slot_covectors(R, w, p - 1)
        weight.append(wc)
        cartan.append(cc)
    n = R.rank
    flat_w = primitive(list(itertools.chain.from_iterable(weight)))
    flat_c = primitive(list(itertools.chain.from_iterable(cartan)))
    split = lambda flat: tuple(tuple(flat[j * n:(j + 1) * n]) for j in range(len(ws)))
    return Inequality(R.name, p, tuple(w.word for w in ws), split(flat_w), split(flat_c))


def tuple_passes(R: RootSystem, P: Parabolic, ws: Sequence[WeylElem], criterion: str) -> bool:
    ring = schubert_ring(R, P)
    d = ring.top_coefficient(ws, basis="X")
    if criterion == "bs":
        return d != 0
    if criterion == "klm":
        return d == 1
    if criterion == "bk":
        return d == 1 and not any(levi_exponent(R, P, ws))
    raise ConfigurationError(f"unknown criterion {criterion!r}")


def candidate_tuples(R: RootSystem, P: Parabolic, s: int) -> Iterable[tuple[WeylElem, ...]]:
    """Tuples in ``(W^P)^s`` whose codimensions sum to ``dim G/P``."""
    ring = schubert_ring(R, P)
    by_codim: dict[int, list[WeylElem]] = {}
    for w in ring.reps:
        by_codim.setdefault(ring.dim - w.length, []).append(w)

    def rec(prefix, remaining, slots):
        if slots == 1:
            for w in by_codim.get(remaining, []):
                yield prefix + (w,)
            return
        for c in sorted(by_codim):
            if c <= remaining:
                for w in by_codim[c]:
                    yield from rec(prefix + (w,), remaining - c, slots - 1)

    yield from rec((), ring.dim, s)


@dataclass
class InequalitySystem:
    type: str
    s: int
    criterion: str
    inequalities: list = field(default_factory=list)

    @property
    def R(self) -> RootSystem:
        return build_root_system(self.type)

    def __len__(self) -> int:
        return len(self.inequalities)

    def counts_by_parabolic(self) -> list[int]:
        out = [0] * self.R.rank
        for ineq in self.inequalities:
            out[ineq.parabolic - 1] += 1
        return out

    def keys(self) -> set:
        return {ineq.key for ineq in self.inequalities}

    def cartan_matrix(self) -> list[list[int]]:
        return [list(ineq.key) for ineq in self.inequalities]

    def weight_matrix(self) -> np.ndarray:
        return np.array([list(itertools.chain.from_iterable(i.covectors)) for i in self.inequalities],
                        dtype=np.int64).reshape(len(self.inequalities), self.s * self.R.rank)

    # -- membership ---------------------------------------------------------
    def contains(self, points: Sequence, kind: str = "weight") -> bool:
        """Membership of one ``s``-tuple of dominant weights or Cartan points."""
        return not self.violated(points, kind)

    def violated(self, points: Sequence, kind: str = "weight") -> list[Inequality]:
        R = self.R
        if len(points) != self.s:
            raise ConfigurationError(f"expected {self.s} points")
        coords = [tuple(Fraction(x) for x in (pt.coords if isinstance(pt, (Weight, CartanPoint)) else pt))
                  for pt in points]
        for c in coords:
            if len(c) != R.rank:
                raise ConfigurationError("point has wrong length")
            if any(x < 0 for x in c):
                raise PreconditionError(f"point {c} is not dominant")
        evaluate = Inequality.evaluate_weights if kind == "weight" else Inequality.evaluate_cartan
        return [ineq for ineq in self.inequalities if evaluate(ineq, coords) > 0]

    def contains_batch(self, weights: np.ndarray) -> np.ndarray:
        """Vectorised membership for integer dominant weight tuples, shape ``(N, s*rank)``."""
        weights = np.asarray(weights, dtype=np.int64)
        if np.any(weights < 0):
            raise PreconditionError("non-dominant weight in batch")
        return count_violations(self.weight_matrix(), weights) == 0

    # -- serialisation ------------------------------------------------------
    def to_dict(self) -> dict:
        return {
            "type": self.type,
            "s": self.s,
            "criterion": self.criterion,
            "inequalities": [
                {
                    "parabolic": i.parabolic,
                    "words": i.word_strings(),
                    "covectors": [list(c) for c in i.covectors],
                    "cartan_covectors": [list(c) for c in i.cartan_covectors],
                }
                for i in self.inequalities
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=1, sort_keys=True) + "\n"

    @classmethod
    def from_dict(cls, data: dict) -> "InequalitySystem":
        ineqs = [Inequality(data["type"], int(d["parabolic"]),
                            tuple(str_to_word(w) for w in d["words"]),
                            tuple(tuple(int(x) for x in c) for c in d["covectors"]),
                            tuple(tuple(int(x) for x in c) for c in d["cartan_covectors"]))
                 for d in data["inequalities"]]
        return cls(data["type"], int(data["s"]), data["criterion"], ineqs)


def _cache_path(label: str, s: int, criterion: str) -> Path | None:
    root = os.environ.get("BKCONE_CACHE_DIR")
    if not root:
        return None
    return Path(root) / f"eigencone-{label}-s{s}-{criterion}.json"


def generate(R: RootSystem | str, s: int = 3, criterion: str = "bk",
             parabolics: Sequence[int] | None = None) -> InequalitySystem:
    """Generate and deduplicate the inequality system for ``criterion``.

    Inequalities are ordered by parabolic and then by canonical Cartan
    covector, so the output is deterministic.  When ``BKCONE_CACHE_DIR`` is
    set, complete systems are cached there as JSON.
    """
    if isinstance(R, str):
        R = build_root_system(R)
    if criterion not in CRITERIA:
        raise ConfigurationError(f"criterion must be one of {CRITERIA}")
    if s < 2:
        raise ConfigurationError("s must be at least 2")
    if not R.is_irreducible or R.family == "L":
        raise ConfigurationError("eigencone generation requires a named simple type")
    full = parabolics is None
    cache = _cache_path(R.name, s, criterion) if full else None
    if cache is not None and cache.exists():
        return InequalitySystem.from_dict(json.loads(cache.read_text()))
    chosen = list(range(1, R.rank + 1)) if full else list(parabolics)
    out = []
    for p in chosen:
        P = maximal_parabolic(R, p)
        seen = {}
        for ws in candidate_tuples(R, P, s):
            if tuple_passes(R, P, ws, criterion):
                ineq = make_inequality(R, p, ws)
                seen.setdefault(ineq.key, ineq)
        out.extend(seen[k] for k in sorted(seen))
    system = InequalitySystem(R.name, s, criterion, out)
    if cache is not None:
        cache.parent.mkdir(parents=True, exist_ok=True)
        cache.write_text(system.to_json())
    return system


# -- chart conversions and text output -----------------------------------------


def _chart_matrix(R: RootSystem, chart: str) -> list[list[Fraction]]:
    """Rows: the chart coordinates of ``x_i`` (Cartan basis vector ``i``)."""
    n = R.rank
    rows = []
    for i in range(n):
        e = [Fraction(int(i == j)) for j in range(n)]
        if chart == "cartan":
            rows.append(e)
        else:
            rows.append(list(bourbaki_coords(R, CartanPoint(tuple(e)))))
    return rows


def chart_functional_to_cartan(R: RootSystem, chart: str, coeffs: Sequence) -> list[Fraction]:
    """Pull back a linear functional on chart coordinates to the ``a_i`` coordinates."""
    rows = _chart_matrix(R, chart)
    return [sum((Fraction(c) * r for c, r in zip(coeffs, row)), Fraction(0)) for row in rows]


def cartan_functional_to_chart(R: RootSystem, chart: str, coeffs: Sequence) -> list[Fraction]:
    """Express a functional on ``a`` coordinates in chart coordinates (``a = from_bourbaki(t)``)."""
    if chart == "cartan":
        return [Fraction(c) for c in coeffs]
    m = len(_chart_matrix(R, chart)[0])
    out = []
    for k in range(m):
        t = [Fraction(int(k == j)) for j in range(m)]
        if R.family == "A":
            # extend linearly from the trace-zero hyperplane: a_i = t_i - t_{i+1}
            a = [t[i] - t[i + 1] for i in range(R.rank)]
        else:
            a = list(from_bourbaki(R, t, kind="cartan").coords)
        out.append(sum((Fraction(c) * x for c, x in zip(coeffs, a)), Fraction(0)))
    return out


def default_chart(R: RootSystem) -> str:
    return "bourbaki" if R.family in "ABC" else "cartan"


def format_inequality(ineq: Inequality, chart: str | None = None) -> str:
    """Human-readable form with variables ``x_j, y_j, ...`` for slot ``j``."""
    R = build_root_system(ineq.type)
    chart = chart or default_chart(R)
    slots = [cartan_functional_to_chart(R, chart, cov) for cov in ineq.cartan_covectors]
    flat = primitive(list(itertools.chain.from_iterable(slots)))
    m = len(slots[0])
    names = COORD_NAMES if m <= 4 else [f"t{k + 1}_" for k in range(m)]
    lhs, rhs = [], []
    for j in range(len(slots)):
        for k in range(m):
            c = flat[j * m + k]
            if c == 0:
                continue
            name = f"{names[k]}_{j + 1}" if m <= 4 else f"{names[k]}{j + 1}"
            term = (f"{abs(c)}" if abs(c) != 1 else "") + name
            (lhs if c > 0 else rhs).append(term)
    return f"{' + '.join(lhs) or '0'} <= {' + '.join(rhs) or '0'}"


# -- golden inequality lists ---------------------------------------------------

_VAR = re.compile(r"^\s*(\d*)\s*([a-z])_(\d+)\s*$")


def parse_linear(text: str, names: Sequence[str], s: int) -> list[list[Fraction]]:
    """Parse ``"2x_1 + y_1 <= x_2 + 3y_3"`` into per-slot coefficient lists of ``lhs - rhs``."""
    if "<=" in text:
        lhs, rhs, sign = *text.split("<="), 1
    elif ">=" in text:
        lhs, rhs, sign = *text.split(">="), -1
    else:
        raise ValueError(f"no inequality sign in {text!r}")
    coeffs = [[Fraction(0)] * len(names) for _ in range(s)]
    for side, factor in ((lhs, sign), (rhs, -sign)):
        for term in side.split("+"):
            term = term.strip()
            if term == "0":
                continue
            m = _VAR.match(term)
            if not m:
                raise ValueError(f"cannot parse term {term!r}")
            c = int(m.group(1)) if m.group(1) else 1
            coeffs[int(m.group(3)) - 1][names.index(m.group(2))] += factor * c
    return coeffs


@lru_cache(maxsize=None)
def golden_lists() -> dict:
    return load_json("inequality_lists.json")["systems"]


def golden_keys(label: str, s: int = 3) -> dict[int, set]:
    """Canonical Cartan keys of the published list after symmetrisation, by parabolic."""
    entry = golden_lists()[label]
    R = build_root_system(label)
    out = {}
    for p, seeds in entry["seeds"].items():
        keys = set()
        for text in seeds:
            slots = parse_linear(text, entry["variables"], s)
            cart = [chart_functional_to_cartan(R, entry["chart"], sl) for sl in slots]
            for perm in itertools.permutations(range(s)):
                keys.add(primitive(list(itertools.chain.from_iterable(cart[j] for j in perm))))
        out[int(p)] = keys
    return out


@dataclass
class GoldenComparison:
    type: str
    equal: bool
    missing: list
    extra: list
    counts: dict


def compare_with_golden(system: InequalitySystem) -> GoldenComparison:
    expected = golden_keys(system.type, system.s)
    got: dict[int, set] = {}
    for ineq in system.inequalities:
        got.setdefault(ineq.parabolic, set()).add(ineq.key)
    missing, extra, counts = [], [], {}
    for p in sorted(set(expected) | set(got)):
        e, g = expected.get(p, set()), got.get(p, set())
        missing += [(p, k) for k in sorted(e - g)]
        extra += [(p, k) for k in sorted(g - e)]
        counts[p] = (len(e), len(g))
    return GoldenComparison(system.type, not missing and not extra, missing, extra, counts)


# -- irredundancy --------------------------------------------------------------


@dataclass
class FacetReport:
    index: int
    is_facet: bool
    value: Fraction
    witness: tuple | None


def irredundancy_check(system: InequalitySystem, indices: Iterable[int] | None = None) -> list[FacetReport]:
    """Exact LP test that every inequality defines a facet meeting the open chamber.

    For inequality ``k`` maximise ``f_k(a)`` subject to ``f_j(a) <= 0``
    (``j != k``), ``a_i >= 1`` and ``f_k(a) <= 1``.  The inequality is
    irredundant iff the optimum is positive; the optimal point is verified
    exactly.
    """
    rows = [list(ineq.key) for ineq in system.inequalities]
    nvar = len(rows[0]) if rows else 0
    ones = [1] * nvar
    reports = []
    for k in (range(len(rows)) if indices is None else indices):
        fk = rows[k]
        # substitute a = 1 + y with y >= 0
        A_ub, b_ub = [], []
        for j, f in enumerate(rows):
            if j != k:
                A_ub.append(f)
                b_ub.append(-sum(f))
        A_ub.append(fk)
        b_ub.append(1 - sum(fk))
        res = linprog_max(fk, A_ub, b_ub)
        if res.status != "optimal":
            reports.append(FacetReport(k, False, Fraction(0), None))
            continue
        a = tuple(Fraction(1) + y for y in res.x)
        value = sum((Fraction(c) * x for c, x in zip(fk, a)), Fraction(0))
        ok = value > 0 and all(sum((Fraction(c) * x for c, x in zip(f, a)), Fraction(0)) <= 0
                               for j, f in enumerate(rows) if j != k)
        reports.append(FacetReport(k, ok, value, a))
    return reports


def implied(covector: Sequence, rows: Sequence[Sequence]) -> bool:
    """Whether ``covector . a <= 0`` follows from ``rows . a <= 0`` on the closed chamber ``a >= 0``."""
    nvar = len(covector)
    A_ub = [list(r) for r in rows] + [[1] * nvar]
    b_ub = [0] * len(rows) + [1]
    res = linprog_max(list(covector), A_ub, b_ub)
    return res.status == "optimal" and res.value <= 0


# -- diagram-automorphism embeddings ------------------------------------------


def _embedding_matrix(R_sub: RootSystem, R_amb: RootSystem) -> list[list[Fraction]]:
    """Matrix ``M`` with ``a_amb = M a_sub`` (column ``i`` = image of ``x_i``)."""
    n = R_sub.rank
    cols = []
    for i in range(n):
        e = CartanPoint(tuple(int(i == j) for j in range(n)))
        t = embed_cartan(R_sub, R_amb, e)
        cols.append(list(from_bourbaki(R_amb, t, kind="cartan").coords))
    return [[cols[i][r] for i in range(n)] for r in range(R_amb.rank)]


def restrict_system(amb: InequalitySystem, R_sub: RootSystem) -> list[tuple[int, ...]]:
    """Ambient inequalities pulled back along the diagonal embedding of chambers."""
    R_amb = amb.R
    M = _embedding_matrix(R_sub, R_amb)
    out = set()
    for ineq in amb.inequalities:
        flat = []
        for cov in ineq.cartan_covectors:
            flat += [sum((Fraction(c) * M[r][i] for r, c in enumerate(cov)), Fraction(0))
                     for i in range(R_sub.rank)]
        key = primitive(flat)
        if any(key):
            out.add(key)
    return sorted(out)


@dataclass
class EmbeddingReport:
    sub: str
    ambient: str
    restricted_implied: bool
    sub_implied: bool
    samples: int
    disagreements: int


def diagram_automorphism_test(sub_label: str, amb_label: str, samples: int = 1000,
                              seed: int = 0, s: int = 3, bound: int = 6) -> EmbeddingReport:
    """Check that the subalgebra eigencone is the ambient one cut by the fixed chamber.

    Both inclusions are decided by exact LP; seeded random chamber points are
    then tested for agreement of the two membership tests.
    """
    R_sub, R_amb = build_root_system(sub_label), build_root_system(amb_label)
    sub_sys = generate(R_sub, s, "bk")
    amb_sys = generate(R_amb, s, "bk")
    restricted = restrict_system(amb_sys, R_sub)
    sub_rows = [list(i.key) for i in sub_sys.inequalities]
    restricted_ok = all(implied(f, sub_rows) for f in restricted)
    sub_ok = all(implied(f, restricted) for f in sub_rows)
    M = _embedding_matrix(R_sub, R_amb)
    rng = random.Random(seed)
    bad = 0
    for _ in range(samples):
        pts = [[rng.randint(0, bound) for _ in range(R_sub.rank)] for _ in range(s)]
        in_sub = sub_sys.contains(pts, kind="cartan")
        amb_pts = [[sum((M[r][i] * x for i, x in enumerate(pt)), Fraction(0)) for r in range(R_amb.rank)]
                   for pt in pts]
        in_amb = amb_sys.contains(amb_pts, kind="cartan")
        bad += in_sub != in_amb
    return EmbeddingReport(sub_label, amb_label, restricted_ok, sub_ok, samples, bad)
