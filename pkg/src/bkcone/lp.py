"""Exact linear programming over the rationals.

Two-phase tableau simplex with Bland's anti-cycling rule.  Every quantity is a
:class:`fractions.Fraction`, so optimal values and witnesses are exact.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence


@dataclass
class LPResult:
    status: str  # "optimal", "infeasible" or "unbounded"
    value: Fraction | None = None
    x: tuple | None = None


def _pivot(rows: list[list[Fraction]], obj: list[Fraction], basis: list[int], r: int, c: int) -> None:
    prow = rows[r]
    p = prow[c]
    if p != 1:
        prow[:] = [v / p for v in prow]
    nz = [(j, v) for j, v in enumerate(prow) if v]
    for k, row in enumerate(rows):
        if k != r:
            f = row[c]
            if f:
                for j, v in nz:
                    row[j] -= f * v
    f = obj[c]
    if f:
        for j, v in nz:
            obj[j] -= f * v
    basis[r] = c


def _simplex(rows, obj, basis, allowed: int) -> str:
    """Maximise; ``obj[j]`` holds reduced costs ``z_j - c_j`` and ``obj[-1]`` the value."""
    while True:
        enter = next((j for j in range(allowed) if obj[j] < 0), None)
        if enter is None:
            return "optimal"
        best = None
        for k, row in enumerate(rows):
            a = row[enter]
            if a > 0:
                ratio = row[-1] / a
                key = (ratio, basis[k])
                if best is None or key < best[0]:
                    best = (key, k)
        if best is None:
            return "unbounded"
        _pivot(rows, obj, basis, best[1], enter)


def linprog_max(c: Sequence, A_ub: Sequence[Sequence] = (), b_ub: Sequence = (),
                A_eq: Sequence[Sequence] = (), b_eq: Sequence = ()) -> LPResult:
    """Maximise ``c.x`` subject to ``A_ub x <= b_ub``, ``A_eq x = b_eq``, ``x >= 0``."""
    n = len(c)
    m_ub, m_eq = len(A_ub), len(A_eq)
    m = m_ub + m_eq
    n_slack = m_ub
    # columns: x (n) | slack/surplus (m_ub) | artificial (as needed) | rhs
    needs_art = []
    raw = []
    for i in range(m_ub):
        a = [Fraction(v) for v in A_ub[i]]
        b = Fraction(b_ub[i])
        sl = [Fraction(0)] * n_slack
        sl[i] = Fraction(1)
        if b < 0:
            a = [-v for v in a]
            sl[i] = Fraction(-1)
            b = -b
            needs_art.append(i)
        raw.append((a, sl, b))
    for i in range(m_eq):
        a = [Fraction(v) for v in A_eq[i]]
        b = Fraction(b_eq[i])
        if b < 0:
            a, b = [-v for v in a], -b
        raw.append((a, [Fraction(0)] * n_slack, b))
        needs_art.append(m_ub + i)
    n_art = len(needs_art)
    art_col = {row: n + n_slack + k for k, row in enumerate(needs_art)}
    width = n + n_slack + n_art
    rows, basis = [], []
    for i, (a, sl, b) in enumerate(raw):
        art = [Fraction(0)] * n_art
        if i in art_col:
            art[art_col[i] - n - n_slack] = Fraction(1)
            basis.append(art_col[i])
        else:
            basis.append(n + i)
        rows.append(a + sl + art + [b])
    if n_art:
        # phase 1: maximise -sum(artificials)
        obj = [Fraction(0)] * (width + 1)
        for col in art_col.values():
            obj[col] = Fraction(1)
        for i, row in enumerate(rows):
            if i in art_col:
                obj[:] = [o - v for o, v in zip(obj, row)]
        _simplex(rows, obj, basis, width)
        if obj[-1] != 0:
            return LPResult("infeasible")
        # drive remaining artificials out of the basis
        for r in range(len(rows)):
            if basis[r] >= n + n_slack:
                col = next((j for j in range(n + n_slack) if rows[r][j] != 0), None)
                if col is not None:
                    _pivot(rows, obj, basis, r, col)
        keep = [r for r in range(len(rows)) if basis[r] < n + n_slack]
        rows = [rows[r][: n + n_slack] + [rows[r][-1]] for r in keep]
        basis = [basis[r] for r in keep]
    width = n + n_slack
    obj = [Fraction(0)] * (width + 1)
    for j in range(n):
        obj[j] = -Fraction(c[j])
    for r, bcol in enumerate(basis):
        f = obj[bcol]
        if f:
            obj[:] = [o - f * v for o, v in zip(obj, rows[r])]
    status = _simplex(rows, obj, basis, width)
    if status == "unbounded":
        return LPResult("unbounded")
    x = [Fraction(0)] * width
    for r, bcol in enumerate(basis):
        x[bcol] = rows[r][-1]
    return LPResult("optimal", obj[-1], tuple(x[:n]))
