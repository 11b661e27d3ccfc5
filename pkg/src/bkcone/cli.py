"""Command-line interface: ``bkcone <group> <command> [options]``.

Exit status is 0 on success, 1 when a computed result disagrees with the
reference data or an expected outcome, and 2 on usage errors.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from .errors import BkconeError, InvariantViolation
from .rootsys import build_root_system, k_g
from .weyl import Parabolic, parabolic_from_complement, str_to_word, weyl_group, word_to_str

OK, MISMATCH, USAGE = 0, 1, 2


class UsageError(Exception):
    pass


# -- helpers --------------------------------------------------------------------


def rat(x) -> int | str:
    """Integers stay integers; other rationals become ``"p/q"`` strings."""
    x = Fraction(x)
    return int(x) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def parse_rat(x) -> Fraction:
    try:
        return Fraction(x) if not isinstance(x, float) else Fraction(str(x))
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"not a rational number: {x!r}") from exc


def int_list(text: str) -> tuple[int, ...]:
    text = text.strip()
    if not text:
        return ()
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError as exc:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from exc


def dump_json(data) -> str:
    return json.dumps(data, indent=1, sort_keys=True, ensure_ascii=False) + "\n"


def emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def word(w) -> str:
    return word_to_str(w.word) or "e"


def parse_parabolic(R, text: str) -> Parabolic:
    """``"2"`` is a maximal parabolic, ``"1,3"`` lists the simple roots outside the Levi, ``"borel"`` is B."""
    if text.strip().lower() in ("b", "borel"):
        return parabolic_from_complement(R, range(1, R.rank + 1))
    comp = int_list(text)
    if not comp or any(not 1 <= i <= R.rank for i in comp):
        raise UsageError(f"parabolic {text!r} must list indices in 1..{R.rank}")
    return parabolic_from_complement(R, comp)


def load_json_file(path: str):
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path} is not valid JSON: {exc}") from exc


def check_expectation(actual: list[bool], expect: str | None) -> int:
    if expect is None:
        return OK
    want = expect == "in"
    return OK if all(a == want for a in actual) else MISMATCH


# -- eigencone ----------------------------------------------------------------------


def cmd_eigencone_gen(args) -> int:
    from .eigencone import default_chart, format_inequality, generate

    system = generate(args.type, args.s, args.criterion)
    if args.format == "json":
        text = system.to_json()
    elif args.format == "csv":
        buf = io.StringIO()
        wr = csv.writer(buf, lineterminator="\n")
        wr.writerow(["parabolic", "words", "covector"])
        for ineq in system.inequalities:
            wr.writerow([ineq.parabolic, " ".join(ineq.word_strings()), " ".join(map(str, ineq.key))])
        text = buf.getvalue()
    else:
        chart = args.chart or default_chart(system.R)
        counts = system.counts_by_parabolic()
        lines = [f"# {system.type} s={system.s} criterion={system.criterion} chart={chart}",
                 f"# {len(system)} inequalities ({' + '.join(map(str, counts))})"]
        for p in range(1, system.R.rank + 1):
            lines.append(f"## P{p}")
            for ineq in system.inequalities:
                if ineq.parabolic == p:
                    lines.append(f"{format_inequality(ineq, chart)}    [{' '.join(ineq.word_strings())}]")
        text = "\n".join(lines) + "\n"
    emit(text, args.out)
    return OK


def _tuples_from_file(data) -> list:
    if isinstance(data, dict) and "tuples" in data:
        return data["tuples"]
    if isinstance(data, dict) and "points" in data:
        return [data["points"]]
    if isinstance(data, list):
        return data
    raise UsageError("points file must contain 'points' or 'tuples'")


def cmd_eigencone_member(args) -> int:
    from .eigencone import generate

    system = generate(args.type, args.s, "bk")
    data = load_json_file(args.points)
    kind = data.get("kind", args.kind) if isinstance(data, dict) else args.kind
    results, flags = [], []
    for tup in _tuples_from_file(data):
        pts = [[parse_rat(x) for x in pt] for pt in tup]
        bad = system.violated(pts, kind=kind)
        idx = [system.inequalities.index(b) for b in bad]
        flags.append(not bad)
        results.append({"points": [[rat(x) for x in pt] for pt in pts], "member": not bad, "violated": idx})
    if args.format == "json":
        emit(dump_json({"type": system.type, "kind": kind, "results": results}), args.out)
    else:
        lines = [f"{r['points']} {'inside' if r['member'] else 'outside'}"
                 + (f" violates {r['violated']}" if r["violated"] else "") for r in results]
        emit("\n".join(lines) + "\n", args.out)
    return check_expectation(flags, args.expect)


def cmd_eigencone_facets(args) -> int:
    from .eigencone import generate, irredundancy_check

    system = generate(args.type, args.s, args.criterion)
    reports = irredundancy_check(system)
    bad = [r.index for r in reports if not r.is_facet]
    if args.format == "json":
        emit(dump_json({"type": system.type, "criterion": system.criterion, "facets": [
            {"index": r.index, "is_facet": r.is_facet, "value": rat(r.value),
             "witness": [rat(x) for x in r.witness] if r.witness else None} for r in reports]}), args.out)
    else:
        lines = [f"{system.type}: {len(reports) - len(bad)}/{len(reports)} inequalities are facets"]
        lines += [f"not a facet: {i}" for i in bad]
        emit("\n".join(lines) + "\n", args.out)
    return MISMATCH if bad else OK


def cmd_eigencone_golden(args) -> int:
    from .eigencone import compare_with_golden, generate

    cmp = compare_with_golden(generate(args.type, args.s, "bk"))
    lines = [f"{cmp.type}: " + ("equal to reference list" if cmp.equal else "differs from reference list")]
    for p, (e, g) in sorted(cmp.counts.items()):
        lines.append(f"P{p}: reference {e}, generated {g}")
    lines += [f"missing P{p}: {list(k)}" for p, k in cmp.missing]
    lines += [f"extra P{p}: {list(k)}" for p, k in cmp.extra]
    emit("\n".join(lines) + "\n", args.out)
    return OK if cmp.equal else MISMATCH


# -- bk -----------------------------------------------------------------------------


def _table_labels(R, P, reps) -> dict:
    """Labels of the reference table for ``(R, P)`` if there is one, else the words."""
    from .golden import deformed_tables

    names = {w: word(w) for w in reps}
    if len(P.complement) == 1:
        for entry in deformed_tables():
            if entry["type"] == R.name and entry["parabolic"] == P.complement[0] + 1:
                W = weyl_group(R)
                for lab, wd in entry["labels"].items():
                    names[W.from_word(str_to_word(wd))] = lab
    return names


def _tau(P, e) -> str:
    parts = []
    for i, k in zip(P.complement, e):
        if k:
            name = "t" if len(P.complement) == 1 else f"t{i + 1}"
            parts.append(name if k == 1 else f"{name}^{k}")
    return " ".join(parts)


def cmd_bk_table(args) -> int:
    from .bkprod import deformed_product
    from .schubert import schubert_ring

    R = build_root_system(args.type)
    P = parse_parabolic(R, args.parabolic)
    ring = schubert_ring(R, P)
    reps = [w for w in ring.reps if w.length]
    names = _table_labels(R, P, ring.reps)
    rows = []
    for a, u in enumerate(reps):
        for v in reps[a:]:
            d = deformed_product(R, P, u, v, args.basis)
            rows.append((u, v, d.items_sorted()))
    if args.format == "json":
        out = {"type": R.name, "parabolic": [i + 1 for i in P.complement], "basis": args.basis,
               "labels": {names[w]: word(w) for w in reps},
               "products": [{"u": word(u), "v": word(v), "terms": [
                   {"w": word(w), "coef": c, "tau": list(e)} for w, (c, e) in terms]} for u, v, terms in rows]}
        text = dump_json(out)
    else:
        lines = [f"# {R.name} P={P.label} basis={args.basis}"]
        lines += [f"# {names[w]} = {word(w)}" for w in reps]
        for u, v, terms in rows:
            expr = " + ".join(" ".join(x for x in (str(c) if c != 1 else "", _tau(P, e), names[w]) if x)
                              for w, (c, e) in terms) or "0"
            lines.append(f"{names[u]} * {names[v]} = {expr}")
        text = "\n".join(lines) + "\n"
    status = OK
    if args.diff_golden:
        if args.basis != "epsilon" or len(P.complement) != 1:
            raise UsageError("--diff-golden needs a maximal parabolic and the epsilon basis")
        status, diff = _golden_diff(f"{R.name}/P{P.complement[0] + 1}")
        text += diff
    emit(text, args.out)
    return status


def _golden_diff(name: str | None) -> tuple[int, str]:
    from .golden import compare_tables, explain_mismatches, format_cell

    results = compare_tables(name)
    if not results:
        raise UsageError(f"no reference table named {name!r}")
    bad = [r for r in results if not r.ok]
    lines = [f"# reference diff: {len(results) - len(bad)}/{len(results)} cells match"]
    for r in bad:
        lines.append(f"- {r.table} {r.row}*{r.col}: reference {format_cell(r.expected)!r}, "
                     f"computed {format_cell(r.computed)!r}")
    for rep in explain_mismatches(results):
        lines.append(f"# {rep.table}: degree of the divisor chain reference {rep.printed_degree}, "
                     f"corrected {rep.corrected_degree}, Hilbert polynomial {rep.expected_degree}; "
                     f"associativity failures reference {rep.printed_assoc_failures}, "
                     f"corrected {rep.corrected_assoc_failures}; "
                     + ("consistent with a misprint" if rep.explained else "not explained"))
    return (MISMATCH if bad else OK), "\n".join(lines) + "\n"


def cmd_bk_check(args) -> int:
    from .bkprod import bk0_top_coefficient, is_levi_movable, levi_exponent
    from .schubert import schubert_ring

    if args.words is None:
        status, text = _golden_diff(args.table)
        emit(text, args.out)
        return status
    if not args.type or not args.parabolic:
        raise UsageError("--words needs --type and --parabolic")
    R = build_root_system(args.type)
    P = parse_parabolic(R, args.parabolic)
    W = weyl_group(R)
    ring = schubert_ring(R, P)
    texts = ["" if x.strip() == "e" else x.strip() for x in args.words.split(",")]
    ws = [W.from_word(str_to_word(x)) for x in texts]
    for w, text in zip(ws, texts):
        if not W.is_min_coset_rep(w, P) or w.length != len(text):
            raise UsageError(f"{text!r} is not a reduced word of a minimal coset representative")
    codim = sum(ring.dim - w.length for w in ws)
    out = {"type": R.name, "parabolic": [i + 1 for i in P.complement], "words": [word(w) for w in ws],
           "codimension": codim, "dim": ring.dim,
           "cup": ring.top_coefficient(ws) if codim == ring.dim else None,
           "exponents": [rat(x) for x in levi_exponent(R, P, ws)],
           "levi_movable": is_levi_movable(R, P, ws),
           "bk0": bk0_top_coefficient(R, P, ws)}
    if args.format == "json":
        emit(dump_json(out), args.out)
    else:
        emit("".join(f"{k}: {out[k]}\n" for k in ("type", "parabolic", "words", "codimension", "dim", "cup",
                                                   "exponents", "levi_movable", "bk0")), args.out)
    return OK


# -- schubert -----------------------------------------------------------------------


def cmd_schubert_dump(args) -> int:
    from .schubert import schubert_ring

    R = build_root_system(args.type)
    P = parse_parabolic(R, args.parabolic)
    ring = schubert_ring(R, P)
    table = ring.table(args.basis)
    prods = []
    for u in ring.reps:
        for v in ring.reps:
            cls = table[(u, v)]
            prods.append((u, v, [(w, c) for w, c in cls.items_sorted()]))
    if args.format == "json":
        text = dump_json({"type": R.name, "parabolic": [i + 1 for i in P.complement], "basis": args.basis,
                          "dim": ring.dim, "elements": [word(w) for w in ring.reps],
                          "products": [{"u": word(u), "v": word(v),
                                        "terms": [{"w": word(w), "coef": c} for w, c in terms]}
                                       for u, v, terms in prods]})
    else:
        name = "e" if args.basis == "epsilon" else "X"
        lines = [f"# {R.name} P={P.label} basis={args.basis} dim={ring.dim} |W^P|={len(ring.reps)}"]
        for u, v, terms in prods:
            expr = " + ".join(f"{'' if c == 1 else f'{c} '}{name}[{word(w)}]" for w, c in terms) or "0"
            lines.append(f"{name}[{word(u)}] * {name}[{word(v)}] = {expr}")
        text = "\n".join(lines) + "\n"
    emit(text, args.out)
    return OK


# -- horn / lr ----------------------------------------------------------------------


def cmd_horn_set(args) -> int:
    from .typea import horn_set, horn_set_hat

    if not 0 < args.r < args.n:
        raise UsageError("need 0 < r < n")
    triples = sorted((horn_set_hat if args.hat else horn_set)(args.r, args.n))
    if args.format == "json":
        text = dump_json({"r": args.r, "n": args.n, "hat": args.hat,
                          "triples": [[list(x) for x in t] for t in triples]})
    elif args.format == "csv":
        buf = io.StringIO()
        wr = csv.writer(buf, lineterminator="\n")
        wr.writerow(["I", "J", "K"])
        for t in triples:
            wr.writerow([" ".join(map(str, x)) for x in t])
        text = buf.getvalue()
    else:
        lines = [f"# {'hat ' if args.hat else ''}S^{args.r}_{args.n}: {len(triples)} triples"]
        lines += [" | ".join(",".join(map(str, x)) for x in t) for t in triples]
        text = "\n".join(lines) + "\n"
    emit(text, args.out)
    return OK


def cmd_horn_member(args) -> int:
    from .typea import hermitian_membership

    data = load_json_file(args.file)
    try:
        spectra = [[parse_rat(x) for x in data[k]] for k in ("a", "b", "c")]
    except (KeyError, TypeError) as exc:
        raise UsageError("triple file needs lists 'a', 'b', 'c'") from exc
    member = hermitian_membership(*spectra)
    if args.format == "json":
        emit(dump_json({"a": [rat(x) for x in spectra[0]], "b": [rat(x) for x in spectra[1]],
                        "c": [rat(x) for x in spectra[2]], "member": member}), args.out)
    else:
        emit(f"{'realisable' if member else 'not realisable'}\n", args.out)
    return check_expectation([member], args.expect)


def cmd_lr(args) -> int:
    from .typea import lr_coefficient, lr_product, partition

    lam, mu = partition(int_list(args.lam)), partition(int_list(args.mu))
    if args.nu is not None:
        c = lr_coefficient(lam, mu, int_list(args.nu))
        emit(dump_json({"lam": list(lam), "mu": list(mu), "nu": list(partition(int_list(args.nu))), "c": c})
             if args.format == "json" else f"{c}\n", args.out)
        return OK
    prod = sorted(lr_product(lam, mu).items(), key=lambda kv: tuple(-x for x in kv[0]))
    if args.format == "json":
        emit(dump_json({"lam": list(lam), "mu": list(mu),
                        "terms": [{"nu": list(nu), "c": c} for nu, c in prod]}), args.out)
    else:
        emit("".join(f"{','.join(map(str, nu))}: {c}\n" for nu, c in prod), args.out)
    return OK


# -- tensor -------------------------------------------------------------------------


def cmd_tensor_mult(args) -> int:
    from .tensor import invariant_dim, tensor_decompose

    R = build_root_system(args.type)
    lam, mu = int_list(args.lam), int_list(args.mu)
    if args.nu is not None:
        nu = int_list(args.nu)
        dec = tensor_decompose(R, lam, mu)
        out = {"type": R.name, "lam": list(lam), "mu": list(mu), "nu": list(nu),
               "multiplicity": dec.get(nu, 0), "invariant_dim": invariant_dim(R, lam, mu, nu)}
        if args.format == "json":
            emit(dump_json(out), args.out)
        else:
            emit(f"multiplicity of V({args.nu}) in V({args.lam}) x V({args.mu}): {out['multiplicity']}\n"
                 f"invariant_dim: {out['invariant_dim']}\n", args.out)
        return OK
    dec = sorted(tensor_decompose(R, lam, mu).items())
    if args.format == "json":
        emit(dump_json({"type": R.name, "lam": list(lam), "mu": list(mu),
                        "terms": [{"nu": list(nu), "mult": m} for nu, m in dec]}), args.out)
    else:
        emit("".join(f"{','.join(map(str, nu))}: {m}\n" for nu, m in dec), args.out)
    return OK


def cmd_tensor_satscan(args) -> int:
    from .tensor import saturation_scan

    R = build_root_system(args.type)
    kk = k_g(R) ** 2
    mults = tuple(range(2, args.dmax + 1))
    rep = saturation_scan(R, args.bound, mults, workers=args.workers)
    unrestored = [p.triple for p in rep["failing"] if args.dmax >= kk and p.dims.get(kk, 0) == 0]
    fmt = "csv" if args.out and args.out.endswith(".csv") and args.format == "text" else args.format
    if fmt == "csv":
        buf = io.StringIO()
        wr = csv.writer(buf, lineterminator="\n")
        wr.writerow(["lam", "mu", "nu", "d", "invariant_dim"])
        for p in rep["failing"]:
            for d, v in sorted(p.dims.items()):
                wr.writerow([",".join(map(str, x)) for x in p.triple] + [d, v])
        text = buf.getvalue()
    elif fmt == "json":
        text = dump_json({"type": R.name, "bound": args.bound, "dmax": args.dmax, "checked": rep["checked"],
                          "failing": [{"triple": [list(x) for x in p.triple],
                                       "dims": {str(d): v for d, v in sorted(p.dims.items())}}
                                      for p in rep["failing"]],
                          "converse_violations": [[list(x) for x in t] for t in rep["converse_violations"]]})
    else:
        lines = [f"# {R.name} bound={args.bound} dmax={args.dmax}: {rep['checked']} triples, "
                 f"{len(rep['failing'])} in the cone without invariants"]
        for p in rep["failing"]:
            lines.append(f"{' '.join(','.join(map(str, x)) for x in p.triple)}: restored at {p.restoring}")
        lines += [f"invariants outside the cone: {t}" for t in rep["converse_violations"]]
        text = "\n".join(lines) + "\n"
    emit(text, args.out)
    return MISMATCH if rep["converse_violations"] or unrestored else OK


def cmd_tensor_rigidity(args) -> int:
    from .tensor import rigidity_scan

    rep = rigidity_scan(args.r, args.bound, workers=args.workers)
    if args.format == "json":
        emit(dump_json({"r": rep["r"], "bound": rep["bound"], "rigid_triples": rep["rigid_triples"],
                        "violations": [{"triple": [list(x) for x in t], "d": d, "dim": v}
                                       for t, d, v in rep["violations"]]}), args.out)
    else:
        lines = [f"# SL({args.r}) bound={args.bound}: {rep['rigid_triples']} triples with one invariant, "
                 f"{len(rep['violations'])} violations"]
        lines += [f"{t} at {d}: {v}" for t, d, v in rep["violations"]]
        emit("\n".join(lines) + "\n", args.out)
    return MISMATCH if rep["violations"] else OK


# -- suite --------------------------------------------------------------------------


def cmd_suite(args) -> int:
    from .acceptance import CHECKS, run_all

    numbers = int_list(args.only) if args.only else None
    if numbers and any(k not in CHECKS for k in numbers):
        raise UsageError(f"criteria are numbered 1..{len(CHECKS)}")
    lines = []

    def echo(line):
        lines.append(line)
        if not args.out:
            print(line, flush=True)

    results = run_all(numbers, echo, seed=args.seed)
    passed = sum(r.ok for r in results)
    echo(f"{passed}/{len(results)} criteria passed")
    if args.out:
        emit("\n".join(lines) + "\n", args.out)
    return OK if passed == len(results) else MISMATCH


# -- parser -------------------------------------------------------------------------


def _common(p, formats=("text", "json")):
    p.add_argument("--format", choices=formats, default="text")
    p.add_argument("--out", help="write to this file instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="bkcone", description="Eigencones, deformed Schubert products "
                                     "and saturation experiments.")
    groups = parser.add_subparsers(dest="group", metavar="<group>")

    eig = groups.add_parser("eigencone", help="inequality systems of the eigencone")
    eig_sub = eig.add_subparsers(dest="command", metavar="<command>")
    p = eig_sub.add_parser("gen", help="generate the inequality system")
    p.add_argument("--type", required=True)
    p.add_argument("--s", type=int, default=3)
    p.add_argument("--criterion", choices=("bk", "klm", "bs"), default="bk")
    p.add_argument("--chart", choices=("bourbaki", "cartan"))
    _common(p, ("text", "json", "csv"))
    p.set_defaults(func=cmd_eigencone_gen)
    p = eig_sub.add_parser("member", help="test tuples of dominant points for membership")
    p.add_argument("--type", required=True)
    p.add_argument("--points", required=True, help="JSON file with 'points' or 'tuples'")
    p.add_argument("--kind", choices=("weight", "cartan"), default="weight")
    p.add_argument("--s", type=int, default=3)
    p.add_argument("--expect", choices=("in", "out"))
    _common(p)
    p.set_defaults(func=cmd_eigencone_member)
    p = eig_sub.add_parser("facets", help="certify every inequality as a facet by exact LP")
    p.add_argument("--type", required=True)
    p.add_argument("--s", type=int, default=3)
    p.add_argument("--criterion", choices=("bk", "klm", "bs"), default="bk")
    _common(p)
    p.set_defaults(func=cmd_eigencone_facets)
    p = eig_sub.add_parser("golden", help="compare with the reference inequality list")
    p.add_argument("--type", required=True)
    p.add_argument("--s", type=int, default=3)
    _common(p, ("text",))
    p.set_defaults(func=cmd_eigencone_golden)

    bk = groups.add_parser("bk", help="deformed cup product")
    bk_sub = bk.add_subparsers(dest="command", metavar="<command>")
    p = bk_sub.add_parser("table", help="deformed multiplication table")
    p.add_argument("--type", required=True)
    p.add_argument("--parabolic", required=True)
    p.add_argument("--basis", choices=("epsilon", "X"), default="epsilon")
    p.add_argument("--diff-golden", action="store_true", help="compare with the reference table")
    _common(p)
    p.set_defaults(func=cmd_bk_table)
    p = bk_sub.add_parser("check", help="diff reference tables, or test one tuple with --words")
    p.add_argument("--table", help="reference table name such as G2/P1")
    p.add_argument("--type")
    p.add_argument("--parabolic")
    p.add_argument("--words", help="comma-separated X-basis words")
    _common(p)
    p.set_defaults(func=cmd_bk_check)

    sch = groups.add_parser("schubert", help="cup product structure constants")
    sch_sub = sch.add_subparsers(dest="command", metavar="<command>")
    p = sch_sub.add_parser("dump", help="full multiplication table")
    p.add_argument("--type", required=True)
    p.add_argument("--parabolic", required=True)
    p.add_argument("--basis", choices=("epsilon", "X"), default="epsilon")
    _common(p)
    p.set_defaults(func=cmd_schubert_dump)

    horn = groups.add_parser("horn", help="Horn sets and the Hermitian eigenvalue problem")
    horn_sub = horn.add_subparsers(dest="command", metavar="<command>")
    p = horn_sub.add_parser("set", help="list Horn's set")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--hat", action="store_true", help="relax the top condition to an inequality")
    _common(p, ("text", "json", "csv"))
    p.set_defaults(func=cmd_horn_set)
    p = horn_sub.add_parser("member", help="decide a Hermitian spectrum triple")
    p.add_argument("--file", required=True, help="JSON file with lists 'a', 'b', 'c'")
    p.add_argument("--expect", choices=("in", "out"))
    _common(p)
    p.set_defaults(func=cmd_horn_member)

    p = groups.add_parser("lr", help="Littlewood-Richardson coefficients")
    p.add_argument("--lam", required=True)
    p.add_argument("--mu", required=True)
    p.add_argument("--nu")
    _common(p)
    p.set_defaults(func=cmd_lr)

    ten = groups.add_parser("tensor", help="tensor products and saturation")
    ten_sub = ten.add_subparsers(dest="command", metavar="<command>")
    p = ten_sub.add_parser("mult", help="decompose V(lam) x V(mu), or one multiplicity with --nu")
    p.add_argument("--type", required=True)
    p.add_argument("--lam", required=True)
    p.add_argument("--mu", required=True)
    p.add_argument("--nu")
    _common(p)
    p.set_defaults(func=cmd_tensor_mult)
    p = ten_sub.add_parser("satscan", help="eigencone triples without invariants")
    p.add_argument("--type", required=True)
    p.add_argument("--bound", type=int, default=3)
    p.add_argument("--dmax", type=int)
    p.add_argument("--workers", type=int)
    _common(p, ("text", "json", "csv"))
    p.set_defaults(func=cmd_tensor_satscan)
    p = ten_sub.add_parser("rigidity", help="one-dimensional invariant spaces under scaling")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--bound", type=int, default=3)
    p.add_argument("--workers", type=int)
    _common(p)
    p.set_defaults(func=cmd_tensor_rigidity)

    p = groups.add_parser("suite", help="run the acceptance checks")
    p.add_argument("--only", help="comma-separated criterion numbers")
    p.add_argument("--seed", type=int, default=0, help="seed of the sampled criteria")
    p.add_argument("--out")
    p.set_defaults(func=cmd_suite)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    parser = build_parser()
    if not argv:
        parser.print_usage(sys.stderr)
        return USAGE
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return USAGE if exc.code else OK
    if not hasattr(args, "func"):
        parser.print_usage(sys.stderr)
        return USAGE
    if getattr(args, "workers", 0) is not None and getattr(args, "workers", 1) < 1:
        print("bkcone: error: --workers must be positive", file=sys.stderr)
        return USAGE
    try:
        if hasattr(args, "dmax") and args.dmax is None:
            args.dmax = k_g(build_root_system(args.type)) ** 2
        return args.func(args)
    except InvariantViolation as exc:
        print(f"bkcone: invariant violated: {exc}", file=sys.stderr)
        return MISMATCH
    except (UsageError, BkconeError, ValueError) as exc:
        print(f"bkcone: error: {exc}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
