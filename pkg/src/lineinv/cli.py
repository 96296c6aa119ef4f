"""Command-line front end: ``lineinv <subcommand> -w r1,r2,... [options]``."""
from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from .errors import LineInvError
from .polytopes import count_lattice, enumerate_lattice, tableau_from_diagonal
from .presentation import (
    GeneratorSet,
    Presentation,
    Relation,
    generators,
    hilbert_checks,
    presentation,
    relation_holds,
)
from .presentation import ci_report
from .tableau_core import DEFAULT_LG_CONSTANT, LinearCombination, WeightVector, format_tableau
from .toric_normal_form import DMatrix, normal_form, normalize

MAX_POINTS = 16
TRIVIAL = "empty moduli space; trivial ring"


def _weights(text: str) -> WeightVector:
    try:
        vals = tuple(int(x) for x in text.replace(" ", "").split(",") if x)
    except ValueError:
        raise argparse.ArgumentTypeError(f"weights must be comma-separated integers, got {text!r}")
    if not vals or any(v <= 0 for v in vals):
        raise argparse.ArgumentTypeError("weights must be positive integers")
    if len(vals) > MAX_POINTS:
        raise argparse.ArgumentTypeError(f"at most {MAX_POINTS} points are supported (got {len(vals)})")
    if len(vals) < 2:
        raise argparse.ArgumentTypeError("at least 2 points are needed")
    return WeightVector(vals)


def _column(text: str) -> tuple[tuple[int, ...], int]:
    """``d1,d2,...@deg`` (degree defaults to 1)."""
    vec, _, deg = text.partition("@")
    try:
        return tuple(int(x) for x in vec.split(",")), int(deg or 1)
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad column {text!r}; expected e.g. 1,2,1@2")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-w", "--weights", type=_weights, required=True, help="comma-separated positive weights")
    common.add_argument("-N", "--degree", type=int, default=None, help="degree (default 1)")
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--trials", type=int, default=20)
    common.add_argument("--lg-constant", type=int, default=DEFAULT_LG_CONSTANT, help=argparse.SUPPRESS)

    parser = argparse.ArgumentParser(prog="lineinv", description="Invariants of weighted points on the projective line.")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("generators", parents=[common], help="semistandard tableaux of degree N (generators for N=1)")
    sub.add_parser("relations", parents=[common], help="generating relations among the degree-1 generators")
    nf = sub.add_parser("normal-form", parents=[common], help="normal forms of D-matrices")
    nf.add_argument("--column", type=_column, action="append", default=[], help="column d1,...,d_{n-1}@deg (repeatable)")
    sub.add_parser("count", parents=[common], help="number of lattice points of D(N r)")
    sub.add_parser("verify", parents=[common], help="check every relation with the numeric oracle")
    sub.add_parser("ci-check", parents=[common], help="complete-intersection report for equal weights")
    return parser


# ---------------------------------------------------------------- formatting


def _mono_text(mono: Sequence[int], labels: list[str]) -> str:
    if not mono:
        return "1"
    parts = []
    i = 0
    while i < len(mono):
        j = i
        while j < len(mono) and mono[j] == mono[i]:
            j += 1
        lab = labels[mono[i]]
        parts.append(lab if j - i == 1 else f"{lab}^{j - i}")
        i = j
    sep = "" if all(len(labels[m]) == 1 for m in mono) else "*"
    return sep.join(parts)


def poly_text(poly: LinearCombination, labels: list[str]) -> str:
    items = sorted(poly.items(), key=lambda kv: kv[0])
    if not items:
        return "0"
    out = []
    for k, (mono, c) in enumerate(items):
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        body = _mono_text(mono, labels)
        term = body if mag == 1 else f"{mag}{body}"
        out.append(("-" + term if sign == "-" else term) if k == 0 else f" {sign} {term}")
    return "".join(out)


def relation_text(rel: Relation, labels: list[str]) -> str:
    lhs = _mono_text(rel.lhs, labels)
    if rel.lhs_coeff != 1:
        lhs = f"{rel.lhs_coeff}{lhs}"
    return f"{lhs} = {poly_text(rel.rhs, labels)}"


def _generator_records(gens: GeneratorSet) -> list[dict]:
    labels = gens.labels()
    out = []
    for i, t in enumerate(gens.G1):
        out.append({"id": i, "label": labels[i], "tableau": t.to_json(), "diagonal": list(gens.D1[i])})
    return out


def _emit(args, text_lines: list[str], payload) -> None:
    if args.format == "json":
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print("\n".join(text_lines))


# ---------------------------------------------------------------- commands


def cmd_generators(args) -> int:
    r = args.weights
    N = args.degree or 1
    pts = enumerate_lattice(r, N, args.lg_constant)
    if N == 1 and r.total % 2 and count_lattice(r.scaled(2), 1):
        R = r.scaled(2)
        note = f"total weight is odd; degree-1 generators of the doubled weight ({R})"
        pts = enumerate_lattice(R, 1, args.lg_constant)
    elif not pts and N == 1:
        note = TRIVIAL
    else:
        note = ""
    if N == 1 and pts:
        gens = generators(pts[0].weights)
        recs = _generator_records(gens)
        lines = [f"{g['label']}  {format_tableau(t)}" for g, t in zip(recs, gens.G1)]
    else:
        tabs = [tableau_from_diagonal(d) for d in pts]
        recs = [{"id": i, "tableau": t.to_json(), "diagonal": [int(x) for x in d.d]} for i, (t, d) in enumerate(zip(tabs, pts))]
        lines = [format_tableau(t) for t in tabs]
    payload = {"weights": list(r.r), "degree": N, "note": note, "tableaux": recs}
    _emit(args, ([note] if note else []) + lines, payload)
    return 0


def _presentation_payload(p: Presentation) -> dict:
    out = {"weights": list(p.weights.r), "note": p.note}
    if p.trivial:
        out.update(presented_weights=None, generators=[], relations=[])
        return out
    out.update(
        presented_weights=list(p.ring_weights.r),
        generators=_generator_records(p.generators),
        relations=[rel.to_json() for rel in p.relations],
    )
    return out


def cmd_relations(args) -> int:
    p = presentation(args.weights, args.lg_constant)
    lines = [p.note] if p.note else []
    if not p.trivial:
        labels = p.generators.labels()
        lines.append(f"{len(p.generators.G1)} generators, {len(p.relations)} relations")
        lines += [f"{rel.kind}  {relation_text(rel, labels)}" for rel in p.relations]
    _emit(args, lines, _presentation_payload(p))
    return 0


def cmd_count(args) -> int:
    N = 1 if args.degree is None else args.degree
    c = count_lattice(args.weights, N)
    _emit(args, [str(c)], {"weights": list(args.weights.r), "degree": N, "count": c})
    return 0


def cmd_normal_form(args) -> int:
    r = args.weights
    if args.column:
        A = DMatrix.from_vectors(args.column, r)
        B, trace = normalize(A)
        lines = [f"input   {A}", f"normal  {B}", f"steps   {' '.join(trace.kinds()) or '(none)'}"]
        payload = {
            "input": A.to_json(),
            "normal_form": B.to_json(),
            "trace": [{"kind": s.kind, "indices": list(s.indices)} for s in trace.steps],
        }
        _emit(args, lines, payload)
        return 0
    N = args.degree or 2
    rows = []
    for d in enumerate_lattice(r, N, args.lg_constant):
        rows.append((d, normal_form(d)))
    lines = [f"{d}  ->  {B}" for d, B in rows]
    payload = {"weights": list(r.r), "degree": N, "normal_forms": [B.to_json() for _, B in rows]}
    _emit(args, lines, payload)
    return 0


def cmd_verify(args) -> int:
    p = presentation(args.weights, args.lg_constant)
    if p.trivial:
        _emit(args, [TRIVIAL], {"weights": list(args.weights.r), "note": TRIVIAL, "relations": [], "ok": True})
        return 0
    gens = p.generators
    labels = gens.labels()
    results = [relation_holds(rel, gens, args.trials, args.seed) for rel in p.relations]
    polys = [rel.kempe_form if rel.kempe_form is not None else rel.polynomial() for rel in p.relations]
    checks = hilbert_checks(polys, len(gens.G1), p.ring_weights)
    lines = [p.note] if p.note else []
    for rel, ok in zip(p.relations, results):
        lines.append(f"{'ok  ' if ok else 'FAIL'}  {relation_text(rel, labels)}")
    lines.append(f"{sum(results)}/{len(results)} relations pass ({args.trials} trials, seed {args.seed})")
    for c in checks:
        state = "complete" if c.complete else "INCOMPLETE"
        lines.append(
            f"degree {c.degree}: free {c.free}, ring {c.hilbert}, relations needed {c.relations_needed}, "
            f"ideal rank {c.ideal_rank} ({state})"
        )
    ok = all(results) and all(c.complete for c in checks)
    payload = {
        "weights": list(args.weights.r),
        "note": p.note,
        "trials": args.trials,
        "seed": args.seed,
        "relations": [{"relation": rel.to_json(), "ok": res} for rel, res in zip(p.relations, results)],
        "hilbert": [c.to_json() for c in checks],
        "ok": ok,
    }
    _emit(args, lines, payload)
    return 0 if ok else 1


def ci_text(rep: dict) -> list[str]:
    w = ",".join(map(str, rep["weights"]))
    if not rep["covered"]:
        return [f"weights {w}: {rep['verdict']}"]
    n = rep["n"]
    lines = [
        f"weights {w} (n={n}, {rep['family']})",
        f"generators {rep['count_name']} = {rep['generators']}, dim {rep['dim']}, codim {rep['codim']}",
    ]
    if "relations" in rep:
        lines.append(f"{rep['generators']} generators, {rep['relations']} relations")
    if rep["inequality_lhs"] is not None:
        rhs_name = f"({n}-3)!" if rep["family"] == "even" else f"2^{n - 3}*({n}-3)!"
        rel = ">" if rep["inequality_violated"] else "<="
        lines.append(f"2^codim = {rep['inequality_lhs']} {rel} {rep['inequality_rhs']} = {rhs_name}")
    lines.append(rep["verdict"])
    return lines


def cmd_ci(args) -> int:
    rep = ci_report(args.weights)
    _emit(args, ci_text(rep), rep)
    return 0


COMMANDS = {
    "generators": cmd_generators,
    "relations": cmd_relations,
    "normal-form": cmd_normal_form,
    "count": cmd_count,
    "verify": cmd_verify,
    "ci-check": cmd_ci,
}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.trials < 1:
        parser.error("--trials must be positive")
    if args.degree is not None and args.degree < 0:
        parser.error("--degree must be nonnegative")
    try:
        return COMMANDS[args.command](args)
    except LineInvError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
