"""Batch command line front end.

Every command reads JSON files in the documented schemas, prints a
deterministic report (identical flags and seed give byte-identical output),
and exits 0 on success, 2 on input problems (unreadable file, schema
violation, unknown element name), or 3 when a checked property fails, so
scripts can tell bad input from a genuine mathematical violation.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from typing import Optional

from .core import (
    AxiomViolationError,
    DEFAULT_MAX_SIZE,
    EffectAlgebra,
    MalformedTableError,
    ValidationReport,
)
from .constructions import powerset_algebra, quadrant_algebra, scale_algebra
from .io import (
    InputFormatError,
    dump_algebra,
    dump_measure,
    load_algebra,
    load_measure,
    save_algebra,
)
from .measures import (
    InvalidMeasureError,
    MeasureFamily,
    pointwise_bound,
    sup_norm,
    uniform_bound,
)
from .properties import run_property_suite
from .rdp import check_rdp
from .symbolic import (
    additivity_violations,
    block,
    bound_table,
    coblock,
    disjoint,
    finite_restriction,
    index_measure,
    intersection_family,
    member,
    orthogonal_pairs_certificate,
    spike_family,
    spike_measure,
)
from .variation import check_variation_theorems, variation

__all__ = ["main"]


def _fmt(v: float) -> str:
    return f"{float(v):.9g}"


def _emit_json(obj) -> int:
    print(json.dumps(obj, indent=2, sort_keys=True))
    return 0


def _violation_lines(report: ValidationReport, names: Optional[list]) -> list[str]:
    lines = []
    for v in report.violations:
        elems = ", ".join(
            str(names[i]) if names and 0 <= i < len(names) else str(i)
            for i in v.elements
        )
        lines.append(f"{v.axiom}: ({elems})")
    return lines


def _best_effort_names(path: str) -> Optional[list]:
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
        names = doc.get("names")
        return names if isinstance(names, list) else None
    except Exception:
        return None


# ---------------------------------------------------------------------------
# subcommands

def _cmd_make(args) -> int:
    what = args.what
    if what == "symbolic":
        if args.n is None:
            raise InputFormatError("make symbolic requires --n")
        algebra = finite_restriction(args.n, max_size=args.max_size)
        out_dir = args.out or "."
        os.makedirs(out_dir, exist_ok=True)
        algebra_path = os.path.join(out_dir, "symbolic_algebra.json")
        save_algebra(algebra, algebra_path)
        print(f"wrote {algebra_path}")
        width = len(str(args.n))
        family = spike_family(algebra)
        for i, measure in enumerate(family.measures, start=1):
            doc = dump_measure(measure, algebra_ref="symbolic_algebra.json")
            path = os.path.join(out_dir, f"spike_{i:0{width}d}.json")
            with open(path, "w", encoding="utf-8") as fh:
                json.dump(doc, fh, indent=2, sort_keys=True)
                fh.write("\n")
            print(f"wrote {path}")
        return 0
    if what == "powerset":
        if args.n is None:
            raise InputFormatError("make powerset requires --n")
        algebra = powerset_algebra(args.n, max_size=args.max_size)
    elif what == "scale":
        if args.k is None:
            raise InputFormatError("make scale requires --k")
        algebra = scale_algebra(args.k, max_size=args.max_size)
    else:  # quadrant / example-4.6
        algebra = quadrant_algebra()
    doc = dump_algebra(algebra)
    if args.out:
        save_algebra(algebra, args.out)
        print(f"wrote {args.out}")
        return 0
    return _emit_json(doc)


def _cmd_validate(args) -> int:
    try:
        algebra = load_algebra(args.algebra, max_size=args.max_size)
    except AxiomViolationError as exc:
        lines = _violation_lines(exc.report, _best_effort_names(args.algebra))
        if args.format == "json":
            print(
                json.dumps(
                    {"valid": False, "violations": lines}, indent=2, sort_keys=True
                )
            )
        else:
            print("invalid")
            for line in lines:
                print(line)
        return 3
    if args.format == "json":
        return _emit_json(
            {"valid": True, "size": algebra.size, "names": list(algebra.names)}
        )
    print(f"valid: {algebra.size} elements, "
          f"zero {algebra.names[algebra.zero]!r}, unit {algebra.names[algebra.unit]!r}")
    return 0


def _cmd_order(args) -> int:
    algebra = load_algebra(args.algebra, max_size=args.max_size)
    names = algebra.names
    atoms = [names[a] for a in algebra.atoms()]
    complements = [(names[a], names[algebra.complement(a)]) for a in range(algebra.size)]
    pairs = [
        (names[a], names[b])
        for a in range(algebra.size)
        for b in range(algebra.size)
        if a != b and algebra.leq(a, b)
    ]
    if args.format == "json":
        return _emit_json(
            {
                "atoms": atoms,
                "complements": {a: c for a, c in complements},
                "strictly_below": [list(p) for p in pairs],
            }
        )
    if args.format == "csv":
        writer = csv.writer(sys.stdout, lineterminator="\n")
        writer.writerow(["relation", "left", "right"])
        for a, c in complements:
            writer.writerow(["complement", a, c])
        for a in atoms:
            writer.writerow(["atom", a, ""])
        for a, b in pairs:
            writer.writerow(["leq", a, b])
        return 0
    print(f"elements: {algebra.size}")
    print(f"atoms: {', '.join(atoms)}")
    print("complements:")
    for a, c in complements:
        print(f"  {a} -> {c}")
    print("order (strictly below, reflexive pairs omitted):")
    for a, b in pairs:
        print(f"  {a} <= {b}")
    return 0


def _cmd_rdp(args) -> int:
    algebra = load_algebra(args.algebra, max_size=args.max_size)
    report = check_rdp(algebra)
    if args.format == "json":
        doc = {
            "holds": report.holds,
            "recheck_passed": report.recheck_passed,
            "witness": list(report.witness_names(algebra)) if report.witness else None,
        }
        _emit_json(doc)
        return 0 if report.holds else 3
    if report.holds:
        print("RDP: holds")
        return 0
    c, a, b = report.witness_names(algebra)
    print("RDP: fails")
    print(f"witness: {c} <= {a} + {b} admits no splitting "
          f"c1 + c2 with c1 <= {a} and c2 <= {b}")
    print(f"re-check: {'confirmed' if report.recheck_passed else 'DISAGREES'}")
    return 3


def _load_pair(args) -> tuple[EffectAlgebra, "Measure"]:
    algebra = load_algebra(args.algebra, max_size=args.max_size)
    measure = load_measure(args.measure, algebra, tol=args.tolerance)
    return algebra, measure


def _cmd_variation(args) -> int:
    algebra, measure = _load_pair(args)
    element = args.element if args.element is not None else algebra.names[algebra.unit]
    e = algebra.index(element)
    result = variation(measure, e, args.mode)
    witness = [algebra.names[p] for p in result.witness.parts]
    if args.format == "json":
        return _emit_json(
            {
                "element": element,
                "mode": args.mode,
                "value": result.value,
                "witness": witness,
            }
        )
    print(f"variation({element}) = {_fmt(result.value)}  [mode: {args.mode}]")
    if args.witness:
        inner = ", ".join(witness) if witness else ""
        print(f"witness: [{inner}]")
    return 0


def _cmd_check(args) -> int:
    algebra = load_algebra(args.algebra, max_size=args.max_size)
    try:
        measure = load_measure(args.measure, algebra, tol=args.tolerance)
    except InvalidMeasureError as exc:
        lines = [
            f"additivity broken at ({algebra.names[a]}, {algebra.names[b]}): "
            f"error {_fmt(err)}"
            for a, b, err in exc.report.violations
        ]
        if args.format == "json":
            print(
                json.dumps(
                    {"valid": False, "violations": lines}, indent=2, sort_keys=True
                )
            )
        else:
            print("invalid")
            for line in lines:
                print(line)
        return 3
    if args.format == "json":
        return _emit_json(
            {
                "valid": True,
                "dim": measure.dim,
                "sup_norm": sup_norm(measure),
                "integer_valued": measure.is_integer_valued(),
            }
        )
    print(
        f"measure: valid (dim {measure.dim}, sup norm {_fmt(sup_norm(measure))})"
    )
    return 0


def _cmd_bounds(args) -> int:
    algebra = load_algebra(args.algebra, max_size=args.max_size)
    measures = [
        load_measure(path, algebra, tol=args.tolerance) for path in args.measures
    ]
    family = MeasureFamily(measures)
    rows = [
        (algebra.names[a], pointwise_bound(family, a)) for a in range(algebra.size)
    ]
    uniform = uniform_bound(family)
    fmt = args.format or "csv"
    if fmt == "json":
        return _emit_json(
            {"pointwise": {name: v for name, v in rows}, "uniform": uniform}
        )
    if fmt == "text":
        width = max(len(name) for name, _ in rows)
        print("pointwise bounds:")
        for name, v in rows:
            print(f"  {name:<{width}}  {_fmt(v)}")
        print(f"uniform bound: {_fmt(uniform)}")
        return 0
    writer = csv.writer(sys.stdout, lineterminator="\n")
    writer.writerow(["element", "pointwise_bound"])
    for name, v in rows:
        writer.writerow([name, _fmt(v)])
    writer.writerow(["uniform", _fmt(uniform)])
    return 0


def _cmd_theorems(args) -> int:
    algebra, measure = _load_pair(args)
    report = check_variation_theorems(
        measure, tol=args.tolerance, max_parts=5
    )
    top = variation(measure, algebra.unit).value
    if args.format == "json":
        doc = {
            "rdp_holds": report.rdp_holds,
            "variation_at_unit": top,
            "variation_additive": report.variation_additive,
            "additivity_counterexample": (
                None
                if report.additivity_counterexample is None
                else {
                    "left": algebra.names[report.additivity_counterexample[0]],
                    "right": algebra.names[report.additivity_counterexample[1]],
                    "variation_of_sum": report.additivity_counterexample[2],
                    "sum_of_variations": report.additivity_counterexample[3],
                }
            ),
            "checks": [
                {"name": c.name, "status": c.status, "detail": c.detail}
                for c in report.checks
            ],
            "all_passed": report.all_passed,
        }
        _emit_json(doc)
        return 0 if report.all_passed else 3
    print(f"variation at unit: {_fmt(top)}")
    print(f"decomposition property: {'holds' if report.rdp_holds else 'fails'}")
    for c in report.checks:
        print(f"{c.name}: {c.status}")
        print(f"  {c.detail}")
    if report.additivity_counterexample is not None:
        a, b, lhs, rhs = report.additivity_counterexample
        print(
            "variation additivity fails at "
            f"({algebra.names[a]}, {algebra.names[b]}): "
            f"{_fmt(lhs)} vs {_fmt(rhs)}"
        )
    return 0 if report.all_passed else 3


def _interlocking_transcript(imax: int, witness_count: int) -> tuple[list[str], bool]:
    lines = [
        f"interlocking prime-power sets: indices 1 <= i < j <= {imax}",
        "claims per pair: the blocks intersect; each block meets the other's "
        "complement; the complements intersect",
    ]
    ok = True
    pair_count = 0
    membership_checks = 0
    for i in range(1, imax + 1):
        for j in range(i + 1, imax + 1):
            pair_count += 1
            answers = [
                disjoint(block(i), block(j)),
                disjoint(block(i), coblock(j)),
                disjoint(block(j), coblock(i)),
                disjoint(coblock(i), coblock(j)),
            ]
            if any(a.disjoint for a in answers):
                ok = False
                lines.append(f"i={i} j={j}: unexpected disjoint pair")
                continue
            w = [a.witness for a in answers]
            families = [
                (block(i), block(j)),
                (block(i), coblock(j)),
                (block(j), coblock(i)),
                (coblock(i), coblock(j)),
            ]
            fam_ok = True
            for s, t in families:
                for x in intersection_family(s, t, witness_count):
                    membership_checks += 2
                    if not (member(s, x) and member(t, x)):
                        fam_ok = False
            ok = ok and fam_ok
            lines.append(
                f"i={i} j={j}: witnesses {w[0]} | {w[1]}, {w[2]} | {w[3]}; "
                f"families {'ok' if fam_ok else 'FAILED'}"
            )
    lines.append(f"pairs checked: {pair_count}")
    lines.append(
        f"family membership checks: {membership_checks} "
        f"({witness_count} members per family, both operands)"
    )
    lines.append(
        "conclusion: beyond complements no pairwise union stays in the carrier"
        if ok
        else "conclusion: FAILED"
    )
    return lines, ok


def _unbounded_measure_transcript(n: int) -> tuple[list[str], bool]:
    lines = ["index measure: B(k) to k, its complement to -k, empty and N to 0"]
    ok = True
    imax = 20
    bad = additivity_violations(index_measure, imax=imax)
    lines.append(
        f"additivity over all defined sums with indices <= {imax}: "
        f"{'ok' if not bad else f'{len(bad)} FAILURES'}"
    )
    ok = ok and not bad
    for bound in sorted({b for b in (10, 100, 1000) if b <= n} | {n}):
        sup = max(abs(index_measure(block(k))) for k in range(1, bound + 1))
        good = sup == float(bound)
        ok = ok and good
        lines.append(
            f"sup of |mu(B(k))| for k <= {bound}: {_fmt(sup)}"
            + ("" if good else "  UNEXPECTED")
        )
    lines.append(
        "verdict: additive but with values growing linearly in the index, "
        "so no uniform bound exists"
        if ok
        else "verdict: FAILED"
    )
    return lines, ok


def _spike_family_transcript(n: int) -> tuple[list[str], bool]:
    lines = [
        "spike family: member i sends B(i) to i, its complement to -i, "
        "everything else to 0"
    ]
    ok = True
    imax = min(n, 20)
    bad_members = 0
    for i in range(1, imax + 1):
        if additivity_violations(lambda e, i=i: spike_measure(i, e), imax=imax):
            bad_members += 1
    lines.append(
        f"additivity of the first {imax} members: "
        f"{'ok' if bad_members == 0 else f'{bad_members} FAILURES'}"
    )
    ok = ok and bad_members == 0
    table = bound_table(n)
    rows_ok = table.rows == [(i, float(i), float(i)) for i in range(1, n + 1)]
    ok = ok and rows_ok
    lines.append(
        f"per-member sup norm and pointwise bound at B(i) both equal i "
        f"for i <= {n}: {'verified' if rows_ok else 'FAILED'}"
    )
    lines.append(f"uniform bound over the first {n} members: {_fmt(table.uniform_bound)}")
    uni_ok = table.uniform_bound == float(n)
    ok = ok and uni_ok
    cert = orthogonal_pairs_certificate(1, 2)
    cert_ok = len(cert.cases) == 10 and cert.orthogonal_count == 2
    ok = ok and cert_ok
    lines.append(
        f"orthogonality certificate: {len(cert.cases)} kind pairs, "
        f"{cert.orthogonal_count} orthogonal, at most "
        f"{cert.max_nonempty_terms} nonempty terms in any orthogonal multiset"
    )
    lines.append(
        "verdict: bounded at every element, unbounded uniformly; orthogonal "
        "sequences are too short to transfer the bound"
        if ok
        else "verdict: FAILED"
    )
    return lines, ok


_EXAMPLE_ALIASES = {
    "lemma-2.2": "interlocking-sets",
    "interlocking-sets": "interlocking-sets",
    "example-2.3": "unbounded-measure",
    "unbounded-measure": "unbounded-measure",
    "example-3.3": "spike-family",
    "spike-family": "spike-family",
}


def _cmd_examples(args) -> int:
    which = _EXAMPLE_ALIASES[args.which]
    if which == "interlocking-sets":
        lines, ok = _interlocking_transcript(args.imax, args.witness_count)
    elif which == "unbounded-measure":
        lines, ok = _unbounded_measure_transcript(args.n)
    else:
        lines, ok = _spike_family_transcript(args.n)
    if args.format == "json":
        print(
            json.dumps(
                {"status": "ok" if ok else "failed", "transcript": lines},
                indent=2,
                sort_keys=True,
            )
        )
    else:
        for line in lines:
            print(line)
    return 0 if ok else 3


def _cmd_properties(args) -> int:
    report = run_property_suite(
        seed=args.seed,
        size_cap=args.sizes,
        tol=args.tolerance,
        inject_fault=args.inject_fault,
    )
    if args.format == "json":
        doc = {
            "seed": report.seed,
            "counts": {
                c.invariant: {"passed": c.passed, "failed": c.failed}
                for c in report.counts
            },
            "total_passed": report.total_passed,
            "total_failed": report.total_failed,
            "failures": [
                {"invariant": f.invariant, "case": f.case, "detail": f.detail}
                for f in report.failures
            ],
            "minimized": (
                None
                if report.minimized is None
                else {
                    "invariant": report.minimized.invariant,
                    "case": report.minimized.case,
                    "detail": report.minimized.detail,
                    "algebra": report.minimized.algebra_doc,
                    "measure": report.minimized.measure_doc,
                }
            ),
        }
        _emit_json(doc)
        return 0 if report.ok else 3
    print(f"seed: {report.seed}")
    for c in report.counts:
        print(f"{c.invariant}: {c.passed} passed, {c.failed} failed")
    print(f"total: {report.total_passed} passed, {report.total_failed} failed")
    if report.ok:
        return 0
    for f in report.failures[:5]:
        print(f"failure: {f.invariant} on {f.case}: {f.detail}")
    if report.minimized is not None:
        print(f"minimized counterexample for {report.minimized.invariant}:")
        if report.minimized.algebra_doc is not None:
            print(json.dumps(report.minimized.algebra_doc, indent=2, sort_keys=True))
        if report.minimized.measure_doc is not None:
            print(json.dumps(report.minimized.measure_doc, indent=2, sort_keys=True))
        if report.minimized.algebra_doc is None:
            print(f"  case: {report.minimized.case}")
    return 3


# ---------------------------------------------------------------------------
# parser

def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=42,
                        help="seed for randomized checks (default 42)")
    common.add_argument("--tolerance", type=float, default=1e-9,
                        help="numeric tolerance (default 1e-9)")
    common.add_argument("--mode", choices=("multiset", "set"),
                        default="multiset",
                        help="decomposition mode for variation")
    common.add_argument("--format", choices=("text", "csv", "json"),
                        default=None, help="output format")
    common.add_argument("--max-size", type=int, default=DEFAULT_MAX_SIZE,
                        dest="max_size",
                        help=f"carrier size guard (default {DEFAULT_MAX_SIZE})")

    parser = argparse.ArgumentParser(
        prog="effana",
        description="finite effect algebras, measures, and their variation",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("make", parents=[common],
                       help="emit a stock algebra as JSON")
    p.add_argument("what", choices=("powerset", "scale", "quadrant",
                                    "example-4.6", "symbolic"))
    p.add_argument("--n", type=int, default=None,
                   help="points (powerset), index bound (symbolic)")
    p.add_argument("--k", type=int, default=None, help="scale denominator")
    p.add_argument("--out", default=None,
                   help="output file (directory for symbolic)")
    p.set_defaults(func=_cmd_make)

    p = sub.add_parser("validate", parents=[common],
                       help="check a table against the axioms")
    p.add_argument("algebra")
    p.set_defaults(func=_cmd_validate)

    p = sub.add_parser("order", parents=[common],
                       help="print the induced order, atoms, complements")
    p.add_argument("algebra")
    p.set_defaults(func=_cmd_order)

    p = sub.add_parser("rdp", parents=[common],
                       help="decide the decomposition property")
    p.add_argument("algebra")
    p.set_defaults(func=_cmd_rdp)

    p = sub.add_parser("variation", parents=[common],
                       help="variation of a measure at an element")
    p.add_argument("algebra")
    p.add_argument("measure")
    p.add_argument("--element", default=None,
                   help="element name (default: the unit)")
    p.add_argument("--witness", action="store_true",
                   help="also print a maximizing decomposition")
    p.set_defaults(func=_cmd_variation)

    p = sub.add_parser("check", parents=[common],
                       help="validate a measure file against an algebra")
    p.add_argument("algebra")
    p.add_argument("measure")
    p.set_defaults(func=_cmd_check)

    p = sub.add_parser("bounds", parents=[common],
                       help="pointwise and uniform bounds of a family (CSV)")
    p.add_argument("algebra")
    p.add_argument("measures", nargs="+")
    p.set_defaults(func=_cmd_bounds)

    p = sub.add_parser("theorems", parents=[common],
                       help="run the variation theorem report")
    p.add_argument("algebra")
    p.add_argument("measure")
    p.set_defaults(func=_cmd_theorems)

    p = sub.add_parser("examples", parents=[common],
                       help="verification transcripts for the stock examples")
    p.add_argument("which", choices=sorted(_EXAMPLE_ALIASES))
    p.add_argument("--imax", type=int, default=20,
                   help="index bound for pair claims (default 20)")
    p.add_argument("--witness-count", type=int, default=50,
                   dest="witness_count",
                   help="members checked per witness family (default 50)")
    p.add_argument("--n", type=int, default=100,
                   help="truncation size (default 100)")
    p.set_defaults(func=_cmd_examples)

    p = sub.add_parser("properties", parents=[common],
                       help="run the seeded invariant suite")
    p.add_argument("--sizes", type=int, default=None,
                   help="cap the constructor parameters")
    p.add_argument("--inject-fault", default=None, dest="inject_fault",
                   help=argparse.SUPPRESS)
    p.set_defaults(func=_cmd_properties)

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InputFormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except MalformedTableError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except KeyError as exc:
        print(f"error: {exc.args[0] if exc.args else exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except AxiomViolationError as exc:
        print(f"axiom violation: {sorted(exc.report.tags())}", file=sys.stderr)
        return 3
    except InvalidMeasureError:
        print("invalid measure", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
