"""Seeded invariant suite over the constructor matrix, with shrinking.

One call runs every structural invariant on every stock algebra, a batch of
seeded random measures on each, the DP-versus-enumeration cross check, the
full theorem report, and the fixed arithmetic checks of the symbolic
carrier.  All randomness flows from one master seed, so a run is exactly
reproducible.  On the first failing check the offending algebra and measure
are shrunk by greedy element removal (single elements, complementary pairs,
then two pairs at a time), keeping only removals that leave a valid algebra
and still reproduce the failure, to report a small counterexample.

The `inject_fault` argument forces the named invariant to report failure,
which exists so the failure path, exit code, and shrinker stay testable
against a suite that otherwise passes.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Optional

import numpy as np

from .core import (
    EffectAlgebra,
    UNDEFINED,
    derived_law_report,
    validate_axioms,
)
from .constructions import (
    atomic_basis,
    powerset_algebra,
    quadrant_algebra,
    scale_algebra,
)
from .io import dump_algebra, dump_measure, loads_algebra, loads_measure
from .measures import (
    Measure,
    atomic_bound_check,
    random_measure,
    validate_measure,
)
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
    restricted_index_measure,
    spike_measure,
    symbolic_universe,
)
from .variation import (
    check_variation_theorems,
    variation,
    variation_bruteforce,
)

__all__ = [
    "InvariantCount",
    "Failure",
    "Minimized",
    "SuiteReport",
    "run_property_suite",
]

MEASURES_PER_ALGEBRA = 10


@dataclass
class InvariantCount:
    invariant: str
    passed: int = 0
    failed: int = 0


@dataclass
class Failure:
    invariant: str
    case: str
    detail: str


@dataclass
class Minimized:
    invariant: str
    case: str
    detail: str
    algebra_doc: Optional[dict]
    measure_doc: Optional[dict]


@dataclass
class SuiteReport:
    seed: int
    size_cap: Optional[int]
    counts: list[InvariantCount]
    failures: list[Failure]
    minimized: Optional[Minimized]

    @property
    def total_passed(self) -> int:
        return sum(c.passed for c in self.counts)

    @property
    def total_failed(self) -> int:
        return sum(c.failed for c in self.counts)

    @property
    def ok(self) -> bool:
        return self.total_failed == 0


# ---------------------------------------------------------------------------
# the constructor matrix

def _matrix(size_cap: Optional[int]) -> list[tuple[str, EffectAlgebra]]:
    if size_cap is None:
        powerset_ns = (2, 3, 4)
        scale_ks = tuple(range(2, 9))
        restriction_ns = (5,)
        with_quadrant = True
    else:
        powerset_ns = tuple(n for n in (1, 2, 3, 4) if n <= size_cap)
        scale_ks = tuple(k for k in range(1, 9) if k <= size_cap)
        restriction_ns = tuple(n for n in (1, 5) if n <= size_cap)
        with_quadrant = size_cap >= 6
    cases = []
    for n in powerset_ns:
        cases.append((f"powerset({n})", powerset_algebra(n)))
    for k in scale_ks:
        cases.append((f"scale({k})", scale_algebra(k)))
    if with_quadrant:
        cases.append(("quadrant", quadrant_algebra()))
    for n in restriction_ns:
        cases.append((f"restriction({n})", finite_restriction(n)))
    return cases


# ---------------------------------------------------------------------------
# individual checks; each returns (ok, detail)

def _chk_axioms(algebra: EffectAlgebra, tol: float) -> tuple[bool, str]:
    report = validate_axioms(algebra.sums, algebra.zero, algebra.unit)
    return report.valid, f"violations: {report.tags()}" if not report.valid else ""


def _chk_cancellation(algebra: EffectAlgebra, tol: float) -> tuple[bool, str]:
    report = derived_law_report(algebra)
    if report.cancellation:
        return True, ""
    return False, f"witness {report.cancellation_witness}"


def _chk_positivity(algebra: EffectAlgebra, tol: float) -> tuple[bool, str]:
    report = derived_law_report(algebra)
    if report.positivity:
        return True, ""
    return False, f"witness {report.positivity_witness}"


def _chk_involution(algebra: EffectAlgebra, tol: float) -> tuple[bool, str]:
    comp = algebra.complements
    ok = bool(np.all(comp[comp] == np.arange(algebra.size)))
    return ok, "" if ok else "complement of complement moved an element"


def _chk_order_bounds(algebra: EffectAlgebra, tol: float) -> tuple[bool, str]:
    ok = bool(
        np.all(algebra.order[algebra.zero]) and np.all(algebra.order[:, algebra.unit])
    )
    return ok, "" if ok else "zero or unit not extremal in the order"


def _chk_rdp_recheck(algebra: EffectAlgebra, tol: float) -> tuple[bool, str]:
    report = check_rdp(algebra)
    ok = report.holds == (report.witness is None)
    if report.holds:
        ok = ok and report.recheck_passed is None
    else:
        ok = ok and report.recheck_passed is True
    return ok, "" if ok else "decision and exhaustive re-check disagree"


def _chk_algebra_roundtrip(algebra: EffectAlgebra, tol: float) -> tuple[bool, str]:
    ok = loads_algebra(dump_algebra(algebra)) == algebra
    return ok, "" if ok else "serialization round trip changed the table"


def _chk_atomic_basis(algebra: EffectAlgebra, tol: float) -> tuple[bool, str]:
    basis = atomic_basis(algebra)
    total = algebra.orthosum(basis)
    ok = total == algebra.unit and all(b in algebra.atoms() for b in basis)
    return ok, "" if ok else f"greedy basis {basis} sums to {total}"


_ALGEBRA_CHECKS = [
    ("algebra-axioms", _chk_axioms),
    ("algebra-cancellation", _chk_cancellation),
    ("algebra-positivity", _chk_positivity),
    ("algebra-complement-involution", _chk_involution),
    ("algebra-order-bounds", _chk_order_bounds),
    ("algebra-rdp-recheck", _chk_rdp_recheck),
    ("algebra-roundtrip", _chk_algebra_roundtrip),
    ("algebra-atomic-basis", _chk_atomic_basis),
]


def _chk_measure_valid(measure: Measure, tol: float) -> tuple[bool, str]:
    report = validate_measure(measure.algebra, measure.values, tol=tol)
    return report.valid, "" if report.valid else f"{len(report.violations)} bad sums"


def _chk_oracle(measure: Measure, tol: float, mode: str) -> tuple[bool, str]:
    algebra = measure.algebra
    for e in range(algebra.size):
        got = variation(measure, e, mode).value
        want = variation_bruteforce(measure, e, mode)
        if abs(got - want) > tol:
            return False, (
                f"DP {got!r} vs enumeration {want!r} at {algebra.names[e]}"
            )
    return True, ""


def _chk_oracle_multiset(measure: Measure, tol: float) -> tuple[bool, str]:
    return _chk_oracle(measure, tol, "multiset")


def _chk_oracle_set(measure: Measure, tol: float) -> tuple[bool, str]:
    return _chk_oracle(measure, tol, "set")


def _chk_measure_roundtrip(measure: Measure, tol: float) -> tuple[bool, str]:
    doc = dump_measure(measure)
    doc["algebra"] = dump_algebra(measure.algebra)
    back = loads_measure(doc, tol=tol)
    ok = bool(np.array_equal(back.values, measure.values))
    return ok, "" if ok else "values changed in round trip"


def _chk_atomic_bound(measure: Measure, tol: float) -> tuple[bool, str]:
    algebra = measure.algebra
    if not check_rdp(algebra).holds:
        return True, ""
    basis = atomic_basis(algebra)
    report = atomic_bound_check(measure, basis)
    return report.satisfied, (
        "" if report.satisfied else f"max norm {report.max_norm} over bound {report.bound}"
    )


_MEASURE_CHECKS = [
    ("measure-valid", _chk_measure_valid),
    ("measure-variation-oracle-multiset", _chk_oracle_multiset),
    ("measure-variation-oracle-set", _chk_oracle_set),
    ("measure-roundtrip", _chk_measure_roundtrip),
    ("measure-atomic-bound", _chk_atomic_bound),
]


def _measure_dim(index: int) -> int:
    return index % 2 + 1


def _expected_disjoint(s, t) -> bool:
    if s.kind == "empty" or t.kind == "empty":
        return True
    return {s.kind, t.kind} == {"block", "coblock"} and s.index == t.index


def _symbolic_checks() -> list[tuple[str, str, bool, str]]:
    """Fixed checks of the symbolic carrier: (invariant, case, ok, detail)."""
    out = []
    universe = symbolic_universe(8)
    for a_pos in range(len(universe)):
        for b_pos in range(a_pos, len(universe)):
            s, t = universe[a_pos], universe[b_pos]
            ans = disjoint(s, t)
            ok = ans.disjoint == _expected_disjoint(s, t)
            if ok and not ans.disjoint:
                ok = member(s, ans.witness) and member(t, ans.witness)
            out.append(
                (
                    "symbolic-disjointness",
                    f"pair({s},{t})",
                    ok,
                    "" if ok else f"answer {ans} wrong for ({s},{t})",
                )
            )
    for s, t in [(block(2), block(3)), (block(2), coblock(3)), (coblock(2), coblock(3))]:
        fam = intersection_family(s, t, 25)
        ok = all(member(s, x) and member(t, x) for x in fam)
        out.append(
            (
                "symbolic-family-membership",
                f"family({s},{t})",
                ok,
                "" if ok else "family member failed a membership test",
            )
        )
    mus = [index_measure] + [
        (lambda e, i=i: spike_measure(i, e)) for i in range(1, 9)
    ]
    labels = ["index"] + [f"spike({i})" for i in range(1, 9)]
    for label, mu in zip(labels, mus):
        bad = additivity_violations(mu, imax=8)
        out.append(
            (
                "symbolic-additivity",
                f"measure {label}",
                not bad,
                "" if not bad else f"{len(bad)} failing sums",
            )
        )
    for i, j in [(1, 2), (3, 7)]:
        cert = orthogonal_pairs_certificate(i, j)
        ok = (
            len(cert.cases) == 10
            and cert.orthogonal_count == 2
            and cert.max_nonempty_terms == 2
        )
        out.append(
            (
                "symbolic-certificate",
                f"certificate({i},{j})",
                ok,
                "" if ok else f"{len(cert.cases)} cases, {cert.orthogonal_count} orthogonal",
            )
        )
    algebra = finite_restriction(5)
    mu = restricted_index_measure(algebra)
    top = variation(mu, algebra.unit).value
    ok = top == 10.0
    out.append(
        (
            "symbolic-restriction-variation",
            "restriction(5) index measure",
            ok,
            "" if ok else f"variation at the unit is {top}, expected 10",
        )
    )
    table = bound_table(8)
    ok = table.rows == [(i, float(i), float(i)) for i in range(1, 9)]
    ok = ok and table.uniform_bound == 8.0
    out.append(
        (
            "symbolic-spike-bounds",
            "bound_table(8)",
            ok,
            "" if ok else f"rows {table.rows}",
        )
    )
    return out


# ---------------------------------------------------------------------------
# greedy shrinking

def _induced(algebra: EffectAlgebra, removal: tuple[int, ...]) -> Optional[EffectAlgebra]:
    keep = [i for i in range(algebra.size) if i not in removal]
    pos = {old: new for new, old in enumerate(keep)}
    table = np.full((len(keep), len(keep)), UNDEFINED, dtype=np.int64)
    for new_a, old_a in enumerate(keep):
        for new_b, old_b in enumerate(keep):
            c = int(algebra.sums[old_a, old_b])
            if c != UNDEFINED and c in pos:
                table[new_a, new_b] = pos[c]
    try:
        return EffectAlgebra(
            [algebra.names[i] for i in keep],
            pos[algebra.zero],
            pos[algebra.unit],
            table,
        )
    except Exception:
        return None


def _removal_candidates(algebra: EffectAlgebra) -> list[tuple[int, ...]]:
    fixed = {algebra.zero, algebra.unit}
    singles = [(e,) for e in range(algebra.size) if e not in fixed]
    comp = algebra.complements
    pairs = []
    for e in range(algebra.size):
        c = int(comp[e])
        if e < c and e not in fixed and c not in fixed:
            pairs.append((e, c))
    doubles = [p + q for p, q in combinations(pairs, 2)]
    return singles + pairs + doubles


def _shrink_measure(measure: Optional[Measure], algebra: EffectAlgebra,
                    sub: EffectAlgebra, removal: tuple[int, ...]) -> Optional[Measure]:
    if measure is None:
        return None
    keep = [i for i in range(algebra.size) if i not in removal]
    values = measure.values[keep]
    report = validate_measure(sub, values)
    if not report.valid:
        return None
    return Measure(sub, values, validate=False)


def _recheck(invariant: str, algebra: EffectAlgebra,
             measure: Optional[Measure], tol: float,
             inject_fault: Optional[str]) -> bool:
    """True when the named invariant still fails on the shrunk instance."""
    if invariant == inject_fault:
        return True
    for name, fn in _ALGEBRA_CHECKS:
        if name == invariant:
            return not fn(algebra, tol)[0]
    if measure is None:
        return False
    if invariant.startswith("theorem-"):
        entry = invariant[len("theorem-"):]
        report = check_variation_theorems(measure, tol=tol)
        return any(c.name == entry and c.status == "fail" for c in report.checks)
    for name, fn in _MEASURE_CHECKS:
        if name == invariant:
            return not fn(measure, tol)[0]
    return False


def _minimize(invariant: str, algebra: EffectAlgebra,
              measure: Optional[Measure], tol: float,
              inject_fault: Optional[str]) -> tuple[EffectAlgebra, Optional[Measure]]:
    while True:
        for removal in _removal_candidates(algebra):
            sub = _induced(algebra, removal)
            if sub is None:
                continue
            sub_measure = _shrink_measure(measure, algebra, sub, removal)
            if measure is not None and sub_measure is None:
                continue
            if _recheck(invariant, sub, sub_measure, tol, inject_fault):
                algebra, measure = sub, sub_measure
                break
        else:
            return algebra, measure


# ---------------------------------------------------------------------------
# the suite

def run_property_suite(
    seed: int = 42,
    *,
    size_cap: Optional[int] = None,
    tol: float = 1e-9,
    inject_fault: Optional[str] = None,
    measures_per_algebra: int = MEASURES_PER_ALGEBRA,
) -> SuiteReport:
    """Run the whole invariant matrix deterministically from one seed."""
    counts: dict[str, InvariantCount] = {}
    failures: list[Failure] = []
    minimized: Optional[Minimized] = None

    def record(invariant: str, case: str, ok: bool, detail: str,
               algebra: Optional[EffectAlgebra], measure: Optional[Measure]):
        nonlocal minimized
        if invariant == inject_fault:
            ok, detail = False, "injected fault"
        bucket = counts.setdefault(invariant, InvariantCount(invariant))
        if ok:
            bucket.passed += 1
            return
        bucket.failed += 1
        failures.append(Failure(invariant, case, detail))
        if minimized is None and algebra is not None:
            small, small_mu = _minimize(invariant, algebra, measure, tol, inject_fault)
            minimized = Minimized(
                invariant,
                case,
                detail,
                dump_algebra(small),
                dump_measure(small_mu) if small_mu is not None else None,
            )
        elif minimized is None:
            minimized = Minimized(invariant, case, detail, None, None)

    rng = np.random.default_rng(seed)
    for case, algebra in _matrix(size_cap):
        for invariant, fn in _ALGEBRA_CHECKS:
            ok, detail = fn(algebra, tol)
            record(invariant, case, ok, detail, algebra, None)
        for mi in range(measures_per_algebra):
            sub_seed = int(rng.integers(2 ** 31))
            dim = _measure_dim(mi)
            mu = random_measure(algebra, dim=dim, seed=sub_seed)
            mu_case = f"{case}/measure[{mi}] (dim {dim}, seed {sub_seed})"
            same = random_measure(algebra, dim=dim, seed=sub_seed)
            record(
                "measure-determinism",
                mu_case,
                bool(np.array_equal(mu.values, same.values)),
                "same seed produced different values",
                algebra,
                mu,
            )
            for invariant, fn in _MEASURE_CHECKS:
                ok, detail = fn(mu, tol)
                record(invariant, mu_case, ok, detail, algebra, mu)
            report = check_variation_theorems(mu, tol=tol)
            for chk in report.checks:
                record(
                    f"theorem-{chk.name}",
                    mu_case,
                    chk.status != "fail",
                    chk.detail,
                    algebra,
                    mu,
                )
    for invariant, case, ok, detail in _symbolic_checks():
        record(invariant, case, ok, detail, None, None)

    ordered = [counts[k] for k in sorted(counts)]
    return SuiteReport(seed, size_cap, ordered, failures, minimized)
