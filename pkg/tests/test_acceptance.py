"""End-to-end acceptance checks, one test per criterion.

Each test prints a single `criterion NN: PASS` line on success and carries its
stated tolerance and time budget; run with -v for one verdict line per
criterion.  Numbered tests keep the report order stable.
"""

import itertools
import time

import numpy as np
import pytest

from conftest import relabeled
from effana import (
    Measure,
    SetFamilySpec,
    additivity_violations,
    atomic_basis,
    block,
    bound_table,
    check_rdp,
    check_variation_theorems,
    coblock,
    derived_law_report,
    disjoint,
    finite_restriction,
    index_measure,
    intersection_family,
    member,
    orthogonal_multisets,
    orthogonal_pairs_certificate,
    powerset_algebra,
    quadrant_algebra,
    random_measure,
    rdp_decompose,
    scale_algebra,
    set_family_algebra,
    spike_family,
    spike_measure,
    sup_norm,
    sym_oplus,
    unboundedness_witness_search,
    validate_axioms,
    variation,
    variation_bruteforce,
    variation_table,
)

TOL = 1e-9
SEEDS_PER_ALGEBRA = 100


def algebra_matrix():
    cases = [(f"powerset({n})", powerset_algebra(n)) for n in (2, 3, 4)]
    cases += [(f"scale({k})", scale_algebra(k)) for k in range(2, 9)]
    cases.append(("quadrant", quadrant_algebra()))
    return cases


@pytest.fixture(scope="module")
def measure_pool():
    """100 seeded measures per matrix algebra, dims alternating 1 and 2."""
    pool = []
    for case, algebra in algebra_matrix():
        measures = [
            random_measure(algebra, dim=seed % 2 + 1, seed=seed)
            for seed in range(SEEDS_PER_ALGEBRA)
        ]
        pool.append((case, algebra, measures))
    return pool


def test_criterion_01_signed_counterexample_measure(quadrant, quadrant_measure):
    start = time.perf_counter()
    unit = quadrant.unit
    res = variation(quadrant_measure, unit)
    assert res.value == 8.0
    assert sorted(quadrant.name(p) for p in res.witness.parts) == ["Y+", "Y-"]
    xp, xm = quadrant.index("X+"), quadrant.index("X-")
    assert variation(quadrant_measure, xp).value == 1.0
    assert variation(quadrant_measure, xm).value == 1.0
    report = check_variation_theorems(quadrant_measure, tol=TOL)
    a, b, lhs, rhs = report.additivity_counterexample
    assert {a, b} == {xp, xm}
    assert lhs == 8.0 and rhs == 2.0
    assert not report.rdp_holds and not report.variation_additive
    elapsed = time.perf_counter() - start
    assert elapsed < 1.0, f"took {elapsed:.2f}s, budget 1s"
    print("criterion 01: PASS")


def test_criterion_02_decomposition_property_landscape(quadrant):
    start = time.perf_counter()
    for k in range(2, 13):
        report = check_rdp(scale_algebra(k))
        assert report.holds and report.witness is None
    for n in range(2, 6):
        report = check_rdp(powerset_algebra(n))
        assert report.holds and report.witness is None
    report = check_rdp(quadrant)
    assert not report.holds
    assert report.witness_names(quadrant) == ("Y+", "X+", "X-")
    assert report.recheck_passed is True
    c, a, b = report.witness
    assert quadrant.leq(c, quadrant.oplus(a, b))
    assert rdp_decompose(quadrant, c, [a, b]) is None
    elapsed = time.perf_counter() - start
    assert elapsed < 5.0, f"took {elapsed:.2f}s, budget 5s"
    print("criterion 02: PASS")


def test_criterion_03_variation_against_bruteforce(measure_pool):
    start = time.perf_counter()
    checked = 0
    for case, algebra, measures in measure_pool:
        assert len(measures) >= 100
        for mu in measures:
            for mode in ("multiset", "set"):
                for e in range(algebra.size):
                    dp = variation(mu, e, mode).value
                    brute = variation_bruteforce(mu, e, mode)
                    assert abs(dp - brute) <= TOL, (case, mode, e, dp, brute)
                    checked += 1
    assert checked >= 100 * 11 * 2
    elapsed = time.perf_counter() - start
    assert elapsed < 60.0, f"took {elapsed:.2f}s, budget 60s"
    print("criterion 03: PASS")


def test_criterion_04_superadditive_and_additive_under_rdp(measure_pool):
    for case, algebra, measures in measure_pool:
        rdp_holds = check_rdp(algebra).holds
        pairs = algebra.defined_pairs()
        pa, pb = pairs[:, 0], pairs[:, 1]
        pc = algebra.sums[pa, pb]
        for mu in measures:
            V, _ = variation_table(mu)
            gaps = V[pc] - V[pa] - V[pb]
            assert gaps.min() >= -TOL, (case, "superadditivity broken")
            if rdp_holds:
                if mu.dim == 1 and mu.is_integer_valued():
                    assert np.abs(gaps).max() == 0.0, (case, "not exactly additive")
                else:
                    assert np.abs(gaps).max() <= TOL, (case, "not additive")
    print("criterion 04: PASS")


def test_criterion_05_quarter_sandwich(measure_pool):
    for case, algebra, measures in measure_pool:
        order = algebra.order
        for mu in measures:
            assert mu.dim in (1, 2)
            V, _ = variation_table(mu)
            for a in range(algebra.size):
                peak = float(mu.norms[order[:, a]].max())
                assert peak <= V[a] + TOL, (case, a)
                assert V[a] <= 4.0 * peak + TOL, (case, a, V[a], peak)
    print("criterion 05: PASS")


def test_criterion_06_partial_sums_within_total_variation(measure_pool):
    slack = 5 * TOL
    for case, algebra, measures in measure_pool:
        multisets = list(orthogonal_multisets(algebra, max_parts=5))
        for mu in measures[:25]:
            V, _ = variation_table(mu)
            top = V[algebra.unit]
            for parts, total in multisets:
                part_sum = float(sum(mu.norms[p] for p in parts))
                assert part_sum <= V[total] + slack, (case, parts)
                assert V[total] <= top + slack, (case, total)
    print("criterion 06: PASS")


def test_criterion_07_interlocking_claims_with_families():
    start = time.perf_counter()
    pair_count = 0
    for i in range(1, 21):
        for j in range(i + 1, 21):
            pair_count += 1
            claims = [
                (block(i), block(j)),
                (block(i), coblock(j)),
                (block(j), coblock(i)),
                (coblock(i), coblock(j)),
            ]
            for s, t in claims:
                ans = disjoint(s, t)
                assert not ans.disjoint, (s.label, t.label)
                assert member(s, ans.witness) and member(t, ans.witness)
                fam = intersection_family(s, t, 50)
                assert len(set(fam)) == 50
                for x in fam:
                    assert member(s, x) and member(t, x), (s.label, t.label, x)
    assert pair_count == 190
    elapsed = time.perf_counter() - start
    assert elapsed < 5.0, f"took {elapsed:.2f}s, budget 5s"
    print("criterion 07: PASS")


def test_criterion_08_additive_but_unbounded_index_measure():
    assert additivity_violations(index_measure, imax=20) == []
    for bound in (10, 100, 1000):
        sup = max(abs(index_measure(block(n))) for n in range(1, bound + 1))
        assert sup == float(bound)
    print("criterion 08: PASS")


def test_criterion_09_spike_family_bounds_and_certificate():
    for i in range(1, 21):
        mu = lambda e, i=i: spike_measure(i, e)
        assert additivity_violations(mu, imax=20) == []
    for n in (10, 100):
        table = bound_table(n)
        assert table.rows == [(i, float(i), float(i)) for i in range(1, n + 1)]
        assert table.uniform_bound == float(n)
    for i, j in [(1, 2), (3, 7)]:
        cert = orthogonal_pairs_certificate(i, j)
        assert cert.max_nonempty_terms == 2
        assert cert.orthogonal_count == 2
        assert len(cert.cases) == 10
    print("criterion 09: PASS")


def test_criterion_10_greedy_witness_walk_on_truncation():
    algebra = finite_restriction(50)
    family = spike_family(algebra)
    blocks = [algebra.index(f"B{k}") for k in range(1, 51)]
    found = unboundedness_witness_search(family, pool=blocks, steps=50)
    assert found is not None
    # every pick the walk returns follows the spike pattern: element B_k,
    # member k, value k, strictly above the number of previous picks
    for count, pick in enumerate(found.picks):
        k = pick.member
        assert pick.element == algebra.index(f"B{k}")
        assert pick.value == float(k)
        assert pick.value > float(count)
    # the walk stops the moment the strict inequality has no orthogonal
    # continuation; verify exhaustively that nothing admissible remained:
    # every block overlaps every other block, so after B1 the running sum
    # has no defined extension inside the pool at all
    assert found.exhausted
    assert [ (p.element, p.member, p.value) for p in found.picks ] == [
        (algebra.index("B1"), 1, 1.0)
    ]
    running = algebra.orthosum(found.elements())
    for b in blocks:
        assert algebra.oplus(running, b) is None
    print("criterion 10: PASS")


def _random_complement_closed_family(rng):
    points = ["1", "2", "3", "4"]
    universe = frozenset(points)
    all_subsets = [
        frozenset(p for i, p in enumerate(points) if mask >> i & 1)
        for mask in range(16)
    ]
    members = {frozenset(), universe}
    for m in all_subsets:
        if m in members or universe - m in members:
            continue
        if rng.random() < 0.5:
            members.add(m)
            members.add(universe - m)
    return SetFamilySpec(points, sorted(members, key=lambda s: (len(s), sorted(s))))


def test_criterion_11_derived_laws_on_matrix_and_mutations():
    for case, algebra in algebra_matrix() + [("restriction(5)", finite_restriction(5))]:
        report = derived_law_report(algebra)
        assert report.all_hold, case

    rng = np.random.default_rng(11)
    accepted = 0
    stock = [algebra for _, algebra in algebra_matrix()]
    while accepted < 50:
        if accepted % 2 == 0:
            base = stock[int(rng.integers(len(stock)))]
            perm = list(rng.permutation(base.size))
            mutated = relabeled(base, perm)
        else:
            spec = _random_complement_closed_family(rng)
            try:
                mutated = set_family_algebra(spec)
            except Exception:
                continue  # mutation failed validation; draw again
        # passing construction means passing validation; cross-check anyway
        assert validate_axioms(mutated.sums, mutated.zero, mutated.unit).valid
        report = derived_law_report(mutated)
        assert report.all_hold
        accepted += 1
    assert accepted == 50
    print("criterion 11: PASS")
