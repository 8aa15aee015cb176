import itertools

import numpy as np
import pytest
from hypothesis import given, strategies as st

from conftest import relabeled
from effana import (
    UNDEFINED,
    AxiomViolationError,
    EffectAlgebra,
    MalformedTableError,
    SizeGuardError,
    Violation,
    derived_law_report,
    orthogonal_multisets,
    powerset_algebra,
    quadrant_algebra,
    scale_algebra,
    validate_axioms,
)


def chain_table(n):
    """Sum table of the chain 0 <= 1 <= ... <= n-1 with i + j = i + j."""
    idx = np.arange(n)
    total = idx[:, None] + idx[None, :]
    return np.where(total <= n - 1, total, UNDEFINED)


# -- structural rejection ----------------------------------------------------

def test_table_shape_must_match_carrier():
    with pytest.raises(MalformedTableError):
        EffectAlgebra(["0", "1"], 0, 1, np.full((3, 3), UNDEFINED))


def test_duplicate_labels_rejected():
    with pytest.raises(MalformedTableError):
        EffectAlgebra(["0", "0", "1"], 0, 2, chain_table(3))


def test_zero_and_unit_must_differ():
    t = chain_table(2)
    with pytest.raises(MalformedTableError):
        EffectAlgebra(["0", "1"], 0, 0, t)
    with pytest.raises(MalformedTableError):
        EffectAlgebra(["0", "1"], 0, 5, t)


def test_entries_out_of_range_rejected():
    t = chain_table(2).copy()
    t[0, 0] = 7
    with pytest.raises(MalformedTableError):
        EffectAlgebra(["0", "1"], 0, 1, t)
    t[0, 0] = -2
    with pytest.raises(MalformedTableError):
        EffectAlgebra(["0", "1"], 0, 1, t)


def test_conflicting_symmetric_entries_rejected():
    t = chain_table(3).copy()
    t[1, 0] = 2  # disagrees with t[0, 1] = 1
    with pytest.raises(MalformedTableError):
        validate_axioms(t, 0, 2)


def test_singleton_carrier_rejected():
    with pytest.raises(MalformedTableError):
        EffectAlgebra(["0"], 0, 0, np.array([[0]]))


def test_size_guard():
    with pytest.raises(SizeGuardError):
        EffectAlgebra([f"e{i}" for i in range(5)], 0, 4, chain_table(5), max_size=4)
    assert EffectAlgebra([f"e{i}" for i in range(5)], 0, 4, chain_table(5)).size == 5


# -- axiom violations come back as reports ------------------------------------

def test_one_sided_sum_flags_commutativity():
    t = chain_table(3).copy()
    t[2, 0] = UNDEFINED  # 0 + 2 stays defined, 2 + 0 does not
    report = validate_axioms(t, 0, 2)
    assert not report.valid
    assert "E1" in report.tags()
    assert Violation("E1", (0, 2)) in report.violations


def test_missing_inner_sum_flags_associativity():
    # q + r and p + (q + r) defined, p + q not: indices p, q, r = 1, 2, 3
    t = np.full((6, 6), UNDEFINED, dtype=np.int64)
    for x in range(6):
        t[0, x] = t[x, 0] = x
    t[2, 3] = t[3, 2] = 4
    t[1, 4] = t[4, 1] = 5
    report = validate_axioms(t, 0, 5)
    assert not report.valid
    assert Violation("E2", (1, 2, 3)) in report.violations


def test_element_without_complement_flags_e3():
    t = np.full((3, 3), UNDEFINED, dtype=np.int64)
    for x in range(3):
        t[0, x] = t[x, 0] = x
    report = validate_axioms(t, 0, 2)
    assert not report.valid
    assert report.tags() == {"E3"}
    assert Violation("E3", (1,)) in report.violations


def test_unit_absorbing_flags_e4():
    t = np.full((3, 3), UNDEFINED, dtype=np.int64)
    for x in range(3):
        t[0, x] = t[x, 0] = x
    t[2, 1] = t[1, 2] = 2  # unit + a = unit
    report = validate_axioms(t, 0, 2)
    assert not report.valid
    assert Violation("E4", (2, 1)) in report.violations


def test_constructor_raises_with_report_attached():
    t = np.full((3, 3), UNDEFINED, dtype=np.int64)
    for x in range(3):
        t[0, x] = t[x, 0] = x
    with pytest.raises(AxiomViolationError) as exc:
        EffectAlgebra(["0", "a", "1"], 0, 2, t)
    assert exc.value.report.counts()["E3"] >= 1


def test_violation_counts_by_axiom():
    t = chain_table(3).copy()
    t[2, 0] = UNDEFINED
    report = validate_axioms(t, 0, 2)
    counts = report.counts()
    assert counts["E1"] == len([v for v in report.violations if v.axiom == "E1"])


# -- from_sums ----------------------------------------------------------------

def test_from_sums_accepts_labels_and_symmetrizes():
    alg = EffectAlgebra.from_sums(
        ["0", "a", "b", "1"],
        "0",
        "1",
        [("0", x, x) for x in ["0", "a", "b", "1"]] + [("a", "b", "1")],
    )
    assert alg.oplus(alg.index("b"), alg.index("a")) == alg.index("1")


def test_from_sums_conflict_is_structural():
    with pytest.raises(MalformedTableError):
        EffectAlgebra.from_sums(
            ["0", "a", "b", "1"],
            "0",
            "1",
            [("0", "0", "0"), ("a", "b", "1"), ("b", "a", "0")],
        )


def test_from_sums_unknown_label():
    with pytest.raises(MalformedTableError):
        EffectAlgebra.from_sums(["0", "1"], "0", "1", [("0", "x", "1")])


# -- derived structure on the stock constructions ------------------------------

def test_powerset_order_is_subset_order(powerset3):
    masks = np.arange(8)
    expected = (masks[:, None] & ~masks[None, :]) == 0
    assert np.array_equal(powerset3.order, expected)


def test_powerset_difference_is_set_difference(powerset3):
    for a in range(8):
        for c in range(8):
            got = powerset3.ominus(a, c)
            if c & ~a:
                assert got is None
            else:
                assert got == (a & ~c)


def test_powerset_complement_is_bitwise(powerset3):
    assert [powerset3.complement(a) for a in range(8)] == [7 ^ a for a in range(8)]


def test_scale_order_and_difference(scale10):
    for a in range(11):
        for b in range(11):
            assert scale10.leq(a, b) == (a <= b)
            got = scale10.ominus(a, b)
            assert got == (a - b if b <= a else None)


def test_atoms(powerset3, scale10, quadrant):
    assert powerset3.atoms() == [1, 2, 4]
    assert scale10.atoms() == [1]
    assert quadrant.atoms() == [1, 2, 3, 4]


def test_defined_pairs_upper_triangular(quadrant):
    pairs = quadrant.defined_pairs()
    assert (pairs[:, 0] <= pairs[:, 1]).all()
    assert all(quadrant.oplus(int(a), int(b)) is not None for a, b in pairs)
    # zero row: 6 pairs; plus the two complementary pairs
    assert len(pairs) == 8


def test_orthosum_empty_is_zero(quadrant):
    assert quadrant.orthosum([]) == quadrant.zero


def test_orthosum_stops_on_undefined(quadrant):
    assert quadrant.orthosum([1, 3]) is None  # X+ and Y+ overlap


@given(st.permutations([1, 2, 4]))
def test_orthosum_is_permutation_invariant(parts):
    alg = powerset_algebra(3)
    assert alg.orthosum(parts) == alg.unit


@given(st.permutations(list(range(5))), st.integers(0, 3))
def test_relabeling_preserves_structure(perm, seed):
    # pushing the table through a carrier permutation keeps everything aligned
    alg = scale_algebra(4)
    other = relabeled(alg, perm)
    for a in range(5):
        for b in range(5):
            assert other.leq(perm[a], perm[b]) == alg.leq(a, b)
            s = alg.oplus(a, b)
            t = other.oplus(perm[a], perm[b])
            assert t == (None if s is None else perm[s])


def test_equality_is_by_presentation(powerset3):
    assert powerset3 == powerset_algebra(3)
    assert powerset3 != powerset_algebra(2)
    assert powerset3 != "not an algebra"


# -- orthogonal multiset enumeration -------------------------------------------

def brute_multisets(algebra, max_parts):
    elems = [e for e in range(algebra.size) if e != algebra.zero]
    out = set()
    for k in range(max_parts + 1):
        for parts in itertools.combinations_with_replacement(elems, k):
            total = algebra.orthosum(parts)
            if total is not None:
                out.add((parts, total))
    return out


@pytest.mark.parametrize("max_parts", [0, 1, 2, 3])
def test_orthogonal_multisets_match_bruteforce(max_parts):
    alg = powerset_algebra(2)
    got = list(orthogonal_multisets(alg, max_parts))
    assert len(got) == len(set(got)), "no multiset repeats"
    assert set(got) == brute_multisets(alg, max_parts)


def test_orthogonal_multisets_on_chain():
    alg = scale_algebra(3)
    got = set(orthogonal_multisets(alg, 3))
    assert got == brute_multisets(alg, 3)
    assert ((1, 1, 1), 3) in got


# -- cancellation and positivity are theorems ----------------------------------

@pytest.mark.parametrize(
    "make",
    [
        lambda: powerset_algebra(3),
        lambda: scale_algebra(7),
        lambda: quadrant_algebra(),
    ],
)
def test_derived_laws_hold(make):
    report = derived_law_report(make())
    assert report.all_hold
    assert report.cancellation_witness is None
    assert report.positivity_witness is None
