import numpy as np
import pytest

from effana import (
    InvalidMeasureError,
    Measure,
    MeasureFamily,
    MeasureGenerationError,
    atomic_basis,
    atomic_bound_check,
    pointwise_bound,
    powerset_algebra,
    quadrant_algebra,
    random_measure,
    scale_algebra,
    sup_norm,
    unboundedness_witness_search,
    uniform_bound,
    validate_measure,
)


def test_valid_quadrant_measure(quadrant, quadrant_measure):
    report = validate_measure(quadrant, quadrant_measure.values)
    assert report.valid
    assert report.integer_valued
    assert report.dim == 1


def test_integer_measures_are_checked_exactly(quadrant):
    # off by one on a complementary pair: rejected with no tolerance slack
    values = np.array([0.0, 1.0, 1.0, 5.0, -3.0, 3.0])
    report = validate_measure(quadrant, values, tol=10.0)
    assert not report.valid
    assert (1, 2, 1.0) in report.violations
    assert (3, 4, 1.0) in report.violations
    assert len(report.violations) == 2


def test_noninteger_measures_get_the_tolerance(quadrant):
    values = np.array([0.0, 0.5, 0.5, 0.25, 0.75, 1.0 + 1e-12])
    assert validate_measure(quadrant, values).valid
    values[5] = 1.0 + 1e-6
    assert not validate_measure(quadrant, values).valid


def test_zero_element_is_forced_to_zero(quadrant):
    values = np.array([1.0, 1.0, 1.0, 5.0, -3.0, 2.0])
    with pytest.raises(InvalidMeasureError):
        Measure(quadrant, values)


def test_vector_valued_measure():
    alg = powerset_algebra(2)
    values = np.array([[0.0, 0.0], [1.0, 0.0], [0.0, -2.0], [1.0, -2.0]])
    mu = Measure(alg, values)
    assert mu.dim == 2
    assert mu.norm(3) == pytest.approx(np.sqrt(5.0))
    assert sup_norm(mu) == pytest.approx(np.sqrt(5.0))


def test_from_dict_roundtrip(quadrant, quadrant_measure):
    mapping = {name: float(quadrant_measure.value(i)[0])
               for i, name in enumerate(quadrant.names)}
    mu = Measure.from_dict(quadrant, mapping)
    assert np.array_equal(mu.values, quadrant_measure.values)


def test_from_dict_rejects_missing_and_ragged(quadrant):
    with pytest.raises(ValueError, match="missing"):
        Measure.from_dict(quadrant, {"empty": 0.0})
    mapping = {name: 0.0 for name in quadrant.names}
    mapping["X+"] = [0.0, 0.0]
    with pytest.raises(ValueError, match="mix"):
        Measure.from_dict(quadrant, mapping)


def test_values_shape_must_match(quadrant):
    with pytest.raises(ValueError):
        Measure(quadrant, np.zeros(5))


# -- atomic bound ------------------------------------------------------------------

def test_atomic_bound_on_powerset():
    alg = powerset_algebra(2)
    mu = Measure(alg, np.array([0.0, 3.0, -1.0, 2.0]))
    report = atomic_bound_check(mu, atomic_basis(alg))
    assert report.bound == pytest.approx(4.0)
    assert report.max_norm == pytest.approx(3.0)
    assert report.max_element == 1
    assert report.ratio == pytest.approx(0.75)
    assert report.satisfied


def test_atomic_bound_needs_decomposition_property(quadrant, quadrant_measure):
    with pytest.raises(ValueError, match="decomposition"):
        atomic_bound_check(quadrant_measure, atomic_basis(quadrant))


def test_atomic_bound_rejects_bad_basis():
    alg = powerset_algebra(2)
    mu = Measure(alg, np.array([0.0, 1.0, 1.0, 2.0]))
    with pytest.raises(ValueError):
        atomic_bound_check(mu, [3])
    with pytest.raises(ValueError):
        atomic_bound_check(mu, [1])


def test_zero_measure_bound_ratio():
    alg = powerset_algebra(2)
    mu = Measure(alg, np.zeros(4))
    report = atomic_bound_check(mu, atomic_basis(alg))
    assert report.ratio == 0.0 and report.satisfied


# -- families and the two bound notions ----------------------------------------------

def spike_like_family(algebra, atoms, scale=1.0):
    out = []
    for i, a in enumerate(atoms, start=1):
        values = np.zeros(algebra.size)
        values[a] = i * scale
        values[algebra.complement(a)] = -i * scale
        values[algebra.unit] = 0.0
        out.append(Measure(algebra, values))
    return MeasureFamily(out)


def test_family_member_labels_are_one_based(quadrant):
    fam = spike_like_family(quadrant, [1, 3])
    assert len(fam) == 2
    assert fam.member(1).norm(1) == 1.0
    with pytest.raises(IndexError):
        fam.member(0)
    with pytest.raises(IndexError):
        fam.member(3)


def test_family_requires_shared_algebra_and_dim(quadrant, quadrant_measure):
    other = Measure(powerset_algebra(2), np.zeros(4))
    with pytest.raises(ValueError):
        MeasureFamily([quadrant_measure, other])
    planar = Measure(quadrant, np.zeros((6, 2)))
    with pytest.raises(ValueError, match="dimension"):
        MeasureFamily([quadrant_measure, planar])
    with pytest.raises(ValueError):
        MeasureFamily([])


def test_pointwise_versus_uniform(quadrant):
    fam = spike_like_family(quadrant, [1, 3])
    # each element sees only its own spike, so pointwise bounds stay small
    assert pointwise_bound(fam, 1) == 1.0
    assert pointwise_bound(fam, 3) == 2.0
    assert uniform_bound(fam) == 2.0


# -- greedy unboundedness search ------------------------------------------------------

def test_witness_search_walks_a_chain():
    alg = scale_algebra(10)
    members = []
    for i in range(1, 6):
        values = np.arange(11, dtype=float) * i
        members.append(Measure(alg, values))
    fam = MeasureFamily(members)
    found = unboundedness_witness_search(fam, pool=[1], steps=3)
    assert found is not None
    assert not found.exhausted
    assert [p.element for p in found.picks] == [1, 1, 1]
    assert [p.member for p in found.picks] == [1, 2, 3]
    assert [p.value for p in found.picks] == [1.0, 2.0, 3.0]
    # each pick clears the number of picks already made
    for k, p in enumerate(found.picks):
        assert p.value > k


def test_witness_search_stalls_on_orthogonality(quadrant):
    fam = spike_like_family(quadrant, [1, 3], scale=5.0)
    # X+ and Y+ overlap, so after picking one the other is inadmissible
    found = unboundedness_witness_search(fam, pool=[1, 3], steps=4)
    assert found is not None
    assert found.exhausted
    assert len(found.picks) == 1
    assert found.picks[0].element == 1


def test_witness_search_none_when_first_pick_impossible(quadrant):
    fam = spike_like_family(quadrant, [1])
    # the only pool element is the unit, where every member vanishes
    found = unboundedness_witness_search(fam, pool=[5], steps=2)
    assert found is None


def test_witness_search_needs_strictly_increasing_members():
    alg = scale_algebra(10)
    big = Measure(alg, np.arange(11, dtype=float) * 9)
    tiny = Measure(alg, np.zeros(11))
    fam = MeasureFamily([big, tiny])
    found = unboundedness_witness_search(fam, pool=[1], steps=3)
    # member 1 can serve once; afterwards only member 2 remains and is too small
    assert found is not None
    assert found.exhausted
    assert [p.member for p in found.picks] == [1]


# -- seeded generation -----------------------------------------------------------------

@pytest.mark.parametrize("make", [
    lambda: powerset_algebra(3),
    lambda: scale_algebra(6),
    lambda: quadrant_algebra(),
])
@pytest.mark.parametrize("dim", [1, 2])
def test_random_measures_are_valid(make, dim):
    alg = make()
    for seed in range(5):
        mu = random_measure(alg, dim=dim, seed=seed)
        assert mu.dim == dim
        assert validate_measure(alg, mu.values).valid
        assert mu.is_integer_valued()


def test_random_measure_is_deterministic(quadrant):
    a = random_measure(quadrant, dim=2, seed=123)
    b = random_measure(quadrant, dim=2, seed=123)
    c = random_measure(quadrant, dim=2, seed=124)
    assert np.array_equal(a.values, b.values)
    assert not np.array_equal(a.values, c.values)


def test_random_measure_rejects_bad_dim(quadrant):
    with pytest.raises(ValueError):
        random_measure(quadrant, dim=0)
