"""Vector-valued measures on finite effect algebras.

A measure assigns a vector in R^d to every element so that defined sums map
to vector sums; complex values are handled as d = 2 with the modulus norm.
Everything here works with the Euclidean norm.  Integer-valued measures are
validated exactly; float-valued ones within a tolerance.

Besides validation and norms the module provides the bound of a measure over
an atomic basis (sound on algebras with the decomposition property), the
pointwise and uniform bounds of a family, a greedy search for a witness that
a family is not uniformly bounded, and seeded random measures used by the
property suite and the oracle cross-checks.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, NamedTuple, Optional, Sequence, Union

import numpy as np

from .core import EffectAlgebra, EffectAlgebraError
from .constructions import atomic_basis
from .rdp import check_rdp

DEFAULT_TOLERANCE = 1e-9

__all__ = [
    "DEFAULT_TOLERANCE",
    "MeasureReport",
    "InvalidMeasureError",
    "Measure",
    "MeasureFamily",
    "validate_measure",
    "sup_norm",
    "AtomicBoundReport",
    "atomic_bound_check",
    "pointwise_bound",
    "uniform_bound",
    "Pick",
    "UnboundednessWitness",
    "unboundedness_witness_search",
    "MeasureGenerationError",
    "random_measure",
]


@dataclass
class MeasureReport:
    valid: bool
    violations: list[tuple[int, int, float]]  # (a, b, additivity error)
    dim: int
    integer_valued: bool
    tol: float


class InvalidMeasureError(EffectAlgebraError):
    def __init__(self, report: MeasureReport):
        self.report = report
        a, b, err = report.violations[0]
        super().__init__(
            f"not additive: {len(report.violations)} violating pair(s), "
            f"first at ({a}, {b}) with error {err:.3g}"
        )


def _as_values(algebra: EffectAlgebra, values: np.ndarray) -> np.ndarray:
    arr = np.asarray(values, dtype=float)
    if arr.ndim == 1:
        arr = arr[:, None]
    if arr.ndim != 2 or arr.shape[0] != algebra.size or arr.shape[1] < 1:
        raise ValueError(
            f"values must have shape ({algebra.size}, d), got {arr.shape}"
        )
    return arr


def validate_measure(
    algebra: EffectAlgebra,
    values: np.ndarray,
    *,
    tol: float = DEFAULT_TOLERANCE,
) -> MeasureReport:
    """Check additivity over every defined pair.

    Integer-valued assignments are checked exactly (their float sums are
    exact), so the zero element is forced to exactly zero; otherwise the
    Euclidean error must stay within `tol`.
    """
    arr = _as_values(algebra, values)
    integer_valued = bool(np.all(arr == np.round(arr)))
    effective_tol = 0.0 if integer_valued else tol
    pairs = algebra.defined_pairs()
    violations: list[tuple[int, int, float]] = []
    if len(pairs):
        a = pairs[:, 0]
        b = pairs[:, 1]
        c = algebra.sums[a, b]
        err = np.linalg.norm(arr[c] - arr[a] - arr[b], axis=1)
        for i in np.flatnonzero(err > effective_tol):
            violations.append((int(a[i]), int(b[i]), float(err[i])))
    return MeasureReport(
        valid=not violations,
        violations=violations,
        dim=arr.shape[1],
        integer_valued=integer_valued,
        tol=tol,
    )


class Measure:
    """A validated additive assignment of R^d vectors to elements."""

    __slots__ = ("algebra", "values", "dim", "norms")

    def __init__(
        self,
        algebra: EffectAlgebra,
        values: np.ndarray,
        *,
        tol: float = DEFAULT_TOLERANCE,
        validate: bool = True,
    ):
        arr = _as_values(algebra, values)
        if validate:
            report = validate_measure(algebra, arr, tol=tol)
            if not report.valid:
                raise InvalidMeasureError(report)
        arr = arr.copy()
        arr.setflags(write=False)
        self.algebra = algebra
        self.values = arr
        self.dim = arr.shape[1]
        norms = np.linalg.norm(arr, axis=1)
        norms.setflags(write=False)
        self.norms = norms

    @classmethod
    def from_dict(
        cls,
        algebra: EffectAlgebra,
        mapping: dict[str, Union[float, Sequence[float]]],
        *,
        tol: float = DEFAULT_TOLERANCE,
    ) -> "Measure":
        rows = []
        for name in algebra.names:
            if name not in mapping:
                raise ValueError(f"missing value for element {name!r}")
            v = mapping[name]
            rows.append([float(v)] if np.isscalar(v) else [float(x) for x in v])
        widths = {len(r) for r in rows}
        if len(widths) != 1:
            raise ValueError(f"values mix dimensions: {sorted(widths)}")
        return cls(algebra, np.array(rows, dtype=float), tol=tol)

    def value(self, a: int) -> np.ndarray:
        return self.values[a]

    def norm(self, a: int) -> float:
        return float(self.norms[a])

    def is_integer_valued(self) -> bool:
        return bool(np.all(self.values == np.round(self.values)))

    def __repr__(self) -> str:
        return f"Measure(dim={self.dim}, algebra={self.algebra!r})"


def sup_norm(measure: Measure) -> float:
    """Largest norm the measure attains on the carrier."""
    return float(measure.norms.max())


@dataclass
class AtomicBoundReport:
    bound: float          # sum of basis norms
    max_norm: float       # largest norm over the carrier
    max_element: int
    ratio: float          # max_norm / bound, 0 when both vanish
    satisfied: bool


def atomic_bound_check(
    measure: Measure, basis: Sequence[int]
) -> AtomicBoundReport:
    """Verify that the basis norm sum bounds the measure everywhere.

    Sound when the algebra has the decomposition property and the basis is an
    orthogonal multiset of atoms summing to the unit, because every element
    then decomposes inside the basis; both preconditions are enforced.
    """
    algebra = measure.algebra
    atoms = set(algebra.atoms())
    if not all(b in atoms for b in basis):
        raise ValueError("basis members must be atoms")
    if algebra.orthosum(basis) != algebra.unit:
        raise ValueError("basis must be orthogonal with sum equal to the unit")
    if not check_rdp(algebra).holds:
        raise ValueError(
            "algebra lacks the decomposition property; the atomic bound "
            "theorem does not apply"
        )
    bound = float(sum(measure.norm(b) for b in sorted(basis)))
    max_element = int(np.argmax(measure.norms))
    max_norm = float(measure.norms[max_element])
    ratio = 0.0 if bound == 0.0 and max_norm == 0.0 else (
        float("inf") if bound == 0.0 else max_norm / bound
    )
    return AtomicBoundReport(
        bound=bound,
        max_norm=max_norm,
        max_element=max_element,
        ratio=ratio,
        satisfied=max_norm <= bound + DEFAULT_TOLERANCE,
    )


class MeasureFamily:
    """Measures sharing one algebra and dimension, labelled 1..m."""

    def __init__(self, measures: Sequence[Measure]):
        measures = list(measures)
        if not measures:
            raise ValueError("family must contain at least one measure")
        first = measures[0]
        for mu in measures[1:]:
            if mu.algebra != first.algebra:
                raise ValueError("family members must share one algebra")
            if mu.dim != first.dim:
                raise ValueError("family members must share one dimension")
        self.measures = measures
        self.algebra = first.algebra
        self.dim = first.dim

    def __len__(self) -> int:
        return len(self.measures)

    def member(self, label: int) -> Measure:
        """1-based member access."""
        if not 1 <= label <= len(self.measures):
            raise IndexError(f"member label {label} out of range")
        return self.measures[label - 1]

    def norm(self, label: int, a: int) -> float:
        return self.member(label).norm(a)


def pointwise_bound(family: MeasureFamily, a: int) -> float:
    """sup over members of the norm at a fixed element."""
    return float(max(mu.norm(a) for mu in family.measures))


def uniform_bound(family: MeasureFamily) -> float:
    """sup over members and elements jointly."""
    return float(max(sup_norm(mu) for mu in family.measures))


class Pick(NamedTuple):
    element: int
    member: int  # 1-based member label
    value: float


@dataclass
class UnboundednessWitness:
    picks: list[Pick]
    exhausted: bool   # stopped because no admissible pick remained
    steps: int        # requested number of picks

    def elements(self) -> list[int]:
        return [p.element for p in self.picks]


def unboundedness_witness_search(
    family: MeasureFamily,
    pool: Sequence[int],
    steps: int,
) -> Optional[UnboundednessWitness]:
    """Greedy witness that no uniform bound can hold.

    Maintains an orthogonal list of picks.  With k picks made, the next pick
    is the first pool element orthogonal to all previous picks (the running
    sum stays defined) admitting a member with label strictly above the last
    used label whose norm strictly exceeds k.  So the k-th pick (0-based)
    carries a value above k, and a complete run of `steps` picks certifies
    that the family norms outgrow any bound along one orthogonal sequence.
    Returns None when the very first pick is impossible.
    """
    algebra = family.algebra
    picks: list[Pick] = []
    running = algebra.zero
    last_member = 0
    exhausted = False
    while len(picks) < steps:
        threshold = float(len(picks))
        found = None
        for b in pool:
            total = algebra.oplus(running, b)
            if total is None:
                continue
            for label in range(last_member + 1, len(family) + 1):
                v = family.norm(label, b)
                if v > threshold:
                    found = (b, label, v, total)
                    break
            if found is not None:
                break
        if found is None:
            exhausted = True
            break
        b, label, v, total = found
        picks.append(Pick(element=b, member=label, value=v))
        running = total
        last_member = label
    if not picks:
        return None
    return UnboundednessWitness(picks=picks, exhausted=exhausted, steps=steps)


class MeasureGenerationError(EffectAlgebraError):
    pass


def random_measure(
    algebra: EffectAlgebra,
    dim: int = 1,
    seed: int = 0,
    *,
    low: int = -5,
    high: int = 5,
    max_retries: int = 8,
) -> Measure:
    """Deterministic seeded random measure with small integer values.

    Draws values on a greedy atomic basis, then propagates by additivity:
    whenever two entries of a defined sum triple are known the third is
    forced.  Elements left unconstrained after propagation get fresh draws.
    A propagation conflict (possible when additivity over-constrains the
    free choices) triggers a retry with fresh draws; repeated conflicts
    raise MeasureGenerationError.
    """
    if dim < 1:
        raise ValueError("dim must be at least 1")
    rng = np.random.default_rng(seed)
    n = algebra.size
    pairs = [(int(a), int(b)) for a, b in algebra.defined_pairs()]
    basis = sorted(set(atomic_basis(algebra)))

    def propagate(values: np.ndarray) -> bool:
        """Force third entries of known pairs to a fixpoint; True on conflict."""
        while True:
            changed = False
            for a, b in pairs:
                c = int(algebra.sums[a, b])
                ka = not np.isnan(values[a, 0])
                kb = not np.isnan(values[b, 0])
                kc = not np.isnan(values[c, 0])
                if ka and kb:
                    v = values[a] + values[b]
                    if not kc:
                        values[c] = v
                        changed = True
                    elif np.any(values[c] != v):
                        return True
                elif ka and kc:
                    values[b] = values[c] - values[a]
                    changed = True
                elif kb and kc:
                    values[a] = values[c] - values[b]
                    changed = True
            if not changed:
                return False

    for _ in range(max_retries):
        values = np.full((n, dim), np.nan)
        values[algebra.zero] = 0.0
        for e in basis:
            values[e] = rng.integers(low, high + 1, size=dim)
        conflict = propagate(values)
        while not conflict:
            unknown = np.flatnonzero(np.isnan(values[:, 0]))
            if not len(unknown):
                break
            values[int(unknown[0])] = rng.integers(low, high + 1, size=dim)
            conflict = propagate(values)
        if conflict:
            continue
        report = validate_measure(algebra, values)
        if report.valid:
            return Measure(algebra, values, validate=False)
    raise MeasureGenerationError(
        f"could not generate a consistent measure after {max_retries} attempts"
    )
