"""Finite effect algebras stored as dense partial-sum tables.

An effect algebra is a carrier with two distinguished elements 0 and 1 and a
partial binary sum that is commutative and associative wherever defined, gives
every element exactly one complement summing to 1, and admits a sum with the
unit only for 0.  From the sum one derives a partial order (a <= b iff some r
has a + r = b), a partial difference, and the complement map; on a finite
carrier these are all computable by table scans, which is what this module
does.

Elements are integer indices into a list of labels.  The sum table is a dense
(n, n) integer matrix with -1 marking undefined entries.  Validation checks
the four axioms one by one and reports every offending tuple, so broken tables
can be inspected rather than merely rejected.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Optional, Sequence, Union

import numpy as np

UNDEFINED = -1
DEFAULT_MAX_SIZE = 512

__all__ = [
    "UNDEFINED",
    "DEFAULT_MAX_SIZE",
    "EffectAlgebraError",
    "MalformedTableError",
    "SizeGuardError",
    "AxiomViolationError",
    "Violation",
    "ValidationReport",
    "validate_axioms",
    "EffectAlgebra",
    "orthogonal_multisets",
    "DerivedLawReport",
    "derived_law_report",
]


class EffectAlgebraError(Exception):
    """Base class for every error raised by this package."""


class MalformedTableError(EffectAlgebraError):
    """Structurally broken input: bad shape, indices, labels, or an
    asymmetric conflict in the sum table.  Distinct from an axiom violation,
    which is a well-formed table that fails one of the four laws."""


class SizeGuardError(MalformedTableError):
    """Carrier larger than the configured size guard."""


@dataclass(frozen=True)
class Violation:
    """One axiom failure: the axiom tag (E1..E4) and the offending indices."""

    axiom: str
    elements: tuple[int, ...]


@dataclass
class ValidationReport:
    valid: bool
    violations: list[Violation]

    def counts(self) -> dict[str, int]:
        out: dict[str, int] = {}
        for v in self.violations:
            out[v.axiom] = out.get(v.axiom, 0) + 1
        return out

    def tags(self) -> set[str]:
        return {v.axiom for v in self.violations}


class AxiomViolationError(EffectAlgebraError):
    """Raised when constructing an algebra from a table that fails the axioms.

    Carries the full ValidationReport on the `report` attribute.
    """

    def __init__(self, report: ValidationReport):
        self.report = report
        head = ", ".join(
            f"{v.axiom} at {v.elements}" for v in report.violations[:4]
        )
        more = len(report.violations) - 4
        if more > 0:
            head += f" (and {more} more)"
        super().__init__(f"table fails effect algebra axioms: {head}")


ElementRef = Union[int, str]


def _check_structure(
    names: Sequence[str],
    zero: int,
    unit: int,
    table: np.ndarray,
    max_size: int,
) -> None:
    n = len(names)
    if n < 2:
        raise MalformedTableError("carrier must have at least two elements")
    if n > max_size:
        raise SizeGuardError(f"carrier size {n} exceeds size guard {max_size}")
    if len(set(names)) != n:
        raise MalformedTableError("duplicate element labels")
    if not all(isinstance(s, str) and s for s in names):
        raise MalformedTableError("labels must be non-empty strings")
    if not (0 <= zero < n and 0 <= unit < n):
        raise MalformedTableError("zero/unit index out of range")
    if zero == unit:
        raise MalformedTableError("zero and unit must be distinct")
    if table.shape != (n, n):
        raise MalformedTableError(
            f"table shape {table.shape} does not match carrier size {n}"
        )
    if table.min(initial=UNDEFINED) < UNDEFINED or table.max(initial=UNDEFINED) >= n:
        raise MalformedTableError("table entry out of range")
    defined = table >= 0
    conflict = defined & defined.T & (table != table.T)
    if conflict.any():
        a, b = map(int, np.argwhere(conflict)[0])
        raise MalformedTableError(
            f"sum({a},{b}) and sum({b},{a}) both defined but unequal"
        )


def validate_axioms(
    table: np.ndarray,
    zero: int,
    unit: int,
    *,
    max_size: int = DEFAULT_MAX_SIZE,
) -> ValidationReport:
    """Check the four effect algebra axioms on a raw sum table.

    E1  sum defined one way must be defined the other way (equal values are a
        structural requirement checked before this function reports anything).
    E2  whenever q+r and p+(q+r) are defined, p+q and (p+q)+r are defined and
        (p+q)+r = p+(q+r).
    E3  every element has exactly one complement summing to the unit.
    E4  the unit sums only with zero.

    Structural problems raise MalformedTableError; axiom failures are
    collected into the returned report.
    """
    table = np.asarray(table, dtype=np.int64)
    n = table.shape[0]
    _check_structure([f"e{i}" for i in range(n)], zero, unit, table, max_size)

    violations: list[Violation] = []
    defined = table >= 0

    asym = defined & ~defined.T
    for a, b in np.argwhere(asym):
        violations.append(Violation("E1", (int(a), int(b))))

    # Associativity scan over defined (q, r) pairs; vectorized over p.  Cost is
    # O(D * n) for D defined pairs, which handles both dense desk-scale tables
    # and large sparse ones.
    for q, r in np.argwhere(defined):
        c = table[q, r]
        pc = table[:, c]          # p + (q + r)
        trig = pc >= 0
        if not trig.any():
            continue
        pq = table[:, q]
        bad_undef = trig & (pq < 0)
        for p in np.flatnonzero(bad_undef):
            violations.append(Violation("E2", (int(p), int(q), int(r))))
        ok = trig & (pq >= 0)
        ps = np.flatnonzero(ok)
        if ps.size:
            res = table[pq[ps], r]
            bad = (res < 0) | (res != pc[ps])
            for p in ps[bad]:
                violations.append(Violation("E2", (int(p), int(q), int(r))))

    comp_counts = (table == unit).sum(axis=1)
    for a in np.flatnonzero(comp_counts != 1):
        violations.append(Violation("E3", (int(a),)))

    for p in np.flatnonzero(table[unit] >= 0):
        if p != zero:
            violations.append(Violation("E4", (int(unit), int(p))))
    for p in np.flatnonzero(table[:, unit] >= 0):
        if p != zero and not (defined[unit, p] and p != zero):
            violations.append(Violation("E4", (int(p), int(unit))))

    return ValidationReport(valid=not violations, violations=violations)


class EffectAlgebra:
    """A validated finite effect algebra.

    Construction validates the axioms and precomputes the induced order, the
    partial difference, complements, and atoms.  All elements are indices;
    `index` and `name` translate to and from labels.
    """

    __slots__ = (
        "names",
        "zero",
        "unit",
        "size",
        "sums",
        "order",
        "diffs",
        "complements",
        "_atoms",
        "_index",
    )

    def __init__(
        self,
        names: Sequence[str],
        zero: int,
        unit: int,
        table: np.ndarray,
        *,
        max_size: int = DEFAULT_MAX_SIZE,
    ):
        names = list(names)
        table = np.array(table, dtype=np.int64)
        _check_structure(names, zero, unit, table, max_size)
        report = validate_axioms(table, zero, unit, max_size=max_size)
        if not report.valid:
            raise AxiomViolationError(report)

        n = len(names)
        self.names = names
        self.zero = int(zero)
        self.unit = int(unit)
        self.size = n
        table.setflags(write=False)
        self.sums = table
        self._index = {s: i for i, s in enumerate(names)}

        defined = table >= 0
        order = np.zeros((n, n), dtype=bool)
        for a in range(n):
            order[a, table[a, defined[a]]] = True
        diffs = np.full((n, n), UNDEFINED, dtype=np.int64)
        rows, cols = np.nonzero(defined)
        diffs[table[rows, cols], cols] = rows
        order.setflags(write=False)
        diffs.setflags(write=False)
        self.order = order
        self.diffs = diffs
        self.complements = diffs[unit].copy()
        self.complements.setflags(write=False)

        self._sanity_check_order()

        below = order.sum(axis=0)
        self._atoms = [
            a for a in range(n) if a != self.zero and below[a] == 2
        ]

    # -- construction helpers -------------------------------------------------

    @classmethod
    def from_sums(
        cls,
        names: Sequence[str],
        zero: ElementRef,
        unit: ElementRef,
        sums: Iterable[tuple[ElementRef, ElementRef, ElementRef]],
        *,
        max_size: int = DEFAULT_MAX_SIZE,
    ) -> "EffectAlgebra":
        """Build from a list of defined sums (a, b, c) meaning a + b = c.

        Entries may use labels or indices and each unordered pair may appear
        in either order; the table is symmetrized.  Conflicting re-listings
        are a structural error.
        """
        names = list(names)
        idx = {s: i for i, s in enumerate(names)}
        if len(idx) != len(names):
            raise MalformedTableError("duplicate element labels")

        def resolve(x: ElementRef) -> int:
            if isinstance(x, str):
                if x not in idx:
                    raise MalformedTableError(f"unknown element label {x!r}")
                return idx[x]
            return int(x)

        n = len(names)
        table = np.full((n, n), UNDEFINED, dtype=np.int64)
        for a, b, c in sums:
            ia, ib, ic = resolve(a), resolve(b), resolve(c)
            if not (0 <= ia < n and 0 <= ib < n and 0 <= ic < n):
                raise MalformedTableError(f"sum entry out of range: {(a, b, c)}")
            for x, y in ((ia, ib), (ib, ia)):
                if table[x, y] != UNDEFINED and table[x, y] != ic:
                    raise MalformedTableError(
                        f"conflicting sums for pair ({names[ia]}, {names[ib]})"
                    )
                table[x, y] = ic
        return cls(names, resolve(zero), resolve(unit), table, max_size=max_size)

    def _sanity_check_order(self) -> None:
        # The induced relation is a partial order with bottom zero and top
        # unit on any table passing the axioms; a failure here is a bug.
        o = self.order
        if not o.diagonal().all():
            raise EffectAlgebraError("internal: order not reflexive")
        if (o & o.T & ~np.eye(self.size, dtype=bool)).any():
            raise EffectAlgebraError("internal: order not antisymmetric")
        closure = (o.astype(np.uint8) @ o.astype(np.uint8)) > 0
        if (closure & ~o).any():
            raise EffectAlgebraError("internal: order not transitive")
        if not o[self.zero].all():
            raise EffectAlgebraError("internal: zero is not the bottom")
        if not o[:, self.unit].all():
            raise EffectAlgebraError("internal: unit is not the top")

    # -- basic queries ---------------------------------------------------------

    def index(self, name: str) -> int:
        if name not in self._index:
            raise KeyError(f"unknown element name {name!r}")
        return self._index[name]

    def name(self, a: int) -> str:
        return self.names[a]

    def oplus(self, a: int, b: int) -> Optional[int]:
        """The sum a + b, or None when undefined."""
        v = self.sums[a, b]
        return int(v) if v >= 0 else None

    def ominus(self, a: int, c: int) -> Optional[int]:
        """The unique b with b + c = a, or None when c is not below a."""
        v = self.diffs[a, c]
        return int(v) if v >= 0 else None

    def complement(self, a: int) -> int:
        """The unique element summing with a to the unit."""
        return int(self.complements[a])

    def leq(self, a: int, b: int) -> bool:
        return bool(self.order[a, b])

    def orthosum(self, parts: Iterable[int]) -> Optional[int]:
        """Fold the sum over a multiset of parts, left to right.

        Defined sums are permutation invariant, so the input order does not
        matter; returns None as soon as a partial sum is undefined.  The empty
        multiset sums to zero.
        """
        acc = self.zero
        for p in parts:
            v = self.sums[acc, p]
            if v < 0:
                return None
            acc = int(v)
        return acc

    def atoms(self) -> list[int]:
        """Minimal nonzero elements."""
        return list(self._atoms)

    def defined_pairs(self) -> np.ndarray:
        """All (a, b) with a <= b (by index) and a + b defined."""
        defined = self.sums >= 0
        mask = np.triu(defined)
        return np.argwhere(mask)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, EffectAlgebra):
            return NotImplemented
        return (
            self.names == other.names
            and self.zero == other.zero
            and self.unit == other.unit
            and np.array_equal(self.sums, other.sums)
        )

    __hash__ = object.__hash__

    def __repr__(self) -> str:
        return (
            f"EffectAlgebra(size={self.size}, zero={self.names[self.zero]!r}, "
            f"unit={self.names[self.unit]!r})"
        )


def orthogonal_multisets(
    algebra: EffectAlgebra, max_parts: int
) -> Iterator[tuple[tuple[int, ...], int]]:
    """Yield (parts, total) for every orthogonal multiset of nonzero elements
    with at most max_parts parts, each exactly once.

    Parts come out in nondecreasing index order; the empty multiset (total
    zero) is included.  A multiset is orthogonal when its folded sum is
    defined, which on these tables also forces every sub-multiset to be.
    """
    sums = algebra.sums
    zero = algebra.zero
    n = algebra.size
    parts: list[int] = []

    def rec(start: int, total: int) -> Iterator[tuple[tuple[int, ...], int]]:
        yield tuple(parts), total
        if len(parts) == max_parts:
            return
        for d in range(start, n):
            if d == zero:
                continue
            t2 = sums[total, d]
            if t2 >= 0:
                parts.append(d)
                yield from rec(d, int(t2))
                parts.pop()

    yield from rec(0, zero)


@dataclass
class DerivedLawReport:
    """Cancellation and positivity, which any table passing the axioms must
    satisfy as theorems rather than extra assumptions."""

    cancellation: bool
    positivity: bool
    cancellation_witness: Optional[tuple[int, int, int]]
    positivity_witness: Optional[tuple[int, int]]

    @property
    def all_hold(self) -> bool:
        return self.cancellation and self.positivity


def derived_law_report(algebra: EffectAlgebra) -> DerivedLawReport:
    """Check cancellation (a+b = a+c implies b = c) and positivity
    (a+b = 0 implies a = b = 0) by exhaustive scan."""
    S = algebra.sums
    n = algebra.size
    canc_witness = None
    for a in range(n):
        row = S[a]
        cols = np.flatnonzero(row >= 0)
        vals = row[cols]
        if len(np.unique(vals)) != len(vals):
            seen: dict[int, int] = {}
            for b, v in zip(cols, vals):
                if int(v) in seen:
                    canc_witness = (int(a), seen[int(v)], int(b))
                    break
                seen[int(v)] = int(b)
            break
    pos_witness = None
    zero_hits = np.argwhere(S == algebra.zero)
    for a, b in zero_hits:
        if int(a) != algebra.zero or int(b) != algebra.zero:
            pos_witness = (int(a), int(b))
            break
    return DerivedLawReport(
        cancellation=canc_witness is None,
        positivity=pos_witness is None,
        cancellation_witness=canc_witness,
        positivity_witness=pos_witness,
    )
