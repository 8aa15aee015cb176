"""Canonical finite effect algebras.

Three families cover most needs: Boolean powerset algebras (disjoint union),
chain algebras on {0, 1/k, ..., 1} (addition capped at 1), and algebras of
set families closed under complement (disjoint union when the union stays in
the family).  The six-element `quadrant_algebra` is the smallest standard
example in which decompositions interlock badly enough to break both the
Riesz decomposition property and additivity of the variation.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .core import (
    DEFAULT_MAX_SIZE,
    UNDEFINED,
    EffectAlgebra,
    MalformedTableError,
    SizeGuardError,
)

__all__ = [
    "powerset_algebra",
    "scale_algebra",
    "SetFamilySpec",
    "set_family_algebra",
    "quadrant_algebra",
    "atomic_basis",
    "atomic_decompose",
]


def powerset_algebra(n: int, *, max_size: int = DEFAULT_MAX_SIZE) -> EffectAlgebra:
    """Boolean algebra of all subsets of {1..n} with disjoint union as sum.

    Elements are bitmasks in index order, labelled "{}", "{1}", "{1,2}", ...
    Requires 1 <= n <= 16; the 2**n carrier must also fit the size guard.
    """
    if not 1 <= n <= 16:
        raise ValueError("powerset_algebra requires 1 <= n <= 16")
    size = 1 << n
    if size > max_size:
        raise SizeGuardError(
            f"powerset carrier 2**{n} = {size} exceeds size guard {max_size}"
        )
    masks = np.arange(size)
    inter = masks[:, None] & masks[None, :]
    union = masks[:, None] | masks[None, :]
    table = np.where(inter == 0, union, UNDEFINED)

    def label(mask: int) -> str:
        return "{" + ",".join(str(i + 1) for i in range(n) if mask >> i & 1) + "}"

    names = [label(m) for m in range(size)]
    return EffectAlgebra(names, 0, size - 1, table, max_size=max_size)


def scale_algebra(k: int, *, max_size: int = DEFAULT_MAX_SIZE) -> EffectAlgebra:
    """Chain algebra {0/k, 1/k, ..., k/k} where i/k + j/k is defined iff
    i + j <= k."""
    if k < 1:
        raise ValueError("scale_algebra requires k >= 1")
    if k + 1 > max_size:
        raise SizeGuardError(f"scale carrier {k + 1} exceeds size guard {max_size}")
    idx = np.arange(k + 1)
    total = idx[:, None] + idx[None, :]
    table = np.where(total <= k, total, UNDEFINED)
    names = [f"{i}/{k}" for i in range(k + 1)]
    return EffectAlgebra(names, 0, k, table, max_size=max_size)


@dataclass
class SetFamilySpec:
    """A finite universe plus a family of subsets meant to carry an effect
    algebra under disjoint union.  The family must contain the empty set and
    the universe and be closed under complement."""

    universe: Sequence[str]
    members: Sequence[frozenset] = field(default_factory=list)

    def normalized(self) -> tuple[list[str], list[frozenset]]:
        universe = list(self.universe)
        if len(set(universe)) != len(universe):
            raise ValueError("universe points must be distinct")
        uset = frozenset(universe)
        members = [frozenset(m) for m in self.members]
        seen = set()
        for m in members:
            if not m <= uset:
                raise ValueError(f"member {sorted(m)} not a subset of the universe")
            if m in seen:
                raise ValueError(f"member {sorted(m)} listed twice")
            seen.add(m)
        if frozenset() not in seen or uset not in seen:
            raise ValueError("family must contain the empty set and the universe")
        for m in members:
            if uset - m not in seen:
                raise ValueError(
                    f"family is not complement-closed: missing complement of {sorted(m)}"
                )
        return universe, members


def set_family_algebra(
    spec: SetFamilySpec, *, max_size: int = DEFAULT_MAX_SIZE
) -> EffectAlgebra:
    """Effect algebra on a complement-closed set family: A + B is defined iff
    A and B are disjoint and their union belongs to the family.

    The resulting table is validated like any other; families whose union
    structure breaks associativity raise AxiomViolationError with the report
    attached.
    """
    universe, members = spec.normalized()
    pos = {p: i for i, p in enumerate(universe)}
    order = sorted(
        range(len(members)),
        key=lambda i: (len(members[i]), sorted(pos[p] for p in members[i])),
    )
    members = [members[i] for i in order]
    uset = frozenset(universe)
    lookup = {m: i for i, m in enumerate(members)}

    def label(m: frozenset) -> str:
        return "{" + ",".join(sorted(m, key=pos.__getitem__)) + "}"

    names = [label(m) for m in members]
    n = len(members)
    table = np.full((n, n), UNDEFINED, dtype=np.int64)
    for i, a in enumerate(members):
        for j, b in enumerate(members):
            if not (a & b):
                u = a | b
                if u in lookup:
                    table[i, j] = lookup[u]
    return EffectAlgebra(
        names, lookup[frozenset()], lookup[uset], table, max_size=max_size
    )


def quadrant_algebra() -> EffectAlgebra:
    """Six half-plane sets under disjoint union: empty, the right and left
    half-planes X+ and X-, the upper and lower half-planes Y+ and Y-, and the
    whole plane R2.

    Modelled on the four open quadrants (X+ = quadrants 1 and 4, Y+ =
    quadrants 1 and 2, and so on), so the only nonzero sums are the two
    complementary pairs X+ + X- = Y+ + Y- = R2.  Every half-plane is an atom,
    and the crossing of the two pairs is what defeats Riesz decomposition.
    """
    names = ["empty", "X+", "X-", "Y+", "Y-", "R2"]
    sums = [(0, i, i) for i in range(6)]
    sums += [(1, 2, 5), (3, 4, 5)]
    return EffectAlgebra.from_sums(names, 0, 5, sums)


def atomic_basis(algebra: EffectAlgebra) -> list[int]:
    """A maximal orthogonal multiset of atoms summing to the unit.

    Greedy: repeatedly subtract the lowest-index atom below the remainder.
    On a finite algebra every nonzero element has an atom below it, so this
    always terminates with remainder zero.
    """
    basis: list[int] = []
    remaining = algebra.unit
    while remaining != algebra.zero:
        for a in algebra.atoms():
            if algebra.leq(a, remaining):
                basis.append(a)
                nxt = algebra.ominus(remaining, a)
                assert nxt is not None
                remaining = nxt
                break
        else:  # pragma: no cover - impossible on a validated finite algebra
            raise RuntimeError("no atom below nonzero remainder")
    return basis


def atomic_decompose(
    algebra: EffectAlgebra,
    basis: Sequence[int],
    a: int,
) -> Optional[list[int]]:
    """Express a as a sum of a sub-multiset of the given atomic basis.

    The basis must be an orthogonal multiset of atoms summing to the unit;
    anything else is rejected.  Returns the chosen atoms (in basis order) or
    None when no sub-multiset works, which can happen only on algebras
    without Riesz decomposition.
    """
    atoms = set(algebra.atoms())
    if not all(b in atoms for b in basis):
        raise ValueError("basis members must be atoms")
    if algebra.orthosum(basis) != algebra.unit:
        raise ValueError("basis must be orthogonal with sum equal to the unit")

    basis = list(basis)
    memo: dict[tuple[int, int], Optional[list[int]]] = {}

    def rec(target: int, i: int) -> Optional[list[int]]:
        if target == algebra.zero:
            return []
        if i == len(basis):
            return None
        key = (target, i)
        if key in memo:
            return memo[key]
        result = rec(target, i + 1)  # skip basis[i]
        if result is None:
            rem = algebra.ominus(target, basis[i])
            if rem is not None:
                tail = rec(rem, i + 1)
                if tail is not None:
                    result = [basis[i]] + tail
        memo[key] = result
        return result

    return rec(a, 0)
