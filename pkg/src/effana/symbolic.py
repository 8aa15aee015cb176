"""A decidable infinite effect algebra of interlocking prime-power sets.

Write p_n for the n-th prime and A_n = {p_n^m : m >= 1}.  For k >= 1 the set

    B(k) = union of A_1, A_3, ..., A_{2k-1} and of A_{2k}, A_{2k+2}, ...

collects the first k odd-indexed prime-power classes together with all
even-indexed classes from 2k on.  The carrier here is the four-kind family
{empty, N, B(k), B(k) complement}; it is closed under complements, and a
union of two members stays in the family only in the trivial cases, so the
partial sum has exactly the pairs empty + x and B(k) + B(k)c = N.  Any two
distinct B's intersect (2 lies in every B(k)), a B meets every other
complement, and any two complements intersect, each witnessed by an explicit
prime power; that is what makes every orthogonal multiset of nonempty
elements either a singleton or a single complementary pair.

Membership is decided by arithmetic: x belongs to B(k) iff x = p_n^m with
n odd and (n+1)/2 <= k, or n even and n/2 >= k.  Prime powers are detected
by exact integer root extraction plus a Miller-Rabin primality check, which
is deterministic below 3.3e24, so membership for inputs up to 2**63 - 1 is
exact whenever the index of the base prime is within the sieve range.

The module also carries the two measure constructions used throughout: the
index measure (B(n) to n, complement to -n), additive but with unbounded
values along the blocks, and the spike measures (the i-th one vanishes
except at index i), a family that is bounded at every fixed element but not
uniformly.  A finite restriction to indices <= N materializes the algebra
as a table so the generic measure and variation machinery applies.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import isqrt, log
from typing import Callable, Optional

import numpy as np

from .core import DEFAULT_MAX_SIZE, EffectAlgebra
from .measures import Measure, MeasureFamily

__all__ = [
    "SymbolicSet",
    "EMPTY",
    "FULL",
    "block",
    "coblock",
    "nth_prime",
    "prime_index",
    "prime_power_split",
    "member",
    "DisjointnessAnswer",
    "disjoint",
    "intersection_family",
    "sym_oplus",
    "sym_orthosum",
    "symbolic_universe",
    "CertificateCase",
    "OrthogonalityCertificate",
    "orthogonal_pairs_certificate",
    "index_measure",
    "spike_measure",
    "additivity_violations",
    "SpikeBoundTable",
    "bound_table",
    "finite_restriction",
    "restriction_block_count",
    "restricted_index_measure",
    "spike_family",
]


# ---------------------------------------------------------------------------
# prime arithmetic

_SIEVE_CAP = 100_000_000


def _sieve(limit: int) -> np.ndarray:
    flags = np.ones(limit + 1, dtype=bool)
    flags[:2] = False
    for p in range(2, isqrt(limit) + 1):
        if flags[p]:
            flags[p * p :: p] = False
    return np.flatnonzero(flags).astype(np.int64)


_sieve_limit = 1 << 17
_primes = _sieve(_sieve_limit)


def _ensure_sieve(limit: int) -> None:
    global _sieve_limit, _primes
    if limit <= _sieve_limit:
        return
    if limit > _SIEVE_CAP:
        raise ValueError(
            f"prime sieve capped at {_SIEVE_CAP}; cannot reach {limit}"
        )
    new_limit = min(_SIEVE_CAP, max(limit, 2 * _sieve_limit))
    _primes = _sieve(new_limit)
    _sieve_limit = new_limit


def nth_prime(n: int) -> int:
    """The n-th prime, 1-based: nth_prime(1) = 2."""
    if n < 1:
        raise ValueError("prime index must be >= 1")
    while n > len(_primes):
        if n >= 6:
            bound = int(n * (log(n) + log(log(n)))) + 10
        else:
            bound = 15
        _ensure_sieve(max(bound, 2 * _sieve_limit))
    return int(_primes[n - 1])


def prime_index(p: int) -> int:
    """Position of the prime p in the prime sequence, 1-based."""
    if p < 2:
        raise ValueError(f"{p} is not prime")
    _ensure_sieve(p)
    pos = int(np.searchsorted(_primes, p))
    if pos >= len(_primes) or int(_primes[pos]) != p:
        raise ValueError(f"{p} is not prime")
    return pos + 1


def _is_prime(x: int) -> bool:
    # Miller-Rabin over the first twelve prime bases: deterministic for
    # x < 3.3e24, which covers the full 2**63 - 1 input range.
    if x < 2:
        return False
    bases = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
    for p in bases:
        if x % p == 0:
            return x == p
    d = x - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in bases:
        v = pow(a, d, x)
        if v == 1 or v == x - 1:
            continue
        for _ in range(s - 1):
            v = v * v % x
            if v == x - 1:
                break
        else:
            return False
    return True


def _iroot(x: int, k: int) -> int:
    """Largest r with r**k <= x, exact for arbitrary precision."""
    if x < 0 or k < 1:
        raise ValueError("root arguments out of range")
    if x < 2 or k == 1:
        return x
    if k == 2:
        return isqrt(x)
    r = 1 << -(-x.bit_length() // k)
    while True:
        nr = ((k - 1) * r + x // r ** (k - 1)) // k
        if nr >= r:
            break
        r = nr
    while r ** k > x:
        r -= 1
    return r


def _strip_prime_root(base: int) -> Optional[tuple[int, int]]:
    # A perfect power is a perfect q-th power for some prime q <= log2,
    # so checking prime exponents suffices.
    bits = base.bit_length() - 1
    for q in map(int, _primes):
        if q > bits:
            return None
        r = _iroot(base, q)
        if r ** q == base:
            return r, q
    return None


@lru_cache(maxsize=1 << 16)
def prime_power_split(x: int) -> Optional[tuple[int, int]]:
    """Decompose x as (p, m) with p prime and x = p**m, or None.

    Strips prime-indexed roots until the base is no longer a perfect power;
    the accumulated exponent is then maximal, and x is a prime power exactly
    when the final base is prime.  Exponent candidates only need to range
    over primes up to log2(x), so even several-hundred-digit prime powers
    reduce in a handful of root extractions.
    """
    if x < 2:
        return None
    base, exp = x, 1
    while True:
        hit = _strip_prime_root(base)
        if hit is None:
            break
        base, exp = hit[0], exp * hit[1]
    return (base, exp) if _is_prime(base) else None


# ---------------------------------------------------------------------------
# the four element kinds

_KINDS = ("empty", "full", "block", "coblock")


@dataclass(frozen=True)
class SymbolicSet:
    """One element of the carrier: empty, N, B(k), or B(k) complement."""

    kind: str
    index: int = 0

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise ValueError(f"unknown kind {self.kind!r}")
        if self.kind in ("block", "coblock"):
            if self.index < 1:
                raise ValueError("block index must be >= 1")
        elif self.index != 0:
            raise ValueError(f"{self.kind} carries no index")

    @property
    def label(self) -> str:
        if self.kind == "empty":
            return "empty"
        if self.kind == "full":
            return "N"
        suffix = "" if self.kind == "block" else "c"
        return f"B{self.index}{suffix}"

    def __str__(self):
        return self.label


EMPTY = SymbolicSet("empty")
FULL = SymbolicSet("full")


def block(k: int) -> SymbolicSet:
    return SymbolicSet("block", k)


def coblock(k: int) -> SymbolicSet:
    return SymbolicSet("coblock", k)


def symbolic_universe(n: int) -> list[SymbolicSet]:
    """Empty, N, and all blocks and coblocks with index <= n."""
    if n < 1:
        raise ValueError("n must be >= 1")
    out = [EMPTY, FULL]
    out.extend(block(k) for k in range(1, n + 1))
    out.extend(coblock(k) for k in range(1, n + 1))
    return out


def member(e: SymbolicSet, x: int) -> bool:
    """Decide x in e by prime-power arithmetic.

    Only prime powers p_n**m belong to any block; such x lies in B(k) iff
    n is odd with (n+1)/2 <= k or n is even with n/2 >= k.  Exact whenever
    the base prime fits the sieve cap; a larger base raises ValueError
    because its index parity is out of reach.
    """
    if x < 1:
        raise ValueError("members of the carrier sets are naturals >= 1")
    if e.kind == "empty":
        return False
    if e.kind == "full":
        return True
    split = prime_power_split(x)
    if split is None:
        return e.kind == "coblock"
    p, _ = split
    n = prime_index(p)
    k = e.index
    in_block = (n % 2 == 1 and (n + 1) // 2 <= k) or (n % 2 == 0 and n // 2 >= k)
    return in_block if e.kind == "block" else not in_block


@dataclass(frozen=True)
class DisjointnessAnswer:
    disjoint: bool
    witness: Optional[int] = None


def _checked_witness(s: SymbolicSet, t: SymbolicSet, w: int) -> int:
    if not (member(s, w) and member(t, w)):
        raise AssertionError(
            f"internal witness {w} failed membership for {s} and {t}"
        )
    return w


def disjoint(s: SymbolicSet, t: SymbolicSet) -> DisjointnessAnswer:
    """Decide whether two carrier sets intersect, with a checked witness.

    The only disjoint pairs are those involving empty and the complementary
    pairs (B(k), B(k)c).  Every other pair gets a concrete common element:
    2 lies in every block, 1 in N and every coblock, p_{2i} in B(i) and in
    B(j)c for i < j, p_{2i-1} in B(i) and in B(j)c for i > j, and
    p_{2(i+j)+1} in both complements.  Each witness is re-verified through
    the membership test before being returned.
    """
    a, b = s, t
    if a.kind == "empty" or b.kind == "empty":
        return DisjointnessAnswer(True)
    if a.kind == "full":
        w = 1 if b.kind != "block" else 2
        return DisjointnessAnswer(False, _checked_witness(a, b, w))
    if b.kind == "full":
        return disjoint(b, a)
    if a.kind == "block" and b.kind == "block":
        return DisjointnessAnswer(False, _checked_witness(a, b, 2))
    if a.kind == "coblock" and b.kind == "coblock":
        if a.index == b.index:
            return DisjointnessAnswer(False, _checked_witness(a, b, 1))
        w = nth_prime(2 * (a.index + b.index) + 1)
        return DisjointnessAnswer(False, _checked_witness(a, b, w))
    if a.kind == "coblock":
        return disjoint(b, a)
    # a block, b coblock
    i, j = a.index, b.index
    if i == j:
        return DisjointnessAnswer(True)
    w = nth_prime(2 * i) if i < j else nth_prime(2 * i - 1)
    return DisjointnessAnswer(False, _checked_witness(a, b, w))


def intersection_family(
    s: SymbolicSet, t: SymbolicSet, count: int
) -> list[int]:
    """First `count` members of the canonical infinite family inside s & t.

    Defined for the three nontrivial shapes: two blocks (powers of 2), a
    block and a foreign coblock (powers of p_{2i} or p_{2i-1}), and two
    distinct coblocks (powers of p_{2(i+j)+1}).  Evidence that these
    intersections are infinite, hence never finite-or-cofinite.
    """
    if count < 1:
        raise ValueError("count must be >= 1")
    kinds = (s.kind, t.kind)
    if kinds == ("block", "block"):
        p = 2
    elif kinds == ("block", "coblock") or kinds == ("coblock", "block"):
        a, b = (s, t) if s.kind == "block" else (t, s)
        i, j = a.index, b.index
        if i == j:
            raise ValueError("a complementary pair has empty intersection")
        p = nth_prime(2 * i) if i < j else nth_prime(2 * i - 1)
    elif kinds == ("coblock", "coblock"):
        if s.index == t.index:
            raise ValueError("family defined for distinct coblock indices")
        p = nth_prime(2 * (s.index + t.index) + 1)
    else:
        raise ValueError("family defined only for block/coblock pairs")
    return [p ** m for m in range(1, count + 1)]


def sym_oplus(s: SymbolicSet, t: SymbolicSet) -> Optional[SymbolicSet]:
    """Partial sum: defined exactly for empty + x and B(k) + B(k)c."""
    if s.kind == "empty":
        return t
    if t.kind == "empty":
        return s
    if {s.kind, t.kind} == {"block", "coblock"} and s.index == t.index:
        return FULL
    return None


def sym_orthosum(elements: list[SymbolicSet]) -> Optional[SymbolicSet]:
    """Fold of sym_oplus; EMPTY for the empty list, None when undefined."""
    total = EMPTY
    for e in elements:
        nxt = sym_oplus(total, e)
        if nxt is None:
            return None
        total = nxt
    return total


# ---------------------------------------------------------------------------
# the orthogonality certificate

@dataclass(frozen=True)
class CertificateCase:
    left: str
    right: str
    orthogonal: bool
    reason: str
    witness: Optional[int] = None


@dataclass
class OrthogonalityCertificate:
    index_i: int
    index_j: int
    cases: list[CertificateCase]
    max_nonempty_terms: int
    conclusion: str

    @property
    def orthogonal_count(self) -> int:
        return sum(1 for c in self.cases if c.orthogonal)


def orthogonal_pairs_certificate(i: int = 1, j: int = 2) -> OrthogonalityCertificate:
    """Case table showing orthogonal multisets here are essentially trivial.

    Enumerates the 10 unordered pairs over {N, B(i), B(i)c, B(j), B(j)c}
    for two distinct indices.  Exactly two pairs are orthogonal, the two
    complementary ones; every other pair intersects, with a verified
    witness.  Since a third nonempty element would have to be orthogonal to
    a complementary pair's sum, the full set, which only empty is, every
    orthogonal multiset of nonempty elements is a singleton or one
    complementary pair.
    """
    if i < 1 or j < 1 or i == j:
        raise ValueError("indices must be distinct naturals")
    reps = [FULL, block(i), coblock(i), block(j), coblock(j)]
    cases = []
    for a_pos in range(len(reps)):
        for b_pos in range(a_pos + 1, len(reps)):
            a, b = reps[a_pos], reps[b_pos]
            total = sym_oplus(a, b)
            if total is not None:
                cases.append(
                    CertificateCase(
                        a.label,
                        b.label,
                        True,
                        f"complementary pair, sum {total.label}",
                    )
                )
                continue
            ans = disjoint(a, b)
            if ans.disjoint:
                raise AssertionError(
                    f"disjoint pair {a}, {b} with undefined sum"
                )
            cases.append(
                CertificateCase(
                    a.label,
                    b.label,
                    False,
                    f"intersect at {ans.witness}",
                    ans.witness,
                )
            )
    conclusion = (
        "every orthogonal multiset of nonempty elements is a singleton or "
        "exactly one pair {B(k), B(k)c}; a repeated nonempty element "
        "intersects itself, and a third nonempty element would need to be "
        "orthogonal to the pair's sum N, which only empty is, so no "
        "orthogonal sequence has more than two nonempty terms"
    )
    return OrthogonalityCertificate(i, j, cases, 2, conclusion)


# ---------------------------------------------------------------------------
# measures

def index_measure(e: SymbolicSet) -> float:
    """B(n) to n and B(n)c to -n: additive, yet unbounded along the blocks."""
    if e.kind == "block":
        return float(e.index)
    if e.kind == "coblock":
        return float(-e.index)
    return 0.0


def spike_measure(i: int, e: SymbolicSet) -> float:
    """The i-th spike: +-i at index i, zero elsewhere; sup norm i."""
    if i < 1:
        raise ValueError("spike index must be >= 1")
    if e.kind == "block" and e.index == i:
        return float(i)
    if e.kind == "coblock" and e.index == i:
        return float(-i)
    return 0.0


def additivity_violations(
    mu: Callable[[SymbolicSet], float], imax: int = 20
) -> list[tuple[SymbolicSet, SymbolicSet]]:
    """All defined pairs with indices <= imax where mu(s+t) != mu(s)+mu(t).

    The defined sums are empty + x and the complementary pairs, so this is
    an exhaustive additivity check over the truncated universe.
    """
    universe = symbolic_universe(imax)
    bad = []
    for s in universe:
        for t in universe:
            total = sym_oplus(s, t)
            if total is None:
                continue
            if mu(s) + mu(t) != mu(total):
                bad.append((s, t))
    return bad


@dataclass
class SpikeBoundTable:
    """Rows (i, sup norm of spike i, pointwise bound at B(i)), i = 1..n."""

    rows: list[tuple[int, float, float]]

    @property
    def uniform_bound(self) -> float:
        return max(r[1] for r in self.rows)


def bound_table(n: int) -> SpikeBoundTable:
    """Bounds of the first n spikes over the index <= n universe.

    Each spike is bounded (sup norm i) and each fixed element bounds the
    whole family (pointwise bound at B(i) is i), yet the uniform bound is
    n: it grows without bound with the truncation.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    universe = symbolic_universe(n)
    rows = []
    for i in range(1, n + 1):
        sup = max(abs(spike_measure(i, e)) for e in universe)
        pointwise = max(abs(spike_measure(k, block(i))) for k in range(1, n + 1))
        rows.append((i, sup, pointwise))
    return SpikeBoundTable(rows)


# ---------------------------------------------------------------------------
# finite restriction

def finite_restriction(
    n: int, *, max_size: int = DEFAULT_MAX_SIZE
) -> EffectAlgebra:
    """The index <= n slice materialized as a finite table of size 2n + 2.

    Carrier [empty, N, B1..Bn, B1c..Bnc]; sums are empty + x and the n
    complementary pairs, exactly the symbolic sums that stay in the slice.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    names = ["empty", "N"]
    names += [f"B{k}" for k in range(1, n + 1)]
    names += [f"B{k}c" for k in range(1, n + 1)]
    sums = [(0, x, x) for x in range(len(names))]
    sums += [(2 + k, 2 + n + k, 1) for k in range(n)]
    return EffectAlgebra.from_sums(
        names, "empty", "N", sums, max_size=max_size
    )


def restriction_block_count(algebra: EffectAlgebra) -> int:
    """Recover n from a finite restriction; ValueError on any other shape."""
    size = algebra.size
    n, rem = divmod(size - 2, 2)
    expected = n >= 1 and rem == 0
    if expected:
        names = ["empty", "N"]
        names += [f"B{k}" for k in range(1, n + 1)]
        names += [f"B{k}c" for k in range(1, n + 1)]
        expected = list(algebra.names) == names
    if not expected:
        raise ValueError("algebra is not a finite restriction of the carrier")
    return n


def restricted_index_measure(algebra: EffectAlgebra) -> Measure:
    """The index measure on a finite restriction: B(k) to k, B(k)c to -k."""
    n = restriction_block_count(algebra)
    values = np.zeros((algebra.size, 1))
    for k in range(1, n + 1):
        values[1 + k, 0] = k
        values[1 + n + k, 0] = -k
    return Measure(algebra, values)


def spike_family(algebra: EffectAlgebra) -> MeasureFamily:
    """All n spikes on a finite restriction, as a measure family."""
    n = restriction_block_count(algebra)
    members = []
    for i in range(1, n + 1):
        values = np.zeros((algebra.size, 1))
        values[1 + i, 0] = i
        values[1 + n + i, 0] = -i
        members.append(Measure(algebra, values))
    return MeasureFamily(members)
