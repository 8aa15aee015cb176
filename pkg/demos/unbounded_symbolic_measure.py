"""An additive measure on an infinite carrier with no bound in sight.

The carrier holds interlocking sets of prime powers, B(1), B(2), ... and
their complements, arranged so the only disjoint pairs are the
complementary ones.  Sending B(k) to k and its complement to -k is then
additive simply because almost nothing sums, yet the values run off to
infinity along the blocks.

Run:  python3 demos/unbounded_symbolic_measure.py
"""

from effana import (
    additivity_violations,
    block,
    coblock,
    disjoint,
    index_measure,
    intersection_family,
    member,
)


def main():
    print("membership is decided by prime power arithmetic:")
    for x in [2, 3, 5, 6, 9, 25, 49]:
        inside = [k for k in range(1, 5) if member(block(k), x)]
        print(f"  {x:>3} lies in " + (", ".join(f"B({k})" for k in inside)
                                      if inside else "no block"))
    print()

    print("blocks interlock instead of nesting:")
    for s, t in [(block(1), block(2)), (block(1), coblock(2)),
                 (coblock(1), coblock(2))]:
        ans = disjoint(s, t)
        fam = intersection_family(s, t, 4)
        print(f"  {s} and {t} share {ans.witness}, then {fam[1:]} ...")
    print(f"  {block(2)} and {coblock(2)} are disjoint:",
          disjoint(block(2), coblock(2)).disjoint)
    print()

    bad = additivity_violations(index_measure, imax=20)
    print(f"additivity violations with indices up to 20: {len(bad)}")
    for bound in (10, 100, 1000):
        sup = max(abs(index_measure(block(n))) for n in range(1, bound + 1))
        print(f"  sup |mu(B(n))| over n <= {bound:>4}: {sup:g}")
    print("additive, but any would-be bound is overtaken")


if __name__ == "__main__":
    main()
