"""Build the stock algebras and poke at their derived structure.

Run:  python3 demos/build_and_inspect.py
"""

import numpy as np

from effana import (
    AxiomViolationError,
    EffectAlgebra,
    SetFamilySpec,
    UNDEFINED,
    powerset_algebra,
    quadrant_algebra,
    scale_algebra,
    set_family_algebra,
)


def show(algebra, title):
    print(f"== {title} ==")
    print(f"  carrier: {algebra.size} elements, "
          f"zero {algebra.name(algebra.zero)!r}, unit {algebra.name(algebra.unit)!r}")
    print(f"  atoms:   {[algebra.name(a) for a in algebra.atoms()]}")
    pairs = algebra.defined_pairs()
    print(f"  defined sums (unordered): {len(pairs)}")
    print()


def main():
    show(powerset_algebra(3), "subsets of {1,2,3} under disjoint union")
    show(scale_algebra(10), "the chain 0/10 .. 10/10")
    show(quadrant_algebra(), "two crossing complementary pairs of half-planes")

    # a set family carries an algebra only if the union structure cooperates;
    # puncturing the powerset of four points breaks associativity
    points = ["1", "2", "3", "4"]
    members = [
        frozenset(p for i, p in enumerate(points) if mask >> i & 1)
        for mask in range(16)
    ]
    drop = {frozenset({"1", "2"}), frozenset({"3", "4"})}
    spec = SetFamilySpec(points, [m for m in members if m not in drop])
    try:
        set_family_algebra(spec)
    except AxiomViolationError as exc:
        print("punctured family rejected, as it must be:")
        for v in exc.report.violations[:3]:
            print(f"  {v.axiom} at indices {v.elements}")
        print()

    # tables can also be given directly; a three-point chain via its sums
    chain = EffectAlgebra.from_sums(
        ["none", "half", "all"],
        "none",
        "all",
        [("none", x, x) for x in ["none", "half", "all"]] + [("half", "half", "all")],
    )
    print("hand-rolled chain:", chain)
    print("half + half =", chain.name(chain.oplus(1, 1)))
    print("complement of 'half' is", chain.name(chain.complement(1)))


if __name__ == "__main__":
    main()
