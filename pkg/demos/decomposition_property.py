"""Where splitting below a sum works, and the small place it does not.

Run:  python3 demos/decomposition_property.py
"""

from effana import (
    check_rdp,
    powerset_algebra,
    quadrant_algebra,
    rdp_decompose,
    scale_algebra,
)


def main():
    print("decomposition property across the stock constructions:")
    for k in range(2, 13):
        assert check_rdp(scale_algebra(k)).holds
    print("  scale(2..12): holds everywhere")
    for n in range(2, 6):
        assert check_rdp(powerset_algebra(n)).holds
    print("  powerset(2..5): holds everywhere")

    quadrant = quadrant_algebra()
    report = check_rdp(quadrant)
    c, a, b = report.witness_names(quadrant)
    print(f"  quadrant: fails at {c} <= {a} + {b} "
          f"(re-check {'agrees' if report.recheck_passed else 'disagrees'})")
    print()

    # on a chain the property is visible in action: split 5/10 below 3/10 + 4/10
    chain = scale_algebra(10)
    parts = [chain.index("3/10"), chain.index("4/10")]
    split = rdp_decompose(chain, chain.index("5/10"), parts)
    print("splitting 5/10 under 3/10 + 4/10:",
          " + ".join(chain.name(x) for x in split))

    # the same request on the quadrant has no answer: Y+ sits below
    # X+ + X- = R2 but shares nothing with either half
    split = rdp_decompose(quadrant, quadrant.index("Y+"),
                          [quadrant.index("X+"), quadrant.index("X-")])
    print("splitting Y+ under X+ + X-:", split)


if __name__ == "__main__":
    main()
