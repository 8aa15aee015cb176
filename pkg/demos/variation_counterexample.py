"""A signed measure whose variation jumps past the value at the top.

The measure sends both X half-planes to 1, so the whole plane carries 2,
but the Y pair carries 5 and -3.  The variation picks the larger split and
lands at 8, four times the norm at the top and far from additive.

Run:  python3 demos/variation_counterexample.py
"""

import numpy as np

from effana import Measure, check_variation_theorems, quadrant_algebra, variation


def main():
    quadrant = quadrant_algebra()
    mu = Measure(quadrant, np.array([0.0, 1.0, 1.0, 5.0, -3.0, 2.0]))

    print("element   value   |mu|")
    for e in range(quadrant.size):
        res = variation(mu, e)
        parts = ", ".join(quadrant.name(p) for p in res.witness.parts)
        print(f"  {quadrant.name(e):<6}  {mu.value(e)[0]:>5.1f}  {res.value:>5.1f}"
              f"   via [{parts}]")
    print()

    report = check_variation_theorems(mu)
    a, b, lhs, rhs = report.additivity_counterexample
    print(f"additivity breaks: |mu|({quadrant.name(a)} + {quadrant.name(b)}) = {lhs}"
          f" but |mu|({quadrant.name(a)}) + |mu|({quadrant.name(b)}) = {rhs}")
    print("superadditivity still holds:",
          next(c.detail for c in report.checks if c.name == "superadditive"))


if __name__ == "__main__":
    main()
