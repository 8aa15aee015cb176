"""Seeded random measures, and the dynamic program checked against brute force.

Run:  python3 demos/random_measures_oracle.py
"""

import time

from effana import (
    powerset_algebra,
    quadrant_algebra,
    random_measure,
    run_property_suite,
    scale_algebra,
    variation,
    variation_bruteforce,
)


def main():
    cases = [
        ("powerset(3)", powerset_algebra(3)),
        ("scale(7)", scale_algebra(7)),
        ("quadrant", quadrant_algebra()),
    ]
    print("variation by dynamic program vs exhaustive enumeration:")
    for name, algebra in cases:
        worst = 0.0
        checks = 0
        for seed in range(20):
            mu = random_measure(algebra, dim=seed % 2 + 1, seed=seed)
            for mode in ("multiset", "set"):
                for e in range(algebra.size):
                    dp = variation(mu, e, mode).value
                    brute = variation_bruteforce(mu, e, mode)
                    worst = max(worst, abs(dp - brute))
                    checks += 1
        print(f"  {name:<12} {checks:>4} comparisons, largest gap {worst:g}")
    print()

    start = time.perf_counter()
    report = run_property_suite(seed=42)
    elapsed = time.perf_counter() - start
    print(f"full invariant suite: {report.total_passed} passed, "
          f"{report.total_failed} failed in {elapsed:.2f}s")
    widest = max(len(c.invariant) for c in report.counts)
    for c in report.counts:
        print(f"  {c.invariant:<{widest}}  {c.passed}")


if __name__ == "__main__":
    main()
