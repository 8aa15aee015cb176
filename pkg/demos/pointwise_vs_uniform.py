"""A family bounded at every element that no single bound covers.

Spike i sends B(i) to i, its complement to -i, everything else to 0.  At
any fixed element only one member is ever nonzero, so pointwise bounds are
finite; jointly the sup norms are 1, 2, 3, ... and grow without limit.
The usual way out, walking an orthogonal sequence to transfer pointwise
bounds to a uniform one, dies immediately: the carrier has no orthogonal
sequences longer than a complementary pair.

Run:  python3 demos/pointwise_vs_uniform.py
"""

from effana import (
    bound_table,
    finite_restriction,
    orthogonal_pairs_certificate,
    pointwise_bound,
    spike_family,
    unboundedness_witness_search,
    uniform_bound,
)


def main():
    table = bound_table(10)
    print("spike  sup norm  pointwise bound at B(i)")
    for i, sup, pointwise in table.rows[:5]:
        print(f"  {i:>3}  {sup:>8g}  {pointwise:>12g}")
    print(f"  ... and so on: the uniform bound over 10 members is "
          f"{table.uniform_bound:g}, over 100 it is {bound_table(100).uniform_bound:g}")
    print()

    cert = orthogonal_pairs_certificate(1, 2)
    print(f"orthogonality certificate over {{N, B1, B1c, B2, B2c}}: "
          f"{cert.orthogonal_count} of {len(cert.cases)} pairs orthogonal")
    for case in cert.cases:
        if case.orthogonal:
            print(f"  {case.left} + {case.right}: {case.reason}")
    print()

    # the greedy walk that would certify unboundedness along one orthogonal
    # sequence stalls after a single step
    algebra = finite_restriction(50)
    family = spike_family(algebra)
    blocks = [algebra.index(f"B{k}") for k in range(1, 51)]
    found = unboundedness_witness_search(family, pool=blocks, steps=50)
    print(f"greedy orthogonal walk over 50 spikes: {len(found.picks)} pick(s), "
          f"exhausted={found.exhausted}")
    for p in found.picks:
        print(f"  picked {algebra.name(p.element)} from member {p.member} "
              f"with value {p.value:g}")
    print("every block meets every other block, so nothing orthogonal remains")
    print()
    print(f"pointwise bound at B7: {pointwise_bound(family, algebra.index('B7')):g}; "
          f"uniform bound: {uniform_bound(family):g}")


if __name__ == "__main__":
    main()
