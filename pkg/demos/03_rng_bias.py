#!/usr/bin/env python3
"""Reduction bias of a bounded RNG, exactly.

Masking assumes the mask s1 is uniform on Z_q, but hardware draws k random
bits and reduces mod q.  Unless q divides 2^k, low residues are hit once
more than high ones.  The counts are computed in closed form here, no
sampling anywhere, together with the universal bracket

    floor(N/q) <= count(r) <= ceil(N/q)

which collapses to equality exactly when q | N.
"""

from fractions import Fraction

import maskcheck as mc


def main():
    print("=" * 64)
    print("12-BIT RNG REDUCED MOD 3329")
    print("=" * 64)
    p = mc.bias_profile(4096, 3329)
    print(f"N = {p.n_values}, q = {p.q}")
    print(f"count(0)   = {int(p.counts[0])}")
    print(f"count(766) = {int(p.counts[766])}")
    print(f"count(767) = {int(p.counts[767])}")
    print(f"min = {p.min_count}, max = {p.max_count}, ratio = {p.ratio_str}")
    print(f"bounds [floor, ceil] = [{p.floor_bound}, {p.ceil_bound}], "
          f"re-verified: {mc.verify_bounds(p)}")
    print()
    print("Residues 0..766 are produced by two 12-bit values each; 767 and")
    print("above by exactly one.  A residue at the low end is twice as")
    print("likely as one at the high end: bias ratio exactly "
          f"{Fraction(p.max_count, p.min_count)}.")
    print()

    print("=" * 64)
    print("OTHER REGIMES")
    print("=" * 64)
    for n, q, label in [
        (8, 4, "q | N: perfectly uniform"),
        (4096, 5, "q small: near-uniform, one residue ahead"),
        (4096, 8380417, "N < q: counts in {0, 1}, ratio degenerate"),
        (1 << 16, 3329, "16-bit RNG vs 3329"),
        (1 << 24, 3329, "24-bit RNG vs 3329"),
    ]:
        p = mc.bias_profile(n, q)
        print(f"N = {n:>10,}  q = {q:>9,}  min/max = {p.min_count}/"
              f"{p.max_count}  ratio = {p.ratio_str:<12} ({label})")
    print()
    print("Widening the RNG does not remove the bias, it only shrinks the")
    print("ratio toward 1; only q | N eliminates it.  This library reports")
    print("the numbers and deliberately never judges what ratio is tolerable.")


if __name__ == "__main__":
    main()
