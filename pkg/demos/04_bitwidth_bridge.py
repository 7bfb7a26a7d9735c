#!/usr/bin/env python3
"""From ring identities to w-bit registers.

In Z_q the share computation s0 = x - s1 cannot overflow; hardware computes
it in unsigned w-bit words as URem(x + q - s1, q).  Two facts make that
encoding safe:

  - writing the intermediate as x + q - s1 (not x - s1 + q) never
    underflows, and
  - 1 <= x + q - s1 < 2q for all reduced x, s1, so any width with
    2q < 2^w holds the intermediate.

This script checks the ML-KEM and ML-DSA widths, shows the strictness of
the 2q < 2^w boundary, and confirms word-level/ring-level agreement with
every word operation checked against its register width.
"""

import numpy as np

import maskcheck as mc


def main():
    print("=" * 68)
    print("WIDTH ADMISSIBILITY AT 24 BITS")
    print("=" * 68)
    for q, label in [(3329, "ML-KEM modulus"),
                     (8380417, "ML-DSA modulus"),
                     (8388607, "largest admissible q at w=24"),
                     (8388608, "2q = 2^24 exactly: rejected")]:
        cfg = mc.WidthConfig(q, 24)
        print(f"q = {q:>9,}: 2q = {2 * q:>10,} vs 2^24 = {1 << 24:,} "
              f"-> admissible = {cfg.admissible}   ({label})")
    print()

    print("=" * 68)
    print("THE INTERMEDIATE RANGE [1, 2q)")
    print("=" * 68)
    q = 3329
    x = np.arange(q, dtype=np.int64)[:, None]
    s1 = np.arange(q, dtype=np.int64)[None, :]
    t = x + q - s1
    print(f"q = {q}: over all {q * q:,} share pairs, x + q - s1 spans "
          f"[{int(t.min())}, {int(t.max())}]")
    print(f"lower bound 1 hit at (x, s1) = (0, {q - 1}); upper value "
          f"{2 * q - 1} at ({q - 1}, 0); both inside [1, {2 * q})")
    print()

    print("=" * 68)
    print("WORD-LEVEL VS RING-LEVEL REPARAMETRIZATION")
    print("=" * 68)
    rng = np.random.default_rng(0)
    for q in (17, 3329, 8380417):
        cfg = mc.WidthConfig(q, 24)
        m = mc.Modulus(q)
        if q <= 64:
            pairs = [(x, s1) for x in range(q) for s1 in range(q)]
            mode = "exhaustive"
        else:
            pairs = rng.integers(0, q, size=(20_000, 2)).tolist()
            mode = "20,000 sampled"
        bad = 0
        for xv, s1v in pairs:
            word = mc.urem_reparam(cfg, xv, s1v)
            ring = mc.arith_reparam(m.element(xv), m.element(s1v)).value
            if word != ring or not mc.urem_round_trip(cfg, xv, s1v):
                bad += 1
        print(f"q = {q:>9,} ({mode}): {bad} disagreements")
    print()
    print("A too-narrow register is caught, not wrapped:")
    try:
        mc.bitvec._fit(mc.WidthConfig(3329, 12), 3329 + 3000, "x + q")
    except mc.WordOverflowError as exc:
        print(f"  WordOverflowError: {exc}")


if __name__ == "__main__":
    main()
