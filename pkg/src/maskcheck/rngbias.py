"""Residue bias of a bounded RNG reduced modulo q.

A k-bit generator produces N = 2^k equiprobable values; reducing them mod q
is only uniform when q divides N.  Otherwise the low residues are hit one
extra time.  This module computes the exact per-residue counts in closed
form (never by sampling), together with the universal floor/ceil bounds
floor(N/q) <= count(r) <= ceil(N/q) and the max/min bias ratio.

The flagship instance: a 12-bit RNG (N = 4096) against q = 3329 gives
count(0) = 2, count(767) = 1 and a bias ratio of exactly 2.  The module
reports bias; it never judges how much bias is tolerable.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

# brute_force_counts iterates all N values; keep it desk-scale.
BRUTE_FORCE_LIMIT = 1 << 26


@dataclass(frozen=True, eq=False)
class BiasProfile:
    """Exact residue counts of {0, ..., N-1} reduced mod q.

    `ratio` is max_count/min_count as an exact rational, or None when
    min_count = 0 (N < q leaves residues unhit and the ratio is
    degenerate rather than infinite).
    """

    n_values: int
    q: int
    counts: np.ndarray
    min_count: int
    max_count: int
    ratio: Fraction | None
    divides_exactly: bool

    @property
    def is_degenerate(self) -> bool:
        return self.ratio is None

    @property
    def floor_bound(self) -> int:
        return self.n_values // self.q

    @property
    def ceil_bound(self) -> int:
        return -(-self.n_values // self.q)

    @property
    def ratio_str(self) -> str:
        if self.ratio is None:
            return "DEGENERATE"
        return f"{self.ratio.numerator}/{self.ratio.denominator}"


def bias_profile(n_values: int, q: int) -> BiasProfile:
    """Closed-form residue counts for {0, ..., n_values-1} mod q.

    Writing N = a*q + b, residues below b are hit a+1 times and the rest
    a times; this is floor((N-1-r)/q) + 1 without the per-residue division.
    The min/max summaries follow from the same two-segment structure, so
    profile construction is one array write; re-deriving the extremes from
    the actual array is verify_bounds' job.
    """
    if not isinstance(n_values, int) or n_values < 1:
        raise ValueError(f"n_values must be a positive integer, got {n_values!r}")
    if not isinstance(q, int) or q < 1:
        raise ValueError(f"q must be a positive integer, got {q!r}")
    a, b = divmod(n_values, q)
    counts = np.full(q, a, dtype=np.int64)
    counts[:b] += 1
    counts.setflags(write=False)
    min_count = a
    max_count = a + 1 if b else a
    ratio = Fraction(max_count, min_count) if min_count > 0 else None
    return BiasProfile(
        n_values=n_values,
        q=q,
        counts=counts,
        min_count=min_count,
        max_count=max_count,
        ratio=ratio,
        divides_exactly=(b == 0),
    )


def brute_force_counts(n_values: int, q: int) -> np.ndarray:
    """Counts by direct iteration over every n < N; the desk-scale oracle."""
    if n_values > BRUTE_FORCE_LIMIT:
        raise ValueError(
            f"brute force capped at N <= {BRUTE_FORCE_LIMIT}, got {n_values}"
        )
    return np.bincount(np.arange(n_values, dtype=np.int64) % q, minlength=q)


# Direct summation is worthwhile below this q; above it the closed-form
# route confirms the counts in a single comparison pass.
DIRECT_SUMMATION_MAX_Q = 1 << 16


def verify_bounds(profile: BiasProfile,
                  brute_force_n_limit: int = 1 << 22) -> bool:
    """Re-derive the floor/ceil bounds and confirm every count obeys them.

    For q up to 2^16 the counts array is checked residue by residue against
    the re-derived bounds (and, when N is small enough to iterate, against
    a direct tally of all N values).  For larger q the array is confirmed
    elementwise against the two-segment closed form, whose extremes are
    then compared with the bounds arithmetically.  Either way every count
    is inspected, the sum identity is checked, and the equality branch is
    enforced when q divides N.

    A False return means the library miscounted; tests treat it as fatal.
    """
    n, q = profile.n_values, profile.q
    counts = profile.counts
    lo = n // q
    hi = -(-n // q)
    a, b = divmod(n, q)
    if q <= DIRECT_SUMMATION_MAX_Q:
        if int(counts.sum()) != n:
            return False
        if int(counts.min()) < lo or int(counts.max()) > hi:
            return False
        if b == 0 and not bool((counts == a).all()):
            return False
        if n <= brute_force_n_limit:
            if not np.array_equal(counts, brute_force_counts(n, q)):
                return False
    else:
        if not bool((counts[:b] == a + 1).all()):
            return False
        if not bool((counts[b:] == a).all()):
            return False
        # structure confirmed: sum is a*q + b = N by divmod, extremes are
        # a and a+1 (or a alone when b = 0)
        if a * q + b != n:
            return False
        if a < lo or (a + 1 if b else a) > hi:
            return False
    return True
