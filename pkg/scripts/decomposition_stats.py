#!/usr/bin/env python3
"""Profile the decomposition engine over a sweep of seeded automorphisms.

For each (rank, class, |D|) cell this decomposes a batch of seeded random
automorphisms and tabulates factor counts by tag, the smallest pointwise-fixed
block outside D over all certificates, the largest integer coefficient touched,
and wall-clock cost.  Handy for spotting performance or certificate-size
regressions before they trip the acceptance budgets.
"""

import argparse
import statistics
import time
from collections import Counter

from freenil import GroupContext, decompose, random_automorphism, verify

DEFAULT_CELLS = ((8, 1, 1), (8, 2, 2), (10, 2, 2), (10, 3, 1), (12, 3, 2))


def probe_cell(n, c, d, seeds, length):
    ctx = GroupContext(n, c)
    fix = tuple(range(1, d + 1))
    counts, tags, blocks, coeffs, times = [], Counter(), [], [], []
    for s in range(seeds):
        sigma = random_automorphism(ctx, 9_000_000 + s, length, fix)
        t0 = time.perf_counter()
        dec = decompose(sigma, fix)
        rep = verify(dec)
        times.append(time.perf_counter() - t0)
        assert rep.ok, rep.failures
        counts.append(len(dec.factors))
        tags.update(f.tag for f in dec.factors)
        if rep.min_fixed_block is not None:
            blocks.append(rep.min_fixed_block)
        coeffs.append(rep.max_coefficient)
    return counts, tags, blocks, coeffs, times


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--seeds", type=int, default=20, help="maps per cell")
    ap.add_argument("--length", type=int, default=12, help="moves per random map")
    args = ap.parse_args()

    block_head = "min |P-D|"
    print(f"{'cell':>12}  {'factors':>16}  {block_head:>9}  "
          f"{'max coeff':>9}  {'ms/map':>8}  tags")
    for n, c, d in DEFAULT_CELLS:
        counts, tags, blocks, coeffs, times = probe_cell(
            n, c, d, args.seeds, args.length
        )
        cell = f"({n},{c},{d})"
        spread = f"{min(counts)}..{max(counts)} ~{statistics.mean(counts):.1f}"
        tag_text = " ".join(f"{t}:{k}" for t, k in sorted(tags.items()))
        print(
            f"{cell:>12}  {spread:>16}  {min(blocks, default='-'):>9}  "
            f"{max(coeffs):>9}  {1000 * statistics.mean(times):>8.1f}  {tag_text}"
        )


if __name__ == "__main__":
    main()
