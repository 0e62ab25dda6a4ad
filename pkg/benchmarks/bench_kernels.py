#!/usr/bin/env python3
"""Compare the pure-Python and compiled kernels on representative workloads.

Each workload is run through both implementations; the script asserts that
the results are identical and prints a timing table.  Usage:

    python3 benchmarks/bench_kernels.py
"""

import random
import sys
import time

from polymix._kernel import pure
from polymix.mixer import Workspace
from polymix.words import SchlafliSymbol, coxeter_presentation

try:
    from polymix._kernel import _speedups as compiled
except ImportError:
    compiled = None


def best_time(fn, args, repeats):
    best = None
    result = None
    for _ in range(repeats):
        start = time.perf_counter()
        result = fn(*args)
        elapsed = time.perf_counter() - start
        if best is None or elapsed < best:
            best = elapsed
    return best, result


def workloads():
    # Todd-Coxeter enumeration of a 14400-element reflection group.
    pres = coxeter_presentation(SchlafliSymbol((3, 3, 5)))
    yield (
        "coset enumeration: full symmetry group of {3,3,5} (14400 cosets)",
        "coset_enumerate",
        (pres.ngens, pres.encoded_relators(), [], 1_000_000),
        1,
    )

    # Stabilizer chain for a mixed rotation group of order ~5*10^7 on 720 points.
    group = Workspace().mixed_group(
        (SchlafliSymbol((3, 3, 5)), SchlafliSymbol((5, 3, 3)))
    )
    gens = [list(g.images) for g in group.generators]
    yield (
        f"stabilizer chain: {{3,3,5}}*{{5,3,3}} rotation group "
        f"(order {group.order}, degree {group.degree})",
        "schreier_sims",
        (group.degree, gens),
        3,
    )

    # Union-find labelling at flag-graph scale.
    rng = random.Random(0)
    n = 200_000
    maps = []
    for _ in range(3):
        images = list(range(n))
        rng.shuffle(images)
        maps.append(images)
    yield (
        f"component labels: 3 random maps on {n} points",
        "component_labels",
        (n, maps),
        3,
    )


def main():
    if compiled is None:
        print("compiled kernel is not built; nothing to compare", file=sys.stderr)
        return 1
    rows = []
    for label, fname, args, repeats in workloads():
        pure_time, pure_result = best_time(getattr(pure, fname), args, 1)
        compiled_time, compiled_result = best_time(
            getattr(compiled, fname), args, repeats
        )
        assert pure_result == compiled_result, f"kernel mismatch in {fname}"
        rows.append((label, pure_time, compiled_time))

    width = max(len(label) for label, _, _ in rows)
    print(f"{'workload'.ljust(width)}      pure  compiled   speedup")
    for label, pure_time, compiled_time in rows:
        speedup = pure_time / compiled_time if compiled_time > 0 else float("inf")
        print(
            f"{label.ljust(width)}  {pure_time:7.3f}s  {compiled_time:7.3f}s  "
            f"{speedup:7.1f}x"
        )
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
