"""Timing harness for naive convolution vs the transform multiply path.

Times are medians over a configurable repetition count, printed as a
plain text table.  The naive path is quadratic, so it only runs up to
--naive-limit; larger sizes show "-" in that column.
"""

from __future__ import annotations

import statistics
import sys
import time

import numpy as np

from ..groupring import CyclicGroup, ElemAbelianGroup, GroupRingElement
from ..transforms import fast_multiply, plan_for


def _group_for(n: int, p: int):
    k = 0
    m = 1
    while m < n:
        m *= p
        k += 1
    if m == n and k >= 1:
        return ElemAbelianGroup(p, k)
    return CyclicGroup(n)


def _median_ms(fn, reps: int) -> float:
    times = []
    for _ in range(reps):
        t0 = time.perf_counter()
        fn()
        times.append((time.perf_counter() - t0) * 1000.0)
    return statistics.median(times)


def run_bench(
    sizes,
    p: int = 2,
    reps: int = 5,
    naive_limit: int = 4096,
    seed: int = 0,
    stream=None,
) -> int:
    """Print the timing table; always returns 0."""
    if stream is None:
        stream = sys.stdout
    sizes = list(sizes)
    if not sizes:
        stream.write("no sizes requested; empty report\n")
        return 0
    if reps < 1:
        reps = 1

    rng = np.random.default_rng(seed)
    header = f"{'n':>8}  {'strategy':<8}  {'naive ms':>10}  {'fast ms':>10}  {'fast/prev':>9}"
    stream.write(header + "\n")
    stream.write("-" * len(header) + "\n")

    prev = None  # (size, fast_ms)
    for n in sizes:
        group = _group_for(n, p)
        plan = plan_for(group, p)
        x = GroupRingElement.from_coeffs(group, p, rng.integers(0, p, size=n))
        a = GroupRingElement.from_coeffs(group, p, rng.integers(0, p, size=n))

        fast_ms = _median_ms(lambda: fast_multiply(x, a, plan), reps)
        if n <= naive_limit:
            naive_ms = _median_ms(lambda: x * a, reps)
            naive_txt = f"{naive_ms:>10.3f}"
        else:
            naive_txt = f"{'-':>10}"

        if prev is not None and prev[0] * 2 == n and prev[1] > 0:
            growth = f"{fast_ms / prev[1]:>9.2f}"
        else:
            growth = f"{'-':>9}"
        stream.write(
            f"{n:>8}  {plan.strategy:<8}  {naive_txt}  {fast_ms:>10.3f}  {growth}\n"
        )
        prev = (n, fast_ms)
    return 0
