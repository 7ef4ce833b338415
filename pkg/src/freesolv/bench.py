"""Timing harness for the word-problem solvers."""

from __future__ import annotations

import gc
import math
import random
import time
from dataclasses import dataclass, field

from .abelian_fox import wp_metabelian
from .solvable import wp_solvable
from .words import random_word

SUITES = ("metabelian", "solvable")


@dataclass
class BenchRow:
    size: int
    times: list[float]

    @property
    def mean(self) -> float:
        return sum(self.times) / len(self.times) if self.times else 0.0


@dataclass
class BenchReport:
    suite: str
    rank: int
    klass: int
    seed: int
    rows: list[BenchRow] = field(default_factory=list)

    def doubling_ratios(self) -> list[float | None]:
        """Per-doubling time growth between consecutive sizes, averaged over seeds."""
        out: list[float | None] = []
        for a, b in zip(self.rows, self.rows[1:]):
            if a.size <= 0 or b.size <= a.size:
                out.append(None)
                continue
            doublings = math.log2(b.size / a.size)
            per_seed = [(tb / ta) ** (1 / doublings)
                        for ta, tb in zip(a.times, b.times) if ta > 0]
            out.append(sum(per_seed) / len(per_seed) if per_seed else None)
        return out

    def to_json(self) -> dict:
        return {
            "suite": self.suite,
            "rank": self.rank,
            "class": self.klass,
            "seed": self.seed,
            "rows": [{"size": r.size, "mean_seconds": r.mean, "seconds": r.times} for r in self.rows],
            "doubling_ratios": self.doubling_ratios(),
        }

    def format_table(self) -> str:
        lines = [f"suite={self.suite} rank={self.rank} class={self.klass} seed={self.seed}",
                 f"{'size':>10} {'mean_s':>12} {'ratio/doubling':>15}"]
        ratios = [None] + self.doubling_ratios()
        for row, ratio in zip(self.rows, ratios):
            rtxt = "-" if ratio is None else f"{ratio:.3f}"
            lines.append(f"{row.size:>10} {row.mean:>12.6f} {rtxt:>15}")
        return "\n".join(lines)


def _solver(suite: str, klass: int):
    if suite == "metabelian":
        return wp_metabelian
    if suite == "solvable":
        return lambda w: wp_solvable(w, klass)
    raise ValueError(f"unknown suite {suite!r}; choose from {SUITES}")


def time_call(fn, arg) -> float:
    enabled = gc.isenabled()
    gc.disable()
    try:
        start = time.perf_counter()
        fn(arg)
        return time.perf_counter() - start
    finally:
        if enabled:
            gc.enable()


def run_bench(suite: str, sizes: list[int], seed: int = 0, seeds: int = 5,
              rank: int = 2, klass: int = 3) -> BenchReport:
    """Time the solver on seeded random words; word generation is not timed.

    Words for size ``n`` and seed offset ``i`` come from
    ``Random(f"{seed + i}:{n}")`` so that runs are reproducible.
    """
    if any(n < 0 for n in sizes) or any(b <= a for a, b in zip(sizes, sizes[1:])):
        raise ValueError(f"sizes must be nonnegative and increasing, got {sizes}")
    if seeds < 1:
        raise ValueError(f"need at least one seed, got {seeds}")
    if suite == "metabelian":
        klass = 2
    solve = _solver(suite, klass)
    report = BenchReport(suite, rank, klass, seed)
    for n in sizes:
        times = []
        for i in range(seeds):
            w = random_word(n, rank, random.Random(f"{seed + i}:{n}"))
            times.append(time_call(solve, w))
        report.rows.append(BenchRow(n, times))
    return report


__all__ = ["BenchReport", "BenchRow", "SUITES", "run_bench", "time_call"]
