"""Word problem and Fox derivatives in free solvable groups ``S_{r,d}``.

Everything is phrased in terms of the prefixes ``w_0 = 1, w_1, ..., w_n = w``
of the input word.  A partition function maps each prefix index to the
smallest index of a prefix equal to it in ``S_{r,c}``; it is refined one
derived-series class at a time.
"""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass
from typing import Iterable, Sequence

from .words import Word, format_word


@dataclass(frozen=True)
class PrefixSet:
    word: Word

    def __len__(self):
        return len(self.word) + 1

    @property
    def n(self) -> int:
        return len(self.word)

    def prefix(self, j: int) -> Word:
        if not 0 <= j <= self.n:
            raise IndexError(f"prefix index {j} out of range 0..{self.n}")
        return self.word[:j]

    def __iter__(self):
        return (self.prefix(j) for j in range(self.n + 1))


def prefix_set(w: Word) -> PrefixSet:
    return PrefixSet(w)


@dataclass(frozen=True)
class PartitionFunction:
    klass: int
    reps: tuple[int, ...]

    def __call__(self, j: int) -> int:
        return self.reps[j]

    def __len__(self):
        return len(self.reps)

    def classes(self) -> dict[int, list[int]]:
        out: dict[int, list[int]] = {}
        for j, p in enumerate(self.reps):
            out.setdefault(p, []).append(j)
        return out

    def refines(self, coarser: PartitionFunction) -> bool:
        """True if every class of ``self`` sits inside one class of ``coarser``."""
        seen: dict[int, int] = {}
        for p, q in zip(self.reps, coarser.reps):
            if seen.setdefault(p, q) != q:
                return False
        return True


def trivial_partition(D: PrefixSet) -> PartitionFunction:
    return PartitionFunction(0, tuple(range(D.n + 1)))


def abelian_partition(D: PrefixSet) -> PartitionFunction:
    first: dict[tuple[int, ...], int] = {}
    pos = [0] * D.word.rank
    reps = [first.setdefault(tuple(pos), 0)]
    for j, g in enumerate(D.word.letters, start=1):
        if g > 0:
            pos[g - 1] += 1
        else:
            pos[-g - 1] -= 1
        reps.append(first.setdefault(tuple(pos), j))
    return PartitionFunction(1, tuple(reps))


class _Collector:
    """Collecting similar terms with a reusable scratch array.

    ``scratch`` is indexed by representative; ``touched`` records which slots
    are dirty so a reset costs only the number of terms collected.
    """

    def __init__(self, size: int):
        self.scratch = [0] * size
        self.touched: list[int] = []

    def add(self, rep: int, coeff: int):
        if not self.scratch[rep]:
            self.touched.append(rep)
        self.scratch[rep] += coeff

    def is_zero_and_reset(self) -> bool:
        scratch = self.scratch
        zero = True
        for rep in self.touched:
            if scratch[rep]:
                zero = False
            scratch[rep] = 0
        self.touched.clear()
        return zero

    def collect_and_reset(self) -> dict[int, int]:
        scratch = self.scratch
        out = {}
        for rep in self.touched:
            if scratch[rep]:
                out[rep] = scratch[rep]
            scratch[rep] = 0
        self.touched.clear()
        return dict(sorted(out.items()))


def collect_similar_terms(signed_indices: Iterable[tuple[int, int]],
                          P: PartitionFunction) -> dict[int, int]:
    """Replace each prefix index by its representative and sum coefficients.

    Returns ``{representative: coefficient}`` without zero totals, sorted by
    representative.
    """
    collector = _Collector(len(P.reps))
    reps = P.reps
    for sign, j in signed_indices:
        if not 0 <= j < len(reps):
            raise IndexError(f"prefix index {j} out of range")
        collector.add(reps[j], sign)
    return collector.collect_and_reset()


def _fox_terms(w: Word, k: int, lo: int = 0, hi: int | None = None) -> list[tuple[int, int]]:
    """Signed prefix indices of ``dw/dx_k`` restricted to letters ``lo < j <= hi``.

    A positive letter at position ``j`` contributes ``+w_{j-1}``, a negative
    one ``-w_j``.
    """
    hi = len(w) if hi is None else hi
    out = []
    for j in range(lo + 1, hi + 1):
        g = w.letters[j - 1]
        if g == k:
            out.append((1, j - 1))
        elif g == -k:
            out.append((-1, j))
    return out


def derivative_difference_is_zero(D: PrefixSet, P_prev: PartitionFunction,
                                  s: int, t: int, k: int) -> bool:
    """Decide ``dw_s/dx_k == dw_t/dx_k`` in the group ring of ``S_{r,c-1}``.

    Requires ``s <= t`` and ``P_prev(s) == P_prev(t)``.  The difference
    telescopes to the letters ``s < j <= t`` only.
    """
    if not 0 <= s <= t <= D.n:
        raise ValueError(f"need 0 <= s <= t <= {D.n}, got s={s}, t={t}")
    if P_prev.reps[s] != P_prev.reps[t]:
        raise ValueError(f"prefixes {s} and {t} differ in class {P_prev.klass}")
    if not 1 <= k <= D.word.rank:
        raise ValueError(f"generator {k} out of range")
    # difference is minus the Fox terms of the segment
    terms = [(-sign, j) for sign, j in _fox_terms(D.word, k, s, t)]
    return not collect_similar_terms(terms, P_prev)


class _Refiner:
    """Per-word state shared by all refinement steps."""

    def __init__(self, w: Word):
        self.w = w
        n = len(w)
        self.n = n
        r = w.rank
        # per generator: letter positions j (1-based), their term index and sign
        self.positions: list[list[int]] = [[] for _ in range(r + 1)]
        self.term_index: list[list[int]] = [[] for _ in range(r + 1)]
        self.term_sign: list[list[int]] = [[] for _ in range(r + 1)]
        for j, g in enumerate(w.letters, start=1):
            k = abs(g)
            self.positions[k].append(j)
            if g > 0:
                self.term_index[k].append(j - 1)
                self.term_sign[k].append(-1)
            else:
                self.term_index[k].append(j)
                self.term_sign[k].append(1)
        self.collector = _Collector(n + 1)

    def equal_next(self, reps: Sequence[int], s: int, t: int) -> bool:
        """``w_s == w_t`` one class up, given they agree under ``reps``."""
        collector = self.collector
        scratch = collector.scratch
        touched = collector.touched
        for k in range(1, self.w.rank + 1):
            pos = self.positions[k]
            a = bisect_right(pos, s)
            b = bisect_right(pos, t)
            if a == b:
                continue
            idx = self.term_index[k]
            sgn = self.term_sign[k]
            for m in range(a, b):
                rep = reps[idx[m]]
                if not scratch[rep]:
                    touched.append(rep)
                scratch[rep] += sgn[m]
            if not collector.is_zero_and_reset():
                return False
        return True

    def refine(self, P_prev: PartitionFunction) -> PartitionFunction:
        reps_prev = P_prev.reps
        new = list(range(self.n + 1))
        for members in P_prev.classes().values():
            if len(members) == 1:
                continue
            subreps: list[int] = []
            for m in members:
                for sr in subreps:
                    if self.equal_next(reps_prev, sr, m):
                        new[m] = sr
                        break
                else:
                    subreps.append(m)
                    new[m] = m
        return PartitionFunction(P_prev.klass + 1, tuple(new))


def partition_chain(w: Word, d: int) -> list[PartitionFunction]:
    """Partitions of the prefixes of ``w`` for classes ``0..d``."""
    if d < 0:
        raise ValueError(f"class must be >= 0, got {d}")
    D = PrefixSet(w)
    chain = [trivial_partition(D)]
    if d == 0:
        return chain
    chain.append(abelian_partition(D))
    if d >= 2:
        refiner = _Refiner(w)
        for _ in range(2, d + 1):
            prev = chain[-1]
            if all(p == j for j, p in enumerate(prev.reps)):
                # already discrete: nothing left to split
                chain.append(PartitionFunction(prev.klass + 1, prev.reps))
            else:
                chain.append(refiner.refine(prev))
    return chain


def partition(w: Word, d: int) -> PartitionFunction:
    """The ``S_{r,d}``-partition of the prefixes of ``w``."""
    if d < 1:
        raise ValueError(f"class must be >= 1, got {d}")
    return partition_chain(w, d)[-1]


def wp_solvable(w: Word, d: int) -> bool:
    """True iff ``w`` is the identity of ``S_{r,d} = F_r / F_r^{(d)}``."""
    P = partition(w, d)
    return P.reps[0] == P.reps[-1]


@dataclass(frozen=True)
class SolvableRingElement:
    """An element of the group ring of ``S_{r,c}`` written over prefixes of a word.

    ``terms`` holds ``(coefficient, prefix index)`` pairs; each index is a
    partition representative, so distinct indices are distinct group elements.
    """

    klass: int
    terms: tuple[tuple[int, int], ...]
    word: Word | None = None

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def as_dict(self) -> dict[int, int]:
        return {j: c for c, j in self.terms}

    def prefix_word(self, j: int) -> Word:
        if self.word is None:
            raise ValueError("no prefix context attached")
        return self.word[:j]

    def __str__(self):
        if not self.terms:
            return "0"
        out = []
        for c, j in self.terms:
            label = format_word(self.prefix_word(j)) if self.word is not None else f"w_{j}"
            label = label or "1"
            mag = abs(c)
            body = label if mag == 1 else f"{mag}*{label}"
            if not out:
                out.append(("-" if c < 0 else "") + body)
            else:
                out.append(("- " if c < 0 else "+ ") + body)
        return " ".join(out)

    def to_json(self) -> dict:
        return {
            "class": self.klass,
            "terms": [
                {
                    "coeff": c,
                    "prefix_index": j,
                    "prefix_word": format_word(self.prefix_word(j)) if self.word is not None else None,
                }
                for c, j in self.terms
            ],
        }

    @classmethod
    def from_json(cls, data: dict, word: Word | None = None) -> SolvableRingElement:
        terms = tuple((t["coeff"], t["prefix_index"]) for t in data["terms"])
        if word is not None:
            for t in data["terms"]:
                if t.get("prefix_word") is not None and \
                        t["prefix_word"] != format_word(word[:t["prefix_index"]]):
                    raise ValueError(f"prefix word mismatch at index {t['prefix_index']}")
        return cls(data["class"], terms, word)


def fox_from_partition(w: Word, P: PartitionFunction, k: int) -> SolvableRingElement:
    if not 1 <= k <= w.rank:
        raise ValueError(f"generator {k} out of range for rank {w.rank}")
    collected = collect_similar_terms(_fox_terms(w, k), P)
    return SolvableRingElement(P.klass, tuple((c, j) for j, c in collected.items()), w)


def fox_solvable(w: Word, d: int, k: int) -> SolvableRingElement:
    """``dw/dx_k`` in the group ring of ``S_{r,d}``, in standard form."""
    return fox_from_partition(w, partition(w, d), k)


__all__ = [
    "PartitionFunction",
    "PrefixSet",
    "SolvableRingElement",
    "abelian_partition",
    "collect_similar_terms",
    "derivative_difference_is_zero",
    "fox_from_partition",
    "fox_solvable",
    "partition",
    "partition_chain",
    "prefix_set",
    "trivial_partition",
    "wp_solvable",
]
