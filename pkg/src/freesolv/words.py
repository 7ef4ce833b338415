"""Words over a rank-r alphabet.

A word is a tuple of signed generator indices: ``+k`` is ``x_k`` and ``-k`` is
its inverse.  Words are kept exactly as given; free reduction is explicit.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass
from typing import Iterable

_EXPLICIT_TOKEN = re.compile(r"x(\d+)(\^-1)?")


class WordError(ValueError):
    """Raised for malformed word text or rank mismatches."""


@dataclass(frozen=True)
class Word:
    letters: tuple[int, ...]
    rank: int

    def __post_init__(self):
        if self.rank < 1:
            raise WordError(f"rank must be >= 1, got {self.rank}")
        for g in self.letters:
            if g == 0 or abs(g) > self.rank:
                raise WordError(f"letter {g} out of range for rank {self.rank}")

    def __len__(self):
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __getitem__(self, item):
        if isinstance(item, slice):
            return Word(self.letters[item], self.rank)
        return self.letters[item]

    def __mul__(self, other: Word) -> Word:
        return concat(self, other)

    def __invert__(self) -> Word:
        return invert(self)

    def __str__(self):
        return format_word(self)

    @classmethod
    def identity(cls, rank: int) -> Word:
        return cls((), rank)

    @classmethod
    def of(cls, letters: Iterable[int], rank: int) -> Word:
        return cls(tuple(letters), rank)

    def with_rank(self, rank: int) -> Word:
        """The same letters viewed over a (usually larger) alphabet."""
        return Word(self.letters, rank)


def parse_word(text: str, rank: int) -> Word:
    """Parse compact (``abAB``) or explicit (``x1 x2^-1``) word syntax.

    Compact form uses ``a``..``z`` for ``x1``..``x26`` and capitals for the
    inverses.  Explicit form is whitespace separated ``xK`` / ``xK^-1`` tokens.
    Any digit in the text selects the explicit form.
    """
    text = text.strip()
    if not text:
        return Word((), rank)
    if any(ch.isdigit() for ch in text):
        letters = []
        for tok in text.split():
            m = _EXPLICIT_TOKEN.fullmatch(tok)
            if m is None:
                raise WordError(f"bad token {tok!r} (mixed or unknown syntax)")
            k = int(m.group(1))
            if k == 0:
                raise WordError("generator index 0 is not allowed")
            if k > rank:
                raise WordError(f"generator {k} exceeds rank {rank}")
            letters.append(-k if m.group(2) else k)
        return Word(tuple(letters), rank)
    letters = []
    for ch in text:
        if "a" <= ch <= "z":
            k = ord(ch) - ord("a") + 1
            sign = 1
        elif "A" <= ch <= "Z":
            k = ord(ch) - ord("A") + 1
            sign = -1
        else:
            raise WordError(f"unknown character {ch!r}")
        if k > rank:
            raise WordError(f"generator {k} exceeds rank {rank}")
        letters.append(sign * k)
    return Word(tuple(letters), rank)


def format_word(w: Word, style: str = "auto") -> str:
    """Inverse of :func:`parse_word`.  ``auto`` picks compact when rank <= 26."""
    if style == "auto":
        style = "compact" if w.rank <= 26 else "explicit"
    if style == "compact":
        if w.rank > 26:
            raise WordError("compact syntax needs rank <= 26")
        return "".join(chr(ord("a") + g - 1) if g > 0 else chr(ord("A") - g - 1)
                       for g in w.letters)
    if style == "explicit":
        return " ".join(f"x{g}" if g > 0 else f"x{-g}^-1" for g in w.letters)
    raise ValueError(f"unknown style {style!r}")


def free_reduce(w: Word) -> Word:
    out: list[int] = []
    for g in w.letters:
        if out and out[-1] == -g:
            out.pop()
        else:
            out.append(g)
    return Word(tuple(out), w.rank)


def is_freely_reduced(w: Word) -> bool:
    return all(a != -b for a, b in zip(w.letters, w.letters[1:]))


def invert(w: Word) -> Word:
    return Word(tuple(-g for g in reversed(w.letters)), w.rank)


def concat(u: Word, v: Word) -> Word:
    if u.rank != v.rank:
        raise WordError(f"rank mismatch: {u.rank} != {v.rank}")
    return Word(u.letters + v.letters, u.rank)


def power(w: Word, n: int) -> Word:
    if n < 0:
        return power(invert(w), -n)
    return Word(w.letters * n, w.rank)


def commutator(u: Word, v: Word) -> Word:
    """``[u, v] = u v u^-1 v^-1``."""
    return concat(concat(u, v), concat(invert(u), invert(v)))


def conjugate(w: Word, by: Word) -> Word:
    """``by^-1 w by``."""
    return concat(concat(invert(by), w), by)


def generator(k: int, rank: int) -> Word:
    return Word((k,), rank)


def abelianize(w: Word) -> tuple[int, ...]:
    """Exponent sums of each generator: the image of ``w`` in ``Z^r``."""
    coords = [0] * w.rank
    for g in w.letters:
        if g > 0:
            coords[g - 1] += 1
        else:
            coords[-g - 1] -= 1
    return tuple(coords)


def random_word(length: int, rank: int, rng: random.Random) -> Word:
    """Uniform letters from ``x_1^{+-1}..x_r^{+-1}``; cancellations allowed."""
    alphabet = [k for g in range(1, rank + 1) for k in (g, -g)]
    return Word(tuple(rng.choices(alphabet, k=length)), rank)


def random_reduced_word(length: int, rank: int, rng: random.Random) -> Word:
    letters: list[int] = []
    while len(letters) < length:
        g = rng.randint(1, rank) * rng.choice((1, -1))
        if letters and letters[-1] == -g:
            continue
        letters.append(g)
    return Word(tuple(letters), rank)
