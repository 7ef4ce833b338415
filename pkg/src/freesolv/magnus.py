"""Images of words under the Magnus embedding.

The image of ``w`` in ``S_{r,d}`` is the 2x2 matrix with ``w^mu`` on the
diagonal (``mu`` onto ``S_{r,d-1}``) and the row ``sum_i (dw/dx_i)^mu t_i``.
With an abelian base (``d = 2``) images form a group under the wreath-product
law and can be multiplied; for ``d >= 3`` only construction and identity /
equality tests are provided.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from .abelian_fox import AbelianRingElement, derivative_as_ring_element, fox_abelian
from .solvable import SolvableRingElement, fox_from_partition, partition, wp_solvable
from .words import Word, abelianize, concat, invert

RingElement = Union[AbelianRingElement, SolvableRingElement]


class UnsupportedClassError(ValueError):
    """Matrix arithmetic needs an abelian base group (class 2)."""


@dataclass(frozen=True)
class MagnusImage:
    klass: int
    word: Word
    diagonal: object  # exponent vector for d == 2, representative index otherwise
    rows: tuple[RingElement, ...]

    @property
    def rank(self) -> int:
        return self.word.rank

    def to_json(self) -> dict:
        if self.klass == 2:
            diagonal = list(self.diagonal)
            rows = [row.to_json() for row in self.rows]
        else:
            diagonal = {"prefix_index": self.diagonal, "trivial": self.diagonal == 0}
            rows = [row.to_json() for row in self.rows]
        return {"class": self.klass, "diagonal": diagonal, "rows": rows}

    @classmethod
    def from_json(cls, data: dict, word: Word) -> MagnusImage:
        if data["class"] == 2:
            rows = tuple(AbelianRingElement.from_json(r, word.rank) for r in data["rows"])
            return cls(2, word, tuple(data["diagonal"]), rows)
        rows = tuple(SolvableRingElement.from_json(r, word) for r in data["rows"])
        return cls(data["class"], word, data["diagonal"]["prefix_index"], rows)


def magnus_image(w: Word, d: int = 2) -> MagnusImage:
    if d < 2:
        raise ValueError(f"class must be >= 2, got {d}")
    if d == 2:
        m = fox_abelian(w)
        rows = tuple(derivative_as_ring_element(m, i) for i in range(1, w.rank + 1))
        return MagnusImage(2, w, abelianize(w), rows)
    P = partition(w, d - 1)
    rows = tuple(fox_from_partition(w, P, k) for k in range(1, w.rank + 1))
    return MagnusImage(d, w, P.reps[-1], rows)


def magnus_identity(rank: int, d: int = 2) -> MagnusImage:
    return magnus_image(Word((), rank), d)


def magnus_multiply(a: MagnusImage, b: MagnusImage) -> MagnusImage:
    """Wreath-product law ``(g, t)(g', t') = (g g', t + g t')`` at class 2."""
    if a.klass != 2 or b.klass != 2:
        raise UnsupportedClassError(
            f"multiplication needs class 2 images, got {a.klass} and {b.klass}")
    if a.rank != b.rank:
        raise ValueError(f"rank mismatch: {a.rank} != {b.rank}")
    diagonal = tuple(x + y for x, y in zip(a.diagonal, b.diagonal))
    rows = tuple(ra + rb.translate(a.diagonal) for ra, rb in zip(a.rows, b.rows))
    return MagnusImage(2, concat(a.word, b.word), diagonal, rows)


def magnus_is_identity(a: MagnusImage) -> bool:
    if a.klass == 2:
        trivial_diagonal = not any(a.diagonal)
    else:
        trivial_diagonal = a.diagonal == 0
    return trivial_diagonal and all(row.is_zero() for row in a.rows)


def magnus_equal(a: MagnusImage, b: MagnusImage) -> bool:
    """Equality of images; at class >= 3 decided through the kernel property."""
    if a.klass != b.klass:
        raise ValueError(f"class mismatch: {a.klass} != {b.klass}")
    if a.klass == 2:
        return a.diagonal == b.diagonal and a.rows == b.rows
    return wp_solvable(concat(a.word, invert(b.word)), a.klass)


__all__ = [
    "MagnusImage",
    "UnsupportedClassError",
    "magnus_equal",
    "magnus_identity",
    "magnus_image",
    "magnus_is_identity",
    "magnus_multiply",
]
