"""Fox derivatives over the integral group ring of the free abelian group.

All ``r`` derivatives of a word are stored together in one sparse map keyed by
``(generator, exponent vector)``.  Keys are packed into a single integer: the
generator index occupies the top bits, followed by the coordinates of the
exponent vector (first coordinate most significant), each shifted by ``|w|`` so
that it is non-negative and fits in a fixed bit width.  Integer order of packed
keys is therefore generator-major, then lexicographic in the exponent vector.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Mapping

from .words import Word, abelianize

Vector = tuple[int, ...]


def _add(a: Vector, b: Vector) -> Vector:
    return tuple(x + y for x, y in zip(a, b))


def _neg(a: Vector) -> Vector:
    return tuple(-x for x in a)


def unit_vector(i: int, rank: int) -> Vector:
    return tuple(1 if j == i - 1 else 0 for j in range(rank))


def format_monomial(delta: Vector) -> str:
    parts = []
    for j, e in enumerate(delta, start=1):
        if e == 1:
            parts.append(f"x{j}")
        elif e:
            parts.append(f"x{j}^{e}")
    return "".join(parts)


class AbelianRingElement:
    """An element of ``Z[Z^r]``: a finite map exponent-vector -> nonzero int."""

    __slots__ = ("rank", "_terms")

    def __init__(self, rank: int, terms: Mapping[Vector, int] | None = None):
        self.rank = rank
        self._terms: dict[Vector, int] = {}
        if terms:
            for delta, c in terms.items():
                if len(delta) != rank:
                    raise ValueError(f"exponent vector {delta} has wrong rank")
                if c:
                    self._terms[tuple(delta)] = c

    @classmethod
    def zero(cls, rank: int) -> AbelianRingElement:
        return cls(rank)

    @classmethod
    def one(cls, rank: int) -> AbelianRingElement:
        return cls(rank, {(0,) * rank: 1})

    @classmethod
    def monomial(cls, delta: Vector, coeff: int = 1) -> AbelianRingElement:
        return cls(len(delta), {tuple(delta): coeff})

    @classmethod
    def generator(cls, i: int, rank: int) -> AbelianRingElement:
        return cls.monomial(unit_vector(i, rank))

    @property
    def terms(self) -> dict[Vector, int]:
        return dict(self._terms)

    def items(self) -> list[tuple[Vector, int]]:
        return sorted(self._terms.items())

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    def __getitem__(self, delta: Vector) -> int:
        return self._terms.get(tuple(delta), 0)

    def __eq__(self, other):
        if isinstance(other, AbelianRingElement):
            return self.rank == other.rank and self._terms == other._terms
        if other == 0:
            return not self._terms
        return NotImplemented

    def __hash__(self):
        return hash((self.rank, frozenset(self._terms.items())))

    def _check(self, other: AbelianRingElement):
        if self.rank != other.rank:
            raise ValueError(f"rank mismatch: {self.rank} != {other.rank}")

    def __add__(self, other: AbelianRingElement) -> AbelianRingElement:
        self._check(other)
        out = dict(self._terms)
        for delta, c in other._terms.items():
            v = out.get(delta, 0) + c
            if v:
                out[delta] = v
            else:
                del out[delta]
        return AbelianRingElement(self.rank, out)

    def __neg__(self) -> AbelianRingElement:
        return AbelianRingElement(self.rank, {d: -c for d, c in self._terms.items()})

    def __sub__(self, other: AbelianRingElement) -> AbelianRingElement:
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return AbelianRingElement(self.rank, {d: c * other for d, c in self._terms.items()})
        self._check(other)
        out: dict[Vector, int] = {}
        for d1, c1 in self._terms.items():
            for d2, c2 in other._terms.items():
                d = _add(d1, d2)
                out[d] = out.get(d, 0) + c1 * c2
        return AbelianRingElement(self.rank, out)

    __rmul__ = __mul__

    def translate(self, delta: Vector) -> AbelianRingElement:
        """Left multiplication by the group element with exponent vector ``delta``."""
        return AbelianRingElement(self.rank, {_add(d, delta): c for d, c in self._terms.items()})

    def __repr__(self):
        return f"AbelianRingElement({self})"

    def __str__(self):
        if not self._terms:
            return "0"
        out = []
        for delta, c in self.items():
            mono = format_monomial(delta)
            mag = abs(c)
            body = mono if mag == 1 and mono else (f"{mag}{mono}" if mono else f"{mag}")
            if not out:
                out.append(("-" if c < 0 else "") + body)
            else:
                out.append(("- " if c < 0 else "+ ") + body)
        return " ".join(out)

    def to_json(self) -> list[dict]:
        return [{"delta": list(d), "coeff": c} for d, c in self.items()]

    @classmethod
    def from_json(cls, data: list[dict], rank: int) -> AbelianRingElement:
        return cls(rank, {tuple(t["delta"]): t["coeff"] for t in data})


@dataclass(frozen=True)
class _Packing:
    rank: int
    offset: int
    width: int

    @classmethod
    def for_length(cls, rank: int, n: int) -> _Packing:
        return cls(rank, n, max(1, (2 * n).bit_length()))

    def step(self, i: int) -> int:
        return 1 << ((self.rank - i) * self.width)

    def gen_base(self, i: int) -> int:
        return (i - 1) << (self.rank * self.width)

    def origin(self) -> int:
        return sum(self.offset << (j * self.width) for j in range(self.rank))

    def decode(self, key: int) -> tuple[Vector, int]:
        mask = (1 << self.width) - 1
        coords = []
        for j in range(self.rank - 1, -1, -1):
            coords.append(((key >> (j * self.width)) & mask) - self.offset)
        return tuple(coords), (key >> (self.rank * self.width)) + 1

    def encode(self, delta: Vector, i: int) -> int:
        key = self.gen_base(i)
        for j, e in enumerate(delta, start=1):
            if abs(e) > self.offset:
                raise OverflowError(f"coordinate {e} exceeds packing bound {self.offset}")
            key |= (e + self.offset) << ((self.rank - j) * self.width)
        return key


@dataclass(frozen=True)
class AbelianDerivativeMap:
    """All abelianized Fox derivatives of a word, restricted to their support.

    Maps ``(delta, i)`` to the coefficient of the monomial ``x^delta`` in
    ``(dw/dx_i)^mu``.  Iteration is in key order: generator index first, then
    the exponent vector lexicographically.
    """

    rank: int
    _packing: _Packing = field(repr=False)
    _entries: dict[int, int] = field(repr=False)

    def __len__(self):
        return len(self._entries)

    def is_empty(self) -> bool:
        return not self._entries

    def __iter__(self) -> Iterator[tuple[Vector, int, int]]:
        decode = self._packing.decode
        for key in sorted(self._entries):
            delta, i = decode(key)
            yield delta, i, self._entries[key]

    def get(self, delta: Vector, i: int) -> int:
        try:
            key = self._packing.encode(delta, i)
        except OverflowError:
            return 0
        return self._entries.get(key, 0)

    def as_dict(self) -> dict[tuple[Vector, int], int]:
        return {(delta, i): c for delta, i, c in self}

    def __eq__(self, other):
        if not isinstance(other, AbelianDerivativeMap):
            return NotImplemented
        return self.rank == other.rank and self.as_dict() == other.as_dict()

    def __hash__(self):
        return hash((self.rank, frozenset(self.as_dict().items())))

    def to_json(self) -> list[dict]:
        return [{"delta": list(d), "gen": i, "coeff": c} for d, i, c in self]

    @classmethod
    def from_entries(cls, rank: int, entries: Mapping[tuple[Vector, int], int]) -> AbelianDerivativeMap:
        bound = max((abs(e) for (d, _), _c in entries.items() for e in d), default=0)
        packing = _Packing.for_length(rank, bound)
        data = {}
        for (delta, i), c in entries.items():
            if not 1 <= i <= rank:
                raise ValueError(f"generator {i} out of range for rank {rank}")
            if c:
                data[packing.encode(tuple(delta), i)] = c
        return cls(rank, packing, data)

    @classmethod
    def from_json(cls, data: list[dict], rank: int) -> AbelianDerivativeMap:
        return cls.from_entries(rank, {(tuple(t["delta"]), t["gen"]): t["coeff"] for t in data})


def fox_abelian(w: Word) -> AbelianDerivativeMap:
    """Compute every ``(dw/dx_i)^mu`` in ``Z[Z^r]`` in one left-to-right pass.

    A positive letter ``x_i`` adds ``+1`` at the current position before
    stepping; a negative letter steps back first and then adds ``-1``.
    """
    r = w.rank
    packing = _Packing.for_length(r, len(w))
    step = [0] + [packing.step(i) for i in range(1, r + 1)]
    base = [0] + [packing.gen_base(i) for i in range(1, r + 1)]
    pos = packing.origin()
    entries: dict[int, int] = {}
    get = entries.get
    for g in w.letters:
        if g > 0:
            key = base[g] | pos
            v = get(key, 0) + 1
            pos += step[g]
        else:
            pos -= step[-g]
            key = base[-g] | pos
            v = get(key, 0) - 1
        if v:
            entries[key] = v
        else:
            del entries[key]
    return AbelianDerivativeMap(r, packing, entries)


def wp_metabelian(w: Word) -> bool:
    """True iff ``w`` is the identity of the free metabelian group ``M_r``."""
    return fox_abelian(w).is_empty()


def derivative_as_ring_element(m: AbelianDerivativeMap, i: int) -> AbelianRingElement:
    if not 1 <= i <= m.rank:
        raise ValueError(f"generator {i} out of range for rank {m.rank}")
    return AbelianRingElement(m.rank, {delta: c for delta, g, c in m if g == i})


def abelian_image(w: Word) -> AbelianRingElement:
    """``w^mu`` as a monomial of ``Z[Z^r]``."""
    return AbelianRingElement.monomial(abelianize(w))


def translate_map(m: AbelianDerivativeMap, delta: Vector) -> AbelianDerivativeMap:
    return AbelianDerivativeMap.from_entries(
        m.rank, {(_add(d, delta), i): c for d, i, c in m})


def add_maps(a: AbelianDerivativeMap, b: AbelianDerivativeMap) -> AbelianDerivativeMap:
    out = a.as_dict()
    for key, c in b.as_dict().items():
        out[key] = out.get(key, 0) + c
    return AbelianDerivativeMap.from_entries(a.rank, out)


__all__ = [
    "AbelianDerivativeMap",
    "AbelianRingElement",
    "abelian_image",
    "add_maps",
    "derivative_as_ring_element",
    "format_monomial",
    "fox_abelian",
    "translate_map",
    "unit_vector",
    "wp_metabelian",
]
