"""Reduction of the rectilinear Steiner tree problem to bounded geodesic length in ``M_2``.

A point ``(s, t)`` becomes the conjugated commutator
``x1^s x2^t (x2 x1 x2^-1 x1^-1) x2^-t x1^-s`` whose flow is a unit square with
lower-left corner ``(s, t)``.  Scaling the point set by ``10n`` makes the
squares far enough apart that the geodesic length of the product pins down
the Steiner size: ``l(w) in [20n s(A), 20n s(A) + 4n]``.  Because the
slack ``4n`` is smaller than the gap ``20n`` between consecutive sizes,
``s(A) < k`` holds exactly when ``l(w) < 20nk``.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .flows import path_flow
from .geodesic import bglp, support_components
from .words import Word, commutator, concat, generator, invert, power


def square_word(s: int, t: int) -> Word:
    x1, x2 = generator(1, 2), generator(2, 2)
    shift = concat(power(x1, s), power(x2, t))
    return concat(concat(shift, commutator(x2, x1)), invert(shift))


def scaled_points(points: Iterable[Sequence[int]]) -> list[tuple[int, int]]:
    """``10n (A - b)`` with ``b`` the lexicographically smallest point, sorted."""
    pts = [tuple(p) for p in points]
    if not pts:
        raise ValueError("need at least one point")
    if len(set(pts)) != len(pts):
        raise ValueError("duplicate points")
    n = len(pts)
    b, c = min(pts)
    return sorted((10 * n * (x - b), 10 * n * (y - c)) for x, y in pts)


def rstp_encode(points: Iterable[Sequence[int]], *, check: bool = True) -> Word:
    """The word ``w_{A*}``; with ``check`` its flow is verified to be ``n`` separate unit squares."""
    scaled = scaled_points(points)
    w = Word((), 2)
    for s, t in scaled:
        w = concat(w, square_word(s, t))
    if check:
        comps = support_components(path_flow(w)).components
        corners = sorted(min(c.vertices) for c in comps)
        if corners != scaled or any(len(c.edges) != 4 for c in comps):
            raise AssertionError("encoded squares are not separated")
    return w


def rstp_threshold(n: int, k: int) -> int:
    """Largest geodesic length compatible with ``s(A) < k``.

    Cutting at ``20nk + 4n`` instead would accept ``s(A) == k`` whenever the
    squares' corners save any edges.
    """
    return 20 * n * k - 1


def rstp_decide(points: Iterable[Sequence[int]], k: int, **limits) -> bool:
    """Decide ``s(A) < k`` through the geodesic length of ``w_{A*}``."""
    pts = [tuple(p) for p in points]
    if k <= 0:
        return False
    w = rstp_encode(pts)
    return bglp(w, rstp_threshold(len(pts), k), **limits)


__all__ = ["rstp_decide", "rstp_encode", "rstp_threshold", "scaled_points", "square_word"]
