"""Geodesic words and lengths in the free metabelian group ``M_r``.

Two words are equal in ``M_r`` exactly when their grid flows agree, so a
shortest representative is a shortest closed (or source-to-sink) walk that
realizes the flow.  Such a walk traverses every support edge ``|pi(e)|`` times
and every edge of a minimal connecting forest twice, which gives the length
``sum_e |pi(e)| + 2|Q|``.  Finding the forest is a Steiner problem between the
connected pieces of the support; it is solved exactly within a budget and by
a spanning-tree 2-approximation beyond it.
"""

from __future__ import annotations

from dataclasses import dataclass
from .flows import (
    FlowError,
    GridEdge,
    GridFlow,
    Vertex,
    add_doubled_edges,
    components,
    edge_key,
    euler_label,
    flow_arcs,
    path_flow,
)
from .steiner import (
    DEFAULT_VERTEX_LIMIT,
    ExactLimitError,
    exact_connector,
    mst_connector,
    mst_weight,
)
from .words import Word, format_word, free_reduce, is_freely_reduced, parse_word


class UndecidedError(RuntimeError):
    """The bounded question cannot be settled within the exact-solver budget."""


@dataclass(frozen=True)
class Component:
    vertices: frozenset[Vertex]
    edges: frozenset[GridEdge]


@dataclass(frozen=True)
class SupportGraph:
    rank: int
    components: tuple[Component, ...]

    def __len__(self):
        return len(self.components)

    def vertex_groups(self) -> list[frozenset[Vertex]]:
        return [c.vertices for c in self.components]


@dataclass(frozen=True)
class Forest:
    edges: frozenset[GridEdge]
    exact: bool

    def __len__(self):
        return len(self.edges)

    def sorted_edges(self) -> list[GridEdge]:
        return sorted(self.edges, key=edge_key)


@dataclass(frozen=True)
class GeodesicResult:
    word: Word
    length: int
    forest: Forest
    exact: bool

    def to_json(self) -> dict:
        return {
            "word": format_word(self.word),
            "length": self.length,
            "forest_edges": [{"vertex": list(v), "axis": a} for v, a in self.forest.sorted_edges()],
            "exact": self.exact,
            "rank": self.word.rank,
        }

    @classmethod
    def from_json(cls, data: dict, rank: int | None = None) -> GeodesicResult:
        rank = data.get("rank", rank)
        if rank is None:
            raise ValueError("rank is needed to parse the geodesic word")
        forest = Forest(frozenset((tuple(e["vertex"]), e["axis"]) for e in data["forest_edges"]),
                        data["exact"])
        return cls(parse_word(data["word"], rank), data["length"], forest, data["exact"])


def support_components(f: GridFlow) -> SupportGraph:
    """Connected pieces of ``supp(f)`` together with the source and sink."""
    comps = components([f.source, f.sink], f.values)
    first = {}
    for i, comp in enumerate(comps):
        for v in comp:
            first[v] = i
    grouped: list[set[GridEdge]] = [set() for _ in comps]
    for e in f.values:
        grouped[first[e[0]]].add(e)
    return SupportGraph(f.rank, tuple(Component(c, frozenset(g)) for c, g in zip(comps, grouped)))


def minimal_forest(g: SupportGraph, mode: str = "exact", *,
                   terminal_limit: int | None = None,
                   vertex_limit: int = DEFAULT_VERTEX_LIMIT) -> Forest:
    """Fewest zero-flow edges that connect all pieces of the support graph.

    ``mode`` is ``exact`` (raises :class:`ExactLimitError` past the budget),
    ``approximate`` (spanning tree over component distances, at most twice
    optimal) or ``auto`` (exact when the budget allows).
    """
    groups = g.vertex_groups()
    if len(groups) <= 1:
        return Forest(frozenset(), True)
    if mode not in ("exact", "approximate", "auto"):
        raise ValueError(f"unknown mode {mode!r}")
    if mode != "approximate":
        try:
            edges = exact_connector(groups, g.rank, terminal_limit=terminal_limit,
                                    vertex_limit=vertex_limit)
            return Forest(frozenset(edges), True)
        except ExactLimitError:
            if mode == "exact":
                raise
    return Forest(frozenset(mst_connector(groups)), False)


def euler_word(f: GridFlow, q: Forest) -> Word:
    """Label of an Euler walk through the support (with multiplicity) plus ``q``.

    Support edges are followed ``|pi(e)|`` times in the direction of their sign;
    forest edges once each way.  Ties are broken as in :func:`euler_label`.
    """
    support = set(f.values)
    overlap = support & q.edges
    if overlap:
        raise FlowError(f"forest edges overlap the support: {sorted(overlap)[:3]}")
    arcs = flow_arcs(f)
    add_doubled_edges(arcs, q.sorted_edges())
    return euler_label(f.rank, f.source, f.sink, arcs)


def geodesic(w: Word, mode: str = "auto", *, terminal_limit: int | None = None,
             vertex_limit: int = DEFAULT_VERTEX_LIMIT) -> GeodesicResult:
    """A shortest word equal to ``w`` in ``M_r``.

    ``exact`` on the result is false when the forest came from the
    approximation, in which case the word is only an upper bound.
    """
    f = path_flow(w)
    g = support_components(f)
    q = minimal_forest(g, mode, terminal_limit=terminal_limit, vertex_limit=vertex_limit)
    label = euler_word(f, q)
    length = f.total_variation() + 2 * len(q)
    if len(label) != length:
        raise AssertionError(f"Euler label has length {len(label)}, expected {length}")
    if not is_freely_reduced(label):
        # would contradict optimality of the forest
        raise AssertionError(f"Euler label {format_word(label)} is not freely reduced "
                             f"(reduces to {format_word(free_reduce(label))})")
    return GeodesicResult(label, length, q, q.exact)


def geodesic_length(w: Word, mode: str = "auto", **limits) -> int:
    return geodesic(w, mode, **limits).length


def length_bounds(w: Word) -> tuple[int, int]:
    """Certified ``(lower, upper)`` bounds on the geodesic length without the exact solver."""
    f = path_flow(w)
    groups = support_components(f).vertex_groups()
    base = f.total_variation()
    mst = mst_weight(groups)
    upper = base + 2 * len(mst_connector(groups))
    lower = base + 2 * ((mst + 1) // 2)
    return lower, upper


def bglp(w: Word, k: int, **limits) -> bool:
    """Decide ``l(w) <= k`` in ``M_r``.

    Uses the exact geodesic when the budget allows.  Otherwise answers only if
    the certified bounds already settle the question, and raises
    :class:`UndecidedError` if they do not.
    """
    if k < 0:
        raise ValueError(f"bound must be >= 0, got {k}")
    try:
        return geodesic(w, "exact", **limits).length <= k
    except ExactLimitError as exc:
        lower, upper = length_bounds(w)
        if upper <= k:
            return True
        if lower > k:
            return False
        raise UndecidedError(f"l(w) lies in [{lower}, {upper}], bound {k}: {exc}") from exc


__all__ = [
    "Component",
    "Forest",
    "GeodesicResult",
    "SupportGraph",
    "UndecidedError",
    "bglp",
    "euler_word",
    "geodesic",
    "geodesic_length",
    "length_bounds",
    "minimal_forest",
    "support_components",
]
