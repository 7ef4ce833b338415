"""Geometric flows on the integer grid ``Z^r``.

The grid is the Cayley graph of the free abelian group.  Edge ``(v, i)`` is
the positively oriented edge ``v -> v + e_i``; traversing it backwards counts
``-1`` on the same key, so only positive edges are stored.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .words import Word, abelianize

Vertex = tuple[int, ...]
GridEdge = tuple[Vertex, int]


class FlowError(ValueError):
    """Input is not a geometric flow, or an Euler walk cannot be formed."""


def step(v: Vertex, axis: int, sign: int = 1) -> Vertex:
    return v[:axis - 1] + (v[axis - 1] + sign,) + v[axis:]


def edge_key(e: GridEdge):
    """Generator index first, then tail vertex lexicographically."""
    return (e[1], e[0])


@dataclass(frozen=True)
class GridFlow:
    rank: int
    source: Vertex
    sink: Vertex
    values: Mapping[GridEdge, int] = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for (v, axis), val in self.values.items():
            if len(v) != self.rank or not 1 <= axis <= self.rank:
                raise FlowError(f"edge {(v, axis)} does not fit rank {self.rank}")
            if val:
                clean[(tuple(v), axis)] = val
        object.__setattr__(self, "values", clean)
        object.__setattr__(self, "source", tuple(self.source))
        object.__setattr__(self, "sink", tuple(self.sink))

    def __getitem__(self, e: GridEdge) -> int:
        return self.values.get(e, 0)

    def __eq__(self, other):
        if not isinstance(other, GridFlow):
            return NotImplemented
        return (self.rank == other.rank and self.source == other.source
                and self.sink == other.sink and self.values == other.values)

    def __hash__(self):
        return hash((self.rank, self.source, self.sink, frozenset(self.values.items())))

    def edges(self) -> list[tuple[GridEdge, int]]:
        return sorted(self.values.items(), key=lambda item: edge_key(item[0]))

    def vertices(self) -> set[Vertex]:
        out = {self.source, self.sink}
        for v, axis in self.values:
            out.add(v)
            out.add(step(v, axis))
        return out

    def total_variation(self) -> int:
        """``sum_e |pi(e)|``."""
        return sum(abs(x) for x in self.values.values())

    def key(self):
        """Hashable canonical form, equal iff the flows are equal."""
        return (self.source, self.sink, frozenset(self.values.items()))

    def to_json(self) -> dict:
        return {
            "rank": self.rank,
            "source": list(self.source),
            "sink": list(self.sink),
            "edges": [{"vertex": list(v), "axis": a, "value": x} for (v, a), x in self.edges()],
        }

    @classmethod
    def from_json(cls, data: dict) -> GridFlow:
        values = {(tuple(e["vertex"]), e["axis"]): e["value"] for e in data["edges"]}
        return cls(data["rank"], tuple(data["source"]), tuple(data["sink"]), values)


def empty_flow(rank: int, at: Vertex | None = None) -> GridFlow:
    at = (0,) * rank if at is None else tuple(at)
    return GridFlow(rank, at, at, {})


def path_flow(w: Word, start: Vertex | None = None) -> GridFlow:
    """Algebraic traversal counts of the path labelled ``w`` from ``start``."""
    r = w.rank
    pos = list(start) if start is not None else [0] * r
    source = tuple(pos)
    values: dict[GridEdge, int] = defaultdict(int)
    for g in w.letters:
        if g > 0:
            values[(tuple(pos), g)] += 1
            pos[g - 1] += 1
        else:
            pos[-g - 1] -= 1
            values[(tuple(pos), -g)] -= 1
    return GridFlow(r, source, tuple(pos), values)


def net_flow(f: GridFlow, v: Vertex) -> int:
    v = tuple(v)
    total = 0
    for axis in range(1, f.rank + 1):
        total += f.values.get((v, axis), 0)
        total -= f.values.get((step(v, axis, -1), axis), 0)
    return total


def net_flows(f: GridFlow) -> dict[Vertex, int]:
    """Nonzero net flows over all vertices touched by the support."""
    out: dict[Vertex, int] = defaultdict(int)
    for (v, axis), x in f.values.items():
        out[v] += x
        out[step(v, axis)] -= x
    return {v: x for v, x in out.items() if x}


def is_circulation(f: GridFlow) -> bool:
    return not net_flows(f)


def is_geometric(f: GridFlow) -> bool:
    """Kirchhoff law away from the terminals plus unit net flow at them."""
    nets = net_flows(f)
    if f.source == f.sink:
        return not nets
    return nets == {f.source: 1, f.sink: -1}


def check_geometric(f: GridFlow):
    if not is_geometric(f):
        raise FlowError("not a geometric flow: Kirchhoff law or terminal net flow violated")


def flow_equal(f: GridFlow, g: GridFlow) -> bool:
    if f.rank != g.rank:
        raise ValueError(f"rank mismatch: {f.rank} != {g.rank}")
    return f == g


def translate_flow(f: GridFlow, by: Vertex) -> GridFlow:
    def sh(v):
        return tuple(a + b for a, b in zip(v, by))
    return GridFlow(f.rank, sh(f.source), sh(f.sink),
                    {(sh(v), a): x for (v, a), x in f.values.items()})


def negate_flow(f: GridFlow) -> GridFlow:
    """Flow of the reversed path: values negated, source and sink swapped."""
    return GridFlow(f.rank, f.sink, f.source, {e: -x for e, x in f.values.items()})


def compose_flows(f: GridFlow, g: GridFlow) -> GridFlow:
    """Groupoid product: pointwise sum, defined when ``f`` ends where ``g`` starts."""
    if f.rank != g.rank:
        raise ValueError(f"rank mismatch: {f.rank} != {g.rank}")
    if f.sink != g.source:
        raise FlowError(f"cannot compose: sink {f.sink} != source {g.source}")
    values = dict(f.values)
    for e, x in g.values.items():
        values[e] = values.get(e, 0) + x
    return GridFlow(f.rank, f.source, g.sink, values)


def add_circulations(f: GridFlow, g: GridFlow) -> GridFlow:
    """Pointwise sum of two circulations (the result keeps ``f``'s base point)."""
    if not (is_circulation(f) and is_circulation(g)):
        raise FlowError("both summands must be circulations")
    values = dict(f.values)
    for e, x in g.values.items():
        values[e] = values.get(e, 0) + x
    return GridFlow(f.rank, f.source, f.source, values)


# --- Euler walks -----------------------------------------------------------

def euler_label(rank: int, source: Vertex, sink: Vertex,
                arcs: Mapping[tuple[Vertex, int], int]) -> Word:
    """Label of a directed Euler walk from ``source`` to ``sink``.

    ``arcs`` maps ``(tail, signed letter)`` to a multiplicity; letter ``+i``
    goes from ``v`` to ``v + e_i`` and ``-i`` from ``v`` to ``v - e_i``.  At
    every vertex the next arc is the smallest remaining letter in the order
    ``(axis, sign)``.  Raises :class:`FlowError` on unbalanced degrees or a
    disconnected arc set.
    """
    out_arcs: dict[Vertex, list[list[int]]] = defaultdict(list)
    balance: dict[Vertex, int] = defaultdict(int)
    total = 0
    for (v, g), mult in arcs.items():
        if mult <= 0:
            continue
        out_arcs[v].append([g, mult])
        balance[v] += mult
        balance[step(v, abs(g), 1 if g > 0 else -1)] -= mult
        total += mult
    for lst in out_arcs.values():
        # popped from the end, so store in descending (axis, sign) order
        lst.sort(key=lambda item: (abs(item[0]), 1 if item[0] > 0 else -1), reverse=True)
    want = {} if source == sink else {source: 1, sink: -1}
    if {v: b for v, b in balance.items() if b} != want:
        raise FlowError("degree balance violated; no Euler walk exists")

    stack: list[Vertex] = [source]
    letter_stack: list[int] = []
    label: list[int] = []
    while stack:
        v = stack[-1]
        lst = out_arcs.get(v)
        if lst:
            item = lst[-1]
            g = item[0]
            item[1] -= 1
            if not item[1]:
                lst.pop()
            stack.append(step(v, abs(g), 1 if g > 0 else -1))
            letter_stack.append(g)
        else:
            stack.pop()
            if letter_stack:
                label.append(letter_stack.pop())
    if len(label) != total:
        raise FlowError("arc set is disconnected; no Euler walk exists")
    label.reverse()
    return Word(tuple(label), rank)


def flow_arcs(f: GridFlow) -> dict[tuple[Vertex, int], int]:
    """Arcs of the replicated multigraph: ``|pi(e)|`` copies along ``sign(pi(e))``."""
    arcs: dict[tuple[Vertex, int], int] = {}
    for (v, axis), x in f.values.items():
        if x > 0:
            arcs[(v, axis)] = arcs.get((v, axis), 0) + x
        else:
            head = step(v, axis)
            arcs[(head, -axis)] = arcs.get((head, -axis), 0) - x
    return arcs


def add_doubled_edges(arcs: dict[tuple[Vertex, int], int], edges: Iterable[GridEdge]):
    """Add one arc in each direction for every edge (connector edges)."""
    for v, axis in edges:
        head = step(v, axis)
        arcs[(v, axis)] = arcs.get((v, axis), 0) + 1
        arcs[(head, -axis)] = arcs.get((head, -axis), 0) + 1


def components(vertices: Iterable[Vertex], edges: Iterable[GridEdge]) -> list[frozenset[Vertex]]:
    """Connected components of the undirected graph, ordered by smallest vertex."""
    parent: dict[Vertex, Vertex] = {}

    def find(x):
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    for v in vertices:
        parent.setdefault(v, v)
    for v, axis in edges:
        u = step(v, axis)
        parent.setdefault(v, v)
        parent.setdefault(u, u)
        a, b = find(v), find(u)
        if a != b:
            parent[max(a, b)] = min(a, b)
    groups: dict[Vertex, set[Vertex]] = defaultdict(set)
    for v in parent:
        groups[find(v)].add(v)
    return sorted((frozenset(g) for g in groups.values()), key=min)


def l_path(a: Vertex, b: Vertex) -> list[GridEdge]:
    """Axis-by-axis monotone grid path from ``a`` to ``b``, as positive edges."""
    out = []
    cur = list(a)
    for i in range(len(a)):
        while cur[i] != b[i]:
            if cur[i] < b[i]:
                out.append((tuple(cur), i + 1))
                cur[i] += 1
            else:
                cur[i] -= 1
                out.append((tuple(cur), i + 1))
    return out


def flow_to_path(f: GridFlow) -> Word:
    """A word whose path flow from ``f.source`` is exactly ``f``.

    Components of the support (with the terminals) are joined to the source
    component by L-shaped connectors, each traversed once in each direction.
    """
    check_geometric(f)
    comps = components([f.source, f.sink], f.values)
    support = set(f.values)
    connectors: set[GridEdge] = set()
    for comp in comps:
        if f.source in comp:
            continue
        for e in l_path(min(comp), f.source):
            if e not in support:
                connectors.add(e)
    arcs = flow_arcs(f)
    add_doubled_edges(arcs, sorted(connectors))
    word = euler_label(f.rank, f.source, f.sink, arcs)
    return word


__all__ = [
    "FlowError",
    "GridEdge",
    "GridFlow",
    "Vertex",
    "add_circulations",
    "check_geometric",
    "components",
    "compose_flows",
    "edge_key",
    "empty_flow",
    "euler_label",
    "flow_arcs",
    "flow_equal",
    "flow_to_path",
    "is_circulation",
    "is_geometric",
    "l_path",
    "negate_flow",
    "net_flow",
    "net_flows",
    "path_flow",
    "step",
    "translate_flow",
]
