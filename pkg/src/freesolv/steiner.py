"""Rectilinear Steiner trees between groups of grid vertices.

Each terminal is a *set* of vertices (a connected piece of the grid that is
already paid for); it is contracted to a single node.  Candidate Steiner
vertices come from a lattice built on the terminal coordinates: the Hanan
grid in the plane, or the full bounding box in higher rank (clamping a tree
into the bounding box never increases its size).  The optimum on that lattice
is found with the Dreyfus-Wagner subset dynamic program.
"""

from __future__ import annotations

import heapq
import os
from dataclasses import dataclass
from itertools import product
from typing import Iterable, Sequence

from .flows import GridEdge, Vertex, edge_key, l_path, step

DEFAULT_TERMINAL_LIMIT = 10
DEFAULT_VERTEX_LIMIT = 10_000
ENV_TERMINAL_LIMIT = "FREESOLV_EXACT_LIMIT"


class ExactLimitError(RuntimeError):
    """The instance is larger than the configured exact-solver budget."""


def default_terminal_limit() -> int:
    value = os.environ.get(ENV_TERMINAL_LIMIT)
    return int(value) if value else DEFAULT_TERMINAL_LIMIT


@dataclass
class _Lattice:
    n_nodes: int
    adj: list[list[tuple[int, int, int]]]  # (neighbour, weight, edge id)
    realization: list[list[GridEdge]]
    weights: list[int]


def _lattice(groups: Sequence[frozenset[Vertex]], rank: int, hanan: bool,
             vertex_limit: int) -> _Lattice:
    coords: list[list[int]] = []
    for axis in range(rank):
        values = {v[axis] for g in groups for v in g}
        if hanan:
            coords.append(sorted(values))
        else:
            coords.append(list(range(min(values), max(values) + 1)))
    size = 1
    for c in coords:
        size *= len(c)
    if size > vertex_limit:
        raise ExactLimitError(f"lattice has {size} vertices, limit is {vertex_limit}")

    owner: dict[Vertex, int] = {}
    for gi, g in enumerate(groups):
        for v in g:
            owner[v] = gi
    node_of: dict[Vertex, int] = {}
    n_nodes = len(groups)
    for p in product(*coords):
        if p in owner:
            node_of[p] = owner[p]
        else:
            node_of[p] = n_nodes
            n_nodes += 1

    index = [{x: i for i, x in enumerate(c)} for c in coords]
    best: dict[tuple[int, int], tuple[int, int, Vertex]] = {}
    for p in product(*coords):
        u = node_of[p]
        for axis in range(rank):
            c = coords[axis]
            idx = index[axis][p[axis]]
            if idx + 1 >= len(c):
                continue
            q = p[:axis] + (c[idx + 1],) + p[axis + 1:]
            v = node_of[q]
            if u == v:
                continue
            weight = c[idx + 1] - c[idx]
            pair = (min(u, v), max(u, v))
            cand = (weight, axis + 1, p)
            if pair not in best or cand < best[pair]:
                best[pair] = cand
    adj: list[list[tuple[int, int, int]]] = [[] for _ in range(n_nodes)]
    realization: list[list[GridEdge]] = []
    weights: list[int] = []
    for (u, v), (weight, axis, p) in sorted(best.items()):
        eid = len(weights)
        weights.append(weight)
        realization.append([(step(p, axis, k), axis) for k in range(weight)])
        adj[u].append((v, weight, eid))
        adj[v].append((u, weight, eid))
    return _Lattice(n_nodes, adj, realization, weights)


def dreyfus_wagner(n_nodes: int, adj, terminals: Sequence[int]) -> tuple[int, set[int]]:
    """Minimum Steiner tree weight and its edge ids.

    ``adj[u]`` lists ``(v, weight, edge_id)``; weights are positive integers.
    """
    k = len(terminals)
    if k <= 1:
        return 0, set()
    inf = float("inf")
    full = (1 << k) - 1
    dp: list[list] = [None] * (full + 1)
    pred: list[list] = [None] * (full + 1)
    split: list[list] = [None] * (full + 1)
    for mask in range(1, full + 1):
        cost = [inf] * n_nodes
        sp = None
        low = mask & -mask
        if mask == low:
            cost[terminals[low.bit_length() - 1]] = 0
        else:
            sp = [0] * n_nodes
            rest = mask ^ low
            s = (rest - 1) & rest
            while True:
                t_mask = low | s
                a = dp[t_mask]
                b = dp[mask ^ t_mask]
                for v in range(n_nodes):
                    c = a[v] + b[v]
                    if c < cost[v]:
                        cost[v] = c
                        sp[v] = t_mask
                if s == 0:
                    break
                s = (s - 1) & rest
        pr = [-1] * n_nodes
        heap = [(c, v) for v, c in enumerate(cost) if c < inf]
        heapq.heapify(heap)
        while heap:
            c, u = heapq.heappop(heap)
            if c > cost[u]:
                continue
            for v, weight, eid in adj[u]:
                nc = c + weight
                if nc < cost[v]:
                    cost[v] = nc
                    pr[v] = (u << 32) | eid
                    heapq.heappush(heap, (nc, v))
        dp[mask], pred[mask], split[mask] = cost, pr, sp

    total = dp[full][terminals[0]]
    if total == inf:
        raise ValueError("terminals are not connected in the lattice")
    used: set[int] = set()
    todo = [(full, terminals[0])]
    while todo:
        mask, v = todo.pop()
        while pred[mask][v] != -1:
            packed = pred[mask][v]
            used.add(packed & 0xFFFFFFFF)
            v = packed >> 32
        if mask & (mask - 1):
            t_mask = split[mask][v]
            todo.append((t_mask, v))
            todo.append((mask ^ t_mask, v))
    return total, used


def exact_connector(groups: Sequence[frozenset[Vertex]], rank: int, *,
                    terminal_limit: int | None = None,
                    vertex_limit: int = DEFAULT_VERTEX_LIMIT) -> set[GridEdge]:
    """Fewest grid edges joining all ``groups`` into one connected graph."""
    if terminal_limit is None:
        terminal_limit = default_terminal_limit()
    if len(groups) <= 1:
        return set()
    if len(groups) > terminal_limit:
        raise ExactLimitError(f"{len(groups)} terminals, limit is {terminal_limit}")
    lattice = _lattice(groups, rank, hanan=(rank == 2), vertex_limit=vertex_limit)
    total, used = dreyfus_wagner(lattice.n_nodes, lattice.adj, list(range(len(groups))))
    edges: set[GridEdge] = set()
    for eid in used:
        edges.update(lattice.realization[eid])
    if len(edges) != total:
        raise AssertionError(f"connector realizes {len(edges)} edges, expected {total}")
    return edges


def _l1(a: Vertex, b: Vertex) -> int:
    return sum(abs(x - y) for x, y in zip(a, b))


def prune_connector(groups: Sequence[frozenset[Vertex]], edges: Iterable[GridEdge]) -> set[GridEdge]:
    """Drop connector edges that close cycles or hang off as dead ends."""
    parent: dict[Vertex, Vertex] = {}

    def find(x):
        parent.setdefault(x, x)
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    in_group = set()
    for g in groups:
        anchor = min(g)
        for v in g:
            in_group.add(v)
            parent[find(v)] = find(anchor)
    kept = set()
    for e in sorted(set(edges), key=edge_key):
        a, b = find(e[0]), find(step(e[0], e[1]))
        if a != b:
            parent[a] = b
            kept.add(e)
    # strip dangling non-terminal leaves
    while True:
        degree: dict[Vertex, int] = {}
        for v, axis in kept:
            for x in (v, step(v, axis)):
                degree[x] = degree.get(x, 0) + 1
        leaves = {x for x, deg in degree.items() if deg == 1 and x not in in_group}
        if not leaves:
            return kept
        kept = {e for e in kept if e[0] not in leaves and step(e[0], e[1]) not in leaves}


def mst_connector(groups: Sequence[frozenset[Vertex]]) -> set[GridEdge]:
    """Spanning tree over pairwise L1 group distances, realized by L-paths.

    At most twice the optimal connector size.
    """
    k = len(groups)
    if k <= 1:
        return set()
    members = [sorted(g) for g in groups]

    def closest(i, j):
        best = None
        for a in members[i]:
            for b in members[j]:
                d = _l1(a, b)
                if best is None or d < best[0]:
                    best = (d, a, b)
        return best

    in_tree = [False] * k
    in_tree[0] = True
    best = [closest(0, j) if j else None for j in range(k)]
    edges: set[GridEdge] = set()
    for _ in range(k - 1):
        j = min((j for j in range(k) if not in_tree[j]), key=lambda j: (best[j][0], j))
        _, a, b = best[j]
        edges.update(l_path(a, b))
        in_tree[j] = True
        for m in range(k):
            if not in_tree[m]:
                cand = closest(j, m)
                if cand[0] < best[m][0]:
                    best[m] = cand
    return prune_connector(groups, edges)


def mst_weight(groups: Sequence[frozenset[Vertex]]) -> int:
    """Weight of the minimum spanning tree over pairwise L1 group distances."""
    k = len(groups)
    if k <= 1:
        return 0
    dist = [[min(_l1(a, b) for a in groups[i] for b in groups[j]) for j in range(k)]
            for i in range(k)]
    in_tree = {0}
    best = list(dist[0])
    total = 0
    for _ in range(k - 1):
        j = min((j for j in range(k) if j not in in_tree), key=lambda j: best[j])
        total += best[j]
        in_tree.add(j)
        for m in range(k):
            best[m] = min(best[m], dist[j][m])
    return total


@dataclass(frozen=True)
class SteinerResult:
    size: int
    tree_edges: tuple[GridEdge, ...]

    def to_json(self) -> dict:
        return {"size": self.size,
                "tree_edges": [{"vertex": list(v), "axis": a} for v, a in self.tree_edges]}

    @classmethod
    def from_json(cls, data: dict) -> SteinerResult:
        return cls(data["size"], tuple((tuple(e["vertex"]), e["axis"]) for e in data["tree_edges"]))


def parse_points(text: str) -> list[tuple[int, int]]:
    """Parse ``"x,y;x,y;..."``."""
    points = []
    for chunk in text.split(";"):
        chunk = chunk.strip()
        if not chunk:
            continue
        parts = chunk.split(",")
        if len(parts) != 2:
            raise ValueError(f"bad point {chunk!r}")
        points.append((int(parts[0]), int(parts[1])))
    return points


def format_points(points: Iterable[tuple[int, int]]) -> str:
    return ";".join(f"{x},{y}" for x, y in points)


def steiner_tree(points: Iterable[Sequence[int]], *, terminal_limit: int | None = None,
                 vertex_limit: int = DEFAULT_VERTEX_LIMIT) -> SteinerResult:
    """Optimal rectilinear Steiner tree of a finite point set."""
    pts = [tuple(p) for p in points]
    if not pts:
        raise ValueError("need at least one point")
    if len(set(pts)) != len(pts):
        raise ValueError("duplicate points")
    rank = len(pts[0])
    groups = [frozenset([p]) for p in sorted(pts)]
    edges = exact_connector(groups, rank, terminal_limit=terminal_limit, vertex_limit=vertex_limit)
    return SteinerResult(len(edges), tuple(sorted(edges, key=edge_key)))


def steiner_size(points: Iterable[Sequence[int]], **limits) -> int:
    return steiner_tree(points, **limits).size


__all__ = [
    "DEFAULT_TERMINAL_LIMIT",
    "DEFAULT_VERTEX_LIMIT",
    "ENV_TERMINAL_LIMIT",
    "ExactLimitError",
    "SteinerResult",
    "default_terminal_limit",
    "dreyfus_wagner",
    "exact_connector",
    "format_points",
    "mst_connector",
    "mst_weight",
    "parse_points",
    "prune_connector",
    "steiner_size",
    "steiner_tree",
]
