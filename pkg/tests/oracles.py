"""Slow, independent reference computations used as test oracles.

Nothing here calls into the algorithms under test except the ``Word`` type
and (where stated) path flows used as canonical keys for elements of ``M_r``.
"""

from __future__ import annotations

from collections import deque
from itertools import combinations, product

from freesolv.words import Word


def exponent_sums(letters, rank):
    out = [0] * rank
    for g in letters:
        out[abs(g) - 1] += 1 if g > 0 else -1
    return tuple(out)


def naive_fox_abelian(w: Word) -> dict:
    """Expand dw/dx_i term by term, recomputing each prefix from scratch (O(n^2))."""
    out: dict = {}
    for j in range(1, len(w) + 1):
        g = w.letters[j - 1]
        if g > 0:
            key = (exponent_sums(w.letters[:j - 1], w.rank), g)
            out[key] = out.get(key, 0) + 1
        else:
            key = (exponent_sums(w.letters[:j], w.rank), -g)
            out[key] = out.get(key, 0) - 1
    return {k: v for k, v in out.items() if v}


def naive_wp_metabelian(w: Word) -> bool:
    return not naive_fox_abelian(w)


def flow_key(letters, rank):
    """Canonical key of the element of M_r: terminal point plus traversal counts."""
    pos = [0] * rank
    vals: dict = {}
    for g in letters:
        if g > 0:
            e = (tuple(pos), g)
            vals[e] = vals.get(e, 0) + 1
            pos[g - 1] += 1
        else:
            pos[-g - 1] -= 1
            e = (tuple(pos), -g)
            vals[e] = vals.get(e, 0) - 1
    return tuple(pos), frozenset((e, v) for e, v in vals.items() if v)


def naive_wp_class3(w: Word) -> bool:
    """w = 1 in S_{r,3} iff every dw/dx_k vanishes in Z M_r.

    Group elements of M_r are identified through flow keys of prefixes.
    """
    for k in range(1, w.rank + 1):
        coeffs: dict = {}
        for j in range(1, len(w) + 1):
            g = w.letters[j - 1]
            if g == k:
                key = flow_key(w.letters[:j - 1], w.rank)
                coeffs[key] = coeffs.get(key, 0) + 1
            elif g == -k:
                key = flow_key(w.letters[:j], w.rank)
                coeffs[key] = coeffs.get(key, 0) - 1
        if any(coeffs.values()):
            return False
    return True


def naive_partition_class2(w: Word) -> list[int]:
    """Smallest j with w_j = w_i in M_r, by pairwise naive word problems on w_j^-1 w_i."""
    n = len(w)
    reps = []
    for i in range(n + 1):
        for j in range(i + 1):
            quotient = tuple(-g for g in reversed(w.letters[:j])) + w.letters[:i]
            if naive_wp_metabelian(Word(quotient, w.rank)):
                reps.append(j)
                break
    return reps


def flow_key_compact(letters, rank):
    pos, vals = flow_key(letters, rank)
    return pos, tuple(sorted(vals))


class MetabelianBall:
    """Breadth-first ball in the Cayley graph of M_r, elements keyed by flows.

    Two words reach the same key exactly when their path flows coincide,
    which is equality in M_r.
    """

    def __init__(self, rank: int, radius: int):
        self.rank = rank
        self.radius = radius
        start = ((0,) * rank, ())
        self.dist = {start: 0}
        frontier = deque([start])
        letters = [g for k in range(1, rank + 1) for g in (k, -k)]
        while frontier:
            key = frontier.popleft()
            d = self.dist[key]
            if d == radius:
                continue
            pos, items = key
            for g in letters:
                vals = dict(items)
                p = list(pos)
                if g > 0:
                    e = (pos, g)
                    p[g - 1] += 1
                    delta = 1
                else:
                    p[-g - 1] -= 1
                    e = (tuple(p), -g)
                    delta = -1
                v = vals.get(e, 0) + delta
                if v:
                    vals[e] = v
                else:
                    del vals[e]
                nkey = (tuple(p), tuple(sorted(vals.items())))
                if nkey not in self.dist:
                    self.dist[nkey] = d + 1
                    frontier.append(nkey)

    def length(self, w: Word):
        """Geodesic length, or None if the element lies outside the ball."""
        return self.dist.get(flow_key_compact(w.letters, self.rank))


def reduced_words(rank: int, max_len: int):
    letters = [g for k in range(1, rank + 1) for g in (k, -k)]
    yield ()
    layer = [()]
    for _ in range(max_len):
        nxt = []
        for w in layer:
            for g in letters:
                if w and w[-1] == -g:
                    continue
                nxt.append(w + (g,))
        yield from nxt
        layer = nxt


def _l1(a, b):
    return sum(abs(x - y) for x, y in zip(a, b))


def _mst(points):
    pts = list(points)
    if len(pts) <= 1:
        return 0
    best = {p: _l1(pts[0], p) for p in pts[1:]}
    total = 0
    while best:
        p = min(best, key=best.get)
        total += best.pop(p)
        for q in best:
            best[q] = min(best[q], _l1(p, q))
    return total


def brute_steiner(points) -> int:
    """min over Steiner sets S in the bounding box, |S| <= |A| - 2, of MST_L1(A u S)."""
    pts = sorted(set(map(tuple, points)))
    if len(pts) <= 1:
        return 0
    xs = range(min(p[0] for p in pts), max(p[0] for p in pts) + 1)
    ys = range(min(p[1] for p in pts), max(p[1] for p in pts) + 1)
    cands = [p for p in product(xs, ys) if p not in pts]
    best = _mst(pts)
    for size in range(1, len(pts) - 1):
        for extra in combinations(cands, size):
            best = min(best, _mst(pts + list(extra)))
    return best


def brute_forest_size(groups, box_margin: int = 0):
    """Fewest grid edges (r = 2) joining vertex groups into one connected graph.

    Distances come from a 0-1 BFS in the box where moving inside a group is
    free; the answer is the minimum over Steiner sets S of at most k - 2 box
    vertices of the MST over groups and S in that metric.
    """
    verts = [v for g in groups for v in g]
    xs = range(min(v[0] for v in verts) - box_margin, max(v[0] for v in verts) + box_margin + 1)
    ys = range(min(v[1] for v in verts) - box_margin, max(v[1] for v in verts) + box_margin + 1)
    owner = {v: i for i, g in enumerate(groups) for v in g}

    def dist_from(sources):
        dist = {v: 0 for v in sources}
        dq = deque(sources)
        while dq:
            v = dq.popleft()
            for dx, dy in ((1, 0), (-1, 0), (0, 1), (0, -1)):
                u = (v[0] + dx, v[1] + dy)
                if u[0] not in xs or u[1] not in ys or u in dist:
                    continue
                dist[u] = dist[v] + 1
                dq.append(u)
        return dist

    # group-contracted metric: shortest paths may pass through groups for free
    k = len(groups)
    nodes = [frozenset(g) for g in groups]
    free = [p for p in product(xs, ys) if p not in owner]
    base = {}
    for i, g in enumerate(nodes):
        base[i] = dist_from(list(g))

    def closure(extra):
        items = list(range(k)) + list(extra)
        n = len(items)
        d = [[0] * n for _ in range(n)]
        for a in range(n):
            for b in range(n):
                x, y = items[a], items[b]
                if isinstance(x, int):
                    dd = min(base[x][v] for v in (nodes[y] if isinstance(y, int) else [y]))
                elif isinstance(y, int):
                    dd = min(base[y][v] for v in [x])
                else:
                    dd = abs(x[0] - y[0]) + abs(x[1] - y[1])
                d[a][b] = dd
        # Floyd-Warshall so paths may route through groups
        for m in range(n):
            for a in range(n):
                for b in range(n):
                    if d[a][m] + d[m][b] < d[a][b]:
                        d[a][b] = d[a][m] + d[m][b]
        return d

    def mst(d):
        n = len(d)
        best = {j: d[0][j] for j in range(1, n)}
        total = 0
        while best:
            j = min(best, key=best.get)
            total += best.pop(j)
            for m in best:
                best[m] = min(best[m], d[j][m])
        return total

    answer = mst(closure(()))
    for size in range(1, k - 1):
        for extra in combinations(free, size):
            answer = min(answer, mst(closure(extra)))
    return answer
