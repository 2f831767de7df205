"""Slow, obviously-correct reference implementations used only by tests."""

from itertools import combinations, permutations


def orient(p, q, r):
    d = (q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0])
    return (d > 0) - (d < 0)


def proper_cross(a, b, c, d):
    # general position: no endpoint lies on the other segment
    return orient(a, b, c) * orient(a, b, d) < 0 and orient(c, d, a) * orient(c, d, b) < 0


def hull_by_triples(pts, idx=None):
    """Hull vertices: i is extreme iff some other j has every point left of (i, j)."""
    idx = list(range(len(pts))) if idx is None else list(idx)
    if len(idx) <= 2:
        return set(idx)
    out = set()
    for i in idx:
        for j in idx:
            if i != j and all(orient(pts[i], pts[j], pts[k]) > 0 for k in idx if k not in (i, j)):
                out.add(i)
                out.add(j)
    return out


def peel(pts):
    rest = set(range(len(pts)))
    layers = []
    while rest:
        h = hull_by_triples(pts, rest)
        layers.append(h)
        rest -= h
    return layers


def plane_order(pts, order):
    edges = [(order[k], order[k + 1]) for k in range(len(order) - 1)]
    for (a, b), (c, d) in combinations(edges, 2):
        if len({a, b, c, d}) == 4 and proper_cross(pts[a], pts[b], pts[c], pts[d]):
            return False
    return True


def all_paths(pts):
    """Undirected plane spanning paths, by filtering every permutation."""
    n = len(pts)
    out = set()
    for perm in permutations(range(n)):
        if perm[0] <= perm[-1] and plane_order(pts, perm):
            out.add(min(perm, perm[::-1]))
    return out


def paths_from(pts, s):
    n = len(pts)
    rest = [v for v in range(n) if v != s]
    return {(s,) + p for p in permutations(rest) if plane_order(pts, (s,) + p)}


def flip_set(pts, order, fixed_start=None):
    """Every path reachable by exchanging one edge, by trying all pairs."""
    n = len(pts)
    edges = {tuple(sorted((order[k], order[k + 1]))) for k in range(n - 1)}
    out = set()
    for r in edges:
        for a in combinations(range(n), 2):
            if a in edges:
                continue
            E = (edges - {r}) | {a}
            adj = {v: [] for v in range(n)}
            for x, y in E:
                adj[x].append(y)
                adj[y].append(x)
            if any(len(v) > 2 for v in adj.values()):
                continue
            ends = [v for v in range(n) if len(adj[v]) == 1]
            if len(ends) != 2:
                continue
            walk = [ends[0]]
            while len(walk) < n:
                nxt = [w for w in adj[walk[-1]] if len(walk) < 2 or w != walk[-2]]
                if not nxt:
                    break
                walk.append(nxt[0])
            if len(set(walk)) != n or not plane_order(pts, walk):
                continue
            if fixed_start is None:
                out.add(min(tuple(walk), tuple(walk[::-1])))
            elif fixed_start in ends:
                out.add(tuple(walk) if walk[0] == fixed_start else tuple(walk[::-1]))
    return out


def bfs_all(adj):
    from collections import deque

    dists = []
    for s in range(len(adj)):
        d = [-1] * len(adj)
        d[s] = 0
        q = deque([s])
        while q:
            u = q.popleft()
            for w in adj[u]:
                if d[w] < 0:
                    d[w] = d[u] + 1
                    q.append(w)
        dists.append(d)
    return dists


def inside_hull(pts, idx, q):
    """q strictly inside conv(idx) by the triangle fan of every triple."""
    for a, b, c in combinations(idx, 3):
        o = [orient(pts[a], pts[b], q), orient(pts[b], pts[c], q), orient(pts[c], pts[a], q)]
        if all(x > 0 for x in o) or all(x < 0 for x in o):
            return True
    return False


def suffix_independent(pts, order):
    """No prefix point inside the hull of any later suffix."""
    n = len(order)
    for k in range(1, n):
        suffix = order[k:]
        if any(inside_hull(pts, suffix, pts[v]) for v in order[:k]):
            return False
    return True
