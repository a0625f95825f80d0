"""Independent oracles and random inputs shared across the test suite.

Everything here deliberately avoids the library's own algorithms: spanning
trees are enumerated and checked with plain BFS, Hamiltonian paths by full
permutation scan, cycles through networkx path enumeration, so that each
oracle validates the corresponding fast path rather than mirroring it.
"""
from __future__ import annotations

import math
from collections import deque
from itertools import combinations, permutations, product

import numpy as np

from sdglab.graph import WeightedGraph

_PERM_CACHE: dict[tuple[int, bool], np.ndarray] = {}


def random_connected_graph(n: int, extra: int, rng: np.random.Generator) -> WeightedGraph:
    """Random tree plus `extra` chords; weights on a 2^-10 grid in [0.5, 2.5]."""
    edges = {}
    for v in range(1, n):
        u = int(rng.integers(0, v))
        edges[(u, v)] = None
    pool = [(u, v) for u in range(n) for v in range(u + 1, n) if (u, v) not in edges]
    rng.shuffle(pool)
    for u, v in pool[:extra]:
        edges[(u, v)] = None
    out = []
    for u, v in edges:
        w = 0.5 + float(rng.integers(0, 2049)) / 1024.0
        out.append((u, v, w))
    return WeightedGraph(n=n, edges=tuple(out))


def random_graph(n: int, m_edges: int, rng: np.random.Generator) -> WeightedGraph:
    """Random (possibly disconnected) graph with grid weights."""
    pool = [(u, v) for u in range(n) for v in range(u + 1, n)]
    rng.shuffle(pool)
    out = []
    for u, v in pool[: min(m_edges, len(pool))]:
        w = 0.5 + float(rng.integers(0, 2049)) / 1024.0
        out.append((u, v, w))
    return WeightedGraph(n=n, edges=tuple(out))


def _covers_all(n: int, edges) -> bool:
    adj = [[] for _ in range(n)]
    for u, v, _ in edges:
        adj[u].append(v)
        adj[v].append(u)
    seen = {0}
    queue = deque([0])
    while queue:
        x = queue.popleft()
        for y in adj[x]:
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return len(seen) == n


def brute_min_spanning_weight(g: WeightedGraph) -> float:
    """Minimum spanning tree weight of a connected graph by subset enumeration."""
    best = None
    for combo in combinations(g.edges, g.n - 1):
        if not _covers_all(g.n, combo):
            continue
        w = math.fsum(e[2] for e in combo)
        if best is None or w < best:
            best = w
    assert best is not None, "graph is not connected"
    return best


def prufer_decode(seq: tuple[int, ...], n: int) -> list[tuple[int, int]]:
    degree = [1] * n
    for v in seq:
        degree[v] += 1
    edges = []
    used = set()
    for v in seq:
        for leaf in range(n):
            if degree[leaf] == 1 and leaf not in used:
                edges.append((min(leaf, v), max(leaf, v)))
                used.add(leaf)
                degree[v] -= 1
                break
    rest = [v for v in range(n) if degree[v] == 1 and v not in used]
    edges.append((min(rest), max(rest)))
    return edges


def cayley_min_tree_weight(matrix: np.ndarray) -> float:
    """Minimum spanning tree weight of a complete graph by enumerating all
    n^(n-2) labeled trees through their sequence encodings."""
    n = matrix.shape[0]
    best = None
    for seq in product(range(n), repeat=n - 2):
        w = math.fsum(float(matrix[u, v]) for u, v in prufer_decode(seq, n))
        if best is None or w < best:
            best = w
    return best


def permutation_min_path(matrix: np.ndarray) -> tuple[tuple[int, ...], float]:
    """Minimum-weight Hamiltonian path by full permutation scan.

    Returns the argmin order (one representative per orientation pair) and its
    weight recomputed with fsum.
    """
    n = matrix.shape[0]
    key = (n, True)
    if key not in _PERM_CACHE:
        _PERM_CACHE[key] = np.array(
            [p for p in permutations(range(n)) if p[0] < p[-1]], dtype=np.int64
        )
    perms = _PERM_CACHE[key]
    weights = matrix[perms[:, :-1], perms[:, 1:]].sum(axis=1)
    best = perms[int(weights.argmin())]
    order = tuple(int(v) for v in best)
    return order, math.fsum(float(matrix[a, b]) for a, b in zip(order, order[1:]))


def all_cycles(g: WeightedGraph) -> list[frozenset]:
    """Every simple cycle of a small graph, as a frozenset of (u, v) pairs."""
    import networkx as nx

    base = nx.Graph()
    base.add_nodes_from(range(g.n))
    for u, v, _ in g.edges:
        base.add_edge(u, v)
    seen = set()
    for u, v, _ in g.edges:
        pruned = base.copy()
        pruned.remove_edge(u, v)
        for path in nx.all_simple_paths(pruned, u, v):
            pairs = [(min(a, b), max(a, b)) for a, b in zip(path, path[1:])]
            seen.add(frozenset(pairs + [(u, v)]))
    return list(seen)


def dfs_tree_path(n: int, edges, src: int, dst: int) -> list[tuple[int, int]] | None:
    """Depth-first path search, independent of the library's BFS walker."""
    adj = [[] for _ in range(n)]
    for u, v, _ in edges:
        adj[u].append(v)
        adj[v].append(u)
    stack = [(src, -1, [])]
    while stack:
        x, prev, path = stack.pop()
        if x == dst:
            return path
        for y in adj[x]:
            if y != prev:
                stack.append((y, x, path + [(min(x, y), max(x, y))]))
    return None


def pairwise_distance_sum(n: int, edges) -> float:
    """Quadratic oracle for the sum of all pairwise tree distances."""
    adj = [[] for _ in range(n)]
    for u, v, w in edges:
        adj[u].append((v, w))
        adj[v].append((u, w))
    total = []
    for src in range(n):
        dist = {src: 0.0}
        queue = deque([src])
        while queue:
            x = queue.popleft()
            for y, w in adj[x]:
                if y not in dist:
                    dist[y] = dist[x] + w
                    queue.append(y)
        total.extend(d for v, d in dist.items() if v > src)
    return math.fsum(total)
