"""Slow, obviously-correct reference computations used by the tests.

Nothing here imports the fast paths it is used to check.
"""

from __future__ import annotations

import itertools
from collections import deque

import numpy as np


def linear_scan_knn(query, points, k):
    """Indices of the k nearest rows of ``points``; ties by lower index."""
    d = ((np.asarray(points) - np.asarray(query)) ** 2).sum(axis=1)
    return sorted(range(len(points)), key=lambda i: (d[i], i))[:k]


def floyd_warshall(n, edges):
    """All-pairs hop distances (inf where unreachable)."""
    dist = np.full((n, n), np.inf)
    np.fill_diagonal(dist, 0.0)
    for u, v in edges:
        dist[u, v] = dist[v, u] = 1.0
    for k in range(n):
        dist = np.minimum(dist, dist[:, k:k + 1] + dist[k:k + 1, :])
    return dist


def fw_diameter(n, edges):
    """Diameter of the largest component from the Floyd-Warshall matrix."""
    dist = floyd_warshall(n, edges)
    reach = np.isfinite(dist)
    sizes = reach.sum(axis=1)
    biggest = sizes.max()
    members = np.flatnonzero(sizes == biggest)
    # first largest component: the one containing the lowest such node
    comp = np.flatnonzero(reach[members[0]])
    return int(dist[np.ix_(comp, comp)].max())


def all_shortest_paths(adj, s, t):
    """Every shortest s-t path as a tuple of nodes (BFS layering + DFS)."""
    n = len(adj)
    dist = [-1] * n
    dist[s] = 0
    q = deque([s])
    while q:
        x = q.popleft()
        for y in adj[x]:
            if dist[y] < 0:
                dist[y] = dist[x] + 1
                q.append(y)
    if dist[t] < 0:
        return []
    paths = []

    def extend(path):
        x = path[-1]
        if x == s:
            paths.append(tuple(reversed(path)))
            return
        for y in adj[x]:
            if dist[y] == dist[x] - 1:
                extend(path + [y])

    extend([t])
    return paths


def brute_betweenness(adj, endpoint_pairs=True):
    """Node and edge betweenness by enumerating every shortest path of every pair."""
    n = len(adj)
    node = np.zeros(n)
    edge = {}
    for i in range(n):
        for j in adj[i]:
            if i < j:
                edge[(i, j)] = 0.0
    for s, t in itertools.combinations(range(n), 2):
        paths = all_shortest_paths(adj, s, t)
        if not paths:
            continue
        w = 1.0 / len(paths)
        for p in paths:
            for x in p[1:-1]:
                node[x] += w
            for a, b in zip(p, p[1:]):
                key = (min(a, b), max(a, b))
                if endpoint_pairs or not ({s, t} & set(key)):
                    edge[key] += w
    return node, edge


def _neighbour_masks(adj):
    return [sum(1 << j for j in nbrs) for nbrs in adj]


def markov_sis(adj, beta, delta, steps, initial_dist):
    """Exact mean and variance of the infected count for discrete-time SIS.

    ``initial_dist`` maps infected-set bitmask -> probability.
    """
    n = len(adj)
    n_states = 1 << n
    bits = (np.arange(n_states)[:, None] >> np.arange(n)) & 1
    nb = _neighbour_masks(adj)
    q = np.zeros((n_states, n))
    for s in range(n_states):
        for i in range(n):
            if s >> i & 1:
                q[s, i] = 1.0 - delta
            else:
                j = bin(s & nb[i]).count("1")
                q[s, i] = 1.0 - (1.0 - beta) ** j
    # P[s, s'] = prod_i P(node i in state s'_i | s)
    trans = np.prod(np.where(bits[None, :, :] == 1, q[:, None, :], 1.0 - q[:, None, :]), axis=2)
    p = np.zeros(n_states)
    for s, w in initial_dist.items():
        p[s] += w
    count = bits.sum(axis=1)
    means, variances = [], []
    for _ in range(steps + 1):
        m = p @ count
        means.append(m)
        variances.append(p @ count ** 2 - m * m)
        p = p @ trans
    return np.array(means), np.maximum(np.array(variances), 0.0)


def markov_sir(adj, beta, gamma, steps, initial_dist):
    """Exact mean/variance of infected and mean removed counts for discrete-time SIR.

    States are base-3 codes (digit i: 0 = S, 1 = I, 2 = R). ``initial_dist``
    maps tuples of per-node states to probabilities.
    """
    n = len(adj)
    pow3 = 3 ** np.arange(n)
    n_states = 3 ** n
    digits = (np.arange(n_states)[:, None] // pow3) % 3
    rows, cols, vals = [], [], []
    masks_cache = {}
    for s in range(n_states):
        d = digits[s]
        infected = d == 1
        moves, probs = [], []
        for i in range(n):
            if d[i] == 0:
                j = int(sum(infected[x] for x in adj[i]))
                if j:
                    moves.append(pow3[i])
                    probs.append(1.0 - (1.0 - beta) ** j)
            elif d[i] == 1:
                moves.append(pow3[i])
                probs.append(gamma)
        m = len(moves)
        if m not in masks_cache:
            masks_cache[m] = ((np.arange(1 << m)[:, None] >> np.arange(m)) & 1).astype(bool)
        masks = masks_cache[m]
        pr = np.asarray(probs)
        w = np.prod(np.where(masks, pr, 1.0 - pr), axis=1) if m else np.ones(1)
        nxt = s + (masks.astype(np.int64) @ np.asarray(moves, dtype=np.int64) if m else np.zeros(1, dtype=np.int64))
        keep = w > 0
        rows.extend([s] * int(keep.sum()))
        cols.extend(nxt[keep].tolist())
        vals.extend(w[keep].tolist())
    import scipy.sparse as sp
    trans = sp.csr_matrix((vals, (rows, cols)), shape=(n_states, n_states))
    p = np.zeros(n_states)
    for state, w in initial_dist.items():
        p[int(np.dot(state, pow3))] += w
    icount = (digits == 1).sum(axis=1)
    rcount = (digits == 2).sum(axis=1)
    im, iv, rm = [], [], []
    for _ in range(steps + 1):
        m = p @ icount
        im.append(m)
        iv.append(p @ icount ** 2 - m * m)
        rm.append(p @ rcount)
        p = trans.T @ p
    return np.array(im), np.maximum(np.array(iv), 0.0), np.array(rm)


def single_seed_sis(n):
    return {1 << i: 1.0 / n for i in range(n)}


def single_seed_sir(n):
    return {tuple(1 if j == i else 0 for j in range(n)): 1.0 / n for i in range(n)}


def random_connected_graph(rng, n, p=0.4):
    """Edge list of a connected G(n, p) sample (rejection on connectivity)."""
    while True:
        edges = [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p]
        adj = [[] for _ in range(n)]
        for i, j in edges:
            adj[i].append(j)
            adj[j].append(i)
        seen = {0}
        stack = [0]
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        if len(seen) == n:
            return edges, adj
