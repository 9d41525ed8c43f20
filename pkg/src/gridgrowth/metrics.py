"""Shortest-path structure: diameter, node/edge betweenness, scaling runs.

Both kernels process many BFS sources at once with numpy:

* eccentricities use bit-parallel BFS, 64 sources per ``uint64`` word;
* betweenness runs level-synchronous path counting and dependency
  accumulation for a block of sources as sparse-dense products.

Source blocks are independent and may be evaluated on a thread pool; the
final reduction always runs in block order, so results do not depend on
the number of workers.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .graph import Graph
from .growth import GrowthConfig, KDistribution, grow

__all__ = [
    "DiameterReport", "BetweennessResult", "eccentricities", "diameter",
    "betweenness", "diameter_scaling", "log_fit", "betweenness_pdf",
]

_WORD = 64


@dataclass(frozen=True)
class DiameterReport:
    diameter: int
    per_component: list  # (size, max eccentricity), largest first
    largest_component_size: int
    n_components: int


@dataclass(frozen=True)
class BetweennessResult:
    """Node and edge betweenness, unordered-pair convention.

    ``nodes`` and ``edges`` hold ids of the analysed graph; when the input
    was disconnected they are the original ids of the largest component and
    ``component_only`` is set.
    """

    nodes: np.ndarray
    node_scores: np.ndarray
    edges: np.ndarray
    edge_scores: np.ndarray
    component_only: bool = False
    endpoint_pairs: bool = True

    def node_dict(self) -> dict[int, float]:
        return dict(zip(self.nodes.tolist(), self.node_scores.tolist()))

    def edge_dict(self) -> dict[tuple[int, int], float]:
        return dict(zip(map(tuple, self.edges.tolist()), self.edge_scores.tolist()))


def _map_blocks(fn, blocks, workers):
    if workers is None or workers <= 1 or len(blocks) <= 1:
        return [fn(b) for b in blocks]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, blocks))


def eccentricities(g: Graph, *, word_block: int = 64, workers: int | None = None) -> np.ndarray:
    """Hop eccentricity of every node within its own component.

    Isolated nodes get 0.
    """
    n = g.n_nodes
    n_words = -(-n // _WORD)
    blocks = [range(w, min(w + word_block, n_words)) for w in range(0, n_words, word_block)]
    parts = _map_blocks(lambda b: _ecc_block(g, b.start, b.stop), blocks, workers)
    return np.concatenate(parts)[:n] if parts else np.zeros(0, dtype=np.int64)


def _ecc_block(g: Graph, w0: int, w1: int) -> np.ndarray:
    n = g.n_nodes
    indptr, indices = g.indptr, g.indices
    width = w1 - w0
    first = w0 * _WORD
    sources = np.arange(first, min(w1 * _WORD, n))
    visited = np.zeros((n, width), dtype=np.uint64)
    cols = (sources - first) // _WORD
    bits = np.left_shift(np.uint64(1), ((sources - first) % _WORD).astype(np.uint64))
    visited[sources, cols] = bits
    frontier = visited.copy()
    ecc = np.zeros(width * _WORD, dtype=np.int64)
    isolated = np.diff(indptr) == 0
    starts = np.minimum(indptr[:-1], len(indices))
    pad = np.zeros((1, width), dtype=np.uint64)
    level = 0
    while True:
        gathered = np.concatenate([frontier[indices], pad])
        reach = np.bitwise_or.reduceat(gathered, starts, axis=0)
        reach[isolated] = 0
        new = reach & ~visited
        touched = np.bitwise_or.reduce(new, axis=0)
        if not touched.any():
            break
        level += 1
        visited |= new
        frontier = new
        hit = np.unpackbits(touched.astype("<u8").view(np.uint8), bitorder="little")
        ecc[hit.astype(bool)] = level
    return ecc


def diameter(g: Graph, *, workers: int | None = None) -> DiameterReport:
    """Exact hop diameter of the largest component, with a component census."""
    if g.n_nodes < 2:
        raise ValueError("diameter needs at least 2 nodes")
    if g.n_edges == 0:
        raise ValueError("no paths: graph has no edges")
    ecc = eccentricities(g, workers=workers)
    n_comp, lab = g.components()
    sizes = np.bincount(lab, minlength=n_comp)
    comp_ecc = np.zeros(n_comp, dtype=np.int64)
    np.maximum.at(comp_ecc, lab, ecc)
    # largest first; equal sizes keep label order (lowest node id first)
    order = np.lexsort((np.arange(n_comp), -sizes))
    per_component = [(int(sizes[c]), int(comp_ecc[c])) for c in order]
    return DiameterReport(
        diameter=per_component[0][1],
        per_component=per_component,
        largest_component_size=per_component[0][0],
        n_components=int(n_comp),
    )


def betweenness(g: Graph, *, endpoint_pairs: bool = True, block: int = 256,
                workers: int | None = None) -> BetweennessResult:
    """Exact node and edge betweenness.

    Every unordered pair ``{j, k}`` spreads one unit over its shortest
    paths. Node scores exclude the pair's own endpoints. For edges,
    ``endpoint_pairs=True`` counts every pair routed over the edge
    (so edge ``(u, v)`` always carries the pair ``{u, v}``);
    ``endpoint_pairs=False`` drops pairs that contain ``u`` or ``v``.

    Disconnected inputs are reduced to their largest component.
    """
    nodes = np.arange(g.n_nodes)
    component_only = False
    if g.n_nodes and not g.is_connected():
        g, nodes = g.largest_component()
        component_only = True
    n = g.n_nodes
    edges = g.edges
    if n == 0:
        return BetweennessResult(nodes, np.zeros(0), np.zeros((0, 2), dtype=np.int64),
                                 np.zeros(0), component_only, endpoint_pairs)
    adj = g.adjacency
    blocks = [np.arange(s, min(s + block, n)) for s in range(0, n, block)]
    parts = _map_blocks(lambda src: _brandes_block(adj, edges, src, endpoint_pairs),
                        blocks, workers)
    node_scores = np.zeros(n)
    edge_scores = np.zeros(len(edges))
    for node_part, edge_part in parts:
        node_scores += node_part
        edge_scores += edge_part
    return BetweennessResult(nodes, node_scores / 2.0, nodes[edges], edge_scores / 2.0,
                             component_only, endpoint_pairs)


def _brandes_block(adj, edges, sources, endpoint_pairs):
    n = adj.shape[0]
    b = len(sources)
    cols = np.arange(b)
    dist = np.full((n, b), -1, dtype=np.int64)
    sigma = np.zeros((n, b))
    dist[sources, cols] = 0
    sigma[sources, cols] = 1.0

    # forward sweep: shortest-path counts level by level
    frontier = dist == 0
    level = 0
    while True:
        arriving = adj @ np.where(frontier, sigma, 0.0)
        new = (dist < 0) & (arriving > 0)
        if not new.any():
            break
        level += 1
        dist[new] = level
        sigma[new] = arriving[new]
        frontier = new

    # backward sweep: dependency of each source on every node
    delta = np.zeros((n, b))
    safe_sigma = np.where(sigma > 0, sigma, 1.0)
    for lv in range(level, 0, -1):
        coef = np.where(dist == lv, (1.0 + delta) / safe_sigma, 0.0)
        pulled = adj @ coef
        delta += np.where(dist == lv - 1, sigma * pulled, 0.0)
    delta[sources, cols] = 0.0
    node_part = delta.sum(axis=1)

    u, v = edges[:, 0], edges[:, 1]
    du, dv = dist[u], dist[v]
    carry = 1.0 if endpoint_pairs else 0.0
    down = dv == du + 1
    up = du == dv + 1
    contrib = np.where(down, sigma[u] / safe_sigma[v] * (carry + delta[v]), 0.0)
    contrib += np.where(up, sigma[v] / safe_sigma[u] * (carry + delta[u]), 0.0)
    if not endpoint_pairs:
        src = np.asarray(sources)
        contrib[(u[:, None] == src[None, :]) | (v[:, None] == src[None, :])] = 0.0
    return node_part, contrib.sum(axis=1)


def diameter_scaling(k_dist: KDistribution, sizes, seeds_per_size: int, *,
                     radius: float = 1.0, base_seed: int = 0,
                     workers: int | None = None) -> list[tuple[int, float, float]]:
    """Mean and standard deviation of the diameter of grown graphs per size.

    Run ``i`` at size ``N`` uses seed ``base_seed + i``; the same seeds are
    reused for every size.
    """
    sizes = list(sizes)
    if not sizes:
        raise ValueError("sizes must be nonempty")
    if any(s < 10 for s in sizes):
        raise ValueError("every size must be >= 10")
    if seeds_per_size < 1:
        raise ValueError("seeds_per_size must be >= 1")
    rows = []
    for size in sizes:
        diams = []
        for i in range(seeds_per_size):
            cfg = GrowthConfig(radius=radius, node_count=int(size), k_dist=k_dist,
                               rng_seed=base_seed + i)
            diams.append(diameter(grow(cfg), workers=workers).diameter)
        diams = np.asarray(diams, dtype=float)
        std = float(diams.std(ddof=1)) if len(diams) > 1 else 0.0
        rows.append((int(size), float(diams.mean()), std))
    return rows


def log_fit(rows) -> tuple[float, float, float]:
    """Least-squares fit ``mean_diameter ~ a + b ln N``; returns ``(a, b, r_squared)``."""
    x = np.log([r[0] for r in rows])
    y = np.asarray([r[1] for r in rows], dtype=float)
    b, a = np.polyfit(x, y, 1)
    resid = y - (a + b * x)
    ss_tot = float(((y - y.mean()) ** 2).sum())
    r2 = 1.0 - float((resid ** 2).sum()) / ss_tot if ss_tot > 0 else 1.0
    return float(a), float(b), r2


def betweenness_pdf(result: BetweennessResult | np.ndarray, bins: int, *,
                    which: str = "node") -> tuple[np.ndarray, np.ndarray]:
    """Histogram of raw betweenness scores normalised to unit total mass.

    Returns ``(edges, mass)`` with ``len(edges) == bins + 1``.
    """
    if bins < 2:
        raise ValueError("bins must be >= 2")
    if isinstance(result, BetweennessResult):
        scores = result.node_scores if which == "node" else result.edge_scores
    else:
        scores = np.asarray(result, dtype=float)
    if scores.size == 0:
        raise ValueError("no scores to bin")
    lo, hi = float(scores.min()), float(scores.max())
    if hi == lo:
        hi = lo + 1.0
    counts, edges = np.histogram(scores, bins=bins, range=(lo, hi))
    return edges, counts / counts.sum()


def sanity_floor(g: Graph) -> float:
    """Crude lower bound ``ln N / ln <d> - 2`` for a connected graph's diameter."""
    mean_deg = 2.0 * g.n_edges / g.n_nodes
    if mean_deg <= 1.0:
        return 0.0
    return math.log(g.n_nodes) / math.log(mean_deg) - 2.0
