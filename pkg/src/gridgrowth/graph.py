"""Immutable undirected simple graph in compressed sparse row form."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np
import scipy.sparse as sp
from scipy.sparse import csgraph


@dataclass(frozen=True, eq=False)
class Graph:
    """Undirected simple graph.

    Node ``i`` is the ``i``-th born node (0-based). Neighbour lists are
    stored sorted, so ``indices[indptr[i]:indptr[i + 1]]`` is ``adj(i)``.

    Parameters
    ----------
    indptr, indices : numpy.ndarray
        CSR structure of the symmetric adjacency.
    positions : numpy.ndarray, optional
        ``(n, 2)`` array of node coordinates for grown graphs.
    labels : tuple, optional
        External node labels (ingested graphs). ``labels[i]`` names node ``i``.
    """

    indptr: np.ndarray
    indices: np.ndarray
    positions: np.ndarray | None = None
    labels: tuple | None = None

    def __post_init__(self):
        for arr in (self.indptr, self.indices, self.positions):
            if arr is not None:
                arr.flags.writeable = False

    @classmethod
    def from_edges(cls, n_nodes, edges, positions=None, labels=None):
        """Build a graph from an ``(m, 2)`` edge array.

        Self-loops and repeated edges (in either orientation) are rejected;
        use :func:`gridgrowth.io.load_edgelist` for dirty input.
        """
        edges = np.asarray(edges, dtype=np.int64).reshape(-1, 2)
        if n_nodes < 0:
            raise ValueError("n_nodes must be nonnegative")
        if edges.size and (edges.min() < 0 or edges.max() >= n_nodes):
            raise ValueError("edge endpoint out of range")
        if np.any(edges[:, 0] == edges[:, 1]):
            raise ValueError("self-loops are not allowed")
        lo = np.minimum(edges[:, 0], edges[:, 1])
        hi = np.maximum(edges[:, 0], edges[:, 1])
        key = lo * max(n_nodes, 1) + hi
        if np.unique(key).size != key.size:
            raise ValueError("parallel edges are not allowed")
        rows = np.concatenate([lo, hi])
        cols = np.concatenate([hi, lo])
        order = np.lexsort((cols, rows))
        rows, cols = rows[order], cols[order]
        indptr = np.zeros(n_nodes + 1, dtype=np.int64)
        np.add.at(indptr, rows + 1, 1)
        np.cumsum(indptr, out=indptr)
        if positions is not None:
            positions = np.array(positions, dtype=float).reshape(n_nodes, 2)
        return cls(indptr, cols.astype(np.int64), positions,
                   None if labels is None else tuple(labels))

    @classmethod
    def from_adjacency(cls, adj):
        """Graph from adjacency lists (``adj[i]`` iterable of neighbours)."""
        edges = [(i, j) for i, nbrs in enumerate(adj) for j in nbrs if i < j]
        return cls.from_edges(len(adj), edges)

    @property
    def n_nodes(self) -> int:
        return len(self.indptr) - 1

    @property
    def n_edges(self) -> int:
        return len(self.indices) // 2

    @cached_property
    def degrees(self) -> np.ndarray:
        d = np.diff(self.indptr)
        d.flags.writeable = False
        return d

    def neighbors(self, i: int) -> np.ndarray:
        return self.indices[self.indptr[i]:self.indptr[i + 1]]

    def adjacency_lists(self) -> list[list[int]]:
        return [self.neighbors(i).tolist() for i in range(self.n_nodes)]

    @cached_property
    def edges(self) -> np.ndarray:
        """``(m, 2)`` array of edges ``(u, v)`` with ``u < v``, lexicographically sorted."""
        rows = np.repeat(np.arange(self.n_nodes), self.degrees)
        mask = rows < self.indices
        e = np.column_stack([rows[mask], self.indices[mask]])
        e.flags.writeable = False
        return e

    @cached_property
    def adjacency(self) -> sp.csr_matrix:
        """Symmetric 0/1 adjacency as a float CSR matrix."""
        data = np.ones(len(self.indices))
        return sp.csr_matrix((data, self.indices, self.indptr),
                             shape=(self.n_nodes, self.n_nodes))

    def components(self) -> tuple[int, np.ndarray]:
        """Connected-component count and per-node component label."""
        return csgraph.connected_components(self.adjacency, directed=False)

    def is_connected(self) -> bool:
        return self.n_nodes > 0 and self.components()[0] == 1

    def subgraph(self, nodes) -> "Graph":
        """Induced subgraph on ``nodes`` (relabelled densely in the given order)."""
        nodes = np.asarray(nodes, dtype=np.int64)
        remap = np.full(self.n_nodes, -1, dtype=np.int64)
        remap[nodes] = np.arange(len(nodes))
        e = self.edges
        keep = (remap[e[:, 0]] >= 0) & (remap[e[:, 1]] >= 0)
        sub = remap[e[keep]]
        pos = None if self.positions is None else self.positions[nodes]
        labels = None
        if self.labels is not None:
            labels = tuple(self.labels[i] for i in nodes)
        return Graph.from_edges(len(nodes), sub, pos, labels)

    def largest_component(self) -> tuple["Graph", np.ndarray]:
        """Largest connected component and the original ids of its nodes.

        Ties between equally large components go to the one holding the
        lowest node id.
        """
        n_comp, lab = self.components()
        if n_comp <= 1:
            return self, np.arange(self.n_nodes)
        sizes = np.bincount(lab)
        best = int(np.flatnonzero(sizes == sizes.max())[0])
        nodes = np.flatnonzero(lab == best)
        return self.subgraph(nodes), nodes

    def edge_set(self) -> set[tuple[int, int]]:
        return set(map(tuple, self.edges.tolist()))

    def __repr__(self):
        return f"Graph(n_nodes={self.n_nodes}, n_edges={self.n_edges})"


def complete_graph(n: int) -> Graph:
    iu = np.triu_indices(n, 1)
    return Graph.from_edges(n, np.column_stack(iu))


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def star_graph(n_leaves: int) -> Graph:
    """Star with centre 0 and leaves ``1..n_leaves``."""
    return Graph.from_edges(n_leaves + 1, [(0, i) for i in range(1, n_leaves + 1)])


@dataclass(frozen=True)
class DegreeHistogram:
    """Integer degree -> node count. Zero-count bins are not stored."""

    bins: dict

    def __post_init__(self):
        clean = {int(d): int(c) for d, c in sorted(self.bins.items()) if int(c) != 0}
        if any(c < 0 for c in clean.values()) or any(d < 0 for d in clean):
            raise ValueError("degrees and counts must be nonnegative")
        object.__setattr__(self, "bins", clean)

    @classmethod
    def from_degrees(cls, degrees) -> "DegreeHistogram":
        degrees = np.asarray(degrees, dtype=np.int64)
        if degrees.size == 0:
            return cls({})
        counts = np.bincount(degrees)
        nz = np.flatnonzero(counts)
        return cls(dict(zip(nz.tolist(), counts[nz].tolist())))

    @property
    def total(self) -> int:
        return sum(self.bins.values())

    @property
    def degrees(self) -> np.ndarray:
        return np.fromiter(self.bins.keys(), dtype=np.int64, count=len(self.bins))

    @property
    def counts(self) -> np.ndarray:
        return np.fromiter(self.bins.values(), dtype=np.int64, count=len(self.bins))

    def pmf(self) -> tuple[np.ndarray, np.ndarray]:
        """Observed degrees and their relative frequencies."""
        return self.degrees, self.counts / self.total

    def dense_pmf(self, upto: int | None = None) -> np.ndarray:
        """Frequencies for degrees ``0..upto`` (inclusive)."""
        upto = max(self.bins) if upto is None else upto
        out = np.zeros(upto + 1)
        for d, c in self.bins.items():
            if d <= upto:
                out[d] = c
        return out / self.total

    def mean(self) -> float:
        return float(np.dot(self.degrees, self.counts) / self.total)
