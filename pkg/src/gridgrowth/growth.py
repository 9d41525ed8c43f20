"""Spatial growth model: Poisson births on a disk, K-nearest attachment.

Each birth samples a position uniformly on the disk, draws ``k`` from a
:class:`KDistribution` and links the newcomer to its ``min(k, t - 1)``
nearest predecessors. For constant ``K = k`` the first ``k + 1`` nodes
therefore form a clique, after which every birth adds exactly ``k`` edges.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .graph import DegreeHistogram, Graph

__all__ = [
    "Point", "KDistribution", "GrowthConfig", "GridIndex",
    "sample_position", "k_nearest", "grow", "degree_histogram",
]

LINEAR_SCAN_BELOW = 64


@dataclass(frozen=True)
class Point:
    x: float
    y: float


@dataclass(frozen=True)
class KDistribution:
    """Discrete law of the number of links ``K`` formed per birth.

    Parameters
    ----------
    support : sequence of int
        Strictly increasing positive values ``k_i``.
    probs : sequence of float
        Matching probabilities ``alpha_i``, all positive, summing to one.
    """

    support: tuple[int, ...]
    probs: tuple[float, ...]

    def __post_init__(self):
        support = tuple(int(k) for k in self.support)
        probs = tuple(float(a) for a in self.probs)
        object.__setattr__(self, "support", support)
        object.__setattr__(self, "probs", probs)
        if not support or len(support) != len(probs):
            raise ValueError("support and probs must be nonempty and of equal length")
        if any(k < 1 for k in support):
            raise ValueError("every k_i must be >= 1")
        if any(b <= a for a, b in zip(support, support[1:])):
            raise ValueError("support must be strictly increasing")
        if any(not a > 0 for a in probs):
            raise ValueError("every alpha_i must be > 0")
        if abs(math.fsum(probs) - 1.0) > 1e-12:
            raise ValueError(f"probabilities sum to {math.fsum(probs)!r}, not 1")

    @classmethod
    def constant(cls, k: int) -> "KDistribution":
        return cls((k,), (1.0,))

    @classmethod
    def uniform(cls, support: Iterable[int]) -> "KDistribution":
        support = sorted(support)
        return cls(tuple(support), tuple([1.0 / len(support)] * len(support)))

    @property
    def mean(self) -> float:
        """Expected number of links per birth, ``mu_K``."""
        return math.fsum(a * k for k, a in zip(self.support, self.probs))

    @property
    def k_max(self) -> int:
        return self.support[-1]

    def quantile(self, u):
        """Map uniforms in ``[0, 1)`` to values of ``K`` by inverse cdf."""
        cdf = np.cumsum(self.probs)
        cdf[-1] = 1.0
        idx = np.searchsorted(cdf, u, side="right")
        return np.asarray(self.support)[np.minimum(idx, len(cdf) - 1)]

    def sample(self, rng: np.random.Generator, size=None):
        return self.quantile(rng.random(size))


@dataclass(frozen=True)
class GrowthConfig:
    """Parameters of one growth run.

    Exactly one of ``node_count`` or ``density`` is given. With ``density``
    the node count is drawn as ``Poisson(density * pi * radius**2)``; the
    topology does not otherwise depend on the density.
    """

    radius: float = 1.0
    node_count: int | None = None
    k_dist: KDistribution = KDistribution.constant(2)
    rng_seed: int = 0
    density: float | None = None

    def __post_init__(self):
        if not self.radius > 0:
            raise ValueError("radius must be > 0")
        if (self.node_count is None) == (self.density is None):
            raise ValueError("give exactly one of node_count or density")
        if self.node_count is not None and self.node_count < 2:
            raise ValueError("node_count must be >= 2")
        if self.density is not None and not self.density > 0:
            raise ValueError("density must be > 0")
        if not 0 <= int(self.rng_seed) < 2**64:
            raise ValueError("rng_seed must be a 64-bit unsigned integer")

    def to_text(self) -> str:
        """Key/value document readable by :meth:`from_text`."""
        lines = [f"radius = {self.radius!r}"]
        if self.node_count is not None:
            lines.append(f"nodes = {self.node_count}")
        else:
            lines.append(f"density = {self.density!r}")
        lines.append("k_support = " + " ".join(map(str, self.k_dist.support)))
        lines.append("k_probs = " + " ".join(repr(a) for a in self.k_dist.probs))
        lines.append(f"seed = {self.rng_seed}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "GrowthConfig":
        """Parse ``key = value`` lines (``#`` comments allowed).

        Keys: ``radius``, ``nodes`` or ``density``, ``k`` (constant K) or
        ``k_support`` with optional ``k_probs`` (uniform if omitted), ``seed``.
        """
        kv = {}
        for lineno, raw in enumerate(text.splitlines(), 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            key, sep, value = line.partition("=")
            if not sep:
                key, _, value = line.partition(" ")
            key = key.strip().lower()
            if key not in _CONFIG_KEYS:
                raise ValueError(f"line {lineno}: unknown key {key!r}")
            kv[key] = value.strip()
        try:
            if "k" in kv and "k_support" in kv:
                raise ValueError("give either k or k_support, not both")
            if "k_support" in kv:
                support = [int(x) for x in kv["k_support"].replace(",", " ").split()]
                if "k_probs" in kv:
                    probs = [float(x) for x in kv["k_probs"].replace(",", " ").split()]
                    k_dist = KDistribution(tuple(support), tuple(probs))
                else:
                    k_dist = KDistribution.uniform(support)
            else:
                k_dist = KDistribution.constant(int(kv.get("k", 2)))
            return cls(
                radius=float(kv.get("radius", 1.0)),
                node_count=int(kv["nodes"]) if "nodes" in kv else None,
                density=float(kv["density"]) if "density" in kv else None,
                k_dist=k_dist,
                rng_seed=int(kv.get("seed", 0)),
            )
        except (TypeError, ValueError) as exc:
            raise ValueError(f"invalid growth config: {exc}") from None


_CONFIG_KEYS = {"radius", "nodes", "density", "k", "k_support", "k_probs", "seed"}


def sample_position(rng: np.random.Generator, radius: float) -> Point:
    """Area-uniform point on the disk of the given radius."""
    if not radius > 0:
        raise ValueError("radius must be > 0")
    u, v = rng.random(2)
    return _disk_point(u, v, radius)


def _disk_point(u, v, radius):
    rho = radius * math.sqrt(u)
    theta = 2.0 * math.pi * v
    return Point(rho * math.cos(theta), rho * math.sin(theta))


def k_nearest(query: Point, existing, k: int) -> list[int]:
    """The ``min(k, len(existing))`` nodes nearest to ``query``.

    ``existing`` maps node id to :class:`Point` (a dict or an iterable of
    ``(node, point)`` pairs). Results are ordered by ascending distance,
    ties going to the lower node id.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    items = existing.items() if hasattr(existing, "items") else existing
    keyed = [((p.x - query.x) ** 2 + (p.y - query.y) ** 2, node) for node, p in items]
    if not keyed:
        raise ValueError("no attachment targets")
    return [node for _, node in heapq.nsmallest(k, keyed)]


class GridIndex:
    """Uniform bucket grid over ``[-radius, radius]^2`` for incremental k-NN.

    Queries examine square rings of cells around the query cell and stop
    once ``k`` candidates lie strictly inside the distance that every
    unexamined cell is guaranteed to exceed. Below ``LINEAR_SCAN_BELOW``
    points a plain scan is used.
    """

    def __init__(self, radius: float, expected_points: int, per_cell: float = 2.0):
        self.radius = float(radius)
        side = max(1, int(math.sqrt(max(expected_points, 1) / per_cell)))
        self.side = side
        self.cell = 2.0 * self.radius / side
        self._cells: dict[tuple[int, int], list[tuple[float, float, int]]] = {}
        self._points: list[tuple[float, float, int]] = []

    def __len__(self):
        return len(self._points)

    def _cell_of(self, x, y):
        cx = min(self.side - 1, max(0, int((x + self.radius) / self.cell)))
        cy = min(self.side - 1, max(0, int((y + self.radius) / self.cell)))
        return cx, cy

    def insert(self, node: int, x: float, y: float) -> None:
        item = (x, y, node)
        self._points.append(item)
        self._cells.setdefault(self._cell_of(x, y), []).append(item)

    def query(self, x: float, y: float, k: int) -> list[int]:
        n = len(self._points)
        if n == 0:
            raise ValueError("no attachment targets")
        if k >= n:
            cands = self._points
        elif n < LINEAR_SCAN_BELOW:
            cands = self._points
        else:
            return self._ring_query(x, y, k, n)
        keyed = [((px - x) ** 2 + (py - y) ** 2, node) for px, py, node in cands]
        return [node for _, node in heapq.nsmallest(k, keyed)]

    def _ring_query(self, x, y, k, n):
        cx, cy = self._cell_of(x, y)
        cells = self._cells
        side = self.side
        found: list[tuple[float, int]] = []
        seen = 0
        ring = 0
        while True:
            for ix, iy in _ring_cells(cx, cy, ring, side):
                bucket = cells.get((ix, iy))
                if bucket:
                    seen += len(bucket)
                    for px, py, node in bucket:
                        found.append(((px - x) ** 2 + (py - y) ** 2, node))
            if len(found) >= k:
                # cells outside this ring are at least ring * cell away
                safe = ring * self.cell
                best = heapq.nsmallest(k, found)
                if best[-1][0] < safe * safe or seen == n:
                    return [node for _, node in best]
            elif seen == n:
                return [node for _, node in sorted(found)]
            ring += 1
            if ring > side:
                return [node for _, node in heapq.nsmallest(k, found)]


def _ring_cells(cx, cy, ring, side):
    if ring == 0:
        yield cx, cy
        return
    x0, x1 = cx - ring, cx + ring
    y0, y1 = cy - ring, cy + ring
    for ix in range(max(x0, 0), min(x1, side - 1) + 1):
        if y0 >= 0:
            yield ix, y0
        if y1 < side:
            yield ix, y1
    for iy in range(max(y0 + 1, 0), min(y1 - 1, side - 1) + 1):
        if x0 >= 0:
            yield x0, iy
        if x1 < side:
            yield x1, iy


def grow(config: GrowthConfig, *, return_k: bool = False):
    """Grow a network.

    The random stream is consumed as three uniforms per birth, in birth
    order: two for the position, then one for ``K``. The first node's
    ``K`` draw is consumed but unused.

    Parameters
    ----------
    config : GrowthConfig
    return_k : bool
        Also return the array of drawn ``k_t`` values.

    Returns
    -------
    Graph
        Node ``t`` (0-based) is the ``t``-th birth; positions are attached.
    """
    rng = np.random.default_rng(int(config.rng_seed))
    if config.node_count is not None:
        n = int(config.node_count)
    else:
        n = int(rng.poisson(config.density * math.pi * config.radius ** 2))
        if n < 2:
            raise ValueError(f"Poisson draw gave {n} nodes; need at least 2")

    u = rng.random((n, 3))
    rho = config.radius * np.sqrt(u[:, 0])
    theta = 2.0 * np.pi * u[:, 1]
    xs = rho * np.cos(theta)
    ys = rho * np.sin(theta)
    ks = config.k_dist.quantile(u[:, 2])

    index = GridIndex(config.radius, n)
    index.insert(0, float(xs[0]), float(ys[0]))
    src: list[int] = []
    dst: list[int] = []
    xl, yl, kl = xs.tolist(), ys.tolist(), ks.tolist()
    for t in range(1, n):
        x, y = xl[t], yl[t]
        targets = index.query(x, y, kl[t])
        src.extend([t] * len(targets))
        dst.extend(targets)
        index.insert(t, x, y)

    edges = np.column_stack([np.asarray(src, dtype=np.int64), np.asarray(dst, dtype=np.int64)])
    g = Graph.from_edges(n, edges, positions=np.column_stack([xs, ys]))
    return (g, ks) if return_k else g


def expected_edge_count(ks: Sequence[int]) -> int:
    """``sum_t min(k_t, t - 1)`` with 1-based birth index ``t``."""
    return sum(min(int(k), t) for t, k in enumerate(ks))


def degree_histogram(g: Graph) -> DegreeHistogram:
    return DegreeHistogram.from_degrees(g.degrees)
