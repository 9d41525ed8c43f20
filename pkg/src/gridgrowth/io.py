"""Reading and writing graphs, admittance matrices and experiment tables.

Edge lists are whitespace-separated ``u v`` pairs, one per line; ``#``
starts a comment and a lone token declares an isolated node. Tokens that
are all nonnegative integers keep their numeric order when mapped to
dense ids; otherwise labels are numbered in order of first appearance.

All floats are written with ``repr`` so CSV files round-trip exactly.
"""

from __future__ import annotations

import csv
import logging
import os
from dataclasses import dataclass
from pathlib import Path

import numpy as np
import scipy.io
import scipy.sparse as sp

from .graph import DegreeHistogram, Graph

log = logging.getLogger(__name__)


class DataError(ValueError):
    """Malformed or unusable input data."""


@dataclass(frozen=True)
class LoadReport:
    nodes: int
    edges: int
    self_loops: int
    duplicates: int


def parse_edgelist(text: str, source: str = "<string>") -> tuple[Graph, LoadReport]:
    """Parse edge-list text; returns the simple graph and a cleaning report."""
    tokens_seen: dict[str, int] = {}
    pairs: list[tuple[str, str]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) > 2:
            # tolerate a trailing weight column only if numeric
            try:
                [float(p) for p in parts[2:]]
            except ValueError:
                raise DataError(f"{source}:{lineno}: expected 'u v', got {raw.strip()!r}") from None
            parts = parts[:2]
        for tok in parts:
            tokens_seen.setdefault(tok, len(tokens_seen))
        if len(parts) == 2:
            pairs.append((parts[0], parts[1]))
    if not tokens_seen:
        raise DataError(f"{source}: no nodes or edges found")

    if all(tok.isdigit() for tok in tokens_seen):
        labels = sorted({int(tok) for tok in tokens_seen})
        index = {lab: i for i, lab in enumerate(labels)}
        ident = {tok: index[int(tok)] for tok in tokens_seen}
        labels_out: tuple = tuple(labels)
    else:
        ident = dict(tokens_seen)
        labels_out = tuple(tokens_seen)

    n = len(labels_out)
    if pairs:
        arr = np.array([(ident[a], ident[b]) for a, b in pairs], dtype=np.int64)
    else:
        arr = np.zeros((0, 2), dtype=np.int64)
    loops = arr[:, 0] == arr[:, 1]
    n_loops = int(loops.sum())
    arr = arr[~loops]
    arr = np.sort(arr, axis=1)
    uniq = np.unique(arr, axis=0) if len(arr) else arr
    n_dups = len(arr) - len(uniq)
    if n_loops:
        log.warning("%s: dropped %d self-loop(s)", source, n_loops)
    if n_dups:
        log.info("%s: merged %d duplicate edge(s)", source, n_dups)
    g = Graph.from_edges(n, uniq, labels=labels_out)
    return g, LoadReport(n, len(uniq), n_loops, n_dups)


def load_edgelist(path, *, with_report: bool = False):
    """Load an edge-list file as a simple undirected :class:`Graph`."""
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise OSError(f"{path}: {exc.strerror or exc}") from exc
    g, report = parse_edgelist(text, source=str(path))
    return (g, report) if with_report else g


def _has_integer_labels(g: Graph) -> bool:
    return g.labels is None or all(isinstance(x, (int, np.integer)) for x in g.labels)


def save_graph(path, g: Graph, *, header: str | None = None) -> None:
    """Write ``g`` as an edge list using its labels (dense ids if unlabelled).

    Non-integer labels also produce a ``<path>.ids.csv`` sidecar mapping
    dense id -> label.
    """
    path = Path(path)
    names = list(range(g.n_nodes)) if g.labels is None else list(g.labels)
    lines = [f"# nodes {g.n_nodes} edges {g.n_edges}"]
    if header:
        lines += [f"# {h}" for h in header.splitlines()]
    isolated = np.flatnonzero(g.degrees == 0)
    lines += [str(names[i]) for i in isolated]
    lines += [f"{names[u]} {names[v]}" for u, v in g.edges.tolist()]
    _write(path, "\n".join(lines) + "\n")
    if not _has_integer_labels(g):
        save_id_map(Path(str(path) + ".ids.csv"), g)


def save_id_map(path, g: Graph) -> None:
    names = list(range(g.n_nodes)) if g.labels is None else list(g.labels)
    _write_csv(path, ["id", "label"], [(i, lab) for i, lab in enumerate(names)])


def load_admittance(path) -> sp.csr_matrix:
    """Read a Matrix Market coordinate file (real or complex) as CSR."""
    path = Path(path)
    try:
        mat = scipy.io.mmread(str(path))
    except OSError as exc:
        raise OSError(f"{path}: {exc.strerror or exc}") from exc
    except ValueError as exc:
        raise DataError(f"{path}: {exc}") from exc
    return sp.csr_matrix(mat)


def parse_admittance_triplets(text: str, n: int | None = None) -> sp.csr_matrix:
    """Whitespace triplets ``row col value`` (1-based, value parsed as complex)."""
    rows, cols, vals = [], [], []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line or line.startswith("%"):
            continue
        parts = line.split()
        try:
            if len(parts) == 3:
                val = complex(parts[2].replace("i", "j"))
            elif len(parts) == 4:
                val = complex(float(parts[2]), float(parts[3]))
            else:
                raise ValueError("expected 'row col value' or 'row col re im'")
            r, c = int(parts[0]) - 1, int(parts[1]) - 1
        except ValueError as exc:
            raise DataError(f"line {lineno}: {exc}") from None
        rows.append(r)
        cols.append(c)
        vals.append(val)
    size = n if n is not None else (max(max(rows), max(cols)) + 1 if rows else 0)
    return sp.csr_matrix((np.asarray(vals, dtype=complex), (rows, cols)), shape=(size, size))


def adjacency_from_admittance(matrix, threshold: float = 0.0) -> Graph:
    """Line graph of a bus admittance matrix: edge ``{i, j}`` iff ``|Y_ij| > threshold``.

    The diagonal is ignored and the pattern is symmetrised by union.
    """
    m = sp.coo_matrix(matrix)
    if m.shape[0] != m.shape[1]:
        raise DataError(f"admittance matrix must be square, got {m.shape}")
    keep = (m.row != m.col) & (np.abs(m.data) > threshold)
    r, c = m.row[keep], m.col[keep]
    pairs = np.unique(np.sort(np.column_stack([r, c]), axis=1), axis=0) if len(r) else np.zeros((0, 2))
    return Graph.from_edges(m.shape[0], pairs)


def save_histogram(path, hist: DegreeHistogram) -> None:
    _write_csv(path, ["degree", "count"], sorted(hist.bins.items()))


def load_histogram(path) -> DegreeHistogram:
    rows = _read_csv(path, ["degree", "count"])
    return DegreeHistogram({int(r["degree"]): int(r["count"]) for r in rows})


def save_trace(path, trace) -> None:
    rows = zip(range(trace.steps + 1), trace.susceptible, trace.infected,
               trace.removed, trace.infected_std)
    _write_csv(path, ["step", "S_mean", "I_mean", "R_mean", "I_std"],
               [(s, repr(float(a)), repr(float(b)), repr(float(c)), repr(float(d)))
                for s, a, b, c, d in rows])


def load_trace(path, *, trials: int = 1, model: str = "sis"):
    from .epidemics import EpidemicTrace

    rows = _read_csv(path, ["step", "S_mean", "I_mean", "R_mean", "I_std"])
    col = {k: np.array([float(r[k]) for r in rows]) for k in ("S_mean", "I_mean", "R_mean", "I_std")}
    n = int(round(col["S_mean"][0] + col["I_mean"][0] + col["R_mean"][0]))
    return EpidemicTrace(n, col["S_mean"], col["I_mean"], col["R_mean"], col["I_std"],
                         trials, model)


def save_node_scores(path, nodes, scores, labels=None) -> None:
    names = nodes if labels is None else [labels[i] for i in nodes]
    _write_csv(path, ["node", "score"],
               [(a, repr(float(s))) for a, s in zip(names, scores)])


def save_edge_scores(path, edges, scores, labels=None) -> None:
    def name(i):
        return i if labels is None else labels[i]
    _write_csv(path, ["u", "v", "score"],
               [(name(u), name(v), repr(float(s))) for (u, v), s in zip(edges, scores)])


def save_scaling(path, rows) -> None:
    _write_csv(path, ["N", "mean_diameter", "std"],
               [(n, repr(m), repr(s)) for n, m, s in rows])


def load_scaling(path) -> list[tuple[int, float, float]]:
    rows = _read_csv(path, ["N", "mean_diameter", "std"])
    return [(int(r["N"]), float(r["mean_diameter"]), float(r["std"])) for r in rows]


def save_table(path, header, rows) -> None:
    """Generic CSV writer; floats go through ``repr``."""
    _write_csv(path, header, [[repr(x) if isinstance(x, float) else x for x in row]
                              for row in rows])


def read_table(path) -> list[dict]:
    return _read_csv(path, None)


def _write(path, text):
    path = Path(path)
    try:
        if path.parent and not path.parent.exists():
            path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text)
    except OSError as exc:
        raise OSError(f"{path}: {exc.strerror or exc}") from exc


def _write_csv(path, header, rows):
    path = Path(path)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(header)
            w.writerows(rows)
    except OSError as exc:
        raise OSError(f"{path}: {exc.strerror or exc}") from exc


def _read_csv(path, expected):
    path = Path(path)
    try:
        with open(path, newline="") as fh:
            reader = csv.DictReader(fh)
            if expected is not None and reader.fieldnames != list(expected):
                raise DataError(f"{path}: expected columns {expected}, got {reader.fieldnames}")
            return list(reader)
    except OSError as exc:
        raise OSError(f"{path}: {exc.strerror or exc}") from exc


def default_output_dir() -> Path:
    return Path(os.environ.get("GRIDGROWTH_OUT", "."))
