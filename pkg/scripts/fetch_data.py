"""Download public power-grid topologies into ``data/`` as edge lists.

    python scripts/fetch_data.py            # all known sources
    python scripts/fetch_data.py western_us

Only the Western US grid is freely downloadable. ERCOT data are private
and the UCTE model has to be obtained from the operator; put a Matrix
Market admittance file at ``data/ucte.mtx`` by hand and the CLI reads it
with ``--input data/ucte.mtx``.

Downloads cannot be checksummed against a pinned value, because the
upstream archives are not versioned. Instead every converted file is
checked against the published node and edge counts, and its SHA-256 is
printed so a local copy can be pinned afterwards.

Needs ``networkx`` to read GML (``pip install -e .[data]``).
"""

from __future__ import annotations

import argparse
import hashlib
import io
import sys
import urllib.request
import zipfile
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]

SOURCES = {
    "western_us": {
        "url": "http://www-personal.umich.edu/~mejn/netdata/power.zip",
        "member": "power.gml",
        "nodes": 4941,
        "edges": 6594,
        "note": "Western US power grid (Watts and Strogatz 1998), GML",
    },
}


def fetch(url: str) -> bytes:
    with urllib.request.urlopen(url, timeout=60) as resp:
        return resp.read()


def gml_to_edgelist(raw: bytes, dest: Path) -> tuple[int, int]:
    import networkx as nx

    text = raw.decode("ascii", errors="replace")
    # the file has no 'multigraph' key but some mirrors carry repeated edges
    text = text.replace("graph\n[", "graph\n[\n  multigraph 1", 1)
    g = nx.Graph(nx.parse_gml(text, label="id"))
    g.remove_edges_from(nx.selfloop_edges(g))
    ids = sorted(g.nodes())
    lines = [f"# {dest.stem}: {g.number_of_nodes()} nodes, {g.number_of_edges()} edges"]
    lines += [str(v) for v in ids if g.degree(v) == 0]
    lines += [f"{min(u, v)} {max(u, v)}" for u, v in sorted(g.edges(), key=lambda e: (min(e), max(e)))]
    dest.write_text("\n".join(lines) + "\n")
    return g.number_of_nodes(), g.number_of_edges()


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("names", nargs="*", default=sorted(SOURCES))
    ap.add_argument("--data-dir", type=Path, default=ROOT / "data")
    args = ap.parse_args(argv)
    args.data_dir.mkdir(parents=True, exist_ok=True)
    status = 0
    for name in args.names:
        src = SOURCES.get(name)
        if src is None:
            print(f"unknown dataset {name!r}; known: {', '.join(SOURCES)}", file=sys.stderr)
            status = 1
            continue
        dest = args.data_dir / f"{name}.edges"
        print(f"{name}: {src['note']}\n  fetching {src['url']}")
        try:
            blob = fetch(src["url"])
        except OSError as exc:
            print(f"  download failed: {exc}", file=sys.stderr)
            status = 2
            continue
        with zipfile.ZipFile(io.BytesIO(blob)) as zf:
            raw = zf.read(src["member"])
        n, m = gml_to_edgelist(raw, dest)
        digest = hashlib.sha256(dest.read_bytes()).hexdigest()
        ok = (n, m) == (src["nodes"], src["edges"])
        print(f"  wrote {dest}: {n} nodes, {m} edges "
              f"(expected {src['nodes']} / {src['edges']}: {'ok' if ok else 'MISMATCH'})")
        print(f"  sha256 {digest}")
        if not ok:
            status = 2
    return status


if __name__ == "__main__":
    sys.exit(main())
