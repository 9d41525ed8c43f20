"""Shared helpers for the narrative scripts: output folder and data lookup."""

import os
from pathlib import Path

HERE = Path(__file__).resolve().parent
OUT = Path(os.environ.get("GRIDGROWTH_OUT", HERE / "out"))
OUT.mkdir(parents=True, exist_ok=True)
DATA = Path(os.environ.get("GRIDGROWTH_DATA", HERE.parent / "data"))


def real_grid(name):
    """Path of ``data/<name>.edges`` (or ``.mtx``) if present, else None."""
    for suffix in (".edges", ".mtx"):
        p = DATA / f"{name}{suffix}"
        if p.exists():
            return p
    return None
