"""Optional on-disk memo tables.

If MINMOD_CACHE_DIR is set, small derived tables (admp/uniqp labels, Jack
polynomials at t = -3) are stored there as JSON, one file per table.
Writes go through a temp file + rename so concurrent writers are safe;
two processes deriving the same entry write identical content.
"""

from __future__ import annotations

import json
import os
import tempfile
import threading

_lock = threading.Lock()
_mem: dict = {}


def _dir():
    d = os.environ.get("MINMOD_CACHE_DIR")
    return d or None


def _path(table: str):
    d = _dir()
    return os.path.join(d, f"{table}.json") if d else None


def _load(table: str) -> dict:
    with _lock:
        if table in _mem:
            return _mem[table]
    data = {}
    p = _path(table)
    if p and os.path.exists(p):
        try:
            with open(p, encoding="utf-8") as fh:
                data = json.load(fh)
        except (OSError, ValueError):
            data = {}
    with _lock:
        _mem.setdefault(table, data)
        return _mem[table]


def get(table: str, key: str):
    return _load(table).get(key)


def put(table: str, key: str, value) -> None:
    tab = _load(table)
    with _lock:
        tab[key] = value
        snapshot = json.dumps(tab, sort_keys=True, separators=(",", ":"))
    p = _path(table)
    if not p:
        return
    os.makedirs(os.path.dirname(p), exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=os.path.dirname(p), suffix=".tmp")
    with os.fdopen(fd, "w", encoding="utf-8") as fh:
        fh.write(snapshot)
    os.replace(tmp, p)


def clear_memory() -> None:
    with _lock:
        _mem.clear()
