"""On-disk cache of reduced Groebner bases.

Entries are keyed by a SHA-256 of (characteristic, order, arity, rank, sorted
canonical generators).  Reduced bases are unique, so a hit is identical to a
recomputation.  Writes go through a temporary file and ``os.replace`` so that
concurrent writers of the same key are harmless.
"""
from __future__ import annotations

import hashlib
import json
import logging
import os
import tempfile
from contextlib import contextmanager
from contextvars import ContextVar
from pathlib import Path

log = logging.getLogger(__name__)

CACHE_ENV = "HKCALC_CACHE_DIR"

_active: ContextVar["GBCache | None"] = ContextVar("hkcalc_gb_cache", default=None)


def _canonical(ring, d: dict) -> list:
    codec = ring.codec
    terms = [[codec.component(k), list(codec.decode(k)), v] for k, v in d.items()]
    terms.sort(reverse=True)
    return terms


class GBCache:
    def __init__(self, directory):
        self.directory = Path(directory)
        self.hits = 0
        self.misses = 0

    def key_for(self, ring, rank: int, shifts, gens) -> str:
        payload = {
            "p": ring.p,
            "order": ring.order.value,
            "nvars": ring.nvars,
            "rank": rank,
            "gens": sorted(_canonical(ring, g) for g in gens),
        }
        blob = json.dumps(payload, sort_keys=True, separators=(",", ":")).encode()
        return hashlib.sha256(blob).hexdigest()

    def _path(self, key: str) -> Path:
        return self.directory / key[:2] / f"{key}.json"

    def load(self, key: str, ring):
        path = self._path(key)
        if not path.exists():
            self.misses += 1
            return None
        try:
            data = json.loads(path.read_text())
            codec = ring.codec
            out = []
            for poly in data["basis"]:
                d = {}
                for comp, exps, coeff in poly:
                    d[codec.comp_offset(comp) + codec.encode(tuple(exps))] = int(coeff)
                out.append(d)
            if data.get("p") != ring.p:
                raise ValueError("characteristic mismatch")
        except (ValueError, KeyError, TypeError) as exc:
            log.warning("corrupt GB cache entry %s (%s); recomputing", path, exc)
            self.misses += 1
            return None
        self.hits += 1
        return out

    def save(self, key: str, ring, basis) -> None:
        path = self._path(key)
        path.parent.mkdir(parents=True, exist_ok=True)
        blob = json.dumps({"p": ring.p, "basis": [_canonical(ring, d) for d in basis]},
                          separators=(",", ":"))
        fd, tmp = tempfile.mkstemp(dir=path.parent, suffix=".tmp")
        try:
            with os.fdopen(fd, "w") as fh:
                fh.write(blob)
            os.replace(tmp, path)
        except BaseException:
            Path(tmp).unlink(missing_ok=True)
            raise


def active() -> GBCache | None:
    return _active.get()


@contextmanager
def use_cache(store: GBCache | None):
    token = _active.set(store)
    try:
        yield store
    finally:
        _active.reset(token)


def gb_cache(key, compute, store: GBCache | None = None):
    """Generic read-through helper: ``compute()`` on a miss, JSON value on disk."""
    store = store or active()
    if store is None:
        return compute()
    path = store.directory / "values" / f"{key}.json"
    if path.exists():
        try:
            value = json.loads(path.read_text())
            store.hits += 1
            return value
        except ValueError:
            log.warning("corrupt cache value %s; recomputing", path)
    store.misses += 1
    value = compute()
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, suffix=".tmp")
    with os.fdopen(fd, "w") as fh:
        json.dump(value, fh, sort_keys=True)
    os.replace(tmp, path)
    return value
