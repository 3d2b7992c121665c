"""Persistent cache of computed G~ vectors as newline-delimited JSON.

The first line is a header ``{"format": "cbt-gcb-cache", "version": 1}``.
Every further line is one record::

    {"k": 4, "l": 5, "mode": "fast", "mu": [20, 10],
     "g": [{"la": [20, 10], "p": {"0": 1}}, ...]}

Records are appended with a single ``write`` on a file opened in append
mode under an advisory lock, so concurrent writers never interleave within
a line.  Nothing read
from disk is trusted: the session re-validates each vector before use, and
lines that fail to parse are skipped with a warning.  When a record for
the same key appears twice, the later line wins.
"""

from __future__ import annotations

import json
import logging
import os
from pathlib import Path

try:
    import fcntl
except ImportError:  # pragma: no cover - non-POSIX
    fcntl = None

from .fock import FockVector
from .laurent import LaurentPoly
from .partition import Context, Partition

__all__ = ["GcbCache", "CacheFormatError", "HEADER", "encode_vector", "decode_vector"]

log = logging.getLogger(__name__)

HEADER = {"format": "cbt-gcb-cache", "version": 1}


class CacheFormatError(ValueError):
    pass


def encode_vector(vec: FockVector) -> list[dict]:
    return [{"la": list(lam), "p": p.to_json()} for lam, p in vec.sorted_items()]


def decode_vector(ctx: Context, data) -> FockVector:
    if not isinstance(data, list):
        raise CacheFormatError("vector must be a list of terms")
    entries: dict[Partition, LaurentPoly] = {}
    for term in data:
        lam = Partition(term["la"])
        if lam in entries:
            raise CacheFormatError(f"duplicate diagram {list(lam)}")
        entries[lam] = LaurentPoly.from_json(term["p"])
    return FockVector(ctx, entries)


class GcbCache:
    """Append-only on-disk store keyed by ``(k, l, mode, mu)``."""

    def __init__(self, path: str | os.PathLike):
        self.path = Path(path)
        self._records: dict[tuple, list] = {}
        self.skipped = 0
        self._load()

    def _load(self):
        if not self.path.exists() or self.path.stat().st_size == 0:
            return
        with self.path.open("r", encoding="utf-8") as fh:
            first = fh.readline()
            try:
                header = json.loads(first)
            except json.JSONDecodeError as exc:
                raise CacheFormatError(f"{self.path}: unreadable header") from exc
            if header.get("format") != HEADER["format"]:
                raise CacheFormatError(f"{self.path}: not a cbt cache file")
            if header.get("version") != HEADER["version"]:
                raise CacheFormatError(
                    f"{self.path}: cache version {header.get('version')} is not supported")
            for lineno, line in enumerate(fh, start=2):
                if not line.strip():
                    continue
                try:
                    rec = json.loads(line)
                    key = (int(rec["k"]), int(rec["l"]), str(rec["mode"]), Partition(rec["mu"]))
                    if not isinstance(rec["g"], list):
                        raise TypeError("g is not a list")
                except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
                    log.warning("%s:%d: skipping malformed record (%s)", self.path, lineno, exc)
                    self.skipped += 1
                    continue
                self._records[key] = rec["g"]

    def __len__(self) -> int:
        return len(self._records)

    def keys(self):
        return self._records.keys()

    def get(self, ctx: Context, mode: str, mu) -> FockVector | None:
        data = self._records.get((ctx.k, ctx.l, mode, Partition(mu)))
        if data is None:
            return None
        try:
            return decode_vector(ctx, data)
        except (CacheFormatError, KeyError, TypeError, ValueError) as exc:
            log.warning("%s: dropping undecodable entry for %s (%s)", self.path, list(mu), exc)
            self.discard(ctx, mode, mu)
            return None

    def discard(self, ctx: Context, mode: str, mu) -> None:
        """Forget an entry in memory; a later ``put`` appends a replacement line."""
        self._records.pop((ctx.k, ctx.l, mode, Partition(mu)), None)

    def put(self, ctx: Context, mode: str, mu, vec: FockVector) -> None:
        mu = Partition(mu)
        key = (ctx.k, ctx.l, mode, mu)
        if key in self._records:
            return
        g = encode_vector(vec)
        rec = {"k": ctx.k, "l": ctx.l, "mode": mode, "mu": list(mu), "g": g}
        line = json.dumps(rec, separators=(",", ":")) + "\n"
        self.path.parent.mkdir(parents=True, exist_ok=True)
        fd = os.open(self.path, os.O_WRONLY | os.O_APPEND | os.O_CREAT, 0o644)
        try:
            if fcntl is not None:
                # serialises the header check with other processes
                fcntl.flock(fd, fcntl.LOCK_EX)
            if os.fstat(fd).st_size == 0:
                line = json.dumps(HEADER) + "\n" + line
            os.write(fd, line.encode("utf-8"))
        finally:
            os.close(fd)
        self._records[key] = g

    def clear(self) -> None:
        self._records.clear()
        if self.path.exists():
            self.path.unlink()
