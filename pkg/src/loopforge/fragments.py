"""On-disk cache of solved zone rows.

A fragment is a run of consecutive zone rows, six entries each, stored as
plain text, one file per key::

    zone-fragment n=43 rows=6..21
    3 1 5 2 0 4
    ...

The directory is ``$LOOPFORGE_CACHE`` (default ``~/.cache/loopforge``).  A
missing, unreadable or malformed file is treated as a cache miss; failing to
write is logged and otherwise ignored, so the cache never affects results.
"""
from __future__ import annotations

import logging
import os
import re
from pathlib import Path

log = logging.getLogger(__name__)

_HEADER = re.compile(r"zone-fragment n=(\d+) rows=(\d+)\.\.(\d+)$")


def cache_dir() -> Path:
    env = os.environ.get("LOOPFORGE_CACHE")
    return Path(env) if env else Path.home() / ".cache" / "loopforge"


def _path(key: str) -> Path:
    if not re.fullmatch(r"[\w.-]+", key):
        raise ValueError(f"bad fragment key {key!r}")
    return cache_dir() / f"{key}.txt"


def dumps(n: int, rows: list[int], segments) -> str:
    if not rows:
        raise ValueError("empty fragment")
    if list(rows) != list(range(rows[0], rows[0] + len(rows))):
        raise ValueError("fragment rows must be consecutive")
    lines = [f"zone-fragment n={n} rows={rows[0]}..{rows[-1]}"]
    lines += [" ".join(map(str, seg)) for seg in segments]
    return "\n".join(lines) + "\n"


def loads(text: str) -> tuple[int, list[int], list[tuple[int, ...]]]:
    lines = text.strip().splitlines()
    m = _HEADER.match(lines[0].strip()) if lines else None
    if not m:
        raise ValueError("missing zone-fragment header")
    n, lo, hi = (int(x) for x in m.groups())
    segs = [tuple(int(x) for x in line.split()) for line in lines[1:]]
    if len(segs) != hi - lo + 1 or any(sorted(s) != list(range(6)) for s in segs):
        raise ValueError("fragment body does not match its header")
    return n, list(range(lo, hi + 1)), segs


def save(key: str, n: int, rows: list[int], segments) -> None:
    path = _path(key)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        tmp = path.with_suffix(".tmp")
        tmp.write_text(dumps(n, rows, segments))
        tmp.replace(path)
    except OSError as exc:
        log.warning("could not write fragment %s: %s", path, exc)


def load(key: str) -> tuple[int, list[int], list[tuple[int, ...]]] | None:
    """``(n, rows, segments)`` for ``key``, or ``None`` on any miss."""
    path = _path(key)
    try:
        n, rows, segs = loads(path.read_text())
    except (OSError, ValueError) as exc:
        if path.exists():
            log.warning("ignoring unreadable fragment %s: %s", path, exc)
        return None
    return n, rows, segs
