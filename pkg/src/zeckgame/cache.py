"""Persistent solve cache: one canonical JSON record per line.

Records round-trip byte-identically through write/read; lines with an
unknown schema version are rejected outright rather than reinterpreted.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

SCHEMA_VERSION = 1

ENV_CACHE_PATH = "ZECKGAME_CACHE"


class CacheSchemaError(ValueError):
    """A cache line carries a schema version this build does not understand."""


CacheKey = tuple[int, int, int, str, int, str]


@dataclass(frozen=True)
class CacheRecord:
    schema_version: int
    c: int
    k: int
    n: int
    mode: str
    p: int
    seating: str
    winners: tuple[str, ...]
    states_visited: int
    policy_digest: str | None
    timestamp: str

    def key(self) -> CacheKey:
        return (self.c, self.k, self.n, self.mode, self.p, self.seating)


def record_to_line(record: CacheRecord) -> str:
    payload = {
        "schema_version": record.schema_version,
        "c": record.c,
        "k": record.k,
        "n": record.n,
        "mode": record.mode,
        "p": record.p,
        "seating": record.seating,
        "winners": list(record.winners),
        "states_visited": record.states_visited,
        "policy_digest": record.policy_digest,
        "timestamp": record.timestamp,
    }
    return json.dumps(payload, separators=(",", ":"))


def record_from_line(line: str) -> CacheRecord:
    try:
        payload = json.loads(line)
    except json.JSONDecodeError as exc:
        raise ValueError(f"malformed cache line: {exc}") from exc
    if not isinstance(payload, dict) or "schema_version" not in payload:
        raise ValueError("malformed cache line: not a record object")
    if payload["schema_version"] != SCHEMA_VERSION:
        raise CacheSchemaError(
            f"cache schema version {payload['schema_version']!r} is not "
            f"supported (expected {SCHEMA_VERSION})"
        )
    try:
        return CacheRecord(
            schema_version=payload["schema_version"],
            c=payload["c"],
            k=payload["k"],
            n=payload["n"],
            mode=payload["mode"],
            p=payload["p"],
            seating=payload["seating"],
            winners=tuple(payload["winners"]),
            states_visited=payload["states_visited"],
            policy_digest=payload["policy_digest"],
            timestamp=payload["timestamp"],
        )
    except KeyError as exc:
        raise ValueError(f"malformed cache line: missing field {exc}") from exc


def load_cache(path: str | Path) -> dict[CacheKey, CacheRecord]:
    """All records keyed by (c, k, n, mode, p, seating); later lines win."""
    path = Path(path)
    records: dict[CacheKey, CacheRecord] = {}
    if not path.exists():
        return records
    with path.open(encoding="utf-8") as handle:
        for line in handle:
            line = line.strip()
            if not line:
                continue
            record = record_from_line(line)
            records[record.key()] = record
    return records


def append_record(path: str | Path, record: CacheRecord) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("a", encoding="utf-8") as handle:
        handle.write(record_to_line(record) + "\n")


def cache_stats(path: str | Path) -> dict[str, int]:
    """Record counts per mode."""
    stats: dict[str, int] = {}
    for record in load_cache(path).values():
        stats[record.mode] = stats.get(record.mode, 0) + 1
    return stats


def clear_cache(path: str | Path) -> int:
    """Remove the cache file; returns how many records it held."""
    path = Path(path)
    count = len(load_cache(path)) if path.exists() else 0
    if path.exists():
        path.unlink()
    return count
