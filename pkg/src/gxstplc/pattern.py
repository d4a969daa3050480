"""Replicated storage patterns and their server-side duals.

A pattern assigns each message set m a replication group R_m, the set of
servers holding its K_m messages.  Server and set identifiers are 1-based
everywhere they are visible, matching the JSON interchange format:

    {"servers": N,
     "message_sets": [{"servers": [1, 2, 4], "count": 2}, ...]}
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Mapping, Sequence


@dataclass(frozen=True)
class MessageSet:
    """One replication group: which servers hold it, how many messages."""

    servers: tuple[int, ...]
    count: int = 1

    def __post_init__(self):
        if not self.servers:
            raise ValueError("a message set must be stored somewhere")
        if len(set(self.servers)) != len(self.servers):
            raise ValueError(f"duplicate server in {self.servers}")
        if any(s < 1 for s in self.servers):
            raise ValueError("servers are numbered from 1")
        if self.count < 1:
            raise ValueError("each message set holds at least one message")
        object.__setattr__(self, "servers", tuple(sorted(self.servers)))


@dataclass(frozen=True)
class StoragePattern:
    n_servers: int
    message_sets: tuple[MessageSet, ...]

    def __post_init__(self):
        if self.n_servers < 1:
            raise ValueError("need at least one server")
        if not self.message_sets:
            raise ValueError("need at least one message set")
        object.__setattr__(self, "message_sets", tuple(self.message_sets))
        for ms in self.message_sets:
            if max(ms.servers) > self.n_servers:
                raise ValueError(
                    f"set {ms.servers} references a server beyond {self.n_servers}"
                )

    @property
    def m_count(self) -> int:
        return len(self.message_sets)

    def servers_of(self, m: int) -> tuple[int, ...]:
        """Replication group of message set m (1-based m)."""
        return self.message_sets[m - 1].servers

    def count_of(self, m: int) -> int:
        return self.message_sets[m - 1].count

    @property
    def replication_factors(self) -> tuple[int, ...]:
        return tuple(len(ms.servers) for ms in self.message_sets)

    @property
    def counts(self) -> tuple[int, ...]:
        return tuple(ms.count for ms in self.message_sets)


@dataclass(frozen=True)
class DualPattern:
    """Per-server view: sets_at[n-1] lists the message sets server n holds."""

    n_servers: int
    sets_at: tuple[tuple[int, ...], ...]

    def invert(self, counts: Sequence[int] | None = None) -> StoragePattern:
        m_count = max((m for sets in self.sets_at for m in sets), default=0)
        groups: list[list[int]] = [[] for _ in range(m_count)]
        for n, sets in enumerate(self.sets_at, start=1):
            for m in sets:
                groups[m - 1].append(n)
        if counts is None:
            counts = [1] * m_count
        return StoragePattern(
            self.n_servers,
            tuple(MessageSet(tuple(g), k) for g, k in zip(groups, counts)),
        )


def dual(p: StoragePattern) -> DualPattern:
    sets_at: list[list[int]] = [[] for _ in range(p.n_servers)]
    for m in range(1, p.m_count + 1):
        for n in p.servers_of(m):
            sets_at[n - 1].append(m)
    return DualPattern(p.n_servers, tuple(tuple(s) for s in sets_at))


def min_replication_slack(p: StoragePattern, x: int, t: int) -> int:
    """min_m |R_m| - x - t; positive iff the thresholds leave room to decode."""
    return min(p.replication_factors) - x - t


def pattern_from_dict(data: Mapping) -> StoragePattern:
    try:
        n = int(data["servers"])
        sets = tuple(
            MessageSet(tuple(int(s) for s in entry["servers"]),
                       int(entry.get("count", 1)))
            for entry in data["message_sets"]
        )
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed pattern document: {exc}") from exc
    return StoragePattern(n, sets)


def pattern_to_dict(p: StoragePattern) -> dict:
    return {
        "servers": p.n_servers,
        "message_sets": [
            {"servers": list(ms.servers), "count": ms.count}
            for ms in p.message_sets
        ],
    }


def load_pattern(source: str | Path | Mapping) -> StoragePattern:
    """Read a pattern from a JSON file path or an already-parsed mapping."""
    if isinstance(source, Mapping):
        return pattern_from_dict(source)
    with open(source, "r", encoding="utf-8") as fh:
        return pattern_from_dict(json.load(fh))


def save_pattern(p: StoragePattern, path: str | Path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(pattern_to_dict(p), fh, indent=2)
        fh.write("\n")
