"""Generic hash-consing pool.

Interns immutable payloads, hands out small-integer identifiers, and
guarantees that structurally equal payloads share a single identifier
for the lifetime of the pool (maximal sharing).  Identifier equality is
the equality test; identifiers are meaningful only relative to the pool
that issued them.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, NamedTuple

UID_MASK = (1 << 64) - 1


class PoolError(Exception):
    """Base class for pool usage errors."""


class InvalidChildError(PoolError):
    """A payload references an identifier the pool never issued."""


class UnknownIdError(PoolError):
    """Lookup of an identifier the pool never issued."""


class Payload(NamedTuple):
    """Immutable node description: constructor tag, scalar attributes,
    and child identifiers.  Children are compared by identifier, never
    by structure."""

    tag: int
    attrs: tuple[int, ...] = ()
    children: tuple[int, ...] = ()


def hash_payload(p: Payload) -> int:
    """64-bit hash of (tag, attrs, children).

    Deterministic for integer-only payloads (tuple hashing does not
    depend on PYTHONHASHSEED).  A hash collision is allowed; the pool
    always confirms candidates with full structural comparison, which
    the fwd dict performs via tuple equality.
    """
    return hash(p) & UID_MASK


@dataclass
class PoolStats:
    node_count: int = 0
    intern_hits: int = 0
    intern_misses: int = 0


class Pool:
    """Bidirectional interning table with a fresh-identifier counter.

    `fwd` maps payloads to identifiers, `back` is the inverse table
    indexed by identifier, and `next` (== len(back)) is the next fresh
    identifier.  Clients may reserve fixed identifiers (e.g. BDD
    leaves) by passing `preallocated` payloads; those get ids 0, 1, ...
    in order, before any intern call.

    Single-writer: mutate from one logical thread at a time.
    """

    def __init__(self, preallocated: Iterable[Payload] = ()) -> None:
        self._back: list[Payload] = []
        self._fwd: dict[Payload, int] = {}
        self._hits = 0
        self._misses = 0
        for p in preallocated:
            uid = len(self._back)
            self._back.append(p)
            self._fwd[p] = uid
        self._preallocated = len(self._back)

    @property
    def next(self) -> int:
        return len(self._back)

    @property
    def preallocated_count(self) -> int:
        return self._preallocated

    def intern(self, p: Payload) -> int:
        """Return the identifier of `p`, allocating a fresh one iff no
        structurally equal payload is already present."""
        existing = self._fwd.get(p)
        if existing is not None:
            self._hits += 1
            return existing
        n = len(self._back)
        for c in p.children:
            if not (0 <= c < n):
                raise InvalidChildError(
                    f"child id {c} out of range (pool has {n} nodes)"
                )
        self._back.append(p)
        self._fwd[p] = n
        self._misses += 1
        return n

    def resolve(self, uid: int) -> Payload:
        """Inverse of intern: the payload stored under `uid`."""
        if not (0 <= uid < len(self._back)):
            raise UnknownIdError(
                f"id {uid} out of range (pool has {len(self._back)} nodes)"
            )
        return self._back[uid]

    def contains_id(self, uid: int) -> bool:
        return 0 <= uid < len(self._back)

    def stats(self) -> PoolStats:
        return PoolStats(
            node_count=len(self._back),
            intern_hits=self._hits,
            intern_misses=self._misses,
        )

    def scan_duplicates(self) -> list[tuple[int, int]]:
        """Every pair of distinct identifiers whose payloads are
        structurally equal.  Empty on any pool populated solely through
        intern; a nonempty result means maximal sharing was violated."""
        seen: dict[Payload, int] = {}
        dups: list[tuple[int, int]] = []
        for uid, p in enumerate(self._back):
            first = seen.get(p)
            if first is None:
                seen[p] = uid
            else:
                dups.append((first, uid))
        return dups

    def _inject_duplicate(self, uid: int) -> int:
        """Test-only backdoor: store a second copy of an existing
        payload under a fresh id, bypassing the fwd table."""
        p = self.resolve(uid)
        n = len(self._back)
        self._back.append(p)
        return n

    def __len__(self) -> int:
        return len(self._back)
