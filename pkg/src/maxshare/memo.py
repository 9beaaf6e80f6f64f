"""Memoization tables and a memoizing fixpoint combinator.

Tables map fixed-arity key tuples (identifiers and small scalars) to
result values.  An entry, once written, is never rebound to a different
value; attempting to do so signals an impure memoized function.
Tables persist across top-level calls (conservative lifetime) and can
be reset explicitly for experimentation.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Callable, Hashable

DEFAULT_DEPTH_GUARD = 100_000

MemoKey = tuple


class MemoError(Exception):
    pass


class MemoUsageError(MemoError):
    """Key arity does not match the table's arity."""


class MemoContractError(MemoError):
    """A key was rebound to a different value (impure body)."""


class DepthExceededError(MemoError):
    """The recursion guard tripped; the body is likely not well-founded."""


@dataclass
class MemoStats:
    hits: int = 0
    misses: int = 0
    body_evaluations: int = 0


_ABSENT = object()


class MemoTable:
    """Fixed-arity memo table with hit/miss counters.

    For tables backing commutative binary operations, pass
    `commutative=True`: keys (a, b) are normalized to (min, max), which
    doubles the hit rate without a second entry.
    """

    def __init__(self, arity: int, *, commutative: bool = False) -> None:
        if commutative and arity != 2:
            raise MemoUsageError("commutative normalization needs arity 2")
        self.arity = arity
        self.commutative = commutative
        self._entries: dict[MemoKey, Any] = {}
        self.hits = 0
        self.misses = 0
        self.body_evaluations = 0

    def _norm(self, key: MemoKey) -> MemoKey:
        if len(key) != self.arity:
            raise MemoUsageError(
                f"key arity {len(key)} != table arity {self.arity}"
            )
        if self.commutative and key[0] > key[1]:
            return (key[1], key[0])
        return key

    def get(self, key: MemoKey) -> Any:
        """Stored value for `key`, or the module-private absent marker.
        Use `found(result)` to test presence."""
        k = self._norm(key)
        v = self._entries.get(k, _ABSENT)
        if v is _ABSENT:
            self.misses += 1
        else:
            self.hits += 1
        return v

    def put(self, key: MemoKey, value: Any) -> None:
        k = self._norm(key)
        old = self._entries.get(k, _ABSENT)
        if old is _ABSENT:
            self._entries[k] = value
        elif old != value:
            raise MemoContractError(
                f"key {k!r} rebound: {old!r} -> {value!r}"
            )

    def reset(self) -> None:
        self._entries.clear()

    def stats(self) -> MemoStats:
        return MemoStats(
            hits=self.hits,
            misses=self.misses,
            body_evaluations=self.body_evaluations,
        )

    def __len__(self) -> int:
        return len(self._entries)


def found(result: Any) -> bool:
    """True iff a MemoTable.get result is an actual stored value."""
    return result is not _ABSENT


def memo_fix(
    body: Callable[[Callable[[MemoKey], Any], MemoKey], Any],
    table: MemoTable | None,
    *,
    depth_guard: int = DEFAULT_DEPTH_GUARD,
) -> Callable[[MemoKey], Any]:
    """Memoizing fixpoint of `body`.

    `body(recurse, key)` computes the value at `key`, making self-calls
    through `recurse`.  For a pure, well-founded body the result is
    extensionally equal to the plain fixpoint, and each distinct key's
    body runs at most once per table lifetime.  Passing `table=None`
    disables caching entirely (test mode); the results must not change.

    Self-call depth beyond `depth_guard` raises DepthExceededError, the
    runtime stand-in for a termination proof.
    """
    depth = 0

    def recurse(key: MemoKey) -> Any:
        nonlocal depth
        if table is not None:
            cached = table.get(key)
            if found(cached):
                return cached
        if depth >= depth_guard:
            raise DepthExceededError(
                f"memoized recursion exceeded {depth_guard} frames"
            )
        depth += 1
        try:
            value = body(recurse, key)
        finally:
            depth -= 1
        if table is not None:
            table.body_evaluations += 1
            table.put(key, value)
        return value

    return recurse
