"""Hash-consing and memoization toolkit: a generic interning pool with
unique identifiers, memoizing fixpoint combinators, a reduced ordered
BDD engine, and a hash-consed lambda-calculus normalizer."""

from .intern import (
    InvalidChildError,
    Payload,
    Pool,
    PoolStats,
    UnknownIdError,
    hash_payload,
)
from .memo import (
    DepthExceededError,
    MemoContractError,
    MemoStats,
    MemoTable,
    MemoUsageError,
    found,
    memo_fix,
)
from .bdd import (
    FALSE,
    TRUE,
    BddManager,
    BddNode,
    IllOrderedError,
    UnboundVariableError,
)
from .lam import LambdaManager, ShapeError

__all__ = [
    "BddManager",
    "BddNode",
    "DepthExceededError",
    "FALSE",
    "IllOrderedError",
    "InvalidChildError",
    "LambdaManager",
    "MemoContractError",
    "MemoStats",
    "MemoTable",
    "MemoUsageError",
    "Payload",
    "Pool",
    "PoolStats",
    "ShapeError",
    "TRUE",
    "UnboundVariableError",
    "UnknownIdError",
    "found",
    "hash_payload",
    "memo_fix",
]

__version__ = "0.1.0"
