import random

import pytest
from hypothesis import given, strategies as st

from maxshare.intern import (
    InvalidChildError,
    Payload,
    Pool,
    UnknownIdError,
    hash_payload,
)


def leaf(attr):
    return Payload(tag=0, attrs=(attr,))


def test_intern_twice_returns_same_id():
    pool = Pool()
    a = pool.intern(leaf(7))
    before = pool.stats().node_count
    b = pool.intern(leaf(7))
    assert a == b
    assert pool.stats().node_count == before


def test_intern_distinguishes_attrs():
    pool = Pool()
    assert pool.intern(leaf(1)) != pool.intern(leaf(2))


def test_preallocated_ids_come_first():
    pool = Pool(preallocated=[leaf(0), leaf(1)])
    assert pool.next == 2
    first = pool.intern(leaf(2))
    assert first == 2
    assert pool.next == 3


def test_resolve_round_trip():
    pool = Pool()
    p = Payload(tag=1, attrs=(3,), children=())
    assert pool.resolve(pool.intern(p)) == p


def test_resolve_preallocated_leaf():
    pool = Pool(preallocated=[leaf(0)])
    assert pool.resolve(0) == leaf(0)


def test_resolve_out_of_range():
    pool = Pool()
    pool.intern(leaf(1))
    with pytest.raises(UnknownIdError):
        pool.resolve(pool.next)


def test_invalid_child_rejected():
    pool = Pool()
    a = pool.intern(leaf(1))
    with pytest.raises(InvalidChildError):
        pool.intern(Payload(tag=1, children=(a + 5,)))


def test_hash_deterministic():
    p = Payload(tag=1, attrs=(3,), children=(0, 1))
    assert hash_payload(p) == hash_payload(p)
    assert 0 <= hash_payload(p) < 2**64


def test_hash_collision_rate():
    rng = random.Random(42)
    seen = set()
    hashes = set()
    n = 10**5
    while len(seen) < n:
        p = Payload(tag=rng.randint(0, 3),
                    attrs=(rng.randint(0, 10**9),),
                    children=())
        if p not in seen:
            seen.add(p)
            hashes.add(hash_payload(p))
    collisions = n - len(hashes)
    assert collisions / n < 0.01


def test_scan_duplicates_empty_after_interning():
    pool = Pool()
    rng = random.Random(0)
    for _ in range(2000):
        pool.intern(leaf(rng.randint(0, 200)))
    assert pool.scan_duplicates() == []


def test_scan_duplicates_finds_injected_copy():
    pool = Pool()
    a = pool.intern(leaf(1))
    pool.intern(leaf(2))
    copy = pool._inject_duplicate(a)
    assert pool.scan_duplicates() == [(a, copy)]


def test_scan_duplicates_empty_pool():
    assert Pool().scan_duplicates() == []


@given(st.lists(st.tuples(st.integers(0, 3), st.integers(0, 50)),
                max_size=60))
def test_pool_invariants(specs):
    pool = Pool(preallocated=[leaf(0), leaf(1)])
    issued = [0, 1]
    for tag, attr in specs:
        # children sampled deterministically from ids issued so far
        kids = tuple(issued[(attr + i) % len(issued)] for i in range(tag % 3))
        uid = pool.intern(Payload(tag=tag, attrs=(attr,), children=kids))
        issued.append(uid)
        assert uid < pool.next
    # bijection: resolve inverts intern for every issued id
    for uid in range(pool.next):
        p = pool.resolve(uid)
        assert pool.intern(p) == uid
    # acyclicity: children strictly smaller than the parent
    for uid in range(pool.next):
        assert all(c < uid for c in pool.resolve(uid).children)
    assert pool.scan_duplicates() == []


@given(st.tuples(st.integers(0, 3), st.integers(0, 5)),
       st.tuples(st.integers(0, 3), st.integers(0, 5)))
def test_identifier_equality_decides_structural_equality(a, b):
    pool = Pool()
    pa = Payload(tag=a[0], attrs=(a[1],))
    pb = Payload(tag=b[0], attrs=(b[1],))
    assert (pool.intern(pa) == pool.intern(pb)) == (pa == pb)
