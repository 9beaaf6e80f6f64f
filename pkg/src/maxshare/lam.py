"""Hash-consed de Bruijn lambda terms with memoized normalization.

Terms live in an interning pool, so structurally equal terms share one
identifier and term equality is identifier comparison.  The four term
operations (lift, subst, head normal form, normal form) are memoized on
identifier-based keys; reduction is normal order (leftmost-outermost),
which is what lets the fixed-point combinator in the quicksort
benchmark normalize.

Normalization of non-trivial terms recurses deeply; run top-level calls
through `run_deep` (a worker thread with a large stack and a raised
recursion limit) when the input is not known to be small.
"""

from __future__ import annotations

import sys
import threading
from typing import Callable, Sequence

from .intern import Payload, Pool
from .memo import DepthExceededError, MemoTable, memo_fix

VAR_TAG = 0
APP_TAG = 1
ABS_TAG = 2

DEFAULT_STEP_GUARD = 10_000_000

DEEP_STACK_BYTES = 1 << 29
DEEP_RECURSION_LIMIT = 3_000_000


class LambdaError(Exception):
    pass


class ShapeError(LambdaError):
    """Decoder applied to a term that is not the expected encoding."""


def run_deep(fn: Callable, *args, stack_bytes: int = DEEP_STACK_BYTES,
             recursion_limit: int = DEEP_RECURSION_LIMIT):
    """Run `fn(*args)` on a worker thread with a big stack and a raised
    recursion limit, returning its result or re-raising its exception."""
    box: dict = {}

    def worker():
        old = sys.getrecursionlimit()
        sys.setrecursionlimit(recursion_limit)
        try:
            box["value"] = fn(*args)
        except BaseException as exc:  # re-raised on the caller's thread
            box["error"] = exc
        finally:
            sys.setrecursionlimit(old)

    threading.stack_size(stack_bytes)
    try:
        t = threading.Thread(target=worker)
        t.start()
        t.join()
    finally:
        threading.stack_size(0)
    if "error" in box:
        raise box["error"]
    return box["value"]


class LambdaManager:
    """Term pool plus the memo tables for lift/subst/hnf/nf.

    Single-writer.  `memo_enabled` is fixed at construction; build a
    second manager to compare memoized against unmemoized runs.  The
    step guard bounds beta reductions per top-level hnf/nf call and
    trips DepthExceededError on non-normalizing input.
    """

    def __init__(self, *, memo_enabled: bool = True,
                 step_guard: int = DEFAULT_STEP_GUARD) -> None:
        self.pool = Pool()
        self.memo_enabled = memo_enabled
        self.step_guard = step_guard
        self.m_lifti = MemoTable(3)
        self.m_subst = MemoTable(3)
        self.m_hnf = MemoTable(1)
        self.m_nf = MemoTable(1)
        self._steps = 0
        self._active = 0
        self._build_fixers()

    # -- constructors ----------------------------------------------------

    def mk_var(self, i: int) -> int:
        if i < 0:
            raise LambdaError(f"negative de Bruijn index {i}")
        return self.pool.intern(Payload(tag=VAR_TAG, attrs=(i,)))

    def mk_app(self, f: int, a: int) -> int:
        return self.pool.intern(Payload(tag=APP_TAG, children=(f, a)))

    def mk_abs(self, b: int) -> int:
        return self.pool.intern(Payload(tag=ABS_TAG, children=(b,)))

    # -- operations ------------------------------------------------------

    def _build_fixers(self) -> None:
        guard = 1 << 62  # the step guard is the real safety net
        mt = (lambda t: t) if self.memo_enabled else (lambda t: None)

        def lifti_body(recurse, key):
            n, t, k = key
            p = self.pool.resolve(t)
            if p.tag == VAR_TAG:
                i = p.attrs[0]
                return t if i < k else self.mk_var(i + n)
            if p.tag == ABS_TAG:
                return self.mk_abs(recurse((n, p.children[0], k + 1)))
            return self.mk_app(recurse((n, p.children[0], k)),
                               recurse((n, p.children[1], k)))

        self._lifti = memo_fix(lifti_body, mt(self.m_lifti),
                               depth_guard=guard)

        def subst_body(recurse, key):
            w, n, t = key
            p = self.pool.resolve(t)
            if p.tag == VAR_TAG:
                i = p.attrs[0]
                if i < n:
                    return t
                if i == n:
                    return self._lifti((n, w, 0))
                return self.mk_var(i - 1)
            if p.tag == ABS_TAG:
                return self.mk_abs(recurse((w, n + 1, p.children[0])))
            return self.mk_app(recurse((w, n, p.children[0])),
                               recurse((w, n, p.children[1])))

        self._subst = memo_fix(subst_body, mt(self.m_subst),
                               depth_guard=guard)

        def beta(u: int, w: int) -> int:
            self._steps += 1
            if self._steps > self.step_guard:
                raise DepthExceededError(
                    f"exceeded {self.step_guard} reduction steps"
                )
            return self._subst((u, 0, w))

        def hnf_body(recurse, key):
            (t,) = key
            p = self.pool.resolve(t)
            if p.tag == VAR_TAG:
                return t
            if p.tag == ABS_TAG:
                return self.mk_abs(recurse((p.children[0],)))
            f, u = p.children
            h = recurse((f,))
            hp = self.pool.resolve(h)
            if hp.tag == ABS_TAG:
                return recurse((beta(u, hp.children[0]),))
            return self.mk_app(h, u)

        self._hnf = memo_fix(hnf_body, mt(self.m_hnf), depth_guard=guard)

        def nf_body(recurse, key):
            (t,) = key
            p = self.pool.resolve(t)
            if p.tag == VAR_TAG:
                return t
            if p.tag == ABS_TAG:
                return self.mk_abs(recurse((p.children[0],)))
            f, u = p.children
            h = self._hnf((f,))
            hp = self.pool.resolve(h)
            if hp.tag == ABS_TAG:
                return recurse((beta(u, hp.children[0]),))
            return self.mk_app(recurse((h,)), recurse((u,)))

        self._nf = memo_fix(nf_body, mt(self.m_nf), depth_guard=guard)

    def lifti(self, n: int, t: int, k: int) -> int:
        """Shift free variables >= k up by n."""
        return self._lifti((n, t, k))

    def lift(self, n: int, t: int) -> int:
        return self._lifti((n, t, 0))

    def subst(self, w: int, n: int, t: int) -> int:
        """Substitute w for variable n in t, decrementing the variables
        above the cut."""
        return self._subst((w, n, t))

    def _guarded(self, fix, t: int) -> int:
        self.pool.resolve(t)
        if self._active == 0:
            self._steps = 0
        self._active += 1
        try:
            return fix((t,))
        finally:
            self._active -= 1

    def hnf(self, t: int) -> int:
        """Head normal form under normal-order reduction."""
        return self._guarded(self._hnf, t)

    def nf(self, t: int) -> int:
        """Full normal form under normal-order reduction."""
        return self._guarded(self._nf, t)

    @property
    def reduction_steps(self) -> int:
        """Beta steps taken by the current/last top-level hnf/nf call."""
        return self._steps


# -- plain reference normalizer --------------------------------------------
#
# The unshared baseline: terms are nested tuples, nothing is interned
# and nothing is memoized, so every node construction is a fresh
# allocation.  Serves as an independent oracle for the pooled
# normalizer and as the measurement baseline for how much work sharing
# plus memoization saves.

PlainTerm = tuple


class PlainNormalizer:
    def __init__(self, *, step_guard: int = DEFAULT_STEP_GUARD) -> None:
        self.allocations = 0
        self.reduction_steps = 0
        self.step_guard = step_guard

    def var(self, i: int) -> PlainTerm:
        self.allocations += 1
        return ("var", i)

    def app(self, f: PlainTerm, a: PlainTerm) -> PlainTerm:
        self.allocations += 1
        return ("app", f, a)

    def abs(self, b: PlainTerm) -> PlainTerm:
        self.allocations += 1
        return ("abs", b)

    def lifti(self, n: int, t: PlainTerm, k: int) -> PlainTerm:
        if t[0] == "var":
            return t if t[1] < k else self.var(t[1] + n)
        if t[0] == "abs":
            return self.abs(self.lifti(n, t[1], k + 1))
        return self.app(self.lifti(n, t[1], k), self.lifti(n, t[2], k))

    def subst(self, w: PlainTerm, n: int, t: PlainTerm) -> PlainTerm:
        if t[0] == "var":
            i = t[1]
            if i < n:
                return t
            if i == n:
                return self.lifti(n, w, 0)
            return self.var(i - 1)
        if t[0] == "abs":
            return self.abs(self.subst(w, n + 1, t[1]))
        return self.app(self.subst(w, n, t[1]), self.subst(w, n, t[2]))

    def _beta(self, u: PlainTerm, w: PlainTerm) -> PlainTerm:
        self.reduction_steps += 1
        if self.reduction_steps > self.step_guard:
            raise DepthExceededError(
                f"exceeded {self.step_guard} reduction steps"
            )
        return self.subst(u, 0, w)

    def hnf(self, t: PlainTerm) -> PlainTerm:
        if t[0] == "var":
            return t
        if t[0] == "abs":
            return self.abs(self.hnf(t[1]))
        h = self.hnf(t[1])
        if h[0] == "abs":
            return self.hnf(self._beta(t[2], h[1]))
        return self.app(h, t[2])

    def nf(self, t: PlainTerm) -> PlainTerm:
        if t[0] == "var":
            return t
        if t[0] == "abs":
            return self.abs(self.nf(t[1]))
        h = self.hnf(t[1])
        if h[0] == "abs":
            return self.nf(self._beta(t[2], h[1]))
        return self.app(self.nf(h), self.nf(t[2]))


def to_plain(mgr: LambdaManager, t: int) -> PlainTerm:
    """Unfold a pooled term into the unshared tuple representation."""
    p = mgr.pool.resolve(t)
    if p.tag == VAR_TAG:
        return ("var", p.attrs[0])
    if p.tag == ABS_TAG:
        return ("abs", to_plain(mgr, p.children[0]))
    return ("app", to_plain(mgr, p.children[0]),
            to_plain(mgr, p.children[1]))


def from_plain(mgr: LambdaManager, t: PlainTerm) -> int:
    """Re-encode an unshared term into the pool, bottom-up."""
    if t[0] == "var":
        return mgr.mk_var(t[1])
    if t[0] == "abs":
        return mgr.mk_abs(from_plain(mgr, t[1]))
    return mgr.mk_app(from_plain(mgr, t[1]), from_plain(mgr, t[2]))


# -- named-term builder (internal) ----------------------------------------
#
# The combinator library below is much easier to audit with names than
# with raw de Bruijn indices; `_build` does the index conversion.  This
# is construction plumbing only, not a surface syntax.

def _build(mgr: LambdaManager, expr, env: tuple[str, ...] = ()) -> int:
    if isinstance(expr, int):  # splice of an already-built closed term
        return expr
    if isinstance(expr, str):
        try:
            return mgr.mk_var(env.index(expr))
        except ValueError:
            raise LambdaError(f"unbound name {expr!r}") from None
    kind = expr[0]
    if kind == "lam":
        _, name, body = expr
        return mgr.mk_abs(_build(mgr, body, (name,) + env))
    if kind == "app":
        t = _build(mgr, expr[1], env)
        for arg in expr[2:]:
            t = mgr.mk_app(t, _build(mgr, arg, env))
        return t
    raise LambdaError(f"bad builder expression {expr!r}")


def _lam(names: str, body):
    out = body
    for name in reversed(names.split()):
        out = ("lam", name, out)
    return out


def _app(*parts):
    return ("app",) + parts


# -- Church encodings ------------------------------------------------------

def church(mgr: LambdaManager, n: int) -> int:
    """The numeral  lam f. lam x. f^n x."""
    if n < 0:
        raise LambdaError(f"cannot encode negative number {n}")
    f, x = mgr.mk_var(1), mgr.mk_var(0)
    t = x
    for _ in range(n):
        t = mgr.mk_app(f, t)
    return mgr.mk_abs(mgr.mk_abs(t))

def church_list(mgr: LambdaManager, xs: Sequence[int]) -> int:
    """Right-fold encoding  lam c. lam n. c x1 (c x2 (... n))  with
    Church-numeral elements."""
    c, n = mgr.mk_var(1), mgr.mk_var(0)
    t = n
    for v in reversed(xs):
        t = mgr.mk_app(mgr.mk_app(c, church(mgr, v)), t)
    return mgr.mk_abs(mgr.mk_abs(t))


def church_add(mgr: LambdaManager, a: int, b: int) -> int:
    plus = _build(mgr, _lam("m n f x", _app("m", "f", _app("n", "f", "x"))))
    return mgr.mk_app(mgr.mk_app(plus, a), b)


def church_mul(mgr: LambdaManager, a: int, b: int) -> int:
    times = _build(mgr, _lam("m n f", _app("m", _app("n", "f"))))
    return mgr.mk_app(mgr.mk_app(times, a), b)


def decode_church(mgr: LambdaManager, t: int) -> int:
    """Inverse of `church` on normal-form numerals."""
    p = mgr.pool.resolve(t)
    if p.tag != ABS_TAG:
        raise ShapeError("numeral must start with two abstractions")
    p = mgr.pool.resolve(p.children[0])
    if p.tag != ABS_TAG:
        raise ShapeError("numeral must start with two abstractions")
    body = p.children[0]
    count = 0
    while True:
        q = mgr.pool.resolve(body)
        if q.tag == VAR_TAG:
            if q.attrs[0] != 0:
                raise ShapeError("numeral body must end at the bound var")
            return count
        if q.tag == APP_TAG:
            head = mgr.pool.resolve(q.children[0])
            if head.tag != VAR_TAG or head.attrs[0] != 1:
                raise ShapeError("numeral body must iterate the function var")
            count += 1
            body = q.children[1]
        else:
            raise ShapeError("unexpected abstraction inside numeral body")


def decode_list(mgr: LambdaManager, t: int) -> list[int]:
    """Inverse of `church_list` on normal-form lists of numerals."""
    p = mgr.pool.resolve(t)
    if p.tag != ABS_TAG:
        raise ShapeError("list must start with two abstractions")
    p = mgr.pool.resolve(p.children[0])
    if p.tag != ABS_TAG:
        raise ShapeError("list must start with two abstractions")
    body = p.children[0]
    out: list[int] = []
    while True:
        q = mgr.pool.resolve(body)
        if q.tag == VAR_TAG:
            if q.attrs[0] != 0:
                raise ShapeError("list body must end at the nil var")
            return out
        if q.tag != APP_TAG:
            raise ShapeError("unexpected abstraction inside list body")
        inner = mgr.pool.resolve(q.children[0])
        if inner.tag != APP_TAG:
            raise ShapeError("list body must apply the cons var")
        head = mgr.pool.resolve(inner.children[0])
        if head.tag != VAR_TAG or head.attrs[0] != 1:
            raise ShapeError("list body must apply the cons var")
        out.append(decode_church(mgr, inner.children[1]))
        body = q.children[1]


# -- quicksort over Church-encoded lists -----------------------------------

def quicksort_term(mgr: LambdaManager) -> int:
    """A closed term sorting fold-encoded lists of Church numerals.

    Uses Turing's fixed-point combinator, Church booleans, and the pair
    trick for predecessor and list tail; partitions on `less than
    pivot` so duplicates of the pivot stay in the right half.
    """
    tru = _lam("a b", "a")
    fls = _lam("a b", "b")
    notb = _lam("p a b", _app("p", "b", "a"))
    pair = _lam("a b f", _app("f", "a", "b"))
    fst = _lam("p", _app("p", tru))
    snd = _lam("p", _app("p", fls))

    zero = _lam("f x", "x")
    succ = _lam("n f x", _app("f", _app("n", "f", "x")))
    pred = _lam("n", _app(
        fst,
        _app("n",
             _lam("p", _app(pair, _app(snd, "p"),
                            _app(succ, _app(snd, "p")))),
             _app(pair, zero, zero))))
    sub = _lam("m n", _app("n", pred, "m"))
    iszero = _lam("n", _app("n", _lam("z", fls), tru))
    leb = _lam("m n", _app(iszero, _app(sub, "m", "n")))
    ltb = _lam("m n", _app(leb, _app(succ, "m"), "n"))

    nil = _lam("c n", "n")
    cons = _lam("h t c n", _app("c", "h", _app("t", "c", "n")))
    append = _lam("a b c n", _app("a", "c", _app("b", "c", "n")))
    filt = _lam("p l c n", _app(
        "l", _lam("h t", _app("p", "h", _app("c", "h", "t"), "t")), "n"))
    isnil = _lam("l", _app("l", _lam("h t", fls), tru))
    head = _lam("l", _app("l", _lam("h t", "h"), zero))
    tail = _lam("l", _app(
        fst,
        _app("l",
             _lam("h acc", _app(pair, _app(snd, "acc"),
                                _app(cons, "h", _app(snd, "acc")))),
             _app(pair, nil, nil))))

    half = _lam("x y", _app("y", _app("x", "x", "y")))
    theta = _app(half, half)

    step = _lam("rec l", _app(
        _app(isnil, "l"),
        nil,
        _app(append,
             _app("rec", _app(filt,
                              _lam("z", _app(ltb, "z", _app(head, "l"))),
                              _app(tail, "l"))),
             _app(cons, _app(head, "l"),
                  _app("rec", _app(filt,
                                   _lam("z", _app(notb,
                                                  _app(ltb, "z",
                                                       _app(head, "l")))),
                                   _app(tail, "l")))))))

    return _build(mgr, _app(theta, step))
