"""Lazy ordered-stream kernel.

Streams are plain Python iterators of weakly increasing 64-bit naturals,
pulled one element at a time. This module provides the merge/difference
combinators the sieves are built from, precondition-specialised fast paths
(`d_union`, `s_minus`), a productivity-preserving fold over a stream of
streams, cyclic wheel rolling, and `StreamFixpoint`, which makes the
sharing implicit in self-referential definitions ("primes defined in terms
of primes") explicit via a replayable memo buffer.

Conventions:
  * inputs to `d_union`/`s_minus`/`minus` must be strictly increasing;
  * `d_union` additionally requires disjoint inputs and `s_minus` requires
    the second stream to be a subset of the first -- violations trip an
    `assert` in debug runs and fall back to the permissive arm under -O;
  * elements are unsigned 64-bit; growing past 2**64-1 raises
    `StreamOverflow` rather than wrapping.
"""

import sys
from collections import Counter
from dataclasses import dataclass, field
from itertools import count, cycle, islice

U64_MAX = (1 << 64) - 1

# pulling one element can cross a few suspended frames per sieving round;
# this is enough headroom for hundreds of rounds while staying well clear
# of the interpreter's C stack
_RECURSION_ROOM = 6_000


def ensure_recursion_room(limit=_RECURSION_ROOM):
    if sys.getrecursionlimit() < limit:
        sys.setrecursionlimit(limit)


class StreamError(Exception):
    """Base class for stream-kernel failures."""


class StreamOverflow(StreamError):
    """A stream element left the unsigned 64-bit range."""


class NonProductiveStream(StreamError):
    """A fixpoint demanded elements it has not produced yet."""


@dataclass
class RunCounters:
    """Optional instrumentation shared by one sieve instance.

    `composites` counts generation events (a value entering a composites
    stream, or a key entering a priority queue); `comparisons` counts head
    comparisons inside the merge/difference loops; `buffered`/`peak_buffer`
    track memoized elements across fixpoint and replay buffers. `tally`
    and `popped`, when enabled, record per-value multiplicities.
    """

    composites: int = 0
    comparisons: int = 0
    pulls: int = 0
    buffered: int = 0
    peak_buffer: int = 0
    pq_size: int = 0
    pop_inversions: int = 0
    tally: Counter = None
    popped: Counter = None
    _last_popped: int = field(default=-1, repr=False)

    @classmethod
    def with_tally(cls):
        return cls(tally=Counter(), popped=Counter())

    def born(self, value, times=1):
        self.composites += times
        if self.tally is not None:
            self.tally[value] += times

    def note_buffered(self):
        self.buffered += 1
        if self.buffered > self.peak_buffer:
            self.peak_buffer = self.buffered

    def note_pop(self, key):
        if key < self._last_popped:
            self.pop_inversions += 1
        self._last_popped = key
        if self.popped is not None:
            self.popped[key] += 1


def count_from(start, step=1):
    """The stream start, start+step, ... (unchecked; see `spin` for wheels)."""
    return count(start, step)


def take(stream, n):
    """Materialize the first n elements."""
    return list(islice(stream, n))


def drop(stream, n):
    """The stream without its first n elements."""
    return islice(stream, n, None)


def nth(stream, n):
    """1-based n-th element."""
    if n < 1:
        raise ValueError("n must be >= 1")
    for value in islice(stream, n - 1, None):
        return value
    raise ValueError("stream ended before element %d" % n)


def scaled(factor, source):
    """Each source element multiplied by `factor`, overflow-checked."""
    limit = U64_MAX // factor
    for v in source:
        if v > limit:
            raise StreamOverflow("%d * %d exceeds 64 bits" % (factor, v))
        yield factor * v


def births(source, counters):
    """Tally every element of `source` as one generation event."""
    if counters is None:
        return source
    return _counted(source, counters)


def _counted(source, counters):
    born = counters.born
    for v in source:
        born(v)
        yield v


# ---------------------------------------------------------------------------
# merge / difference combinators


def union(xs, ys, counters=None):
    """Strictly increasing merge of two strictly increasing streams.

    Shared values are emitted once. Finite inputs are handled: once one
    side ends the other is passed through.
    """
    if counters is not None:
        return _merged(iter(xs), iter(ys), counters, False)
    return _union_fast(iter(xs), iter(ys))


def _union_fast(xs, ys):
    nx = xs.__next__
    ny = ys.__next__
    try:
        x = nx()
    except StopIteration:
        yield from ys
        return
    try:
        y = ny()
    except StopIteration:
        yield x
        yield from xs
        return
    while True:
        if x < y:
            yield x
            try:
                x = nx()
            except StopIteration:
                yield y
                yield from ys
                return
        elif y < x:
            yield y
            try:
                y = ny()
            except StopIteration:
                yield x
                yield from xs
                return
        else:
            yield x
            try:
                x = nx()
            except StopIteration:
                yield from ys
                return
            try:
                y = ny()
            except StopIteration:
                yield x
                yield from xs
                return


def d_union(xs, ys, counters=None):
    """Merge of *disjoint* strictly increasing streams.

    The equal-heads case is never consulted; under -O an equal pair
    degrades to emitting ys's copy first (the permissive arm).
    """
    if counters is not None:
        return _merged(iter(xs), iter(ys), counters, True)
    return _d_union_fast(iter(xs), iter(ys))


def _d_union_fast(xs, ys):
    nx = xs.__next__
    ny = ys.__next__
    try:
        x = nx()
    except StopIteration:
        yield from ys
        return
    try:
        y = ny()
    except StopIteration:
        yield x
        yield from xs
        return
    while True:
        if x < y:
            yield x
            try:
                x = nx()
            except StopIteration:
                yield y
                yield from ys
                return
        else:
            assert y < x, "d_union: inputs are not disjoint (both contain %d)" % x
            yield y
            try:
                y = ny()
            except StopIteration:
                yield x
                yield from xs
                return


def _merged(xs, ys, counters, disjoint):
    # instrumented merge; one `comparisons` tick per head-to-head decision
    nx = xs.__next__
    ny = ys.__next__
    try:
        x = nx()
    except StopIteration:
        yield from ys
        return
    try:
        y = ny()
    except StopIteration:
        yield x
        yield from xs
        return
    while True:
        counters.comparisons += 1
        if x < y:
            yield x
            try:
                x = nx()
            except StopIteration:
                yield y
                yield from ys
                return
        elif disjoint or y < x:
            assert not disjoint or y < x, (
                "d_union: inputs are not disjoint (both contain %d)" % x)
            yield y
            try:
                y = ny()
            except StopIteration:
                yield x
                yield from xs
                return
        else:
            yield x
            try:
                x = nx()
            except StopIteration:
                yield from ys
                return
            try:
                y = ny()
            except StopIteration:
                yield x
                yield from xs
                return


def union_p(xs, ys, counters=None):
    """`union` that emits the head of xs before ever inspecting ys.

    The caller guarantees head(xs) < head(ys); this is what keeps a right
    fold over infinitely many streams productive.
    """
    xs = iter(xs)
    yield next(xs)
    yield from union(xs, ys, counters)


def d_union_p(xs, ys, counters=None):
    """`d_union` variant of `union_p`."""
    xs = iter(xs)
    yield next(xs)
    yield from d_union(xs, ys, counters)


def minus(xs, ys, counters=None):
    """Ordered set difference xs \\ ys of strictly increasing streams."""
    if counters is not None:
        return _diffed(iter(xs), iter(ys), counters, False)
    return _minus_fast(iter(xs), iter(ys))


def _minus_fast(xs, ys):
    nx = xs.__next__
    ny = ys.__next__
    try:
        x = nx()
    except StopIteration:
        return
    try:
        y = ny()
    except StopIteration:
        yield x
        yield from xs
        return
    while True:
        if x < y:
            yield x
            x = nx()
        elif x > y:
            try:
                y = ny()
            except StopIteration:
                yield x
                yield from xs
                return
        else:
            x = nx()
            try:
                y = ny()
            except StopIteration:
                yield from xs
                return


def s_minus(xs, ys, counters=None):
    """Difference for the special case elements(ys) ⊆ elements(xs).

    Never needs a "skip ys" arm: whenever heads differ, x < y must hold
    (asserted in debug runs).
    """
    if counters is not None:
        return _diffed(iter(xs), iter(ys), counters, True)
    return _s_minus_fast(iter(xs), iter(ys))


def _s_minus_fast(xs, ys):
    nx = xs.__next__
    ny = ys.__next__
    try:
        x = nx()
    except StopIteration:
        return
    try:
        y = ny()
    except StopIteration:
        yield x
        yield from xs
        return
    while True:
        if x == y:
            x = nx()
            try:
                y = ny()
            except StopIteration:
                yield from xs
                return
        else:
            assert x < y, "s_minus: ys is not a subset of xs (saw %d > %d)" % (x, y)
            yield x
            x = nx()


def _diffed(xs, ys, counters, subset):
    nx = xs.__next__
    ny = ys.__next__
    try:
        x = nx()
    except StopIteration:
        return
    try:
        y = ny()
    except StopIteration:
        yield x
        yield from xs
        return
    while True:
        counters.comparisons += 1
        if x == y:
            x = nx()
            try:
                y = ny()
            except StopIteration:
                yield from xs
                return
        elif x < y:
            yield x
            x = nx()
        else:
            assert not subset, "s_minus: ys is not a subset of xs (saw %d > %d)" % (x, y)
            try:
                y = ny()
            except StopIteration:
                yield x
                yield from xs
                return


# ---------------------------------------------------------------------------
# wheels as delta streams


def circ(wheel):
    """Endless repetition of a wheel's finite gap sequence."""
    deltas = tuple(wheel)
    if not deltas:
        raise StreamError("cannot roll an empty wheel")
    return cycle(deltas)


def spin(deltas, start):
    """Positions start, start+d1, start+d1+d2, ... for positive deltas.

    Strictly increasing; leaving the 64-bit range raises `StreamOverflow`
    instead of wrapping.
    """
    pos = start
    if pos > U64_MAX:
        raise StreamOverflow("spin start %d exceeds 64 bits" % pos)
    yield pos
    for d in deltas:
        pos += d
        if pos > U64_MAX:
            raise StreamOverflow("spin position exceeds 64 bits")
        yield pos


# ---------------------------------------------------------------------------
# productive fold over a stream of streams


def fold_union_p(streams, disjoint=False, counters=None):
    """Right fold of `union_p` (or `d_union_p`) over a stream of streams.

    The head of each inner stream is emitted before the rest of the fold
    is even constructed, so pulling the first n elements forces only the
    inner streams whose heads may already be due -- for Bird-style
    multiples, at most pi(sqrt(value_n)) + 1 of them.

    The merge is inlined into the fold node: an element produced by the
    k-th inner stream crosses k suspended frames on its way out, which is
    the O(n*m) cost model this family of sieves lives with.
    """
    first = next(streams, None)
    if first is None:
        return
    nx = first.__next__
    try:
        x = nx()
    except StopIteration:
        yield from fold_union_p(streams, disjoint, counters)
        return
    yield x
    try:
        x = nx()
    except StopIteration:
        yield from fold_union_p(streams, disjoint, counters)
        return
    rest = fold_union_p(streams, disjoint, counters)
    ny = rest.__next__
    try:
        y = ny()
    except StopIteration:
        yield x
        yield from first
        return
    if counters is not None:
        while True:
            counters.comparisons += 1
            if x < y:
                yield x
                try:
                    x = nx()
                except StopIteration:
                    yield y
                    yield from rest
                    return
            elif disjoint or y < x:
                assert not disjoint or y < x, (
                    "fold_union_p: disjoint fold saw %d twice" % x)
                yield y
                try:
                    y = ny()
                except StopIteration:
                    yield x
                    yield from first
                    return
            else:
                yield x
                try:
                    x = nx()
                except StopIteration:
                    yield from rest
                    return
                try:
                    y = ny()
                except StopIteration:
                    yield x
                    yield from first
                    return
    elif disjoint:
        while True:
            if x < y:
                yield x
                try:
                    x = nx()
                except StopIteration:
                    yield y
                    yield from rest
                    return
            else:
                assert y < x, "fold_union_p: disjoint fold saw %d twice" % x
                yield y
                try:
                    y = ny()
                except StopIteration:
                    yield x
                    yield from first
                    return
    else:
        while True:
            if x < y:
                yield x
                try:
                    x = nx()
                except StopIteration:
                    yield y
                    yield from rest
                    return
            elif y < x:
                yield y
                try:
                    y = ny()
                except StopIteration:
                    yield x
                    yield from first
                    return
            else:
                yield x
                try:
                    x = nx()
                except StopIteration:
                    yield from rest
                    return
                try:
                    y = ny()
                except StopIteration:
                    yield x
                    yield from first
                    return


# ---------------------------------------------------------------------------
# fixpoints and shared replay


class StreamFixpoint:
    """A growable memoized stream with any number of replaying readers.

    `producer` receives the fixpoint itself and returns the stream that
    defines the buffered sequence; it may create readers on the handle, so
    self-referential definitions tie their knot through the buffer. Every
    reader replays the memoized prefix before demanding new elements, so
    all readers observe the identical sequence.

    Producing element n may consume only elements already in the buffer.
    A re-entrant demand for an unproduced element raises
    `NonProductiveStream` instead of hanging. The buffer grows without
    eviction; `buffered` is its current size.
    """

    __slots__ = ("_buf", "_producer", "_source", "_filling", "_done", "_counters")

    def __init__(self, producer, counters=None):
        self._buf = []
        self._producer = producer
        self._source = None
        self._filling = False
        self._done = False
        self._counters = counters

    @property
    def buffered(self):
        return len(self._buf)

    def snapshot(self):
        """The memoized prefix produced so far (a copy)."""
        return tuple(self._buf)

    @property
    def exhausted(self):
        """True once the producer has ended (only finite sources end)."""
        return self._done

    def _fill(self, n):
        buf = self._buf
        while len(buf) <= n:
            if self._done:
                return False
            if self._filling:
                raise NonProductiveStream(
                    "non-productive definition: element %d demanded while "
                    "producing element %d" % (n, len(buf)))
            self._filling = True
            try:
                if self._source is None:
                    self._source = iter(self._producer(self))
                try:
                    value = next(self._source)
                except StopIteration:
                    self._done = True
                    return False
            finally:
                self._filling = False
            buf.append(value)
            if self._counters is not None:
                self._counters.note_buffered()
        return True

    def reader(self, skip=0):
        """A fresh stream replaying the sequence, optionally from index `skip`."""
        buf = self._buf
        fill = self._fill
        i = skip
        while True:
            if i >= len(buf) and not fill(i):
                return
            yield buf[i]
            i += 1

    def __iter__(self):
        return self.reader()


def fix_stream(producer, counters=None):
    """The unique stream s with s = producer(handle-replaying-s)."""
    ensure_recursion_room()
    return StreamFixpoint(producer, counters).reader()


def replay(iterable, counters=None):
    """Share one underlying iterator between several readers."""
    it = iter(iterable)
    return StreamFixpoint(lambda handle: it, counters)
