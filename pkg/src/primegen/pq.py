"""Priority-queue sieves: the faithful incremental Eratosthenes and the
two Euler-style variants that replace its multiples generators.

The queue maps each prime's next composite (the key) to the generator
that produces that prime's later composites. For every candidate: below
the minimum key it is prime; otherwise the matching generators advance
via a combined delete-min-and-insert (a root replacement, not pop+push).

Entries are inserted only once candidates reach the prime's square, so
the queue holds one generator per prime whose square has been passed --
about pi(sqrt(n)) entries while sieving to n.

Three flavours of entry:
  oneill  values p*p + p, p*p + 2p, ... (with w4: p times the coprime
          survivors past p); composites with several prime factors are
          reached once per factor
  epq     the erased-set streams of the survivor induction; disjoint, so
          every composite enters the queue exactly once
  wpq     the same sets as cyclic delta streams scaled from the rolling
          wheel, advanced key+delta; O(1) state per entry
"""

import heapq
from collections import deque
from itertools import count, tee

from .sieves import Variant
from .streams import count_from, ensure_recursion_room, s_minus, scaled, replay
from .wheels import _w4_offsets, cyc, next_wheel_deltas, s4_stream, shared_deltas, wheel4


class CompositePQ:
    """Min-heap of (next composite, generator) entries.

    Arbitrary keys may be inserted; duplicate keys are allowed and pop
    order among equals is unspecified. Reading the minimum of an empty
    queue raises IndexError.
    """

    __slots__ = ("_heap", "_tick", "_counters")

    def __init__(self, counters=None):
        self._heap = []
        self._tick = count()
        self._counters = counters

    def __len__(self):
        return len(self._heap)

    def __bool__(self):
        return bool(self._heap)

    def insert(self, key, gen):
        heapq.heappush(self._heap, [key, next(self._tick), gen])
        c = self._counters
        if c is not None:
            c.born(key)
            c.pq_size = len(self._heap)

    def min_item(self):
        entry = self._heap[0]
        return entry[0], entry[2]

    def min_key(self):
        return self._heap[0][0]

    def replace_min(self, key, gen):
        """Delete the minimum and insert in one root replacement."""
        entry = self._heap[0]
        old = entry[0]
        entry[0] = key
        entry[1] = next(self._tick)
        entry[2] = gen
        heapq.heapreplace(self._heap, entry)
        c = self._counters
        if c is not None:
            c.note_pop(old)
            c.born(key)


def _wheel_multiples(p, phase, deltas):
    # p times the coprime survivors past p, resuming the wheel mid-phase
    pos = p
    i = phase
    n = len(deltas)
    while True:
        pos += deltas[i]
        i += 1
        if i == n:
            i = 0
        yield p * pos


def oneill_sieve(w4=False, counters=None):
    """The faithful incremental Sieve of Eratosthenes.

    On finding a prime p, schedule key p*p with the stream of further
    multiples: steps of p, or p times the wheel survivors past p when
    mounted on w_4.
    """

    def gen():
        ensure_recursion_room()
        pq = CompositePQ(counters)
        pending = deque()
        if w4:
            yield from (2, 3, 5, 7)
            cand = s4_stream()
            offsets = _w4_offsets()
            deltas = wheel4().deltas
        else:
            cand = count_from(2)
        for c in cand:
            while pending and pending[0][0] <= c:
                key, vals = pending.popleft()
                pq.insert(key, vals)
            if pq and pq.min_key() <= c:
                while pq.min_key() <= c:
                    _, g = pq.min_item()
                    pq.replace_min(next(g), g)
            else:
                yield c
                if w4:
                    vals = _wheel_multiples(c, offsets[c % 210], deltas)
                else:
                    vals = count_from(c * c + c, c)
                pending.append((c * c, vals))

    return gen()


class _ErasedCascade:
    """The survivor/erased plumbing of the queue-based Euler sieve.

    Every discovered prime c adds a round that (a) turns the values still
    surviving the earlier rounds into the erased stream c * survivors and
    (b) removes exactly that stream from the values handed to later
    rounds. Written with nested stream differences the demand chain gets
    one frame deeper per prime, which the interpreter cannot walk at desk
    scale, so the same dataflow runs here as one flat sweep: each value
    pulled from the base is multiplied into the feed of every round it
    survives and dropped at the round whose erased head it matches. The
    per-round feeds retain exactly the window the shared lazy streams
    would, which is why this sieve's memory grows the way the survivor
    induction's does.
    """

    __slots__ = ("_base", "_rounds", "_counters")

    # round layout: [prime, filter head, filter feed, queue feed, survivors]

    def __init__(self, base, counters):
        self._base = base
        self._rounds = []
        self._counters = counters

    def open_round(self, prime):
        """Start erasing with `prime`; returns its first key, prime**2.

        The square seeds the round's own filter (the erased set's source
        starts at the prime itself); the queue sees it as the returned
        key, so the queue feed carries only the later erased values.
        """
        self._rounds.append([prime, prime * prime, deque(), deque(), deque()])
        return prime * prime

    def next_erased(self, index):
        """The next queue value of round `index` (0-based)."""
        feed = self._rounds[index][3]
        while not feed:
            self._advance(index)
        return feed.popleft()

    def _advance(self, k):
        """Feed one more survivor of the earlier rounds into round k."""
        rounds = self._rounds
        while True:
            # deepest round with a buffered survivor; below that, the base
            j = k - 1
            while j >= 0 and not rounds[j][4]:
                j -= 1
            v = self._base.__next__() if j < 0 else rounds[j][4].popleft()
            for idx in range(j + 1, k):
                if not self._pass(idx, v):
                    break
            else:
                break
        if self._pass(k, v):
            rounds[k][4].append(v)

    def _pass(self, idx, v):
        # run v through round idx: grow its erased feeds, drop v if erased
        round_ = self._rounds[idx]
        prime = round_[0]
        if v == prime:
            # the prime heads its own round and is dropped from the flow
            return False
        grown = prime * v
        round_[2].append(grown)
        round_[3].append(grown)
        counters = self._counters
        if counters is not None:
            counters.comparisons += 1
        if v == round_[1]:
            round_[1] = round_[2].popleft()
            return False
        assert v < round_[1], "erased values overtook the survivors at %d" % v
        return True


def epq_sieve(w4=False, counters=None):
    """Sieve ES on a priority queue.

    On finding prime p with the survivors of the previous rounds headed
    by p itself, schedule key p*p with the rest of the erased set
    p * survivors, and hand later rounds the survivors past p with that
    set removed. Crossing-off pops the minimum and reinserts at the
    generator's next value.
    """

    def gen():
        ensure_recursion_room()
        pq = CompositePQ(counters)
        pending = deque()
        if w4:
            yield from (2, 3, 5, 7)
            cand = s4_stream()
        else:
            cand = count_from(2)
        walk, base = tee(cand)
        first = next(walk)
        yield first
        cascade = _ErasedCascade(_drop1(base), counters)
        pending.append((cascade.open_round(first), 0))
        index = 1
        for c in walk:
            while pending and pending[0][0] <= c:
                key, i = pending.popleft()
                pq.insert(key, _erased_values(cascade, i))
            if pq and pq.min_key() <= c:
                while pq.min_key() <= c:
                    _, g = pq.min_item()
                    pq.replace_min(next(g), g)
            else:
                yield c
                pending.append((cascade.open_round(c), index))
                index += 1

    return gen()


def _erased_values(cascade, index):
    while True:
        yield cascade.next_erased(index)


def wpq_sieve(w4=False, counters=None):
    """Sieve W on a priority queue: entries hold cyclic delta streams.

    On finding prime p the stored value is the wheel's gaps scaled by p;
    advancement adds the next delta to the popped key, so each entry is
    O(1) state plus one shared wheel per round.
    """

    def gen():
        ensure_recursion_room()
        pq = CompositePQ(counters)
        pending = deque()
        if w4:
            yield from (2, 3, 5, 7)
            cand = s4_stream()
            wheel = shared_deltas(wheel4(), counters)
        else:
            cand = count_from(2)
            wheel = shared_deltas((1,), counters)
        for c in cand:
            while pending and pending[0][0] <= c:
                key, deltas = pending.popleft()
                pq.insert(key, deltas)
            if pq and pq.min_key() <= c:
                while pq.min_key() <= c:
                    k, g = pq.min_item()
                    pq.replace_min(k + next(g), g)
            else:
                yield c
                pending.append((c * c, scaled(c, cyc(wheel))))
                wheel = replay(next_wheel_deltas(wheel, c), counters)

    return gen()


PQ_VARIANTS = {
    v.name: v
    for v in (
        Variant("on", "O'N", "pq", 0, lambda counters=None: oneill_sieve(False, counters)),
        Variant("on4", "O'N4", "pq", 4, lambda counters=None: oneill_sieve(True, counters)),
        Variant("epq", "EPQ", "pq", 0, lambda counters=None: epq_sieve(False, counters)),
        Variant("epq4", "EPQ4", "pq", 4, lambda counters=None: epq_sieve(True, counters)),
        Variant("wpq", "WPQ", "pq", 0, lambda counters=None: wpq_sieve(False, counters)),
        Variant("wpq4", "WPQ4", "pq", 4, lambda counters=None: wpq_sieve(True, counters)),
    )
}
