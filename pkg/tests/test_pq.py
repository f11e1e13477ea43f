from collections import Counter
from math import isqrt

import pytest

from primegen import oracle
from primegen.pq import CompositePQ, PQ_VARIANTS, epq_sieve, oneill_sieve, wpq_sieve
from primegen.sieves import es_euler, wheel_euler_w4
from primegen.streams import RunCounters, take


def test_pq_basic_ops():
    q = CompositePQ()
    q.insert(4, "g")
    assert q.min_item() == (4, "g")
    q.insert(9, "h")
    q.insert(4, "g2")  # duplicate keys allowed
    assert q.min_key() == 4
    assert len(q) == 3


def test_pq_insert_below_current_min():
    q = CompositePQ()
    q.insert(9, "h")
    q.insert(4, "g")
    assert q.min_key() == 4


def test_pq_replace_min():
    q = CompositePQ()
    q.insert(4, "g")
    q.insert(9, "h")
    q.replace_min(6, "g'")
    assert q.min_item() == (6, "g'")
    assert len(q) == 2


def test_pq_empty_min_is_an_error():
    with pytest.raises(IndexError):
        CompositePQ().min_item()


@pytest.mark.parametrize("w4", [False, True])
def test_oneill_matches_oracle(w4, primes10k):
    assert take(oneill_sieve(w4), 10_000) == primes10k


@pytest.mark.parametrize("w4", [False, True])
def test_epq_matches_oracle(w4, primes10k):
    assert take(epq_sieve(w4), 10_000) == primes10k


@pytest.mark.parametrize("w4", [False, True])
def test_wpq_matches_oracle(w4, primes10k):
    assert take(wpq_sieve(w4), 10_000) == primes10k


def test_epq_equals_stream_es(primes10k):
    assert take(epq_sieve(False), 10_000) == take(es_euler(), 10_000)


def test_wpq4_equals_stream_w4(primes10k):
    assert take(wpq_sieve(True), 10_000) == take(wheel_euler_w4(), 10_000)


def test_oneill_key_entries_match_bird_multiplicity():
    bound = 2_000
    counters = RunCounters.with_tally()
    for p in oneill_sieve(False, counters):
        if p > bound:
            break
    tally = {v: c for v, c in counters.tally.items() if v <= bound}
    assert sorted(tally) == oracle.composites_up_to(bound)
    for c, times in tally.items():
        assert times == oracle.bird_multiplicity(c)
    assert tally[120] == 3


@pytest.mark.parametrize("sieve", [epq_sieve, wpq_sieve])
def test_euler_pq_keys_enter_once(sieve):
    bound = 20_000
    counters = RunCounters.with_tally()
    for p in sieve(False, counters):
        if p > bound:
            break
    tally = {v: c for v, c in counters.tally.items() if v <= bound}
    assert sorted(tally) == oracle.composites_up_to(bound)
    assert set(tally.values()) == {1}


def test_epq_first_key_and_continuation():
    counters = RunCounters.with_tally()
    take(epq_sieve(False, counters), 5)
    keys = sorted(counters.tally)
    assert keys[0] == 4
    assert keys[:3] == [4, 6, 8]


def test_wpq4_first_key():
    counters = RunCounters.with_tally()
    take(wpq_sieve(True, counters), 6)  # up to 13: entry for 11 exists
    assert min(counters.tally) == 121


def test_epq_wpq_pop_identical_key_multisets():
    bound = 100_000
    popped = []
    for sieve in (epq_sieve, wpq_sieve):
        counters = RunCounters.with_tally()
        for p in sieve(False, counters):
            if p > bound:
                break
        popped.append(Counter({k: c for k, c in counters.popped.items()
                               if k <= bound}))
    assert popped[0] == popped[1]


@pytest.mark.parametrize("name", sorted(PQ_VARIANTS))
def test_queue_shape_and_pop_order(name, primes10k):
    variant = PQ_VARIANTS[name]
    counters = RunCounters()
    gen = variant.factory(counters=counters)
    value = take(gen, 10_000)[-1]
    assert value == primes10k[-1]
    expect = oracle.prime_count(isqrt(value))
    if variant.wheel:
        expect -= 4
    assert abs(counters.pq_size - expect) <= 1
    assert counters.pop_inversions == 0
