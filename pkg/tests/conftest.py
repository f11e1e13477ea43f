import pytest

from primegen import oracle


@pytest.fixture(scope="session")
def primes100k():
    return oracle.first_primes(100_000)


@pytest.fixture(scope="session")
def primes10k(primes100k):
    return primes100k[:10_000]


@pytest.fixture(scope="session")
def composites100k():
    return oracle.composites_up_to(100_000)
