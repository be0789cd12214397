import pytest

import weylsum as ws


@pytest.fixture(scope="session")
def sieve_10k():
    return ws.build_sieve(10**4)


@pytest.fixture(scope="session")
def sieve_100k():
    return ws.build_sieve(10**5)


@pytest.fixture(scope="session")
def x2p1():
    return ws.parse_poly("x^2+1")


@pytest.fixture(scope="session")
def table_10k(x2p1, sieve_10k):
    return ws.build_root_table(x2p1, sieve_10k, 10**4)


@pytest.fixture(scope="session")
def table_100k(x2p1, sieve_100k):
    return ws.build_root_table(x2p1, sieve_100k, 10**5)
