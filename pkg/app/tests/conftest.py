import logging

import pytest

from app.services.graph import ingest_edge_list

from .helpers import ORACLE_CFG, random_network

logging.basicConfig(level=logging.INFO)


@pytest.fixture
def random_net_factory():
    return random_network


@pytest.fixture
def oracle_cfg():
    return ORACLE_CFG


@pytest.fixture
def two_cycle():
    return ingest_edge_list([("a", "b"), ("b", "a")], mode="www", name="two_cycle")


@pytest.fixture
def trade_chain():
    """A -> B -> C with unit volumes"""
    return ingest_edge_list(
        [("A", "B", 1.0), ("B", "C", 1.0)], mode="trading", name="chain"
    )


@pytest.fixture
def star():
    """Four leaves all linking to the centre 'c'"""
    return ingest_edge_list(
        [(f"leaf{i}", "c") for i in range(1, 5)], mode="www", name="star"
    )
