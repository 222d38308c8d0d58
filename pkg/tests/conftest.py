import numpy as np
import pytest

from qecsearch import (
    complete_bipartite_graph,
    hardware_efficient_ansatz,
    ring_graph,
    stabilizer_table_code,
)


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


@pytest.fixture
def small_ansatz():
    """Ring-4 circuit, one logical qubit, two layers."""
    return hardware_efficient_ansatz(ring_graph(4), 2, code_dim=2)


@pytest.fixture
def bipartite_ansatz():
    """The 5-qubit layout used by the perfect-code preset."""
    return hardware_efficient_ansatz(complete_bipartite_graph(2, 3), 2, code_dim=2)


@pytest.fixture(scope="session")
def perfect_code():
    return stabilizer_table_code("5-2-3-perfect")
