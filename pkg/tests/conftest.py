import random
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from udaf.digraph import Digraph  # noqa: E402


def random_digraph(rng: random.Random, max_vertices=5, max_edges=10, min_vertices=1) -> Digraph:
    n = rng.randint(min_vertices, max_vertices)
    m = rng.randint(0, max_edges)
    return Digraph(n, tuple((rng.randrange(n), rng.randrange(n)) for _ in range(m)))


def random_strong_relator(rng: random.Random, n: int, max_entry=2):
    """Relator of a strongly connected digraph: a Hamiltonian cycle plus random extra edges."""
    order = list(range(n))
    rng.shuffle(order)
    adj = [[0] * n for _ in range(n)]
    for a, b in zip(order, order[1:] + order[:1]):
        adj[a][b] += 1
    for _ in range(rng.randint(1, 2 * n)):
        i, j = rng.randrange(n), rng.randrange(n)
        if adj[i][j] < max_entry:
            adj[i][j] += 1
    return tuple(tuple(x - (i == j) for j, x in enumerate(row)) for i, row in enumerate(adj))


@pytest.fixture
def rng():
    return random.Random(20240611)


ACCEPTANCE_LINES: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for k in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[k])
