import numpy as np
import pytest

from gwgraphon.core import ObservedGraph, StepFunction


def random_measure(rng, n):
    mu = rng.random(n) + 0.1
    return mu / mu.sum()


def random_space(rng, n):
    """A symmetric matrix with entries in [0, 1] plus a strictly positive measure."""
    m = rng.random((n, n))
    m = 0.5 * (m + m.T)
    return m, random_measure(rng, n)


def random_step_function(rng, k):
    values, _ = random_space(rng, k)
    measure = np.sort(random_measure(rng, k))[::-1]
    return StepFunction(values, measure)


def random_graph(rng, n, p=0.5):
    upper = np.triu(rng.random((n, n)) < p, k=1)
    dense = (upper | upper.T).astype(float)
    return ObservedGraph.from_dense(dense)


@pytest.fixture
def rng():
    return np.random.default_rng(20260814)
