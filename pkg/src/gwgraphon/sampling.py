"""Random graph generation from a graphon."""

from __future__ import annotations

from typing import List, Sequence

import numpy as np
import scipy.sparse as sp

from .core import DomainError, ObservedGraph, _degree_measure
from .graphons import GraphonSpec, _evaluate_array


def estimate_node_measure(adjacency):
    """Degree-proportional node measure of a symmetric binary adjacency.

    Degrees are floored at 1e-8 before normalization, so isolated nodes keep
    a tiny positive mass and an edgeless graph gets the uniform measure.
    """
    if sp.issparse(adjacency):
        adj = sp.csr_array(adjacency)
        if adj.shape[0] != adj.shape[1]:
            raise DomainError("adjacency must be square")
        if adj.nnz and np.any((adj.data != 0.0) & (adj.data != 1.0)):
            raise DomainError("adjacency entries must be 0 or 1")
        diff = (adj - adj.T).tocoo()
        if diff.nnz and float(np.abs(diff.data).max()) > 0.0:
            raise DomainError("adjacency must be symmetric")
    else:
        adj = np.asarray(adjacency, dtype=float)
        if adj.ndim != 2 or adj.shape[0] != adj.shape[1]:
            raise DomainError("adjacency must be square")
        if np.any((adj != 0.0) & (adj != 1.0)):
            raise DomainError("adjacency entries must be 0 or 1")
        if np.any(adj != adj.T):
            raise DomainError("adjacency must be symmetric")
    return _degree_measure(adj)


def derive_graph_seed(seed, index):
    """Per-graph seed for population sampling, independent of sampling order."""
    ss = np.random.SeedSequence(entropy=int(seed), spawn_key=(1, int(index)))
    return int(ss.generate_state(1, np.uint64)[0])


def sample_graph(spec: GraphonSpec, n, seed) -> ObservedGraph:
    """Sample an n-node graph: latent positions uniform on [0, 1], then one
    Bernoulli draw per unordered pair with probability W(v_i, v_j).

    The diagonal is zero and the adjacency is mirrored from the upper
    triangle. Identical (spec, n, seed) inputs give bit-identical graphs.
    """
    n = int(n)
    if n < 2:
        raise DomainError("need at least 2 nodes, got %d" % n)
    rng = np.random.default_rng(int(seed))
    positions = rng.random(n)
    iu, ju = np.triu_indices(n, k=1)
    probs = _evaluate_array(spec, positions[iu], positions[ju])
    hits = rng.random(iu.size) < probs
    us, vs = iu[hits], ju[hits]
    rows = np.concatenate([us, vs])
    cols = np.concatenate([vs, us])
    adj = sp.csr_array((np.ones(rows.size), (rows, cols)), shape=(n, n))
    return ObservedGraph(adj, _degree_measure(adj))


def sample_population(spec: GraphonSpec, count, size_range: Sequence[int], seed) -> List[ObservedGraph]:
    """Sample `count` graphs with sizes uniform on {n_min, ..., n_max}.

    Sizes come from one dedicated stream and each graph gets its own derived
    seed, so populations are reproducible regardless of evaluation order.
    """
    count = int(count)
    if count < 1:
        raise DomainError("count must be at least 1")
    n_min, n_max = (int(size_range[0]), int(size_range[1]))
    if n_min < 2 or n_max < n_min:
        raise DomainError("size range must satisfy 2 <= n_min <= n_max, got [%d, %d]" % (n_min, n_max))
    size_rng = np.random.default_rng(np.random.SeedSequence(entropy=int(seed), spawn_key=(0,)))
    sizes = size_rng.integers(n_min, n_max + 1, size=count)
    return [sample_graph(spec, int(sz), derive_graph_seed(seed, i)) for i, sz in enumerate(sizes)]
