import numpy as np
import pytest

from gwgraphon.barycenter import estimate_gwb
from gwgraphon.core import DomainError, SolverConfig, TransportPlan
from gwgraphon.evaluation import clustering_accuracy
from gwgraphon.graphons import GraphonSpec
from gwgraphon.mixture import MixtureModel, assign_clusters, estimate_mixture
from gwgraphon.sampling import sample_population


def _two_family_population(m_per, seed):
    left = sample_population(GraphonSpec("blocks"), m_per, [30, 40], seed=seed)
    right = sample_population(GraphonSpec("bipartite"), m_per, [30, 40], seed=seed + 1)
    return list(left) + list(right), [0] * m_per + [1] * m_per


def test_single_component_is_the_barycenter():
    graphs = sample_population(GraphonSpec("xy"), 4, [20, 30], seed=6)
    cfg = SolverConfig(outer_iters=2)
    model = estimate_mixture(graphs, 1, cfg)
    plain = estimate_gwb(graphs, cfg)
    assert model.component_count == 1
    np.testing.assert_allclose(model.components[0].values, plain.values, atol=1e-9)
    np.testing.assert_allclose(model.components[0].measure, plain.measure, atol=1e-12)
    np.testing.assert_allclose(model.assignment.coupling, 0.25)


def test_model_validation():
    graphs = sample_population(GraphonSpec("xy"), 3, [20, 25], seed=1)
    cfg = SolverConfig(outer_iters=1, sinkhorn_iters=2)
    model = estimate_mixture(graphs, 2, cfg, rounds=1)
    with pytest.raises(DomainError):
        MixtureModel((), model.assignment)
    with pytest.raises(DomainError):
        MixtureModel(model.components[:1], model.assignment)
    skewed = TransportPlan(np.array([[1 / 3, 4 / 15, 0.0], [0.0, 1 / 15, 1 / 3]]),
                           np.array([0.6, 0.4]), np.full(3, 1 / 3))
    with pytest.raises(DomainError):
        MixtureModel(model.components, skewed)


def test_estimate_mixture_validation():
    graphs = sample_population(GraphonSpec("xy"), 3, [20, 25], seed=1)
    with pytest.raises(DomainError):
        estimate_mixture(graphs, 0)
    with pytest.raises(DomainError):
        estimate_mixture(graphs, 4)
    with pytest.raises(DomainError):
        estimate_mixture([], 1)
    with pytest.raises(DomainError):
        estimate_mixture(graphs, 2, rounds=0)
    with pytest.raises(DomainError):
        estimate_mixture(graphs, 2, assignment_beta=0.0)


def test_assignment_marginals_are_uniform():
    graphs, _ = _two_family_population(3, seed=21)
    cfg = SolverConfig(outer_iters=1, sinkhorn_iters=3)
    model = estimate_mixture(graphs, 2, cfg, rounds=1)
    coupling = model.assignment.coupling
    np.testing.assert_allclose(coupling.sum(axis=1), 0.5, atol=1e-6)
    np.testing.assert_allclose(coupling.sum(axis=0), 1.0 / len(graphs), atol=1e-6)
    assert float(coupling.min()) >= 0.0


def test_fit_is_deterministic():
    graphs, _ = _two_family_population(3, seed=33)
    cfg = SolverConfig(outer_iters=1, sinkhorn_iters=3, seed=12)
    a = estimate_mixture(graphs, 2, cfg, rounds=2)
    b = estimate_mixture(graphs, 2, cfg, rounds=2)
    np.testing.assert_array_equal(a.assignment.coupling, b.assignment.coupling)
    for ca, cb in zip(a.components, b.components):
        np.testing.assert_array_equal(ca.values, cb.values)


def test_objective_trace_length():
    graphs, _ = _two_family_population(2, seed=40)
    cfg = SolverConfig(outer_iters=1, sinkhorn_iters=2)
    model = estimate_mixture(graphs, 2, cfg, rounds=3, track_objective=True)
    assert model.objective_trace is not None
    assert len(model.objective_trace) == 3
    assert all(np.isfinite(v) for v in model.objective_trace)
    untracked = estimate_mixture(graphs, 2, cfg, rounds=1)
    assert untracked.objective_trace is None


def test_assign_clusters_picks_heaviest_component():
    graphs = sample_population(GraphonSpec("xy"), 4, [20, 25], seed=2)
    cfg = SolverConfig(outer_iters=1, sinkhorn_iters=2)
    model = estimate_mixture(graphs, 2, cfg, rounds=1)
    labels = assign_clusters(model)
    np.testing.assert_array_equal(labels, np.argmax(model.assignment.coupling, axis=0))
    assert labels.shape == (4,)


def test_separated_families_are_clustered():
    """Block and bipartite populations are far apart in transport distance,
    so even a short fit separates them."""
    graphs, truth = _two_family_population(6, seed=55)
    model = estimate_mixture(graphs, 2, rounds=3)
    accuracy = clustering_accuracy(assign_clusters(model), truth)
    assert accuracy >= 0.9
