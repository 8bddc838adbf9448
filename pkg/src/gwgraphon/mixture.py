"""Mixtures of barycenters for heterogeneous populations, with soft assignment."""

from __future__ import annotations

import dataclasses
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .barycenter import (
    _adjacency,
    _coupling,
    _interp_sorted_measure,
    estimate_gwb,
    select_partition_count,
)
from .core import DomainError, ObservedGraph, SolverConfig, StepFunction, TransportPlan
from .gw import entropic_ot, proximal_gw


@dataclasses.dataclass(frozen=True, eq=False)
class MixtureModel:
    """A set of component step functions plus a soft graph-to-component assignment.

    :param components: one StepFunction per mixture component.
    :param assignment: C x M transport plan with uniform marginals; entry
        (c, m) is the mass of graph m assigned to component c.
    :param objective_trace: optional per-round transport objective values.
    """

    components: Tuple[StepFunction, ...]
    assignment: TransportPlan
    objective_trace: Optional[Tuple[float, ...]] = None

    def __post_init__(self):
        components = tuple(self.components)
        if not components:
            raise DomainError("mixture needs at least one component")
        object.__setattr__(self, "components", components)
        if self.assignment.coupling.shape[0] != len(components):
            raise DomainError("assignment rows must match the component count")
        c, m = self.assignment.coupling.shape
        if not np.allclose(self.assignment.row_marginal, 1.0 / c, atol=1e-9):
            raise DomainError("assignment row marginal must be uniform")
        if not np.allclose(self.assignment.col_marginal, 1.0 / m, atol=1e-9):
            raise DomainError("assignment column marginal must be uniform")
        if self.objective_trace is not None:
            object.__setattr__(self, "objective_trace",
                               tuple(float(v) for v in self.objective_trace))

    @property
    def component_count(self) -> int:
        return len(self.components)


def _derived_cfg(cfg: SolverConfig, tag: int, index: int) -> SolverConfig:
    seq = np.random.SeedSequence(entropy=cfg.seed, spawn_key=(tag, index))
    seed = int(seq.generate_state(1, np.uint64)[0])
    return dataclasses.replace(cfg, seed=seed)


def _weighted_measure(graphs, weights, k):
    acc = np.zeros(k)
    for graph, weight in zip(graphs, weights):
        acc += weight * _interp_sorted_measure(graph.measure, k)
    return acc / acc.sum()


def estimate_mixture(graphs: Sequence[ObservedGraph], c: int,
                     cfg: Optional[SolverConfig] = None, rounds: int = 5,
                     assignment_beta: Optional[float] = None,
                     track_objective: bool = False) -> MixtureModel:
    """Fit c component step functions and a soft assignment to a graph population.

    Alternates three stages per round: re-estimate each component as the
    assignment-weighted barycenter of the population, recompute all pairwise
    transport distances, then refresh the assignment as the entropic optimal
    transport plan between uniform marginals over components and graphs.
    Components start from a seeded round-robin sharding of the population.

    :param graphs: observed population, at least c graphs.
    :param c: number of components, >= 1.
    :param cfg: solver configuration; defaults apply when omitted.
    :param rounds: alternation rounds, >= 1.
    :param assignment_beta: entropic weight for the assignment update;
        defaults to cfg.beta.
    :param track_objective: record the transport objective after each round.
    :return: fitted MixtureModel.
    """
    cfg = cfg if cfg is not None else SolverConfig()
    graphs = list(graphs)
    m = len(graphs)
    c = int(c)
    rounds = int(rounds)
    if c < 1:
        raise DomainError("component count must be >= 1")
    if m < 1:
        raise DomainError("population must be nonempty")
    if c > m:
        raise DomainError("cannot fit more components than graphs")
    if rounds < 1:
        raise DomainError("rounds must be >= 1")
    p_beta = cfg.beta if assignment_beta is None else float(assignment_beta)
    if p_beta <= 0.0:
        raise DomainError("assignment beta must be positive")

    if c == 1:
        component = estimate_gwb(graphs, cfg)
        coupling = np.full((1, m), 1.0 / m)
        plan = TransportPlan(coupling, np.array([1.0]), np.full(m, 1.0 / m))
        trace = None
        if track_objective:
            dists = np.array([[proximal_gw(g, component, cfg).distance_sq for g in graphs]])
            trace = (float(np.sum(coupling * dists)),)
        return MixtureModel((component,), plan, trace)

    k = select_partition_count([g.node_count for g in graphs])
    shuffle = np.random.default_rng(
        np.random.SeedSequence(entropy=cfg.seed, spawn_key=(2,)))
    order = shuffle.permutation(m)
    comps_w: List[np.ndarray] = []
    comps_mu: List[np.ndarray] = []
    for ci in range(c):
        shard = [graphs[gi] for gi in order[ci::c]]
        seeded = estimate_gwb(shard, _derived_cfg(cfg, 3, ci), k=k)
        comps_w.append(np.array(seeded.values))
        comps_mu.append(np.array(seeded.measure))

    p = np.full((c, m), 1.0 / (c * m))
    trace: List[float] = []
    for _ in range(rounds):
        for ci in range(c):
            wts = p[ci] / p[ci].sum()
            mu_c = _weighted_measure(graphs, wts, k)
            num = np.zeros((k, k))
            for gi, graph in enumerate(graphs):
                result = proximal_gw(graph, (comps_w[ci], comps_mu[ci]), cfg)
                t = _coupling(result.plan)
                num += wts[gi] * (t.T @ (_adjacency(graph) @ t))
            w = num / np.outer(mu_c, mu_c)
            w = 0.5 * (w + w.T)
            comps_w[ci] = np.clip(w, 0.0, 1.0)
            comps_mu[ci] = mu_c
        dists = np.zeros((c, m))
        for ci in range(c):
            for gi, graph in enumerate(graphs):
                dists[ci, gi] = proximal_gw(graph, (comps_w[ci], comps_mu[ci]),
                                            cfg).distance_sq
        p = _coupling(entropic_ot(dists, np.full(c, 1.0 / c), np.full(m, 1.0 / m),
                                  p_beta))
        if track_objective:
            trace.append(float(np.sum(p * dists)))

    components = tuple(StepFunction(comps_w[ci], comps_mu[ci]) for ci in range(c))
    plan = TransportPlan(p, np.full(c, 1.0 / c), np.full(m, 1.0 / m))
    return MixtureModel(components, plan, tuple(trace) if track_objective else None)


def assign_clusters(model: MixtureModel) -> np.ndarray:
    """Hard cluster labels: the most-weighted component per graph."""
    return np.argmax(model.assignment.coupling, axis=0)
