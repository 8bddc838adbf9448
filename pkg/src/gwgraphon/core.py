"""Core domain types: step functions, observed graphs, transport plans, solver settings."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp

SYMMETRY_TOL = 1e-12
MEASURE_SUM_TOL = 1e-12
PLAN_MARGINAL_TOL = 1e-6
DEGREE_FLOOR = 1e-8


class GraphonError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(GraphonError, ValueError):
    """An argument lies outside the operation's domain."""


class ValidationError(GraphonError, ValueError):
    """A constructed or parsed object violates a type invariant."""


class ParseError(GraphonError, ValueError):
    """A text input could not be parsed."""

    def __init__(self, message, line=None):
        if line is not None:
            message = "line %d: %s" % (line, message)
        super().__init__(message)
        self.line = line


class RangeError(GraphonError, ValueError):
    """An index or endpoint is out of range."""


class NumericError(GraphonError, ArithmeticError):
    """A numerical routine failed to produce a usable result."""


def _as_float_array(x, name, ndim):
    arr = np.asarray(x, dtype=float)
    if arr.ndim != ndim:
        raise ValidationError("%s must be %d-dimensional, got shape %s" % (name, ndim, arr.shape))
    if arr.size == 0:
        raise ValidationError("%s must be nonempty" % name)
    if not np.all(np.isfinite(arr)):
        raise ValidationError("%s contains non-finite entries" % name)
    return arr


def _frozen(arr):
    out = np.array(arr, dtype=float)
    out.setflags(write=False)
    return out


def _check_measure(measure, name="measure", tol=MEASURE_SUM_TOL):
    if np.any(measure <= 0.0):
        raise ValidationError("%s entries must be strictly positive" % name)
    total = float(measure.sum())
    if abs(total - 1.0) > tol:
        raise ValidationError("%s must sum to 1, got %.17g" % (name, total))


def _degree_measure(adjacency):
    """Degree-proportional measure with a 1e-8 floor so entries stay positive."""
    if sp.issparse(adjacency):
        degrees = np.asarray(adjacency.sum(axis=1)).ravel()
    else:
        degrees = np.asarray(adjacency, dtype=float).sum(axis=1)
    degrees = np.maximum(degrees, DEGREE_FLOOR)
    return degrees / degrees.sum()


@dataclass(frozen=True, eq=False)
class StepFunction:
    """A piecewise-constant graphon: K x K symmetric values plus a partition measure.

    :param values: K x K matrix with entries in [0, 1]; values[k][l] is the
        edge probability between blocks k and l.
    :param measure: length-K vector of block masses, strictly positive,
        summing to 1, sorted nonincreasing.
    """

    values: np.ndarray
    measure: np.ndarray

    def __post_init__(self):
        values = _as_float_array(self.values, "values", 2)
        measure = _as_float_array(self.measure, "measure", 1)
        if values.shape[0] != values.shape[1]:
            raise ValidationError("values must be square, got shape %s" % (values.shape,))
        if values.shape[0] != measure.size:
            raise ValidationError(
                "values and measure disagree on K (%d vs %d)" % (values.shape[0], measure.size))
        if float(np.abs(values - values.T).max()) > SYMMETRY_TOL:
            raise ValidationError("values must be symmetric")
        if float(values.min()) < 0.0 or float(values.max()) > 1.0:
            raise ValidationError("values must lie in [0, 1]")
        _check_measure(measure)
        if np.any(np.diff(measure) > SYMMETRY_TOL):
            raise ValidationError("measure must be sorted nonincreasing")
        object.__setattr__(self, "values", _frozen(values))
        object.__setattr__(self, "measure", _frozen(measure))

    @property
    def partition_count(self):
        return int(self.measure.size)


@dataclass(frozen=True, eq=False)
class ObservedGraph:
    """An undirected simple graph together with a node probability measure.

    :param adjacency: symmetric binary matrix with zero diagonal; dense input
        is converted to CSR.
    :param measure: length-N strictly positive vector summing to 1
        (conventionally the floored normalized degrees).
    """

    adjacency: sp.csr_array
    measure: np.ndarray

    def __post_init__(self):
        adj = self.adjacency
        if sp.issparse(adj):
            adj = sp.csr_array(adj).astype(float)
        else:
            dense = np.asarray(adj, dtype=float)
            if dense.ndim != 2:
                raise ValidationError("adjacency must be 2-dimensional")
            adj = sp.csr_array(dense)
        if adj.shape[0] != adj.shape[1]:
            raise ValidationError("adjacency must be square, got shape %s" % (adj.shape,))
        if adj.shape[0] == 0:
            raise ValidationError("adjacency must be nonempty")
        adj.sum_duplicates()
        adj.eliminate_zeros()
        if adj.nnz:
            if not np.all(np.isfinite(adj.data)):
                raise ValidationError("adjacency contains non-finite entries")
            if np.any(adj.data != 1.0):
                raise ValidationError("adjacency entries must be 0 or 1")
        if np.any(adj.diagonal() != 0.0):
            raise ValidationError("adjacency diagonal must be zero")
        diff = (adj - adj.T).tocoo()
        if diff.nnz and float(np.abs(diff.data).max()) > 0.0:
            raise ValidationError("adjacency must be symmetric")
        measure = _as_float_array(self.measure, "measure", 1)
        if measure.size != adj.shape[0]:
            raise ValidationError(
                "measure length %d does not match node count %d" % (measure.size, adj.shape[0]))
        _check_measure(measure)
        object.__setattr__(self, "adjacency", adj)
        object.__setattr__(self, "measure", _frozen(measure))

    @property
    def node_count(self):
        return int(self.adjacency.shape[0])

    @property
    def edge_count(self):
        return int(self.adjacency.nnz) // 2

    @classmethod
    def from_dense(cls, dense, measure=None):
        """Build from a dense 0/1 matrix; measure defaults to floored degrees."""
        dense = np.asarray(dense, dtype=float)
        if measure is None:
            measure = _degree_measure(dense)
        return cls(dense, measure)

    @classmethod
    def from_edges(cls, node_count, edges, measure=None):
        """Build from an iterable of (u, v) pairs; both orientations and
        duplicates collapse to single undirected edges."""
        n = int(node_count)
        pairs = [(int(u), int(v)) for u, v in edges]
        if pairs:
            us = np.array([p[0] for p in pairs])
            vs = np.array([p[1] for p in pairs])
            rows = np.concatenate([us, vs])
            cols = np.concatenate([vs, us])
            adj = sp.csr_array((np.ones(rows.size), (rows, cols)), shape=(n, n))
            adj.sum_duplicates()
            adj.data[:] = 1.0
        else:
            adj = sp.csr_array((n, n), dtype=float)
        if measure is None:
            measure = _degree_measure(adj)
        return cls(adj, measure)


@dataclass(frozen=True, eq=False)
class TransportPlan:
    """A nonnegative coupling with prescribed row and column marginals.

    Row/column sums must match the marginals within 1e-6.
    """

    coupling: np.ndarray
    row_marginal: np.ndarray
    col_marginal: np.ndarray

    def __post_init__(self):
        coupling = _as_float_array(self.coupling, "coupling", 2)
        row = _as_float_array(self.row_marginal, "row_marginal", 1)
        col = _as_float_array(self.col_marginal, "col_marginal", 1)
        if coupling.shape != (row.size, col.size):
            raise ValidationError(
                "coupling shape %s does not match marginals (%d, %d)"
                % (coupling.shape, row.size, col.size))
        _check_measure(row, "row_marginal", tol=1e-9)
        _check_measure(col, "col_marginal", tol=1e-9)
        if float(coupling.min()) < 0.0:
            raise ValidationError("coupling entries must be nonnegative")
        row_resid = float(np.abs(coupling.sum(axis=1) - row).max())
        if row_resid > PLAN_MARGINAL_TOL:
            raise ValidationError("row marginal residual %.3g exceeds %g" % (row_resid, PLAN_MARGINAL_TOL))
        col_resid = float(np.abs(coupling.sum(axis=0) - col).max())
        if col_resid > PLAN_MARGINAL_TOL:
            raise ValidationError("column marginal residual %.3g exceeds %g" % (col_resid, PLAN_MARGINAL_TOL))
        object.__setattr__(self, "coupling", _frozen(coupling))
        object.__setattr__(self, "row_marginal", _frozen(row))
        object.__setattr__(self, "col_marginal", _frozen(col))

    @property
    def shape(self):
        return self.coupling.shape


@dataclass(frozen=True)
class SolverConfig:
    """Settings shared by the transport solver and the estimators.

    :param beta: proximal / entropic weight (must be positive).
    :param outer_iters: alternating rounds of the barycenter estimators.
    :param sinkhorn_iters: proximal steps per transport solve.
    :param alpha: smoothness weight used by the smoothed estimator.
    :param seed: seed for every randomized initialization.
    :param inner_scalings: cap on Sinkhorn scaling pairs within one proximal step.
    :param marginal_tol: early-stop tolerance on the column-marginal residual
        of the scaling loop.
    :param warm_start: reuse each graph's plan across outer rounds instead of
        restarting from the product coupling.
    :param restarts: number of deterministic initializations tried per
        transport solve; the best objective wins.  1 keeps the plain
        product-coupling start.
    :param polish_iters: projected-gradient steps applied to the candidate
        plans after the proximal loop.  0 disables polishing.
    """

    beta: float = 0.005
    outer_iters: int = 5
    sinkhorn_iters: int = 10
    alpha: float = 0.0002
    seed: int = 0
    inner_scalings: int = 500
    marginal_tol: float = 1e-9
    warm_start: bool = False
    restarts: int = 1
    polish_iters: int = 0

    def __post_init__(self):
        if not self.beta > 0.0:
            raise ValidationError("beta must be positive")
        if self.alpha < 0.0:
            raise ValidationError("alpha must be nonnegative")
        for name in ("outer_iters", "sinkhorn_iters", "inner_scalings", "restarts"):
            if int(getattr(self, name)) < 1:
                raise ValidationError("%s must be a positive integer" % name)
        if int(self.polish_iters) < 0:
            raise ValidationError("polish_iters must be nonnegative")
        if not self.marginal_tol > 0.0:
            raise ValidationError("marginal_tol must be positive")
        if not 0 <= int(self.seed) < 2 ** 64:
            raise ValidationError("seed must fit in an unsigned 64-bit integer")
