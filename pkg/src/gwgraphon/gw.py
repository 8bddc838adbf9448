"""Gromov-Wasserstein transport machinery.

Cost offsets, the proximal-point solver for the squared 2-order GW distance,
plain entropic optimal transport, and a brute-force oracle for tiny instances.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Tuple, Union

import numpy as np
import scipy.linalg
import scipy.sparse as sp

from .core import (DomainError, NumericError, ObservedGraph, SolverConfig,
                   StepFunction, TransportPlan, ValidationError)

KERNEL_FLOOR = 1e-300

SpaceLike = Union[ObservedGraph, StepFunction, Tuple]


@dataclass(frozen=True)
class GwResult:
    """A transport plan and the quadratic objective value it attains."""

    plan: TransportPlan
    distance_sq: float

    def __post_init__(self):
        d = float(self.distance_sq)
        if not np.isfinite(d) or d < 0.0:
            raise ValidationError("distance_sq must be finite and nonnegative, got %r" % d)
        object.__setattr__(self, "distance_sq", d)


def _as_space(obj):
    """Matrix-plus-measure view of a graph, step function, or (matrix, measure) pair."""
    if isinstance(obj, ObservedGraph):
        return obj.adjacency, obj.measure
    if isinstance(obj, StepFunction):
        return obj.values, obj.measure
    try:
        matrix, measure = obj
    except Exception as exc:
        raise DomainError("expected ObservedGraph, StepFunction, or (matrix, measure) pair") from exc
    if not sp.issparse(matrix):
        matrix = np.asarray(matrix, dtype=float)
        if matrix.ndim != 2:
            raise DomainError("matrix must be 2-dimensional")
    if matrix.shape[0] != matrix.shape[1]:
        raise DomainError("matrix must be square, got shape %s" % (matrix.shape,))
    measure = np.asarray(measure, dtype=float).ravel()
    if measure.size != matrix.shape[0]:
        raise DomainError("measure length %d does not match matrix size %d"
                          % (measure.size, matrix.shape[0]))
    if np.any(measure <= 0.0):
        raise DomainError("measure entries must be strictly positive")
    return matrix, measure


def _squared_apply(matrix, vec):
    # (matrix ⊙ matrix)ᵀ @ vec, for dense or sparse input
    if sp.issparse(matrix):
        return (matrix.multiply(matrix)).T @ vec
    return (matrix * matrix).T @ vec


def gw_cost_offset(a, mu_a, w, mu_w):
    """Plan-independent part of the squared-difference transport cost.

    Returns the N x K matrix (a ⊙ a)·mu_a·1ᵀ + 1·(mu_wᵀ·(w ⊙ w)); subtracting
    2·a·T·wᵀ from it gives the full cost matrix at plan T.
    """
    if not sp.issparse(a):
        a = np.asarray(a, dtype=float)
    if not sp.issparse(w):
        w = np.asarray(w, dtype=float)
    mu_a = np.asarray(mu_a, dtype=float).ravel()
    mu_w = np.asarray(mu_w, dtype=float).ravel()
    if a.ndim != 2 or a.shape[0] != a.shape[1] or w.ndim != 2 or w.shape[0] != w.shape[1]:
        raise DomainError("cost offset needs square matrices")
    if mu_a.size != a.shape[0] or mu_w.size != w.shape[0]:
        raise DomainError("measure lengths do not match matrix sizes")
    if sp.issparse(a):
        left = (a.multiply(a)) @ mu_a
    else:
        left = (a * a) @ mu_a
    right = _squared_apply(w, mu_w)
    return left[:, None] + right[None, :]


def _scale(kernel, mu_row, mu_col, max_iters, tol):
    """Alternating Sinkhorn scalings of a positive kernel.

    Returns the scaled plan and its column-marginal residual; row sums are
    exact by construction because the row scaling runs last.
    """
    a = np.array(mu_row, dtype=float)
    b = None
    kernel_t = kernel.T
    for _ in range(int(max_iters)):
        ka = kernel_t @ a
        if b is not None and float(np.abs(b * ka - mu_col).max()) <= tol:
            break
        b = mu_col / ka
        a = mu_row / (kernel @ b)
    if b is None:
        b = mu_col / (kernel_t @ a)
        a = mu_row / (kernel @ b)
    if not (np.all(np.isfinite(a)) and np.all(np.isfinite(b))):
        raise NumericError("sinkhorn scalings diverged (non-finite scaling vector)")
    plan = (a[:, None] * kernel) * b[None, :]
    resid = float(np.abs(plan.sum(axis=0) - mu_col).max())
    return plan, resid


def _scale_batch(kernels, mu_row, mu_col, max_iters, tol):
    """Alternating Sinkhorn scalings of a batch of positive kernels.

    Row sums are exact because the row scaling runs last; stops once every
    kernel's column residual is within tol, checking every few iterations
    to keep the loop cheap.
    """
    a = np.tile(mu_row, (kernels.shape[0], 1))
    b = None
    kernels_t = kernels.transpose(0, 2, 1)
    for it in range(int(max_iters)):
        ka = (kernels_t @ a[:, :, None])[..., 0]
        if b is not None and it % 4 == 0 and float(np.abs(b * ka - mu_col).max()) <= tol:
            break
        b = mu_col / ka
        a = mu_row / ((kernels @ b[:, :, None])[..., 0])
    if b is None:
        b = mu_col / ((kernels_t @ a[:, :, None])[..., 0])
        a = mu_row / ((kernels @ b[:, :, None])[..., 0])
    if not (np.all(np.isfinite(a)) and np.all(np.isfinite(b))):
        raise NumericError("sinkhorn scalings diverged (non-finite scaling vector)")
    return (a[:, :, None] * kernels) * b[:, None, :]


def _round_feasible(plan, mu_row, mu_col):
    """Round a nearly feasible nonnegative plan onto the marginal polytope.

    Overshooting rows and columns are scaled down, then the missing mass is
    restored by a nonnegative rank-one correction. The output has exact
    marginals up to float precision and differs from the input by at most
    the original residual in L1, so a converged plan passes through intact.
    """
    plan = plan * np.minimum(1.0, mu_row / plan.sum(axis=1))[:, None]
    plan = plan * np.minimum(1.0, mu_col / plan.sum(axis=0))[None, :]
    r_err = np.maximum(mu_row - plan.sum(axis=1), 0.0)
    c_err = np.maximum(mu_col - plan.sum(axis=0), 0.0)
    total = float(r_err.sum())
    if total > 0.0:
        plan = plan + np.outer(r_err, c_err) / total
    return plan


def sinkhorn_projection(kernel, mu_row, mu_col, inner_iters):
    """Scale a strictly positive kernel onto the prescribed marginals.

    Runs at most inner_iters scaling pairs, stopping early once the column
    residual falls below 1e-12.
    """
    kernel = np.asarray(kernel, dtype=float)
    if kernel.ndim != 2:
        raise DomainError("kernel must be 2-dimensional")
    if not np.all(np.isfinite(kernel)):
        raise NumericError("kernel contains non-finite entries")
    if kernel.size == 0 or float(kernel.min()) <= 0.0:
        raise DomainError("kernel entries must be strictly positive")
    mu_row = np.asarray(mu_row, dtype=float).ravel()
    mu_col = np.asarray(mu_col, dtype=float).ravel()
    if kernel.shape != (mu_row.size, mu_col.size):
        raise DomainError("kernel shape %s does not match marginal lengths (%d, %d)"
                          % (kernel.shape, mu_row.size, mu_col.size))
    if np.any(mu_row <= 0.0) or np.any(mu_col <= 0.0):
        raise DomainError("marginals must be strictly positive")
    if int(inner_iters) < 1:
        raise DomainError("inner_iters must be at least 1")
    plan, _ = _scale(kernel, mu_row, mu_col, int(inner_iters), tol=1e-12)
    return TransportPlan(plan, mu_row, mu_col)


def _northwest_corner(mu_row, mu_col):
    """The classic greedy coupling: sweep both marginals front to back."""
    n, m = mu_row.size, mu_col.size
    plan = np.zeros((n, m))
    row_left = np.array(mu_row, dtype=float)
    col_left = np.array(mu_col, dtype=float)
    i = j = 0
    while i < n and j < m:
        move = min(row_left[i], col_left[j])
        plan[i, j] = move
        row_left[i] -= move
        col_left[j] -= move
        if row_left[i] <= col_left[j]:
            i += 1
        else:
            j += 1
    return plan


def _restart_anchors(mu_row, mu_col, restarts, seed, base):
    """Initial plans for the proximal loop: the caller's base plan first,
    then the mass-sorted monotone and antitone couplings (blended with the
    product coupling so the kernel anchor keeps full support), then seeded
    random anchors."""
    anchors = [base]
    if restarts <= 1:
        return anchors
    product = np.outer(mu_row, mu_col)
    order_r = np.argsort(-mu_row, kind="stable")
    for ascending in (False, True):
        if len(anchors) == restarts:
            break
        order_c = np.argsort(mu_col if ascending else -mu_col, kind="stable")
        nw = _northwest_corner(mu_row[order_r], mu_col[order_c])
        anchor = np.zeros_like(product)
        anchor[np.ix_(order_r, order_c)] = nw
        anchors.append(0.9 * anchor + 0.1 * product)
    rng = np.random.default_rng(seed)
    while len(anchors) < restarts:
        anchors.append(rng.random(product.shape) + 0.1)
    return anchors


def _descend_plans(plans, a, b, mu_row, mu_col, iters, stop_tol=1e-13):
    """Batched projected gradient descent with exact line search on the
    quadratic transport objective; a and b must be dense. Stops early once
    no plan in the batch moves by more than stop_tol."""
    step = 1.0 / (4.0 * (np.linalg.norm(a, 2) + np.linalg.norm(b, 2) + 1.0) ** 2)
    for _ in range(int(iters)):
        atb = (a @ plans) @ b.T
        grad = _batch_gradient(plans, a, b, atb)
        target = _project_plans(plans - step * grad, mu_row, mu_col, 10)
        delta = target - plans
        slope = (grad * delta).sum(axis=(1, 2))
        curv = _quadratic_term(delta, a, b)
        safe = np.where(curv > 1e-18, curv, 1.0)
        t = np.where(curv > 1e-18, np.clip(-slope / (2.0 * safe), 0.0, 1.0), 1.0)
        move = t[:, None, None] * delta
        plans = plans + move
        if float(np.abs(move).max()) <= stop_tol:
            break
    return plans


def proximal_gw(a: SpaceLike, w: SpaceLike, cfg: Optional[SolverConfig] = None,
                init_plan=None) -> GwResult:
    """Proximal-point solver for the squared 2-order GW distance.

    Starting from the product coupling (or init_plan), each of the
    cfg.sinkhorn_iters proximal steps builds the kernel
    exp(-(cost)/beta) ⊙ T, rescales it onto the marginals, and rounds the
    result exactly feasible. The cost rows are shifted by their minimum in
    log space before exponentiation and the kernel is floored at 1e-300, so
    beta as small as the default never overflows.

    With cfg.restarts > 1 the loop also runs from the mass-sorted monotone
    and antitone couplings and then seeded random anchors, and keeps the
    best plan; with cfg.polish_iters > 0 every candidate is additionally
    refined by projected gradient descent on the true (unregularized)
    objective, which removes the entropic bias of the fixed point, and
    competes against its unpolished form. Both default off, leaving the
    literal single-start iteration.

    Returns the final plan together with the quadratic objective
    <offset - 2·a·T·wᵀ, T> evaluated at it, floored at zero.
    """
    if cfg is None:
        cfg = SolverConfig()
    mat_a, mu_a = _as_space(a)
    mat_w, mu_w = _as_space(w)
    if sp.issparse(mat_w):
        mat_w = mat_w.toarray()
    offset = gw_cost_offset(mat_a, mu_a, mat_w, mu_w)
    if init_plan is None:
        base = np.outer(mu_a, mu_w)
    else:
        base = np.array(getattr(init_plan, "coupling", init_plan), dtype=float)
        if base.shape != offset.shape:
            raise DomainError("init_plan shape %s does not match (%d, %d)"
                              % (base.shape, offset.shape[0], offset.shape[1]))
        if float(base.min()) < 0.0:
            raise DomainError("init_plan entries must be nonnegative")
    w_t = np.ascontiguousarray(mat_w.T)
    inv_beta = 1.0 / cfg.beta
    plans = np.stack(_restart_anchors(mu_a, mu_w, cfg.restarts, cfg.seed, base))
    for _ in range(cfg.sinkhorn_iters):
        atp = np.stack([mat_a @ plan for plan in plans])
        cost = offset[None] - 2.0 * (atp @ w_t)
        logk = (-inv_beta) * cost
        logk -= logk.max(axis=2, keepdims=True)
        kernels = np.exp(logk)
        kernels *= plans
        np.maximum(kernels, KERNEL_FLOOR, out=kernels)
        batch = _scale_batch(kernels, mu_a, mu_w, cfg.inner_scalings, cfg.marginal_tol)
        plans = np.stack([_round_feasible(p, mu_a, mu_w) for p in batch])
    if cfg.polish_iters > 0:
        dense_a = mat_a.toarray() if sp.issparse(mat_a) else mat_a
        batch = _descend_plans(plans, dense_a, mat_w, mu_a, mu_w, cfg.polish_iters)
        batch = np.maximum(batch, 0.0)
        polished = [_round_feasible(p, mu_a, mu_w) for p in batch]
        # rounding back onto the polytope can cost more than the descent
        # gained, so the unpolished candidates stay in the pool
        plans = np.concatenate([plans, np.stack(polished)])
    atp = np.stack([mat_a @ plan for plan in plans])
    vals = ((offset[None] - 2.0 * (atp @ w_t)) * plans).sum(axis=(1, 2))
    if not np.all(np.isfinite(vals)):
        raise NumericError("objective evaluated to a non-finite value")
    pick = int(np.argmin(vals))
    return GwResult(TransportPlan(plans[pick], mu_a, mu_w), max(float(vals[pick]), 0.0))


def entropic_ot(cost, mu_row, mu_col, beta, iters=10000) -> TransportPlan:
    """Entropically regularized optimal transport: Sinkhorn on exp(-cost/beta).

    Scales until the marginal residual drops below 1e-9 (capped at `iters`
    pairs); raises NumericError if the 1e-6 feasibility contract cannot be met.
    """
    if float(beta) <= 0.0:
        raise DomainError("beta must be positive")
    cost = np.asarray(cost, dtype=float)
    if cost.ndim != 2 or cost.size == 0:
        raise DomainError("cost must be a nonempty 2-dimensional matrix")
    if not np.all(np.isfinite(cost)):
        raise DomainError("cost must be finite")
    mu_row = np.asarray(mu_row, dtype=float).ravel()
    mu_col = np.asarray(mu_col, dtype=float).ravel()
    if cost.shape != (mu_row.size, mu_col.size):
        raise DomainError("cost shape %s does not match marginal lengths (%d, %d)"
                          % (cost.shape, mu_row.size, mu_col.size))
    if np.any(mu_row <= 0.0) or np.any(mu_col <= 0.0):
        raise DomainError("marginals must be strictly positive")
    if int(iters) < 1:
        raise DomainError("iters must be at least 1")
    logk = cost * (-1.0 / float(beta))
    logk -= logk.max(axis=1, keepdims=True)
    kernel = np.exp(logk)
    np.maximum(kernel, KERNEL_FLOOR, out=kernel)
    plan, _ = _scale(kernel, mu_row, mu_col, int(iters), tol=1e-9)
    plan = _round_feasible(plan, mu_row, mu_col)
    return TransportPlan(plan, mu_row, mu_col)


def _find(parent, x):
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


def _is_spanning_tree(subset, edges, n, m):
    parent = list(range(n + m))
    for e in subset:
        i, j = edges[e]
        ri, rj = _find(parent, i), _find(parent, n + j)
        if ri == rj:
            return False
        parent[ri] = rj
    return True


@lru_cache(maxsize=None)
def _tree_bases(n, m):
    """Inverse basis matrices for every vertex basis of the transport polytope.

    Vertices of the polytope are basic feasible solutions of the flow problem
    on the complete bipartite graph; the bases are exactly its spanning trees.
    """
    edges = [(i, j) for i in range(n) for j in range(m)]
    cons = np.zeros((n + m, n * m))
    for e, (i, j) in enumerate(edges):
        cons[i, e] = 1.0
        cons[n + j, e] = 1.0
    cons = cons[:-1]  # the last column-sum constraint is redundant
    rank = n + m - 1
    trees = []
    inverses = []
    for subset in itertools.combinations(range(n * m), rank):
        if not _is_spanning_tree(subset, edges, n, m):
            continue
        trees.append(subset)
        inverses.append(np.linalg.inv(cons[:, subset]))
    return np.array(trees, dtype=np.int64), np.array(inverses)


def _polytope_vertices(n, m, mu_a, mu_b):
    trees, inverses = _tree_bases(n, m)
    demand = np.concatenate([mu_a, mu_b[:-1]])
    flows = inverses @ demand
    feasible = flows.min(axis=1) >= -1e-10
    flows = np.maximum(flows[feasible], 0.0)
    trees = trees[feasible]
    verts = np.zeros((trees.shape[0], n * m))
    rows = np.repeat(np.arange(trees.shape[0]), n + m - 1)
    verts[rows, trees.ravel()] = flows.ravel()
    # degenerate bases repeat vertices; keep one copy of each
    verts = np.unique(np.round(verts, 12), axis=0)
    return verts.reshape(-1, n, m)


def _batch_objective(plans, a, b, offset):
    atb = (a @ plans) @ b.T
    vals = ((offset[None] - 2.0 * atb) * plans).sum(axis=(1, 2))
    return vals, atb


def _batch_gradient(plans, a, b, atb):
    row = plans.sum(axis=2) @ (a * a)
    col = plans.sum(axis=1) @ (b * b)
    return 2.0 * (row[:, :, None] + col[:, None, :]) - 4.0 * atb


def _project_plans(plans, mu_a, mu_b, iters):
    """Batched Dykstra projection onto the transport polytope."""
    n, m = plans.shape[1], plans.shape[2]
    row_t = mu_a[None, :, None]
    col_t = mu_b[None, None, :]
    x = np.array(plans, dtype=float)
    corr = np.zeros_like(x)
    for _ in range(int(iters)):
        x += (row_t - x.sum(axis=2, keepdims=True)) / m
        x += (col_t - x.sum(axis=1, keepdims=True)) / n
        z = x + corr
        np.maximum(z, 0.0, out=x)
        np.subtract(z, x, out=corr)
    x += (row_t - x.sum(axis=2, keepdims=True)) / m
    x += (col_t - x.sum(axis=1, keepdims=True)) / n
    return x


def _quadratic_term(deltas, a, b):
    # homogeneous quadratic part of the objective along a direction
    dr = deltas.sum(axis=2)
    dc = deltas.sum(axis=1)
    adb = (a @ deltas) @ b.T
    term = (dr * (dr @ (a * a))).sum(axis=1)
    term += (dc * (dc @ (b * b))).sum(axis=1)
    term -= 2.0 * (deltas * adb).sum(axis=(1, 2))
    return term


def _face_minimum(plan, a, b, mu_a, mu_b, offset, support_tol):
    """Objective value reached by an exact active-set descent from the plan,
    or None when the starting support cannot carry the marginals.

    Within the face spanned by the current support the marginal constraints
    are affine, so the stationary point is a small linear solve; a ratio
    test toward it either lands on it exactly or hits the boundary, where
    the vanishing entry leaves the support and the solve repeats. This
    finishes the tail that projected gradient descent only crawls along.
    """
    n, m = plan.shape
    nm = n * m
    kron = np.kron(a, b)
    lin = offset.ravel()
    cons = np.zeros((n + m - 1, nm))
    for e in range(nm):
        i, k = divmod(e, m)
        cons[i, e] = 1.0
        if k < m - 1:
            cons[n + k, e] = 1.0
    rhs_eq = np.concatenate([mu_a, mu_b[:-1]])
    idx = np.flatnonzero(plan.ravel() > support_tol)
    x = plan.ravel()[idx]
    best_flat = None
    best_val = np.inf
    for _ in range(2 * nm + 2):
        eq = cons[:, idx]
        x = x + np.linalg.lstsq(eq, rhs_eq - eq @ x, rcond=None)[0]
        if float(np.abs(eq @ x - rhs_eq).max()) > 1e-9 or np.any(x < -1e-9):
            break
        quad = kron[np.ix_(idx, idx)]
        val = float(lin[idx] @ x - 2.0 * (x @ quad @ x))
        if val < best_val:
            best_val = val
            best_flat = (idx, np.maximum(x, 0.0))
        null = scipy.linalg.null_space(eq)
        if null.shape[1] == 0:
            break
        grad = lin[idx] - 4.0 * (quad @ x)
        u = np.linalg.lstsq(4.0 * (null.T @ quad @ null), null.T @ grad, rcond=None)[0]
        d = null @ u
        if float(np.abs(d).max()) < 1e-13:
            break
        slope = float(grad @ d)
        curv = float(-2.0 * (d @ quad @ d))
        falling = d < -1e-16
        if not falling.any():
            break
        steps = [float((x[falling] / -d[falling]).min())]
        if curv > 1e-18:
            t_int = -slope / (2.0 * curv)
            if 0.0 < t_int < steps[0]:
                steps.append(t_int)
        gains = [slope * t + curv * t * t for t in steps]
        pick = int(np.argmin(gains))
        if gains[pick] >= -1e-15:
            break
        x = np.maximum(x + steps[pick] * d, 0.0)
        keep = x > 1e-12
        if not keep.all():
            idx = idx[keep]
            x = x[keep]
            if idx.size == 0:
                break
    if best_flat is None:
        return None
    flat = np.zeros(nm)
    flat[best_flat[0]] = best_flat[1]
    candidate = _round_feasible(flat.reshape(n, m), mu_a, mu_b)
    return float(np.sum((offset - 2.0 * ((a @ candidate) @ b.T)) * candidate))


def gw_distance_exact_small(a, b, mu_a, mu_b):
    """Global minimum of the squared 2-order GW objective on a tiny instance.

    Enumerates every vertex of the transport polytope, refines with
    multi-start projected gradient descent under exact line search, and
    polishes the best candidates by solving the stationarity system on
    their active faces. Meant as a test oracle; requires n·m <= 16 and
    symmetric inputs.
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or b.ndim != 2 or b.shape[0] != b.shape[1]:
        raise DomainError("inputs must be square matrices")
    n, m = a.shape[0], b.shape[0]
    if n * m > 16:
        raise DomainError("instance too large for exact search (n*m = %d > 16)" % (n * m))
    if float(np.abs(a - a.T).max(initial=0.0)) > 1e-9 or float(np.abs(b - b.T).max(initial=0.0)) > 1e-9:
        raise DomainError("inputs must be symmetric")
    mu_a = np.asarray(mu_a, dtype=float).ravel()
    mu_b = np.asarray(mu_b, dtype=float).ravel()
    if mu_a.size != n or mu_b.size != m:
        raise DomainError("measure lengths do not match matrix sizes")
    if np.any(mu_a <= 0.0) or np.any(mu_b <= 0.0):
        raise DomainError("measures must be strictly positive")
    if abs(float(mu_a.sum()) - 1.0) > 1e-9 or abs(float(mu_b.sum()) - 1.0) > 1e-9:
        raise DomainError("measures must sum to 1")

    offset = gw_cost_offset(a, mu_a, b, mu_b)
    verts = _polytope_vertices(n, m, mu_a, mu_b)
    vert_vals, _ = _batch_objective(verts, a, b, offset)
    best = float(vert_vals.min())

    rng = np.random.default_rng(0)
    anchors = np.stack(_restart_anchors(mu_a, mu_b, 3, 0, np.outer(mu_a, mu_b)))
    seeds = [anchors, verts, rng.random((33, n, m))]
    plans = _project_plans(np.concatenate(seeds, axis=0), mu_a, mu_b, 60)
    seen = set()
    for block in range(4):
        plans = _descend_plans(plans, a, b, mu_a, mu_b, 40)
        rounded = np.maximum(_project_plans(plans, mu_a, mu_b, 30), 0.0)
        vals, _ = _batch_objective(rounded, a, b, offset)
        order = np.argsort(vals)
        top = _round_feasible(rounded[order[0]], mu_a, mu_b)
        best = min(best, float(np.sum((offset - 2.0 * ((a @ top) @ b.T)) * top)))
        for p in order[:8]:
            key = rounded[p].round(7).tobytes()
            if key in seen:
                continue
            seen.add(key)
            candidate = _round_feasible(rounded[p], mu_a, mu_b)
            supports = set()
            for tol in (1e-3, 1e-8):
                support = np.flatnonzero(candidate.ravel() > tol).tobytes()
                if support in supports:
                    continue
                supports.add(support)
                val = _face_minimum(candidate, a, b, mu_a, mu_b, offset, tol)
                if val is not None:
                    best = min(best, val)
        if block == 0 and plans.shape[0] > 128:
            plans = plans[order[:128]]
    return max(best, 0.0)
