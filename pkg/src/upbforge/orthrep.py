"""Numerical search for orthogonal representations of a graph.

Every vector has its first component pinned to 1, so the search runs over
the remaining ``d - 1`` complex coordinates of each vertex.  The smoothed
objective ``sum |<phi_i|phi_j>|**2`` over edges is minimised with a
damped Gauss-Newton (Levenberg-Marquardt) iteration from random complex
Gaussian starting points.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
import logging

import numpy as np

from .graphs import Graph
from .linalg import EPS, FLOAT, QComplex, Vector, inner_product

log = logging.getLogger(__name__)


@dataclass
class SolverConfig:
    """Free parameters of the search.

    ``step_params`` tunes the damping: ``lambda0`` (initial damping),
    ``up``/``down`` (multiplicative adjustments on rejected/accepted steps),
    ``lambda_max`` (give up on a restart above this damping), ``stall_window`` and
    ``stall_rtol`` (end a restart whose objective fell by less than this
    relative amount over the last ``stall_window`` accepted steps).

    With ``genericity_penalty_weight = w > 0`` each subset ``S`` of
    ``genericity_subset_size`` vertices adds the residual
    ``sqrt(w) * max(0, genericity_threshold - s_min(S))`` where ``s_min`` is the
    smallest singular value of the row-normalised matrix of the subset's
    vectors.  The penalty vanishes once every such subset is well
    conditioned, i.e. spans the whole space.
    """

    dimension: int
    restarts: int = 100
    max_iterations: int = 2000
    objective_tolerance: float = 1e-10
    rng_seed: int = 0
    step_params: dict = field(default_factory=dict)
    genericity_penalty_weight: float = 0.0
    genericity_threshold: float = 0.1
    genericity_subset_size: int = 5
    stop_on_success: bool = True

    def __post_init__(self):
        if self.dimension < 1:
            raise ValueError("dimension must be >= 1")
        if self.restarts < 1:
            raise ValueError("restarts must be >= 1")
        if not self.objective_tolerance > 0:
            raise ValueError("objective_tolerance must be > 0")
        if self.genericity_penalty_weight < 0:
            raise ValueError("genericity_penalty_weight must be >= 0")


@dataclass
class OrthRepResult:
    vectors: list[Vector]
    objective: float
    abs_objective: float
    converged: bool
    restart_index: int
    faithfulness: list[tuple[int, int]]
    restarts_run: int
    iterations: int
    history: list[float] = field(default_factory=list, repr=False)
    genericity: dict | None = None

    def to_json(self) -> dict:
        return {
            "vectors": [[[c.real, c.imag] for c in v] for v in self.vectors],
            "objective": self.objective,
            "abs_objective": self.abs_objective,
            "converged": self.converged,
            "restart_index": self.restart_index,
            "restarts_run": self.restarts_run,
            "iterations": self.iterations,
            "faithfulness": [list(p) for p in self.faithfulness],
            "genericity": self.genericity,
        }


# -- objective ---------------------------------------------------------------


def _to_complex(params: np.ndarray, k: int, d: int) -> np.ndarray:
    """Parameter vector -> (k, d) complex array with unit first column."""
    p = params.reshape(k, 2, d - 1)
    x = np.ones((k, d), dtype=complex)
    x[:, 1:] = p[:, 0] + 1j * p[:, 1]
    return x


def _from_complex(x: np.ndarray) -> np.ndarray:
    tail = x[:, 1:]
    return np.stack([tail.real, tail.imag], axis=1).ravel()


class _Problem:
    def __init__(self, g: Graph, d: int, weight: float = 0.0, threshold: float = 0.1,
                 subset_size: int = 5):
        self.k, self.d = g.k, d
        e = np.array(g.edges, dtype=int).reshape(-1, 2) - 1
        self.ei, self.ej = e[:, 0], e[:, 1]
        self.n = self.k * 2 * (d - 1)
        self.weight = weight
        self.threshold = threshold
        self.subsets = None
        if weight > 0:
            if subset_size > self.k or subset_size < d:
                raise ValueError(f"genericity subsets of size {subset_size} unsupported for k={self.k}, d={d}")
            self.subsets = np.array(list(combinations(range(self.k), subset_size)), dtype=int)

    def edge_inner(self, x: np.ndarray) -> np.ndarray:
        return np.einsum("el,el->e", x[self.ei].conj(), x[self.ej])

    def edge_residuals(self, params: np.ndarray) -> np.ndarray:
        z = self.edge_inner(_to_complex(params, self.k, self.d))
        return np.concatenate([z.real, z.imag])

    def edge_jacobian(self, params: np.ndarray) -> np.ndarray:
        k, d = self.k, self.d
        x = _to_complex(params, k, d)[:, 1:]
        m = len(self.ei)
        # dz/dRe(x_i) = x_j, dz/dIm(x_i) = -i x_j, dz/dRe(x_j) = conj(x_i), dz/dIm(x_j) = i conj(x_i)
        J = np.zeros((m, k, 2, d - 1), dtype=complex)
        rows = np.arange(m)
        xi, xj = x[self.ei], x[self.ej]
        J[rows, self.ei, 0] += xj
        J[rows, self.ei, 1] += -1j * xj
        J[rows, self.ej, 0] += xi.conj()
        J[rows, self.ej, 1] += 1j * xi.conj()
        J = J.reshape(m, -1)
        return np.concatenate([J.real, J.imag])

    def penalty_residuals(self, params: np.ndarray) -> np.ndarray:
        x = _to_complex(params, self.k, self.d)
        return genericity_residuals(x, self.subsets, self.weight, self.threshold)

    def residuals(self, params):
        r = self.edge_residuals(params)
        if self.subsets is not None:
            r = np.concatenate([r, self.penalty_residuals(params)])
        return r

    def jacobian(self, params):
        J = self.edge_jacobian(params)
        if self.subsets is None:
            return J
        h = 1e-7
        cols = []
        for c in range(self.n):
            step = np.zeros(self.n)
            step[c] = h
            cols.append((self.penalty_residuals(params + step) - self.penalty_residuals(params - step)) / (2 * h))
        return np.vstack([J, np.array(cols).T])


def genericity_residuals(x: np.ndarray, subsets: np.ndarray, weight: float, threshold: float) -> np.ndarray:
    rows = x / np.linalg.norm(x, axis=1, keepdims=True)
    s_min = np.linalg.svd(rows[subsets], compute_uv=False)[:, -1]
    return np.sqrt(weight) * np.maximum(0.0, threshold - s_min)


def genericity_penalty(vectors, weight: float = 1.0, threshold: float = 0.1, subset_size: int = 5) -> float:
    """Hinge penalty on poorly conditioned vertex subsets (0 when all are spanning)."""
    x = np.array([[complex(c) for c in v] for v in vectors])
    subsets = np.array(list(combinations(range(len(x)), subset_size)), dtype=int)
    r = genericity_residuals(x, subsets, weight, threshold)
    return float(r @ r)


def smoothed_objective(vectors, g: Graph) -> float:
    """Sum of squared inner-product magnitudes over the edges of ``g``."""
    return float(sum(abs(inner_product(vectors[i - 1], vectors[j - 1])) ** 2 for i, j in g.edges))


def absolute_objective(vectors, g: Graph) -> float:
    """Sum of inner-product magnitudes over the edges of ``g``."""
    return float(sum(abs(inner_product(vectors[i - 1], vectors[j - 1])) for i, j in g.edges))


# -- Levenberg-Marquardt -------------------------------------------------------


def _levenberg_marquardt(problem: _Problem, x0: np.ndarray, max_iter: int, target: float,
                         lambda0=1e-3, up=10.0, down=0.3, lambda_max=1e16,
                         stall_window=100, stall_rtol=1e-6):
    x = x0.copy()
    r = problem.residuals(x)
    cost = float(r @ r)
    history = [cost]
    lam = lambda0
    it = 0
    for it in range(1, max_iter + 1):
        if cost <= target:
            break
        J = problem.jacobian(x)
        g = J.T @ r
        A = J.T @ J
        diag = np.maximum(np.diag(A), 1e-12)
        accepted = False
        while lam <= lambda_max:
            try:
                step = np.linalg.solve(A + lam * np.diag(diag), -g)
            except np.linalg.LinAlgError:
                lam *= up
                continue
            x_new = x + step
            r_new = problem.residuals(x_new)
            cost_new = float(r_new @ r_new)
            if np.isfinite(cost_new) and cost_new < cost:
                x, r, cost = x_new, r_new, cost_new
                lam = max(lam * down, 1e-15)
                accepted = True
                break
            lam *= up
        if not accepted:
            break
        history.append(cost)
        if len(history) > stall_window and history[-stall_window - 1] - cost <= stall_rtol * history[-stall_window - 1]:
            break
    return x, cost, it, history


def _vectors_from_params(params, k, d) -> list[Vector]:
    x = _to_complex(params, k, d)
    return [Vector([complex(c) for c in row], FLOAT) for row in x]


def faithfulness_report(vectors, g: Graph, eps: float = EPS) -> list[tuple[int, int]]:
    """Non-adjacent pairs whose vectors are (numerically) orthogonal anyway."""
    if len(vectors) != g.k:
        raise ValueError(f"{len(vectors)} vectors for a graph on {g.k} vertices")
    out = []
    for i, j in combinations(range(1, g.k + 1), 2):
        if g.has_edge(i, j):
            continue
        a, b = vectors[i - 1], vectors[j - 1]
        ip = inner_product(a, b)
        if a.mode != FLOAT:
            if not ip:
                out.append((i, j))
        elif abs(ip) <= eps * a.norm() * b.norm():
            out.append((i, j))
    return out


def _subset_rank_failures(x: np.ndarray, size: int, eps: float = EPS) -> int:
    subsets = np.array(list(combinations(range(len(x)), size)), dtype=int)
    rows = x / np.linalg.norm(x, axis=1, keepdims=True)
    s = np.linalg.svd(rows[subsets], compute_uv=False)
    return int(np.sum(s[:, -1] <= eps ** 0.5))


def solve(g: Graph, config: SolverConfig) -> OrthRepResult:
    """Search for an orthogonal representation of ``g`` in ``C^config.dimension``.

    Restart ``r`` draws its start from ``numpy.random.default_rng(seed + r)``.
    The best restart (lowest smoothed objective, earliest on ties) is
    returned; with ``stop_on_success`` the loop ends at the first restart
    whose absolute objective is within tolerance.
    """
    k, d = g.k, config.dimension
    weight = config.genericity_penalty_weight
    if d == 1:
        vectors = [Vector([1 + 0j], FLOAT) for _ in range(k)]
        obj = float(len(g.edges))
        return OrthRepResult(vectors, obj, obj, obj <= config.objective_tolerance, 0,
                             faithfulness_report(vectors, g), 1, 0)

    problem = _Problem(g, d, weight, config.genericity_threshold, config.genericity_subset_size)
    sp = dict(config.step_params)
    target = min(config.objective_tolerance, 1e-12) ** 2 if weight == 0 else 0.0
    best = None
    restarts_run = 0
    for r in range(config.restarts):
        rng = np.random.default_rng(config.rng_seed + r)
        z = (rng.standard_normal((k, d)) + 1j * rng.standard_normal((k, d))) / np.sqrt(2)
        z[:, 0] = 1.0
        params, cost, iters, history = _levenberg_marquardt(problem, _from_complex(z),
                                                            config.max_iterations, target, **sp)
        restarts_run += 1
        vectors = _vectors_from_params(params, k, d)
        edge_cost = smoothed_objective(vectors, g)
        abs_obj = absolute_objective(vectors, g)
        converged = abs_obj <= config.objective_tolerance
        cand = (edge_cost, r, vectors, abs_obj, converged, iters, history, params)
        if best is None or edge_cost < best[0]:
            best = cand
        log.debug("restart %d: objective %.3e after %d iterations", r, edge_cost, iters)
        if converged and config.stop_on_success and weight == 0:
            break
        if converged and config.stop_on_success and weight > 0 and cost - edge_cost <= 0:
            break

    edge_cost, r, vectors, abs_obj, converged, iters, history, params = best
    genericity = None
    if weight > 0:
        x = _to_complex(params, k, d)
        pen = problem.penalty_residuals(params)
        genericity = {
            "penalty": float(pen @ pen),
            "rank_deficient_subsets": _subset_rank_failures(x, config.genericity_subset_size),
            "subsets": len(problem.subsets),
        }
    return OrthRepResult(vectors, edge_cost, abs_obj, converged, r,
                         faithfulness_report(vectors, g), restarts_run, iters, history, genericity)


def solve_with_genericity(g: Graph, config: SolverConfig) -> OrthRepResult:
    """:func:`solve` with the subset-conditioning penalty switched on.

    Experimental: the penalty pushes every ``genericity_subset_size``-subset of
    vectors towards spanning the space.  A zero weight reproduces :func:`solve`.
    """
    if config.dimension > config.genericity_subset_size:
        raise ValueError("subset size must be at least the dimension")
    if g.k < config.genericity_subset_size:
        raise ValueError(f"graph has fewer than {config.genericity_subset_size} vertices")
    return solve(g, config)


# -- exact rounding ------------------------------------------------------------


def round_to_exact(vectors, g: Graph, max_denominator: int = 1000) -> list[Vector] | None:
    """Round each component to a nearby rational and re-check edge orthogonality exactly.

    Returns exact vectors, or ``None`` if rounding breaks an orthogonality or
    produces a zero vector.
    """
    out = []
    for v in vectors:
        comps = [QComplex(Fraction(c.real).limit_denominator(max_denominator),
                          Fraction(c.imag).limit_denominator(max_denominator)) for c in v]
        ev = Vector(comps)
        if ev.is_zero():
            return None
        out.append(ev)
    for i, j in g.edges:
        if inner_product(out[i - 1], out[j - 1]):
            return None
    return out
