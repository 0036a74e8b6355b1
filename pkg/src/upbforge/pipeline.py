"""Graph-decomposition routes to UPBs and to a 13-state GUPB in (C^3)^3.

Both routes share three steps: split K_k into one graph per party, find an
orthogonal representation of each graph in its local dimension, and verify
the assembled product states.  Graphs are always recomputed from the
vectors before verification, since a representation may carry extra,
unrequested orthogonalities.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
import json
import logging
import os
from pathlib import Path
import time
from typing import Sequence

from .graphs import Graph, complete, edge_disjoint, enumerate_k13_decompositions, union
from .linalg import EXACT, FLOAT, Vector
from .orthrep import OrthRepResult, SolverConfig, round_to_exact, solve
from .product import (
    ProductStateSet,
    UpbVerdict,
    check_qutrit_gupb_conditions,
    is_gupb,
    is_upb,
)

log = logging.getLogger(__name__)


def worker_count() -> int:
    """Parallel work items allowed by ``UPBFORGE_THREADS`` (default 1)."""
    try:
        return max(1, int(os.environ.get("UPBFORGE_THREADS", "1")))
    except ValueError:
        return 1


def _solve_job(args):
    g, cfg = args
    t0 = time.perf_counter()
    res = solve(g, cfg)
    return res, time.perf_counter() - t0


def _solve_many(jobs: list[tuple[Graph, SolverConfig]]) -> list[tuple[OrthRepResult, float]]:
    n = worker_count()
    if n == 1 or len(jobs) <= 1:
        return [_solve_job(j) for j in jobs]
    with ProcessPoolExecutor(max_workers=n) as pool:
        return list(pool.map(_solve_job, jobs))


def recompute_and_verify(vectors_per_party: Sequence[Sequence[Vector]], dims: Sequence[int]) -> UpbVerdict:
    """Assemble states from per-party vectors and run the UPB test.

    ``vectors_per_party[m][i]`` is the local vector of state ``i + 1`` at
    party ``m + 1``.  The verdict's graphs are the ones actually realised.
    """
    if len(vectors_per_party) != len(dims):
        raise ValueError(f"{len(vectors_per_party)} parties of vectors for {len(dims)} dims")
    ks = {len(vs) for vs in vectors_per_party}
    if len(ks) != 1:
        raise ValueError("every party needs the same number of vectors")
    return is_upb(_assemble(vectors_per_party, dims))


def _assemble(vectors_per_party, dims) -> ProductStateSet:
    modes = {v.mode for vs in vectors_per_party for v in vs}
    if modes == {EXACT}:
        parties = vectors_per_party
        mode = EXACT
    else:
        parties = [[v.to_float() for v in vs] for vs in vectors_per_party]
        mode = FLOAT
    k = len(parties[0])
    states = [[parties[m][i] for m in range(len(dims))] for i in range(k)]
    return ProductStateSet(dims, states, mode)


# -- generic UPB construction -----------------------------------------------


@dataclass
class UpbRecipe:
    dims: tuple[int, ...]
    k: int
    graphs: list[Graph]
    configs: list[SolverConfig]

    def __post_init__(self):
        self.dims = tuple(self.dims)
        if len(self.graphs) != len(self.dims) or len(self.configs) != len(self.dims):
            raise ValueError("recipe needs one graph and one solver config per party")
        if any(g.k != self.k for g in self.graphs):
            raise ValueError(f"every graph must have {self.k} vertices")
        if union(self.graphs) != complete(self.k):
            raise ValueError(f"recipe graphs do not cover K_{self.k}")
        for cfg, d in zip(self.configs, self.dims):
            if cfg.dimension != d:
                raise ValueError("solver dimension must match the party's local dimension")

    @classmethod
    def from_json(cls, data) -> "UpbRecipe":
        if not isinstance(data, dict):
            raise ValueError("recipe JSON must be an object")
        try:
            dims = [int(d) for d in data["dims"]]
            k = int(data["k"])
            graphs = [Graph.from_json(g) for g in data["graphs"]]
        except KeyError as exc:
            raise ValueError(f"recipe is missing {exc}") from None
        base = data.get("solver", {})
        overrides = data.get("configs") or [{}] * len(dims)
        if len(overrides) != len(dims):
            raise ValueError("need one config override per party")
        configs = [_config_from_json({**base, **o}, d) for o, d in zip(overrides, dims)]
        return cls(tuple(dims), k, graphs, configs)


def _config_from_json(data: dict, dimension: int) -> SolverConfig:
    return SolverConfig(
        dimension=dimension,
        restarts=int(data.get("restarts", 100)),
        max_iterations=int(data.get("max_iterations", 2000)),
        objective_tolerance=float(data.get("tolerance", 1e-10)),
        rng_seed=int(data.get("seed", 0)),
        genericity_penalty_weight=float(data.get("genericity", 0.0)),
    )


@dataclass
class ConstructionResult:
    upb: ProductStateSet | None
    verdict: UpbVerdict | None
    solver_results: list[OrthRepResult]
    exact_parties: list[bool]
    message: str

    @property
    def ok(self) -> bool:
        return self.upb is not None

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "message": self.message,
            "mode": None if self.upb is None else self.upb.mode,
            "exact_parties": self.exact_parties,
            "solver": [{"converged": r.converged, "objective": r.objective,
                        "abs_objective": r.abs_objective, "restart_index": r.restart_index,
                        "faithfulness": [list(p) for p in r.faithfulness]} for r in self.solver_results],
            "verdict": None if self.verdict is None else self.verdict.to_json(),
            "upb": None if self.upb is None else self.upb.to_json(),
        }


def construct_upb(recipe: UpbRecipe) -> ConstructionResult:
    """Solve each party graph, assemble, and keep the set only if it is a UPB."""
    results = [r for r, _ in _solve_many(list(zip(recipe.graphs, recipe.configs)))]
    failed = [m for m, r in enumerate(results, 1) if not r.converged]
    if failed:
        return ConstructionResult(None, None, results, [False] * len(results),
                                  f"no orthogonal representation found for parties {failed}")
    parties, exact = [], []
    for g, r in zip(recipe.graphs, results):
        rounded = round_to_exact(r.vectors, g)
        exact.append(rounded is not None)
        parties.append(rounded if rounded is not None else r.vectors)
    if not all(exact):
        parties = [[v.to_float() for v in vs] for vs in parties]
    pset = _assemble(parties, recipe.dims)
    verdict = is_upb(pset)
    if verdict.is_upb:
        label = "exact" if pset.mode == EXACT else "numerical"
        return ConstructionResult(pset, verdict, results, exact, f"verified UPB of size {recipe.k} ({label})")
    return ConstructionResult(None, verdict, results, exact, f"assembled set is not a UPB ({verdict.reason})")


# -- three-qutrit GUPB search ---------------------------------------------------


@dataclass
class SearchConfig:
    restarts: int = 100
    max_iterations: int = 2000
    seed: int = 0
    tolerance: float = 1e-10
    genericity: float = 0.0
    source: str = "cayley"

    def solver_config(self) -> SolverConfig:
        return SolverConfig(dimension=3, restarts=self.restarts, max_iterations=self.max_iterations,
                            objective_tolerance=self.tolerance, rng_seed=self.seed,
                            genericity_penalty_weight=self.genericity)


@dataclass
class DecompositionRecord:
    label: str
    graphs: list[Graph]
    solved: list[bool]
    objectives: list[float]
    restart_indices: list[int]
    unfaithful_pairs: list[int]
    conditions: dict | None
    gupb: bool
    note: str
    elapsed: float = 0.0

    @property
    def solved_count(self) -> int:
        return sum(self.solved)

    def to_json(self, timing: bool = True) -> dict:
        out = {
            "label": self.label,
            "solved": self.solved,
            "solved_count": self.solved_count,
            "objectives": self.objectives,
            "restart_indices": self.restart_indices,
            "unfaithful_pairs": self.unfaithful_pairs,
            "conditions": self.conditions,
            "gupb": self.gupb,
            "note": self.note,
        }
        if timing:
            out["elapsed"] = self.elapsed
        return out


@dataclass
class SearchReport:
    records: list[DecompositionRecord]
    config: SearchConfig
    gupbs: list[ProductStateSet] = field(default_factory=list)

    @property
    def any_gupb(self) -> bool:
        return bool(self.gupbs)

    def summary(self) -> dict:
        hist: dict[int, int] = {}
        for r in self.records:
            hist[r.solved_count] = hist.get(r.solved_count, 0) + 1
        best: dict[str, float] = {}
        for r in self.records:
            parts = r.label.split(" | ")
            if len(parts) != len(r.objectives):
                parts = [f"{r.label}[{m}]" for m in range(1, len(r.objectives) + 1)]
            for label, obj in zip(parts, r.objectives):
                best[label] = min(best.get(label, obj), obj)
        return {
            "decompositions": len(self.records),
            "solved_count_histogram": {str(k): v for k, v in sorted(hist.items())},
            "best_objective_per_graph": best,
            "gupb_found": self.any_gupb,
        }

    def to_json(self, timing: bool = True) -> dict:
        return {
            "config": {"restarts": self.config.restarts, "max_iterations": self.config.max_iterations,
                       "seed": self.config.seed, "tolerance": self.config.tolerance,
                       "genericity": self.config.genericity, "source": self.config.source},
            "records": [r.to_json(timing) for r in self.records],
            "summary": self.summary(),
            "gupbs": [p.to_json() for p in self.gupbs],
        }


def load_decompositions(directory) -> list[tuple[str, tuple[Graph, Graph, Graph]]]:
    """Read user decompositions: each ``*.json`` file holds three graphs.

    A file is either a JSON array of three graph objects or an object with a
    ``"graphs"`` key holding that array.
    """
    out = []
    for path in sorted(Path(directory).glob("*.json")):
        with open(path) as fh:
            data = json.load(fh)
        if isinstance(data, dict):
            data = data.get("graphs")
        if not isinstance(data, list) or len(data) != 3:
            raise ValueError(f"{path}: expected three graphs")
        gs = tuple(Graph.from_json(g) for g in data)
        for g in gs:
            if g.k != 13 or not g.is_regular(4):
                raise ValueError(f"{path}: every graph must be 4-regular on 13 vertices")
        if not edge_disjoint(gs) or union(gs) != complete(13):
            raise ValueError(f"{path}: graphs must be edge-disjoint and cover K_13")
        out.append((path.stem, gs))
    if not out:
        raise ValueError(f"no decomposition files in {directory}")
    return out


def _decompositions(source: str):
    if source == "cayley":
        return [(str(p), gs) for p, gs in enumerate_k13_decompositions()]
    if source.startswith("dir:"):
        return load_decompositions(source[4:])
    raise ValueError(f"unknown decomposition source {source!r}")


def _evaluate_triple(label, graphs, results, elapsed) -> tuple[DecompositionRecord, ProductStateSet | None]:
    solved = [r.converged for r in results]
    rec = DecompositionRecord(
        label=label, graphs=list(graphs), solved=solved,
        objectives=[r.objective for r in results],
        restart_indices=[r.restart_index for r in results],
        unfaithful_pairs=[len(r.faithfulness) for r in results],
        conditions=None, gupb=False, note="", elapsed=elapsed)
    if not all(solved):
        rec.note = f"{sum(solved)} of 3 graphs represented"
        return rec, None

    pset = _assemble([r.vectors for r in results], (3, 3, 3))
    report = check_qutrit_gupb_conditions(pset)
    rec.conditions = report.to_json()
    if not any(r.faithfulness for r in results) and not report.graph_condition:
        raise AssertionError(f"{label}: faithful representations must satisfy the graph condition")
    if not report.all_hold:
        rec.note = "all graphs represented; sufficient conditions fail"
        return rec, None

    parties = [round_to_exact(r.vectors, g) for r, g in zip(results, graphs)]
    if any(p is None for p in parties):
        rec.note = "numerical candidate only; rational rounding failed"
        return rec, None
    exact = _assemble(parties, (3, 3, 3))
    if is_gupb(exact).is_gupb:
        rec.gupb = True
        rec.note = "GUPB verified exactly"
        return rec, exact
    rec.note = "rounded candidate is not a GUPB"
    return rec, None


def search_gupb_333(config: SearchConfig | None = None) -> SearchReport:
    """Look for a 13-state GUPB in (C^3)^3 across graph decompositions of K_13.

    Distinct graphs are solved once each (in parallel when
    ``UPBFORGE_THREADS`` > 1); records follow the decomposition order.
    """
    config = config or SearchConfig()
    decomps = _decompositions(config.source)
    cfg = config.solver_config()
    unique: dict[Graph, int] = {}
    for _, gs in decomps:
        for g in gs:
            unique.setdefault(g, len(unique))
    solved = _solve_many([(g, cfg) for g in unique])

    records, gupbs = [], []
    for label, gs in decomps:
        results = [solved[unique[g]][0] for g in gs]
        elapsed = sum(solved[unique[g]][1] for g in gs)
        rec, found = _evaluate_triple(label, gs, results, elapsed)
        log.info("%s: %s", label, rec.note)
        records.append(rec)
        if found is not None:
            gupbs.append(found)
    return SearchReport(records, config, gupbs)
