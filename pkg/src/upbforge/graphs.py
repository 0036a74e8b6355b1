"""Undirected simple graphs on vertices ``1..k`` and Cayley graphs on Z_13."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
import json
from typing import Iterable, Sequence


@dataclass(frozen=True)
class Graph:
    """Simple graph with 1-based vertices.

    ``edges`` is a sorted tuple of pairs ``(i, j)`` with ``i < j``;
    ``adjacency[v - 1]`` is a bitset whose bit ``u - 1`` marks neighbour ``u``.
    """

    k: int
    edges: tuple[tuple[int, int], ...]
    adjacency: tuple[int, ...] = field(repr=False, compare=False)

    def __init__(self, k: int, edges: Iterable[Sequence[int]] = ()):
        if not isinstance(k, int) or k < 1:
            raise ValueError(f"vertex count must be a positive integer, got {k!r}")
        seen = set()
        adj = [0] * k
        for e in edges:
            i, j = e
            if i == j:
                raise ValueError(f"loop at vertex {i}")
            i, j = min(i, j), max(i, j)
            if i < 1 or j > k:
                raise ValueError(f"edge ({i}, {j}) out of range 1..{k}")
            if (i, j) in seen:
                raise ValueError(f"duplicate edge ({i}, {j})")
            seen.add((i, j))
            adj[i - 1] |= 1 << (j - 1)
            adj[j - 1] |= 1 << (i - 1)
        object.__setattr__(self, "k", k)
        object.__setattr__(self, "edges", tuple(sorted(seen)))
        object.__setattr__(self, "adjacency", tuple(adj))

    @property
    def edge_set(self) -> frozenset[tuple[int, int]]:
        return frozenset(self.edges)

    def has_edge(self, i: int, j: int) -> bool:
        self._check_vertex(i)
        self._check_vertex(j)
        return bool(self.adjacency[i - 1] >> (j - 1) & 1)

    def neighbors(self, v: int) -> list[int]:
        self._check_vertex(v)
        bits = self.adjacency[v - 1]
        return [u + 1 for u in range(self.k) if bits >> u & 1]

    def degree(self, v: int) -> int:
        self._check_vertex(v)
        return bin(self.adjacency[v - 1]).count("1")

    def degrees(self) -> list[int]:
        return [bin(a).count("1") for a in self.adjacency]

    def is_regular(self, r: int | None = None) -> bool:
        """True if every vertex has degree ``r`` (any common degree if ``r`` is None)."""
        degs = set(self.degrees())
        if r is None:
            return len(degs) <= 1
        return degs == {r}

    def _check_vertex(self, v: int) -> None:
        if not 1 <= v <= self.k:
            raise ValueError(f"vertex {v} out of range 1..{self.k}")

    def to_json(self) -> dict:
        return {"k": self.k, "edges": [list(e) for e in self.edges]}

    @classmethod
    def from_json(cls, data) -> "Graph":
        if not isinstance(data, dict) or "k" not in data or "edges" not in data:
            raise ValueError('graph JSON must be an object with "k" and "edges"')
        k = data["k"]
        if isinstance(k, bool) or not isinstance(k, int):
            raise ValueError('"k" must be an integer')
        edges = []
        for e in data["edges"]:
            if (not isinstance(e, list) or len(e) != 2
                    or not all(isinstance(x, int) and not isinstance(x, bool) for x in e)):
                raise ValueError(f"edge must be a pair of integers, got {e!r}")
            edges.append(tuple(e))
        return cls(k, edges)


def complete(k: int) -> Graph:
    return Graph(k, combinations(range(1, k + 1), 2))


def empty(k: int) -> Graph:
    return Graph(k)


def union(gs: Sequence[Graph]) -> Graph:
    if not gs:
        raise ValueError("union of no graphs")
    k = gs[0].k
    if any(g.k != k for g in gs):
        raise ValueError("graphs in a union must share the vertex count")
    edges = set()
    for g in gs:
        edges.update(g.edges)
    return Graph(k, edges)


def edge_disjoint(gs: Sequence[Graph]) -> bool:
    return sum(len(g.edges) for g in gs) == len(set().union(*(g.edges for g in gs)))


def load_graph(path) -> Graph:
    with open(path) as fh:
        return Graph.from_json(json.load(fh))


# -- Cayley graphs on Z_13 -------------------------------------------------

Z13 = 13


@dataclass(frozen=True)
class PairPartition:
    """Partition of ``{1..6}`` into three 2-element blocks."""

    blocks: tuple[tuple[int, int], tuple[int, int], tuple[int, int]]

    def __post_init__(self):
        flat = sorted(x for b in self.blocks for x in b)
        if len(self.blocks) != 3 or any(len(b) != 2 for b in self.blocks) or flat != [1, 2, 3, 4, 5, 6]:
            raise ValueError(f"not a partition of 1..6 into pairs: {self.blocks!r}")

    def __str__(self):
        return " | ".join("{%d,%d}" % b for b in self.blocks)


def cayley_z13(S: Iterable[int]) -> Graph:
    """Cayley graph of Z_13 with connection set ``S ∪ -S``; residue r is vertex r+1."""
    S = tuple(sorted(set(S)))
    if len(S) != 2 or not all(1 <= s <= 6 for s in S):
        raise ValueError(f"connection set must be two distinct elements of 1..6, got {S!r}")
    conn = {s % Z13 for s in S} | {-s % Z13 for s in S}
    edges = set()
    for a in range(Z13):
        for b in range(a + 1, Z13):
            if (a - b) % Z13 in conn:
                edges.add((a + 1, b + 1))
    return Graph(Z13, edges)


def pair_partitions() -> list[PairPartition]:
    """All 15 partitions of ``{1..6}`` into three pairs, in lexicographic order."""
    out = []

    def rec(rest: tuple[int, ...], acc: list[tuple[int, int]]):
        if not rest:
            out.append(PairPartition(tuple(acc)))
            return
        first = rest[0]
        for other in rest[1:]:
            rec(tuple(x for x in rest[1:] if x != other), acc + [(first, other)])

    rec((1, 2, 3, 4, 5, 6), [])
    return out


def enumerate_k13_decompositions() -> list[tuple[PairPartition, tuple[Graph, Graph, Graph]]]:
    """The 15 decompositions of K_13 into three 4-regular Cayley graphs."""
    return [(p, tuple(cayley_z13(b) for b in p.blocks)) for p in pair_partitions()]
