"""Sets of product states, their orthogonality graphs and unextendibility tests.

A set of orthogonal product states is extendible exactly when, for every
party ``m``, one can pick an unsaturated vertex set ``W_m`` (local vectors
that do not span the local space) such that the ``W_m`` jointly cover all
states.  The normals of the chosen sets then form a product vector
orthogonal to the whole set, which is returned as a witness.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
import json
import math
from typing import Iterable, Sequence

from .graphs import Graph, complete, union
from .linalg import (
    EPS,
    EXACT,
    FLOAT,
    ModeError,
    QComplex,
    Vector,
    is_orthogonal,
    orthocomplement_basis,
    rank,
    tensor,
    vector_from_json,
    vector_to_json,
)


@dataclass(frozen=True)
class ProductStateSet:
    """``k`` product states over ``N`` parties with local dimensions ``dims``.

    ``states[i][m]`` is the local vector of state ``i + 1`` at party ``m + 1``.
    """

    dims: tuple[int, ...]
    states: tuple[tuple[Vector, ...], ...]
    mode: str = EXACT

    def __init__(self, dims: Sequence[int], states: Iterable[Sequence[Vector]], mode: str | None = None):
        dims = tuple(int(d) for d in dims)
        states = tuple(tuple(s) for s in states)
        if len(dims) < 2:
            raise ValueError("a product-state set needs at least two parties")
        if any(d < 1 for d in dims):
            raise ValueError(f"local dimensions must be positive, got {dims}")
        if not states:
            raise ValueError("a product-state set needs at least one state")
        if mode is None:
            mode = states[0][0].mode
        for i, s in enumerate(states, 1):
            if len(s) != len(dims):
                raise ValueError(f"state {i} has {len(s)} factors, expected {len(dims)}")
            for m, (v, d) in enumerate(zip(s, dims), 1):
                if v.mode != mode:
                    raise ModeError(f"state {i} party {m} is {v.mode}, set is {mode}")
                if v.dim != d:
                    raise ValueError(f"state {i} party {m} has dimension {v.dim}, expected {d}")
                if v.is_zero():
                    raise ValueError(f"state {i} party {m} is the zero vector")
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "states", states)
        object.__setattr__(self, "mode", mode)

    @property
    def k(self) -> int:
        return len(self.states)

    @property
    def N(self) -> int:
        return len(self.dims)

    @property
    def D(self) -> int:
        return math.prod(self.dims)

    def local_vectors(self, m: int) -> list[Vector]:
        self._check_party(m)
        return [s[m - 1] for s in self.states]

    def full_state(self, i: int) -> Vector:
        return tensor(self.states[i - 1])

    def without(self, i: int) -> "ProductStateSet":
        """Copy with state ``i`` (1-based) removed."""
        return ProductStateSet(self.dims, self.states[: i - 1] + self.states[i:], self.mode)

    def to_float(self) -> "ProductStateSet":
        return ProductStateSet(self.dims, [[v.to_float() for v in s] for s in self.states], FLOAT)

    def _check_party(self, m: int) -> None:
        if not 1 <= m <= self.N:
            raise ValueError(f"party {m} out of range 1..{self.N}")

    def to_json(self) -> dict:
        return {
            "dims": list(self.dims),
            "mode": self.mode,
            "states": [[vector_to_json(v) for v in s] for s in self.states],
        }

    @classmethod
    def from_json(cls, data) -> "ProductStateSet":
        if not isinstance(data, dict):
            raise ValueError("product-state set JSON must be an object")
        try:
            dims, mode, states = data["dims"], data.get("mode", EXACT), data["states"]
        except KeyError as exc:
            raise ValueError(f"missing key {exc}") from None
        if not isinstance(dims, list) or not all(isinstance(d, int) and not isinstance(d, bool) for d in dims):
            raise ValueError('"dims" must be a list of integers')
        if not isinstance(states, list):
            raise ValueError('"states" must be a list')
        parsed = []
        for s in states:
            if not isinstance(s, list):
                raise ValueError("each state must be a list of local vectors")
            parsed.append([vector_from_json(v, mode) for v in s])
        return cls(dims, parsed, mode)


def load_set(path) -> ProductStateSet:
    with open(path) as fh:
        return ProductStateSet.from_json(json.load(fh))


def save_set(pset: ProductStateSet, path) -> None:
    with open(path, "w") as fh:
        json.dump(pset.to_json(), fh, indent=1)


def _unit(d: int, mode: str) -> Vector:
    if mode == EXACT:
        return Vector([QComplex(1)] + [QComplex(0)] * (d - 1), EXACT)
    return Vector([1 + 0j] + [0j] * (d - 1), FLOAT)


def _mask(indices: Iterable[int]) -> int:
    out = 0
    for i in indices:
        out |= 1 << i
    return out


def _members(mask: int) -> frozenset[int]:
    """1-based vertex set of a 0-based bitmask."""
    return frozenset(i + 1 for i in range(mask.bit_length()) if mask >> i & 1)


# -- graphs ----------------------------------------------------------------


def orthogonality_graph(pset: ProductStateSet, m: int, eps: float = EPS) -> Graph:
    vs = pset.local_vectors(m)
    edges = [(i + 1, j + 1) for i, j in combinations(range(pset.k), 2)
             if is_orthogonal(vs[i], vs[j], eps)]
    return Graph(pset.k, edges)


def orthogonality_graphs(pset: ProductStateSet, eps: float = EPS) -> list[Graph]:
    return [orthogonality_graph(pset, m, eps) for m in range(1, pset.N + 1)]


def mutual_orthogonality(pset: ProductStateSet, eps: float = EPS) -> bool:
    """True iff the union of the orthogonality graphs is complete."""
    return union(orthogonality_graphs(pset, eps)) == complete(pset.k)


# -- unsaturated sets ------------------------------------------------------


class TriviallyExtendible(Exception):
    """The local vectors at ``party`` do not span their space.

    ``normal`` is a nonzero vector orthogonal to all of them.
    """

    def __init__(self, party: int, normal: Vector):
        super().__init__(f"local vectors at party {party} do not span the local space")
        self.party = party
        self.normal = normal


@dataclass(frozen=True)
class UnsaturatedSet:
    """Maximal unsaturated vertex set together with a normal of its span."""

    members: frozenset[int]
    normal: Vector

    @property
    def mask(self) -> int:
        return _mask(i - 1 for i in self.members)

    def __len__(self):
        return len(self.members)


def maximal_unsaturated_sets(pset: ProductStateSet, m: int, eps: float = EPS) -> list[UnsaturatedSet]:
    """All inclusion-maximal unsaturated vertex sets at party ``m``.

    Such a set always has local rank ``d - 1`` and therefore equals the set of
    vectors lying in the hyperplane spanned by any ``d - 1`` independent
    members.  Enumerating independent ``(d - 1)``-subsets and collecting
    the vectors orthogonal to their normal finds every one of them.

    Raises :class:`TriviallyExtendible` if the local vectors do not span.
    """
    vs = pset.local_vectors(m)
    d = pset.dims[m - 1]
    if rank(vs, eps) < d:
        raise TriviallyExtendible(m, orthocomplement_basis(vs, eps=eps)[0])
    found: dict[int, Vector] = {}
    for subset in combinations(range(pset.k), d - 1):
        smask = _mask(subset)
        # a subset inside a known hyperplane class spans that same hyperplane
        if any(smask & ~w == 0 for w in found):
            continue
        sub = [vs[i] for i in subset]
        if rank(sub, eps) != d - 1:
            continue
        (normal,) = orthocomplement_basis(sub, dim=d, mode=pset.mode, eps=eps)
        w = _mask(i for i in range(pset.k) if is_orthogonal(normal, vs[i], eps))
        found.setdefault(w, normal)
    masks = list(found)
    maximal = [w for w in masks if not any(w != o and w & ~o == 0 for o in masks)]
    maximal.sort(key=lambda w: (-bin(w).count("1"), sorted(_members(w))))
    return [UnsaturatedSet(_members(w), found[w]) for w in maximal]


def unsaturated_size_bound(pset: ProductStateSet, m: int) -> int:
    """Largest unsaturated-set size compatible with ``pset`` being a UPB."""
    pset._check_party(m)
    return pset.k - 1 - sum(d - 1 for i, d in enumerate(pset.dims, 1) if i != m)


# -- cover search ----------------------------------------------------------


def find_cover(k: int, party_sets: Sequence[Sequence[int]]) -> list[int | None] | None:
    """Pick at most one bitmask per party so that the union is all ``k`` vertices.

    Returns, per party, the index of the chosen set (``None`` when the party
    is not needed) or ``None`` if no cover exists.  Branches on the lowest
    uncovered vertex; parties with fewer sets are tried first and larger
    sets before smaller ones.
    """
    full = (1 << k) - 1
    n = len(party_sets)
    order = sorted(range(n), key=lambda p: len(party_sets[p]))
    ranked = {p: sorted(range(len(party_sets[p])), key=lambda j: -bin(party_sets[p][j]).count("1"))
              for p in order}
    largest = {p: max((bin(s).count("1") for s in party_sets[p]), default=0) for p in order}
    failed: set[tuple[int, int]] = set()
    choice: list[int | None] = [None] * n

    def search(covered: int, used: int) -> bool:
        if covered == full:
            return True
        if (covered, used) in failed:
            return False
        remaining = bin(full & ~covered).count("1")
        if sum(largest[p] for p in order if not used >> p & 1) < remaining:
            failed.add((covered, used))
            return False
        low = (full & ~covered) & -(full & ~covered)
        for p in order:
            if used >> p & 1:
                continue
            for j in ranked[p]:
                s = party_sets[p][j]
                if s & low:
                    choice[p] = j
                    if search(covered | s, used | 1 << p):
                        return True
                    choice[p] = None
        failed.add((covered, used))
        return False

    return choice if search(0, 0) else None


# -- verdicts --------------------------------------------------------------


@dataclass
class UpbVerdict:
    """Outcome of :func:`is_upb`.

    ``reason`` is one of ``"upb"``, ``"not_orthogonal"``, ``"complete_basis"``,
    ``"trivially_extendible"`` or ``"cover"``.  Extendible outcomes
    (the last two) carry a product ``witness`` orthogonal to every state.
    """

    is_upb: bool
    reason: str
    mode: str
    graphs: list[Graph]
    witness: tuple[Vector, ...] | None = None
    cover: list[frozenset[int] | None] | None = None
    maximal_sets: list[list[UnsaturatedSet] | None] = field(default_factory=list)
    non_orthogonal_pairs: list[tuple[int, int]] = field(default_factory=list)

    @property
    def numerical(self) -> bool:
        return self.mode == FLOAT

    def degree_table(self) -> list[list[int]]:
        return [g.degrees() for g in self.graphs]

    def to_json(self) -> dict:
        return {
            "is_upb": self.is_upb,
            "reason": self.reason,
            "mode": self.mode,
            "numerical": self.numerical,
            "witness": None if self.witness is None else [vector_to_json(v) for v in self.witness],
            "cover": None if self.cover is None else [None if c is None else sorted(c) for c in self.cover],
            "graphs": [g.to_json() for g in self.graphs],
            "degrees": self.degree_table(),
            "maximal_unsaturated_sets": [None if ms is None else [sorted(u.members) for u in ms]
                                         for ms in self.maximal_sets],
            "non_orthogonal_pairs": [list(p) for p in self.non_orthogonal_pairs],
        }


def witness_is_orthogonal(pset: ProductStateSet, witness: Sequence[Vector], eps: float = EPS) -> bool:
    """Check that the product vector ``witness`` is orthogonal to every state."""
    for s in pset.states:
        if not any(is_orthogonal(w, v, eps) for w, v in zip(witness, s)):
            return False
    return True


def is_upb(pset: ProductStateSet, eps: float = EPS) -> UpbVerdict:
    """Decide whether ``pset`` is an unextendible product basis."""
    graphs = orthogonality_graphs(pset, eps)
    joined = union(graphs)
    if joined != complete(pset.k):
        missing = sorted(complete(pset.k).edge_set - joined.edge_set)
        return UpbVerdict(False, "not_orthogonal", pset.mode, graphs, non_orthogonal_pairs=missing)
    if pset.k >= pset.D:
        # orthogonal complement is zero: a complete product basis
        return UpbVerdict(False, "complete_basis", pset.mode, graphs)

    for m in range(1, pset.N + 1):
        if rank(pset.local_vectors(m), eps) < pset.dims[m - 1]:
            normal = orthocomplement_basis(pset.local_vectors(m), eps=eps)[0]
            witness = tuple(normal if p == m else _unit(d, pset.mode)
                            for p, d in enumerate(pset.dims, 1))
            _assert_witness(pset, witness, eps)
            cover = [frozenset(range(1, pset.k + 1)) if p == m else None for p in range(1, pset.N + 1)]
            return UpbVerdict(False, "trivially_extendible", pset.mode, graphs,
                              witness=witness, cover=cover)

    maximal = [maximal_unsaturated_sets(pset, m, eps) for m in range(1, pset.N + 1)]
    choice = find_cover(pset.k, [[u.mask for u in ms] for ms in maximal])
    if choice is None:
        return UpbVerdict(True, "upb", pset.mode, graphs, maximal_sets=maximal)
    witness = tuple(_unit(d, pset.mode) if j is None else maximal[p][j].normal
                    for p, (j, d) in enumerate(zip(choice, pset.dims)))
    _assert_witness(pset, witness, eps)
    cover = [None if j is None else maximal[p][j].members for p, j in enumerate(choice)]
    return UpbVerdict(False, "cover", pset.mode, graphs, witness=witness, cover=cover,
                      maximal_sets=maximal)


def _assert_witness(pset, witness, eps):
    if not witness_is_orthogonal(pset, witness, eps):
        raise RuntimeError("constructed witness is not orthogonal to the set")


# -- structural checks -----------------------------------------------------


@dataclass
class DegreeViolation:
    party: int
    vertex: int
    degree: int
    lower: int
    upper: int

    @property
    def kind(self) -> str:
        return "lower" if self.degree < self.lower else "upper"


@dataclass
class DegreeReport:
    lower: list[int]
    upper: list[int]
    degrees: list[list[int]]
    violations: list[DegreeViolation]

    @property
    def ok(self) -> bool:
        return not self.violations

    @property
    def tight(self) -> bool:
        """Every degree meets both bounds with equality."""
        return all(set(degs) == {lo} == {up}
                   for degs, lo, up in zip(self.degrees, self.lower, self.upper))


def degree_bounds_check(pset: ProductStateSet, eps: float = EPS) -> DegreeReport:
    """Compare each vertex degree with the bounds every UPB must satisfy."""
    lower = [d - 1 for d in pset.dims]
    upper = [unsaturated_size_bound(pset, m) for m in range(1, pset.N + 1)]
    degrees = [g.degrees() for g in orthogonality_graphs(pset, eps)]
    violations = [DegreeViolation(m, v, deg, lower[m - 1], upper[m - 1])
                  for m, degs in enumerate(degrees, 1)
                  for v, deg in enumerate(degs, 1)
                  if not lower[m - 1] <= deg <= upper[m - 1]]
    return DegreeReport(lower, upper, degrees, violations)


@dataclass
class RegularityReport:
    targets: list[int]
    regular: list[bool]
    offending: list[list[int]]

    @property
    def ok(self) -> bool:
        return all(self.regular)


def _regularity(pset, targets, eps) -> RegularityReport:
    graphs = orthogonality_graphs(pset, eps)
    offending = [[v for v, deg in enumerate(g.degrees(), 1) if deg != t] for g, t in zip(graphs, targets)]
    return RegularityReport(list(targets), [not o for o in offending], offending)


def check_bennett_regularity(pset: ProductStateSet, eps: float = EPS) -> RegularityReport:
    """Is every ``G_m`` ``(d_m - 1)``-regular (as for minimal UPBs)?"""
    return _regularity(pset, [d - 1 for d in pset.dims], eps)


def check_minimal_gupb_regularity(pset: ProductStateSet, eps: float = EPS) -> RegularityReport:
    """Is every ``G_m`` ``(k - D/d_m)``-regular (as for minimal GUPBs)?"""
    return _regularity(pset, [pset.k - pset.D // d for d in pset.dims], eps)


# -- bipartitions ----------------------------------------------------------


@dataclass(frozen=True)
class Bipartition:
    side1: frozenset[int]
    side2: frozenset[int]

    def __init__(self, side1: Iterable[int], side2: Iterable[int]):
        object.__setattr__(self, "side1", frozenset(side1))
        object.__setattr__(self, "side2", frozenset(side2))

    def validate(self, N: int) -> None:
        if not self.side1 or not self.side2:
            raise ValueError("both sides of a bipartition must be nonempty")
        if self.side1 & self.side2:
            raise ValueError("bipartition sides overlap")
        if self.side1 | self.side2 != frozenset(range(1, N + 1)):
            raise ValueError(f"bipartition does not cover parties 1..{N}")

    def __str__(self):
        return ",".join(map(str, sorted(self.side1))) + " | " + ",".join(map(str, sorted(self.side2)))


def all_bipartitions(N: int) -> list[Bipartition]:
    """The ``2**(N-1) - 1`` bipartitions, party 1 always on the first side."""
    rest = list(range(2, N + 1))
    out = []
    for r in range(0, N - 1):
        for extra in combinations(rest, r):
            side1 = {1, *extra}
            out.append(Bipartition(side1, set(range(1, N + 1)) - side1))
    return out


def group(pset: ProductStateSet, bp: Bipartition) -> ProductStateSet:
    """Bipartite set obtained by tensoring the local vectors on each side."""
    bp.validate(pset.N)
    sides = [sorted(bp.side1), sorted(bp.side2)]
    dims = [math.prod(pset.dims[m - 1] for m in side) for side in sides]
    states = [[tensor([s[m - 1] for m in side]) for side in sides] for s in pset.states]
    return ProductStateSet(dims, states, pset.mode)


@dataclass
class GupbVerdict:
    is_gupb: bool
    results: list[tuple[Bipartition, UpbVerdict]]

    @property
    def failing(self) -> tuple[Bipartition, UpbVerdict] | None:
        return next(((bp, v) for bp, v in self.results if not v.is_upb), None)

    def to_json(self) -> dict:
        fail = self.failing
        return {
            "is_gupb": self.is_gupb,
            "bipartitions": [{"side1": sorted(bp.side1), "side2": sorted(bp.side2),
                              "is_upb": v.is_upb, "reason": v.reason,
                              "witness": None if v.witness is None else [vector_to_json(w) for w in v.witness]}
                             for bp, v in self.results],
            "failing_bipartition": None if fail is None else [sorted(fail[0].side1), sorted(fail[0].side2)],
        }


def is_gupb(pset: ProductStateSet, eps: float = EPS, stop_at_first: bool = False) -> GupbVerdict:
    """Test unextendibility across every bipartition of the parties."""
    results = []
    for bp in all_bipartitions(pset.N):
        verdict = is_upb(group(pset, bp), eps)
        results.append((bp, verdict))
        if stop_at_first and not verdict.is_upb:
            break
    return GupbVerdict(all(v.is_upb for _, v in results) and len(results) == 2 ** (pset.N - 1) - 1,
                       results)


# -- three-qutrit conditions -----------------------------------------------


@dataclass
class QutritGupbReport:
    """Sufficient conditions for a 13-state GUPB in C^3 x C^3 x C^3.

    (i) the orthogonality graphs are 4-regular and cover K_13;
    (ii) any five local vectors of a party span C^3;
    (iii) any nine two-party tensors span C^9, for each pair of parties.
    """

    graph_condition: bool
    five_subsets_condition: bool
    nine_subsets_condition: bool
    five_subset_failures: list[tuple[int, tuple[int, ...]]] = field(default_factory=list)
    nine_subset_failures: list[tuple[tuple[int, int], tuple[int, ...]]] = field(default_factory=list)
    checks_run: dict = field(default_factory=dict)

    @property
    def all_hold(self) -> bool:
        return self.graph_condition and self.five_subsets_condition and self.nine_subsets_condition

    def to_json(self) -> dict:
        return {
            "graph_condition": self.graph_condition,
            "five_subsets_condition": self.five_subsets_condition,
            "nine_subsets_condition": self.nine_subsets_condition,
            "five_subset_failures": [[m, list(s)] for m, s in self.five_subset_failures],
            "nine_subset_failures": [[list(p), list(s)] for p, s in self.nine_subset_failures],
            "checks_run": self.checks_run,
        }


PARTY_PAIRS = ((1, 2), (1, 3), (2, 3))


def check_qutrit_gupb_conditions(pset: ProductStateSet, eps: float = EPS,
                                 stop_at_first: bool = True) -> QutritGupbReport:
    """Evaluate the three sufficient GUPB conditions for 13 states in (C^3)^3.

    With ``stop_at_first`` each party / pair stops at its first failing subset.
    """
    if pset.dims != (3, 3, 3) or pset.k != 13:
        raise ValueError(f"expected 13 states in dims (3, 3, 3), got {pset.k} in {pset.dims}")
    graphs = orthogonality_graphs(pset, eps)
    cond1 = union(graphs) == complete(13) and all(g.is_regular(4) for g in graphs)

    fives, n5 = [], 0
    for m in (1, 2, 3):
        vs = pset.local_vectors(m)
        for sub in combinations(range(13), 5):
            n5 += 1
            if rank([vs[i] for i in sub], eps) < 3:
                fives.append((m, tuple(i + 1 for i in sub)))
                if stop_at_first:
                    break

    nines, n9 = [], 0
    for a, b in PARTY_PAIRS:
        ts = [tensor([s[a - 1], s[b - 1]]) for s in pset.states]
        for sub in combinations(range(13), 9):
            n9 += 1
            if rank([ts[i] for i in sub], eps) < 9:
                nines.append(((a, b), tuple(i + 1 for i in sub)))
                if stop_at_first:
                    break

    return QutritGupbReport(cond1, not fives, not nines, fives, nines,
                            {"five_subset_ranks": n5, "nine_subset_ranks": n9})
