"""Closed-form lower bounds on UPB and GUPB sizes.

All arithmetic is on Python integers; ceilings and floors use integer
division so results are exact for any dimension vector.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass
from itertools import combinations_with_replacement
import math
from typing import Iterable, Sequence


def _ceil_div(a: int, b: int) -> int:
    return -(-a // b)


@dataclass(frozen=True)
class DimensionVector:
    """Local dimensions, stored in non-decreasing order."""

    dims: tuple[int, ...]

    def __init__(self, dims: Iterable[int]):
        dims = tuple(sorted(int(d) for d in dims))
        if len(dims) < 2:
            raise ValueError("need at least two parties")
        if any(d < 2 for d in dims):
            raise ValueError(f"local dimensions must be >= 2, got {dims}")
        object.__setattr__(self, "dims", dims)

    @property
    def N(self) -> int:
        return len(self.dims)

    @property
    def D(self) -> int:
        return math.prod(self.dims)

    @property
    def d_min(self) -> int:
        return self.dims[0]

    @property
    def d_max(self) -> int:
        return self.dims[-1]

    def cofactor_sum(self) -> int:
        """Sum over parties of D / d_m."""
        return sum(self.D // d for d in self.dims)


def _dv(dims) -> DimensionVector:
    return dims if isinstance(dims, DimensionVector) else DimensionVector(dims)


def bennett_bound(dims) -> tuple[int, bool]:
    """UPB size bound ``sum(d_m - 1) + 1`` and whether it holds strictly.

    The strict form applies when some ``d_m`` is even and the value is odd;
    the effective bound is then one larger.
    """
    dv = _dv(dims)
    value = sum(d - 1 for d in dv.dims) + 1
    strict = any(d % 2 == 0 for d in dv.dims) and value % 2 == 1
    return value, strict


def effective_bennett_bound(dims) -> int:
    value, strict = bennett_bound(dims)
    return value + strict


def trivial_gupb_bound(dims) -> int:
    """Bound from applying the bipartite UPB bound to the cut ``A_1 | rest``."""
    dv = _dv(dims)
    d1 = dv.d_min
    rest = dv.D // d1
    if d1 % 2 == 0 and rest % 2 == 0:
        return d1 + rest
    return d1 + rest - 1


def demianowicz_bound(dims) -> int:
    dv = _dv(dims)
    q = dv.D // dv.d_max
    return q + (q - 2) // (dv.N - 1) + 1


def new_bound(dims) -> int:
    """Degree-counting GUPB bound ``ceil((sum D/d_m - 1) / (N - 1))``."""
    dv = _dv(dims)
    return _ceil_div(dv.cofactor_sum() - 1, dv.N - 1)


def new_bound_floor_form(dims) -> int:
    """Equivalent form ``floor((sum D/d_m - 2) / (N - 1)) + 1``."""
    dv = _dv(dims)
    return (dv.cofactor_sum() - 2) // (dv.N - 1) + 1


def improved_bound(dims) -> int | None:
    """Parity-improved GUPB bound, or ``None`` when its trigger does not hold.

    Triggered when some ``d_m`` is even and ``sum D/d_m - 1 = (N - 1) t``
    with ``t`` odd; the bound is then ``t + 1``.
    """
    dv = _dv(dims)
    if not any(d % 2 == 0 for d in dv.dims):
        return None
    t, r = divmod(dv.cofactor_sum() - 1, dv.N - 1)
    if r != 0 or t % 2 == 0:
        return None
    return t + 1


def nn_bound(N: int) -> int:
    """Minimal GUPB size bound in ``(C^N)^{⊗N}`` for even ``N >= 4``."""
    if N < 4 or N % 2:
        raise ValueError(f"N must be an even integer >= 4, got {N}")
    return (N ** N - 1) // (N - 1) + 1


def best_gupb_bound(dims) -> int:
    imp = improved_bound(dims)
    return max(new_bound(dims), demianowicz_bound(dims), trivial_gupb_bound(dims),
               imp if imp is not None else 0)


@dataclass(frozen=True)
class BoundReport:
    dims: tuple[int, ...]
    bennett: int
    bennett_strict_applies: bool
    trivial_gupb: int
    demianowicz: int
    new_bound: int
    improved_applies: bool
    improved: int | None
    gupb_admissible: bool

    @property
    def new_beats_trivial(self) -> bool:
        return self.new_bound > self.trivial_gupb

    @property
    def new_dominates_demianowicz(self) -> bool:
        return self.new_bound >= self.demianowicz

    def to_json(self) -> dict:
        out = asdict(self)
        out["dims"] = list(self.dims)
        out["new_beats_trivial"] = self.new_beats_trivial
        out["new_dominates_demianowicz"] = self.new_dominates_demianowicz
        return out


def compare(dims) -> BoundReport:
    dv = _dv(dims)
    value, strict = bennett_bound(dv)
    imp = improved_bound(dv)
    return BoundReport(
        dims=dv.dims,
        bennett=value,
        bennett_strict_applies=strict,
        trivial_gupb=trivial_gupb_bound(dv),
        demianowicz=demianowicz_bound(dv),
        new_bound=new_bound(dv),
        improved_applies=imp is not None,
        improved=imp,
        gupb_admissible=all(d >= 3 for d in dv.dims),
    )


def sweep(dims_list: Iterable[Sequence[int]]) -> list[BoundReport]:
    return [compare(d) for d in dims_list]


TABLE1_DIMS = (
    (3, 3, 4),
    (3, 3, 5),
    (3, 3, 3, 4),
    (3, 3, 4, 4),
    (3, 3, 3, 3, 4),
    (3, 3, 3, 4, 4),
)


def table1() -> list[tuple[tuple[int, ...], int, int, int]]:
    """Rows ``(dims, demianowicz, trivial, new)`` for the reference dimensions."""
    return [(r.dims, r.demianowicz, r.trivial_gupb, r.new_bound) for r in sweep(TABLE1_DIMS)]


def all_dims(n_range: Iterable[int], d_range: Iterable[int]):
    """Every sorted dimension vector with N in ``n_range`` and entries in ``d_range``."""
    d_range = list(d_range)
    for n in n_range:
        yield from combinations_with_replacement(d_range, n)


# -- non-triviality families ----------------------------------------------


@dataclass(frozen=True)
class FamilyCheck:
    variant: str
    p: int
    dims: tuple[int, ...]
    new_bound: int
    trivial_gupb: int
    floor_form: int

    @property
    def non_trivial(self) -> bool:
        return self.new_bound > self.trivial_gupb


def family_dims(p: int, variant: str, d_tilde: int | None = None) -> tuple[int, int, int]:
    if p < 2:
        raise ValueError(f"p must be >= 2, got {p}")
    if variant == "A":
        return (2 * p, 2 * p, 3 * p - 1)
    if variant == "B":
        if d_tilde is None or not 2 * p - 1 <= d_tilde <= 3 * p - 2:
            raise ValueError(f"d_tilde must lie in [{2 * p - 1}, {3 * p - 2}], got {d_tilde}")
        return (2 * p - 1, d_tilde, 3 * p - 2)
    raise ValueError(f"unknown variant {variant!r}")


def nontriviality_family(p: int, variant: str, d_tilde: int | None = None) -> FamilyCheck:
    """Evaluate both bounds on the tripartite families where the older
    Demianowicz bound gives no improvement over the trivial one."""
    dims = family_dims(p, variant, d_tilde)
    return FamilyCheck(variant, p, dims, new_bound(dims), trivial_gupb_bound(dims),
                       new_bound_floor_form(dims))


def nontriviality_families(p: int) -> list[FamilyCheck]:
    """Family A plus every admissible ``d_tilde`` of family B for this ``p``."""
    out = [nontriviality_family(p, "A")]
    out += [nontriviality_family(p, "B", dt) for dt in range(2 * p - 1, 3 * p - 1)]
    return out
