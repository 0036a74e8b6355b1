"""Independent brute-force extendibility oracle and random product-set generator.

The oracle shares no code with the cover search: it assigns every state to
one party, keeps assignments where each party's share of local vectors is
rank deficient, and tests the resulting product witness against the full
tensor states.
"""

from __future__ import annotations

from itertools import product
import random

from upbforge.linalg import QComplex, Vector, inner_product, orthocomplement_basis, rank, tensor
from upbforge.product import ProductStateSet

I = QComplex(0, 1)


def full_orthogonal(a: Vector, b: Vector) -> bool:
    return inner_product(a, b) == 0


def oracle_witness(pset: ProductStateSet) -> tuple[Vector, ...] | None:
    """A product vector orthogonal to every state, or None if none exists."""
    k, N = pset.k, pset.N
    states = [pset.full_state(i) for i in range(1, k + 1)]
    deficient: dict[tuple[int, frozenset], bool] = {}

    def ok(m, members):
        key = (m, members)
        if key not in deficient:
            vs = [pset.states[i][m] for i in members]
            deficient[key] = rank(vs) < pset.dims[m]
        return deficient[key]

    for assignment in product(range(N), repeat=k):
        groups = [frozenset(i for i in range(k) if assignment[i] == m) for m in range(N)]
        if not all(ok(m, g) for m, g in enumerate(groups)):
            continue
        factors = []
        for m, g in enumerate(groups):
            basis = orthocomplement_basis([pset.states[i][m] for i in g], dim=pset.dims[m], mode=pset.mode)
            factors.append(basis[0])
        w = tensor(factors)
        if all(full_orthogonal(w, s) for s in states):
            return tuple(factors)
        raise AssertionError("rank-deficient assignment produced a non-orthogonal witness")
    return None


def oracle_is_upb(pset: ProductStateSet) -> bool:
    states = [pset.full_state(i) for i in range(1, pset.k + 1)]
    if any(not full_orthogonal(a, b) for i, a in enumerate(states) for b in states[i + 1:]):
        return False
    if pset.k >= pset.D:
        return False
    return oracle_witness(pset) is None


def witness_verifies(pset: ProductStateSet, witness) -> bool:
    w = tensor(list(witness))
    return not w.is_zero() and all(full_orthogonal(w, pset.full_state(i)) for i in range(1, pset.k + 1))


# -- random sets -------------------------------------------------------------

def _v(*c):
    return Vector([QComplex(x) if not isinstance(x, QComplex) else x for x in c])


POOLS = {
    2: [_v(1, 0), _v(0, 1), _v(1, 1), _v(1, -1), _v(1, I), _v(1, -I), _v(1, 2), _v(2, -1)],
    3: [_v(1, 0, 0), _v(0, 1, 0), _v(0, 0, 1), _v(1, -1, 0), _v(0, 1, -1), _v(1, 1, 1),
        _v(1, 1, 0), _v(1, 1, -2), _v(1, 0, -1), _v(1, I, 0), _v(1, -1, 1), _v(0, 1, 1)],
}

TILES = [
    (_v(1, 0, 0), _v(1, -1, 0)),
    (_v(1, -1, 0), _v(0, 0, 1)),
    (_v(0, 0, 1), _v(0, 1, -1)),
    (_v(0, 1, -1), _v(1, 0, 0)),
    (_v(1, 1, 1), _v(1, 1, 1)),
]

SHIFTS = [
    (_v(1, 0), _v(0, 1), _v(1, 1)),
    (_v(0, 1), _v(1, 1), _v(1, 0)),
    (_v(1, 1), _v(1, 0), _v(0, 1)),
    (_v(1, -1), _v(1, -1), _v(1, -1)),
]


def random_product_set(seed: int) -> ProductStateSet:
    """Deterministic random exact product-state set with N in {2,3}, d in {2,3}, k <= 8.

    A quarter of the draws start from a known UPB (possibly with a state
    dropped) so that both verdicts appear often; a few admit non-orthogonal
    states.
    """
    rng = random.Random(seed)
    roll = rng.random()
    if roll < 0.125:
        states = list(TILES)
        dims = (3, 3)
    elif roll < 0.25:
        states = list(SHIFTS)
        dims = (2, 2, 2)
    else:
        N = rng.choice((2, 3))
        dims = tuple(rng.choice((2, 3)) for _ in range(N))
        states = []
    if states:
        rng.shuffle(states)
        if rng.random() < 0.4:
            states.pop()
        return ProductStateSet(dims, states)

    target = rng.randint(1, 8)
    sloppy = rng.random() < 0.1
    attempts = 0
    while len(states) < target and attempts < 400:
        attempts += 1
        cand = tuple(rng.choice(POOLS[d]) for d in dims)
        if (sloppy and rng.random() < 0.2) or all(any(full_orthogonal(a, b) for a, b in zip(cand, s)) for s in states):
            states.append(cand)
    if not states:
        states.append(tuple(rng.choice(POOLS[d]) for d in dims))
    return ProductStateSet(dims, states)
