import math

import pytest
from hypothesis import given, strategies as st

from upbforge.bounds import (
    DimensionVector,
    all_dims,
    bennett_bound,
    best_gupb_bound,
    compare,
    demianowicz_bound,
    effective_bennett_bound,
    family_dims,
    improved_bound,
    new_bound,
    new_bound_floor_form,
    nn_bound,
    nontriviality_families,
    nontriviality_family,
    table1,
    trivial_gupb_bound,
)

dims_strategy = st.lists(st.integers(2, 9), min_size=2, max_size=5)


def test_dimension_vector_sorts_and_validates():
    assert DimensionVector([4, 3, 3]).dims == (3, 3, 4)
    with pytest.raises(ValueError):
        DimensionVector([3])
    with pytest.raises(ValueError):
        DimensionVector([1, 3])


@pytest.mark.parametrize("dims, value, strict", [
    ((2, 2, 2, 3), 6, False),
    ((2, 2, 3, 3), 7, True),
    ((3, 3, 3), 7, False),
])
def test_bennett(dims, value, strict):
    assert bennett_bound(dims) == (value, strict)
    assert effective_bennett_bound(dims) == value + strict


@pytest.mark.parametrize("dims, expected", [((3, 3, 4), 14), ((3, 3, 3, 4), 38), ((3, 3, 3, 3, 4), 110)])
def test_trivial(dims, expected):
    assert trivial_gupb_bound(dims) == expected


@pytest.mark.parametrize("dims, expected", [((3, 3, 4), 13), ((3, 3, 4, 4), 48), ((3, 3, 3, 4, 4), 135)])
def test_demianowicz(dims, expected):
    assert demianowicz_bound(dims) == expected


@pytest.mark.parametrize("dims, expected", [((3, 3, 4), 16), ((3, 3, 3, 3, 4), 128), ((3, 3, 3), 13)])
def test_new(dims, expected):
    assert new_bound(dims) == expected


@pytest.mark.parametrize("dims, expected", [((3, 4, 5), 24), ((4, 4, 4, 4), 86), ((3, 3, 4), None),
                                            ((3, 3, 3), None)])
def test_improved(dims, expected):
    assert improved_bound(dims) == expected


def test_table1_rows():
    assert [row[1:] for row in table1()] == [
        (13, 14, 16), (13, 17, 19), (36, 38, 45), (48, 50, 56), (101, 110, 128), (135, 146, 162)]


def nn_oracle(N):
    # sum_{j=0}^{N-1} N^j, plus one
    return sum(N ** j for j in range(N)) + 1


@pytest.mark.parametrize("N", [4, 6, 8, 16, 20])
def test_nn_bound_matches_geometric_sum(N):
    assert nn_bound(N) == nn_oracle(N)


def test_nn_bound_values():
    assert nn_bound(4) == 86
    assert nn_bound(6) == 9332
    assert nn_bound(20) > 2 ** 64


@pytest.mark.parametrize("N", [4, 6])
def test_nn_bound_agrees_with_improved(N):
    assert nn_bound(N) == improved_bound((N,) * N)


@pytest.mark.parametrize("N", [2, 3, 5, 7])
def test_nn_bound_rejects_invalid(N):
    with pytest.raises(ValueError):
        nn_bound(N)


SWEEP = list(all_dims(range(2, 6), range(3, 9)))


def test_sweep_size():
    expected = sum(math.comb(6 + n - 1, n) for n in range(2, 6))
    assert len(SWEEP) == expected


def test_dominance_sweep():
    for dims in SWEEP:
        assert new_bound(dims) >= demianowicz_bound(dims), dims
        if len(set(dims)) == 1:
            assert new_bound(dims) == demianowicz_bound(dims), dims


def test_ceiling_floor_identity_on_sweep():
    for dims in SWEEP:
        assert new_bound(dims) == new_bound_floor_form(dims), dims


@given(dims_strategy)
def test_improved_is_new_plus_one(dims):
    imp = improved_bound(dims)
    if imp is not None:
        assert imp == new_bound(dims) + 1


@given(dims_strategy)
def test_bounds_are_order_invariant(dims):
    rev = list(reversed(dims))
    assert compare(dims) == compare(rev)


@given(dims_strategy)
def test_best_bound_dominates_components(dims):
    b = best_gupb_bound(dims)
    assert b >= new_bound(dims) and b >= trivial_gupb_bound(dims) and b >= demianowicz_bound(dims)


def test_compare_report():
    r = compare((3, 3, 5))
    assert (r.demianowicz, r.trivial_gupb, r.new_bound) == (13, 17, 19)
    assert r.new_beats_trivial and r.new_dominates_demianowicz and r.gupb_admissible
    assert not compare((2, 3, 3)).gupb_admissible
    assert r.to_json()["dims"] == [3, 3, 5]


def test_family_dims():
    assert family_dims(2, "A") == (4, 4, 5)
    assert family_dims(2, "B", 3) == (3, 3, 4)
    with pytest.raises(ValueError):
        family_dims(1, "A")
    with pytest.raises(ValueError):
        family_dims(2, "B", 5)
    with pytest.raises(ValueError):
        family_dims(2, "C")


def test_family_b_small_case():
    f = nontriviality_family(2, "B", 3)
    assert (f.new_bound, f.trivial_gupb) == (16, 14) and f.non_trivial


@pytest.mark.parametrize("p", range(2, 21))
def test_families_are_non_trivial(p):
    checks = nontriviality_families(p)
    assert len(checks) == 1 + p
    assert all(c.non_trivial for c in checks)


@pytest.mark.parametrize("p", range(2, 21))
def test_family_a_closed_forms(p):
    f = nontriviality_family(p, "A")
    dv = DimensionVector(f.dims)
    # the trivial side is exactly d1 + D/d1 with both terms even
    assert f.trivial_gupb == 6 * p * p
    # cofactor sum is 2 * 2p(3p-1) + 4p^2; ceil((16p^2 - 4p - 1) / 2) = 8p^2 - 2p
    assert dv.cofactor_sum() == 16 * p * p - 4 * p
    assert f.new_bound == 8 * p * p - 2 * p


@pytest.mark.parametrize("p", range(2, 21))
def test_family_a_unshifted_dims_give_eight_p_squared(p):
    dims = (2 * p, 2 * p, 3 * p)
    assert new_bound(dims) == 8 * p * p
    assert demianowicz_bound(dims) == 6 * p * p
