from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from upbforge.linalg import (
    EXACT,
    FLOAT,
    DimensionError,
    ModeError,
    QComplex,
    Vector,
    format_vector,
    inner_product,
    orthocomplement_basis,
    rank,
    tensor,
    vec,
    vector_from_json,
    vector_to_json,
)

from strategies import exact_vectors, gaussian_ints, same_dim_vectors


@pytest.mark.parametrize("a, b, expected", [
    ((1, 0), (0, 1), 0),
    ((2, -1), (1, 2), 0),
    ((1, 1), (1, 1), 2),
])
def test_inner_product_examples(a, b, expected):
    assert inner_product(vec(*a), vec(*b)) == expected


def test_inner_product_is_conjugate_linear_in_first_argument():
    i = QComplex(0, 1)
    a = vec(i, 0)
    b = vec(1, 0)
    assert inner_product(a, b) == QComplex(0, -1)
    assert inner_product(b, a) == QComplex(0, 1)


def test_inner_product_rejects_mixed_dims_and_modes():
    with pytest.raises(DimensionError):
        inner_product(vec(1, 0), vec(1, 0, 0))
    with pytest.raises(ModeError):
        inner_product(vec(1, 0), vec(1.0, 0.0))


def test_exact_scalar_refuses_float_mixing():
    with pytest.raises(ModeError):
        QComplex(1) + 1.0
    with pytest.raises(ModeError):
        QComplex(1) == 1.0  # noqa: B015


def test_qcomplex_arithmetic():
    z = QComplex(1, 2)
    w = QComplex("1/2", -1)
    assert z * w == QComplex(Fraction(5, 2), 0)
    assert (z / w) * w == z
    assert z.conjugate() == QComplex(1, -2)
    assert z.abs2() == 5
    with pytest.raises(ZeroDivisionError):
        z / QComplex(0)


@pytest.mark.parametrize("vs, expected", [
    ([(1, 0), (0, 1), (1, 1)], 2),
    ([(1, 0, 0), (1, 1, 1), (1, 1, -2)], 3),
    ([], 0),
    ([(0, 0, 0)], 0),
    ([(1, 2), (2, 4)], 1),
])
def test_rank_examples(vs, expected):
    assert rank([vec(*v) for v in vs]) == expected


def test_rank_float_uses_tolerance():
    assert rank([vec(1.0, 0.0), vec(1.0, 1e-14)]) == 1
    assert rank([vec(1.0, 0.0), vec(1.0, 1e-3)]) == 2


def test_rank_rejects_mixed_dims():
    with pytest.raises(DimensionError):
        rank([vec(1, 0), vec(1, 0, 0)])


def test_orthocomplement_examples():
    (b,) = orthocomplement_basis([vec(1, 0)])
    assert inner_product(vec(1, 0), b) == 0 and not b.is_zero()

    (n,) = orthocomplement_basis([vec(1, 1, 1), vec(1, 1, -2)])
    # proportional to (1, -1, 0)
    assert n[2] == 0 and n[0] == -n[1] and n[0] != 0

    assert orthocomplement_basis([vec(1, 0, 0), vec(0, 1, 0), vec(1, 1, 1)]) == []


def test_orthocomplement_of_empty_family_is_full_space():
    basis = orthocomplement_basis([], dim=3, mode=EXACT)
    assert rank(basis) == 3


def test_orthocomplement_with_complex_entries():
    v = vec(QComplex(1, 1), QComplex(0, 2))
    (n,) = orthocomplement_basis([v])
    assert inner_product(v, n) == 0


@pytest.mark.parametrize("factors, expected", [
    ([(1, 0), (1, 1)], (1, 1, 0, 0)),
    ([(0, 1), (0, 1)], (0, 0, 0, 1)),
    ([(1, 2), (1, 0, -1)], (1, 0, -1, 2, 0, -2)),
])
def test_tensor_examples(factors, expected):
    assert tensor([vec(*f) for f in factors]) == vec(*expected)


def test_tensor_rejects_empty():
    with pytest.raises(DimensionError):
        tensor([])


def test_vector_rejects_empty():
    with pytest.raises(DimensionError):
        Vector([])


@given(st.integers(1, 4).flatmap(lambda d: st.tuples(exact_vectors(d), exact_vectors(d))))
def test_conjugate_symmetry(pair):
    a, b = pair
    assert inner_product(a, b) == inner_product(b, a).conjugate()


@given(same_dim_vectors(), st.data())
def test_rank_monotone(dv, data):
    d, vs = dv
    v = data.draw(exact_vectors(d))
    r = rank(vs)
    assert r <= rank(vs + [v]) <= r + 1
    assert r <= d


@given(same_dim_vectors())
def test_orthocomplement_is_orthogonal_and_complementary(dv):
    d, vs = dv
    basis = orthocomplement_basis(vs, dim=d, mode=EXACT)
    assert len(basis) == d - rank(vs)
    assert rank(basis) == len(basis)
    for b in basis:
        assert all(inner_product(v, b) == 0 for v in vs)


@given(st.data())
def test_tensor_inner_product_factorizes(data):
    da, db = data.draw(st.integers(1, 3)), data.draw(st.integers(1, 3))
    a, c = data.draw(exact_vectors(da)), data.draw(exact_vectors(da))
    b, e = data.draw(exact_vectors(db)), data.draw(exact_vectors(db))
    lhs = inner_product(tensor([a, b]), tensor([c, e]))
    assert lhs == inner_product(a, c) * inner_product(b, e)


@given(st.integers(1, 4).flatmap(exact_vectors))
def test_exact_json_round_trip(v):
    assert vector_from_json(vector_to_json(v), EXACT) == v


def test_float_json_round_trip():
    v = vec(1.5 + 2j, -0.25)
    assert vector_from_json(vector_to_json(v), FLOAT) == v


@pytest.mark.parametrize("bad", [[], [[1]], [[True, 0]], [["x", 0]], "1,2"])
def test_json_reader_rejects_malformed(bad):
    with pytest.raises(ValueError):
        vector_from_json(bad, EXACT)


def test_json_reader_accepts_integers_and_plain_strings():
    assert vector_from_json([[1, 0], ["2", "-1/3"]], EXACT) == vec(1, QComplex(2, "-1/3"))


@given(gaussian_ints)
def test_qcomplex_bool_matches_zero(z):
    assert bool(z) == (z != QComplex(0))


def test_format_vector():
    assert format_vector(vec(1, "-2/3", QComplex(1, 2))) == "(1, -2/3, 1+2i)"
