"""Hypothesis strategies for small exact vectors."""

from hypothesis import strategies as st

from upbforge.linalg import QComplex, Vector

gaussian_ints = st.builds(QComplex, st.integers(-3, 3), st.integers(-3, 3))


def exact_vectors(dim: int, nonzero: bool = False):
    vs = st.lists(gaussian_ints, min_size=dim, max_size=dim).map(Vector)
    return vs.filter(lambda v: not v.is_zero()) if nonzero else vs


def same_dim_vectors(n_min: int = 0, n_max: int = 5):
    """A dimension and a list of exact vectors of that dimension."""
    return st.integers(1, 4).flatmap(
        lambda d: st.tuples(st.just(d), st.lists(exact_vectors(d), min_size=n_min, max_size=n_max)))
