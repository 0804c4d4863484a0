import numpy as np
from hypothesis import given, settings, strategies as st

from permspec import modp


matrices = st.integers(2, 7).filter(lambda p: p in (2, 3, 5, 7)).flatmap(
    lambda p: st.tuples(
        st.just(p),
        st.lists(
            st.lists(st.integers(0, p - 1), min_size=1, max_size=5),
            min_size=1,
            max_size=5,
        ).filter(lambda rows: len({len(r) for r in rows}) == 1),
    )
)


def test_inv_mod():
    for p in (2, 3, 5, 7, 11):
        for a in range(1, p):
            assert (a * modp.inv_mod(a, p)) % p == 1


@settings(max_examples=300, deadline=None)
@given(matrices)
def test_rank_plus_nullity(mp):
    p, rows = mp
    A = np.array(rows, dtype=np.int64)
    r = modp.rank(A, p)
    ns = modp.nullspace(A, p)
    assert r + len(ns) == A.shape[1]
    for v in ns:
        assert not ((A @ np.array(v)) % p).any()


@settings(max_examples=300, deadline=None)
@given(matrices)
def test_rref_idempotent(mp):
    p, rows = mp
    A = np.array(rows, dtype=np.int64)
    R, pivots, r = modp.rref(A, p)
    R2, pivots2, r2 = modp.rref(R, p)
    assert np.array_equal(R % p, R2 % p)
    assert pivots == pivots2
    assert modp.rank(A, p) == len(pivots)


@settings(max_examples=200, deadline=None)
@given(matrices)
def test_solve_consistent_systems(mp):
    p, rows = mp
    A = np.array(rows, dtype=np.int64)
    x0 = np.arange(A.shape[1]) % p
    b = (A @ x0) % p
    x = modp.solve(A, b, p)
    assert x is not None
    assert np.array_equal((A @ np.array(x)) % p, b)


def test_solve_inconsistent():
    A = np.array([[1, 0], [1, 0]], dtype=np.int64)
    b = np.array([0, 1], dtype=np.int64)
    assert modp.solve(A, b, 2) is None


def test_matmul_matches_numpy():
    rng = np.random.default_rng(0)
    for p in (2, 3, 5):
        A = rng.integers(0, p, size=(4, 3))
        B = rng.integers(0, p, size=(3, 5))
        assert np.array_equal(modp.matmul(A, B, p), (A @ B) % p)
