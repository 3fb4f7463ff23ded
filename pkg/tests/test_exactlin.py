import numpy as np
import pytest
from fractions import Fraction
from hypothesis import given, settings, strategies as st
from hypothesis.extra.numpy import arrays

from babyverma.exactlin import (
    PrimeField,
    RationalMatrix,
    Subspace,
    as_matrix,
    inverse,
    kernel,
    matmul,
    rank,
    rref,
    solve,
)


def mats(p, max_side=6):
    shapes = st.tuples(st.integers(1, max_side), st.integers(1, max_side))
    return shapes.flatmap(lambda s: arrays(np.int64, s, elements=st.integers(0, p - 1)))


def test_prime_field_rejects_bad_moduli():
    for bad in (2, 4, 9, 1):
        with pytest.raises(ValueError):
            PrimeField(bad)
    F = PrimeField(5)
    assert F.reduce(Fraction(1, 2)) == 3
    with pytest.raises(ZeroDivisionError):
        F.reduce(Fraction(1, 5))


def test_rref_examples():
    R, r = rref(np.eye(2, dtype=np.int64), 5)
    assert r == 2 and np.array_equal(R, np.eye(2))
    R, r = rref(np.array([[2, 4], [1, 2]]), 5)
    assert r == 1 and R.tolist() == [[1, 2], [0, 0]]
    R, r = rref(np.zeros((3, 3), dtype=np.int64), 5)
    assert r == 0 and not R.any()


def test_kernel_examples():
    assert kernel(np.eye(4, dtype=np.int64), 3).dim == 0
    assert kernel(np.zeros((2, 3), dtype=np.int64), 5) == Subspace.full(3, 5)
    K = kernel(np.array([[1, 2, 0]]), 5)
    assert K.dim == 2
    assert K == Subspace.from_vectors([[3, 1, 0], [0, 0, 1]], 5, 3)
    brute = {
        v for v in np.ndindex(5, 5, 5) if (v[0] + 2 * v[1]) % 5 == 0
    }
    assert brute == {v for v in np.ndindex(5, 5, 5) if np.array(v) in K}


def test_subspace_examples():
    a = Subspace.from_vectors([[1, 0]], 3, 2)
    b = Subspace.from_vectors([[0, 1]], 3, 2)
    assert a + b == Subspace.full(2, 3)
    assert (a & b).dim == 0
    assert a + a == a and a & a == a
    with pytest.raises(ValueError):
        a + Subspace.zero(3, 3)


@settings(max_examples=60, deadline=None)
@given(mats(5))
def test_rref_idempotent_and_rank_transpose(m):
    R, r = rref(m, 5)
    R2, r2 = rref(R, 5)
    assert r == r2 and np.array_equal(R, R2)
    assert rank(m, 5) == rank(m.T.copy(), 5)


@settings(max_examples=60, deadline=None)
@given(mats(7))
def test_kernel_rank_nullity(m):
    K = kernel(m, 7)
    assert K.dim + rank(m, 7) == m.shape[1]
    if K.dim:
        assert not matmul(m, K.basis.T, 7).any()
    R, _ = rref(m, 7)
    assert kernel(R, 7) == K


@settings(max_examples=60, deadline=None)
@given(arrays(np.int64, (3, 4), elements=st.integers(0, 4)), arrays(np.int64, (2, 4), elements=st.integers(0, 4)))
def test_modular_dimension_law(x, y):
    a, b = Subspace.from_vectors(x, 5, 4), Subspace.from_vectors(y, 5, 4)
    s, i = a + b, a & b
    assert s.dim + i.dim == a.dim + b.dim
    assert s.contains_subspace(a) and a.contains_subspace(i) and b.contains_subspace(i)


@settings(max_examples=40, deadline=None)
@given(arrays(np.int64, (4, 4), elements=st.integers(0, 6)))
def test_inverse_and_solve(m):
    if rank(m, 7) < 4:
        with pytest.raises(np.linalg.LinAlgError):
            inverse(m, 7)
        return
    inv = inverse(m, 7)
    assert np.array_equal(matmul(m, inv, 7), np.eye(4, dtype=np.int64))
    b = np.arange(4, dtype=np.int64).reshape(4, 1)
    x = solve(m, b, 7)
    assert np.array_equal(matmul(m, x, 7), b % 7)


def test_solve_inconsistent_returns_none():
    assert solve(np.array([[1, 0], [1, 0]]), np.array([[1], [2]]), 5) is None


def test_quotient_coordinates_and_lift():
    S = Subspace.from_vectors([[1, 1, 0]], 5, 3)
    comp = S.complement_indices()
    assert len(comp) == 2
    v = np.array([2, 3, 4])
    c = S.quotient_coordinates(v)
    assert (v - S.lift(c)) % 5 in S


def test_matmul_exact_with_large_entries():
    rng = np.random.default_rng(0)
    p = 1_000_003
    a = rng.integers(0, p, (20, 300))
    b = rng.integers(0, p, (300, 7))
    ref = np.array([[sum(int(x) * int(y) for x, y in zip(r, c)) % p for c in b.T] for r in a])
    assert np.array_equal(matmul(a, b, p), ref)


def test_rational_matrix():
    M = RationalMatrix([[Fraction(1, 2), 1], [1, 3]])
    assert M.denominators() == {2}
    assert not M.is_integral_at(2) and M.is_integral_at(3)
    assert M.reduce_mod(3).tolist() == [[2, 1], [1, 0]]
    assert M.rank() == 2
    assert RationalMatrix([[1, 2], [2, 4]]).rank() == 1


def test_as_matrix_reduces_fractions():
    assert as_matrix([[Fraction(1, 2), -1]], 5).tolist() == [[3, 4]]
