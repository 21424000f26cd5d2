import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tensorring import exactla as la
from tensorring.algebra import contract
from tensorring.errors import ShapeError
from tensorring.exactla import FieldSpec

from conftest import brute_vectors

PRIMES = [2, 3, 5, 7]


@st.composite
def matrices(draw, max_rows=4, max_cols=4, primes=PRIMES):
    p = draw(st.sampled_from(primes))
    r = draw(st.integers(0, max_rows))
    c = draw(st.integers(0, max_cols))
    data = draw(st.lists(st.integers(0, p - 1), min_size=r * c, max_size=r * c))
    return p, np.array(data, dtype=np.int64).reshape(r, c)


def brute_kernel_size(a, p):
    vecs = brute_vectors(a.shape[1], p)
    return int(np.sum(~np.any((vecs @ a.T) % p, axis=1)))


def test_field_spec_rejects_composites_and_small():
    for bad in (0, 1, 4, 9, 15):
        with pytest.raises(ValueError):
            FieldSpec(bad)
    with pytest.raises(ValueError):
        FieldSpec(2**31 + 11)
    assert FieldSpec(7).inv(3) == 5


def test_rref_known_matrix():
    a = la.mat([[1, 2, 3], [2, 4, 6], [1, 0, 1]], 7)
    r, piv = la.rref(a, 7)
    assert piv == [0, 1]
    assert np.array_equal(r, la.mat([[1, 0, 1], [0, 1, 1], [0, 0, 0]], 7))


@settings(max_examples=80, deadline=None)
@given(matrices(max_rows=3, max_cols=4, primes=[2, 3]))
def test_rank_nullity_against_enumeration(pm):
    p, a = pm
    k = la.kernel_basis(a, p)
    assert k.shape[1] == a.shape[1] - la.rank(a, p)
    assert not np.any(la.matmul(a, k, p)) if a.size else True
    assert p ** k.shape[1] == brute_kernel_size(a, p)


@settings(max_examples=80, deadline=None)
@given(matrices())
def test_image_basis_spans_columns(pm):
    p, a = pm
    im = la.image_basis(a, p)
    assert im.shape[1] == la.rank(a, p)
    for col in a.T:
        assert la.in_span(im, col, p) or im.shape[0] == 0


@settings(max_examples=80, deadline=None)
@given(matrices(), st.integers(0, 10**6))
def test_solve_recovers_consistent_systems(pm, seed):
    p, a = pm
    x0 = np.random.default_rng(seed).integers(0, p, size=(a.shape[1], 2))
    b = la.matmul(a, x0, p)
    x = la.solve(a, b, p)
    assert x is not None
    assert np.array_equal(la.matmul(a, x, p), b)


def test_solve_detects_inconsistency():
    a = la.mat([[1, 1], [1, 1]], 3)
    assert la.solve(a, np.array([1, 2]), 3) is None


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(PRIMES), st.integers(1, 5), st.integers(0, 10**6))
def test_inverse_roundtrip(p, n, seed):
    rng = np.random.default_rng(seed)
    a = rng.integers(0, p, size=(n, n))
    if la.rank(a, p) < n:
        with pytest.raises(ShapeError):
            la.inverse(a, p)
        return
    assert np.array_equal(la.matmul(a, la.inverse(a, p), p), la.identity(n))


@settings(max_examples=60, deadline=None)
@given(matrices(max_rows=5, max_cols=3))
def test_quotient_data_properties(pm):
    p, sub = pm
    n = sub.shape[0]
    proj, section = la.quotient_data(n, sub, p)
    q = proj.shape[0]
    assert q == n - la.rank(sub, p)
    assert np.array_equal(la.matmul(proj, section, p), la.identity(q))
    assert not np.any(la.matmul(proj, sub, p))


@settings(max_examples=40, deadline=None)
@given(matrices(max_rows=4, max_cols=4))
def test_left_inverse_of_independent_columns(pm):
    p, a = pm
    b = la.image_basis(a, p)
    if b.shape[1]:
        assert np.array_equal(la.matmul(la.left_inverse(b, p), b, p), la.identity(b.shape[1]))


def test_matmul_large_prime_matches_python_integers():
    p = 2**31 - 1
    rng = np.random.default_rng(1)
    a = rng.integers(p - 1000, p, size=(6, 40))
    b = rng.integers(p - 1000, p, size=(40, 5))
    exact = (a.astype(object) @ b.astype(object)) % p
    assert np.array_equal(la.matmul(a, b, p), exact.astype(np.int64))
    via = contract(p, "ij,jk->ik", a, b)
    assert np.array_equal(via, exact.astype(np.int64))


def test_shape_errors():
    with pytest.raises(ShapeError):
        la.solve(la.identity(2), np.array([1, 2, 3]), 5)
    with pytest.raises(ShapeError):
        la.inverse(la.zeros(2, 3), 5)
