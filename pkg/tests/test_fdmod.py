import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tensorring import exactla as la
from tensorring.algebra import cyclic_nakayama
from tensorring.errors import AlgebraMismatch, AxiomViolation
from tensorring.fdmod import (FdModule, ModHom, cokernel_mod, direct_sum, hom_basis, hom_dim, hom_from_right,
                              image_mod, k_dual, kernel_mod, outer_tensor, tensor_over_algebra)
from tensorring.verhar import CampaignConfig, random_module

from conftest import F2, F3


def brute_hom_dim(x, y):
    """Solve f X_a = Y_a f over every basis element a (no generator shortcut)."""
    p = x.p
    if x.dim == 0 or y.dim == 0:
        return 0
    eqs = [(np.kron(ya, la.identity(x.dim)) - np.kron(la.identity(y.dim), xa.T)) % p
           for xa, ya in zip(x.actions, y.actions)]
    return la.kernel_basis(np.vstack(eqs), p).shape[1]


def rand_modules(alg, seed, count=2):
    cfg = CampaignConfig(seed=seed, max_generators=2, max_presentation_cols=3)
    rng = cfg.rng()
    return [random_module(alg, cfg, rng) for _ in range(count)]


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**6))
def test_hom_dim_matches_brute_force(seed):
    alg = cyclic_nakayama(F3, 3, 2)
    x, y = rand_modules(alg, seed)
    assert hom_dim(x, y) == brute_hom_dim(x, y)
    for h in hom_basis(x, y):
        assert h.is_intertwiner()


def test_hom_between_projectives_is_corner():
    alg = cyclic_nakayama(F2, 4, 3)
    for s in range(4):
        for t in range(4):
            ps = alg.indecomposable_projective(s)[0]
            pt = alg.indecomposable_projective(t)[0]
            # Hom(Ae_s, Ae_t) = e_s A e_t
            corner = la.rank(la.mm(2, alg.left_mult(alg.idempotents[s]), alg.right_mult(alg.idempotents[t])), 2)
            assert hom_dim(ps, pt) == corner


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10**6))
def test_tensor_with_projective_is_corner(seed):
    alg = cyclic_nakayama(F2, 3, 2)
    (y,) = rand_modules(alg.opposite, seed, 1)
    for s in range(3):
        t = tensor_over_algebra(y, alg.indecomposable_projective(s)[0])
        assert t.dim == la.rank(y.act(alg.idempotents[s]), 2)


def test_tensor_with_regular_bimodule_is_identity_size():
    alg = cyclic_nakayama(F3, 3, 3)
    (x,) = rand_modules(alg, 4, 1)
    t = tensor_over_algebra(alg.regular_bimodule(), x)
    assert t.dim == x.dim
    assert hom_dim(t.module, x) == hom_dim(x, x)


def test_descend_rejects_unbalanced_maps():
    alg = cyclic_nakayama(F2, 3, 2)
    x = alg.simple(0)
    t = tensor_over_algebra(alg.regular_bimodule(), x)
    good = np.zeros((1, alg.dim * x.dim), dtype=np.int64)
    good[0, t.pure(0, 0)] = 1  # e_1 (x) s -> s
    assert t.descend(good).shape == (1, t.dim)
    bad = np.zeros_like(good)
    bad[0, t.pure(3, 0)] = 1  # an arrow (x) s must vanish
    with pytest.raises(AxiomViolation):
        t.descend(bad)


def test_kernel_image_cokernel_dimensions():
    alg = cyclic_nakayama(F3, 3, 2)
    x, y = rand_modules(alg, 11)
    for h in hom_basis(x, y):
        k, ki = kernel_mod(h)
        im, incl, cores = image_mod(h)
        c, cp = cokernel_mod(h)
        assert k.dim + im.dim == x.dim
        assert im.dim + c.dim == y.dim
        assert not np.any(la.matmul(h.matrix, ki.matrix, 3))
        assert cp.is_intertwiner() and ki.is_intertwiner()
        c.check()
        k.check()


def test_k_dual_is_involutive_and_swaps_projective_injective():
    alg = cyclic_nakayama(F2, 3, 2)
    x = alg.simple(1)
    assert k_dual(k_dual(x)).algebra is alg
    assert np.array_equal(k_dual(k_dual(x)).actions, x.actions)


def test_outer_tensor_and_hom_from_right():
    alg = cyclic_nakayama(F2, 3, 2)
    m = outer_tensor(alg.indecomposable_projective(0)[0], alg.opposite.indecomposable_projective(2)[0])
    m.check()
    assert m.dim == 4
    (y,) = rand_modules(alg.opposite, 5, 1)
    hs = hom_from_right(m, y)
    assert hs.dim == brute_hom_dim(m.as_right(), y)
    hs.module.check()
    for k in range(hs.dim):
        assert np.array_equal(hs.coords(hs.basis[k]), la.identity(hs.dim)[k])


def test_module_axioms_enforced():
    alg = cyclic_nakayama(F2, 3, 2)
    acts = alg.simple(0).actions.copy()
    acts[3] = 1  # an arrow acting nontrivially on a simple
    with pytest.raises(AxiomViolation):
        FdModule(alg, acts)


def test_mismatched_algebras():
    a = cyclic_nakayama(F2, 3, 2)
    b = cyclic_nakayama(F2, 3, 2)
    with pytest.raises(AlgebraMismatch):
        hom_basis(a.simple(0), b.simple(0))
    with pytest.raises(AlgebraMismatch):
        ModHom(a.simple(0), b.simple(0), [[1]])


def test_direct_sum_dims():
    alg = cyclic_nakayama(F2, 3, 2)
    s = direct_sum(alg.simple(0), alg.simple(1), alg.indecomposable_projective(2)[0])
    s.check()
    # A e_3 has top at vertex 3 and socle at vertex 1 (arrow 3 -> 1)
    assert s.vertex_dims() == [1 + 1, 1, 1]
