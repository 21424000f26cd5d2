"""Named constructions: the cyclic Nakayama example, trivial extensions and Morita context rings."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from . import exactla as la
from .algebra import Algebra, Quiver, contract, build_path_algebra, cyclic_nakayama, direct_product_algebra
from .errors import (AlgebraMismatch, NonzeroContextProducts, NotNilpotentWithinCap, NotOneNilpotent,
                     PreconditionViolated)
from .exactla import FieldSpec
from .fdmod import (Bimodule, FdModule, ModHom, Tensor, bimodule_direct_sum, cokernel_mod, outer_tensor,
                    tensor_over_algebra)
from .homcalc import DEFAULT_MAX_LEN, IgCertificate, classify, ig_data
from .tring import PairModule, TensorPowers, tensor_powers
from .verdict import Verdict


def corner_dim(alg: Algebra, t: int, s: int) -> int:
    """dim e_t A e_s."""
    p = alg.p
    m = la.mm(p, alg.left_mult(alg.idempotents[t]), alg.right_mult(alg.idempotents[s]))
    return la.rank(m, p)


def example_qnak(field: FieldSpec, n: int, h: int, i: int, j: int,
                 order: str = "right-to-left") -> tuple[Algebra, Bimodule]:
    """``R = kQ/J^h`` on the cyclic quiver and ``M = R e_i (x)_k e_j R`` (vertices 1-based)."""
    if not 2 <= h <= n:
        raise PreconditionViolated(f"need 2 <= h <= n, got h={h}, n={n}")
    if not 1 <= i < j <= n:
        raise PreconditionViolated(f"need 1 <= i < j <= n, got i={i}, j={j}")
    if order == "right-to-left" and j - i < h:
        raise PreconditionViolated(f"j - i = {j - i} < h = {h}, so e_j R e_i is nonzero")
    r = cyclic_nakayama(field, n, h, order)
    d = corner_dim(r, j - 1, i - 1)
    if d:
        raise PreconditionViolated(f"e_{j} R e_{i} has dimension {d} under {order} composition")
    m = outer_tensor(r.indecomposable_projective(i - 1)[0], r.opposite.indecomposable_projective(j - 1)[0])
    if tensor_over_algebra(m, m).dim:
        raise PreconditionViolated("M (x)_R M is nonzero")
    return r, m


def hereditary_a3(field: FieldSpec) -> tuple[Algebra, Bimodule]:
    """Linear A3 path algebra with ``M = R e_3 (x)_k e_1 R``; a base of global dimension 1."""
    q = Quiver(3, (("a", 0, 1), ("b", 1, 2)), ("1", "2", "3"))
    r = build_path_algebra(field, q)
    r.meta["name"] = "A3"
    m = outer_tensor(r.indecomposable_projective(2)[0], r.opposite.indecomposable_projective(0)[0])
    return r, m


def semisimple_chain(field: FieldSpec) -> tuple[Algebra, Bimodule]:
    """``k^3`` with ``M = S_2 (x) S_1 (+) S_3 (x) S_2``; here N = 2 and T is the A3 path algebra."""
    r = build_path_algebra(field, Quiver(3, (), ("1", "2", "3")))
    r.meta["name"] = "k^3"
    rop = r.opposite
    m = bimodule_direct_sum(outer_tensor(r.simple(1), rop.simple(0)), outer_tensor(r.simple(2), rop.simple(1)))
    return r, m


def tor_failure_example(field: FieldSpec) -> tuple[Algebra, Bimodule]:
    """A 2-cycle with one zero relation and a simple-by-simple bimodule violating condition (T).

    The bimodule is the first ``S_s (x)_k S_t`` (s != t) found whose Tor_1
    against ``M (x) P`` is nonzero.
    """
    from .hypo import check_condition_t

    q = Quiver(2, (("a", 0, 1), ("b", 1, 0)), ("1", "2"))
    r = build_path_algebra(field, q, [["a", "b"]])
    r.meta["name"] = "2-cycle/(ab)"
    for s in range(2):
        for t in range(2):
            if s == t:
                continue
            m = outer_tensor(r.simple(s), r.opposite.simple(t))
            if check_condition_t(tensor_powers(r, m)).status == "fails":
                return r, m
    raise PreconditionViolated("no simple-by-simple bimodule violates condition (T)")


def trivial_extension(r: Algebra, m: Bimodule) -> Algebra:
    """``R |x M`` with ``(r1, m1)(r2, m2) = (r1 r2, r1 m2 + m1 r2)``, built as a tensor ring."""
    try:
        tp = tensor_powers(r, m, cap=1)
    except NotNilpotentWithinCap as exc:
        raise NotOneNilpotent(str(exc)) from exc
    t = tp.ring
    d, dm = r.dim, m.dim
    expected = np.zeros_like(t.struct)
    expected[:d, :d, :d] = r.struct
    expected[:d, d:, d:] = np.transpose(m.left, (0, 2, 1))
    expected[d:, :d, d:] = np.transpose(m.right, (2, 0, 1))
    if not np.array_equal(expected, t.struct):
        raise AssertionError("tensor ring disagrees with the trivial extension product")
    t.meta["tensor_powers"] = tp
    return t


# -- Morita context rings ------------------------------------------------


@dataclass
class MoritaRing:
    """``Lambda = [[A, V], [U, B]]`` with zero context maps, built as ``(A x B) |x (U (+) V)``.

    ``U`` is a B-A bimodule and ``V`` an A-B bimodule.  ``table[k]`` names
    basis vector k of Lambda as ``(block, index)`` with block in A, B, U, V.
    """

    a: Algebra
    b: Algebra
    u: Bimodule
    v: Bimodule
    product: Algebra
    bimodule: Bimodule
    tp: TensorPowers
    table: list[tuple[str, int]]

    @property
    def algebra(self) -> Algebra:
        return self.tp.ring

    POSITIONS = {"A": (0, 0), "V": (0, 1), "U": (1, 0), "B": (1, 1)}


def context_bimodule(a: Algebra, b: Algebra, u: Bimodule, v: Bimodule, product: Algebra) -> Bimodule:
    """``U (+) V`` over ``A x B``: ``(a, b)(u, v) = (b u, a v)`` and ``(u, v)(a, b) = (u a, v b)``."""
    da, db = a.dim, b.dim
    nu, nv = u.dim, v.dim
    n = nu + nv
    left = np.zeros((da + db, n, n), dtype=np.int64)
    right = np.zeros((da + db, n, n), dtype=np.int64)
    left[:da, nu:, nu:] = v.left
    left[da:, :nu, :nu] = u.left
    right[:da, :nu, :nu] = u.right
    right[da:, nu:, nu:] = v.right
    return Bimodule(product, product, left, right, check=True)


def morita_context_ring(a: Algebra, b: Algebra, u: Bimodule, v: Bimodule) -> MoritaRing:
    if u.left_algebra is not b or u.right_algebra is not a:
        raise AlgebraMismatch("U must be a B-A bimodule")
    if v.left_algebra is not a or v.right_algebra is not b:
        raise AlgebraMismatch("V must be an A-B bimodule")
    uv = tensor_over_algebra(u, v).dim
    vu = tensor_over_algebra(v, u).dim
    if uv or vu:
        raise NonzeroContextProducts(f"context products are nonzero: dim U(x)V = {uv}, dim V(x)U = {vu}", (uv, vu))
    product = direct_product_algebra(a, b)
    bim = context_bimodule(a, b, u, v, product)
    tp = tensor_powers(product, bim, cap=1)
    table = ([("A", k) for k in range(a.dim)] + [("B", k) for k in range(b.dim)]
             + [("U", k) for k in range(u.dim)] + [("V", k) for k in range(v.dim)])
    return MoritaRing(a, b, u, v, product, bim, tp, table)


@dataclass
class MoritaQuadruple:
    """``(X, Y, f, g)`` with ``f: U (x)_A X -> Y`` over B and ``g: V (x)_B Y -> X`` over A."""

    ring: MoritaRing
    x: FdModule
    y: FdModule
    f: np.ndarray
    g: np.ndarray

    def __post_init__(self):
        p = self.ring.a.p
        self.f = np.asarray(self.f, dtype=np.int64).reshape(self.y.dim, self.tensor_f.dim) % p
        self.g = np.asarray(self.g, dtype=np.int64).reshape(self.x.dim, self.tensor_g.dim) % p

    @cached_property
    def tensor_f(self) -> Tensor:
        return tensor_over_algebra(self.ring.u, self.x)

    @cached_property
    def tensor_g(self) -> Tensor:
        return tensor_over_algebra(self.ring.v, self.y)

    @property
    def f_hom(self) -> ModHom:
        return ModHom(self.tensor_f.module, self.y, self.f, check=False)

    @property
    def g_hom(self) -> ModHom:
        return ModHom(self.tensor_g.module, self.x, self.g, check=False)

    def check(self) -> None:
        self.f_hom.check()
        self.g_hom.check()


def _product_module(ring: MoritaRing, x: FdModule, y: FdModule) -> FdModule:
    da, db = ring.a.dim, ring.b.dim
    n = x.dim + y.dim
    acts = np.zeros((da + db, n, n), dtype=np.int64)
    acts[:da, :x.dim, :x.dim] = x.actions
    acts[da:, x.dim:, x.dim:] = y.actions
    return FdModule(ring.product, acts, check=False)


def morita_translate(q: MoritaQuadruple) -> PairModule:
    """``(X, Y, f, g) -> ((X, Y), (g, f))`` over ``(A x B) |x (U (+) V)``."""
    ring = q.ring
    z = _product_module(ring, q.x, q.y)
    pair = PairModule(ring.tp, z, None, check=False)
    nu, nv = ring.u.dim, ring.v.dim
    dx, dy = q.x.dim, q.y.dim
    n = dx + dy
    tilde = np.zeros((n, nu + nv, n), dtype=np.int64)
    if q.tensor_f.dim:
        pf = q.tensor_f.proj.reshape(-1, nu, dx)
        tilde[dx:, :nu, :dx] = contract(ring.a.p, "ab,bmx->amx", q.f, pf)
    if q.tensor_g.dim:
        pg = q.tensor_g.proj.reshape(-1, nv, dy)
        tilde[:dx, nu:, dx:] = contract(ring.a.p, "ab,bmx->amx", q.g, pg)
    u = pair.tensor.descend(tilde.reshape(n, (nu + nv) * n)) if pair.tensor.dim else la.zeros(n, 0)
    return PairModule(ring.tp, z, u, check=True, tensor=pair.tensor)


def morita_untranslate(ring: MoritaRing, pair: PairModule) -> MoritaQuadruple:
    """Inverse of :func:`morita_translate`, splitting the pair along ``1_A`` and ``1_B``."""
    p = ring.a.p
    da, db = ring.a.dim, ring.b.dim
    nu = ring.u.dim
    z = pair.x
    one_a = np.concatenate([ring.a.unit, np.zeros(db, dtype=np.int64)])
    one_b = np.concatenate([np.zeros(da, dtype=np.int64), ring.b.unit])
    bx = la.image_basis(z.act(one_a), p)
    by = la.image_basis(z.act(one_b), p)
    lx, ly = la.left_inverse(bx, p), la.left_inverse(by, p)
    x = FdModule(ring.a, contract(p, "ab,nbc,cd->nad", lx, z.actions[:da], bx), check=False)
    y = FdModule(ring.b, contract(p, "ab,nbc,cd->nad", ly, z.actions[da:], by), check=False)
    acts1 = pair.flat.actions[ring.tp.degree_slice(1)]
    fu = contract(p, "ab,mbc,cd->mad", ly, acts1[:nu], bx)
    gv = contract(p, "ab,mbc,cd->mad", lx, acts1[nu:], by)
    tf = tensor_over_algebra(ring.u, x)
    tg = tensor_over_algebra(ring.v, y)
    f = tf.descend(np.transpose(fu, (1, 0, 2)).reshape(y.dim, ring.u.dim * x.dim)) if tf.dim else la.zeros(y.dim, 0)
    g = tg.descend(np.transpose(gv, (1, 0, 2)).reshape(x.dim, ring.v.dim * y.dim)) if tg.dim else la.zeros(x.dim, 0)
    return MoritaQuadruple(ring, x, y, f, g)


def corollary_verdict(q: MoritaQuadruple, cert_a: IgCertificate | None = None, cert_b: IgCertificate | None = None,
                      max_len: int = DEFAULT_MAX_LEN) -> Verdict:
    """f and g injective with coker f in GP(B) and coker g in GP(A)."""
    cert_a = cert_a or ig_data(q.ring.a, max_len)
    cert_b = cert_b or ig_data(q.ring.b, max_len)
    mono = Verdict.of(q.f_hom.is_mono() and q.g_hom.is_mono())
    cf, _ = cokernel_mod(q.f_hom)
    cg, _ = cokernel_mod(q.g_hom)
    return mono & classify(cf, "gp", cert_b, max_len) & classify(cg, "gp", cert_a, max_len)

