"""Finite-dimensional modules, bimodules, homomorphisms and tensor products.

A left module is a stack of action matrices, one per algebra basis element,
acting on column vectors.  A right A-module is a left module over
``A.opposite`` whose matrices are the right actions ``y -> y * b``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from . import exactla as la
from .algebra import Algebra, contract
from .errors import AlgebraMismatch, AxiomViolation, ShapeError


def _check_action(alg: Algebra, acts: np.ndarray, what: str) -> None:
    p = alg.p
    n = acts.shape[1]
    if n == 0:
        return
    lhs = contract(p, "ixy,jyz->ijxz", acts, acts)
    rhs = contract(p, "ijl,lxz->ijxz", alg.struct, acts)
    if not np.array_equal(lhs, rhs):
        i, j = np.argwhere((lhs != rhs).any(axis=(2, 3)))[0]
        raise AxiomViolation(f"{what}: action of b{i}*b{j} is not the product of actions")
    unit = contract(p, "i,ixy->xy", alg.unit, acts)
    if not np.array_equal(unit, la.identity(n)):
        raise AxiomViolation(f"{what}: unit does not act as the identity")


class FdModule:
    """A finite-dimensional left module over ``algebra``."""

    def __init__(self, algebra: Algebra, actions, check: bool = True):
        self.algebra = algebra
        self.p = algebra.p
        acts = np.asarray(actions, dtype=np.int64)
        if acts.size == 0 and acts.ndim != 3:
            acts = np.zeros((algebra.dim, 0, 0), dtype=np.int64)
        if acts.ndim != 3 or acts.shape[0] != algebra.dim or acts.shape[1] != acts.shape[2]:
            raise ShapeError(f"expected actions of shape ({algebra.dim}, n, n), got {acts.shape}")
        self.actions = acts % self.p
        self.dim = acts.shape[1]
        if check:
            self.check()

    @classmethod
    def zero(cls, algebra: Algebra) -> "FdModule":
        return cls(algebra, np.zeros((algebra.dim, 0, 0), dtype=np.int64), check=False)

    def check(self) -> None:
        _check_action(self.algebra, self.actions, "module")

    def act(self, a) -> np.ndarray:
        """Matrix of the algebra element with coordinates ``a``."""
        return contract(self.p, "i,ixy->xy", np.asarray(a), self.actions)

    @cached_property
    def weight_data(self):
        """Basis adapted to the idempotents.

        Returns ``(basis, inverse, offsets)``: columns of ``basis`` list bases
        of ``e_0 X, e_1 X, ...`` in turn, ``offsets[s]:offsets[s+1]`` is the
        block of vertex ``s``.
        """
        p = self.p
        cols, offsets = [], [0]
        for e in self.algebra.idempotents:
            b = la.image_basis(self.act(e), p)
            cols.append(b)
            offsets.append(offsets[-1] + b.shape[1])
        basis = np.hstack(cols) if cols else la.zeros(self.dim, 0)
        if offsets[-1] != self.dim:
            raise AxiomViolation("idempotents do not decompose the module")
        inv = la.inverse(basis, p) if self.dim else la.zeros(0, 0)
        return basis, inv, offsets

    def vertex_dims(self) -> list[int]:
        off = self.weight_data[2]
        return [off[s + 1] - off[s] for s in range(len(off) - 1)]

    def restrict(self, basis: np.ndarray, check: bool = False) -> "FdModule":
        """Submodule spanned by the (independent, invariant) columns of ``basis``."""
        linv = la.left_inverse(basis, self.p)
        acts = contract(self.p, "ab,nbc,cd->nad", linv, self.actions, basis)
        sub = FdModule(self.algebra, acts, check=False)
        if check:
            moved = contract(self.p, "nab,bc->nac", self.actions, basis)
            back = contract(self.p, "ab,nbc->nac", basis, acts)
            if not np.array_equal(moved, back):
                raise AxiomViolation("subspace is not a submodule")
        return sub

    def __repr__(self):
        return f"FdModule(dim={self.dim}, over {self.algebra!r})"


class ModHom:
    """A module homomorphism given by its matrix."""

    def __init__(self, source: FdModule, target: FdModule, matrix, check: bool = True):
        if source.algebra is not target.algebra:
            raise AlgebraMismatch("source and target live over different algebras")
        self.source = source
        self.target = target
        self.p = source.p
        m = np.asarray(matrix, dtype=np.int64).reshape(target.dim, source.dim) % self.p
        self.matrix = m
        if check:
            self.check()

    def check(self) -> None:
        p = self.p
        if not (self.source.dim and self.target.dim):
            return
        lhs = contract(p, "ab,nbc->nac", self.matrix, self.source.actions)
        rhs = contract(p, "nab,bc->nac", self.target.actions, self.matrix)
        if not np.array_equal(lhs, rhs):
            i = int(np.argwhere((lhs != rhs).any(axis=(1, 2)))[0][0])
            raise AxiomViolation(f"map does not commute with the action of basis element {i}")

    def is_intertwiner(self) -> bool:
        try:
            self.check()
        except AxiomViolation:
            return False
        return True

    @property
    def rank(self) -> int:
        return la.rank(self.matrix, self.p)

    def is_mono(self) -> bool:
        return self.rank == self.source.dim

    def is_epi(self) -> bool:
        return self.rank == self.target.dim

    def compose(self, other: "ModHom") -> "ModHom":
        """``self o other``."""
        return ModHom(other.source, self.target, la.matmul(self.matrix, other.matrix, self.p), check=False)


class Bimodule:
    """An A-B bimodule: ``left[a]`` is m -> a*m, ``right[b]`` is m -> m*b."""

    def __init__(self, left_algebra: Algebra, right_algebra: Algebra, left, right, check: bool = True):
        if left_algebra.p != right_algebra.p:
            raise AlgebraMismatch("bimodule algebras must share a field")
        self.left_algebra = left_algebra
        self.right_algebra = right_algebra
        self.p = left_algebra.p
        self.left = np.asarray(left, dtype=np.int64) % self.p
        self.right = np.asarray(right, dtype=np.int64) % self.p
        n = self.left.shape[1] if self.left.ndim == 3 else 0
        if self.left.ndim != 3 or self.left.shape != (left_algebra.dim, n, n):
            if self.left.size == 0:
                self.left = np.zeros((left_algebra.dim, 0, 0), dtype=np.int64)
                n = 0
            else:
                raise ShapeError(f"left actions have shape {self.left.shape}")
        if self.right.size == 0:
            self.right = np.zeros((right_algebra.dim, n, n), dtype=np.int64)
        if self.right.shape != (right_algebra.dim, n, n):
            raise ShapeError(f"right actions have shape {self.right.shape}, expected {(right_algebra.dim, n, n)}")
        self.dim = n
        if check:
            self.check()

    @classmethod
    def zero(cls, a: Algebra, b: Algebra) -> "Bimodule":
        return cls(a, b, np.zeros((a.dim, 0, 0)), np.zeros((b.dim, 0, 0)), check=False)

    def check(self) -> None:
        _check_action(self.left_algebra, self.left, "left action")
        _check_action(self.right_algebra.opposite, self.right, "right action")
        if self.dim:
            lr = contract(self.p, "axy,byz->abxz", self.left, self.right)
            rl = contract(self.p, "byz,azw->abyw", self.right, self.left)
            if not np.array_equal(lr, rl):
                raise AxiomViolation("left and right actions do not commute")

    def as_left(self) -> FdModule:
        return FdModule(self.left_algebra, self.left, check=False)

    def as_right(self) -> FdModule:
        return FdModule(self.right_algebra.opposite, self.right, check=False)

    def swapped(self) -> "Bimodule":
        """The same space as a ``B^op``-``A^op`` bimodule."""
        return Bimodule(self.right_algebra.opposite, self.left_algebra.opposite, self.right, self.left, check=False)

    def __repr__(self):
        return f"Bimodule(dim={self.dim})"


# -- constructions ---------------------------------------------------------


def direct_sum(*mods: FdModule) -> FdModule:
    alg = mods[0].algebra
    if any(m.algebra is not alg for m in mods):
        raise AlgebraMismatch("summands over different algebras")
    n = sum(m.dim for m in mods)
    acts = np.zeros((alg.dim, n, n), dtype=np.int64)
    off = 0
    for m in mods:
        acts[:, off:off + m.dim, off:off + m.dim] = m.actions
        off += m.dim
    return FdModule(alg, acts, check=False)


def bimodule_direct_sum(*bims: Bimodule) -> Bimodule:
    a, b = bims[0].left_algebra, bims[0].right_algebra
    n = sum(m.dim for m in bims)
    left = np.zeros((a.dim, n, n), dtype=np.int64)
    right = np.zeros((b.dim, n, n), dtype=np.int64)
    off = 0
    for m in bims:
        if m.left_algebra is not a or m.right_algebra is not b:
            raise AlgebraMismatch("summands over different algebras")
        left[:, off:off + m.dim, off:off + m.dim] = m.left
        right[:, off:off + m.dim, off:off + m.dim] = m.right
        off += m.dim
    return Bimodule(a, b, left, right, check=False)


def outer_tensor(left_mod: FdModule, right_mod: FdModule) -> Bimodule:
    """``P (x)_k Q`` for a left A-module P and a right B-module Q."""
    a = left_mod.algebra
    b = right_mod.algebra.opposite
    ip, iq = la.identity(left_mod.dim), la.identity(right_mod.dim)
    n = left_mod.dim * right_mod.dim
    left = np.array([np.kron(m, iq) for m in left_mod.actions]).reshape(a.dim, n, n)
    right = np.array([np.kron(ip, m) for m in right_mod.actions]).reshape(b.dim, n, n)
    return Bimodule(a, b, left, right, check=False)


def k_dual(x: FdModule) -> FdModule:
    """Field dual ``Hom_k(X, k)`` as a module over the opposite algebra."""
    return FdModule(x.algebra.opposite, np.transpose(x.actions, (0, 2, 1)), check=False)


def hom_basis(x: FdModule, y: FdModule) -> list[ModHom]:
    """Basis of Hom_A(X, Y).

    Solves the intertwining equations for the algebra generators only, in
    bases adapted to the idempotents so that unknowns are block diagonal.
    """
    if x.algebra is not y.algebra:
        raise AlgebraMismatch("Hom between modules over different algebras")
    p = x.p
    if x.dim == 0 or y.dim == 0:
        return []
    bx, bx_inv, ox = x.weight_data
    by, by_inv, oy = y.weight_data
    nv = x.algebra.n_vertices
    xs = [ox[s + 1] - ox[s] for s in range(nv)]
    ys = [oy[s + 1] - oy[s] for s in range(nv)]
    uoff = [0]
    for s in range(nv):
        uoff.append(uoff[-1] + xs[s] * ys[s])
    nunk = uoff[-1]
    if nunk == 0:
        return []
    eqs = []
    for t, s, g in x.algebra.generators:
        if t == s and np.array_equal(g, x.algebra.idempotents[s]):
            continue
        if xs[s] == 0 or ys[t] == 0:
            continue
        gx = la.mm(p, bx_inv, x.act(g), bx)[ox[t]:ox[t + 1], ox[s]:ox[s + 1]]
        gy = la.mm(p, by_inv, y.act(g), by)[oy[t]:oy[t + 1], oy[s]:oy[s + 1]]
        block = la.zeros(ys[t] * xs[s], nunk)
        block[:, uoff[t]:uoff[t + 1]] += np.kron(la.identity(ys[t]), gx.T)
        block[:, uoff[s]:uoff[s + 1]] -= np.kron(gy, la.identity(xs[s]))
        eqs.append(block % p)
    system = np.vstack(eqs) if eqs else la.zeros(0, nunk)
    ker = la.kernel_basis(system, p)
    out = []
    for k in range(ker.shape[1]):
        f = la.zeros(y.dim, x.dim)
        for s in range(nv):
            blk = ker[uoff[s]:uoff[s + 1], k].reshape(ys[s], xs[s])
            f[oy[s]:oy[s + 1], ox[s]:ox[s + 1]] = blk
        out.append(ModHom(x, y, la.mm(p, by, f, bx_inv), check=False))
    return out


def hom_dim(x: FdModule, y: FdModule) -> int:
    return len(hom_basis(x, y))


def kernel_mod(f: ModHom) -> tuple[FdModule, ModHom]:
    basis = la.kernel_basis(f.matrix, f.p)
    k = f.source.restrict(basis) if basis.shape[1] else FdModule.zero(f.source.algebra)
    return k, ModHom(k, f.source, basis, check=False)


def image_mod(f: ModHom) -> tuple[FdModule, ModHom, ModHom]:
    """``(Im f, inclusion into target, corestriction from source)``."""
    basis = la.image_basis(f.matrix, f.p)
    im = f.target.restrict(basis) if basis.shape[1] else FdModule.zero(f.target.algebra)
    incl = ModHom(im, f.target, basis, check=False)
    cores = la.matmul(la.left_inverse(basis, f.p), f.matrix, f.p) if basis.shape[1] else la.zeros(0, f.source.dim)
    return im, incl, ModHom(f.source, im, cores, check=False)


def cokernel_mod(f: ModHom) -> tuple[FdModule, ModHom]:
    proj, section = la.quotient_data(f.target.dim, f.matrix, f.p)
    acts = contract(f.p, "ab,nbc,cd->nad", proj, f.target.actions, section)
    c = FdModule(f.target.algebra, acts, check=False)
    return c, ModHom(f.target, c, proj, check=False)


# -- tensor products -------------------------------------------------------


@dataclass
class Tensor:
    """``first (x)_B second`` as a quotient of the plain tensor space.

    Index ``a * dim_second + b`` of the plain space is the pure tensor of
    basis vectors ``a`` and ``b``.  ``module`` carries whatever outer
    actions survive (a left module, a right module, a bimodule or None).
    """

    dim_first: int
    dim_second: int
    proj: np.ndarray
    section: np.ndarray
    module: object
    p: int

    @property
    def dim(self) -> int:
        return self.proj.shape[0]

    def pure(self, a: int, b: int) -> int:
        return a * self.dim_second + b

    def descend(self, tilde: np.ndarray) -> np.ndarray:
        """Factor a linear map out of the plain space through the quotient."""
        p = self.p
        tilde = np.asarray(tilde, dtype=np.int64) % p
        lifted = la.mm(p, tilde, self.section, self.proj)
        if not np.array_equal(lifted, tilde):
            raise AxiomViolation("map does not vanish on the balancing relations")
        return la.matmul(tilde, self.section, p)


def _induced(p, proj, section, dim_first, dim_second, first_ops=None, second_ops=None):
    q = section.shape[1]
    s3 = section.reshape(dim_first, dim_second, q)
    if first_ops is not None:
        moved = contract(p, "nab,bxq->naxq", first_ops, s3)
    else:
        moved = contract(p, "nxy,ayq->naxq", second_ops, s3)
    moved = moved.reshape(moved.shape[0], dim_first * dim_second, q)
    return contract(p, "ab,nbq->naq", proj, moved)


def _tensor(p, middle: Algebra, first_right: np.ndarray, second_left: np.ndarray):
    m, x = first_right.shape[1], second_left.shape[1]
    amb = m * x
    if amb == 0:
        return la.zeros(0, amb), la.zeros(amb, 0)
    gens = middle.generator_matrix
    fr = contract(p, "gi,iab->gab", gens, first_right)
    sl = contract(p, "gi,iab->gab", gens, second_left)
    blocks = [(np.kron(fr[k], la.identity(x)) - np.kron(la.identity(m), sl[k])) % p for k in range(gens.shape[0])]
    rel = np.hstack(blocks)
    return la.quotient_data(amb, rel, p)


def tensor_over_algebra(first, second) -> Tensor:
    """``first (x)_B second``.

    ``first`` is a Bimodule (A-B) or a right B-module (FdModule over B^op);
    ``second`` is a left B-module or a Bimodule (B-C).  The result carries the
    left A-action and/or the right C-action that survive.
    """
    if isinstance(first, Bimodule):
        middle = first.right_algebra
        fr = first.right
    else:
        middle = first.algebra.opposite
        fr = first.actions
    if isinstance(second, Bimodule):
        if second.left_algebra is not middle:
            raise AlgebraMismatch("tensor factors do not share the middle algebra")
        sl = second.left
    else:
        if second.algebra is not middle:
            raise AlgebraMismatch("tensor factors do not share the middle algebra")
        sl = second.actions
    p = middle.p
    m, x = fr.shape[1], sl.shape[1]
    proj, section = _tensor(p, middle, fr, sl)
    q = proj.shape[0]
    left_acts = right_acts = None
    if isinstance(first, Bimodule):
        left_acts = _induced(p, proj, section, m, x, first_ops=first.left) if q else np.zeros((first.left_algebra.dim, 0, 0), dtype=np.int64)
    if isinstance(second, Bimodule):
        right_acts = _induced(p, proj, section, m, x, second_ops=second.right) if q else np.zeros((second.right_algebra.dim, 0, 0), dtype=np.int64)
    if left_acts is not None and right_acts is not None:
        module = Bimodule(first.left_algebra, second.right_algebra, left_acts, right_acts, check=False)
    elif left_acts is not None:
        module = FdModule(first.left_algebra, left_acts, check=False)
    elif right_acts is not None:
        module = FdModule(second.right_algebra.opposite, right_acts, check=False)
    else:
        module = None
    return Tensor(m, x, proj, section, module, p)


def tensor_map(t_src: Tensor, t_dst: Tensor, f: np.ndarray, g: np.ndarray) -> np.ndarray:
    """Matrix of ``f (x) g`` between two computed tensor products."""
    p = t_src.p
    if t_src.dim == 0 or t_dst.dim == 0:
        return la.zeros(t_dst.dim, t_src.dim)
    return la.mm(p, t_dst.proj, la.kron(f, g, p), t_src.section)


# -- Hom out of a bimodule ------------------------------------------------


@dataclass
class HomSpace:
    """``Hom_{B^op}(M, Y)`` for an A-B bimodule M and a right B-module Y.

    ``basis[k]`` is a ``dim Y x dim M`` matrix; ``module`` is the right
    A-module structure ``(f * a)(m) = f(a m)``.
    """

    basis: np.ndarray
    linv: np.ndarray
    module: FdModule
    p: int

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    def to_matrix(self, coords) -> np.ndarray:
        return contract(self.p, "k,kab->ab", np.asarray(coords), self.basis)

    def coords(self, f: np.ndarray) -> np.ndarray:
        if self.dim == 0:
            return np.zeros(0, dtype=np.int64)
        return la.matmul(self.linv, f.reshape(-1, 1) % self.p, self.p)[:, 0]


def hom_from_right(m: Bimodule, y: FdModule) -> HomSpace:
    if y.algebra is not m.right_algebra.opposite:
        raise AlgebraMismatch("Y must be a right module over the bimodule's right algebra")
    p = m.p
    outer = m.left_algebra.opposite
    homs = hom_basis(m.as_right(), y)
    if not homs:
        return HomSpace(np.zeros((0, y.dim, m.dim), dtype=np.int64), la.zeros(0, y.dim * m.dim),
                        FdModule.zero(outer), p)
    basis = np.array([h.matrix for h in homs])
    cols = basis.reshape(len(homs), -1).T
    linv = la.left_inverse(cols, p)
    moved = contract(p, "kym,amn->akyn", basis, m.left).reshape(m.left_algebra.dim, len(homs), -1)
    acts = contract(p, "ij,akj->aik", linv, moved)
    return HomSpace(basis, linv, FdModule(outer, acts, check=False), p)


def hom_map(src: HomSpace, dst: HomSpace, f: np.ndarray) -> np.ndarray:
    """Matrix of ``F -> f o F`` from ``src`` to ``dst``."""
    p = src.p
    out = la.zeros(dst.dim, src.dim)
    for k in range(src.dim):
        out[:, k] = dst.coords(la.matmul(f, src.basis[k], p))
    return out
