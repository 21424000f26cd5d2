"""Tensor rings of nilpotent bimodules and their module categories.

``T = R (+) M (+) M(x)M (+) ...`` is stored degree by degree.  Degree ``i``
is realised as ``M (x)_R M^{(x)(i-1)}`` through a retained quotient of the
plain tensor space, so every product is computed from the bimodule data
alone.  Left T-modules are pairs ``(X, u: M (x) X -> X)`` and right
T-modules are copairs ``(Y, vbar: Y (x) M -> Y)``; the summands of Ind and
Coind are listed in ascending tensor degree.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from . import exactla as la
from .algebra import Algebra, contract
from .errors import AlgebraMismatch, AxiomViolation, NotNilpotentWithinCap
from .fdmod import (Bimodule, FdModule, HomSpace, ModHom, Tensor, cokernel_mod, direct_sum,
                    hom_from_right, hom_map, kernel_mod, tensor_map, tensor_over_algebra)
from .homcalc import DEFAULT_MAX_LEN, IgCertificate, classify, ig_data
from .verdict import Verdict


class TensorPowers:
    """``R = M^0, M, M(x)M, ...`` up to the last nonzero power ``M^N``."""

    def __init__(self, base: Algebra, bimodule: Bimodule, powers: list[Bimodule],
                 tensors: list[Tensor | None], cap: int):
        self.base = base
        self.bimodule = bimodule
        self.powers = powers
        self.tensors = tensors
        self.cap = cap
        self.p = base.p

    @property
    def nil_index(self) -> int:
        return len(self.powers) - 1

    @property
    def dims(self) -> list[int]:
        return [b.dim for b in self.powers]

    @cached_property
    def offsets(self) -> list[int]:
        off = [0]
        for d in self.dims:
            off.append(off[-1] + d)
        return off

    def degree_slice(self, i: int) -> slice:
        return slice(self.offsets[i], self.offsets[i + 1])

    def section(self, i: int) -> np.ndarray:
        """Lift of degree ``i >= 2`` into ``M (x)_k M^{i-1}``, shaped (dim M, dim M^{i-1}, dim M^i)."""
        t = self.tensors[i]
        return t.section.reshape(self.dims[1], self.dims[i - 1], self.dims[i])

    @cached_property
    def products(self) -> dict[tuple[int, int], np.ndarray]:
        """``mu[(i, j)][x, y, :]``: coordinates of x*y in degree i+j, for i + j <= N."""
        p = self.p
        n = self.nil_index
        mu = {}
        for j in range(n + 1):
            mu[(0, j)] = np.transpose(self.powers[j].left, (0, 2, 1)).copy()
        for i in range(1, n + 1):
            mu[(i, 0)] = np.transpose(self.powers[i].right, (2, 0, 1)).copy()
        for j in range(1, n):
            proj = self.tensors[1 + j].proj
            mu[(1, j)] = proj.reshape(self.dims[1 + j], self.dims[1], self.dims[j]).transpose(1, 2, 0).copy()
        for i in range(2, n + 1):
            s = self.section(i)
            for j in range(1, n - i + 1):
                mu[(i, j)] = contract(p, "mzx,zyw,mwk->xyk", s, mu[(i - 1, j)], mu[(1, i - 1 + j)])
        return mu

    @cached_property
    def ring(self) -> Algebra:
        return build_tensor_ring(self)

    def __repr__(self):
        return f"TensorPowers(N={self.nil_index}, dims={self.dims})"


def tensor_powers(base: Algebra, m: Bimodule, cap: int = 16) -> TensorPowers:
    """Iterate ``M (x)_R -`` until a power vanishes; raise past ``cap``."""
    if m.left_algebra is not base or m.right_algebra is not base:
        raise AlgebraMismatch("M must be a bimodule over the base algebra on both sides")
    powers = [base.regular_bimodule()]
    tensors: list[Tensor | None] = [None]
    if m.dim == 0:
        return TensorPowers(base, m, powers, tensors, cap)
    powers.append(m)
    tensors.append(None)
    while True:
        t = tensor_over_algebra(m, powers[-1])
        if t.dim == 0:
            break
        if len(powers) > cap:
            raise NotNilpotentWithinCap(f"M^(x){len(powers)} is still nonzero (dim {t.dim}) past cap {cap}")
        powers.append(t.module)
        tensors.append(t)
    return TensorPowers(base, m, powers, tensors, cap)


def build_tensor_ring(tp: TensorPowers) -> Algebra:
    r = tp.base
    n = tp.nil_index
    dim = tp.offsets[-1]
    struct = np.zeros((dim, dim, dim), dtype=np.int64)
    struct[:r.dim, :r.dim, :r.dim] = r.struct
    for (i, j), mu in tp.products.items():
        if i == 0 and j == 0:
            continue
        struct[tp.degree_slice(i), tp.degree_slice(j), tp.degree_slice(i + j)] = mu
    pad = lambda v: np.concatenate([v, np.zeros(dim - r.dim, dtype=np.int64)])
    unit = pad(r.unit)
    idem = np.array([pad(e) for e in r.idempotents])
    higher = np.eye(dim, dtype=np.int64)[r.dim:]
    radical = np.vstack([np.array([pad(v) for v in r.radical]).reshape(-1, dim), higher])
    labels = list(r.labels) + [f"m{i}_{k}" for i in range(1, n + 1) for k in range(tp.dims[i])]
    return Algebra(r.field, struct, unit, idem, radical, labels=labels,
                   meta={"name": "tensor ring", "nil_index": n, "degrees": tp.dims})


# -- pairs and copairs -----------------------------------------------------


class PairModule:
    """An R-module X with an R-linear ``u: M (x)_R X -> X``."""

    def __init__(self, tp: TensorPowers, x: FdModule, u, check: bool = True, tensor: Tensor | None = None):
        if x.algebra is not tp.base:
            raise AlgebraMismatch("pair module must live over the base algebra")
        self.tp = tp
        self.x = x
        if tensor is not None:
            self.__dict__["tensor"] = tensor
        shape = (x.dim, self.tensor.dim)
        self.u = la.zeros(*shape) if u is None else np.asarray(u, dtype=np.int64).reshape(shape) % tp.p
        if check:
            self.u_hom.check()

    @cached_property
    def tensor(self) -> Tensor:
        return tensor_over_algebra(self.tp.bimodule, self.x)

    @property
    def u_hom(self) -> ModHom:
        return ModHom(self.tensor.module, self.x, self.u, check=False)

    @property
    def dim(self) -> int:
        return self.x.dim

    @cached_property
    def flat(self) -> FdModule:
        return pair_to_flat(self.tp, self)

    def __repr__(self):
        return f"PairModule(dim={self.dim}, rank u={la.rank(self.u, self.tp.p)})"


class CopairModule:
    """A right R-module Y (over R^op) with a right-linear ``vbar: Y (x)_R M -> Y``."""

    def __init__(self, tp: TensorPowers, y: FdModule, vbar, check: bool = True, tensor: Tensor | None = None):
        if y.algebra is not tp.base.opposite:
            raise AlgebraMismatch("copair module must be a right module over the base algebra")
        self.tp = tp
        self.y = y
        if tensor is not None:
            self.__dict__["tensor"] = tensor
        shape = (y.dim, self.tensor.dim)
        self.vbar = la.zeros(*shape) if vbar is None else np.asarray(vbar, dtype=np.int64).reshape(shape) % tp.p
        if check:
            ModHom(self.tensor.module, y, self.vbar, check=True)
            self.check_adjoint()

    @cached_property
    def tensor(self) -> Tensor:
        return tensor_over_algebra(self.y, self.tp.bimodule)

    @cached_property
    def homspace(self) -> HomSpace:
        return hom_from_right(self.tp.bimodule, self.y)

    def _adjoint_images(self) -> np.ndarray:
        """``F[y]`` is the matrix of ``m -> vbar(y (x) m)``."""
        n, dm = self.y.dim, self.tp.bimodule.dim
        proj3 = self.tensor.proj.reshape(self.tensor.dim, n, dm)
        return contract(self.tp.p, "ab,bym->yam", self.vbar, proj3)

    @cached_property
    def v(self) -> np.ndarray:
        """Matrix of ``v: Y -> Hom_{R^op}(M, Y)`` in the basis of ``homspace``."""
        hs = self.homspace
        out = la.zeros(hs.dim, self.y.dim)
        for k, f in enumerate(self._adjoint_images()):
            out[:, k] = hs.coords(f)
        return out

    def check_adjoint(self) -> None:
        hs = self.homspace
        for k, f in enumerate(self._adjoint_images()):
            if not np.array_equal(hs.to_matrix(self.v[:, k]), f):
                raise AxiomViolation("v is not the adjoint of vbar")

    @property
    def v_hom(self) -> ModHom:
        return ModHom(self.y, self.homspace.module, self.v, check=False)

    @property
    def dim(self) -> int:
        return self.y.dim

    @cached_property
    def flat(self) -> FdModule:
        return copair_to_flat(self.tp, self)

    def __repr__(self):
        return f"CopairModule(dim={self.dim})"


def pair_to_flat(tp: TensorPowers, pair: PairModule, check: bool = True) -> FdModule:
    """The T-module of a pair: degree-1 elements act by ``x -> u(m (x) x)``."""
    t_alg = tp.ring
    p = tp.p
    n = pair.dim
    acts = np.zeros((t_alg.dim, n, n), dtype=np.int64)
    acts[tp.degree_slice(0)] = pair.x.actions
    if n and tp.nil_index >= 1:
        proj3 = pair.tensor.proj.reshape(-1, tp.dims[1], n)
        a1 = contract(p, "ab,bmx->max", pair.u, proj3)
        acts[tp.degree_slice(1)] = a1
        prev = a1
        for i in range(2, tp.nil_index + 1):
            prev = contract(p, "mzw,mab,zbc->wac", tp.section(i), a1, prev)
            acts[tp.degree_slice(i)] = prev
    return FdModule(t_alg, acts, check=check)


def flat_to_pair(tp: TensorPowers, z: FdModule) -> PairModule:
    if z.algebra is not tp.ring:
        raise AlgebraMismatch("module is not over the tensor ring")
    n = z.dim
    x = FdModule(tp.base, z.actions[tp.degree_slice(0)], check=False)
    t = tensor_over_algebra(tp.bimodule, x)
    if tp.nil_index == 0:
        return PairModule(tp, x, la.zeros(n, t.dim), tensor=t)
    a1 = z.actions[tp.degree_slice(1)]
    tilde = np.transpose(a1, (1, 0, 2)).reshape(n, tp.dims[1] * n)
    return PairModule(tp, x, t.descend(tilde), tensor=t)


def copair_to_flat(tp: TensorPowers, cp: CopairModule, check: bool = True) -> FdModule:
    """The right T-module (left T^op-module) of a copair: ``y * m = vbar(y (x) m)``."""
    t_alg = tp.ring
    p = tp.p
    n = cp.dim
    acts = np.zeros((t_alg.dim, n, n), dtype=np.int64)
    acts[tp.degree_slice(0)] = cp.y.actions
    if n and tp.nil_index >= 1:
        proj3 = cp.tensor.proj.reshape(-1, n, tp.dims[1])
        b1 = contract(p, "ab,bym->may", cp.vbar, proj3)
        acts[tp.degree_slice(1)] = b1
        prev = b1
        for i in range(2, tp.nil_index + 1):
            # y * (m z) = (y * m) * z
            prev = contract(p, "mzw,zab,mbc->wac", tp.section(i), prev, b1)
            acts[tp.degree_slice(i)] = prev
    return FdModule(t_alg.opposite, acts, check=check)


def flat_to_copair(tp: TensorPowers, z: FdModule) -> CopairModule:
    if z.algebra is not tp.ring.opposite:
        raise AlgebraMismatch("module is not a right module over the tensor ring")
    n = z.dim
    y = FdModule(tp.base.opposite, z.actions[tp.degree_slice(0)], check=False)
    t = tensor_over_algebra(y, tp.bimodule)
    if tp.nil_index == 0:
        return CopairModule(tp, y, la.zeros(n, t.dim), tensor=t)
    b1 = z.actions[tp.degree_slice(1)]
    tilde = np.transpose(b1, (1, 2, 0)).reshape(n, n * tp.dims[1])
    return CopairModule(tp, y, t.descend(tilde), tensor=t)


# -- functors --------------------------------------------------------------


@dataclass
class Induced:
    """``Ind(X)`` with summands ``W_i = M (x) W_{i-1}``, ``W_0 = X``."""

    pair: PairModule
    components: list[FdModule]
    tensors: list[Tensor | None]

    @cached_property
    def offsets(self) -> list[int]:
        off = [0]
        for c in self.components:
            off.append(off[-1] + c.dim)
        return off

    def block(self, i: int) -> slice:
        return slice(self.offsets[i], self.offsets[i + 1])

    @property
    def inclusion(self) -> np.ndarray:
        """``X -> U Ind(X)``, the inclusion of the degree-0 summand."""
        out = la.zeros(self.pair.dim, self.components[0].dim)
        out[self.block(0)] = la.identity(self.components[0].dim)
        return out


def ind(tp: TensorPowers, x: FdModule) -> Induced:
    m = tp.bimodule
    p = tp.p
    comps, tens = [x], [None]
    for i in range(tp.nil_index + 1):
        t = tensor_over_algebra(m, comps[-1])
        if i == tp.nil_index:
            if t.dim:
                raise AxiomViolation("M^(N+1) (x) X is nonzero")
            break
        comps.append(t.module)
        tens.append(t)
    total = direct_sum(*comps)
    res = Induced(None, comps, tens)
    t = tensor_over_algebra(m, total)
    dim, dm = total.dim, m.dim
    tilde = np.zeros((dim, dm, dim), dtype=np.int64)
    for i in range(len(comps) - 1):
        tilde[res.block(i + 1), :, res.block(i)] = tens[i + 1].proj.reshape(comps[i + 1].dim, dm, comps[i].dim)
    u = t.descend(tilde.reshape(dim, dm * dim)) if t.dim else la.zeros(dim, 0)
    res.pair = PairModule(tp, total, u, check=False, tensor=t)
    return res


def ind_map(src: Induced, dst: Induced, g: np.ndarray) -> np.ndarray:
    """``Ind(g) = (+)_i M^i (x) g`` between two induced modules."""
    p = src.pair.tp.p
    dm = src.pair.tp.bimodule.dim
    out = la.zeros(dst.pair.dim, src.pair.dim)
    comp = np.asarray(g, dtype=np.int64) % p
    for i in range(len(src.components)):
        if i:
            comp = tensor_map(src.tensors[i], dst.tensors[i], la.identity(dm), comp)
        out[dst.block(i), src.block(i)] = comp
    return out


@dataclass
class Coinduced:
    """``Coind(Y)`` with summands ``H_{i+1} = Hom_{R^op}(M, H_i)``, ``H_0 = Y``."""

    copair: CopairModule
    components: list[FdModule]
    spaces: list[HomSpace]

    @cached_property
    def offsets(self) -> list[int]:
        off = [0]
        for c in self.components:
            off.append(off[-1] + c.dim)
        return off

    def block(self, i: int) -> slice:
        return slice(self.offsets[i], self.offsets[i + 1])

    @property
    def projection(self) -> np.ndarray:
        """``U Coind(Y) -> Y``, the projection onto the degree-0 summand."""
        out = la.zeros(self.components[0].dim, self.copair.dim)
        out[:, self.block(0)] = la.identity(self.components[0].dim)
        return out


def coind(tp: TensorPowers, y: FdModule) -> Coinduced:
    m = tp.bimodule
    comps, spaces = [y], []
    for i in range(tp.nil_index + 1):
        hs = hom_from_right(m, comps[-1])
        spaces.append(hs)
        if i == tp.nil_index:
            if hs.dim:
                raise AxiomViolation("Hom(M^(N+1), Y) is nonzero")
            break
        comps.append(hs.module)
    total = direct_sum(*comps)
    res = Coinduced(None, comps, spaces)
    t = tensor_over_algebra(total, m)
    dim, dm = total.dim, m.dim
    tilde = np.zeros((dim, dim, dm), dtype=np.int64)
    for i in range(len(comps) - 1):
        # f in H_{i+1} sends f (x) m to f(m) in H_i
        tilde[res.block(i), res.block(i + 1), :] = np.transpose(spaces[i].basis, (1, 0, 2))
    vbar = t.descend(tilde.reshape(dim, dim * dm)) if t.dim else la.zeros(dim, 0)
    res.copair = CopairModule(tp, total, vbar, check=False, tensor=t)
    return res


def stalk(tp: TensorPowers, x: FdModule) -> PairModule:
    """``S(X) = (X, 0)``."""
    return PairModule(tp, x, None, check=False)


def costalk(tp: TensorPowers, y: FdModule) -> CopairModule:
    return CopairModule(tp, y, None, check=False)


def u_functor(tp: TensorPowers, pair: PairModule) -> FdModule:
    return pair.x


def cok_functor(tp: TensorPowers, pair: PairModule) -> tuple[FdModule, ModHom]:
    """``C(X, u) = coker u`` with its projection from X."""
    return cokernel_mod(pair.u_hom)


def k_functor(tp: TensorPowers, cp: CopairModule) -> tuple[FdModule, ModHom]:
    """``K[Y, v] = ker v`` with its inclusion into Y."""
    return kernel_mod(cp.v_hom)


# -- canonical sequences ---------------------------------------------------


def _assert_short_exact(first: np.ndarray, second: np.ndarray, mid: int, p: int, what: str) -> None:
    if not la.is_zero(la.matmul(second, first, p), p):
        raise AxiomViolation(f"{what}: composite is nonzero")
    r1, r2 = la.rank(first, p), la.rank(second, p)
    if r1 != first.shape[1]:
        raise AxiomViolation(f"{what}: first map is not injective")
    if r2 != second.shape[0]:
        raise AxiomViolation(f"{what}: second map is not surjective")
    if r1 + r2 != mid:
        raise AxiomViolation(f"{what}: not exact in the middle")


@dataclass
class Presentation:
    """``0 -> Ind(M (x) X) --phi--> Ind(X) --eps--> (X, u) -> 0``."""

    source: Induced
    middle: Induced
    target: PairModule
    phi: ModHom
    eps: ModHom


def counit(tp: TensorPowers, pair: PairModule, induced: Induced | None = None) -> tuple[Induced, np.ndarray]:
    """``eps: Ind(X) -> (X, u)`` with components ``(1, u, u(M (x) u), ...)``."""
    p = tp.p
    dm = tp.bimodule.dim
    ix = induced or ind(tp, pair.x)
    out = la.zeros(pair.dim, ix.pair.dim)
    comp = la.identity(pair.dim)
    for i in range(len(ix.components)):
        if i:
            comp = la.matmul(pair.u, tensor_map(ix.tensors[i], pair.tensor, la.identity(dm), comp), p)
        out[:, ix.block(i)] = comp
    return ix, out


def canonical_presentation(tp: TensorPowers, pair: PairModule, check: bool = True) -> Presentation:
    p = tp.p
    dm = tp.bimodule.dim
    ix, eps = counit(tp, pair)
    iy = ind(tp, pair.tensor.module)
    phi = la.zeros(ix.pair.dim, iy.pair.dim)
    g = pair.u
    iso = tensor_map(pair.tensor, ix.tensors[1], la.identity(dm), la.identity(pair.dim)) if len(ix.components) > 1 else None
    for i in range(len(iy.components)):
        if i:
            g = tensor_map(iy.tensors[i], ix.tensors[i], la.identity(dm), g)
            if i + 1 < len(ix.components):
                iso = tensor_map(iy.tensors[i], ix.tensors[i + 1], la.identity(dm), iso)
        phi[ix.block(i), iy.block(i)] = (-g) % p
        if i + 1 < len(ix.components):
            phi[ix.block(i + 1), iy.block(i)] = iso
    phi_hom = ModHom(iy.pair.flat, ix.pair.flat, phi, check=check)
    eps_hom = ModHom(ix.pair.flat, pair.flat, eps, check=check)
    if check:
        _assert_short_exact(phi, eps, ix.pair.dim, p, "canonical presentation")
    return Presentation(iy, ix, pair, phi_hom, eps_hom)


@dataclass
class Copresentation:
    """``0 -> [Y, v] --eta--> Coind(Y) --psi--> Coind(Hom(M, Y)) -> 0``."""

    source: CopairModule
    middle: Coinduced
    target: Coinduced
    eta: ModHom
    psi: ModHom


def unit_map(tp: TensorPowers, cp: CopairModule, coinduced: Coinduced | None = None) -> tuple[Coinduced, np.ndarray]:
    """``eta: [Y, v] -> Coind(Y)`` with components ``(1, v, Hom(M, v) v, ...)``."""
    p = tp.p
    cy = coinduced or coind(tp, cp.y)
    out = la.zeros(cy.copair.dim, cp.dim)
    comp = la.identity(cp.dim)
    for i in range(len(cy.components)):
        if i:
            comp = la.matmul(hom_map(cp.homspace, cy.spaces[i - 1], comp), cp.v, p)
        out[cy.block(i), :] = comp
    return cy, out


def canonical_copresentation(tp: TensorPowers, cp: CopairModule, check: bool = True) -> Copresentation:
    p = tp.p
    cy, eta = unit_map(tp, cp)
    ch = coind(tp, cp.homspace.module)
    psi = la.zeros(ch.copair.dim, cy.copair.dim)
    k = cp.v
    iso = hom_map(cy.spaces[0], cp.homspace, la.identity(cp.dim)) if len(cy.components) > 1 else None
    for i in range(len(ch.components)):
        if i:
            k = hom_map(cy.spaces[i - 1], ch.spaces[i - 1], k)
            if i + 1 < len(cy.components):
                iso = hom_map(cy.spaces[i], ch.spaces[i - 1], iso)
        psi[ch.block(i), cy.block(i)] = (-k) % p
        if i + 1 < len(cy.components):
            psi[ch.block(i), cy.block(i + 1)] = iso
    eta_hom = ModHom(cp.flat, cy.copair.flat, eta, check=check)
    psi_hom = ModHom(cy.copair.flat, ch.copair.flat, psi, check=check)
    if check:
        _assert_short_exact(eta, psi, cy.copair.dim, p, "canonical copresentation")
    return Copresentation(cp, cy, ch, eta_hom, psi_hom)


# -- membership in Phi / Psi -----------------------------------------------


@dataclass(frozen=True)
class PhiCertificate:
    u_mono: bool
    cok_verdict: Verdict
    verdict: Verdict

    def to_json(self) -> dict:
        return {"uMono": self.u_mono, "cokVerdict": self.cok_verdict.value, "verdict": self.verdict.value}


@dataclass(frozen=True)
class PsiCertificate:
    v_epi: bool
    ker_verdict: Verdict
    verdict: Verdict

    def to_json(self) -> dict:
        return {"vEpi": self.v_epi, "kerVerdict": self.ker_verdict.value, "verdict": self.verdict.value}


PAIR_TAGS = ("proj", "inj", "flat", "gp", "gf")
COPAIR_TAGS = ("inj", "gi")


def phi_membership(tp: TensorPowers, pair: PairModule, tag: str, cert: IgCertificate | None = None,
                   max_len: int = DEFAULT_MAX_LEN) -> PhiCertificate:
    """Is u injective with cokernel in the class ``tag`` over R?"""
    if tag not in PAIR_TAGS:
        raise ValueError(f"class {tag!r} is not available for pairs")
    if cert is None and tag in ("gp", "gf"):
        cert = ig_data(tp.base, max_len)
    mono = pair.u_hom.is_mono()
    cok, _ = cok_functor(tp, pair)
    sub = classify(cok, tag, cert, max_len)
    return PhiCertificate(mono, sub, Verdict.of(mono) & sub)


def psi_membership(tp: TensorPowers, cp: CopairModule, tag: str, cert: IgCertificate | None = None,
                   max_len: int = DEFAULT_MAX_LEN) -> PsiCertificate:
    """Is v surjective with kernel in the class ``tag`` over R^op?

    ``cert`` is the certificate of the base algebra R (whose opposite the
    kernel lives over).
    """
    if tag not in COPAIR_TAGS:
        raise ValueError(f"class {tag!r} is not available for copairs")
    if cert is None and tag == "gi":
        cert = ig_data(tp.base, max_len)
    epi = cp.v_hom.is_epi()
    ker, _ = k_functor(tp, cp)
    sub = classify(ker, tag, cert, max_len)
    return PsiCertificate(epi, sub, Verdict.of(epi) & sub)


@dataclass
class ClassifyReport:
    tag: str
    method: str
    route_verdict: Verdict | None
    direct_verdict: Verdict | None
    certificate: PhiCertificate | PsiCertificate | None
    notes: list[str] = field(default_factory=list)

    @property
    def agree(self) -> Verdict:
        if self.route_verdict is None or self.direct_verdict is None:
            return Verdict.UNKNOWN
        if Verdict.UNKNOWN in (self.route_verdict, self.direct_verdict):
            return Verdict.UNKNOWN
        return Verdict.of(self.route_verdict is self.direct_verdict)

    @property
    def counterexample(self) -> bool:
        return self.agree is Verdict.FALSE

    @property
    def verdict(self) -> Verdict:
        """Combined verdict; UNKNOWN if either route is undecided or they disagree."""
        vs = [v for v in (self.route_verdict, self.direct_verdict) if v is not None]
        if any(v is Verdict.UNKNOWN for v in vs) or len(set(vs)) > 1:
            return Verdict.UNKNOWN
        return vs[0]

    def to_json(self) -> dict:
        return {
            "class": self.tag,
            "method": self.method,
            "route": None if self.route_verdict is None else self.route_verdict.value,
            "direct": None if self.direct_verdict is None else self.direct_verdict.value,
            "agree": self.agree.value,
            "counterexample": self.counterexample,
            "certificate": None if self.certificate is None else self.certificate.to_json(),
            "verdict": self.verdict.value,
            "notes": list(self.notes),
        }


GF_NOTE = "finite-dimensional Gorenstein flat modules treated as Gorenstein projective"


def classify_over_t(tp: TensorPowers, obj: PairModule | CopairModule, tag: str, method: str = "both",
                    max_len: int = DEFAULT_MAX_LEN, base_cert: IgCertificate | None = None,
                    ring_cert: IgCertificate | None = None) -> ClassifyReport:
    """Classify a pair (left T-module) or copair (right T-module) by the Phi/Psi route and directly over T.

    Certificates default to :func:`ig_data` of R and T; passing them in
    allows replaying a stored report.
    """
    if method not in ("phi", "psi", "direct", "both"):
        raise ValueError(f"unknown method {method!r}")
    notes = [GF_NOTE] if tag == "gf" else []
    needs_cert = tag in ("gp", "gf", "gi")
    route = direct = cert_obj = None
    if method in ("phi", "psi", "both"):
        if needs_cert and base_cert is None:
            base_cert = ig_data(tp.base, max_len)
        if isinstance(obj, PairModule):
            cert_obj = phi_membership(tp, obj, tag, base_cert, max_len)
        else:
            cert_obj = psi_membership(tp, obj, tag, base_cert, max_len)
        route = cert_obj.verdict
    if method in ("direct", "both"):
        if needs_cert and ring_cert is None:
            ring_cert = ig_data(tp.ring, max_len)
        if needs_cert and ring_cert.g is None:
            notes.append("tensor ring has no finite Iwanaga-Gorenstein certificate within the bound")
        direct = classify(obj.flat, tag, ring_cert, max_len)
    return ClassifyReport(tag, method, route, direct, cert_obj, notes)


# -- adjunctions -----------------------------------------------------------


def coind_map(src: Coinduced, dst: Coinduced, g: np.ndarray) -> np.ndarray:
    """``Coind(g) = (+)_i Hom(M^i, g)`` between two coinduced modules."""
    p = src.copair.tp.p
    out = la.zeros(dst.copair.dim, src.copair.dim)
    comp = np.asarray(g, dtype=np.int64) % p
    for i in range(len(src.components)):
        if i:
            comp = hom_map(src.spaces[i - 1], dst.spaces[i - 1], comp)
        out[dst.block(i), src.block(i)] = comp
    return out


@dataclass(frozen=True)
class AdjunctionCheck:
    dim_over_t: int
    dim_over_r: int
    round_trip: bool

    @property
    def ok(self) -> bool:
        return self.round_trip and self.dim_over_t == self.dim_over_r


def ind_adjunction(tp: TensorPowers, x: FdModule, pair: PairModule) -> AdjunctionCheck:
    """``Hom_T(Ind X, (Y, u)) = Hom_R(X, Y)`` via ``f -> f i_X`` and ``g -> eps Ind(g)``."""
    from .fdmod import hom_basis

    p = tp.p
    ix = ind(tp, x)
    iu, eps = counit(tp, pair)
    ok = True
    over_r = hom_basis(x, pair.x)
    for g in over_r:
        f = la.matmul(eps, ind_map(ix, iu, g.matrix), p)
        ok &= ModHom(ix.pair.flat, pair.flat, f, check=False).is_intertwiner()
        ok &= np.array_equal(la.matmul(f, ix.inclusion, p), g.matrix)
    over_t = hom_basis(ix.pair.flat, pair.flat)
    for f in over_t:
        g = la.matmul(f.matrix, ix.inclusion, p)
        ok &= np.array_equal(la.matmul(eps, ind_map(ix, iu, g), p), f.matrix)
    return AdjunctionCheck(len(over_t), len(over_r), bool(ok))


def coind_adjunction(tp: TensorPowers, cp: CopairModule, y: FdModule) -> AdjunctionCheck:
    """``Hom_{T^op}([Z, w], Coind Y) = Hom_{R^op}(Z, Y)`` via ``f -> pi_0 f`` and ``g -> Coind(g) eta``."""
    from .fdmod import hom_basis

    p = tp.p
    cy = coind(tp, y)
    cu, eta = unit_map(tp, cp)
    ok = True
    over_r = hom_basis(cp.y, y)
    for g in over_r:
        f = la.matmul(coind_map(cu, cy, g.matrix), eta, p)
        ok &= ModHom(cp.flat, cy.copair.flat, f, check=False).is_intertwiner()
        ok &= np.array_equal(la.matmul(cy.projection, f, p), g.matrix)
    over_t = hom_basis(cp.flat, cy.copair.flat)
    for f in over_t:
        g = la.matmul(cy.projection, f.matrix, p)
        ok &= np.array_equal(la.matmul(coind_map(cu, cy, g), eta, p), f.matrix)
    return AdjunctionCheck(len(over_t), len(over_r), bool(ok))
