"""Projective covers, minimal resolutions, Ext, Tor and module classifiers.

Hom and tensor against a sum of indecomposable projectives are evaluated on
generators: ``Hom_A(A e_s, Y) = e_s Y`` and ``N (x)_A A e_s = N e_s``.  A map
between such sums is recorded by the algebra elements ``a_kj`` sending the
j-th source generator to ``sum_k a_kj g_k``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from . import exactla as la
from .algebra import Algebra, contract
from .errors import AlgebraMismatch, AxiomViolation
from .fdmod import FdModule, ModHom, k_dual, kernel_mod
from .verdict import DimBound, Verdict

DEFAULT_MAX_LEN = 32


@dataclass
class ProjSum:
    """A direct sum of indecomposable projectives ``A e_s``, one per entry of ``vertices``."""

    algebra: Algebra
    vertices: tuple[int, ...]

    @cached_property
    def offsets(self) -> list[int]:
        off = [0]
        for s in self.vertices:
            off.append(off[-1] + self.algebra.indecomposable_projective(s)[0].dim)
        return off

    @cached_property
    def module(self) -> FdModule:
        alg = self.algebra
        n = self.offsets[-1]
        acts = np.zeros((alg.dim, n, n), dtype=np.int64)
        for k, s in enumerate(self.vertices):
            a, b = self.offsets[k], self.offsets[k + 1]
            acts[:, a:b, a:b] = alg.indecomposable_projective(s)[0].actions
        return FdModule(alg, acts, check=False)

    @property
    def dim(self) -> int:
        return self.offsets[-1]

    def generator_index(self, k: int) -> np.ndarray:
        """Coordinates of the k-th generator ``e_s`` in the module basis."""
        v = np.zeros(self.dim, dtype=np.int64)
        gen = self.algebra.indecomposable_projective(self.vertices[k])[2]
        v[self.offsets[k]:self.offsets[k + 1]] = gen
        return v

    def hom_to(self, y: FdModule, images) -> np.ndarray:
        """Matrix of the map sending generator k to ``images[k]`` (which must lie in e_s Y)."""
        p = self.algebra.p
        cols = []
        for k, s in enumerate(self.vertices):
            basis = self.algebra.indecomposable_projective(s)[1]
            cols.append(contract(p, "ib,ixy,y->xb", basis, y.actions, np.asarray(images[k])))
        return np.hstack(cols) if cols else la.zeros(y.dim, 0)

    def coefficients(self, matrix: np.ndarray, src: "ProjSum") -> np.ndarray:
        """Algebra elements ``a[k, j]`` of a map ``src -> self`` given by ``matrix``."""
        p = self.algebra.p
        d = self.algebra.dim
        out = np.zeros((len(self.vertices), len(src.vertices), d), dtype=np.int64)
        for j in range(len(src.vertices)):
            img = la.matmul(matrix, src.generator_index(j).reshape(-1, 1), p)[:, 0]
            for k, s in enumerate(self.vertices):
                basis = self.algebra.indecomposable_projective(s)[1]
                out[k, j] = la.matmul(basis, img[self.offsets[k]:self.offsets[k + 1]].reshape(-1, 1), p)[:, 0]
        return out


def radical_of(x: FdModule) -> np.ndarray:
    """Column basis of ``rad(A) X``."""
    alg = x.algebra
    if x.dim == 0 or alg.radical.shape[0] == 0:
        return la.zeros(x.dim, 0)
    mats = contract(x.p, "ri,ixy->rxy", alg.radical, x.actions)
    return la.image_basis(np.hstack(list(mats)), x.p)


def socle_of(x: FdModule) -> np.ndarray:
    """Column basis of ``{x : rad(A) x = 0}``."""
    alg = x.algebra
    if x.dim == 0 or alg.radical.shape[0] == 0:
        return la.identity(x.dim)
    mats = contract(x.p, "ri,ixy->rxy", alg.radical, x.actions)
    return la.kernel_basis(np.vstack(list(mats)), x.p)


def projective_cover(x: FdModule) -> tuple[ProjSum, ModHom]:
    """Minimal projective cover; the kernel of the epimorphism lies in rad(P)."""
    alg = x.algebra
    p = x.p
    top_proj, _ = la.quotient_data(x.dim, radical_of(x), p)
    vertices, images = [], []
    for s in range(alg.n_vertices):
        es = la.image_basis(x.act(alg.idempotents[s]), p)
        if es.shape[1] == 0:
            continue
        _, piv = la.rref(la.matmul(top_proj, es, p), p)
        for c in piv:
            vertices.append(s)
            images.append(es[:, c])
    cover = ProjSum(alg, tuple(vertices))
    epi = ModHom(cover.module, x, cover.hom_to(x, images), check=False)
    if epi.rank != x.dim:
        raise AxiomViolation("projective cover is not surjective")
    return cover, epi


@dataclass
class Resolution:
    """Minimal projective resolution ``... -> P_1 -> P_0 -> X``.

    ``maps[0]`` is the cover ``P_0 -> X`` and ``maps[i]`` is ``P_i -> P_{i-1}``;
    ``syzygies[i]`` is the kernel of ``maps[i]``.
    """

    target: FdModule
    terms: list[ProjSum]
    maps: list[ModHom]
    syzygies: list[FdModule]
    complete: bool

    @property
    def truncated(self) -> bool:
        return not self.complete

    @property
    def length(self) -> int:
        return len(self.terms) - 1

    def term(self, n: int) -> ProjSum | None:
        """P_n, the empty sum past a complete resolution, None if not computed."""
        if n < len(self.terms):
            return self.terms[n]
        if self.complete:
            return ProjSum(self.target.algebra, ())
        return None

    def coefficients(self, n: int) -> np.ndarray | None:
        """Coefficients of ``P_n -> P_{n-1}`` for n >= 1."""
        if n < len(self.terms):
            return self.terms[n - 1].coefficients(self.maps[n].matrix, self.terms[n])
        if self.complete:
            return np.zeros((len(self.terms[n - 1].vertices) if n - 1 < len(self.terms) else 0, 0,
                             self.target.algebra.dim), dtype=np.int64)
        return None

    def check(self) -> None:
        p = self.target.p
        for i in range(1, len(self.maps)):
            if not la.is_zero(la.matmul(self.maps[i - 1].matrix, self.maps[i].matrix, p), p):
                raise AxiomViolation(f"d_{i - 1} d_{i} != 0")
            if la.rank(self.maps[i].matrix, p) + la.rank(self.maps[i - 1].matrix, p) != self.terms[i - 1].dim:
                raise AxiomViolation(f"resolution not exact at P_{i - 1}")


def minimal_resolution(x: FdModule, max_len: int = DEFAULT_MAX_LEN) -> Resolution:
    """Iterated projective covers of syzygies, computing at most P_0..P_max_len."""
    if max_len < 0:
        raise ValueError("max_len must be non-negative")
    cache = x.__dict__.setdefault("_resolution_cache", {})
    best = cache.get("res")
    if best is not None and (best.complete or best.length >= max_len):
        if best.complete or best.length == max_len:
            return best
        return Resolution(x, best.terms[:max_len + 1], best.maps[:max_len + 1],
                          best.syzygies[:max_len + 1], complete=False)
    p0, eps = projective_cover(x)
    terms, maps, syz = [p0], [eps], []
    current = eps
    complete = False
    while True:
        k, incl = kernel_mod(current)
        syz.append(k)
        if k.dim == 0:
            complete = True
            break
        if len(terms) == max_len + 1:
            break
        pn, e = projective_cover(k)
        d = ModHom(pn.module, terms[-1].module, la.matmul(incl.matrix, e.matrix, x.p), check=False)
        terms.append(pn)
        maps.append(d)
        current = d
    res = Resolution(x, terms, maps, syz, complete)
    cache["res"] = res
    return res


def _hom_domain(term: ProjSum, y: FdModule) -> np.ndarray:
    """Basis of ``Hom(term, Y) = (+)_k e_{s_k} Y`` inside ``(+)_k Y``."""
    blocks = [la.image_basis(y.act(term.algebra.idempotents[s]), y.p) for s in term.vertices]
    return la.direct_sum(*blocks) if blocks else la.zeros(0, 0)


def _precompose(coef: np.ndarray, y: FdModule) -> np.ndarray:
    """Block matrix of ``f -> f o d`` from ``(+)_k Y`` to ``(+)_j Y``."""
    nk, nj = coef.shape[0], coef.shape[1]
    n = y.dim
    blocks = contract(y.p, "kji,ixy->jkxy", coef, y.actions)
    return blocks.transpose(0, 2, 1, 3).reshape(nj * n, nk * n)


def ext_dim(x: FdModule, y: FdModule, n: int, max_len: int = DEFAULT_MAX_LEN) -> int | None:
    """dim Ext^n_A(X, Y); None when the resolution is too short to decide."""
    if x.algebra is not y.algebra:
        raise AlgebraMismatch("Ext between modules over different algebras")
    res = minimal_resolution(x, max(max_len, 0))
    pn = res.term(n)
    if pn is None or res.term(n + 1) is None:
        return None
    p = y.p
    dom = _hom_domain(pn, y)
    h = dom.shape[1]
    r_next = 0
    if len(res.term(n + 1).vertices):
        r_next = la.rank(la.matmul(_precompose(res.coefficients(n + 1), y), dom, p), p)
    r_prev = 0
    if n >= 1 and len(pn.vertices):
        prev = res.term(n - 1)
        r_prev = la.rank(la.matmul(_precompose(res.coefficients(n), y), _hom_domain(prev, y), p), p)
    return h - r_next - r_prev


def _tensor_domain(term: ProjSum, mr: FdModule) -> np.ndarray:
    blocks = [la.image_basis(mr.act(term.algebra.idempotents[s]), mr.p) for s in term.vertices]
    return la.direct_sum(*blocks) if blocks else la.zeros(0, 0)


def _tensor_boundary(coef: np.ndarray, mr: FdModule) -> np.ndarray:
    """Block matrix of ``1 (x) d`` from ``(+)_j N`` to ``(+)_k N``."""
    nk, nj = coef.shape[0], coef.shape[1]
    n = mr.dim
    blocks = contract(mr.p, "kji,ixy->kjxy", coef, mr.actions)
    return blocks.transpose(0, 2, 1, 3).reshape(nk * n, nj * n)


def tor_dim(mr: FdModule, x: FdModule, n: int, max_len: int = DEFAULT_MAX_LEN) -> int | None:
    """dim Tor_n^A(N, X) for a right module N (over A^op) and a left module X."""
    if mr.algebra is not x.algebra.opposite:
        raise AlgebraMismatch("Tor needs a right module over the algebra of X")
    res = minimal_resolution(x, max(max_len, 0))
    pn = res.term(n)
    if pn is None or res.term(n + 1) is None:
        return None
    p = x.p
    dom = _tensor_domain(pn, mr)
    t = dom.shape[1]
    r_out = 0
    if n >= 1 and len(pn.vertices):
        r_out = la.rank(la.matmul(_tensor_boundary(res.coefficients(n), mr), dom, p), p)
    r_in = 0
    nxt = res.term(n + 1)
    if len(nxt.vertices):
        r_in = la.rank(la.matmul(_tensor_boundary(res.coefficients(n + 1), mr), _tensor_domain(nxt, mr), p), p)
    return t - r_out - r_in


def pd_bound(x: FdModule, max_len: int = DEFAULT_MAX_LEN) -> DimBound:
    res = minimal_resolution(x, max_len)
    if res.complete:
        return DimBound.finite(res.length)
    return DimBound.at_least(max_len)


def id_bound(x: FdModule, max_len: int = DEFAULT_MAX_LEN) -> DimBound:
    return pd_bound(k_dual(x), max_len)


@dataclass(frozen=True)
class IgCertificate:
    """Self-injective dimensions of an algebra on both sides (None = undecided)."""

    algebra: Algebra
    g_left: int | None
    g_right: int | None
    bound: int

    def __post_init__(self):
        if self.g_left is not None and self.g_right is not None and self.g_left != self.g_right:
            raise AxiomViolation(f"left and right self-injective dimensions differ: {self.g_left} != {self.g_right}")

    @property
    def g(self) -> int | None:
        if self.g_left is None or self.g_right is None:
            return None
        return self.g_left

    def to_json(self) -> dict:
        return {"gLeft": self.g_left, "gRight": self.g_right, "bound": self.bound}


def ig_data(alg: Algebra, max_len: int = DEFAULT_MAX_LEN) -> IgCertificate:
    cache = alg.__dict__.setdefault("_ig_cache", {})
    if max_len in cache:
        return cache[max_len]
    left = id_bound(alg.regular_module(), max_len)
    right = id_bound(alg.opposite.regular_module(), max_len)
    cert = IgCertificate(alg, left.value if left.exact else None, right.value if right.exact else None, max_len)
    cache[max_len] = cert
    return cert


def is_projective(x: FdModule) -> bool:
    cover, _ = projective_cover(x)
    return cover.dim == x.dim


def is_injective(x: FdModule) -> bool:
    return is_projective(k_dual(x))


def is_flat(x: FdModule) -> bool:
    # Finite-dimensional modules over finite-dimensional algebras: flat == projective.
    return is_projective(x)


def is_gorenstein_projective(x: FdModule, cert: IgCertificate, max_len: int = DEFAULT_MAX_LEN) -> Verdict:
    """Ext^i(X, A) = 0 for 1 <= i <= g, valid when A is Iwanaga-Gorenstein of dimension g."""
    if cert.algebra is not x.algebra:
        raise AlgebraMismatch("certificate belongs to a different algebra")
    g = cert.g
    if g is None:
        return Verdict.UNKNOWN
    if g == 0 or x.dim == 0:
        return Verdict.TRUE
    reg = x.algebra.regular_module()
    for i in range(1, g + 1):
        e = ext_dim(x, reg, i, max(max_len, g + 1))
        if e is None:
            return Verdict.UNKNOWN
        if e:
            return Verdict.FALSE
    return Verdict.TRUE


def is_gorenstein_injective(y: FdModule, cert: IgCertificate, max_len: int = DEFAULT_MAX_LEN) -> Verdict:
    """GI test for a module over ``cert.algebra.opposite`` via its field dual."""
    return is_gorenstein_projective(k_dual(y), cert, max_len)


def is_gorenstein_flat(x: FdModule, cert: IgCertificate, max_len: int = DEFAULT_MAX_LEN) -> Verdict:
    """Finite-dimensional Gorenstein flat modules are taken to be the GP ones."""
    return is_gorenstein_projective(x, cert, max_len)


CLASS_TAGS = ("proj", "inj", "flat", "gp", "gi", "gf")


def classify(x: FdModule, tag: str, cert: IgCertificate | None = None,
             max_len: int = DEFAULT_MAX_LEN) -> Verdict:
    """Run the classifier named by ``tag`` on X."""
    if tag == "proj":
        return Verdict.of(is_projective(x))
    if tag == "inj":
        return Verdict.of(is_injective(x))
    if tag == "flat":
        return Verdict.of(is_flat(x))
    if cert is None:
        raise ValueError(f"class {tag!r} needs an Iwanaga-Gorenstein certificate")
    if tag == "gp":
        return is_gorenstein_projective(x, cert, max_len)
    if tag == "gf":
        return is_gorenstein_flat(x, cert, max_len)
    if tag == "gi":
        return is_gorenstein_injective(x, cert, max_len)
    raise ValueError(f"unknown class tag {tag!r}")
