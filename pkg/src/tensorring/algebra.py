"""Finite-dimensional algebras given by structure constants.

Convention for path algebras: in a product ``q * p`` the path ``p`` is
traversed first, so ``q * p`` is nonzero only when ``target(p) == source(q)``.
Consequently ``A e_s`` is spanned by the paths starting at ``s``.  Paths are
written in traversal order with arrow names joined by ``.``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from . import exactla as la
from .errors import (
    AxiomViolation,
    FieldMismatch,
    InfiniteDimensional,
    MalformedRelation,
    ShapeError,
)
from .exactla import FieldSpec

EXHAUSTIVE_ASSOC_DIM = 64


def contract(p: int, spec: str, *ops: np.ndarray) -> np.ndarray:
    """``np.einsum`` reduced mod p, switching to Python ints when int64 could overflow."""
    inputs, output = spec.split("->")
    sizes: dict[str, int] = {}
    for letters, op in zip(inputs.split(","), ops):
        for ch, n in zip(letters, np.shape(op)):
            sizes[ch] = n
    terms = 1
    for ch, n in sizes.items():
        if ch not in output:
            terms *= n
    if terms * (p - 1) ** len(ops) < 2**62:
        return np.einsum(spec, *ops) % p
    out = np.einsum(spec, *(np.asarray(o).astype(object) for o in ops)) % p
    return np.asarray(out, dtype=np.int64)


class Algebra:
    """A split basic finite-dimensional algebra over F_p.

    ``struct[i, j]`` is the coordinate vector of ``b_i * b_j``.  The radical
    is given by coordinate vectors spanning J; together with the idempotents
    it must span the algebra (so A/J is a product of copies of the field).
    """

    def __init__(self, field: FieldSpec, struct, unit, idempotents, radical,
                 labels=None, check: bool = True, meta: dict | None = None):
        self.field = field
        self.p = field.p
        struct = np.asarray(struct, dtype=np.int64) % self.p
        d = struct.shape[0] if struct.ndim == 3 else -1
        if struct.ndim != 3 or struct.shape != (d, d, d):
            raise ShapeError(f"structure constants must have shape (d, d, d), got {struct.shape}")
        self.dim = d
        self.struct = struct
        self.unit = np.asarray(unit, dtype=np.int64).reshape(d) % self.p
        self.idempotents = np.asarray(idempotents, dtype=np.int64).reshape(-1, d) % self.p
        self.radical = np.asarray(radical, dtype=np.int64).reshape(-1, d) % self.p
        self.labels = list(labels) if labels is not None else [f"b{i}" for i in range(d)]
        if len(self.labels) != d:
            raise ShapeError(f"{len(self.labels)} labels for dimension {d}")
        self.meta = dict(meta or {})
        self._opposite: Algebra | None = None
        if check:
            self.check()

    # -- arithmetic -------------------------------------------------------

    def basis_vector(self, i: int) -> np.ndarray:
        v = np.zeros(self.dim, dtype=np.int64)
        v[i] = 1
        return v

    def mult(self, a, b) -> np.ndarray:
        return contract(self.p, "i,j,ijk->k", np.asarray(a), np.asarray(b), self.struct)

    def left_mult(self, a) -> np.ndarray:
        """Matrix of x -> a * x."""
        return contract(self.p, "i,ijk->kj", np.asarray(a), self.struct)

    def right_mult(self, a) -> np.ndarray:
        """Matrix of x -> x * a."""
        return contract(self.p, "j,ijk->ki", np.asarray(a), self.struct)

    @cached_property
    def left_regular_actions(self) -> np.ndarray:
        return np.ascontiguousarray(np.transpose(self.struct, (0, 2, 1)))

    @cached_property
    def right_regular_actions(self) -> np.ndarray:
        # actions[b][:, i] = b_i * b_b
        return np.ascontiguousarray(np.transpose(self.struct, (1, 2, 0)))

    @property
    def n_vertices(self) -> int:
        return self.idempotents.shape[0]

    # -- validation -------------------------------------------------------

    def check(self) -> None:
        p, d, c = self.p, self.dim, self.struct
        if d == 0:
            raise AxiomViolation("algebras are nonzero")
        if d <= EXHAUSTIVE_ASSOC_DIM:
            lhs = contract(p, "ijl,lkm->ijkm", c, c)
            rhs = contract(p, "jkl,ilm->ijkm", c, c)
            if not np.array_equal(lhs, rhs):
                i, j, k, _ = np.argwhere(lhs != rhs)[0]
                raise AxiomViolation(f"associativity fails on basis triple ({i}, {j}, {k})")
        else:
            rng = np.random.default_rng(0)
            for _ in range(2000):
                i, j, k = (int(t) for t in rng.integers(0, d, 3))
                ab = c[i, j]
                lhs = contract(p, "l,lm->m", ab, c[:, k, :])
                rhs = contract(p, "l,lm->m", c[j, k], c[i, :, :])
                if not np.array_equal(lhs, rhs):
                    raise AxiomViolation(f"associativity fails on basis triple ({i}, {j}, {k})")
        eye = la.identity(d)
        if not np.array_equal(self.left_mult(self.unit), eye) or not np.array_equal(self.right_mult(self.unit), eye):
            raise AxiomViolation("unit law fails")
        idem = self.idempotents
        if idem.shape[0] == 0:
            raise AxiomViolation("at least one idempotent is required")
        for s, t in itertools.product(range(idem.shape[0]), repeat=2):
            prod = self.mult(idem[s], idem[t])
            want = idem[s] if s == t else np.zeros(d, dtype=np.int64)
            if not np.array_equal(prod, want):
                raise AxiomViolation(f"idempotents {s}, {t} are not orthogonal idempotents")
        if not np.array_equal(idem.sum(axis=0) % p, self.unit):
            raise AxiomViolation("idempotents do not sum to the unit")
        rad = self.radical
        if rad.shape[0] and la.rank(rad, p) != rad.shape[0]:
            raise AxiomViolation("radical vectors are linearly dependent")
        if la.rank(np.vstack([rad, idem]), p) != d:
            raise AxiomViolation("radical and idempotents do not span the algebra (algebra must be split basic)")
        if rad.shape[0]:
            span = rad.T
            for i in range(d):
                for side in (self.left_mult(self.basis_vector(i)), self.right_mult(self.basis_vector(i))):
                    img = la.matmul(side, span, p)
                    if la.rank(np.hstack([span, img]), p) != span.shape[1]:
                        raise AxiomViolation("radical is not a two-sided ideal")
            power = span
            for _ in range(d + 1):
                if power.shape[1] == 0:
                    break
                prods = np.hstack([la.matmul(self.left_mult(r), power, p) for r in rad])
                power = la.image_basis(prods, p)
            else:
                raise AxiomViolation("radical is not nilpotent")
            if power.shape[1]:
                raise AxiomViolation("radical is not nilpotent")

    # -- derived structure -----------------------------------------------

    @cached_property
    def opposite(self) -> "Algebra":
        if self._opposite is not None:
            return self._opposite
        op = Algebra(self.field, np.transpose(self.struct, (1, 0, 2)), self.unit,
                     self.idempotents, self.radical, self.labels, check=False,
                     meta={"opposite_of": self.meta.get("name", "")})
        op._opposite = self
        op.__dict__["opposite"] = self
        return op

    @cached_property
    def radical_squared(self) -> np.ndarray:
        """Column basis of J^2."""
        rad = self.radical
        if rad.shape[0] == 0:
            return la.zeros(self.dim, 0)
        prods = contract(self.p, "ai,bj,ijk->kab", rad, rad, self.struct).reshape(self.dim, -1)
        return la.image_basis(prods, self.p)

    @cached_property
    def generators(self) -> list[tuple[int, int, np.ndarray]]:
        """Algebra generators ``(t, s, g)`` with ``g = e_t g e_s``.

        The idempotents (tagged ``(s, s)``) followed by elements of
        ``e_t J e_s`` that span it modulo ``e_t J^2 e_s``.
        """
        p = self.p
        gens = [(s, s, self.idempotents[s].copy()) for s in range(self.n_vertices)]
        rad = self.radical.T
        sq = self.radical_squared
        for t in range(self.n_vertices):
            lt = self.left_mult(self.idempotents[t])
            for s in range(self.n_vertices):
                sandwich = la.matmul(lt, self.right_mult(self.idempotents[s]), p)
                current = la.image_basis(la.matmul(sandwich, sq, p), p) if sq.shape[1] else la.zeros(self.dim, 0)
                r0 = current.shape[1]
                for v in la.matmul(sandwich, rad, p).T if rad.shape[1] else []:
                    trial = np.hstack([current, v.reshape(-1, 1)])
                    if la.rank(trial, p) > r0:
                        current, r0 = trial, r0 + 1
                        gens.append((t, s, v.copy()))
        return gens

    @cached_property
    def generator_matrix(self) -> np.ndarray:
        """Rows are the generator coordinate vectors."""
        return np.array([g for _, _, g in self.generators], dtype=np.int64).reshape(-1, self.dim)

    @cached_property
    def semisimple_coords(self) -> np.ndarray:
        """``W[s, i]`` = coefficient of ``e_s`` in ``b_i`` modulo the radical."""
        n = self.n_vertices
        basis = np.vstack([self.idempotents, self.radical]).T
        coords = la.solve(basis, la.identity(self.dim), self.p)
        return coords[:n]

    def indecomposable_projective(self, s: int):
        """``(module, basis, generator)`` for ``A e_s``.

        ``basis`` has columns in A-coordinates; ``generator`` gives the
        coordinates of ``e_s`` in that basis.
        """
        return self._projectives[s]

    @cached_property
    def _projectives(self):
        from .fdmod import FdModule

        out = []
        p = self.p
        for s in range(self.n_vertices):
            basis = la.image_basis(self.right_mult(self.idempotents[s]), p)
            linv = la.left_inverse(basis, p)
            acts = contract(p, "ab,nbc,cd->nad", linv, self.left_regular_actions, basis)
            gen = la.matmul(linv, self.idempotents[s].reshape(-1, 1), p)[:, 0]
            out.append((FdModule(self, acts, check=False), basis, gen))
        return out

    def simple(self, s: int):
        from .fdmod import FdModule

        acts = self.semisimple_coords[s].reshape(self.dim, 1, 1).copy()
        return FdModule(self, acts, check=False)

    def regular_module(self):
        from .fdmod import FdModule

        return FdModule(self, self.left_regular_actions, check=False)

    def regular_bimodule(self):
        from .fdmod import Bimodule

        return Bimodule(self, self, self.left_regular_actions, self.right_regular_actions, check=False)

    def table_equal(self, other: "Algebra") -> bool:
        return (self.p == other.p and self.dim == other.dim
                and np.array_equal(self.struct, other.struct)
                and np.array_equal(self.unit, other.unit))

    def __repr__(self):
        name = self.meta.get("name", "")
        return f"Algebra({name + ', ' if name else ''}dim={self.dim}, p={self.p}, vertices={self.n_vertices})"


# -- quivers ---------------------------------------------------------------


@dataclass(frozen=True)
class Quiver:
    vertex_count: int
    arrows: tuple[tuple[str, int, int], ...]
    vertex_names: tuple[str, ...] = field(default=())

    def __post_init__(self):
        arrows = tuple((str(n), int(s), int(t)) for n, s, t in self.arrows)
        object.__setattr__(self, "arrows", arrows)
        names = [a[0] for a in arrows]
        if len(set(names)) != len(names):
            raise ValueError("arrow names must be distinct")
        for n, s, t in arrows:
            if not (0 <= s < self.vertex_count and 0 <= t < self.vertex_count):
                raise ValueError(f"arrow {n} has an endpoint out of range")
        if not self.vertex_names:
            object.__setattr__(self, "vertex_names", tuple(str(i) for i in range(self.vertex_count)))
        elif len(self.vertex_names) != self.vertex_count:
            raise ValueError("one name per vertex is required")

    def arrow_index(self, name: str) -> int:
        for k, (n, _, _) in enumerate(self.arrows):
            if n == name:
                return k
        raise MalformedRelation(f"unknown arrow {name!r}")

    def reversed(self) -> "Quiver":
        return Quiver(self.vertex_count, tuple((n, t, s) for n, s, t in self.arrows), self.vertex_names)


def _contains(path: tuple[int, ...], rel: tuple[int, ...]) -> bool:
    k = len(rel)
    return any(path[i:i + k] == rel for i in range(len(path) - k + 1))


def build_path_algebra(field: FieldSpec, quiver: Quiver, relations=(), cap: int = 10000,
                       order: str = "right-to-left") -> Algebra:
    """Path algebra of ``quiver`` modulo monomial relations.

    ``relations`` are arrow-name sequences in traversal order.  With
    ``order="left-to-right"`` the product ``p * q`` traverses ``p`` first,
    which yields the opposite multiplication.
    """
    if order not in ("right-to-left", "left-to-right"):
        raise ValueError(f"unknown composition order {order!r}")
    arrows = quiver.arrows
    rels = []
    for rel in relations:
        idx = tuple(quiver.arrow_index(a) for a in rel)
        if len(idx) < 2:
            raise MalformedRelation(f"relation {list(rel)} has length < 2")
        for a, b in zip(idx, idx[1:]):
            if arrows[a][2] != arrows[b][1]:
                raise MalformedRelation(f"relation {list(rel)} is not a composable path")
        rels.append(idx)

    n = quiver.vertex_count
    # Paths: ("e", s) for trivial, tuple of arrow indices otherwise.
    paths: list = [("e", s) for s in range(n)]
    frontier = [(k,) for k in range(len(arrows)) if not any(_contains((k,), r) for r in rels)]
    while frontier:
        paths.extend(frontier)
        if len(paths) > cap:
            raise InfiniteDimensional(f"more than {cap} paths; the quotient is infinite-dimensional or the cap is too small")
        nxt = []
        for path in frontier:
            end = arrows[path[-1]][2]
            for k, (_, s, _) in enumerate(arrows):
                if s != end:
                    continue
                cand = path + (k,)
                if not any(cand[-len(r):] == r for r in rels if len(r) <= len(cand)):
                    nxt.append(cand)
        frontier = nxt

    index = {pth: i for i, pth in enumerate(paths)}
    d = len(paths)

    def ends(pth):
        if pth[0] == "e":
            return pth[1], pth[1]
        return arrows[pth[0]][1], arrows[pth[-1]][2]

    def compose(first, second):
        """Traverse ``first`` then ``second``; None if the product is zero."""
        if ends(first)[1] != ends(second)[0]:
            return None
        if first[0] == "e":
            return second
        if second[0] == "e":
            return first
        cat = first + second
        return None if any(_contains(cat, r) for r in rels) else cat

    struct = np.zeros((d, d, d), dtype=np.int64)
    for i, pi in enumerate(paths):
        for j, pj in enumerate(paths):
            res = compose(pj, pi) if order == "right-to-left" else compose(pi, pj)
            if res is not None:
                struct[i, j, index[res]] = 1

    unit = np.zeros(d, dtype=np.int64)
    unit[:n] = 1
    idem = np.eye(n, d, dtype=np.int64)
    radical = np.eye(d, dtype=np.int64)[n:]
    labels = [f"e{quiver.vertex_names[s]}" for s in range(n)]
    labels += [".".join(arrows[k][0] for k in pth) for pth in paths[n:]]
    meta = {"quiver": quiver, "relations": [list(r) for r in relations], "order": order, "paths": paths}
    return Algebra(field, struct, unit, idem, radical, labels, meta=meta)


def opposite_algebra(a: Algebra) -> Algebra:
    return a.opposite


def direct_product_algebra(a: Algebra, b: Algebra) -> Algebra:
    if a.p != b.p:
        raise FieldMismatch(f"fields F_{a.p} and F_{b.p} differ")
    da, db = a.dim, b.dim
    d = da + db
    struct = np.zeros((d, d, d), dtype=np.int64)
    struct[:da, :da, :da] = a.struct
    struct[da:, da:, da:] = b.struct
    unit = np.concatenate([a.unit, b.unit])
    idem = np.vstack([np.hstack([a.idempotents, np.zeros((a.n_vertices, db), dtype=np.int64)]),
                      np.hstack([np.zeros((b.n_vertices, da), dtype=np.int64), b.idempotents])])
    rad = np.vstack([np.hstack([a.radical, np.zeros((a.radical.shape[0], db), dtype=np.int64)]),
                     np.hstack([np.zeros((b.radical.shape[0], da), dtype=np.int64), b.radical])])
    labels = [f"({l},0)" for l in a.labels] + [f"(0,{l})" for l in b.labels]
    return Algebra(a.field, struct, unit, idem, rad, labels,
                   meta={"product_of": (a, b), "name": "product"})


def field_algebra(field: FieldSpec) -> Algebra:
    return Algebra(field, [[[1]]], [1], [[1]], np.zeros((0, 1), dtype=np.int64), ["1"])


def nakayama_quiver(n: int) -> Quiver:
    """The cyclic quiver 1 -> 2 -> ... -> n -> 1 (internal vertices 0..n-1)."""
    arrows = tuple((f"a{k + 1}", k, (k + 1) % n) for k in range(n))
    return Quiver(n, arrows, tuple(str(k + 1) for k in range(n)))


def cyclic_nakayama(field: FieldSpec, n: int, h: int, order: str = "right-to-left") -> Algebra:
    """kQ/J^h for the cyclic quiver on n vertices."""
    if h < 2:
        raise ValueError("h must be at least 2")
    q = nakayama_quiver(n)
    rels = []
    for start in range(n):
        rels.append([q.arrows[(start + k) % n][0] for k in range(h)])
    alg = build_path_algebra(field, q, rels, order=order)
    alg.meta["name"] = f"qnak({n},{h})"
    return alg
