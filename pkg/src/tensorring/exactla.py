"""Dense linear algebra over prime fields.

Matrices are numpy ``int64`` arrays whose entries are canonical residues in
``[0, p)``.  Every function takes the modulus explicitly and returns freshly
allocated, reduced arrays; nothing is mutated in place.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ShapeError

# Products of two residues must fit comfortably in int64.
MAX_PRIME = 2**31 - 1


@dataclass(frozen=True)
class FieldSpec:
    """The prime field F_p."""

    p: int

    def __post_init__(self):
        p = self.p
        if not isinstance(p, (int, np.integer)) or p < 2:
            raise ValueError(f"field modulus must be an integer >= 2, got {p!r}")
        if p > MAX_PRIME:
            raise ValueError(f"modulus {p} exceeds supported maximum {MAX_PRIME}")
        for d in range(2, math.isqrt(p) + 1):
            if p % d == 0:
                raise ValueError(f"field modulus {p} is not prime (divisible by {d})")
        object.__setattr__(self, "p", int(p))

    def inv(self, a: int) -> int:
        return pow(int(a) % self.p, -1, self.p)


def mat(rows, p: int, shape: tuple[int, int] | None = None) -> np.ndarray:
    """Build a reduced matrix from nested lists (or any array-like)."""
    a = np.array(rows, dtype=np.int64)
    if shape is not None:
        a = a.reshape(shape)
    if a.ndim != 2:
        raise ShapeError(f"expected a 2-d matrix, got shape {a.shape}")
    return a % p


def zeros(r: int, c: int) -> np.ndarray:
    return np.zeros((r, c), dtype=np.int64)


def identity(n: int) -> np.ndarray:
    return np.eye(n, dtype=np.int64)


def _safe(inner: int, p: int) -> bool:
    return inner * (p - 1) ** 2 < 2**62


def matmul(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    if a.shape[-1] != b.shape[-2 if b.ndim > 1 else 0]:
        raise ShapeError(f"cannot multiply shapes {a.shape} and {b.shape}")
    if _safe(a.shape[-1], p):
        return (a @ b) % p
    out = (a.astype(object) @ b.astype(object)) % p
    return out.astype(np.int64)


def mm(p: int, *mats: np.ndarray) -> np.ndarray:
    """Chained product ``mats[0] @ mats[1] @ ...`` reduced mod p."""
    out = mats[0]
    for m in mats[1:]:
        out = matmul(out, m, p)
    return out


def kron(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    """Kronecker product; shape (ra*rb, ca*cb)."""
    return np.kron(a, b) % p


def direct_sum(*mats: np.ndarray) -> np.ndarray:
    """Block-diagonal matrix of the arguments."""
    r = sum(m.shape[0] for m in mats)
    c = sum(m.shape[1] for m in mats)
    out = zeros(r, c)
    i = j = 0
    for m in mats:
        out[i:i + m.shape[0], j:j + m.shape[1]] = m
        i += m.shape[0]
        j += m.shape[1]
    return out


def transpose(a: np.ndarray) -> np.ndarray:
    return np.ascontiguousarray(a.T)


def rref(a: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form and pivot columns.

    The rank is ``len(pivots)``.
    """
    r_mat = np.array(a, dtype=np.int64) % p
    if r_mat.ndim != 2:
        raise ShapeError(f"rref expects a matrix, got shape {r_mat.shape}")
    rows, cols = r_mat.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(r_mat[r:, c])
        if nz.size == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            r_mat[[r, k]] = r_mat[[k, r]]
        inv = pow(int(r_mat[r, c]), -1, p)
        if inv != 1:
            r_mat[r, c:] = (r_mat[r, c:] * inv) % p
        col = r_mat[:, c].copy()
        col[r] = 0
        hit = np.flatnonzero(col)
        if hit.size:
            r_mat[hit, c:] = (r_mat[hit, c:] - np.outer(col[hit], r_mat[r, c:])) % p
        pivots.append(c)
        r += 1
    return r_mat, pivots


def rank(a: np.ndarray, p: int) -> int:
    if a.size == 0:
        return 0
    # Eliminate along the shorter side.
    if a.shape[0] > a.shape[1]:
        a = a.T
    return len(rref(a, p)[1])


def kernel_basis(a: np.ndarray, p: int) -> np.ndarray:
    """Columns form a basis of {x : a @ x = 0}."""
    cols = a.shape[1]
    if a.shape[0] == 0:
        return identity(cols)
    r_mat, pivots = rref(a, p)
    free = [c for c in range(cols) if c not in set(pivots)]
    out = zeros(cols, len(free))
    for k, f in enumerate(free):
        out[f, k] = 1
        for i, pc in enumerate(pivots):
            out[pc, k] = (-r_mat[i, f]) % p
    return out


def image_basis(a: np.ndarray, p: int) -> np.ndarray:
    """A subset of the columns of ``a`` forming a basis of its column span."""
    if a.shape[1] == 0 or a.shape[0] == 0:
        return zeros(a.shape[0], 0)
    _, pivots = rref(a, p)
    return np.ascontiguousarray(a[:, pivots]) % p


def row_space_rref(a: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Nonzero rows of the rref of ``a`` together with pivots."""
    r_mat, pivots = rref(a, p)
    return r_mat[: len(pivots)], pivots


def quotient_data(ambient_dim: int, sub: np.ndarray, p: int) -> tuple[np.ndarray, np.ndarray]:
    """Projection onto F_p^ambient / span(columns of sub) and a linear section.

    The quotient basis is the images of the standard vectors at the non-pivot
    coordinates of the row-reduced subspace, so ``section`` is a coordinate
    selection and ``proj @ section`` is the identity.
    """
    if sub.shape[0] != ambient_dim:
        raise ShapeError(f"subspace vectors have length {sub.shape[0]}, ambient is {ambient_dim}")
    if sub.shape[1] == 0:
        return identity(ambient_dim), identity(ambient_dim)
    basis, pivots = row_space_rref(sub.T, p)
    pivset = set(pivots)
    nonpiv = [c for c in range(ambient_dim) if c not in pivset]
    q = len(nonpiv)
    proj = zeros(q, ambient_dim)
    for k, c in enumerate(nonpiv):
        proj[k, c] = 1
    # x mod span: subtract x_pc * row_i for each pivot, keep non-pivot coordinates.
    if pivots and q:
        proj[:, pivots] = (-basis[:, nonpiv].T) % p
    section = zeros(ambient_dim, q)
    for k, c in enumerate(nonpiv):
        section[c, k] = 1
    return proj, section


def solve(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray | None:
    """One solution of ``a @ x = b`` (b may be a vector or a matrix), or None."""
    vec = b.ndim == 1
    bb = b.reshape(-1, 1) if vec else b
    if a.shape[0] != bb.shape[0]:
        raise ShapeError(f"system has {a.shape[0]} equations but right side has {bb.shape[0]} rows")
    n = a.shape[1]
    aug = np.hstack([a % p, bb % p])
    r_mat, pivots = rref(aug, p)
    if any(pc >= n for pc in pivots):
        return None
    x = zeros(n, bb.shape[1])
    for i, pc in enumerate(pivots):
        x[pc] = r_mat[i, n:]
    return x[:, 0] if vec else x


def left_inverse(basis: np.ndarray, p: int) -> np.ndarray:
    """L with ``L @ basis = I`` for a matrix with independent columns."""
    n, k = basis.shape
    if k == 0:
        return zeros(0, n)
    r_mat, pivots = rref(basis.T, p)
    if len(pivots) != k:
        raise ShapeError("columns are not linearly independent")
    # Rows `pivots` of basis form an invertible k x k block.
    block = basis[pivots, :]
    inv = inverse(block, p)
    out = zeros(k, n)
    out[:, pivots] = inv
    return out


def inverse(a: np.ndarray, p: int) -> np.ndarray:
    n = a.shape[0]
    if a.shape != (n, n):
        raise ShapeError(f"inverse of non-square matrix {a.shape}")
    r_mat, pivots = rref(np.hstack([a % p, identity(n)]), p)
    if pivots[:n] != list(range(n)) or len(pivots) < n:
        raise ShapeError("matrix is singular")
    return r_mat[:, n:].copy()


def in_span(basis: np.ndarray, v: np.ndarray, p: int) -> bool:
    return solve(basis, v, p) is not None


def is_zero(a: np.ndarray, p: int) -> bool:
    return not np.any(a % p)
