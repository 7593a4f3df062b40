"""Linear matrix structures and their vectorization machinery.

A structure is a linear subspace of real n-by-n matrices described by an
ordered basis S_1, ..., S_r.  A member A of the subspace is identified by
its coordinate vector alpha through A = sum_l alpha_l * S_l.  The n^2-by-r
pattern matrix P, whose columns are the column-major vectorizations of the
basis matrices, links the two representations:

    vec(A) = P @ alpha

Built-in structure kinds use sparse {-1, 0, 1} basis matrices with disjoint
supports, so P has orthogonal columns and coordinate extraction is exact.
Custom bases only need linear independence, which is checked on load.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

import numpy as np

__all__ = [
    "BUILTIN_KINDS",
    "DEFAULT_MEMBERSHIP_TOL",
    "StructureBasis",
    "StructureMembershipError",
    "StructuredMatrix",
    "build_basis",
    "builtin_dimension",
    "coords_of",
    "load_custom_basis",
    "realize",
    "vec",
]

DEFAULT_MEMBERSHIP_TOL = 1e-10


class StructureMembershipError(ValueError):
    """Raised when a matrix does not lie in the claimed structure subspace."""


def _frozen(a: np.ndarray) -> np.ndarray:
    out = np.array(a, dtype=float, copy=True)
    out.flags.writeable = False
    return out


def vec(a: np.ndarray) -> np.ndarray:
    """Stack the columns of a matrix into a single vector (column-major)."""
    return np.asarray(a, dtype=float).reshape(-1, order="F")


@dataclass(frozen=True, eq=False)
class StructureBasis:
    """An ordered basis of a linear subspace of n-by-n matrices.

    Attributes
    ----------
    kind : str
        One of the built-in structure tags, or ``"custom"``.
    n : int
        Matrix order.
    r : int
        Subspace dimension, ``len(matrices)``.
    matrices : tuple of ndarray
        The basis matrices S_1, ..., S_r, each n-by-n and read-only.
    pattern : ndarray
        The n^2-by-r matrix P with columns vec(S_l), read-only.
    """

    kind: str
    n: int
    r: int
    matrices: tuple = field(repr=False)
    pattern: np.ndarray = field(repr=False)

    @cached_property
    def pattern_pinv(self) -> np.ndarray:
        """Pseudoinverse of the pattern matrix, cached for repeated extraction."""
        return np.linalg.pinv(self.pattern)


@dataclass(frozen=True, eq=False)
class StructuredMatrix:
    """A matrix certified to lie in a structure subspace.

    Carries the basis it was built against, the coordinate vector, and the
    realized dense matrix, so vec(dense) = basis.pattern @ coords holds by
    construction.
    """

    basis: StructureBasis
    coords: np.ndarray = field(repr=False)
    dense: np.ndarray = field(repr=False)


def _single_entry(n: int, i: int, j: int) -> np.ndarray:
    m = np.zeros((n, n))
    m[i, j] = 1.0
    return m


def _paired_entry(n: int, i: int, j: int, sign: float) -> np.ndarray:
    m = np.zeros((n, n))
    m[i, j] = 1.0
    m[j, i] = sign
    return m


def _symmetric_basis(n):
    # upper triangle, column-major: (0,0), (0,1), (1,1), (0,2), ...
    out = []
    for j in range(n):
        for i in range(j + 1):
            out.append(_single_entry(n, i, i) if i == j else _paired_entry(n, i, j, 1.0))
    return out


def _skew_basis(n):
    # strict upper triangle, row-major: (0,1), (0,2), ..., (1,2), ...
    return [_paired_entry(n, i, j, -1.0) for i in range(n) for j in range(i + 1, n)]


def _band_basis(n, offsets):
    out = []
    for d in offsets:
        lo, hi = max(0, -d), n - max(0, d)
        out.extend(_single_entry(n, i, i + d) for i in range(lo, hi))
    return out


def _symmetric_tridiagonal_basis(n):
    out = [_single_entry(n, i, i) for i in range(n)]
    out.extend(_paired_entry(n, i, i + 1, 1.0) for i in range(n - 1))
    return out


def _hankel_basis(n):
    # one matrix per anti-diagonal i + j = s, from the top-left corner down
    out = []
    for s in range(2 * n - 1):
        m = np.zeros((n, n))
        for i in range(max(0, s - n + 1), min(n, s + 1)):
            m[i, s - i] = 1.0
        out.append(m)
    return out


def _toeplitz_basis(n):
    # one matrix per diagonal j - i = d, from the bottom-left corner up
    out = []
    for d in range(-(n - 1), n):
        m = np.zeros((n, n))
        lo, hi = max(0, -d), n - max(0, d)
        for i in range(lo, hi):
            m[i, i + d] = 1.0
        out.append(m)
    return out


_BUILDERS = {
    "symmetric": _symmetric_basis,
    "skew_symmetric": _skew_basis,
    "tridiagonal": lambda n: _band_basis(n, (0, 1, -1)),
    "symmetric_tridiagonal": _symmetric_tridiagonal_basis,
    "pentadiagonal": lambda n: _band_basis(n, (0, 1, -1, 2, -2)),
    "hankel": _hankel_basis,
    "toeplitz": _toeplitz_basis,
    "diagonal": lambda n: [_single_entry(n, i, i) for i in range(n)],
    "full": lambda n: [_single_entry(n, i, j) for j in range(n) for i in range(n)],
}

_DIMENSION = {
    "symmetric": lambda n: n * (n + 1) // 2,
    "skew_symmetric": lambda n: n * (n - 1) // 2,
    "tridiagonal": lambda n: 3 * n - 2,
    "symmetric_tridiagonal": lambda n: 2 * n - 1,
    "pentadiagonal": lambda n: 5 * n - 6,
    "hankel": lambda n: 2 * n - 1,
    "toeplitz": lambda n: 2 * n - 1,
    "diagonal": lambda n: n,
    "full": lambda n: n * n,
}

# smallest n for which the dimension formula yields a nonempty basis
_MIN_ORDER = {"skew_symmetric": 2, "pentadiagonal": 3}

BUILTIN_KINDS = tuple(_BUILDERS)


def builtin_dimension(kind: str, n: int) -> int:
    """Closed-form subspace dimension of a built-in kind at order n."""
    if kind not in _DIMENSION:
        raise ValueError(f"unknown structure kind {kind!r}")
    return _DIMENSION[kind](n)


def build_basis(kind: str, n: int) -> StructureBasis:
    """Construct the canonical basis of a built-in structure kind.

    Parameters
    ----------
    kind : str
        One of ``BUILTIN_KINDS``.  The tag ``"custom"`` is rejected here;
        user-supplied bases go through :func:`load_custom_basis`.
    n : int
        Matrix order, at least 1 (2 for skew_symmetric, 3 for pentadiagonal).

    Returns
    -------
    StructureBasis
    """
    if kind == "custom":
        raise ValueError("custom bases are loaded from explicit matrices, use load_custom_basis")
    if kind not in _BUILDERS:
        known = ", ".join(sorted(_BUILDERS))
        raise ValueError(f"unknown structure kind {kind!r}, expected one of: {known}")
    least = _MIN_ORDER.get(kind, 1)
    if n < least:
        raise ValueError(f"structure kind {kind!r} needs n >= {least}, got n = {n}")
    mats = tuple(_frozen(m) for m in _BUILDERS[kind](n))
    pattern = _frozen(np.column_stack([vec(m) for m in mats]))
    return StructureBasis(kind=kind, n=n, r=len(mats), matrices=mats, pattern=pattern)


def load_custom_basis(matrices: Sequence[np.ndarray]) -> StructureBasis:
    """Wrap user-supplied basis matrices after checking linear independence.

    Parameters
    ----------
    matrices : sequence of ndarray
        Nonempty list of square matrices of a common order.

    Returns
    -------
    StructureBasis
        With ``kind="custom"``.

    Raises
    ------
    ValueError
        On empty input, shape mismatch, or linearly dependent matrices.
    """
    if len(matrices) == 0:
        raise ValueError("custom basis needs at least one matrix")
    mats = [np.asarray(m, dtype=float) for m in matrices]
    n = mats[0].shape[0] if mats[0].ndim == 2 else -1
    for idx, m in enumerate(mats):
        if m.ndim != 2 or m.shape != (n, n):
            raise ValueError(f"basis matrix {idx} is not {n}x{n}, got shape {m.shape}")
    pattern = np.column_stack([vec(m) for m in mats])
    sv = np.linalg.svd(pattern, compute_uv=False)
    cutoff = np.finfo(float).eps * max(pattern.shape) * sv[0]
    rank = int(np.count_nonzero(sv > cutoff))
    if rank < len(mats):
        raise ValueError(
            f"custom basis matrices are linearly dependent, rank {rank} < {len(mats)}"
        )
    return StructureBasis(
        kind="custom",
        n=n,
        r=len(mats),
        matrices=tuple(_frozen(m) for m in mats),
        pattern=_frozen(pattern),
    )


def realize(basis: StructureBasis, coords: np.ndarray) -> StructuredMatrix:
    """Realize the dense matrix sum_l coords_l * S_l as a StructuredMatrix."""
    coords = np.asarray(coords, dtype=float)
    if coords.shape != (basis.r,):
        raise ValueError(f"expected {basis.r} coordinates, got shape {coords.shape}")
    dense = (basis.pattern @ coords).reshape((basis.n, basis.n), order="F")
    return StructuredMatrix(basis=basis, coords=_frozen(coords), dense=_frozen(dense))


def coords_of(basis: StructureBasis, a: np.ndarray, tol: float = DEFAULT_MEMBERSHIP_TOL) -> np.ndarray:
    """Extract the coordinate vector of a matrix in the structure subspace.

    Solves vec(a) = P @ coords in the least-squares sense, then verifies the
    reconstruction residual so matrices outside the subspace are rejected.

    Raises
    ------
    StructureMembershipError
        If ||P @ coords - vec(a)||_2 > tol * max(1, ||a||_F).
    """
    a = np.asarray(a, dtype=float)
    if a.shape != (basis.n, basis.n):
        raise ValueError(f"expected a {basis.n}x{basis.n} matrix, got shape {a.shape}")
    v = vec(a)
    coords = basis.pattern_pinv @ v
    gap = np.linalg.norm(basis.pattern @ coords - v)
    if gap > tol * max(1.0, np.linalg.norm(a, "fro")):
        raise StructureMembershipError(
            f"matrix is not {basis.kind} within tolerance "
            f"(reconstruction gap {gap:.3e}, tol {tol:.1e})"
        )
    return coords
