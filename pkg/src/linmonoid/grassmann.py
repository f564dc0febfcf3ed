"""Subspaces of row-vector space K^n in canonical (RREF) form.

A ``Subspace`` is a point of the Grassmannian of k-planes in K^n.  The basis
is kept in reduced row echelon form without zero rows, so two subspaces are
equal exactly when their basis matrices are identical.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .linalg import Matrix, identity, left_kernel, matrix_from_json, matrix_to_json, rank, rref, stack

__all__ = [
    "Subspace",
    "subspace_from_rows",
    "range_of",
    "nullspace_of",
    "is_direct_sum",
    "grassmann_dim",
    "sample_orbit_ranges",
    "subspace_to_json",
    "subspace_from_json",
]


@dataclass(frozen=True)
class Subspace:
    ambient: int
    basis: Matrix

    def __post_init__(self):
        if self.basis.cols != self.ambient:
            raise ValueError("basis width must equal the ambient dimension")

    @property
    def dim(self) -> int:
        return self.basis.rows

    def contains(self, v) -> bool:
        """Membership of a row vector (or every row of a matrix)."""
        rows = v if isinstance(v, Matrix) else Matrix([v])
        if rows.rows == 0:
            return True
        return rank(stack(self.basis, rows)) == self.dim

    def __le__(self, other: "Subspace") -> bool:
        return other.contains(self.basis)

    def __repr__(self):
        return f"Subspace(ambient={self.ambient}, dim={self.dim}, basis={self.basis!r})"


def subspace_from_rows(p: Matrix) -> Subspace:
    """The subspace generated by the rows of ``p``."""
    reduced, _, k = rref(p)
    return Subspace(p.cols, Matrix._wrap(reduced._data[:k], p.cols))


def range_of(x: Matrix) -> Subspace:
    return subspace_from_rows(x)


def nullspace_of(x: Matrix) -> Subspace:
    # left_kernel already returns an RREF basis
    return Subspace(x.rows, left_kernel(x))


def is_direct_sum(w: Subspace, n: Subspace) -> bool:
    if w.ambient != n.ambient:
        raise ValueError(f"ambient mismatch: {w.ambient} vs {n.ambient}")
    if w.dim + n.dim != w.ambient:
        return False
    return rank(stack(w.basis, n.basis)) == w.ambient


def grassmann_dim(n: int, k: int) -> int:
    if not 0 <= k <= n:
        raise ValueError("need 0 <= k <= n")
    return k * (n - k)


def sample_orbit_ranges(monoid, b: Matrix, trials: int, seed=0) -> set[Subspace]:
    """Sampled ranges ``rng[b u]`` over random units ``u`` of the monoid.

    This samples the set of row spaces of the right class ``bG``.  It is a
    sampler: orbits are generally infinite and duplicates collapse.
    """
    from .monoid import NotInMonoidError, random_unit

    if monoid.contains(b) is None:
        raise NotInMonoidError("b is not in the monoid")
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    out = set()
    for _ in range(trials):
        u = random_unit(monoid, rng).matrix
        out.add(range_of(b @ u))
    return out


def full_space(n: int) -> Subspace:
    return Subspace(n, identity(n))


def subspace_to_json(s: Subspace) -> dict:
    return {"ambient": s.ambient, "basis": matrix_to_json(s.basis)}


def subspace_from_json(obj: dict) -> Subspace:
    n = int(obj["ambient"])
    basis = obj.get("basis") or []
    m = matrix_from_json(basis) if basis else Matrix([], cols=n)
    if m.cols != n:
        raise ValueError("basis width must equal the ambient dimension")
    # re-canonicalize so arbitrary spanning rows are accepted
    return subspace_from_rows(m)
