"""Idempotents and their conjugation orbits.

An idempotent ``e`` is the projection onto its row space ``W`` along its left
null space ``N``; the pair ``(W, N)`` determines ``e`` and satisfies
``W (+) N = K^n``.  The orbit samplers draw units from the relevant
centralizer algebra and conjugate:

* E(D^M_e): conjugates by all of G;
* E(L^M_e): conjugates by the left centralizer ``{u : e u e = e u}``;
* E(R^M_e): conjugates by the right centralizer ``{u : e u e = u e}``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Sequence

from .exact import ONE, ZERO
from .grassmann import (
    Subspace,
    is_direct_sum,
    nullspace_of,
    range_of,
    subspace_from_json,
    subspace_from_rows,
    subspace_to_json,
)
from .linalg import Matrix, det, inverse, matrix_from_json, matrix_to_json, stack
from .monoid import (
    DEFAULT_RETRIES,
    MonoidElement,
    MonoidFamily,
    NotInMonoidError,
    SamplingError,
    as_rng,
    random_invertible_in,
    random_scalar,
    random_unit,
)

__all__ = [
    "IdempotentPoint",
    "NotIdempotentError",
    "as_idempotent",
    "make_projection",
    "standard_idempotent",
    "standard_idempotents",
    "conjugate",
    "sample_E_L",
    "sample_E_R",
    "sample_E_D",
    "sample_ambient_E_L",
    "sample_ambient_E_R",
    "transport_class",
    "random_idempotent",
    "idempotent_to_json",
    "idempotent_from_json",
]


class NotIdempotentError(ValueError):
    pass


@dataclass(frozen=True)
class IdempotentPoint:
    matrix: Matrix
    rank: int
    range: Subspace
    nullspace: Subspace

    @classmethod
    def from_matrix(cls, e: Matrix) -> "IdempotentPoint":
        if not e.is_square():
            raise NotIdempotentError(f"idempotent must be square, got {e.shape}")
        if e @ e != e:
            raise NotIdempotentError(f"matrix is not idempotent:\n{e.pretty()}")
        w, n = range_of(e), nullspace_of(e)
        # always true for e e = e; kept as a guard on the invariant
        assert is_direct_sum(w, n)
        return cls(e, w.dim, w, n)

    @property
    def n(self) -> int:
        return self.matrix.rows


def as_idempotent(e, monoid: MonoidFamily | None = None) -> IdempotentPoint:
    """Coerce a Matrix, MonoidElement or IdempotentPoint, checking e e = e and membership."""
    if isinstance(e, MonoidElement):
        e = e.matrix
    point = e if isinstance(e, IdempotentPoint) else IdempotentPoint.from_matrix(e)
    if monoid is not None and point.matrix not in monoid:
        raise NotInMonoidError(f"idempotent is not in the monoid:\n{point.matrix.pretty()}")
    return point


def make_projection(w: Subspace, n: Subspace) -> IdempotentPoint:
    """The idempotent with row space ``w`` and left null space ``n``.

    With ``B`` the stacked bases, ``B e = [W; 0]`` so ``e = B^-1 [W; 0]``.
    """
    if not is_direct_sum(w, n):
        raise ValueError("range and null space are not complementary")
    size = w.ambient
    b = stack(w.basis, n.basis)
    target = stack(w.basis, Matrix._wrap(tuple((ZERO,) * size for _ in range(n.dim)), size))
    e = inverse(b) @ target
    return IdempotentPoint(e, w.dim, w, n)


def _diag_idempotent(size: int, ones: Sequence[int]) -> Matrix:
    on = set(ones)
    return Matrix._wrap(
        tuple(tuple(ONE if (i == j and i in on) else ZERO for j in range(size)) for i in range(size)), size
    )


def standard_idempotent(monoid: MonoidFamily, which) -> IdempotentPoint:
    """Canonical diagonal idempotent selected by ``which``.

    full: ``which`` is the rank k, giving diag(I_k, 0).
    blocks: ``which`` lists one rank per block, each block getting diag(I_r, 0).
    span: ``which`` must be an explicit idempotent matrix of the family.
    """
    n = monoid.n
    if monoid.tag == "full":
        k = int(which)
        if not 0 <= k <= n:
            raise ValueError(f"rank {k} out of range for n={n}")
        return IdempotentPoint.from_matrix(_diag_idempotent(n, range(k)))
    if monoid.tag == "blocks":
        ranks = tuple(int(r) for r in which)
        if len(ranks) != len(monoid.blocks):
            raise ValueError(f"need one rank per block {list(monoid.blocks)}, got {list(ranks)}")
        ones = []
        off = 0
        for r, size in zip(ranks, monoid.blocks):
            if not 0 <= r <= size:
                raise ValueError(f"rank {r} out of range for block of size {size}")
            ones.extend(range(off, off + r))
            off += size
        return IdempotentPoint.from_matrix(_diag_idempotent(n, ones))
    if isinstance(which, Matrix):
        return as_idempotent(which, monoid)
    raise ValueError("span families have no standard idempotents; pass an idempotent matrix")


def standard_idempotents(monoid: MonoidFamily) -> list[IdempotentPoint]:
    """Every standard idempotent of a full or block family (empty for span families)."""
    if monoid.tag == "full":
        return [standard_idempotent(monoid, k) for k in range(monoid.n + 1)]
    if monoid.tag == "blocks":
        specs = [()]
        for size in monoid.blocks:
            specs = [s + (r,) for s in specs for r in range(size + 1)]
        return [standard_idempotent(monoid, s) for s in specs]
    return []


def conjugate(u, f, monoid: MonoidFamily | None = None) -> IdempotentPoint:
    """``u f u^-1``; with a monoid given, ``u`` and ``u^-1`` must both lie in it."""
    u = u.matrix if isinstance(u, MonoidElement) else u
    f = as_idempotent(f)
    if det(u).is_zero():
        raise ValueError("conjugating matrix is not a unit")
    uinv = inverse(u)
    if monoid is not None and (u not in monoid or uinv not in monoid):
        raise NotInMonoidError("conjugating unit is not in the monoid's unit group")
    g = u @ f.matrix @ uinv
    return IdempotentPoint.from_matrix(g)


def _sample_by(basis, monoid: MonoidFamily, e: IdempotentPoint, count: int, seed) -> list[IdempotentPoint]:
    rng = as_rng(seed)
    out = []
    for _ in range(count):
        u = random_invertible_in(basis, monoid.n, rng, retries=DEFAULT_RETRIES)
        if u is None:
            raise SamplingError("no invertible point found in the centralizer algebra")
        out.append(conjugate(u, e))
    return out


def sample_E_L(monoid: MonoidFamily, e, count: int, seed=0) -> list[IdempotentPoint]:
    """Idempotents L-related to ``e`` in the monoid, as ``u e u^-1`` with ``e u e = e u``."""
    from .lie import left_centralizer_algebra

    point = as_idempotent(e, monoid)
    if count <= 0:
        return []
    return _sample_by(left_centralizer_algebra(monoid, point).basis, monoid, point, count, seed)


def sample_E_R(monoid: MonoidFamily, e, count: int, seed=0) -> list[IdempotentPoint]:
    from .lie import right_centralizer_algebra

    point = as_idempotent(e, monoid)
    if count <= 0:
        return []
    return _sample_by(right_centralizer_algebra(monoid, point).basis, monoid, point, count, seed)


def sample_E_D(monoid: MonoidFamily, e, count: int, seed=0) -> list[IdempotentPoint]:
    point = as_idempotent(e, monoid)
    rng = as_rng(seed)
    return [conjugate(random_unit(monoid, rng), point) for _ in range(max(count, 0))]


def _random_complement(w: Subspace, rng: random.Random, bound: int = 2) -> Subspace:
    size = w.ambient
    for _ in range(DEFAULT_RETRIES):
        rows = Matrix([[random_scalar(rng, bound) for _ in range(size)] for _ in range(size - w.dim)], cols=size)
        cand = subspace_from_rows(rows)
        if is_direct_sum(w, cand):
            return cand
    raise SamplingError("no complementary subspace found")


def sample_ambient_E_L(e, count: int, seed=0) -> list[IdempotentPoint]:
    """Idempotents of M_n with the same range as ``e``: fixed W, random complements N."""
    point = as_idempotent(e)
    rng = as_rng(seed)
    return [make_projection(point.range, _random_complement(point.range, rng)) for _ in range(max(count, 0))]


def sample_ambient_E_R(e, count: int, seed=0) -> list[IdempotentPoint]:
    """Idempotents of M_n with the same null space as ``e``: fixed N, random complements W."""
    point = as_idempotent(e)
    rng = as_rng(seed)
    return [make_projection(_random_complement(point.nullspace, rng), point.nullspace) for _ in range(max(count, 0))]


def random_idempotent(monoid: MonoidFamily, seed=0) -> IdempotentPoint:
    """A random idempotent of the monoid.

    Full and block families: a standard idempotent of random shape conjugated by
    a random unit.  Span families: ``a x`` for a random element ``a`` and a
    regularity witness ``x``.
    """
    from .green import idempotent_of
    from .monoid import sample_singular_friendly

    rng = as_rng(seed)
    standard = standard_idempotents(monoid)
    if standard:
        e = standard[rng.randrange(len(standard))]
        return conjugate(random_unit(monoid, rng), e)
    a = sample_singular_friendly(monoid, rng)
    return IdempotentPoint.from_matrix(idempotent_of(monoid, a))


def transport_class(u, xs: Sequence) -> list[Matrix]:
    """Conjugate every element of ``xs`` by the unit ``u``."""
    u = u.matrix if isinstance(u, MonoidElement) else u
    uinv = inverse(u)
    return [u @ (x.matrix if isinstance(x, MonoidElement) else x) @ uinv for x in xs]


def idempotent_to_json(p: IdempotentPoint) -> dict:
    return {
        "matrix": matrix_to_json(p.matrix),
        "rank": p.rank,
        "range": subspace_to_json(p.range),
        "nullspace": subspace_to_json(p.nullspace),
    }


def idempotent_from_json(obj) -> IdempotentPoint:
    """Load and re-validate; cached subspaces must match the matrix."""
    if isinstance(obj, list):
        return IdempotentPoint.from_matrix(matrix_from_json(obj))
    p = IdempotentPoint.from_matrix(matrix_from_json(obj["matrix"]))
    if "rank" in obj and int(obj["rank"]) != p.rank:
        raise ValueError("stored rank does not match the matrix")
    for key, sub in (("range", p.range), ("nullspace", p.nullspace)):
        if key in obj and subspace_from_json(obj[key]) != sub:
            raise ValueError(f"stored {key} does not match the matrix")
    return p
