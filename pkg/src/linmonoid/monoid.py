"""Linearly defined submonoids of M_n and their unit groups.

A monoid here is a linear subspace of M_n that contains the identity and is
closed under multiplication, i.e. a unital subalgebra.  Membership, regularity
(``a x a = a`` is linear in ``x``) and every centralizer condition then reduce
to exact linear solves.

For such a monoid an invertible member ``u`` always has ``u^-1`` in the span:
by Cayley-Hamilton ``u^-1`` is a polynomial in ``u``.  The unit group is
therefore ``M`` intersected with ``GL_n``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

from .exact import ZERO, Scalar
from .linalg import (
    Matrix,
    det,
    identity,
    inverse,
    left_kernel,
    matrix_from_json,
    matrix_to_json,
    rank,
    rref,
    solve_linear,
)

__all__ = [
    "MonoidError",
    "NotInMonoidError",
    "SamplingError",
    "MonoidFamily",
    "MonoidElement",
    "RegularityReport",
    "make_full",
    "make_block_diagonal",
    "make_span",
    "contains",
    "is_unit",
    "random_element",
    "random_unit",
    "random_scalar",
    "random_invertible_in",
    "combine",
    "span_kernel",
    "is_regular_element",
    "spot_check_regularity",
    "monoid_to_json",
    "monoid_from_json",
    "as_rng",
]

DEFAULT_RETRIES = 32


class MonoidError(ValueError):
    """Invalid monoid description (closure, identity or independence failure)."""


class NotInMonoidError(ValueError):
    pass


class SamplingError(RuntimeError):
    """A random search for an invertible point ran out of retries."""


def as_rng(seed) -> random.Random:
    if isinstance(seed, random.Random):
        return seed
    return random.Random(seed)


def _vec(m: Matrix) -> tuple:
    return m.entries()


def _unvec(v: Sequence[Scalar], n: int) -> Matrix:
    return Matrix._wrap(tuple(tuple(v[i * n:(i + 1) * n]) for i in range(n)), n)


def combine(coords: Sequence, basis: Sequence[Matrix], n: int) -> Matrix:
    """``sum(c_i * B_i)``."""
    acc = [ZERO] * (n * n)
    for c, b in zip(coords, basis):
        if c.is_zero():
            continue
        for k, x in enumerate(_vec(b)):
            if not x.is_zero():
                acc[k] = acc[k] + c * x
    return _unvec(acc, n)


@dataclass(frozen=True)
class MonoidElement:
    matrix: Matrix
    coordinates: tuple

    def __matmul__(self, other):
        other = other.matrix if isinstance(other, MonoidElement) else other
        return self.matrix @ other


@dataclass(frozen=True, eq=False)
class MonoidFamily:
    """A unital subalgebra of M_n given by a linear basis.

    ``tag`` is ``"full"``, ``"blocks"`` or ``"span"``; ``blocks`` holds the
    partition for block-diagonal families.
    """

    n: int
    tag: str
    span_basis: tuple
    blocks: tuple | None = None
    _pivots: tuple = field(default=(), repr=False)
    _coord_inv: Matrix | None = field(default=None, repr=False)

    def __post_init__(self):
        vecs = Matrix._wrap(tuple(_vec(b) for b in self.span_basis), self.n * self.n)
        _, pivots, r = rref(vecs)
        if r != len(self.span_basis):
            raise MonoidError("span basis is linearly dependent")
        # coordinates are read off the pivot entries: c = x[P] . (B[:, P])^-1
        sub = Matrix._wrap(tuple(tuple(v[p] for p in pivots) for v in vecs._data), r)
        object.__setattr__(self, "_pivots", pivots)
        object.__setattr__(self, "_coord_inv", inverse(sub) if r else sub)

    @property
    def dim(self) -> int:
        return len(self.span_basis)

    def __len__(self):
        return self.dim

    def contains(self, x: Matrix) -> MonoidElement | None:
        return contains(self, x)

    def __contains__(self, x) -> bool:
        x = x.matrix if isinstance(x, MonoidElement) else x
        return contains(self, x) is not None

    def element(self, x) -> MonoidElement:
        """Coerce to a MonoidElement, raising NotInMonoidError if outside."""
        if isinstance(x, MonoidElement):
            return x
        el = contains(self, x)
        if el is None:
            raise NotInMonoidError(f"matrix is not in the monoid:\n{x.pretty()}")
        return el

    def __repr__(self):
        extra = f", blocks={list(self.blocks)}" if self.blocks else ""
        return f"MonoidFamily({self.tag}, n={self.n}, dim={self.dim}{extra})"


def _unit_matrix(n: int, i: int, j: int) -> Matrix:
    from .exact import ONE

    return Matrix._wrap(
        tuple(tuple(ONE if (r, c) == (i, j) else ZERO for c in range(n)) for r in range(n)), n
    )


def make_full(n: int) -> MonoidFamily:
    if n < 1:
        raise MonoidError("n must be positive")
    basis = tuple(_unit_matrix(n, i, j) for i in range(n) for j in range(n))
    return MonoidFamily(n, "full", basis)


def make_block_diagonal(partition: Sequence[int]) -> MonoidFamily:
    partition = tuple(int(p) for p in partition)
    if not partition or any(p < 1 for p in partition):
        raise MonoidError("block sizes must be positive")
    n = sum(partition)
    basis = []
    off = 0
    for p in partition:
        for i in range(p):
            for j in range(p):
                basis.append(_unit_matrix(n, off + i, off + j))
        off += p
    return MonoidFamily(n, "blocks", tuple(basis), blocks=partition)


def make_span(basis: Sequence[Matrix]) -> MonoidFamily:
    """Validate a user basis: square, independent, contains 1, closed under products."""
    basis = tuple(basis)
    if not basis:
        raise MonoidError("empty basis")
    n = basis[0].rows
    for k, b in enumerate(basis):
        if b.shape != (n, n):
            raise MonoidError(f"basis element {k} has shape {b.shape}, expected {(n, n)}")
    fam = MonoidFamily(n, "span", basis)
    if contains(fam, identity(n)) is None:
        raise MonoidError("identity matrix is not in the span")
    for i, bi in enumerate(basis):
        for j, bj in enumerate(basis):
            if contains(fam, bi @ bj) is None:
                raise MonoidError(
                    f"not closed under multiplication: basis[{i}] @ basis[{j}] =\n"
                    f"{(bi @ bj).pretty()}\nlies outside the span"
                )
    return fam


def contains(monoid: MonoidFamily, x: Matrix) -> MonoidElement | None:
    n = monoid.n
    if x.shape != (n, n):
        raise ValueError(f"expected a {n}x{n} matrix, got {x.shape}")
    v = _vec(x)
    picked = [v[p] for p in monoid._pivots]
    inv = monoid._coord_inv
    coords = []
    for j in range(monoid.dim):
        acc = ZERO
        for i, y in enumerate(picked):
            if not y.is_zero():
                acc = acc + y * inv[i, j]
        coords.append(acc)
    if combine(coords, monoid.span_basis, n) != x:
        return None
    return MonoidElement(x, tuple(coords))


def is_unit(monoid: MonoidFamily, x) -> bool:
    x = x.matrix if isinstance(x, MonoidElement) else x
    if contains(monoid, x) is None:
        return False
    return not det(x).is_zero()


def random_scalar(rng: random.Random, bound: int = 2, gaussian: bool = True) -> Scalar:
    """Random element of the box ``p/q + (r/s) i`` with ``|p|,|r| <= bound``, ``1 <= q,s <= bound``."""
    re_ = Fraction(rng.randint(-bound, bound), rng.randint(1, bound))
    im_ = Fraction(rng.randint(-bound, bound), rng.randint(1, bound)) if gaussian else 0
    return Scalar(re_, im_)


def random_element(monoid: MonoidFamily, seed=None, bound: int = 2, gaussian: bool = True) -> MonoidElement:
    rng = as_rng(seed)
    coords = tuple(random_scalar(rng, bound, gaussian) for _ in range(monoid.dim))
    return MonoidElement(combine(coords, monoid.span_basis, monoid.n), coords)


def random_invertible_in(
    basis: Sequence[Matrix],
    n: int,
    seed=None,
    bound: int = 2,
    retries: int = DEFAULT_RETRIES,
    gaussian: bool = True,
) -> Matrix | None:
    """Random invertible combination of ``basis``, or None after ``retries`` misses.

    An invertible member exists iff det is not identically zero on the span;
    random points miss the zero set of det generically.
    """
    rng = as_rng(seed)
    if not basis:
        return None
    for _ in range(retries):
        coords = [random_scalar(rng, bound, gaussian) for _ in basis]
        m = combine(coords, basis, n)
        if not det(m).is_zero():
            return m
    return None


def random_unit(
    monoid: MonoidFamily, seed=None, bound: int = 2, retries: int = DEFAULT_RETRIES, gaussian: bool = True
) -> MonoidElement:
    rng = as_rng(seed)
    for _ in range(retries):
        el = random_element(monoid, rng, bound, gaussian)
        if not det(el.matrix).is_zero():
            return el
    raise SamplingError(f"no invertible element found in {retries} samples of {monoid!r}")


def span_kernel(monoid: MonoidFamily, linear_map: Callable[[Matrix], Matrix]) -> list[Matrix]:
    """Basis of ``{X in span(M) : linear_map(X) = 0}``.

    ``linear_map`` must be K-linear; it is evaluated on the span basis only.
    """
    rows = tuple(_vec(linear_map(b)) for b in monoid.span_basis)
    coeffs = left_kernel(Matrix._wrap(rows, len(rows[0])))
    return [combine(c, monoid.span_basis, monoid.n) for c in coeffs._data]


def image_rank(monoid_basis: Sequence[Matrix], linear_map: Callable[[Matrix], Matrix]) -> int:
    """Dimension of ``linear_map(span(basis))``."""
    rows = tuple(_vec(linear_map(b)) for b in monoid_basis)
    if not rows:
        return 0
    return rank(Matrix._wrap(rows, len(rows[0])))


def is_regular_element(monoid: MonoidFamily, a) -> MonoidElement | None:
    """Some ``x`` in the monoid with ``a x a = a``, or None."""
    a = monoid.element(a).matrix
    n = monoid.n
    # unknown coefficients c: sum_i c_i vec(a B_i a) = vec(a)
    cols = [_vec(a @ b @ a) for b in monoid.span_basis]
    system = Matrix._wrap(tuple(tuple(col[k] for col in cols) for k in range(n * n)), monoid.dim)
    sol, _ = solve_linear(system, _vec(a))
    if sol is None:
        return None
    x = combine(sol, monoid.span_basis, n)
    if a @ x @ a != a:  # pragma: no cover - solve_linear is exact
        raise ArithmeticError("regularity witness failed verification")
    return MonoidElement(x, tuple(sol))


@dataclass
class RegularityReport:
    trials: int
    regular: int
    failures: list = field(default_factory=list)

    @property
    def fraction(self) -> float:
        return 1.0 if self.trials == 0 else self.regular / self.trials

    def to_json(self) -> dict:
        return {
            "trials": self.trials,
            "regular": self.regular,
            "fraction": self.fraction,
            "failures": [matrix_to_json(m) for m in self.failures],
        }


def sample_singular_friendly(monoid: MonoidFamily, rng: random.Random, bound: int = 2) -> Matrix:
    """Random ``u s v`` where ``s`` is a random element or a random span basis element.

    Plain random elements are units almost surely; multiplying a (typically
    singular) basis element by units reaches lower-rank classes as well.
    """
    if rng.random() < 0.25:
        s = random_element(monoid, rng, bound).matrix
    else:
        s = monoid.span_basis[rng.randrange(monoid.dim)]
        if rng.random() < 0.5:
            s = s @ monoid.span_basis[rng.randrange(monoid.dim)]
    u = random_unit(monoid, rng, bound).matrix
    v = random_unit(monoid, rng, bound).matrix
    return u @ s @ v


def spot_check_regularity(monoid: MonoidFamily, trials: int = 100, seed=0) -> RegularityReport:
    rng = as_rng(seed)
    report = RegularityReport(trials, 0)
    for _ in range(trials):
        a = sample_singular_friendly(monoid, rng)
        x = is_regular_element(monoid, a)
        if x is not None and a @ x.matrix @ a == a:
            report.regular += 1
        else:
            report.failures.append(a)
    return report


# -- JSON --------------------------------------------------------------------


def monoid_to_json(monoid: MonoidFamily) -> dict:
    out = {"family": monoid.tag, "n": monoid.n}
    if monoid.tag == "blocks":
        out["blocks"] = list(monoid.blocks)
    if monoid.tag == "span":
        out["basis"] = [matrix_to_json(b) for b in monoid.span_basis]
    return out


def monoid_from_json(obj: dict) -> MonoidFamily:
    family = obj.get("family")
    if family == "full":
        return make_full(int(obj["n"]))
    if family == "blocks":
        fam = make_block_diagonal(obj["blocks"])
        if "n" in obj and int(obj["n"]) != fam.n:
            raise MonoidError(f"blocks {obj['blocks']} do not sum to n={obj['n']}")
        return fam
    if family == "span":
        fam = make_span([matrix_from_json(b) for b in obj["basis"]])
        if "n" in obj and int(obj["n"]) != fam.n:
            raise MonoidError(f"basis matrices are {fam.n}x{fam.n}, not n={obj['n']}")
        return fam
    raise MonoidError(f"unknown monoid family {family!r}")
