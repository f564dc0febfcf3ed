"""Centralizer Lie algebras and orbit dimensions.

Every stabilizer in play is cut out of the unit group G by a linear condition
on ``u``, and G is open in the linear span of M.  Each stabilizer is thus an
open subset of a linear subspace of span(M), and its dimension equals that of
the kernel of the condition restricted to span(M):

    centralizer C_G(e)         u e = e u        X e - e X = 0
    left centralizer C_G^l(e)  e u e = e u      e X e - e X = 0
    right centralizer C_G^r(e) e u e = u e      e X e - X e = 0

Orbit dimensions follow from orbit = group / stabilizer:

    E(D^M_e) = G . e under conjugation              dim G    - dim C
    E(L^M_e) = C^l . e under conjugation            dim C^l  - dim C
    E(R^M_e) = C^r . e under conjugation            dim C^r  - dim C
    G^l_e (ranges,  W -> W u^-1, stabilizer C^l)    dim G    - dim C^l
    G^r_e (nulls,   N -> N u^-1, stabilizer C^r)    dim G    - dim C^r

All dimensions are complex dimensions, computed exactly over Q(i).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .grassmann import subspace_to_json
from .idempotent import IdempotentPoint, as_idempotent
from .linalg import Matrix, identity, matrix_to_json, rank
from .monoid import MonoidFamily, as_rng, combine, random_scalar, span_kernel

__all__ = [
    "LieSubalgebra",
    "DimensionReport",
    "CONDITIONS",
    "lie_algebra_of_G",
    "centralizer_algebra",
    "left_centralizer_algebra",
    "right_centralizer_algebra",
    "dimension_report",
    "verify_range_null_duality",
    "verify_dimension_additivity",
    "empirical_orbit_dim",
    "ORBIT_ACTIONS",
]


def _commutator(e: Matrix) -> Callable[[Matrix], Matrix]:
    return lambda x: x @ e - e @ x


def _left_condition(e: Matrix) -> Callable[[Matrix], Matrix]:
    return lambda x: e @ x @ e - e @ x


def _right_condition(e: Matrix) -> Callable[[Matrix], Matrix]:
    return lambda x: e @ x @ e - x @ e


CONDITIONS = {
    "centralizer": _commutator,
    "left_centralizer": _left_condition,
    "right_centralizer": _right_condition,
}


@dataclass(frozen=True)
class LieSubalgebra:
    monoid: MonoidFamily
    condition: str
    basis: tuple
    idempotent: Matrix | None = None

    @property
    def dim(self) -> int:
        return len(self.basis)

    def satisfies(self, x: Matrix) -> bool:
        """Whether ``x`` lies in span(M) and meets the defining condition."""
        if x not in self.monoid:
            return False
        if self.condition == "full_group":
            return True
        return CONDITIONS[self.condition](self.idempotent)(x).is_zero()


def lie_algebra_of_G(monoid: MonoidFamily) -> LieSubalgebra:
    # G is open in the linear space M, so its tangent space at 1 is span(M)
    return LieSubalgebra(monoid, "full_group", tuple(monoid.span_basis))


def _algebra(monoid: MonoidFamily, e, condition: str) -> LieSubalgebra:
    point = as_idempotent(e, monoid)
    basis = span_kernel(monoid, CONDITIONS[condition](point.matrix))
    return LieSubalgebra(monoid, condition, tuple(basis), point.matrix)


def centralizer_algebra(monoid: MonoidFamily, e) -> LieSubalgebra:
    return _algebra(monoid, e, "centralizer")


def left_centralizer_algebra(monoid: MonoidFamily, e) -> LieSubalgebra:
    return _algebra(monoid, e, "left_centralizer")


def right_centralizer_algebra(monoid: MonoidFamily, e) -> LieSubalgebra:
    return _algebra(monoid, e, "right_centralizer")


@dataclass(frozen=True)
class DimensionReport:
    idempotent: IdempotentPoint
    dim_G: int
    dim_C: int
    dim_Cl: int
    dim_Cr: int

    @property
    def dim_E_D(self) -> int:
        return self.dim_G - self.dim_C

    @property
    def dim_E_L(self) -> int:
        return self.dim_Cl - self.dim_C

    @property
    def dim_E_R(self) -> int:
        return self.dim_Cr - self.dim_C

    @property
    def dim_Gl(self) -> int:
        return self.dim_G - self.dim_Cl

    @property
    def dim_Gr(self) -> int:
        return self.dim_G - self.dim_Cr

    @property
    def duality_holds(self) -> bool:
        """dim E(L^M_e) = dim G^r_e and dim E(R^M_e) = dim G^l_e."""
        return self.dim_E_L == self.dim_Gr and self.dim_E_R == self.dim_Gl

    @property
    def additivity_holds(self) -> bool:
        """dim E(D^M_e) = dim E(L^M_e) + dim E(R^M_e)."""
        return self.dim_E_D == self.dim_E_L + self.dim_E_R

    def fields(self) -> dict:
        return {
            "dim_G": self.dim_G,
            "dim_C": self.dim_C,
            "dim_Cl": self.dim_Cl,
            "dim_Cr": self.dim_Cr,
            "dim_E_D": self.dim_E_D,
            "dim_E_L": self.dim_E_L,
            "dim_E_R": self.dim_E_R,
            "dim_Gl": self.dim_Gl,
            "dim_Gr": self.dim_Gr,
        }

    def to_json(self) -> dict:
        out = {
            "idempotent": matrix_to_json(self.idempotent.matrix),
            "rank": self.idempotent.rank,
            "range": subspace_to_json(self.idempotent.range),
            "nullspace": subspace_to_json(self.idempotent.nullspace),
        }
        out.update(self.fields())
        out["duality_holds"] = self.duality_holds
        out["additivity_holds"] = self.additivity_holds
        return out


def dimension_report(monoid: MonoidFamily, e) -> DimensionReport:
    point = as_idempotent(e, monoid)
    return DimensionReport(
        point,
        dim_G=lie_algebra_of_G(monoid).dim,
        dim_C=centralizer_algebra(monoid, point).dim,
        dim_Cl=left_centralizer_algebra(monoid, point).dim,
        dim_Cr=right_centralizer_algebra(monoid, point).dim,
    )


def verify_range_null_duality(monoid: MonoidFamily, e) -> bool:
    return dimension_report(monoid, e).duality_holds


def verify_dimension_additivity(monoid: MonoidFamily, e) -> bool:
    r = dimension_report(monoid, e)
    # equivalent form: dim G + dim C = dim C^l + dim C^r
    return r.additivity_holds and r.dim_G + r.dim_C == r.dim_Cl + r.dim_Cr


# Linearized orbit maps at e.  Each pairs the acting Lie algebra with the
# derivative of the action at the identity:
#   conjugation  u f u^-1       ->  X e - e X
#   ranges       rng[e u^-1]    ->  e X (1 - e)   (class of -vX modulo W)
#   null spaces  nul[e u^-1]    ->  (1 - e) X e
ORBIT_ACTIONS = ("E_D", "E_L", "E_R", "Gl", "Gr")


def _orbit_setup(monoid: MonoidFamily, e: Matrix, action: str):
    comp = identity(monoid.n) - e
    if action == "E_D":
        return list(monoid.span_basis), _commutator(e)
    if action == "E_L":
        return list(left_centralizer_algebra(monoid, e).basis), _commutator(e)
    if action == "E_R":
        return list(right_centralizer_algebra(monoid, e).basis), _commutator(e)
    if action == "Gl":
        return list(monoid.span_basis), lambda x: e @ x @ comp
    if action == "Gr":
        return list(monoid.span_basis), lambda x: comp @ x @ e
    raise ValueError(f"unknown orbit action {action!r}; expected one of {ORBIT_ACTIONS}")


def empirical_orbit_dim(monoid: MonoidFamily, e, action: str = "E_D", samples: int | None = None, seed=0) -> int:
    """Orbit dimension as the rank of the linearized orbit map at ``e``.

    Independent of the kernel computations: random tangent vectors of the
    acting algebra are pushed through the derivative of the action and the
    rank of their images is taken.  With ``samples`` at least the algebra
    dimension this is the image dimension with probability one.
    """
    point = as_idempotent(e, monoid)
    domain, deriv = _orbit_setup(monoid, point.matrix, action)
    if not domain:
        return 0
    rng = as_rng(seed)
    samples = len(domain) + 4 if samples is None else samples
    n = monoid.n
    rows = []
    for _ in range(samples):
        coords = [random_scalar(rng, 3) for _ in domain]
        rows.append(deriv(combine(coords, domain, n)).entries())
    if not rows:
        return 0
    return rank(Matrix._wrap(tuple(rows), n * n))
