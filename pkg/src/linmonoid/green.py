"""Green's relations in a regular linear monoid.

In a regular submonoid M of M_n the relations restrict from M_n:
``a L b`` iff the row spaces agree and ``a R b`` iff the left null spaces
agree.  D is decided through idempotents: ``a`` is R-related to ``e = a x``
for any regularity witness ``x``, and two idempotents are D-related exactly
when they are conjugate by a unit.  J coincides with D in this setting and is
not implemented separately.
"""

from __future__ import annotations

from dataclasses import dataclass

from .grassmann import nullspace_of, range_of
from .linalg import Matrix, inverse, rank
from .monoid import (
    DEFAULT_RETRIES,
    MonoidElement,
    MonoidFamily,
    as_rng,
    is_regular_element,
    random_invertible_in,
    random_unit,
    span_kernel,
)

__all__ = [
    "RELATIONS",
    "GreenClass",
    "Conjugacy",
    "l_related",
    "r_related",
    "h_related",
    "d_related_ambient",
    "d_related",
    "d_conjugacy",
    "find_conjugator",
    "classify_pair",
    "idempotent_of",
    "sample_class",
]

RELATIONS = ("L", "R", "H", "D")
DEFAULT_TRIALS = 16


def _m(x) -> Matrix:
    return x.matrix if isinstance(x, MonoidElement) else x


def _members(monoid: MonoidFamily, *xs) -> list[Matrix]:
    return [monoid.element(x).matrix for x in xs]


def l_related(monoid: MonoidFamily, a, b) -> bool:
    a, b = _members(monoid, a, b)
    return range_of(a) == range_of(b)


def r_related(monoid: MonoidFamily, a, b) -> bool:
    a, b = _members(monoid, a, b)
    return nullspace_of(a) == nullspace_of(b)


def h_related(monoid: MonoidFamily, a, b) -> bool:
    a, b = _members(monoid, a, b)
    return range_of(a) == range_of(b) and nullspace_of(a) == nullspace_of(b)


def d_related_ambient(a: Matrix, b: Matrix) -> bool:
    """D in M_n: equal rank."""
    a, b = _m(a), _m(b)
    if a.shape != b.shape or not a.is_square():
        raise ValueError("need square matrices of the same size")
    return rank(a) == rank(b)


def idempotent_of(monoid: MonoidFamily, a, side: str = "right") -> Matrix:
    """An idempotent in the class of ``a``: ``a x`` (R-related) or ``x a`` (L-related)."""
    a = monoid.element(a).matrix
    x = is_regular_element(monoid, a)
    if x is None:
        raise ValueError("element is not regular in this monoid")
    if side == "right":
        return a @ x.matrix
    if side == "left":
        return x.matrix @ a
    raise ValueError("side must be 'right' or 'left'")


@dataclass
class Conjugacy:
    """Outcome of the randomized D-test.

    ``witness`` is a unit ``u`` with ``u e u^-1 = f`` when one was found.  A
    negative answer only means no invertible point turned up in ``trials``
    random samples of the linear solution space.
    """

    related: bool
    e: Matrix
    f: Matrix
    witness: Matrix | None
    trials: int
    solution_dim: int

    def __bool__(self):
        return self.related


def find_conjugator(
    monoid: MonoidFamily, e: Matrix, f: Matrix, trials: int = DEFAULT_TRIALS, seed=0
) -> Conjugacy:
    """Search for a unit ``u`` in the monoid with ``u e = f u``."""
    rng = as_rng(seed)
    space = span_kernel(monoid, lambda x: x @ e - f @ x)
    witness = None
    if space and trials > 0 and rank(e) == rank(f):
        u = random_invertible_in(space, monoid.n, rng, retries=trials)
        if u is not None:
            if u @ e @ inverse(u) != f:  # pragma: no cover - exact by construction
                raise ArithmeticError("conjugating witness failed verification")
            witness = u
    return Conjugacy(witness is not None, e, f, witness, trials, len(space))


def d_related(monoid: MonoidFamily, a, b, trials: int = DEFAULT_TRIALS, seed=0, side: str = "right") -> bool:
    return bool(d_conjugacy(monoid, a, b, trials, seed, side))


def d_conjugacy(monoid: MonoidFamily, a, b, trials: int = DEFAULT_TRIALS, seed=0, side: str = "right") -> Conjugacy:
    ea = idempotent_of(monoid, a, side)
    eb = idempotent_of(monoid, b, side)
    return find_conjugator(monoid, ea, eb, trials, seed)


def _decider(relation: str):
    return {"L": l_related, "R": r_related, "H": h_related}.get(relation)


@dataclass(frozen=True)
class GreenClass:
    relation: str
    representative: MonoidElement
    monoid: MonoidFamily

    def __post_init__(self):
        if self.relation not in RELATIONS:
            raise ValueError(f"unknown relation {self.relation!r}")
        self.monoid.element(self.representative.matrix)

    def __contains__(self, x) -> bool:
        if self.relation == "D":
            return d_related(self.monoid, self.representative, x)
        return _decider(self.relation)(self.monoid, self.representative, x)

    def sample(self, count: int, seed=0) -> list[MonoidElement]:
        return sample_class(self.monoid, self.representative, self.relation, count, seed)


def sample_class(monoid: MonoidFamily, a, relation: str, count: int, seed=0) -> list[MonoidElement]:
    """Random members of the L-, R-, H- or D-class of ``a``.

    L: ``u a``; R: ``a u``; D: ``u a v`` for random units ``u, v``.
    H: ``u a`` with ``u`` a unit commuting with an idempotent R-related to ``a``.
    """
    if relation not in RELATIONS:
        raise ValueError(f"unknown relation {relation!r}")
    a = monoid.element(a).matrix
    rng = as_rng(seed)
    out: list[MonoidElement] = []
    if count <= 0:
        return out
    if relation == "H":
        e = idempotent_of(monoid, a, "right")
        comm = span_kernel(monoid, lambda x: x @ e - e @ x)
    for _ in range(count):
        if relation == "L":
            x = random_unit(monoid, rng).matrix @ a
        elif relation == "R":
            x = a @ random_unit(monoid, rng).matrix
        elif relation == "D":
            x = random_unit(monoid, rng).matrix @ a @ random_unit(monoid, rng).matrix
        else:
            u = random_invertible_in(comm, monoid.n, rng, retries=DEFAULT_RETRIES)
            if u is None:
                raise RuntimeError("no invertible centralizing unit found")
            x = u @ a
        out.append(monoid.element(x))
    return out


def classify_pair(monoid: MonoidFamily, a, b, trials: int = DEFAULT_TRIALS, seed=0) -> dict:
    """All four verdicts for one pair, with the D witness when found."""
    conj = d_conjugacy(monoid, a, b, trials, seed)
    return {
        "L": l_related(monoid, a, b),
        "R": r_related(monoid, a, b),
        "H": h_related(monoid, a, b),
        "D": conj.related,
        "D_ambient": d_related_ambient(_m(a), _m(b)),
        "witness": conj.witness,
        "solution_dim": conj.solution_dim,
    }
