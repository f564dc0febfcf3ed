"""Randomized property suite run by ``linmonoid verify``.

Each property receives a monoid family, a trial count and a seeded RNG and
returns None on success or a short failure description.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable

from .exact import format_scalar, parse_scalar
from .grassmann import is_direct_sum, nullspace_of, range_of, subspace_from_rows
from .green import d_related, find_conjugator, h_related, l_related, r_related, sample_class
from .idempotent import (
    conjugate,
    make_projection,
    random_idempotent,
    sample_E_D,
    sample_E_L,
    sample_E_R,
)
from .lie import (
    ORBIT_ACTIONS,
    centralizer_algebra,
    dimension_report,
    empirical_orbit_dim,
    left_centralizer_algebra,
    right_centralizer_algebra,
)
from .linalg import Matrix, inverse, left_kernel, rank, solve_linear
from .monoid import (
    MonoidFamily,
    is_regular_element,
    random_element,
    random_scalar,
    random_unit,
    sample_singular_friendly,
)

Check = Callable[[MonoidFamily, int, random.Random], "str | None"]


@dataclass
class Property:
    name: str
    description: str
    check: Check


PROPERTIES: list[Property] = []


def prop(name: str, description: str):
    def register(fn: Check) -> Check:
        PROPERTIES.append(Property(name, description, fn))
        return fn

    return register


def _random_matrix(rng, rows, cols, bound=2):
    return Matrix([[random_scalar(rng, bound) for _ in range(cols)] for _ in range(rows)], cols=cols)


@prop("field_axioms", "Q(i) associativity, commutativity and distributivity")
def _field_axioms(monoid, trials, rng):
    for _ in range(trials):
        a, b, c = (random_scalar(rng, 5) for _ in range(3))
        if (a + b) + c != a + (b + c) or (a * b) * c != a * (b * c):
            return f"associativity fails at {a}, {b}, {c}"
        if a * (b + c) != a * b + a * c or a * b != b * a:
            return f"distributivity/commutativity fails at {a}, {b}, {c}"
        if not a.is_zero() and (b / a) * a != b:
            return f"division fails at {b} / {a}"
    return None


@prop("scalar_roundtrip", "format then parse is the identity")
def _scalar_roundtrip(monoid, trials, rng):
    for _ in range(trials):
        x = random_scalar(rng, 50)
        if parse_scalar(format_scalar(x)) != x:
            return f"round trip fails for {x}"
    return None


@prop("rank_laws", "rank(AB) <= min ranks; rank(uA) = rank(A); kernel rows + rank = rows")
def _rank_laws(monoid, trials, rng):
    n = monoid.n
    for _ in range(trials):
        a = sample_singular_friendly(monoid, rng)
        b = sample_singular_friendly(monoid, rng)
        u = random_unit(monoid, rng).matrix
        if rank(a @ b) > min(rank(a), rank(b)):
            return "rank(AB) exceeds min(rank A, rank B)"
        if rank(u @ a) != rank(a):
            return "rank not invariant under a unit"
        if left_kernel(a).rows + rank(a) != n:
            return "left kernel dimension violates rank-nullity"
    return None


@prop("subspace_canonical", "equal canonical forms iff mutual containment of row spaces")
def _subspace_canonical(monoid, trials, rng):
    n = monoid.n
    for _ in range(trials):
        k = rng.randint(0, n)
        p = _random_matrix(rng, k, n)
        # mix @ p has the same row space as p for invertible k x k mix
        if rng.random() < 0.5 and k:
            mix = _random_matrix(rng, k, k)
            while rank(mix) < k:
                mix = _random_matrix(rng, k, k)
            other = mix @ p
        else:
            other = _random_matrix(rng, k, n) if k else p
        canonical_equal = subspace_from_rows(p) == subspace_from_rows(other)
        contained = all(solve_linear(other.T, row)[0] is not None for row in p) and all(
            solve_linear(p.T, row)[0] is not None for row in other
        )
        if canonical_equal != contained:
            return "canonical equality disagrees with mutual containment"
    return None


@prop("direct_sum_iff_group_rank", "rng x (+) nul x = V iff rank(x x) = rank(x)")
def _direct_sum(monoid, trials, rng):
    for _ in range(trials):
        x = sample_singular_friendly(monoid, rng)
        if is_direct_sum(range_of(x), nullspace_of(x)) != (rank(x @ x) == rank(x)):
            return "direct-sum test disagrees with rank(x^2) = rank(x)"
        e = random_idempotent(monoid, rng)
        if not is_direct_sum(e.range, e.nullspace):
            return "idempotent range and null space are not complementary"
    return None


@prop("range_left_invariance", "rng(u x) = rng(x) for units u")
def _range_invariance(monoid, trials, rng):
    for _ in range(trials):
        x = sample_singular_friendly(monoid, rng)
        u = random_unit(monoid, rng).matrix
        if range_of(u @ x) != range_of(x):
            return "range changed under left unit multiplication"
    return None


@prop("monoid_closure", "x, y in M implies x y in M; unit inverses stay in M")
def _closure(monoid, trials, rng):
    for _ in range(trials):
        x = random_element(monoid, rng).matrix
        y = random_element(monoid, rng).matrix
        if x @ y not in monoid:
            return "product left the monoid"
        u = random_unit(monoid, rng).matrix
        if inverse(u) not in monoid:
            return "unit inverse is outside the monoid"
    return None


@prop("regularity", "every sampled element has a verified witness a x a = a")
def _regularity(monoid, trials, rng):
    for _ in range(trials):
        a = sample_singular_friendly(monoid, rng)
        x = is_regular_element(monoid, a)
        if x is None or a @ x.matrix @ a != a:
            return f"no regularity witness for\n{a.pretty()}"
    return None


@prop("green_equivalence", "L, R, H are reflexive, symmetric and transitive on sampled classes")
def _green_equivalence(monoid, trials, rng):
    for _ in range(trials):
        a = sample_singular_friendly(monoid, rng)
        rel = rng.choice("LRH")
        decide = {"L": l_related, "R": r_related, "H": h_related}[rel]
        b, c = (s.matrix for s in sample_class(monoid, a, rel, 2, rng))
        if not decide(monoid, a, a):
            return f"{rel} not reflexive"
        if decide(monoid, a, b) != decide(monoid, b, a):
            return f"{rel} not symmetric"
        if decide(monoid, a, b) and decide(monoid, b, c) and not decide(monoid, a, c):
            return f"{rel} not transitive"
    return None


@prop("green_translation", "L stable under left units, R under right units; H implies L, R; L, R imply D")
def _green_translation(monoid, trials, rng):
    for _ in range(trials):
        a = sample_singular_friendly(monoid, rng)
        u = random_unit(monoid, rng).matrix
        b = sample_class(monoid, a, "L", 1, rng)[0].matrix
        if not l_related(monoid, u @ a, u @ b):
            return "L not stable under left translation by a unit"
        c = sample_class(monoid, a, "R", 1, rng)[0].matrix
        if not r_related(monoid, a @ u, c @ u):
            return "R not stable under right translation by a unit"
        h = sample_class(monoid, a, "H", 1, rng)[0].matrix
        if not (l_related(monoid, a, h) and r_related(monoid, a, h)):
            return "H sample is not both L- and R-related"
        if not d_related(monoid, a, b, trials=32, seed=rng) or not d_related(monoid, a, c, trials=32, seed=rng):
            return "L or R related pair not found D-related"
    return None


@prop("projection_roundtrip", "idempotent e is rebuilt exactly from (rng e, nul e)")
def _projection(monoid, trials, rng):
    for _ in range(trials):
        e = random_idempotent(monoid, rng)
        if make_projection(e.range, e.nullspace).matrix != e.matrix:
            return "projection round trip changed the idempotent"
    return None


@prop("orbit_samplers", "E_L samples share the range, E_R samples the null space, E_D samples are conjugate")
def _orbit_samplers(monoid, trials, rng):
    for _ in range(trials):
        e = random_idempotent(monoid, rng)
        (fl,) = sample_E_L(monoid, e, 1, rng)
        (fr,) = sample_E_R(monoid, e, 1, rng)
        (fd,) = sample_E_D(monoid, e, 1, rng)
        if fl.range != e.range or not l_related(monoid, fl.matrix, e.matrix):
            return "E_L sample not L-related"
        if fr.nullspace != e.nullspace or not r_related(monoid, fr.matrix, e.matrix):
            return "E_R sample not R-related"
        if not find_conjugator(monoid, e.matrix, fd.matrix, 32, rng):
            return "E_D sample not conjugate to e"
    return None


@prop("conjugation_action", "conj(u, conj(v, f)) = conj(u v, f)")
def _conjugation_action(monoid, trials, rng):
    for _ in range(trials):
        f = random_idempotent(monoid, rng)
        u = random_unit(monoid, rng).matrix
        v = random_unit(monoid, rng).matrix
        if conjugate(u, conjugate(v, f)).matrix != conjugate(u @ v, f).matrix:
            return "conjugation is not a group action"
    return None


@prop("centralizer_containment", "C(e) is contained in both C^l(e) and C^r(e)")
def _containment(monoid, trials, rng):
    for _ in range(trials):
        e = random_idempotent(monoid, rng)
        c = centralizer_algebra(monoid, e)
        cl = left_centralizer_algebra(monoid, e)
        cr = right_centralizer_algebra(monoid, e)
        for x in c.basis:
            if not (cl.satisfies(x) and cr.satisfies(x)):
                return "centralizer element violates a one-sided condition"
    return None


@prop("orbit_rank_nullity", "linearized orbit map ranks match the kernel-based dimensions")
def _rank_nullity(monoid, trials, rng):
    for _ in range(trials):
        e = random_idempotent(monoid, rng)
        report = dimension_report(monoid, e)
        fields = report.fields()
        for action in ORBIT_ACTIONS:
            key = "dim_" + action
            got = empirical_orbit_dim(monoid, e, action, seed=rng)
            if got != fields[key]:
                return f"{action}: image rank {got} != {fields[key]}"
    return None


@prop("dimension_identities", "duality and additivity of idempotent manifold dimensions")
def _identities(monoid, trials, rng):
    for _ in range(trials):
        e = random_idempotent(monoid, rng)
        r = dimension_report(monoid, e)
        if not r.duality_holds:
            return f"duality fails: {r.fields()}"
        if not r.additivity_holds or r.dim_G + r.dim_C != r.dim_Cl + r.dim_Cr:
            return f"additivity fails: {r.fields()}"
    return None


@prop("report_conjugation_invariance", "dimension report is constant on conjugates")
def _report_invariance(monoid, trials, rng):
    for _ in range(trials):
        e = random_idempotent(monoid, rng)
        u = random_unit(monoid, rng)
        if dimension_report(monoid, conjugate(u, e)).fields() != dimension_report(monoid, e).fields():
            return "dimension report changed under conjugation"
    return None


def run_suite(monoid: MonoidFamily, trials: int, rng: random.Random) -> list[dict]:
    results = []
    for p in PROPERTIES:
        try:
            failure = p.check(monoid, trials, rng)
        except Exception as exc:  # failures are results, not crashes
            failure = f"error: {type(exc).__name__}: {exc}"
        results.append(
            {
                "property": p.name,
                "description": p.description,
                "trials": trials,
                "passed": failure is None,
                "detail": failure,
            }
        )
    return results


__all__ = ["PROPERTIES", "Property", "prop", "run_suite"]
