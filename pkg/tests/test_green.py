import random

import pytest

from linmonoid.green import (
    GreenClass,
    classify_pair,
    d_conjugacy,
    d_related,
    d_related_ambient,
    find_conjugator,
    h_related,
    idempotent_of,
    l_related,
    r_related,
    sample_class,
)
from linmonoid.linalg import Matrix, diag, inverse, rank, rref
from linmonoid.monoid import NotInMonoidError, make_block_diagonal, make_full, random_unit, sample_singular_friendly

DECIDERS = {"L": l_related, "R": r_related, "H": h_related}


def rank_k(full, k, rng):
    n = full.n
    return random_unit(full, rng).matrix @ diag(*([1] * k + [0] * (n - k))) @ random_unit(full, rng).matrix


def test_examples():
    full = make_full(2)
    a = Matrix([[1, 0], [0, 0]])
    b = Matrix([[2, 0], [0, 0]])
    c = Matrix([[0, 1], [0, 0]])
    d = Matrix([[0, 0], [1, 0]])
    assert l_related(full, a, b) and r_related(full, a, b) and h_related(full, a, b)
    assert not l_related(full, a, c) and r_related(full, a, c)
    assert l_related(full, a, d) and not r_related(full, a, d)
    assert d_related(full, a, c) and d_related(full, c, d)
    assert not d_related(full, a, Matrix([[1, 0], [0, 1]]))


def test_block_example_d_false(block12):
    e, f = diag(1, 0, 0), diag(0, 1, 0)
    # both rank 1, so M_3 relates them, but the blocks cannot mix
    assert d_related_ambient(e, f)
    conj = d_conjugacy(block12, e, f, trials=64, seed=1)
    assert not conj and conj.witness is None
    assert not d_related(block12, e, f, trials=64)
    g = diag(0, 0, 1)
    assert d_related(block12, f, g)


def test_membership_enforced(block12):
    with pytest.raises(NotInMonoidError):
        l_related(block12, diag(1, 0, 0), Matrix([[0, 1, 0], [0, 0, 0], [0, 0, 0]]))


def test_equivalence_laws(family, rng):
    for _ in range(200 // 6):
        a = sample_singular_friendly(family, rng)
        for rel, decide in DECIDERS.items():
            b, c = (s.matrix for s in sample_class(family, a, rel, 2, rng))
            assert decide(family, a, a)
            assert decide(family, a, b) == decide(family, b, a)
            assert decide(family, a, b) and decide(family, b, c) and decide(family, a, c)


def test_translation_invariance(family, rng):
    for _ in range(10):
        a = sample_singular_friendly(family, rng)
        b = sample_singular_friendly(family, rng)
        u = random_unit(family, rng).matrix
        assert l_related(family, a, b) == l_related(family, u @ a, u @ b)
        assert r_related(family, a, b) == r_related(family, a @ u, b @ u)
        assert l_related(family, a, u @ a) and r_related(family, a, a @ u)


def test_l_against_rref_oracle(rng):
    # in M_n, L-related iff equal nonzero rows of the RREF
    for n in (2, 3):
        full = make_full(n)
        for _ in range(150):
            a = rank_k(full, rng.randint(0, n), rng)
            b = rng.choice([rank_k(full, rng.randint(0, n), rng), random_unit(full, rng).matrix @ a])
            ra, _, ka = rref(a)
            rb, _, kb = rref(b)
            oracle = ra.tolist()[:ka] == rb.tolist()[:kb]
            assert l_related(full, a, b) == oracle


def test_d_agrees_with_rank(rng):
    for n in (2, 3):
        full = make_full(n)
        for _ in range(40):
            a = rank_k(full, rng.randint(0, n), rng)
            b = rank_k(full, rng.randint(0, n), rng)
            assert d_related(full, a, b, seed=rng) == (rank(a) == rank(b))


def test_d_witness_verified(family, rng):
    for _ in range(10):
        a = sample_singular_friendly(family, rng)
        b = random_unit(family, rng).matrix @ a @ random_unit(family, rng).matrix
        conj = d_conjugacy(family, a, b, seed=rng)
        assert conj.related
        u = conj.witness
        assert u in family and inverse(u) in family
        assert u @ conj.e @ inverse(u) == conj.f


def test_find_conjugator_rank_mismatch():
    full = make_full(2)
    conj = find_conjugator(full, diag(1, 0), diag(1, 1))
    assert not conj.related and conj.witness is None


def test_idempotent_of(family, rng):
    for _ in range(5):
        a = sample_singular_friendly(family, rng)
        e = idempotent_of(family, a)
        f = idempotent_of(family, a, side="left")
        assert e @ e == e and f @ f == f
        assert r_related(family, a, e) and l_related(family, a, f)
    with pytest.raises(ValueError):
        idempotent_of(family, a, side="middle")


def test_h_sample(block12, rng):
    a = diag(0, 1, 0)
    for h in sample_class(block12, a, "H", 20, rng):
        assert l_related(block12, a, h) and r_related(block12, a, h)


def test_sample_class_membership(family, rng):
    a = sample_singular_friendly(family, rng)
    for rel in ("L", "R", "H", "D"):
        for s in sample_class(family, a, rel, 3, rng):
            assert s.matrix in family
            assert s.matrix in GreenClass(rel, family.element(a), family)
    assert sample_class(family, a, "L", 0) == []
    with pytest.raises(ValueError):
        sample_class(family, a, "J", 1)


def test_classify_pair_fields(block12):
    v = classify_pair(block12, diag(1, 0, 0), diag(0, 1, 0), trials=32, seed=0)
    assert v["L"] is False and v["R"] is False and v["H"] is False
    assert v["D"] is False and v["D_ambient"] is True and v["witness"] is None
    w = classify_pair(block12, diag(0, 1, 0), diag(0, 0, 1), trials=32, seed=0)
    assert w["D"] and w["witness"] is not None


def test_deterministic_seed(block12):
    a, b = diag(0, 1, 0), diag(0, 0, 1)
    w1 = d_conjugacy(block12, a, b, seed=random.Random(9)).witness
    w2 = d_conjugacy(block12, a, b, seed=random.Random(9)).witness
    assert w1 == w2
