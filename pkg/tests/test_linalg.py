import itertools
import json
import random

import pytest

from linmonoid.exact import I, ONE, ZERO, Scalar
from linmonoid.linalg import (
    Matrix,
    SingularMatrixError,
    det,
    diag,
    identity,
    inverse,
    left_kernel,
    matrix_from_json,
    matrix_to_json,
    rank,
    rref,
    solve_linear,
    zeros,
)
from linmonoid.monoid import make_full, random_scalar, random_unit


def leibniz_det(m):
    """Permutation-expansion determinant, independent of elimination."""
    n = m.rows
    total = ZERO
    for perm in itertools.permutations(range(n)):
        inversions = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        term = ONE if inversions % 2 == 0 else -ONE
        for i in range(n):
            term = term * m[i, perm[i]]
        total = total + term
    return total


def minor_rank(m):
    """Largest k with a nonzero k x k minor (brute force)."""
    for k in range(min(m.rows, m.cols), 0, -1):
        for rs in itertools.combinations(range(m.rows), k):
            for cs in itertools.combinations(range(m.cols), k):
                sub = Matrix([[m[r, c] for c in cs] for r in rs])
                if not leibniz_det(sub).is_zero():
                    return k
    return 0


def rand_matrix(rng, rows, cols, bound=2):
    return Matrix([[random_scalar(rng, bound) for _ in range(cols)] for _ in range(rows)], cols=cols)


def low_rank(rng, rows, cols, k):
    return rand_matrix(rng, rows, k) @ rand_matrix(rng, k, cols) if k else zeros(rows, cols)


def test_rref_examples():
    m, piv, r = rref(Matrix([[0, 1], [1, 0]]))
    assert m == identity(2) and piv == (0, 1) and r == 2
    d = diag(1, 1, 0)
    assert rref(d) == (d, (0, 1), 2)
    m, piv, r = rref(Matrix([[1, I], [I, -1]]))
    assert m == Matrix([[1, I], [0, 0]]) and piv == (0,) and r == 1


def test_rref_idempotent_and_pivots_one(rng):
    for _ in range(50):
        m = low_rank(rng, 4, 5, rng.randint(0, 4))
        r1, piv, k = rref(m)
        assert rref(r1)[0] == r1
        for row, c in enumerate(piv):
            assert r1[row, c] == ONE
            assert all(r1[other, c].is_zero() for other in range(m.rows) if other != row)
        assert all(r1[row, j].is_zero() for row in range(k, m.rows) for j in range(m.cols))


def test_rank_examples(rng):
    assert rank(identity(3)) == 3
    assert rank(zeros(3)) == 0
    full = make_full(4)
    for k in range(5):
        e = diag(*([1] * k + [0] * (4 - k)))
        u, v = random_unit(full, rng).matrix, random_unit(full, rng).matrix
        assert rank(u @ e @ v) == k


def test_rank_matches_minor_oracle(rng):
    for _ in range(40):
        rows, cols = rng.randint(1, 3), rng.randint(1, 4)
        m = low_rank(rng, rows, cols, rng.randint(0, min(rows, cols)))
        assert rank(m) == minor_rank(m)


def test_rank_laws(rng):
    full = make_full(3)
    for _ in range(500):
        a = low_rank(rng, 3, 3, rng.randint(0, 3))
        b = low_rank(rng, 3, 3, rng.randint(0, 3))
        assert rank(a @ b) <= min(rank(a), rank(b))
        u = random_unit(full, rng, gaussian=False).matrix
        assert rank(u @ a) == rank(a)


def test_left_kernel_examples():
    assert left_kernel(identity(3)).rows == 0
    assert left_kernel(diag(1, 0)) == Matrix([[0, 1]])
    k = 2
    e = diag(*([1] * k + [0] * 2))
    assert left_kernel(e) == Matrix([[0, 0, 1, 0], [0, 0, 0, 1]])


def test_left_kernel_rank_nullity(rng):
    for _ in range(100):
        rows, cols = rng.randint(1, 4), rng.randint(1, 4)
        m = low_rank(rng, rows, cols, rng.randint(0, min(rows, cols)))
        kern = left_kernel(m)
        assert kern.rows + rank(m) == m.rows
        assert (kern @ m).is_zero() if kern.rows else True
        assert rank(kern) == kern.rows if kern.rows else True


def test_solve_examples():
    b = [Scalar(3), Scalar(0, 2), Scalar(-1)]
    x, kern = solve_linear(identity(3), b)
    assert list(x) == b and kern.rows == 0
    x, _ = solve_linear(zeros(2), [1, 0])
    assert x is None
    x, kern = solve_linear(Matrix([[1, 1]]), [2])
    assert list(x) == [2, 0]
    assert kern == Matrix([[-1, 1]])  # spans (1, -1)


def test_solve_random(rng):
    for _ in range(100):
        a = low_rank(rng, 3, 4, rng.randint(1, 3))
        xs = [random_scalar(rng) for _ in range(4)]
        b = (a @ Matrix([[x] for x in xs])).entries()
        x, kern = solve_linear(a, b)
        assert x is not None
        assert (a @ Matrix([[v] for v in x])).entries() == b
        assert kern.rows == 4 - rank(a)
        for row in kern:
            assert (a @ Matrix([[v] for v in row])).is_zero()


def test_det_inverse_examples():
    assert det(identity(4)) == 1
    assert det(diag(2, 3)) == 6
    assert inverse(Matrix([[1, 1], [0, 1]])) == Matrix([[1, -1], [0, 1]])
    with pytest.raises(SingularMatrixError):
        inverse(diag(1, 0))


def test_det_matches_leibniz(rng):
    for _ in range(50):
        n = rng.randint(1, 4)
        m = rand_matrix(rng, n, n)
        assert det(m) == leibniz_det(m)


def test_inverse_random(rng):
    full = make_full(4)
    for _ in range(50):
        u = random_unit(full, rng).matrix
        assert inverse(u) @ u == identity(4)
        assert u @ inverse(u) == identity(4)


def test_rref_canonical_row_space(rng):
    # equal row spaces iff rrefs (zero rows dropped) agree
    for _ in range(60):
        k = rng.randint(1, 3)
        p = rand_matrix(rng, k, 4)
        q = rand_matrix(rng, k, k) @ p if rng.random() < 0.5 else rand_matrix(rng, k, 4)
        same = all(solve_linear(q.T, row)[0] is not None for row in p) and all(
            solve_linear(p.T, row)[0] is not None for row in q
        )
        rp, _, kp = rref(p)
        rq, _, kq = rref(q)
        assert (rp[:kp] == rq[:kq]) == same


def test_json_roundtrip(rng):
    m = rand_matrix(rng, 3, 2, bound=7)
    text = json.dumps(matrix_to_json(m))
    assert matrix_from_json(json.loads(text)) == m
    with pytest.raises(ValueError):
        matrix_from_json([[1, 2], [3]])
    with pytest.raises(ValueError):
        matrix_from_json("nope")


def test_immutable_and_hashable():
    m = Matrix([[1, 2], [3, 4]])
    assert hash(m) == hash(Matrix([["1", "2"], ["3", "4"]]))
    with pytest.raises(AttributeError):
        m.rows = 5
    assert m.T == Matrix([[1, 3], [2, 4]])
