"""Dense exact matrices over Q(i).

Row-vector convention throughout: vectors multiply matrices on the left, the
range of ``x`` is its row space and its null space is the left kernel
``{v : v x = 0}``.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .exact import ONE, ZERO, Scalar, as_scalar, format_scalar

__all__ = [
    "Matrix",
    "SingularMatrixError",
    "identity",
    "zeros",
    "diag",
    "block_diag",
    "rref",
    "rank",
    "left_kernel",
    "right_kernel",
    "solve_linear",
    "mat_mul",
    "mat_add",
    "scalar_mul",
    "det",
    "inverse",
    "stack",
    "matrix_to_json",
    "matrix_from_json",
]


class SingularMatrixError(ArithmeticError):
    pass


class Matrix:
    """Immutable rows x cols matrix of ``Scalar`` entries."""

    __slots__ = ("_cols", "_data", "_hash")

    def __init__(self, entries: Iterable[Iterable], cols: int | None = None):
        data = tuple(tuple(as_scalar(x) for x in row) for row in entries)
        if data:
            widths = {len(r) for r in data}
            if len(widths) != 1:
                raise ValueError("ragged matrix rows")
            (width,) = widths
            if cols is not None and cols != width:
                raise ValueError(f"expected {cols} columns, got {width}")
            cols = width
        elif cols is None:
            cols = 0
        self._cols = cols
        self._data = data
        self._hash = None

    @classmethod
    def _wrap(cls, data: tuple, cols: int) -> "Matrix":
        # trusted constructor: data is already a tuple of tuples of Scalar
        m = object.__new__(cls)
        m._cols = cols
        m._data = data
        m._hash = None
        return m

    @property
    def rows(self) -> int:
        return len(self._data)

    @property
    def cols(self) -> int:
        return self._cols

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def is_square(self) -> bool:
        return self.rows == self.cols

    def __getitem__(self, idx):
        if isinstance(idx, tuple):
            i, j = idx
            return self._data[i][j]
        return self._data[idx]

    def row(self, i: int) -> tuple:
        return self._data[i]

    def tolist(self) -> list[list[Scalar]]:
        return [list(r) for r in self._data]

    def entries(self) -> tuple:
        """Row-major flat tuple of all entries."""
        return tuple(x for r in self._data for x in r)

    def transpose(self) -> "Matrix":
        return _T(self)

    @property
    def T(self) -> "Matrix":
        return self.transpose()

    def is_zero(self) -> bool:
        return all(x.is_zero() for r in self._data for x in r)

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.cols == other.cols and self._data == other._data

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.cols, self._data))
        return self._hash

    def __add__(self, other):
        return mat_add(self, other)

    def __sub__(self, other):
        return mat_add(self, scalar_mul(-ONE, other))

    def __neg__(self):
        return scalar_mul(-ONE, self)

    def __matmul__(self, other):
        return mat_mul(self, other)

    def __mul__(self, c):
        if isinstance(c, Matrix):
            return NotImplemented
        return scalar_mul(c, self)

    __rmul__ = __mul__

    def __repr__(self):
        body = ", ".join("[" + ", ".join(format_scalar(x) for x in r) + "]" for r in self._data)
        return f"Matrix([{body}])"

    def pretty(self) -> str:
        cells = [[format_scalar(x) for x in r] for r in self._data]
        if not cells or not self.cols:
            return "[]"
        w = max(len(c) for r in cells for c in r)
        return "\n".join("[" + " ".join(c.rjust(w) for c in r) + "]" for r in cells)


def _T(m: Matrix) -> Matrix:
    if m.rows == 0:
        return Matrix._wrap(tuple(() for _ in range(m.cols)), 0)
    return Matrix._wrap(tuple(zip(*m._data)), m.rows)


def identity(n: int) -> Matrix:
    return Matrix._wrap(tuple(tuple(ONE if i == j else ZERO for j in range(n)) for i in range(n)), n)


def zeros(rows: int, cols: int | None = None) -> Matrix:
    cols = rows if cols is None else cols
    return Matrix._wrap(tuple((ZERO,) * cols for _ in range(rows)), cols)


def diag(*values) -> Matrix:
    if len(values) == 1 and isinstance(values[0], (list, tuple)):
        values = tuple(values[0])
    vals = [as_scalar(v) for v in values]
    n = len(vals)
    return Matrix._wrap(tuple(tuple(vals[i] if i == j else ZERO for j in range(n)) for i in range(n)), n)


def block_diag(*blocks: Matrix) -> Matrix:
    n = sum(b.rows for b in blocks)
    rows = []
    offset = 0
    for b in blocks:
        if not b.is_square():
            raise ValueError("block_diag needs square blocks")
        for r in b._data:
            rows.append((ZERO,) * offset + r + (ZERO,) * (n - offset - b.cols))
        offset += b.cols
    return Matrix._wrap(tuple(rows), n)


def stack(*ms: Matrix) -> Matrix:
    """Vertical concatenation."""
    cols = {m.cols for m in ms}
    if len(cols) > 1:
        raise ValueError("stack: column mismatch")
    data = tuple(r for m in ms for r in m._data)
    return Matrix._wrap(data, cols.pop() if cols else 0)


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    if a.cols != b.rows:
        raise ValueError(f"shape mismatch {a.shape} @ {b.shape}")
    bt = _T(b)._data
    out = []
    for r in a._data:
        nz = [(k, x) for k, x in enumerate(r) if not x.is_zero()]
        row = []
        for c in bt:
            acc = ZERO
            for k, x in nz:
                y = c[k]
                if not y.is_zero():
                    acc = acc + x * y
            row.append(acc)
        out.append(tuple(row))
    return Matrix._wrap(tuple(out), b.cols)


def mat_add(a: Matrix, b: Matrix) -> Matrix:
    if a.shape != b.shape:
        raise ValueError(f"shape mismatch {a.shape} + {b.shape}")
    return Matrix._wrap(tuple(tuple(x + y for x, y in zip(r, s)) for r, s in zip(a._data, b._data)), a.cols)


def scalar_mul(c, m: Matrix) -> Matrix:
    c = as_scalar(c)
    return Matrix._wrap(tuple(tuple(c * x for x in r) for r in m._data), m.cols)


# -- elimination -------------------------------------------------------------


def _eliminate(rows: list[list[Scalar]], ncols: int, reduced: bool = True, stop: int | None = None):
    """In-place Gaussian elimination; returns pivot columns.

    Pivots are the first nonzero entry found scanning columns left to right.
    With ``reduced`` the result is RREF (pivots 1, cleared above and below).
    Only the first ``stop`` columns are used for pivoting.
    """
    stop = ncols if stop is None else stop
    pivots = []
    pr = 0
    nrows = len(rows)
    for c in range(stop):
        if pr == nrows:
            break
        sel = None
        for r in range(pr, nrows):
            if not rows[r][c].is_zero():
                sel = r
                break
        if sel is None:
            continue
        if sel != pr:
            rows[pr], rows[sel] = rows[sel], rows[pr]
        prow = rows[pr]
        if reduced:
            inv = ONE / prow[c]
            prow = [x * inv if not x.is_zero() else x for x in prow]
            prow[c] = ONE
            rows[pr] = prow
            targets = range(nrows)
        else:
            targets = range(pr + 1, nrows)
        nzcols = [j for j in range(c, ncols) if not prow[j].is_zero()]
        pv = prow[c]
        for r in targets:
            if r == pr:
                continue
            row = rows[r]
            f = row[c]
            if f.is_zero():
                continue
            if not reduced:
                f = f / pv
            for j in nzcols:
                row[j] = row[j] - f * prow[j]
        pivots.append(c)
        pr += 1
    return pivots


def rref(m: Matrix) -> tuple[Matrix, tuple[int, ...], int]:
    """Reduced row echelon form, pivot columns and rank."""
    rows = [list(r) for r in m._data]
    pivots = _eliminate(rows, m.cols)
    return Matrix._wrap(tuple(tuple(r) for r in rows), m.cols), tuple(pivots), len(pivots)


def rank(m: Matrix) -> int:
    rows = [list(r) for r in m._data]
    return len(_eliminate(rows, m.cols, reduced=False))


def _column_kernel(reduced_rows, pivots, ncols) -> list[tuple]:
    free = [j for j in range(ncols) if j not in set(pivots)]
    basis = []
    for fj in free:
        v = [ZERO] * ncols
        v[fj] = ONE
        for r, pc in enumerate(pivots):
            x = reduced_rows[r][fj]
            if not x.is_zero():
                v[pc] = -x
        basis.append(tuple(v))
    return basis


def right_kernel(m: Matrix) -> Matrix:
    """Rows spanning ``{x : m x^T = 0}`` (column-vector null space), RREF basis."""
    rows = [list(r) for r in m._data]
    pivots = _eliminate(rows, m.cols)
    basis = _column_kernel(rows, pivots, m.cols)
    k = Matrix._wrap(tuple(basis), m.cols)
    return rref(k)[0] if basis else k


def left_kernel(m: Matrix) -> Matrix:
    """Rows spanning ``{v : v m = 0}``; row count is ``m.rows - rank(m)``."""
    return right_kernel(_T(m))


def solve_linear(a: Matrix, b: Sequence) -> tuple[tuple[Scalar, ...] | None, Matrix]:
    """Solve ``a x = b`` for a column vector ``x``.

    Returns ``(particular, kernel)`` where ``kernel`` rows span the solutions
    of the homogeneous system.  ``particular`` is None when inconsistent; the
    particular solution sets every free variable to zero.
    """
    b = [as_scalar(x) for x in b]
    if len(b) != a.rows:
        raise ValueError("right-hand side length mismatch")
    n = a.cols
    rows = [list(r) + [y] for r, y in zip(a._data, b)]
    pivots = _eliminate(rows, n + 1, stop=n)
    kernel = _column_kernel(rows, pivots, n)
    kmat = Matrix._wrap(tuple(kernel), n)
    for r in range(len(pivots), len(rows)):
        if not rows[r][n].is_zero():
            return None, kmat
    x = [ZERO] * n
    for r, pc in enumerate(pivots):
        x[pc] = rows[r][n]
    return tuple(x), kmat


def det(m: Matrix) -> Scalar:
    if not m.is_square():
        raise ValueError("det of non-square matrix")
    rows = [list(r) for r in m._data]
    n = m.rows
    sign = ONE
    result = ONE
    for c in range(n):
        sel = None
        for r in range(c, n):
            if not rows[r][c].is_zero():
                sel = r
                break
        if sel is None:
            return ZERO
        if sel != c:
            rows[c], rows[sel] = rows[sel], rows[c]
            sign = -sign
        prow = rows[c]
        pv = prow[c]
        result = result * pv
        for r in range(c + 1, n):
            f = rows[r][c]
            if f.is_zero():
                continue
            f = f / pv
            row = rows[r]
            for j in range(c + 1, n):
                if not prow[j].is_zero():
                    row[j] = row[j] - f * prow[j]
    return sign * result


def inverse(m: Matrix) -> Matrix:
    if not m.is_square():
        raise ValueError("inverse of non-square matrix")
    n = m.rows
    ident = identity(n)._data
    rows = [list(r) + list(e) for r, e in zip(m._data, ident)]
    pivots = _eliminate(rows, 2 * n, stop=n)
    if len(pivots) < n:
        raise SingularMatrixError("matrix is singular")
    return Matrix._wrap(tuple(tuple(r[n:]) for r in rows), n)


# -- JSON --------------------------------------------------------------------


def matrix_to_json(m: Matrix) -> list[list[str]]:
    return [[format_scalar(x) for x in r] for r in m._data]


def matrix_from_json(obj) -> Matrix:
    if not isinstance(obj, list) or not all(isinstance(r, list) for r in obj):
        raise ValueError("matrix JSON must be an array of rows")
    return Matrix(obj)
