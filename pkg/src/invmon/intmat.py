"""Exact integer matrices with Hermite and Smith normal forms.

Every normal form comes with its unimodular transforms so callers can
certify ``U @ A == H`` and ``U @ A @ V == D``.
"""

from __future__ import annotations

from typing import Iterable, Sequence


class IntegerMatrix:
    __slots__ = ("rows", "cols", "data")

    def __init__(self, data: Iterable[Sequence[int]], cols: int | None = None):
        self.data = [[int(x) for x in row] for row in data]
        self.rows = len(self.data)
        if cols is None:
            cols = len(self.data[0]) if self.data else 0
        self.cols = cols
        if any(len(r) != cols for r in self.data):
            raise ValueError("ragged matrix")

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntegerMatrix":
        return cls([[0] * cols for _ in range(rows)], cols)

    @classmethod
    def identity(cls, n: int) -> "IntegerMatrix":
        return cls([[int(i == j) for j in range(n)] for i in range(n)], n)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]], rows: int) -> "IntegerMatrix":
        return cls([[c[i] for c in columns] for i in range(rows)], len(columns))

    def __repr__(self):
        return f"IntegerMatrix({self.data!r}, cols={self.cols})"

    def __eq__(self, other):
        if not isinstance(other, IntegerMatrix):
            return NotImplemented
        return self.shape == other.shape and self.data == other.data

    def __hash__(self):
        return hash((self.shape, tuple(map(tuple, self.data))))

    @property
    def shape(self):
        return (self.rows, self.cols)

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self.data]

    def copy(self) -> "IntegerMatrix":
        return IntegerMatrix(self.data, self.cols)

    @property
    def T(self) -> "IntegerMatrix":
        return IntegerMatrix([[self.data[i][j] for i in range(self.rows)]
                              for j in range(self.cols)], self.rows)

    def column(self, j: int) -> list[int]:
        return [r[j] for r in self.data]

    def __matmul__(self, other):
        if isinstance(other, IntegerMatrix):
            if self.cols != other.rows:
                raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
            ot = other.T.data
            return IntegerMatrix([[sum(a * b for a, b in zip(row, col)) for col in ot]
                                  for row in self.data], other.cols)
        vec = list(other)
        if len(vec) != self.cols:
            raise ValueError(f"shape mismatch {self.shape} @ vector of length {len(vec)}")
        return [sum(a * b for a, b in zip(row, vec)) for row in self.data]

    def is_zero(self) -> bool:
        return all(x == 0 for r in self.data for x in r)

    def det(self) -> int:
        """Bareiss fraction-free determinant."""
        if self.rows != self.cols:
            raise ValueError("det of non-square matrix")
        n = self.rows
        if n == 0:
            return 1
        a = self.tolist()
        sign, prev = 1, 1
        for k in range(n - 1):
            if a[k][k] == 0:
                for i in range(k + 1, n):
                    if a[i][k] != 0:
                        a[k], a[i] = a[i], a[k]
                        sign = -sign
                        break
                else:
                    return 0
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            prev = a[k][k]
        return sign * a[n - 1][n - 1]

    def rank(self) -> int:
        H, _ = hermite_normal_form(self)
        return sum(1 for r in H.data if any(r))


def _row_combine(m, i, j, a, b, c, d):
    """(row_i, row_j) <- (a*row_i + b*row_j, c*row_i + d*row_j)."""
    ri, rj = m[i], m[j]
    m[i] = [a * x + b * y for x, y in zip(ri, rj)]
    m[j] = [c * x + d * y for x, y in zip(ri, rj)]


def _elim(a: int, b: int):
    """Unimodular (s, t, c, d) with s*a + t*b = g and c*a + d*b = 0.

    When a divides b this is a plain elimination, so the pivot row or
    column is left untouched and the reduction loops terminate.
    """
    if b % a == 0:
        return 1, 0, -(b // a), 1
    g, s, t = _xgcd(a, b)
    return s, t, -(b // g), a // g


def _xgcd(a: int, b: int):
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    return old_r, old_s, old_t


def hermite_normal_form(A: IntegerMatrix):
    """Row-style HNF: returns ``(H, U)`` with ``U @ A == H`` and U unimodular.

    H is in row echelon form with positive pivots and entries above each
    pivot reduced into ``[0, pivot)``.
    """
    m = A.tolist()
    n_rows, n_cols = A.rows, A.cols
    u = IntegerMatrix.identity(n_rows).data
    r = 0
    for c in range(n_cols):
        if r >= n_rows:
            break
        for i in range(r + 1, n_rows):
            if m[i][c] == 0:
                continue
            if m[r][c] == 0:
                m[r], m[i] = m[i], m[r]
                u[r], u[i] = u[i], u[r]
                continue
            op = _elim(m[r][c], m[i][c])
            _row_combine(m, r, i, *op)
            _row_combine(u, r, i, *op)
        if m[r][c] == 0:
            continue
        if m[r][c] < 0:
            m[r] = [-x for x in m[r]]
            u[r] = [-x for x in u[r]]
        piv = m[r][c]
        for i in range(r):
            q = m[i][c] // piv
            if q:
                m[i] = [x - q * y for x, y in zip(m[i], m[r])]
                u[i] = [x - q * y for x, y in zip(u[i], u[r])]
        r += 1
    return IntegerMatrix(m, n_cols), IntegerMatrix(u, n_rows)


def kernel_basis(A: IntegerMatrix) -> list[list[int]]:
    """Lattice basis of ``{v : A v = 0}`` over the integers."""
    H, U = hermite_normal_form(A.T)
    return [U.data[i] for i in range(H.rows) if not any(H.data[i])]


def smith_normal_form(A: IntegerMatrix):
    """Returns ``(D, U, V)`` with ``U @ A @ V == D`` diagonal and each d_i | d_{i+1}."""
    m = A.tolist()
    R, C = A.rows, A.cols
    u = IntegerMatrix.identity(R).data
    v = IntegerMatrix.identity(C).data

    def col_op(j1, j2, a, b, c, d):
        # (col_j1, col_j2) <- (a*col_j1 + b*col_j2, c*col_j1 + d*col_j2)
        for mat in (m, v):
            for row in mat:
                x, y = row[j1], row[j2]
                row[j1], row[j2] = a * x + b * y, c * x + d * y

    t = 0
    while t < min(R, C):
        nz = [(abs(m[i][j]), i, j) for i in range(t, R) for j in range(t, C) if m[i][j]]
        if not nz:
            break
        _, i0, j0 = min(nz)
        m[t], m[i0] = m[i0], m[t]
        u[t], u[i0] = u[i0], u[t]
        col_op(t, j0, 0, 1, 1, 0)
        while True:
            for i in range(t + 1, R):
                if m[i][t]:
                    op = _elim(m[t][t], m[i][t])
                    _row_combine(m, t, i, *op)
                    _row_combine(u, t, i, *op)
            for j in range(t + 1, C):
                if m[t][j]:
                    col_op(t, j, *_elim(m[t][t], m[t][j]))
            # column operations may refill column t below the pivot
            if any(m[i][t] for i in range(t + 1, R)):
                continue
            piv = m[t][t]
            bad = next(((i, j) for i in range(t + 1, R) for j in range(t + 1, C)
                        if m[i][j] % piv), None)
            if bad is None:
                break
            i = bad[0]
            m[t] = [x + y for x, y in zip(m[t], m[i])]
            u[t] = [x + y for x, y in zip(u[t], u[i])]
        if m[t][t] < 0:
            m[t] = [-x for x in m[t]]
            u[t] = [-x for x in u[t]]
        t += 1
    return IntegerMatrix(m, C), IntegerMatrix(u, R), IntegerMatrix(v, C)


def invariant_factors(A: IntegerMatrix) -> list[int]:
    D, _, _ = smith_normal_form(A)
    return [D.data[i][i] for i in range(min(D.rows, D.cols)) if D.data[i][i]]
