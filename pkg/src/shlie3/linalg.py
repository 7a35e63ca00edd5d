"""Exact linear algebra over the rationals.

Everything here works with ``fractions.Fraction`` entries and is meant for
the small dense matrices this package deals with (dimensions in the tens).
No floating point anywhere.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

Q = Fraction

Vector = tuple[Q, ...]


def vec(entries: Iterable) -> Vector:
    return tuple(Q(e) for e in entries)


def vzero(n: int) -> Vector:
    return (Q(0),) * n


def vadd(a: Sequence[Q], b: Sequence[Q]) -> Vector:
    return tuple(x + y for x, y in zip(a, b, strict=True))


def vsub(a: Sequence[Q], b: Sequence[Q]) -> Vector:
    return tuple(x - y for x, y in zip(a, b, strict=True))


def vscale(c, a: Sequence[Q]) -> Vector:
    c = Q(c)
    return tuple(c * x for x in a)


def vis_zero(a: Sequence[Q]) -> bool:
    return all(x == 0 for x in a)


class Matrix:
    """Immutable dense rational matrix."""

    __slots__ = ("rows", "nrows", "ncols")

    def __init__(self, rows: Iterable[Iterable], ncols: int | None = None):
        rs = tuple(tuple(e if type(e) is Q else Q(e) for e in row) for row in rows)
        if rs:
            ncols = len(rs[0])
            if any(len(r) != ncols for r in rs):
                raise ValueError("ragged rows")
        elif ncols is None:
            ncols = 0
        object.__setattr__(self, "rows", rs)
        object.__setattr__(self, "nrows", len(rs))
        object.__setattr__(self, "ncols", ncols)

    def __setattr__(self, *a):  # pragma: no cover
        raise AttributeError("Matrix is immutable")

    # -- constructors -------------------------------------------------

    @staticmethod
    def zeros(m: int, n: int) -> "Matrix":
        return Matrix([[0] * n for _ in range(m)], ncols=n)

    @staticmethod
    def eye(n: int) -> "Matrix":
        return Matrix([[1 if i == j else 0 for j in range(n)] for i in range(n)], ncols=n)

    @staticmethod
    def from_cols(cols: Sequence[Sequence[Q]], nrows: int | None = None) -> "Matrix":
        if not cols:
            return Matrix([], ncols=0) if nrows is None else Matrix([[] for _ in range(nrows)], ncols=0)
        m = len(cols[0])
        return Matrix([[cols[j][i] for j in range(len(cols))] for i in range(m)],
                      ncols=len(cols))

    # -- basic structure ----------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def col(self, j: int) -> Vector:
        return tuple(r[j] for r in self.rows)

    def cols(self) -> list[Vector]:
        return [self.col(j) for j in range(self.ncols)]

    def transpose(self) -> "Matrix":
        return Matrix([self.col(j) for j in range(self.ncols)], ncols=self.nrows)

    def is_zero(self) -> bool:
        return all(e == 0 for r in self.rows for e in r)

    def __eq__(self, other) -> bool:
        return isinstance(other, Matrix) and self.shape == other.shape and self.rows == other.rows

    def __hash__(self):
        return hash((self.shape, self.rows))

    def __repr__(self) -> str:
        return f"Matrix({[list(map(str, r)) for r in self.rows]})"

    # -- arithmetic ---------------------------------------------------

    def __add__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return Matrix([vadd(a, b) for a, b in zip(self.rows, other.rows)], ncols=self.ncols)

    def __sub__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return Matrix([vsub(a, b) for a, b in zip(self.rows, other.rows)], ncols=self.ncols)

    def __neg__(self) -> "Matrix":
        return self.scale(-1)

    def scale(self, c) -> "Matrix":
        c = Q(c)
        return Matrix([[c * e for e in r] for r in self.rows], ncols=self.ncols)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.ncols != other.nrows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        ot = other.transpose().rows
        return Matrix(
            [[sum((a * b for a, b in zip(row, col)), Q(0)) for col in ot] for row in self.rows],
            ncols=other.ncols,
        )

    def apply(self, v: Sequence[Q]) -> Vector:
        if len(v) != self.ncols:
            raise ValueError(f"vector of length {len(v)} against {self.shape}")
        return tuple(sum((a * b for a, b in zip(row, v)), Q(0)) for row in self.rows)

    def kron(self, other: "Matrix") -> "Matrix":
        out = []
        for r1 in self.rows:
            for r2 in other.rows:
                out.append([a * b for a in r1 for b in r2])
        return Matrix(out, ncols=self.ncols * other.ncols)

    # -- elimination --------------------------------------------------

    def rref(self) -> tuple["Matrix", tuple[int, ...]]:
        """Reduced row echelon form and pivot columns."""
        rows = [list(r) for r in self.rows]
        pivots = []
        pr = 0
        for pc in range(self.ncols):
            pivot_row = None
            for r in range(pr, self.nrows):
                if rows[r][pc] != 0:
                    pivot_row = r
                    break
            if pivot_row is None:
                continue
            rows[pr], rows[pivot_row] = rows[pivot_row], rows[pr]
            inv = Q(1) / rows[pr][pc]
            rows[pr] = [inv * e for e in rows[pr]]
            for r in range(self.nrows):
                if r != pr and rows[r][pc] != 0:
                    f = rows[r][pc]
                    rows[r] = [a - f * b for a, b in zip(rows[r], rows[pr])]
            pivots.append(pc)
            pr += 1
            if pr == self.nrows:
                break
        return Matrix(rows, ncols=self.ncols), tuple(pivots)

    def rank(self) -> int:
        return len(self.rref()[1])

    def nullspace(self) -> list[Vector]:
        """Basis of the right kernel, one vector per free column, deterministic."""
        R, pivots = self.rref()
        pivset = set(pivots)
        free = [j for j in range(self.ncols) if j not in pivset]
        basis = []
        for j in free:
            v = [Q(0)] * self.ncols
            v[j] = Q(1)
            for r, pc in enumerate(pivots):
                v[pc] = -R.rows[r][j]
            basis.append(tuple(v))
        return basis

    def solve(self, b: Sequence[Q]) -> Vector | None:
        """One solution of self @ x = b, or None if inconsistent."""
        if len(b) != self.nrows:
            raise ValueError("rhs length mismatch")
        aug = Matrix([list(r) + [bb] for r, bb in zip(self.rows, b)], ncols=self.ncols + 1)
        R, pivots = aug.rref()
        if self.ncols in pivots:
            return None
        x = [Q(0)] * self.ncols
        for r, pc in enumerate(pivots):
            x[pc] = R.rows[r][self.ncols]
        return tuple(x)

    def solve_matrix(self, B: "Matrix") -> "Matrix | None":
        """X with self @ X = B, or None."""
        cols = []
        for j in range(B.ncols):
            x = self.solve(B.col(j))
            if x is None:
                return None
            cols.append(x)
        return Matrix.from_cols(cols, nrows=self.ncols)


def hstack(mats: Sequence[Matrix]) -> Matrix:
    mats = [m for m in mats]
    if not mats:
        return Matrix([], ncols=0)
    nrows = mats[0].nrows
    if any(m.nrows != nrows for m in mats):
        raise ValueError("row count mismatch")
    return Matrix(
        [sum((list(m.rows[i]) for m in mats), []) for i in range(nrows)],
        ncols=sum(m.ncols for m in mats),
    )


def vstack(mats: Sequence[Matrix]) -> Matrix:
    mats = [m for m in mats]
    if not mats:
        return Matrix([], ncols=0)
    ncols = mats[0].ncols
    if any(m.ncols != ncols for m in mats):
        raise ValueError("column count mismatch")
    rows = []
    for m in mats:
        rows.extend(m.rows)
    return Matrix(rows, ncols=ncols)


def block_diag(mats: Sequence[Matrix]) -> Matrix:
    total_r = sum(m.nrows for m in mats)
    total_c = sum(m.ncols for m in mats)
    out = [[Q(0)] * total_c for _ in range(total_r)]
    r0 = c0 = 0
    for m in mats:
        for i, row in enumerate(m.rows):
            for j, e in enumerate(row):
                out[r0 + i][c0 + j] = e
        r0 += m.nrows
        c0 += m.ncols
    return Matrix(out, ncols=total_c)


def column_space_coords(basis: Sequence[Vector], v: Sequence[Q]) -> Vector | None:
    """Coordinates of v in the span of basis, or None if outside."""
    B = Matrix.from_cols(basis, nrows=len(v))
    return B.solve(v)


def quotient_basis(sub: Sequence[Vector], space_dim: int) -> list[int]:
    """Indices of standard basis vectors completing `sub` to a basis.

    Returns e_i indices whose classes form a basis of the quotient by span(sub).
    """
    cols = list(sub)
    chosen = []
    for i in range(space_dim):
        e = tuple(Q(1) if j == i else Q(0) for j in range(space_dim))
        trial = cols + [e]
        if Matrix.from_cols(trial, nrows=space_dim).rank() > Matrix.from_cols(cols, nrows=space_dim).rank():
            cols.append(e)
            chosen.append(i)
    return chosen
