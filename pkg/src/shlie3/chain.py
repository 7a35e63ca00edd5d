"""Bounded chain complexes of rational vector spaces and chain maps."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .linalg import Matrix


@dataclass(frozen=True)
class ChainComplexT:
    """Non-negatively graded complex, degrees 0..N, with d(d(x)) = 0.

    ``diffs[n]`` is the matrix of the differential C_n -> C_{n-1}, for
    n in 1..N.
    """

    dims: tuple[int, ...]
    diffs: tuple[Matrix, ...]

    def __post_init__(self):
        object.__setattr__(self, "dims", tuple(int(d) for d in self.dims))
        diffs = tuple(self.diffs)
        if len(diffs) != max(len(self.dims) - 1, 0):
            raise ValueError("need one differential per degree 1..N")
        for n, d in enumerate(diffs, start=1):
            if d.shape != (self.dims[n - 1], self.dims[n]):
                raise ValueError(f"differential {n} has shape {d.shape}, "
                                 f"expected {(self.dims[n - 1], self.dims[n])}")
        object.__setattr__(self, "diffs", diffs)
        for n in range(2, len(self.dims)):
            if not (self.diff(n - 1) @ self.diff(n)).is_zero():
                raise ValueError(f"d o d != 0 at degree {n}")

    @property
    def top_degree(self) -> int:
        return len(self.dims) - 1

    def diff(self, n: int) -> Matrix:
        """Differential C_n -> C_{n-1} (zero matrix outside 1..N)."""
        if 1 <= n <= self.top_degree:
            return self.diffs[n - 1]
        if n == self.top_degree + 1:
            return Matrix.zeros(self.dims[self.top_degree], 0)
        return Matrix.zeros(0, 0)

    def dim(self, n: int) -> int:
        return self.dims[n] if 0 <= n <= self.top_degree else 0


@dataclass(frozen=True)
class ChainMapT:
    """Degreewise matrices commuting with the differentials."""

    source: ChainComplexT
    target: ChainComplexT
    maps: tuple[Matrix, ...]

    def __post_init__(self):
        maps = tuple(self.maps)
        N = min(self.source.top_degree, self.target.top_degree)
        if len(maps) != N + 1:
            raise ValueError(f"need {N + 1} level maps")
        for n, f in enumerate(maps):
            if f.shape != (self.target.dim(n), self.source.dim(n)):
                raise ValueError(f"level {n} map has shape {f.shape}")
        object.__setattr__(self, "maps", maps)

    def level(self, n: int) -> Matrix:
        if 0 <= n < len(self.maps):
            return self.maps[n]
        return Matrix.zeros(self.target.dim(n), self.source.dim(n))

    def is_chain_map(self) -> bool:
        for n in range(1, len(self.maps)):
            lhs = self.target.diff(n) @ self.maps[n]
            rhs = self.maps[n - 1] @ self.source.diff(n)
            if lhs != rhs:
                return False
        return True


def tensor_complex(C: ChainComplexT, D: ChainComplexT, trunc: int | None = None) -> tuple[ChainComplexT, list[list[tuple[int, int]]]]:
    """(C (x) D, layout), with the usual sign d(a (x) b) = da (x) b + (-1)^p a (x) db.

    layout[n] lists the (p, q) blocks of degree n in order; within block
    (p, q) coordinates are row-major a-index * dim(D_q) + b-index.
    """
    N = trunc if trunc is not None else C.top_degree + D.top_degree
    layout = [[(p, n - p) for p in range(n + 1)
               if C.dim(p) > 0 and D.dim(n - p) > 0] for n in range(N + 1)]
    dims = [sum(C.dim(p) * D.dim(q) for p, q in layout[n]) for n in range(N + 1)]

    def block_offset(n, p, q):
        off = 0
        for (pp, qq) in layout[n]:
            if (pp, qq) == (p, q):
                return off
            off += C.dim(pp) * D.dim(qq)
        return None

    diffs = []
    for n in range(1, N + 1):
        rows = dims[n - 1]
        cols = dims[n]
        m = [[0 for _ in range(cols)] for _ in range(rows)]
        coff = 0
        for (p, q) in layout[n]:
            dp, dq = C.dim(p), D.dim(q)
            # da (x) b lands in block (p-1, q)
            if p >= 1:
                roff = block_offset(n - 1, p - 1, q)
                if roff is not None:
                    dC = C.diff(p)
                    for a in range(dp):
                        for b in range(dq):
                            for a2 in range(C.dim(p - 1)):
                                m[roff + a2 * dq + b][coff + a * dq + b] += dC.rows[a2][a]
            # (-1)^p a (x) db lands in block (p, q-1)
            if q >= 1:
                roff = block_offset(n - 1, p, q - 1)
                if roff is not None:
                    dD = D.diff(q)
                    sgn = -1 if p % 2 else 1
                    for a in range(dp):
                        for b in range(dq):
                            for b2 in range(D.dim(q - 1)):
                                m[roff + a * D.dim(q - 1) + b2][coff + a * dq + b] += sgn * dD.rows[b2][b]
            coff += dp * dq
        diffs.append(Matrix(m, ncols=cols))
    return ChainComplexT(tuple(dims), tuple(diffs)), layout


def homology_data(C: ChainComplexT, n: int):
    """(cycle basis, matrix context) for H_n = ker d_n / im d_{n+1}.

    Returns (reps, ker_basis, im_basis) where reps are cycle vectors whose
    classes form a basis of H_n.
    """
    from .linalg import Matrix as M, quotient_basis

    dn = C.diff(n)
    if C.dim(n) == 0:
        return [], [], []
    if dn.nrows == 0:
        ker = [tuple((1 if j == i else 0) for j in range(C.dim(n))) for i in range(C.dim(n))]
        ker = [tuple(map(lambda x: x, k)) for k in ker]
    else:
        ker = dn.nullspace()
    dnp = C.diff(n + 1)
    im = [dnp.col(j) for j in range(dnp.ncols)] if dnp.ncols else []
    # coordinates of the image inside the kernel
    if ker:
        K = M.from_cols(ker, nrows=C.dim(n))
        im_in_ker = []
        for v in im:
            x = K.solve(v)
            if x is None:
                raise ValueError("boundary not a cycle")
            im_in_ker.append(x)
        free = quotient_basis(im_in_ker, len(ker))
        reps = [ker[i] for i in free]
    else:
        reps = []
    return reps, ker, im


def induced_on_homology(C: ChainComplexT, n: int, f: Matrix) -> tuple[Matrix, Matrix]:
    """(induced matrix, identity of same size) for an endo chain map level f on H_n."""
    from .linalg import Matrix as M, hstack

    reps, ker, im = homology_data(C, n)
    h = len(reps)
    if h == 0:
        return M.zeros(0, 0), M.zeros(0, 0)
    # express f(rep) as combination of reps modulo boundaries
    cols = []
    B = M.from_cols(list(reps) + list(im), nrows=C.dim(n)) if (reps or im) else None
    for r in reps:
        v = f.apply(r)
        x = B.solve(v)
        if x is None:
            raise ValueError("image of a cycle leaves the cycle space")
        cols.append(tuple(x[:h]))
    return M.from_cols(cols, nrows=h), M.eye(h)
