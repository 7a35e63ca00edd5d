"""Truncated simplicial vector spaces, nerves, normalization, EZ/AW maps.

Everything is finite-dimensional and truncated at a fixed top level; all
identities are verified exactly within the truncation.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Sequence

from .chain import ChainComplexT, ChainMapT, induced_on_homology, tensor_complex
from .lincat import LinearNCat, NFunctor, TensorCat, tensor_product
from .linalg import Matrix, Q, Vector, hstack, vadd, vis_zero, vstack, vzero


def _mat(action: Callable[[Vector], Sequence[Q]], dim_in: int, dim_out: int) -> Matrix:
    if dim_out == 0 or dim_in == 0:
        return Matrix.zeros(dim_out, dim_in)
    cols = []
    for j in range(dim_in):
        e = tuple(Q(1) if k == j else Q(0) for k in range(dim_in))
        cols.append(tuple(Q(c) for c in action(e)))
    return Matrix.from_cols(cols, nrows=dim_out)


@dataclass(frozen=True)
class SimplicialVS:
    """Simplicial vector space truncated at level N.

    ``faces[n-1][i]`` is d_i: S_n -> S_{n-1} (n in 1..N, 0 <= i <= n) and
    ``degens[n][i]`` is s_i: S_n -> S_{n+1} (n in 0..N-1, 0 <= i <= n).
    """

    dims: tuple[int, ...]
    faces: tuple[tuple[Matrix, ...], ...]
    degens: tuple[tuple[Matrix, ...], ...]

    def __post_init__(self):
        N = len(self.dims) - 1
        if N < 1:
            raise ValueError("need at least levels 0 and 1")
        if len(self.faces) != N or len(self.degens) != N:
            raise ValueError("face/degeneracy family lengths do not match truncation")
        for n in range(1, N + 1):
            ops = self.faces[n - 1]
            if len(ops) != n + 1:
                raise ValueError(f"level {n} needs faces d_0..d_{n}")
            for d in ops:
                if d.shape != (self.dims[n - 1], self.dims[n]):
                    raise ValueError(f"face at level {n} has shape {d.shape}")
        for n in range(N):
            ops = self.degens[n]
            if len(ops) != n + 1:
                raise ValueError(f"level {n} needs degeneracies s_0..s_{n}")
            for s in ops:
                if s.shape != (self.dims[n + 1], self.dims[n]):
                    raise ValueError(f"degeneracy at level {n} has shape {s.shape}")
        self._check_identities()

    def _check_identities(self):
        N = self.trunc
        for n in range(2, N + 1):
            for j in range(n + 1):
                for i in range(j):
                    if self.d(n - 1, i) @ self.d(n, j) != self.d(n - 1, j - 1) @ self.d(n, i):
                        raise ValueError(f"face identity fails at level {n}, (i,j)=({i},{j})")
        for n in range(N - 1):
            for i in range(n + 1):
                for j in range(i, n + 1):
                    if self.s(n + 1, j + 1) @ self.s(n, i) != self.s(n + 1, i) @ self.s(n, j):
                        raise ValueError(f"degeneracy identity fails at level {n}, (i,j)=({i},{j})")
        for n in range(N):
            eye = Matrix.eye(self.dims[n])
            for j in range(n + 1):
                for i in range(n + 2):
                    lhs = self.d(n + 1, i) @ self.s(n, j)
                    if i < j:
                        rhs = self.s(n - 1, j - 1) @ self.d(n, i)
                    elif i in (j, j + 1):
                        rhs = eye
                    else:
                        rhs = self.s(n - 1, j) @ self.d(n, i - 1)
                    if lhs != rhs:
                        raise ValueError(f"mixed identity fails at level {n}, (i,j)=({i},{j})")

    @property
    def trunc(self) -> int:
        return len(self.dims) - 1

    def dim(self, n: int) -> int:
        return self.dims[n]

    def d(self, n: int, i: int) -> Matrix:
        return self.faces[n - 1][i]

    def s(self, n: int, i: int) -> Matrix:
        return self.degens[n][i]


# -- nerve ------------------------------------------------------------


def nerve(L: LinearNCat, N: int) -> SimplicialVS:
    """Nerve of a linear category (n=1), truncated at level N.

    n-simplices are chains of n composable arrows in the coordinates
    (x; f_1..f_n): the i-th arrow runs from x + l1(f_1+..+f_{i-1}) with
    kernel part f_i.  Faces compose (d_0 drops the first arrow, d_n the
    last, inner faces add consecutive kernel parts); degeneracies insert
    zero arrows.
    """
    if L.n != 1:
        raise ValueError("the nerve is taken of a linear category (n = 1)")
    if N < 1:
        raise ValueError("need truncation >= 1")
    n0, n1 = L.dim(0), L.dim(1)
    l1 = L.t_matrix(1)
    dims = tuple(n0 + n * n1 for n in range(N + 1))

    def split(v, n):
        x = tuple(v[:n0])
        fs = [tuple(v[n0 + k * n1: n0 + (k + 1) * n1]) for k in range(n)]
        return x, fs

    def join(x, fs):
        out = list(x)
        for f in fs:
            out.extend(f)
        return tuple(out)

    def face(n, i):
        def act(v):
            x, fs = split(v, n)
            if i == 0:
                return join(vadd(x, l1.apply(fs[0])), fs[1:])
            if i == n:
                return join(x, fs[:-1])
            merged = fs[: i - 1] + [vadd(fs[i - 1], fs[i])] + fs[i + 1:]
            return join(x, merged)
        return _mat(act, dims[n], dims[n - 1])

    def degen(n, i):
        def act(v):
            x, fs = split(v, n)
            return join(x, fs[:i] + [vzero(n1)] + fs[i:])
        return _mat(act, dims[n], dims[n + 1])

    faces = tuple(tuple(face(n, i) for i in range(n + 1)) for n in range(1, N + 1))
    degens = tuple(tuple(degen(n, i) for i in range(n + 1)) for n in range(N))
    return SimplicialVS(dims, faces, degens)


def nerve_map(F: NFunctor, N: int) -> list[Matrix]:
    """Level maps of the simplicial morphism induced by a linear functor."""
    src, dst = F.source_cat, F.target_cat
    if src.n != 1 or dst.n != 1:
        raise ValueError("nerve maps need linear categories")
    l1 = src.t_matrix(1)
    n0, n1 = src.dim(0), src.dim(1)
    out = []
    for n in range(N + 1):
        def act(v, n=n):
            x = tuple(v[:n0])
            fs = [tuple(v[n0 + k * n1: n0 + (k + 1) * n1]) for k in range(n)]
            img = list(F.level_maps[0].apply(x))
            base = x
            for f in fs:
                arrow = F.apply(src.unflatten(1, tuple(base) + f))
                img.extend(arrow.components[1])
                base = vadd(base, l1.apply(f))
            return tuple(img)
        out.append(_mat(act, n0 + n * n1, dst.dim(0) + n * dst.dim(1)))
    return out


def constant_svs(N: int) -> SimplicialVS:
    """The constant simplicial line: every level is the ground field."""
    eye = Matrix.eye(1)
    faces = tuple(tuple(eye for _ in range(n + 1)) for n in range(1, N + 1))
    degens = tuple(tuple(eye for _ in range(n + 1)) for n in range(N))
    return SimplicialVS((1,) * (N + 1), faces, degens)


# -- normalization ----------------------------------------------------


def moore_bases(S: SimplicialVS) -> list[list[Vector]]:
    """Basis of the normalized subspace at each level (kernel of d_1..d_n)."""
    bases = [[tuple(Q(1) if j == i else Q(0) for j in range(S.dim(0)))
              for i in range(S.dim(0))]]
    for n in range(1, S.trunc + 1):
        stack = [S.d(n, i) for i in range(1, n + 1)]
        big = vstack(stack)
        if big.nrows == 0:
            bases.append([tuple(Q(1) if j == i else Q(0) for j in range(S.dim(n)))
                          for i in range(S.dim(n))])
        else:
            bases.append(big.nullspace())
    return bases


def moore(S: SimplicialVS) -> ChainComplexT:
    """Normalized chain complex: levelwise kernel of d_1..d_n with boundary d_0."""
    bases = moore_bases(S)
    dims = tuple(len(b) for b in bases)
    diffs = []
    for n in range(1, S.trunc + 1):
        Bprev = Matrix.from_cols(bases[n - 1], nrows=S.dim(n - 1))
        cols = []
        for v in bases[n]:
            w = S.d(n, 0).apply(v)
            x = Bprev.solve(w)
            if x is None:
                raise ValueError("boundary leaves the normalized subspace")
            cols.append(x)
        M = Matrix.from_cols(cols, nrows=dims[n - 1])
        if M.ncols == 0:
            M = Matrix.zeros(dims[n - 1], 0)
        diffs.append(M)
    return ChainComplexT(dims, tuple(diffs))


def moore_of_nerve_check(L: LinearNCat, N: int = 3) -> bool:
    """Normalizing the nerve recovers the kernel complex (V_0, V_1, l1)."""
    if L.n != 1:
        raise ValueError("needs a linear category")
    S = nerve(L, N)
    bases = moore_bases(S)
    C = moore(S)
    n0, n1 = L.dim(0), L.dim(1)
    if C.dims[0] != n0 or C.dims[1] != n1:
        return False
    if any(C.dims[k] != 0 for k in range(2, len(C.dims))):
        return False
    # level-1 normalized vectors have zero base point; their kernel parts
    # must carry d_0 to l1
    T1 = Matrix([[b[n0 + j] for b in bases[1]] for j in range(n1)], ncols=n1)
    for b in bases[1]:
        if not vis_zero(b[:n0]):
            return False
    B0 = Matrix.from_cols(bases[0], nrows=n0)
    return B0 @ C.diff(1) == L.t_matrix(1) @ T1


# -- tensor products --------------------------------------------------


def tensor_svs(S: SimplicialVS, T: SimplicialVS) -> SimplicialVS:
    if S.trunc != T.trunc:
        raise ValueError("truncation mismatch")
    N = S.trunc
    dims = tuple(S.dim(n) * T.dim(n) for n in range(N + 1))
    faces = tuple(tuple(S.d(n, i).kron(T.d(n, i)) for i in range(n + 1))
                  for n in range(1, N + 1))
    degens = tuple(tuple(S.s(n, i).kron(T.s(n, i)) for i in range(n + 1))
                   for n in range(N))
    return SimplicialVS(dims, faces, degens)


def _shuffle_sign(mu: Sequence[int], nu: Sequence[int]) -> int:
    sign = 1
    for a in mu:
        for b in nu:
            if a > b:
                sign = -sign
    return sign


def _degeneracy_chain(S: SimplicialVS, level: int, v: Vector, indices: Sequence[int]) -> Vector:
    for k, i in enumerate(indices):
        v = S.s(level + k, i).apply(v)
    return v


def ez(S: SimplicialVS, T: SimplicialVS) -> ChainMapT:
    """Shuffle map from moore(S) (x) moore(T) to moore(tensor_svs(S, T)).

    On a (x) b of bidegree (p, q) it is the signed sum over (p,q)-shuffles
    (mu, nu) of {0..p+q-1} of s_{nu_q}..s_{nu_1} a (x) s_{mu_p}..s_{mu_1} b.
    """
    N = S.trunc
    ST = tensor_svs(S, T)
    bS, bT, bST = moore_bases(S), moore_bases(T), moore_bases(ST)
    CS, CT, CST = moore(S), moore(T), moore(ST)
    prod, layout = tensor_complex(CS, CT, trunc=N)
    maps = []
    for n in range(N + 1):
        cols: list[Vector] = []
        BST = Matrix.from_cols(bST[n], nrows=ST.dim(n))
        for (p, q) in layout[n]:
            for a in bS[p]:
                for b in bT[q]:
                    raw = tuple(vzero(ST.dim(n)))
                    for mu in itertools.combinations(range(n), p):
                        nu = tuple(k for k in range(n) if k not in mu)
                        va = _degeneracy_chain(S, p, a, nu)
                        vb = _degeneracy_chain(T, q, b, mu)
                        term = tuple(x * y for x in va for y in vb)
                        sgn = _shuffle_sign(mu, nu)
                        raw = vadd(raw, term) if sgn > 0 else tuple(
                            r - t for r, t in zip(raw, term))
                    coords = BST.solve(raw)
                    if coords is None:
                        raise ValueError("shuffle image is not normalized")
                    cols.append(coords)
        M = Matrix.from_cols(cols, nrows=len(bST[n]))
        if M.ncols != prod.dim(n):
            M = Matrix.zeros(len(bST[n]), prod.dim(n))
        maps.append(M)
    f = ChainMapT(prod, CST, tuple(maps))
    if not f.is_chain_map():
        raise AssertionError("shuffle map failed the chain-map property")
    return f


def _degenerate_basis(S: SimplicialVS, n: int) -> list[Vector]:
    """Basis of the span of degeneracy images inside S_n (n >= 1)."""
    stacked = hstack([S.s(n - 1, i) for i in range(n)])
    _, pivots = stacked.rref()
    return [stacked.col(j) for j in pivots]


def _moore_projection(S: SimplicialVS, bases: list[list[Vector]], n: int) -> Matrix:
    """Projection S_n -> normalized coordinates, along the degenerate part."""
    B = bases[n]
    deg = _degenerate_basis(S, n) if n >= 1 else []
    full = Matrix.from_cols(list(B) + deg, nrows=S.dim(n))
    X = full.solve_matrix(Matrix.eye(S.dim(n)))
    if X is None:
        raise ValueError("normalized plus degenerate parts do not span")
    return Matrix(X.rows[: len(B)], ncols=S.dim(n))


def aw(S: SimplicialVS, T: SimplicialVS) -> ChainMapT:
    """Front-face/back-face map from moore(tensor_svs(S,T)) to moore(S) (x) moore(T).

    a (x) b in degree n goes to the sum over p+q=n of
    (d_{p+1}..d_n a) (x) (d_0^p b), each factor projected to the
    normalized subspace along the degenerate one.
    """
    N = S.trunc
    ST = tensor_svs(S, T)
    bS, bT, bST = moore_bases(S), moore_bases(T), moore_bases(ST)
    CS, CT, CST = moore(S), moore(T), moore(ST)
    prod, layout = tensor_complex(CS, CT, trunc=N)
    maps = []
    for n in range(N + 1):
        BST = Matrix.from_cols(bST[n], nrows=ST.dim(n))
        if BST.ncols == 0:
            BST = Matrix.zeros(ST.dim(n), 0)
        blocks = []
        for (p, q) in layout[n]:
            front = Matrix.eye(S.dim(n))
            for k in range(n, p, -1):
                front = S.d(k, k) @ front
            back = Matrix.eye(T.dim(n))
            for k in range(n, q, -1):
                back = T.d(k, 0) @ back
            PS = _moore_projection(S, bS, p)
            PT = _moore_projection(T, bT, q)
            blocks.append((PS @ front).kron(PT @ back))
        big = vstack(blocks) if blocks else Matrix.zeros(prod.dim(n), ST.dim(n))
        maps.append(big @ BST)
    f = ChainMapT(CST, prod, tuple(maps))
    if not f.is_chain_map():
        raise AssertionError("front-face map failed the chain-map property")
    return f


def aw_after_ez_identity(S: SimplicialVS, T: SimplicialVS) -> bool:
    """Exact identity of the aw-then-ez round trip on the Moore tensor."""
    f, g = ez(S, T), aw(S, T)
    for n in range(S.trunc + 1):
        M = g.level(n) @ f.level(n)
        if M != Matrix.eye(M.nrows):
            return False
    return True


def aw_ez_homology_check(S: SimplicialVS, T: SimplicialVS, max_degree: int = 3) -> bool:
    """The ez-then-aw round trip induces the identity on homology."""
    f, g = ez(S, T), aw(S, T)
    C = moore(tensor_svs(S, T))
    for n in range(min(S.trunc, max_degree) + 1):
        induced, eye = induced_on_homology(C, n, f.level(n) @ g.level(n))
        if induced != eye:
            return False
    return True


# -- the composition obstruction --------------------------------------


@dataclass(frozen=True)
class ObstructionReport:
    compose_tensor_identity_holds: bool
    obstructed: bool
    witness_index: tuple[int, int] | None
    witness_difference: Vector | None
    kernel_dim: int
    message: str


def _simplex_arrows(L: LinearNCat, v: Vector, n: int) -> list[Vector]:
    """Raw 1-cells of a nerve n-simplex (x; f_1..f_n)."""
    n0, n1 = L.dim(0), L.dim(1)
    x = tuple(v[:n0])
    arrows = []
    for k in range(n):
        f = tuple(v[n0 + k * n1: n0 + (k + 1) * n1])
        arrows.append(tuple(x) + f)
        x = vadd(x, L.t_matrix(1).apply(f))
    return arrows


def _pairing_matrix(L: LinearNCat, tc: TensorCat, n: int) -> Matrix:
    """Matrix of the arrowwise pairing (𝒮 (x) 𝒮)_n -> nerve(L ⊠ L)_n.

    A pair of n-simplices goes to the chain whose i-th arrow is the tensor
    of the i-th arrows, written in the kernel coordinates of the tensor
    category.
    """
    S = nerve(L, max(n, 1))
    dim_in = S.dim(n) * S.dim(n)
    m0, m1 = tc.cat.dim(0), tc.cat.dim(1)
    dim_out = m0 + n * m1

    cols = []
    for a in range(S.dim(n)):
        ea = tuple(Q(1) if j == a else Q(0) for j in range(S.dim(n)))
        arrows_a = _simplex_arrows(L, ea, n)
        for b in range(S.dim(n)):
            eb = tuple(Q(1) if j == b else Q(0) for j in range(S.dim(n)))
            arrows_b = _simplex_arrows(L, eb, n)
            if n == 0:
                cell = tc.raw_to_cell(0, tuple(x * y for x in ea for y in eb))
                cols.append(cell.components[0])
                continue
            out: list[Q] = []
            for i, (va, vb) in enumerate(zip(arrows_a, arrows_b)):
                cell = tc.raw_to_cell(1, tuple(x * y for x in va for y in vb))
                if i == 0:
                    out.extend(cell.components[0])
                out.extend(cell.components[1])
            cols.append(tuple(out))
    M = Matrix.from_cols(cols, nrows=dim_out)
    if M.ncols != dim_in:
        M = Matrix.zeros(dim_out, dim_in)
    return M


def compose_tensor_identity(L: LinearNCat, tc: TensorCat) -> bool:
    """(v o w) (x) (v' o w') = (v (x) v') o (w (x) w')
    + (v - 1_{tv}) (x) w'_ker + w_ker (x) (v' - 1_{tv'}),
    checked on spanning composable pairs."""
    n1 = L.dim(1)

    def ker_flat(w):  # the kernel part of a 1-cell, as a raw 1-cell
        return vzero(L.dim(0)) + w.components[1]

    def unit_deficit(v):  # v - 1_{tv} in raw form
        t = L.target(v).components[0]
        return tuple(a - b for a, b in zip(L.flatten(v), tuple(t) + vzero(n1)))

    cells = list(L.spanning_cells(1))
    tails = [vzero(n1)] + [tuple(Q(1) if j == i else Q(0) for j in range(n1))
                           for i in range(n1)]
    for v in cells:
        for tw in tails:
            w = L.pad_composable(v, [tw], 0)
            for vp in cells:
                for twp in tails:
                    wp = L.pad_composable(vp, [twp], 0)
                    lflat = L.flatten(L.compose(v, w, 0))
                    rflat = L.flatten(L.compose(vp, wp, 0))
                    lhs = tuple(x * y for x in lflat for y in rflat)
                    comp = tc.compose_raw(
                        tuple(x * y for x in L.flatten(v) for y in L.flatten(vp)),
                        tuple(x * y for x in L.flatten(w) for y in L.flatten(wp)),
                        1, 0)
                    c1 = tuple(x * y for x in unit_deficit(v) for y in ker_flat(wp))
                    c2 = tuple(x * y for x in ker_flat(w) for y in unit_deficit(vp))
                    rhs = vadd(vadd(comp, c1), c2)
                    if lhs != rhs:
                        return False
    return True


def obstruction_demo(L: LinearNCat) -> ObstructionReport:
    """Why the arrowwise pairing into the tensor category is not simplicial.

    Verifies the composition/tensor interchange identity, then compares the
    two ways around the square built from the inner face d_2 at level 3; a
    nonzero difference is the obstruction witness.  Also reports the kernel
    dimension of the level-2 pairing.
    """
    if L.n != 1:
        raise ValueError("needs a linear category")
    tc = tensor_product(L, L)
    identity_ok = compose_tensor_identity(L, tc)
    S = nerve(L, 3)
    NT = nerve(tc.cat, 3)
    M2 = _pairing_matrix(L, tc, 2)
    M3 = _pairing_matrix(L, tc, 3)
    lhs = M2 @ (S.d(3, 2).kron(S.d(3, 2)))
    rhs = NT.d(3, 2) @ M3
    diff = lhs - rhs
    kernel_dim = M2.ncols - M2.rank()
    witness = None
    wdiff = None
    for j in range(diff.ncols):
        col = diff.col(j)
        if not vis_zero(col):
            witness = (j // S.dim(3), j % S.dim(3))
            wdiff = col
            break
    if L.dim(1) == 0:
        msg = "no obstruction: V1 = 0 makes the pairing simplicial"
        obstructed = False
    elif witness is not None:
        msg = "obstruction: the pairing does not commute with the inner face d_2"
        obstructed = True
    else:
        msg = "no witness found at level 3"
        obstructed = False
    return ObstructionReport(identity_ok, obstructed, witness, wdiff, kernel_dim, msg)
