"""3-term homotopy Lie data and the defining identity checks.

The structure is a graded space V_0 + V_1 + V_2 with brackets l1..l4 of
weights -1..2.  The generalized Jacobi identity of order n is

    sum_{i+j=n+1} sum_{(i,n-i)-shuffles s} chi(s) (-1)^{i(j-1)}
        l_j(l_i(a_{s1},..,a_{si}), a_{s(i+1)},..,a_{sn}) = 0

and is checked exhaustively on canonical basis tuples; multilinearity makes
that complete.  All residuals are exact rational vectors.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Sequence

from .graded import (GradedSpace, GradedVector, MultiMap, enumerate_shuffles,
                     koszul_chi)
from .linalg import Q

Key = tuple[tuple[int, int], ...]


@dataclass(frozen=True)
class LInfinityData:
    """Candidate 3-term structure: (V, l1, l2, l3, l4)."""

    space: GradedSpace
    l1: MultiMap
    l2: MultiMap
    l3: MultiMap
    l4: MultiMap

    def __post_init__(self):
        if self.space.top_degree != 2:
            raise ValueError("a 3-term structure lives in degrees 0..2")
        expect = {1: (self.l1, -1), 2: (self.l2, 0), 3: (self.l3, 1), 4: (self.l4, 2)}
        for arity, (m, w) in expect.items():
            if m.space != self.space:
                raise ValueError(f"l{arity} lives on a different space")
            if m.arity != arity or m.weight != w:
                raise ValueError(f"l{arity} must have arity {arity} and weight {w}")

    def bracket(self, k: int) -> MultiMap | None:
        return {1: self.l1, 2: self.l2, 3: self.l3, 4: self.l4}.get(k)

    @staticmethod
    def zero(space: GradedSpace) -> "LInfinityData":
        return LInfinityData(space,
                             MultiMap.zero(1, -1, space), MultiMap.zero(2, 0, space),
                             MultiMap.zero(3, 1, space), MultiMap.zero(4, 2, space))


@dataclass(frozen=True)
class Violation:
    key: Key
    residual: GradedVector
    tag: str


@dataclass(frozen=True)
class ConditionReport:
    n: int
    violations: tuple[Violation, ...]
    tags_checked: tuple[str, ...] = ()

    @property
    def passed(self) -> bool:
        return not self.violations


def linfty_residual(data: LInfinityData, n: int, args: Sequence[GradedVector]) -> GradedVector:
    """Left-hand side of the order-n identity on the given arguments."""
    if len(args) != n:
        raise ValueError(f"order {n} needs {n} arguments")
    for a in args:
        if a.space != data.space:
            raise ValueError("argument from a different space")
    degrees = []
    for a in args:
        d = a.degree()
        if d is None and not a.is_zero():
            raise ValueError("arguments must be homogeneous")
        degrees.append(0 if d is None else d)
    out = GradedVector.zero(data.space)
    for i in range(1, n + 1):
        j = n + 1 - i
        li, lj = data.bracket(i), data.bracket(j)
        if li is None or lj is None:
            continue
        coeff = -1 if (i * (j - 1)) % 2 else 1
        for sigma in enumerate_shuffles(i, n - i):
            chi = koszul_chi(sigma, degrees)
            perm = sigma.apply(list(args))
            inner = li.eval(list(perm[:i]))
            term = lj.eval([inner] + list(perm[i:]))
            out = out + term.scale(chi * coeff)
    return out


def _canonical_tuples(space: GradedSpace, n: int):
    """Basis tuples in canonical order; repeated even-degree entries are skipped
    since the residual is graded antisymmetric."""
    for key in itertools.combinations_with_replacement(space.basis(), n):
        if any(a == b and a[0] % 2 == 0 for a, b in zip(key, key[1:])):
            continue
        yield key


def degree_tag(n: int, key: Key) -> str:
    return f"n={n} degrees ({', '.join(str(d) for d, _ in key)})"


def check_condition(data: LInfinityData, n: int) -> ConditionReport:
    """Exhaustive order-n check over canonical basis tuples.

    For n > 5 the identity is trivial for 3-term data; the residuals are
    still computed rather than assumed away.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    violations = []
    tags = []
    for key in _canonical_tuples(data.space, n):
        args = [GradedVector.basis_vector(data.space, d, i) for d, i in key]
        tag = degree_tag(n, key)
        if tag not in tags:
            tags.append(tag)
        res = linfty_residual(data, n, args)
        if not res.is_zero():
            violations.append(Violation(key, res, tag))
    return ConditionReport(n, tuple(violations), tuple(tags))


def check_all(data: LInfinityData, n_max: int = 5) -> list[ConditionReport]:
    return [check_condition(data, n) for n in range(1, n_max + 1)]


def is_special(data: LInfinityData) -> tuple[bool, Key | None]:
    """True iff l2 vanishes on V1 x V1 and l3 on triples of total degree 1."""
    for key, _ in data.l2.entries():
        if key[0][0] == 1 and key[1][0] == 1:
            return False, key
    for key, _ in data.l3.entries():
        if sum(d for d, _ in key) == 1:
            return False, key
    return True, None


def from_four_cocycle(bracket: MultiMap, action: MultiMap, cochain: MultiMap) -> LInfinityData:
    """Assemble (V, l2 = bracket + action, l3 = 0, l4 = cochain) with V_1 = 0.

    The caller decides validity by running the order 1..5 checks: n=3 is the
    Jacobi identity, n=4 the representation law, n=5 the cocycle law.
    """
    space = bracket.space
    if space.dims[1] != 0:
        raise ValueError("the two-term construction requires dim V_1 = 0")
    for m, name, (ar, w) in ((bracket, "bracket", (2, 0)), (action, "action", (2, 0)),
                             (cochain, "cochain", (4, 2))):
        if m.space != space:
            raise ValueError(f"{name} lives on a different space")
        if (m.arity, m.weight) != (ar, w):
            raise ValueError(f"{name} must have arity {ar} and weight {w}")
    for key, _ in bracket.entries():
        if any(d != 0 for d, _ in key):
            raise ValueError("bracket entries must be on V0 x V0")
    for key, _ in action.entries():
        if sorted(d for d, _ in key) != [0, 2]:
            raise ValueError("action entries must pair V0 with V2")
    for key, _ in cochain.entries():
        if any(d != 0 for d, _ in key):
            raise ValueError("cochain entries must be on V0^4")
    return LInfinityData(space, MultiMap.zero(1, -1, space), bracket + action,
                         MultiMap.zero(3, 1, space), cochain)
