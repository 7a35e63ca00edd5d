"""JSON data files for algebras, complexes and simplicial spaces.

The format is UTF-8 JSON with top-level keys ``kind``, ``dims``, ``maps``
and optional ``metadata``.  Rationals are written as strings "p" or "p/q"
so that parsing is exact.  Canonical rendering sorts keys and entries, so
parse and render are mutually inverse on canonical files.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from .chain import ChainComplexT
from .graded import GradedSpace, MultiMap, build_multimap, ContradictionError
from .lie3 import Lie3Data
from .lincat import LinearNCat
from .linalg import Matrix, Q
from .linfinity import LInfinityData

KINDS = ("linfinity", "lie3", "chain", "simplicial")
MAP_KEYS = {
    "linfinity": ("l1", "l2", "l3", "l4"),
    "lie3": ("l1", "bracket", "J", "mu"),
}
ARITY_WEIGHT = {
    "l1": (1, -1), "l2": (2, 0), "l3": (3, 1), "l4": (4, 2),
    "bracket": (2, 0), "J": (3, 1), "mu": (4, 2),
}


class SpecError(ValueError):
    """Parse or validation failure, annotated with the JSON path."""

    def __init__(self, msg: str, path: str = "$"):
        super().__init__(f"{path}: {msg}")
        self.path = path


@dataclass(frozen=True)
class AlgebraSpecFile:
    kind: str
    dims: tuple[int, ...]
    maps: dict[str, Any]
    metadata: dict[str, str] = field(default_factory=dict)


def parse_rational(v, path: str) -> Q:
    if isinstance(v, bool):
        raise SpecError("expected a rational, got a boolean", path)
    if isinstance(v, int):
        return Q(v)
    if isinstance(v, str):
        try:
            return Fraction(v)
        except (ValueError, ZeroDivisionError) as e:
            raise SpecError(f"malformed rational {v!r} ({e})", path) from None
    raise SpecError(f"expected a rational string, got {type(v).__name__}", path)


def render_rational(q: Q) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _expect_keys(obj: dict, allowed: tuple[str, ...], required: tuple[str, ...], path: str):
    for k in obj:
        if k not in allowed:
            raise SpecError(f"unknown key {k!r}", path)
    for k in required:
        if k not in obj:
            raise SpecError(f"missing key {k!r}", path)


def parse_spec(text: str) -> AlgebraSpecFile:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as e:
        raise SpecError(f"invalid JSON at line {e.lineno}, column {e.colno}: {e.msg}") from None
    if not isinstance(obj, dict):
        raise SpecError("top level must be an object")
    _expect_keys(obj, ("kind", "dims", "maps", "metadata"), ("kind", "dims", "maps"), "$")
    kind = obj["kind"]
    if kind not in KINDS:
        raise SpecError(f"unknown kind {kind!r}", "$.kind")
    dims = obj["dims"]
    if (not isinstance(dims, list) or not dims
            or any(not isinstance(d, int) or isinstance(d, bool) or d < 0 for d in dims)):
        raise SpecError("dims must be a non-empty list of non-negative integers", "$.dims")
    maps = obj["maps"]
    if not isinstance(maps, dict):
        raise SpecError("maps must be an object", "$.maps")
    metadata = obj.get("metadata", {})
    if not isinstance(metadata, dict) or any(
            not isinstance(k, str) or not isinstance(v, str) for k, v in metadata.items()):
        raise SpecError("metadata must map strings to strings", "$.metadata")
    spec = AlgebraSpecFile(kind, tuple(dims), maps, dict(metadata))
    # full semantic validation happens in the kind-specific builder
    build(spec)
    return spec


def _parse_entries(raw, dims: tuple[int, ...], path: str) -> list[tuple[tuple, list[Q]]]:
    if not isinstance(raw, list):
        raise SpecError("map entries must form a list", path)
    out = []
    for k, entry in enumerate(raw):
        p = f"{path}[{k}]"
        if not isinstance(entry, dict):
            raise SpecError("entry must be an object", p)
        _expect_keys(entry, ("key", "value"), ("key", "value"), p)
        key = entry["key"]
        if not isinstance(key, list) or any(
                not isinstance(e, list) or len(e) != 2
                or any(not isinstance(x, int) or isinstance(x, bool) for x in e)
                for e in key):
            raise SpecError("key must be a list of [degree, index] pairs", f"{p}.key")
        for d, i in key:
            if not (0 <= d < len(dims)) or not (0 <= i < dims[d]):
                raise SpecError(f"basis element [{d}, {i}] outside dims", f"{p}.key")
        value = entry["value"]
        if not isinstance(value, list):
            raise SpecError("value must be a list of rationals", f"{p}.value")
        vals = [parse_rational(v, f"{p}.value[{j}]") for j, v in enumerate(value)]
        out.append((tuple((d, i) for d, i in key), vals))
    return out


def _build_multimap(name: str, raw, dims: tuple[int, ...], path: str) -> MultiMap:
    arity, weight = ARITY_WEIGHT[name]
    space = GradedSpace(dims)
    entries = _parse_entries(raw, dims, path)
    for key, val in entries:
        if len(key) != arity:
            raise SpecError(f"{name} keys need {arity} arguments", path)
        od = sum(d for d, _ in key) + weight
        want = dims[od] if 0 <= od < len(dims) else 0
        if len(val) != want:
            raise SpecError(f"value length {len(val)}, expected {want}", path)
    try:
        return build_multimap(arity, weight, space, entries)
    except ContradictionError as e:
        raise SpecError(str(e), path) from None
    except ValueError as e:
        raise SpecError(str(e), path) from None


def _parse_matrix(raw, nrows: int, ncols: int, path: str) -> Matrix:
    if not isinstance(raw, list) or len(raw) != nrows or any(
            not isinstance(r, list) or len(r) != ncols for r in raw):
        raise SpecError(f"expected a {nrows} x {ncols} matrix", path)
    rows = [[parse_rational(v, f"{path}[{i}][{j}]") for j, v in enumerate(r)]
            for i, r in enumerate(raw)]
    return Matrix(rows, ncols=ncols)


def build(spec: AlgebraSpecFile):
    """The in-memory object a spec file describes."""
    if spec.kind == "linfinity":
        return build_linfinity(spec)
    if spec.kind == "lie3":
        return build_lie3(spec)
    if spec.kind == "chain":
        return build_chain(spec)
    return build_simplicial(spec)


def build_linfinity(spec: AlgebraSpecFile) -> LInfinityData:
    if spec.kind != "linfinity":
        raise SpecError(f"expected kind linfinity, found {spec.kind}", "$.kind")
    if len(spec.dims) != 3:
        raise SpecError("linfinity data needs dims of length 3", "$.dims")
    for k in spec.maps:
        if k not in MAP_KEYS["linfinity"]:
            raise SpecError(f"unknown map {k!r}", "$.maps")
    parts = {name: _build_multimap(name, spec.maps.get(name, []), spec.dims, f"$.maps.{name}")
             for name in MAP_KEYS["linfinity"]}
    space = GradedSpace(spec.dims)
    try:
        return LInfinityData(space, parts["l1"], parts["l2"], parts["l3"], parts["l4"])
    except ValueError as e:
        raise SpecError(str(e), "$.maps") from None


def build_lie3(spec: AlgebraSpecFile) -> Lie3Data:
    if spec.kind != "lie3":
        raise SpecError(f"expected kind lie3, found {spec.kind}", "$.kind")
    if len(spec.dims) != 3:
        raise SpecError("lie3 data needs dims of length 3", "$.dims")
    for k in spec.maps:
        if k not in MAP_KEYS["lie3"]:
            raise SpecError(f"unknown map {k!r}", "$.maps")
    parts = {name: _build_multimap(name, spec.maps.get(name, []), spec.dims, f"$.maps.{name}")
             for name in MAP_KEYS["lie3"]}
    try:
        cat = LinearNCat(GradedSpace(spec.dims), parts["l1"])
        return Lie3Data(cat, parts["bracket"], parts["J"], parts["mu"])
    except ValueError as e:
        raise SpecError(str(e), "$.maps") from None


def build_chain(spec: AlgebraSpecFile) -> ChainComplexT:
    if spec.kind != "chain":
        raise SpecError(f"expected kind chain, found {spec.kind}", "$.kind")
    dims = spec.dims
    names = [f"d{n}" for n in range(1, len(dims))]
    for k in spec.maps:
        if k not in names:
            raise SpecError(f"unknown map {k!r}", "$.maps")
    diffs = []
    for n, name in enumerate(names, start=1):
        raw = spec.maps.get(name)
        if raw is None:
            diffs.append(Matrix.zeros(dims[n - 1], dims[n]))
        else:
            diffs.append(_parse_matrix(raw, dims[n - 1], dims[n], f"$.maps.{name}"))
    try:
        return ChainComplexT(dims, tuple(diffs))
    except ValueError as e:
        raise SpecError(str(e), "$.maps") from None


def build_simplicial(spec: AlgebraSpecFile):
    from .simplicial import SimplicialVS

    if spec.kind != "simplicial":
        raise SpecError(f"expected kind simplicial, found {spec.kind}", "$.kind")
    dims = spec.dims
    N = len(dims) - 1
    allowed = {f"d:{n}:{i}" for n in range(1, N + 1) for i in range(n + 1)}
    allowed |= {f"s:{n}:{i}" for n in range(N) for i in range(n + 1)}
    for k in spec.maps:
        if k not in allowed:
            raise SpecError(f"unknown map {k!r}", "$.maps")
    faces = []
    for n in range(1, N + 1):
        ops = []
        for i in range(n + 1):
            raw = spec.maps.get(f"d:{n}:{i}")
            if raw is None:
                raise SpecError(f"missing face d:{n}:{i}", "$.maps")
            ops.append(_parse_matrix(raw, dims[n - 1], dims[n], f"$.maps.d:{n}:{i}"))
        faces.append(tuple(ops))
    degens = []
    for n in range(N):
        ops = []
        for i in range(n + 1):
            raw = spec.maps.get(f"s:{n}:{i}")
            if raw is None:
                raise SpecError(f"missing degeneracy s:{n}:{i}", "$.maps")
            ops.append(_parse_matrix(raw, dims[n + 1], dims[n], f"$.maps.s:{n}:{i}"))
        degens.append(tuple(ops))
    try:
        return SimplicialVS(tuple(dims), tuple(faces), tuple(degens))
    except ValueError as e:
        raise SpecError(str(e), "$.maps") from None


# -- rendering --------------------------------------------------------


def _render_multimap(m: MultiMap) -> list[dict]:
    return [{"key": [[d, i] for d, i in key],
             "value": [render_rational(c) for c in val]}
            for key, val in m.entries()]


def _render_matrix(M: Matrix) -> list[list[str]]:
    return [[render_rational(c) for c in row] for row in M.rows]


def render_linfinity(A: LInfinityData, metadata: dict[str, str] | None = None) -> str:
    maps = {name: _render_multimap(getattr(A, name)) for name in MAP_KEYS["linfinity"]}
    return render_spec(AlgebraSpecFile("linfinity", A.space.dims, maps, metadata or {}))


def render_lie3(D: Lie3Data, metadata: dict[str, str] | None = None) -> str:
    maps = {"l1": _render_multimap(D.cat.t_data),
            "bracket": _render_multimap(D.bracket_constants),
            "J": _render_multimap(D.J),
            "mu": _render_multimap(D.mu)}
    return render_spec(AlgebraSpecFile("lie3", D.space.dims, maps, metadata or {}))


def render_chain(C: ChainComplexT, metadata: dict[str, str] | None = None) -> str:
    maps = {f"d{n}": _render_matrix(C.diff(n)) for n in range(1, C.top_degree + 1)}
    return render_spec(AlgebraSpecFile("chain", C.dims, maps, metadata or {}))


def render_spec(spec: AlgebraSpecFile) -> str:
    obj = {"kind": spec.kind, "dims": list(spec.dims),
           "maps": {k: spec.maps[k] for k in sorted(spec.maps)}}
    if spec.metadata:
        obj["metadata"] = dict(sorted(spec.metadata.items()))
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"
