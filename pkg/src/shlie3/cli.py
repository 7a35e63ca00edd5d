"""Command-line interface: checks, conversions and demos on spec files.

Exit codes: 0 all requested checks pass, 1 a check fails or a conversion is
refused, 2 usage or parse errors.  Output is deterministic for fixed input
and flags.
"""

from __future__ import annotations

import argparse
import json
import sys

from .chain import ChainComplexT
from .lie3 import (ConversionError, check_bifunctor, check_coherence,
                   check_identiator, check_jacobiator, from_linfinity,
                   to_linfinity)
from .lincat import from_chain
from .linfinity import check_all, is_special
from .simplicial import (aw, aw_after_ez_identity, aw_ez_homology_check, ez,
                         moore, moore_of_nerve_check, nerve, obstruction_demo)
from .specfile import (AlgebraSpecFile, SpecError, build_chain, build_lie3,
                       build_linfinity, build_simplicial, parse_spec,
                       render_lie3, render_linfinity, render_rational)


def _rats(vec) -> list[str]:
    return [render_rational(c) for c in vec]


def _condition_checks(data, n_max: int) -> list[dict]:
    out = []
    for rep in check_all(data, n_max):
        out.append({
            "name": f"order-{rep.n}",
            "passed": rep.passed,
            "violations": [
                {"key": [[d, i] for d, i in v.key], "tag": v.tag,
                 "residual": _rats(next(b for b in v.residual.coords if any(b)))}
                for v in rep.violations],
        })
    return out


def _lie3_checks(D) -> list[dict]:
    out = []
    for rep in (check_bifunctor(D), check_jacobiator(D), check_identiator(D)):
        out.append({"name": rep.name, "passed": rep.passed,
                    "failures": [{"check": f.check, "detail": f.detail}
                                 for f in rep.failures]})
    coh = check_coherence(D)
    out.append({"name": "coherence", "passed": coh.passed,
                "order5_agreement": coh.v2_matches_order5,
                "failures": [{"key": list(r.key),
                              "v1_residual": _rats(r.v1_residual),
                              "v2_residual": _rats(r.v2_residual)}
                             for r in coh.results if not r.passed]})
    return out


def _emit(report: dict, fmt: str, out_path: str | None) -> None:
    if fmt == "json":
        text = json.dumps(report, indent=2, sort_keys=True) + "\n"
    else:
        lines = [f"command: {report['command']}"]
        for c in report.get("checks", []):
            status = "PASS" if c.get("passed", True) else "FAIL"
            extra = ""
            n_bad = len(c.get("violations", c.get("failures", [])))
            if n_bad:
                extra = f"  ({n_bad} violations)"
            lines.append(f"  {c['name']}: {status}{extra}")
        for k, v in sorted(report.items()):
            if k in ("command", "checks"):
                continue
            lines.append(f"{k}: {v}")
        text = "\n".join(lines) + "\n"
    if out_path:
        with open(out_path, "w", encoding="utf-8") as f:
            f.write(text)
    else:
        sys.stdout.write(text)


def _load(path: str) -> AlgebraSpecFile:
    with open(path, encoding="utf-8") as f:
        return parse_spec(f.read())


def _two_term_category(spec: AlgebraSpecFile):
    C = build_chain(spec)
    if C.top_degree > 1:
        if any(d != 0 for d in C.dims[2:]):
            raise SpecError("this command needs a two-term complex", "$.dims")
        C = ChainComplexT(C.dims[:2], (C.diff(1),))
    return from_chain(C)


def cmd_check(spec: AlgebraSpecFile, args) -> tuple[dict, int]:
    if spec.kind == "linfinity":
        checks = _condition_checks(build_linfinity(spec), args.n)
    elif spec.kind == "lie3":
        checks = _lie3_checks(build_lie3(spec))
    else:
        raise SpecError(f"check does not apply to kind {spec.kind!r}", "$.kind")
    ok = all(c["passed"] for c in checks)
    return {"command": "check", "checks": checks, "passed": ok}, 0 if ok else 1


def cmd_convert(spec: AlgebraSpecFile, args) -> tuple[dict, int]:
    if args.to is None:
        raise SpecError("convert needs --to lie3|linfinity")
    try:
        if args.to == "lie3":
            if spec.kind != "linfinity":
                raise SpecError("convert --to lie3 needs a linfinity file", "$.kind")
            text = render_lie3(from_linfinity(build_linfinity(spec)), spec.metadata)
        else:
            if spec.kind != "lie3":
                raise SpecError("convert --to linfinity needs a lie3 file", "$.kind")
            text = render_linfinity(to_linfinity(build_lie3(spec)), spec.metadata)
    except ConversionError as e:
        return {"command": "convert", "checks": [],
                "passed": False, "error": str(e)}, 1
    if args.out:
        with open(args.out, "w", encoding="utf-8") as f:
            f.write(text)
    else:
        sys.stdout.write(text)
    return None, 0


def cmd_coherence(spec: AlgebraSpecFile, args) -> tuple[dict, int]:
    if spec.kind == "lie3":
        D = build_lie3(spec)
    elif spec.kind == "linfinity":
        try:
            D = from_linfinity(build_linfinity(spec))
        except ConversionError as e:
            return {"command": "coherence", "checks": [],
                    "passed": False, "error": str(e)}, 1
    else:
        raise SpecError(f"coherence does not apply to kind {spec.kind!r}", "$.kind")
    rep = check_coherence(D)
    checks = [{"name": f"quintuple {'.'.join(map(str, r.key))}",
               "passed": r.passed,
               "v2_residual": _rats(r.v2_residual),
               "order5_residual": _rats(r.order5_residual),
               "order5_agreement": r.matches_order5}
              for r in rep.results]
    ok = rep.passed
    return {"command": "coherence", "checks": checks, "passed": ok,
            "order5_agreement": rep.v2_matches_order5}, 0 if ok else 1


def cmd_nerve(spec: AlgebraSpecFile, args) -> tuple[dict, int]:
    L = _two_term_category(spec)
    S = nerve(L, args.trunc)
    C = moore(S)
    ok = moore_of_nerve_check(L, args.trunc)
    rep = {"command": "nerve",
           "checks": [{"name": "normalization-recovers-kernel-complex", "passed": ok}],
           "simplex_dims": list(S.dims), "normalized_dims": list(C.dims),
           "passed": ok}
    return rep, 0 if ok else 1


def cmd_ez_demo(spec: AlgebraSpecFile, args) -> tuple[dict, int]:
    L = _two_term_category(spec)
    S = nerve(L, args.trunc)
    f, g = ez(S, S), aw(S, S)
    roundtrip = aw_after_ez_identity(S, S)
    homology = aw_ez_homology_check(S, S)
    checks = [
        {"name": "shuffle-map-is-chain-map", "passed": f.is_chain_map()},
        {"name": "front-face-map-is-chain-map", "passed": g.is_chain_map()},
        {"name": "roundtrip-identity-on-tensor", "passed": roundtrip},
        {"name": "roundtrip-identity-on-homology", "passed": homology},
    ]
    ok = all(c["passed"] for c in checks)
    return {"command": "ez-demo", "checks": checks, "passed": ok}, 0 if ok else 1


def cmd_obstruction_demo(spec: AlgebraSpecFile, args) -> tuple[dict, int]:
    L = _two_term_category(spec)
    rep = obstruction_demo(L)
    expected = (L.dim(1) == 0 and not rep.obstructed) or (
        L.dim(1) > 0 and rep.obstructed and rep.kernel_dim > 0)
    checks = [
        {"name": "compose-tensor-identity", "passed": rep.compose_tensor_identity_holds},
        {"name": "obstruction-as-expected", "passed": expected},
    ]
    out = {"command": "obstruction-demo", "checks": checks,
           "obstructed": rep.obstructed, "kernel_dim": rep.kernel_dim,
           "message": rep.message,
           "passed": all(c["passed"] for c in checks)}
    if rep.witness_index is not None:
        out["witness_index"] = list(rep.witness_index)
        out["witness_difference"] = _rats(rep.witness_difference)
    return out, 0 if out["passed"] else 1


def cmd_report(spec: AlgebraSpecFile, args) -> tuple[dict, int]:
    if spec.kind == "linfinity":
        data = build_linfinity(spec)
        checks = _condition_checks(data, args.n)
        special, _ = is_special(data)
        rep = {"command": "report", "checks": checks, "special": special}
    elif spec.kind == "lie3":
        rep = {"command": "report", "checks": _lie3_checks(build_lie3(spec))}
    elif spec.kind == "chain":
        C = build_chain(spec)
        checks = [{"name": "boundary-squares-to-zero", "passed": True}]
        if C.top_degree >= 1:
            L = from_chain(ChainComplexT(C.dims[:2], (C.diff(1),)))
            checks.append({"name": "normalization-recovers-kernel-complex",
                           "passed": moore_of_nerve_check(L, args.trunc)})
        rep = {"command": "report", "checks": checks, "dims": list(C.dims)}
    else:
        S = build_simplicial(spec)
        C = moore(S)
        rep = {"command": "report",
               "checks": [{"name": "simplicial-identities", "passed": True}],
               "normalized_dims": list(C.dims)}
    ok = all(c["passed"] for c in rep["checks"])
    rep["passed"] = ok
    return rep, 0 if ok else 1


COMMANDS = {
    "check": cmd_check,
    "convert": cmd_convert,
    "coherence": cmd_coherence,
    "nerve": cmd_nerve,
    "ez-demo": cmd_ez_demo,
    "obstruction-demo": cmd_obstruction_demo,
    "report": cmd_report,
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="shlie3",
        description="Exact checks and conversions for 3-term homotopy Lie "
                    "algebras and their categorified presentations.")
    p.add_argument("command", choices=sorted(COMMANDS))
    p.add_argument("file", help="JSON spec file")
    p.add_argument("--n", type=int, default=5, help="highest identity order to check")
    p.add_argument("--format", choices=("json", "text"), default="text")
    p.add_argument("--trunc", type=int, default=3, help="simplicial truncation level")
    p.add_argument("--out", default=None, help="write output to this file")
    p.add_argument("--to", choices=("lie3", "linfinity"), default=None,
                   help="conversion target (convert only)")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        spec = _load(args.file)
        report, code = COMMANDS[args.command](spec, args)
    except SpecError as e:
        sys.stderr.write(f"error: {e}\n")
        return 2
    except OSError as e:
        sys.stderr.write(f"error: {e}\n")
        return 2
    if report is not None:
        _emit(report, args.format, args.out if args.command != "convert" else None)
    return code


if __name__ == "__main__":
    sys.exit(main())
