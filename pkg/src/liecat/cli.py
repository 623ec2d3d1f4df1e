"""Command-line front end.

Exit status: 0 when every check passes, 1 when a mathematical check fails,
2 on schema or usage errors.
"""
from __future__ import annotations

import argparse
import os
import sys
import time
from typing import Any, Dict, List, Optional

from .io import Loader, SpecError, dump_json, lie_to_spec, morphism_entries, read_json
from .linalg import parse_field
from .monoidal import CategoryError, factor_names
from .reports import Check, Report

COMMANDS = ("check-lie", "check-monoid", "hopf-check", "uea", "primitives", "semidirect",
            "split-to-action", "exponent", "adjoint-check", "enumerate-homs")


def default_seed() -> int:
    env = os.environ.get("LIECAT_SEED")
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise SpecError("LIECAT_SEED", f"not an integer: {env!r}") from None
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="liecat", description="Internal Lie algebras at finite truncation.")
    sub = ap.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sp = sub.add_parser(name)
        sp.add_argument("spec", help="JSON spec file (bundled examples are found by basename)")
        sp.add_argument("--json", action="store_true", help="emit a JSON report")
        sp.add_argument("--field", help="Q, F2 or F<p> for files that leave the field open")
        sp.add_argument("--timing", action="store_true", help="include wall time in the report")
        if name in ("check-monoid", "hopf-check", "uea", "primitives", "exponent", "adjoint-check",
                    "enumerate-homs"):
            sp.add_argument("--truncate", type=int, default=None, metavar="D")
        if name == "check-lie":
            sp.add_argument("--strict", action="store_true", help="also demand [x, x] = 0")
        if name == "adjoint-check":
            sp.add_argument("--mode", choices=("sample", "enumerate-f2"), default="sample")
            sp.add_argument("--seed", type=int, default=None)
            sp.add_argument("--samples", type=int, default=20)
        if name == "enumerate-homs":
            sp.add_argument("--kind", choices=("lie", "monoid", "point"), default="lie")
    return ap


def _truncate(args, doc, default: int = 2) -> int:
    if getattr(args, "truncate", None) is not None:
        return args.truncate
    task = doc.get("task", {})
    if isinstance(task, dict) and isinstance(task.get("truncate"), int):
        return task["truncate"]
    return default


def _top_lie(loader: Loader, doc: Dict[str, Any], key: str = "lie"):
    if "algebra" in doc:
        return loader.lie(doc, "$")
    if key in doc:
        return loader.lie(doc[key], f"$.{key}")
    raise SpecError("$", "expected a Lie algebra spec (\"algebra\" + \"bracket\")")


def _require(doc, key):
    if key not in doc:
        raise SpecError(f"$.{key}", "missing")
    return doc[key]


# ---------------------------------------------------------------------------
# commands


def cmd_check_lie(args, doc, loader) -> Report:
    from .lie import check_lie
    L = _top_lie(loader, doc)
    rep = check_lie(L, strict=args.strict)
    rep.data["category"] = L.category.kind
    return rep


def cmd_check_monoid(args, doc, loader) -> Report:
    from .enveloping import check_monoid, uea
    if "monoid" in doc:
        A = loader.monoid(doc["monoid"], "$.monoid")
        return check_monoid(A)
    d = _truncate(args, doc)
    U = uea(_top_lie(loader, doc), d)
    rep = check_monoid(U)
    rep.data["truncation"] = d
    return rep


def cmd_hopf_check(args, doc, loader) -> Report:
    from .enveloping import check_hopf, check_unit_nu, uea
    d = _truncate(args, doc)
    U = uea(_top_lie(loader, doc), d)
    rep = check_hopf(U)
    c = check_unit_nu(U)
    rep.add(Check("nu-lie-morphism", c.passed, c.witness, c.detail))
    rep.data["truncation"] = d
    return rep


def _sparse(f, factors) -> List[list]:
    F = f.field
    out = []
    for j in range(f.source.dim):
        names = list(factor_names(factors, j)) if factors else [f.source.names[j]]
        for i, v in sorted(f.col(j).items()):
            out.append(names + [f.target.names[i], F.to_json(v)])
    return out


def cmd_uea(args, doc, loader) -> Report:
    from .enveloping import pbw_count, uea, check_unit_nu
    d = _truncate(args, doc)
    B = _top_lie(loader, doc)
    U = uea(B, d)
    rep = Report("uea")
    X = B.carrier
    C = X.category
    rep.data.update({"dim": U.dim, "truncation": d, "words": U.words,
                     "dims_by_length": U.dims_by_length()})
    if C.field.char == 0 and C.kind in ("vect", "super"):
        n_odd = sum(1 for g in X.degrees if g and g[0] % 2)
        expected = pbw_count(X.dim - n_odd, n_odd, d)
        rep.data["pbw_count"] = expected
        rep.add(Check("pbw-dimension", expected == U.dim, None, f"{U.dim} vs {expected}"))
    c = check_unit_nu(U)
    rep.add(Check("nu-lie-morphism", c.passed, c.witness, c.detail))
    rep.data["structure"] = {
        "nu": _sparse(U.nu, None),
        "product": _sparse(U.m, [U.carrier, U.carrier]),
        "unit": _sparse(U.u, None),
        "coproduct": _sparse(U.delta, None),
        "counit": _sparse(U.counit, None),
        "antipode": _sparse(U.antipode, None),
    }
    return rep


def cmd_primitives(args, doc, loader) -> Report:
    from .enveloping import primitives, uea
    from .linalg import solve
    d = _truncate(args, doc)
    B = _top_lie(loader, doc)
    U = uea(B, d)
    P = primitives(U)
    rep = Report("primitives")
    rep.data.update({"dim": P.dim, "truncation": d,
                     "basis": [{U.carrier.names[i]: U.field.to_json(v)
                                for i, v in sorted(P.inclusion.col(j).items())}
                               for j in range(P.dim)]})
    rep.add(P.closed)
    nu_in_P = solve(P.inclusion.matrix, U.nu.matrix) is not None
    rep.add(Check("image-nu-contained", nu_in_P))
    rep.data["dim_image_nu"] = U.nu.matrix.rank()
    return rep


def cmd_semidirect(args, doc, loader) -> Report:
    from .actions import check_equivariant_full
    from .points import action_to_point, check_point, point_to_action
    E = loader.action_map(_require(doc, "action"), "$.action")
    rep = check_equivariant_full(E)
    rep.task = "semidirect"
    if rep.passed:
        sd = action_to_point(E, validate=False)
        rep.extend_prefixed("point.", check_point(sd.point))
        E2 = point_to_action(sd.point)
        same = (E2.lie.bracket.matrix == E.lie.bracket.matrix
                and E2.theta.matrix == E.theta.matrix)
        rep.add(Check("round-trip", same))
        rep.data["semidirect"] = lie_to_spec(sd.point.A)
        rep.data["dim"] = sd.point.A.dim
    return rep


def cmd_split_to_action(args, doc, loader) -> Report:
    from .actions import check_equivariant_full
    from .points import check_point, compare_points, point_to_action
    P = loader.point(_require(doc, "point"), "$.point")
    rep = check_point(P)
    rep.task = "split-to-action"
    if rep.passed:
        E = point_to_action(P)
        rep.extend_prefixed("kernel.", check_equivariant_full(E))
        g, iso = compare_points(P)
        rep.add(Check("comparison-iso", iso))
        rep.data["kernel"] = list(E.carrier.names)
        rep.data["theta"] = _sparse(E.theta, [P.B.carrier, E.carrier])
        rep.data["kernel_bracket"] = _sparse(E.lie.bracket, [E.carrier, E.carrier])
    return rep


def _base_target(doc, loader):
    block = doc.get("exponent", doc)
    B = loader.lie(_require(block, "base"), "$.base")
    X = loader.lie(_require(block, "target"), "$.target")
    if B.category != X.category:
        raise SpecError("$", "base and target live in different category instances")
    return B, X


def cmd_exponent(args, doc, loader) -> Report:
    from .points import exponent
    d = _truncate(args, doc)
    B, X = _base_target(doc, loader)
    try:
        Ex = exponent(B, X, d)
    except CategoryError as e:
        raise SpecError("$", str(e)) from None
    rep = Ex.report()
    rep.data["R_basis"] = list(Ex.R.carrier.names)
    rep.data["theta"] = _sparse(Ex.R.theta, [B.carrier, Ex.R.carrier])
    rep.data["bracket"] = _sparse(Ex.R.lie.bracket, [Ex.R.carrier, Ex.R.carrier])
    return rep


def cmd_adjoint_check(args, doc, loader) -> Report:
    from .points import adjunction_check
    d = _truncate(args, doc)
    P = loader.point(_require(doc, "point"), "$.point")
    X = loader.lie(_require(doc, "target"), "$.target")
    if args.mode == "enumerate-f2" and P.A.field.char != 2:
        raise SpecError("$.point", "enumerate-f2 mode needs a spec over F2 (use --field F2)")
    seed = args.seed if args.seed is not None else default_seed()
    return adjunction_check(P, X, d, mode=args.mode, seed=seed, samples=args.samples)


def cmd_enumerate_homs(args, doc, loader) -> Report:
    from .enumerate import (SizeGuardError, check_ul_bijection, enumerate_lie_homs,
                            enumerate_monoid_homs, enumerate_point_homs)
    from .enveloping import uea
    rep = Report("enumerate-homs")
    rep.data["kind"] = args.kind
    src, tgt = _require(doc, "source"), _require(doc, "target")
    try:
        if args.kind == "lie":
            homs = enumerate_lie_homs(loader.lie(src, "$.source"), loader.lie(tgt, "$.target"))
        elif args.kind == "point":
            homs = enumerate_point_homs(loader.point(src, "$.source"), loader.point(tgt, "$.target"))
        else:
            A = loader.monoid(tgt, "$.target")
            if isinstance(src, dict) and "object" in src:
                homs = enumerate_monoid_homs(loader.monoid(src, "$.source"), A)
            else:
                d = _truncate(args, doc)
                B = loader.lie(src, "$.source")
                U = uea(B, d)
                homs = enumerate_monoid_homs(U, A)
                rep.data["truncation"] = d
                if A.augmentation is not None:
                    bij = check_ul_bijection(B, U, A, A.augmentation)
                    rep.data["lie_homs"] = bij["lie_homs"]
                    rep.add(Check("count-match", bij["lie_homs"] == bij["monoid_homs"]))
                    rep.add(Check("bijection", bij["injective"] and bij["surjective"] and bij["into"]))
    except SizeGuardError as e:
        raise SpecError("$", str(e)) from None
    except ValueError as e:
        if "only available over F2" in str(e):
            raise SpecError("$", str(e)) from None
        raise
    rep.data["count"] = len(homs)
    rep.data["homs"] = [morphism_entries(h) for h in homs]
    return rep


HANDLERS = {
    "check-lie": cmd_check_lie, "check-monoid": cmd_check_monoid, "hopf-check": cmd_hopf_check,
    "uea": cmd_uea, "primitives": cmd_primitives, "semidirect": cmd_semidirect,
    "split-to-action": cmd_split_to_action, "exponent": cmd_exponent,
    "adjoint-check": cmd_adjoint_check, "enumerate-homs": cmd_enumerate_homs,
}


def run(argv: Optional[List[str]] = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 2 if e.code else 0
    t0 = time.perf_counter()
    try:
        override = parse_field(args.field) if args.field else None
        doc = read_json(args.spec)
        loader = Loader(doc, override)
        rep = HANDLERS[args.command](args, doc, loader)
    except SpecError as e:
        print(f"schema error at {e.path}: {e.message}", file=err)
        return 2
    except ValueError as e:
        print(f"error: {e}", file=err)
        return 2
    rep.data["spec"] = os.path.basename(args.spec)
    if args.timing:
        rep.data["wall_time_s"] = round(time.perf_counter() - t0, 6)
    if args.json:
        print(dump_json(rep.to_dict()), file=out)
    else:
        print(rep.to_text(), file=out)
    return 0 if rep.passed else 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
