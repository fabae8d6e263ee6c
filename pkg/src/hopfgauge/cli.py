"""Command-line interface.

Exit codes: 0 all checks pass, 1 an axiom or verification check failed,
2 the input could not be read or is inconsistent.
"""
from __future__ import annotations

import argparse
import sys

import numpy as np

from . import hopfjson
from .hopfjson import Document, MapEntry, functional_entry
from .linalg import InputError
from .structures import AlgebraData, BialgebraData, CoalgebraData, HopfData, Report, ad_invariant_integral, check_structure
from .yd import YDCoalgebraData, YDModuleData, check_yd, check_yd_coalgebra
from .prebialgebra import (PreBialgebraData, bosonize_cocycle, check_cocycle, check_prebialgebra, check_splitting,
                           extract_prebialgebra, omega_iso_report)
from .dualquasi import (BraidedDualQuasiData, DualQuasiData, bosonize_braided_dq, check_braided_dq,
                        check_dual_quasi, check_v_conditions, coradical_sanity, map_F, trivial_reassociator,
                        twist_dual_quasi, twist_prebialgebra)
from .examples import EXAMPLES, datum_document, make_example
from .pipeline import run_pipeline

OK, FAILED, BAD_INPUT = 0, 1, 2

OBJECT_KINDS = ("coalgebra", "algebra", "bialgebra", "hopf", "yd_module", "yd_coalgebra", "prebialgebra",
                "braided_dual_quasi", "dual_quasi")
CHECK_KINDS = OBJECT_KINDS + ("splitting", "cocycle", "gauge")

# which declared kinds can be checked as which
_ACCEPTS = {
    "coalgebra": (CoalgebraData, BialgebraData),
    "algebra": (AlgebraData, BialgebraData),
    "bialgebra": (BialgebraData,),
    "hopf": (HopfData,),
    "yd_module": (YDModuleData, YDCoalgebraData),
    "yd_coalgebra": (YDCoalgebraData,),
    "prebialgebra": (PreBialgebraData,),
    "braided_dual_quasi": (BraidedDualQuasiData,),
    "dual_quasi": (DualQuasiData, BialgebraData),
}


def _check_object(obj, kind: str) -> Report:
    if kind in ("coalgebra", "algebra", "bialgebra", "hopf"):
        return check_structure(obj, kind)
    if kind == "yd_module":
        if isinstance(obj, YDCoalgebraData):
            obj = obj.module
        return check_yd(obj)
    if kind == "yd_coalgebra":
        return check_yd_coalgebra(obj)
    if kind == "prebialgebra":
        return check_prebialgebra(obj)
    if kind == "braided_dual_quasi":
        return check_braided_dq(obj)
    if kind == "dual_quasi":
        if not isinstance(obj, DualQuasiData):
            obj = DualQuasiData(obj, trivial_reassociator(obj))
        return check_dual_quasi(obj)
    raise InputError(f"unknown kind {kind!r}")


def _declared_kind(obj) -> str:
    return hopfjson._kind(obj)


def _emit_report(name: str, rep: Report, out) -> bool:
    print(f"== {name}: {'pass' if rep.ok else 'FAIL'}", file=out)
    for it in rep.items:
        print("  " + it.line(), file=out)
    return rep.ok


def _pick(doc: Document, kind: str, name: str | None) -> list[str]:
    if name is not None:
        if name not in doc.objects:
            raise InputError(f"no object named {name!r}")
        return [name]
    names = [k for k, v in doc.objects.items() if isinstance(v, _ACCEPTS[kind])]
    if not names:
        raise InputError(f"document has no object that can be checked as {kind}")
    return names


def _prebialgebra_and(doc: Document, map_role: str):
    P = doc.role("R")
    if not isinstance(P, PreBialgebraData):
        raise InputError("role R must be a prebialgebra")
    return P, doc.role(map_role)


def _checks(doc: Document, kind: str | None, name: str | None) -> list[tuple[str, Report]]:
    out = []
    if kind is None:
        for k, obj in doc.objects.items():
            dk = _declared_kind(obj)
            out.append((f"{k} ({dk})", _check_object(obj, dk)))
        if all(doc.has_role(r) for r in ("A", "H", "pi", "sigma")):
            out.append(("splitting datum", check_splitting(doc.splitting_datum())))
        if doc.has_role("R") and doc.has_role("xi"):
            P, xi = _prebialgebra_and(doc, "xi")
            out.append(("cocycle xi", check_cocycle(P, xi.reshape(P.H.dim, -1))))
        if doc.has_role("R") and doc.has_role("v"):
            P, v = _prebialgebra_and(doc, "v")
            out.append(("gauge v", check_v_conditions(P, v.reshape(-1))))
        return out
    if kind == "splitting":
        return [("splitting datum", check_splitting(doc.splitting_datum()))]
    if kind == "cocycle":
        P, xi = _prebialgebra_and(doc, "xi")
        return [("cocycle xi", check_cocycle(P, xi.reshape(P.H.dim, -1)))]
    if kind == "gauge":
        P, v = _prebialgebra_and(doc, "v")
        return [("gauge v", check_v_conditions(P, v.reshape(-1)))]
    return [(f"{k} ({kind})", _check_object(doc.objects[k], kind)) for k in _pick(doc, kind, name)]


def cmd_check(args) -> int:
    doc = hopfjson.load(args.file)
    ok = True
    for title, rep in _checks(doc, args.kind, args.object):
        ok &= _emit_report(title, rep, sys.stdout)
    return OK if ok else FAILED


def _labels_of(doc: Document, names: list[str]) -> list[str]:
    rows = [""]
    for n in names:
        if n == "K":
            continue
        obj = doc.objects[n]
        ls = list(obj.labels) or [f"e{i}" for i in range(obj.dim)]
        rows = [f"{a} (x) {b}" if a else b for a in rows for b in ls]
    return rows


def _print_functional(F, name: str, vec, labels: list[str]) -> None:
    vec = np.asarray(vec).reshape(-1)
    nz = [(labels[i], F.format(x)) for i, x in enumerate(vec) if not F.is_zero_scalar(x)]
    if not nz:
        print(f"{name} = 0")
    for lab, val in nz:
        print(f"{name}({lab}) = {val}")


def cmd_integral(args) -> int:
    doc = hopfjson.load(args.file)
    names = _pick(doc, "hopf", args.object)
    if len(names) > 1:
        raise InputError("several Hopf algebras in the document; choose one with --object")
    H = doc.objects[names[0]]
    lam = ad_invariant_integral(H)
    if lam is None:
        print(f"{names[0]}: no ad-invariant integral")
        return FAILED
    _print_functional(H.field, "lambda", lam, _labels_of(doc, [names[0]]))
    return OK


def _decomposition_document(S, ext) -> Document:
    doc = Document(S.A.field, {"H": S.H, "A": S.A, "R": ext.P})
    doc.maps["xi"] = MapEntry(["R", "R"], ["H"], ext.xi)
    doc.maps["omega"] = MapEntry(["R", "H"], ["A"], ext.omega)
    doc.roles = {"A": "A", "H": "H", "R": "R", "xi": "xi", "omega": "omega"}
    return doc


def cmd_decompose(args) -> int:
    doc = hopfjson.load(args.datum)
    S = doc.splitting_datum()
    rep = check_splitting(S)
    if not rep.ok:
        _emit_report("splitting datum", rep, sys.stdout)
        return FAILED
    ext = extract_prebialgebra(S)
    ok = _emit_report("extraction", ext.report, sys.stdout)
    out = _decomposition_document(S, ext)
    if args.output:
        hopfjson.save(out, args.output)
    return OK if ok else FAILED


def cmd_bosonize(args) -> int:
    doc = hopfjson.load(args.file)
    F = doc.field
    if doc.has_role("Q") or any(isinstance(o, BraidedDualQuasiData) for o in doc.objects.values()):
        Q = doc.role("Q") if doc.has_role("Q") else next(o for o in doc.objects.values()
                                                          if isinstance(o, BraidedDualQuasiData))
        rep = check_braided_dq(Q)
        ok = _emit_report("braided dual quasi-bialgebra", rep, sys.stdout)
        B = bosonize_braided_dq(Q)
        rep = check_dual_quasi(B)
        rep.extend(coradical_sanity(Q, B), prefix="coradical: ")
        ok &= _emit_report("Q # H", rep, sys.stdout)
        out = Document(F, {"H": Q.H, "D": B}, roles={"H": "H", "D": "D"})
    else:
        P, xi = _prebialgebra_and(doc, "xi")
        xi = xi.reshape(P.H.dim, -1)
        A, pi, sigma = bosonize_cocycle(P, xi)
        rep = check_structure(A, "bialgebra")
        if doc.has_role("A") and doc.has_role("omega"):
            rep.extend(omega_iso_report(F, doc.role("A"), A, doc.role("omega")), prefix="against input A: ")
        ok = _emit_report("R #_xi H", rep, sys.stdout)
        from .prebialgebra import SplittingDatum
        out = datum_document(SplittingDatum(A, P.H, pi, sigma))
    if args.output:
        hopfjson.save(out, args.output)
    return OK if ok else FAILED


def cmd_gauge(args) -> int:
    doc = hopfjson.load(args.datum)
    S = doc.splitting_datum()
    rep = run_pipeline(S, stop_after="zeta")
    print(rep.table())
    ctx, F = rep.context, S.A.field
    if "zeta" not in ctx:
        _print_failures(rep)
        return FAILED
    P = ctx["P"]
    R_labels = list(P.labels)
    pairs = [f"{a} (x) {b}" for a in R_labels for b in R_labels]
    _print_functional(F, "v", ctx["v"], pairs)
    A_labels = list(S.A.labels)
    zeta = rep.artifacts["zeta_input_basis"]
    _print_functional(F, "zeta", zeta, [f"{a} (x) {b}" for a in A_labels for b in A_labels])
    if args.output:
        out = Document(F, {"H": S.H, "A": S.A, "R": P})
        out.maps["xi"] = MapEntry(["R", "R"], ["H"], ctx["xi"])
        out.maps["lambda"] = functional_entry(ctx["lam"], ["H"])
        out.maps["v"] = functional_entry(ctx["v"], ["R", "R"])
        out.maps["zeta"] = functional_entry(zeta, ["A", "A"])
        out.roles = {"A": "A", "H": "H", "R": "R", "xi": "xi", "v": "v", "zeta": "zeta"}
        hopfjson.save(out, args.output)
    return OK if rep.ok else FAILED


def _gauge_map(gdoc: Document, role: str, dim: int, explicit: str | None):
    key = explicit or gdoc.roles.get(role, role)
    if key not in gdoc.maps:
        cands = [k for k, m in gdoc.maps.items() if m.target == ["K"] and m.matrix.size == dim * dim]
        if len(cands) != 1:
            raise InputError(f"gauge document has no map {key!r}; name one with --map")
        key = cands[0]
    vec = gdoc.maps[key].matrix.reshape(-1)
    if vec.size != dim * dim:
        raise InputError(f"gauge map {key!r} has {vec.size} entries, expected {dim * dim}")
    return vec


def cmd_twist(args) -> int:
    doc = hopfjson.load(args.file)
    gdoc = hopfjson.load(args.gauge)
    if gdoc.field != doc.field:
        raise InputError("target and gauge documents use different fields")
    F = doc.field
    if doc.has_role("Q") or doc.has_role("R"):
        key = "Q" if doc.has_role("Q") else "R"
        obj = doc.role(key)
        if isinstance(obj, BraidedDualQuasiData):
            raise InputError("twisting a braided dual quasi-bialgebra with nontrivial reassociator is not supported; "
                             "twist the underlying pre-bialgebra")
        if not isinstance(obj, PreBialgebraData):
            raise InputError(f"role {key} must be a prebialgebra")
        P = obj
        v = _gauge_map(gdoc, "v", P.dim, args.map)
        rep = check_v_conditions(P, v)
        if not _emit_report("gauge conditions", rep, sys.stdout):
            return FAILED
        xi = doc.role("xi").reshape(P.H.dim, -1) if doc.has_role("xi") else map_F(P, v)
        Q = twist_prebialgebra(P, v, xi, check=False)
        ok = _emit_report("R^v", check_braided_dq(Q), sys.stdout)
        out = Document(F, {"H": P.H, "Q": Q}, roles={"H": "H", "Q": "Q"})
    else:
        key = "D" if doc.has_role("D") else "A"
        obj = doc.role(key)
        D = obj if isinstance(obj, DualQuasiData) else DualQuasiData(obj, trivial_reassociator(obj))
        z = _gauge_map(gdoc, "zeta", D.dim, args.map)
        try:
            Dz = twist_dual_quasi(D, z)
        except InputError as exc:
            print(f"gauge rejected: {exc}")
            return FAILED
        ok = _emit_report(f"{key}^gauge", check_dual_quasi(Dz), sys.stdout)
        out = Document(F, {"D": Dz}, roles={"D": "D"})
    if args.output:
        hopfjson.save(out, args.output)
    return OK if ok else FAILED


def _print_failures(rep) -> None:
    for s in rep.stages:
        if s.status == "fail" and s.report is not None:
            for it in s.report.failed():
                print(f"{s.name}: {it.line()}")


def cmd_pipeline(args) -> int:
    doc = hopfjson.load(args.datum)
    rep = run_pipeline(doc.splitting_datum(), keep_going=args.keep_going)
    print(rep.table(timings=args.timings))
    _print_failures(rep)
    if args.report:
        with open(args.report, "w", encoding="utf-8") as fh:
            fh.write(hopfjson.dumps_json(rep.to_json(timings=not args.no_timings)))
    if args.figures:
        from .figures import render

        for path in render(rep, args.figures):
            print(f"figure\t{path}", file=sys.stderr)
    return OK if rep.ok else FAILED


def cmd_example(args) -> int:
    params = {"group": args.group, "n": args.n, "N": args.N, "q": args.q, "mu": args.mu, "p": args.p}
    doc = make_example(args.name, **params)
    ok = True
    for title, rep in _checks(doc, None, None):
        if not rep.ok:
            ok = _emit_report(title, rep, sys.stderr)
    hopfjson.save(doc, args.output)
    return OK if ok else FAILED


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="hopfgauge", description="Exact Hopf algebra gauge toolkit.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="run axiom checkers on a hopfjson document")
    p.add_argument("file")
    p.add_argument("--kind", choices=CHECK_KINDS, help="check as this kind (default: every declared kind)")
    p.add_argument("--object", help="object name (default: every object of a matching kind)")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("integral", help="ad-invariant integral of a Hopf algebra")
    p.add_argument("file")
    p.add_argument("--object")
    p.set_defaults(func=cmd_integral)

    p = sub.add_parser("decompose", help="splitting datum -> pre-bialgebra with cocycle")
    p.add_argument("datum")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("gauge", help="print the gauge transformations v and zeta of a splitting datum")
    p.add_argument("datum")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_gauge)

    p = sub.add_parser("twist", help="twist by a gauge transformation")
    p.add_argument("file")
    p.add_argument("--gauge", required=True)
    p.add_argument("--map", help="name of the gauge map in the gauge document")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_twist)

    p = sub.add_parser("bosonize", help="R #_xi H, or Q # H for a braided dual quasi-bialgebra")
    p.add_argument("file")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_bosonize)

    p = sub.add_parser("pipeline", help="run the full gauge pipeline on a splitting datum")
    p.add_argument("datum")
    p.add_argument("--report", help="write the JSON report here")
    p.add_argument("--keep-going", action="store_true", help="evaluate every stage even after a failure")
    p.add_argument("--figures", metavar="DIR", help="render PNG figures into DIR")
    p.add_argument("--timings", action="store_true", help="add a seconds column to the table")
    p.add_argument("--no-timings", action="store_true", help="omit timings from the JSON report")
    p.set_defaults(func=cmd_pipeline)

    p = sub.add_parser("example", help="write a bundled example")
    p.add_argument("name", choices=EXAMPLES)
    p.add_argument("--group")
    p.add_argument("--n", type=int)
    p.add_argument("--N", type=int)
    p.add_argument("--q")
    p.add_argument("--mu")
    p.add_argument("--p", help="prime modulus, or 0 for Q")
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_example)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return BAD_INPUT if exc.code else OK
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return BAD_INPUT
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return BAD_INPUT


if __name__ == "__main__":
    sys.exit(main())
