"""Command-line interface.

Verbs: check, spectrum, gamma, sjc, classify, family, build, closure,
search-theorem2.  Arrays are read from an inline JSON argument, a file
path, or standard input ("-").  Exit codes: 0 success / property holds /
no survivors, 1 checked property fails, 2 usage or input error.
All exact rationals are emitted as "p/q" strings, never floats.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from . import families, geometric, graphlab, search, spectral
from .params import InvalidArray, IntersectionArray, array_from_json, basic_feasibility

USAGE_ERROR = 2


def _read_array(source: str) -> IntersectionArray:
    text = source
    if source == "-":
        text = sys.stdin.read()
    elif os.path.exists(source):
        with open(source) as fh:
            text = fh.read()
    return array_from_json(text)


def _emit(obj, emit: str, text_renderer):
    if emit == "json":
        print(json.dumps(obj, indent=2, sort_keys=True))
    else:
        text_renderer(obj)


def _frac(x) -> str:
    return str(Fraction(x))


def _verdict_jsonable(v) -> dict:
    return {
        "passed": v.passed,
        "violations": [[tag, [str(w) for w in wit]] for tag, wit in v.violations],
        "notes": [[tag, [str(w) for w in wit]] for tag, wit in v.notes],
    }


def _array_jsonable(arr: IntersectionArray) -> dict:
    return {"b": list(arr.b), "c": list(arr.c), "canonical": str(arr),
            "a": list(arr.a), "k_seq": [_frac(x) for x in arr.k_seq], "v": _frac(arr.v)}


def cmd_check(args) -> int:
    arr = _read_array(args.array)
    feas = basic_feasibility(arr)
    mult = spectral.multiplicities_integral(arr) if feas.passed else None
    ok = feas.passed and mult is not None and mult.passed
    obj = {
        "array": _array_jsonable(arr),
        "feasibility": _verdict_jsonable(feas),
        "multiplicities": _verdict_jsonable(mult) if mult else None,
        "passed": ok,
    }

    def render(o):
        print(f"array {o['array']['canonical']}  v = {o['array']['v']}")
        print(f"elementary feasibility: {'pass' if feas.passed else 'FAIL'}")
        for tag, wit in feas.violations:
            print(f"    {tag}: {wit}")
        if mult is not None:
            print(f"multiplicities integral: {'pass' if mult.passed else 'FAIL'}")
            for tag, wit in mult.violations:
                print(f"    {tag}: {wit}")
            for tag, wit in mult.notes:
                print(f"    note {tag}: {wit}")
        print("verdict:", "feasible" if ok else "infeasible")

    _emit(obj, args.emit, render)
    return 0 if ok else 1


def cmd_spectrum(args) -> int:
    arr = _read_array(args.array)
    spec = spectral.spectrum(arr)
    obj = {"array": _array_jsonable(arr), "spectrum": spec.to_jsonable()}

    def render(o):
        print(f"array {o['array']['canonical']}")
        for e in o["spectrum"]:
            print(f"    value {e['value']}  multiplicity {e['mult']}")

    _emit(obj, args.emit, render)
    return 0


def cmd_gamma(args) -> int:
    arr = _read_array(args.array)
    try:
        profile = geometric.geometric_candidate(arr)
    except geometric.NotGeometric as exc:
        obj = {"array": _array_jsonable(arr), "geometric": False, "reason": exc.reason}
        _emit(obj, args.emit, lambda o: print(f"not geometric: {o['reason']}"))
        return 1
    obj = {
        "array": _array_jsonable(arr),
        "geometric": True,
        "a1": profile.a1,
        "clique_size": profile.clique_size,
        "theta_min": _frac(profile.theta_min),
        "gamma": list(profile.gamma),
        "near_polygon": profile.near_polygon,
    }

    def render(o):
        print(f"array {o['array']['canonical']}")
        print(f"a_1 = {o['a1']}, Delsarte clique size {o['clique_size']}, "
              f"theta_min = {o['theta_min']}")
        print(f"gamma = {tuple(o['gamma'])}")
        print(f"regular near polygon: {o['near_polygon']}")

    _emit(obj, args.emit, render)
    return 0


def cmd_sjc(args) -> int:
    arr = _read_array(args.array)
    try:
        gd = geometric.gram_data(arr, args.j)
    except (geometric.NotGeometric, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    obj = {
        "array": _array_jsonable(arr),
        "j": gd.j,
        "FF": _frac(gd.FF),
        "CF": _frac(gd.CF),
        "CC": None if gd.CC is None else _frac(gd.CC),
        "S": None if gd.S is None else _frac(gd.S),
        "t_j": None if gd.t_j is None else _frac(gd.t_j),
    }
    a1 = arr.a[1]
    if gd.S is not None and args.j == 3:
        obj["closed_form"] = _frac(geometric.s_closed_form(3, a1, c2=arr.ci(2), c3=arr.ci(3)))
    elif gd.S is not None and args.j == 4:
        obj["closed_form"] = _frac(geometric.s_closed_form(4, a1, c3=arr.ci(3), c4=arr.ci(4)))

    def render(o):
        print(f"array {o['array']['canonical']}, j = {o['j']}")
        print(f"<F,F> = {o['FF']}   <C,F> = {o['CF']}")
        if o["CC"] is None:
            print("<C,C>, S: undefined (gamma_(j-1) != 1)")
        else:
            print(f"<C,C> = {o['CC']}   S = {o['S']}")
            if "closed_form" in o:
                print(f"closed form S = {o['closed_form']}")
        print(f"t_j = {o['t_j']}")

    _emit(obj, args.emit, render)
    if gd.S is not None and "closed_form" in obj and obj["closed_form"] != obj["S"]:
        return 1
    return 0


def cmd_classify(args) -> int:
    arr = _read_array(args.array)
    t = geometric.theorem1_classify(arr, printed_form=args.printed_form)
    c = geometric.corollary1_classify(arr)
    obj = {"array": _array_jsonable(arr),
           "equality_form": t.to_jsonable(), "inequality_form": c.to_jsonable()}

    def render(o):
        print(f"array {o['array']['canonical']}")
        for name, res in (("equality-form", o["equality_form"]),
                          ("inequality-form", o["inequality_form"])):
            print(f"{name}: {res['outcome']}"
                  + (f" ({res['reason']})" if res["reason"] else ""))
            for rec in res["trace"]:
                mark = "ok " if rec["ok"] else "FAIL"
                print(f"    [{mark}] {rec['name']}: expected {rec['expected']}, "
                      f"actual {rec['actual']}")

    _emit(obj, args.emit, render)
    return 0


_FAMILY_CLI = {
    "dual-polar": lambda a: families.dual_polar_array(a.q, Fraction(a.e), a.d),
    "2a": lambda a: families.two_a_array(a.r, a.d),
    "b": lambda a: families.b_array(a.q, a.d),
    "hamming": lambda a: families.hamming_array(a.d, a.q),
    "johnson": lambda a: families.johnson_array(a.n, a.d),
    "odd": lambda a: families.odd_graph_array(a.k),
    "folded-cube": lambda a: families.folded_cube_array(a.m),
    "witt-m24": lambda a: families.witt_m24_array(),
    "sporadic-27": lambda a: families.sporadic_27_array(),
}


def cmd_family(args) -> int:
    try:
        arr = _FAMILY_CLI[args.name](args)
    except (TypeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    obj = _array_jsonable(arr)
    member = families.conjecture_membership(arr)
    obj["conjecture_clause"] = None if member is None else {
        "clause": member.clause, "label": member.label,
        "theta_min_at_most_-k/2": member.theta_min_ok}

    def render(o):
        print(o["canonical"])
        print(json.dumps({"b": o["b"], "c": o["c"]}))
        if o["conjecture_clause"]:
            print(f"conjecture clause {o['conjecture_clause']['clause']}: "
                  f"{o['conjecture_clause']['label']}")

    _emit(obj, args.emit, render)
    return 0


_BUILD_CLI = {
    "hamming": lambda a: graphlab.build("hamming", D=a.d, q=a.q),
    "johnson": lambda a: graphlab.build("johnson", n=a.n, d=a.d),
    "odd": lambda a: graphlab.build("odd", k=a.k),
    "folded-cube": lambda a: graphlab.build("folded_cube", m=a.m),
    "symplectic-dual-polar": lambda a: graphlab.build("symplectic_dual_polar", D=a.d),
}


def cmd_build(args) -> int:
    try:
        g = _BUILD_CLI[args.family](args)
    except (TypeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    obj = {"graph": g.name, "vertices": g.n, "degree": g.degree(0)}
    ok = True
    if args.verify:
        cert = graphlab.certify_drg(g)
        obj["distance_regular"] = cert.ok
        if cert.ok:
            obj["array"] = _array_jsonable(cert.array)
            try:
                audit = graphlab.delsarte_clique_audit(g, cert.array)
                obj["clique_audit"] = {"ok": audit.ok, "cliques": audit.n_cliques,
                                       "gamma": list(audit.gamma or ())}
                ok = ok and audit.ok
            except geometric.NotGeometric as exc:
                obj["clique_audit"] = {"skipped": exc.reason}
            numeric = graphlab.empirical_spectrum_and_gram(g, cert.array)
            obj["numeric_audit"] = {"ok": numeric.ok,
                                    "eigen_dims": [[f"{v:.6f}", d] for v, d in numeric.eigen_dims],
                                    "max_gram_error": f"{numeric.max_gram_error:.2e}"}
            ok = ok and numeric.ok
        else:
            obj["witness"] = [str(w) for w in cert.witness]
            ok = False
    if args.out_edges:
        with open(args.out_edges, "w") as fh:
            fh.write("\n".join(g.to_edge_list_lines()) + "\n")
        obj["edges_written"] = args.out_edges

    def render(o):
        print(f"{o['graph']}: {o['vertices']} vertices, {o['degree']}-regular")
        if "distance_regular" in o:
            print(f"distance-regular: {o['distance_regular']}")
            if o.get("array"):
                print(f"certified array {o['array']['canonical']}")
            if o.get("clique_audit"):
                print(f"clique audit: {o['clique_audit']}")
            if o.get("numeric_audit"):
                print(f"numeric audit: ok={o['numeric_audit']['ok']} "
                      f"max gram error {o['numeric_audit']['max_gram_error']}")
            if o.get("witness"):
                print(f"witness: {o['witness']}")

    _emit(obj, args.emit, render)
    return 0 if ok else 1


def cmd_closure(args) -> int:
    try:
        g = _BUILD_CLI[args.family](args)
    except (TypeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    x, y = args.x, args.y
    if y is None:
        if args.distance is None:
            print("error: give --distance or both --x and --y", file=sys.stderr)
            return USAGE_ERROR
        dist = graphlab.distance_matrix(g)
        pair = next(((a, b) for a in range(g.n) for b in range(g.n)
                     if dist[a][b] == args.distance), None)
        if pair is None:
            print(f"error: no pair at distance {args.distance}", file=sys.stderr)
            return USAGE_ERROR
        x, y = pair
    res = graphlab.strongly_closed_closure(g, x, y)
    obj = {"graph": g.name, "x": x, "y": y, "closure_size": len(res.vertices),
           "distance_regular": res.certify.ok,
           "array": _array_jsonable(res.certify.array) if res.certify.ok else None}

    def render(o):
        print(f"closure of ({o['x']}, {o['y']}) in {o['graph']}: "
              f"{o['closure_size']} vertices")
        if o["array"]:
            print(f"induced subgraph is distance-regular: {o['array']['canonical']}")
        else:
            print("induced subgraph is not distance-regular")

    _emit(obj, args.emit, render)
    return 0


def cmd_search(args) -> int:
    if args.case:
        j, d = (int(t) for t in args.case.split(","))
        rep = search.SearchReport(args.mode, [search.enumerate_case(j, d, args.mode)])
    else:
        workers = int(os.environ.get("DRGTOOLS_THREADS", "1"))
        rep = search.full_search(args.mode, workers=workers)
    if args.emit == "json":
        print(rep.to_json())
    elif args.emit == "csv":
        print(rep.to_csv(), end="")
    else:
        print(rep.to_text())
    return 0 if not rep.survivors else 1


def _add_array_arg(p):
    p.add_argument("array", help='array as JSON {"b":[...],"c":[...]}, a file path, or -')


def _add_emit(p, choices=("text", "json")):
    p.add_argument("--emit", choices=choices, default="text")


def make_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="drgtools",
                                 description="Exact feasibility and classification "
                                             "toolkit for distance-regular graph "
                                             "intersection arrays")
    sub = ap.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("check", help="elementary feasibility plus multiplicity integrality")
    _add_array_arg(p); _add_emit(p); p.set_defaults(fn=cmd_check)

    p = sub.add_parser("spectrum", help="exact eigenvalues and multiplicities")
    _add_array_arg(p); _add_emit(p); p.set_defaults(fn=cmd_spectrum)

    p = sub.add_parser("gamma", help="geometric profile and gamma sequence")
    _add_array_arg(p); _add_emit(p); p.set_defaults(fn=cmd_gamma)

    p = sub.add_parser("sjc", help="inner-product data at distance j")
    _add_array_arg(p)
    p.add_argument("--j", type=int, required=True)
    _add_emit(p); p.set_defaults(fn=cmd_sjc)

    p = sub.add_parser("classify", help="dual polar classifiers with condition traces")
    _add_array_arg(p)
    p.add_argument("--printed-form", action="store_true",
                   help="use the a_i = c_i(a_1+1) variant of the equality classifier")
    _add_emit(p); p.set_defaults(fn=cmd_classify)

    p = sub.add_parser("family", help="emit a named family intersection array")
    p.add_argument("name", choices=sorted(_FAMILY_CLI))
    p.add_argument("--q", type=int); p.add_argument("--e", default="1")
    p.add_argument("--d", type=int); p.add_argument("--r", type=int)
    p.add_argument("--n", type=int); p.add_argument("--k", type=int)
    p.add_argument("--m", type=int)
    _add_emit(p); p.set_defaults(fn=cmd_family)

    p = sub.add_parser("build", help="construct a graph and optionally verify it")
    p.add_argument("--family", required=True, choices=sorted(_BUILD_CLI))
    p.add_argument("--d", type=int); p.add_argument("--q", type=int)
    p.add_argument("--n", type=int); p.add_argument("--k", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--verify", action="store_true")
    p.add_argument("--out-edges", help="write an edge list to this file")
    _add_emit(p); p.set_defaults(fn=cmd_build)

    p = sub.add_parser("closure", help="strongly closed closure of a vertex pair")
    p.add_argument("--family", required=True, choices=sorted(_BUILD_CLI))
    p.add_argument("--d", type=int); p.add_argument("--q", type=int)
    p.add_argument("--n", type=int); p.add_argument("--k", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--distance", type=int)
    p.add_argument("--x", type=int); p.add_argument("--y", type=int)
    _add_emit(p); p.set_defaults(fn=cmd_closure)

    p = sub.add_parser("search-theorem2", help="exhaustive case search")
    p.add_argument("--case", help="restrict to one case, e.g. 3,6")
    p.add_argument("--mode", choices=("strict", "extended"), default="strict")
    _add_emit(p, ("text", "json", "csv")); p.set_defaults(fn=cmd_search)
    return ap


def main(argv=None) -> int:
    ap = make_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return USAGE_ERROR if exc.code else 0
    try:
        return args.fn(args)
    except (InvalidArray, json.JSONDecodeError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return USAGE_ERROR


if __name__ == "__main__":
    sys.exit(main())
