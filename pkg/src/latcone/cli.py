"""``latcone`` command-line interface.

Exit codes: 0 success, 1 a mathematical check failed, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys

from .cones import Cone
from .conjectures import shc_check
from .errors import CheckFailure
from .exact import minor_stats
from .groups import (
    AbelianGroup,
    diam_formula,
    diam_upper_bound,
    diameter,
    quotient,
    rhs_lattice,
    BFS_ORDER_LIMIT,
)
from .hilbert import hilbert_basis
from .io import InstanceError, parse_instance, to_jsonable
from .lp import Polytope, UnboundedError
from .pyramids import NotLatticeFreeError, PyramidError, build_pyramid, generate_sg, pyramid_bound_report
from .search import SearchConfig, search
from .widths import facet_width, lattice_width


class UsageError(Exception):
    pass


def _factors(text):
    try:
        return tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise UsageError(f"--factors expects comma-separated integers, got {text!r}")


def _cone(inst):
    try:
        return Cone(inst.A)
    except ValueError as exc:
        raise UsageError(str(exc))


def _gens(gs):
    return [{"vector": g.vector, "scale": g.scale, "rows": g.rows} for g in gs]


def cmd_analyze(args, inst):
    st = minor_stats(inst.A)
    C = _cone(inst)
    res = {"m": C.m, "n": C.n, "delta": st.delta_max, "delta_min": st.delta_min,
           "gcd_minors": st.gcd_minors, "unimodular": st.delta_max == 1,
           "rays": C.primitive_rays.rays, "normalized": C.normalized.rays,
           "full_dimensional": C.is_full_dimensional}
    return res, []


def cmd_rays(args, inst):
    C = _cone(inst)
    return {"primitive": _gens(C.primitive_rays), "normalized": _gens(C.normalized)}, []


def _basis(inst, lattice):
    if lattice == "rhs":
        return rhs_lattice(inst.A).basis_matrix()
    return None


def cmd_hilbert(args, inst):
    C = _cone(inst)
    lattice = args.lattice or inst.lattice
    hb = hilbert_basis(C, _basis(inst, lattice))
    res = {"lattice": lattice, "size": len(hb),
           "elements": [{"vector": e.vector, "trivial": e.trivial, "face_dim": e.face_dim} for e in hb]}
    return res, []


def cmd_shc(args, inst):
    C = _cone(inst)
    vs = shc_check(C)
    res = {"holds": all(v.holds for v in vs),
           "max_height": max(v.coefficient_sum for v in vs),
           "elements": [{"vector": v.element.vector, "height": v.coefficient_sum,
                         "lambda": v.coefficients, "holds": v.holds,
                         "lemma32_ok": v.lemma32_ok, "lemma33_ok": v.lemma33_ok} for v in vs]}
    if not res["holds"]:
        raise CheckFailure("SHC fails on this cone", {"A": inst.A, "report": res})
    return res, []


def cmd_width(args, inst):
    if inst.b is None:
        raise UsageError("width needs a right-hand side b in the instance")
    P = Polytope.from_rational(inst.A, inst.b)
    lw = lattice_width(P, args.radius)
    fw = facet_width(P)
    d = minor_stats(inst.A).delta_max
    res = {"lattice_width": lw.width, "direction": lw.direction, "radius": args.radius,
           "exhaustive": lw.exhaustive, "facet_width": fw.width, "facet_direction": fw.direction,
           "delta": d, "chain_ok": lw.width <= fw.width <= d * lw.width}
    if d >= 1 and not res["chain_ok"]:
        raise CheckFailure("w <= w^F <= Delta w fails", {"A": inst.A, "b": inst.b})
    return res, ["radius_limited_width"]


def _group_report(G, limit):
    diam, source = diameter(G, limit)
    res = {"invariant_factors": G.invariant_factors, "order": G.order, "diameter": diam,
           "diam_source": source, "diam_formula": diam_formula(G)}
    flags = []
    if G.order > 1 and 2 ** G.rank <= G.order:
        res["lemma_bound"] = diam_upper_bound(G.order, G.rank)
    if source == "bfs" and diam != res["diam_formula"]:
        flags.append("formula_vs_bfs_discrepancy")
    return res, flags


def cmd_group(args, inst):
    if args.factors:
        try:
            G = AbelianGroup(_factors(args.factors))
        except ValueError as exc:
            raise UsageError(str(exc))
        return _group_report(G, BFS_ORDER_LIMIT)
    if inst is None:
        raise UsageError("group needs an instance file or --factors")
    L = rhs_lattice(inst.A)
    res, flags = _group_report(quotient(L).group, BFS_ORDER_LIMIT)
    res["lattice_det"] = L.det
    return res, flags


def _bound(rep):
    res = {"w_a": rep.w_a, "bound_eq4": rep.bound_eq4, "bound_eq5": rep.bound_eq5,
           "tight": rep.tight, "tight_bfs": rep.tight_bfs, "diam_source": rep.diam_source,
           "delta": rep.delta, "gcd": rep.gcd, "height": rep.height, "diameter": rep.diam,
           "diam_formula": rep.diam_formula, "group": rep.group}
    return res, list(rep.flags)


def cmd_pyramid(args, inst):
    if inst.a is None or inst.b is None or inst.b_a is None:
        raise UsageError("pyramid needs a, b and b_a in the instance")
    if any(x.denominator != 1 for x in inst.b):
        raise UsageError("pyramid needs an integral b")
    P = build_pyramid(inst.A, inst.a, [int(x) for x in inst.b], inst.b_a)
    res, flags = _bound(pyramid_bound_report(P))
    res["apex"] = P.v
    return res, flags


def cmd_sg(args, inst):
    try:
        P = generate_sg(_factors(args.factors))
    except ValueError as exc:
        raise UsageError(str(exc))
    res = {"A": P.A, "a": P.a, "b": P.b, "b_a": P.b_a, "apex": P.v, "lattice_free": True}
    flags = []
    if args.report:
        rep, flags = _bound(pyramid_bound_report(P))
        res["report"] = rep
    return res, flags


def cmd_search(args, inst):
    cfg = SearchConfig(args.mode, args.n, args.count, args.seed, args.m, args.lo, args.hi,
                       args.max_delta, args.log)
    try:
        cfg.validate()
    except ValueError as exc:
        raise UsageError(str(exc))
    try:
        s = search(cfg)
    except OSError as exc:
        raise UsageError(f"cannot write log: {exc}")
    res = {"passed": s.passed, "failed": s.failed, "skipped": s.skipped, "log": args.log}
    if s.failed:
        bad = [r.index for r in s.records if r.verdict == "fail"]
        raise CheckFailure(f"{s.failed} instance(s) failed", {"indices": bad, "summary": res})
    return res, []


def cmd_appendix(args, inst):
    from .appendix import run_appendix
    checks = run_appendix()
    res = {"checks": [{"name": c.name, "passed": c.passed, "detail": c.detail} for c in checks],
           "passed": all(c.passed for c in checks)}
    if not res["passed"]:
        raise CheckFailure("appendix re-derivation failed", res)
    return res, []


COMMANDS = {
    "analyze": (cmd_analyze, True, "minor statistics and generators of C(A)"),
    "rays": (cmd_rays, True, "primitive and normalized generators"),
    "hilbert": (cmd_hilbert, True, "Hilbert basis of C(A)"),
    "shc": (cmd_shc, True, "height of every Hilbert element w.r.t. normalized generators"),
    "width": (cmd_width, True, "lattice and facet width of P(A, b)"),
    "group": (cmd_group, None, "the group Lambda / Z^n and its diameter"),
    "pyramid": (cmd_pyramid, True, "facet-width bounds for a lattice-free pyramid"),
    "sg": (cmd_sg, False, "the simplex S^G for given invariant factors"),
    "search": (cmd_search, False, "seeded conjecture search with a JSONL log"),
    "appendix": (cmd_appendix, False, "re-derive the maximal-scaling example"),
}


def build_parser():
    p = argparse.ArgumentParser(prog="latcone", description=__doc__.splitlines()[0])
    p.add_argument("--json", metavar="OUT", help="also write the report as JSON")
    sub = p.add_subparsers(dest="command", required=True)
    for name, (_, needs_file, helptext) in COMMANDS.items():
        sp = sub.add_parser(name, help=helptext)
        if needs_file:
            sp.add_argument("instance")
        elif needs_file is None:
            sp.add_argument("instance", nargs="?")
        sp.add_argument("--json", metavar="OUT", dest="json_sub", help=argparse.SUPPRESS)
    sub.choices["hilbert"].add_argument("--lattice", choices=("zn", "rhs"))
    sub.choices["width"].add_argument("--radius", type=int, default=3)
    sub.choices["group"].add_argument("--factors")
    sg = sub.choices["sg"]
    sg.add_argument("--factors", required=True)
    sg.add_argument("--report", action="store_true")
    s = sub.choices["search"]
    s.add_argument("--mode", required=True, choices=("shc", "bimodular", "simplicial", "weak"))
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--m", type=int)
    s.add_argument("--lo", type=int, default=-2)
    s.add_argument("--hi", type=int, default=2)
    s.add_argument("--max-delta", type=int, dest="max_delta")
    s.add_argument("--count", type=int, default=10)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--log")
    return p


def render(value, indent=0) -> list[str]:
    pad = "  " * indent
    out = []
    if isinstance(value, dict):
        for k, v in value.items():
            if isinstance(v, (dict, list)) and v and any(isinstance(x, (dict, list)) for x in
                                                         (v.values() if isinstance(v, dict) else v)):
                out.append(f"{pad}{k}:")
                out.extend(render(v, indent + 1))
            else:
                out.append(f"{pad}{k}: {_flat(v)}")
    elif isinstance(value, list):
        for v in value:
            if isinstance(v, dict):
                out.append(f"{pad}-")
                out.extend(render(v, indent + 1))
            else:
                out.append(f"{pad}- {_flat(v)}")
    else:
        out.append(pad + _flat(value))
    return out


def _flat(v):
    if isinstance(v, list):
        return "(" + ", ".join(_flat(x) for x in v) + ")"
    if isinstance(v, dict):
        return "{" + ", ".join(f"{k}: {_flat(x)}" for k, x in v.items()) + "}"
    if v is None:
        return "none"
    return str(v).lower() if isinstance(v, bool) else str(v)


def _digest(args):
    path = getattr(args, "instance", None)
    h = hashlib.sha256()
    if path:
        with open(path, "rb") as fh:
            h.update(fh.read())
    h.update(json.dumps({k: v for k, v in vars(args).items() if k not in ("json", "json_sub")},
                        sort_keys=True, default=str).encode())
    return h.hexdigest()[:16]


def _emit(report, out_path):
    text = json.dumps(report, indent=2) + "\n"
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text)


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    out_path = args.json or getattr(args, "json_sub", None)
    fn = COMMANDS[args.command][0]
    report = {"command": ["latcone"] + argv}
    code = 0
    try:
        inst = parse_instance(args.instance) if getattr(args, "instance", None) else None
        report["inputs_digest"] = _digest(args)
        results, flags = fn(args, inst)
        report["results"] = to_jsonable(results)
        report["flags"] = flags
        print("\n".join(render(report["results"])))
        if flags:
            print("flags: " + ", ".join(flags))
        if args.command == "appendix":
            print("PASS")
    except (InstanceError, UsageError, PyramidError, UnboundedError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except NotLatticeFreeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except CheckFailure as exc:
        report["failure"] = {"message": str(exc), "instance": to_jsonable(exc.instance)}
        print(f"check failed: {exc}", file=sys.stderr)
        print(json.dumps(report["failure"]), file=sys.stderr)
        if args.command == "appendix":
            print("FAIL")
        code = 1
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    _emit(report, out_path)
    return code


if __name__ == "__main__":
    sys.exit(main())
