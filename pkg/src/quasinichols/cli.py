"""Command-line front end; every command reads and writes JSON."""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from . import __version__
from .cocycles import (
    Cochain2,
    NotCoboundary,
    enumerate_cocycles,
    is_abelian,
    pullback,
    solve_coboundary,
    verify_3cocycle,
)
from .constructions import type_one_triple
from .dynkin_roots import DEFAULT_CAPS, dynkin_diagram, hilbert_prediction, is_finite_type
from .exact_scalars import Phase
from .groups import hat_group
from .nichols_oracle import (
    DEFAULT_BUDGET,
    BudgetExceeded,
    TensorElement,
    braided_adjoint,
    graded_dim,
    in_nichols_ideal,
    tensor_mul,
)
from .serialize import (
    DescriptorError,
    cochain3_from_json,
    group_from_json,
    module_from_json,
)
from .ydmod import (
    ModuleError,
    SimpleYDSpec,
    change_base,
    classify_simple,
    direct_sum,
    make_simple,
    one_dim_module,
    twist_module,
)

EXIT_INPUT = 2
EXIT_BUDGET = 3


class InputError(Exception):
    pass


def _load(arg: str):
    """JSON from a file path, '-' for stdin, or an inline object."""
    try:
        if arg == "-":
            return json.load(sys.stdin)
        if arg.lstrip().startswith(("{", "[")):
            return json.loads(arg)
        with open(arg) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read JSON from {arg!r}: {exc}") from None


def _emit(obj, args) -> None:
    if getattr(args, "format", "json") == "table" and isinstance(obj, dict) and "rows" in obj:
        rows = obj["rows"]
        if rows:
            cols = list(rows[0])
            print("\t".join(cols))
            for r in rows:
                print("\t".join(json.dumps(r[c]) for c in cols))
        return
    print(json.dumps(obj, indent=None if getattr(args, "compact", False) else 2, sort_keys=True))


def _phase(s: str | None) -> Phase | None:
    return None if s is None else Phase.parse(s)


def _caps(args) -> dict:
    return {"max_objects": args.max_objects, "max_roots": args.max_roots}


# --- commands -------------------------------------------------------------------


def cmd_group(args) -> int:
    G = group_from_json(_load(args.group))
    H, pi, _ = hat_group(G)
    out = {
        "group": G.to_json(),
        "order": G.order,
        "exponent": G.exponent,
        "hat_group": H.to_json(),
    }
    if args.elements:
        out["elements"] = [list(e) for e in G.elements]
    _emit(out, args)
    return 0


def cmd_cocycles(args) -> int:
    G = group_from_json(_load(args.group))
    rows = []
    for phi in enumerate_cocycles(G):
        row = {"params": list(phi.params)}
        row.update({k: v for k, v in phi.to_json().items() if k != "group"})
        if args.verify:
            row["verified"] = verify_3cocycle(phi)
        if args.abelian:
            row["abelian"] = is_abelian(phi)
        rows.append(row)
    out = {"group": G.to_json(), "count": len(rows)}
    if args.enumerate or args.verify or args.abelian:
        out["rows"] = rows
    _emit(out, args)
    return 0


def cmd_module_simple(args) -> int:
    phi = cochain3_from_json(_load(args.cocycle))
    G = phi.group
    if args.context:
        spec = SimpleYDSpec(
            tuple(c - 1 for c in args.context),
            _phase(args.alpha),
            _phase(args.beta),
            _phase(args.gamma),
            args.dim,
            args.balanced,
        )
        V = make_simple(G, phi, spec)
    elif args.degree is not None:
        vals = [Phase.parse(v) for v in args.values] if args.values else None
        V = one_dim_module(G, phi, args.degree, vals)
    else:
        raise InputError("give --context (rank 3) or --degree (1-dimensional)")
    if args.verify and not V.verify_projective_law():
        raise InputError("structure constants violate the projective law")
    out = V.to_json()
    out["type"] = classify_simple(V)
    _emit(out, args)
    return 0


def cmd_module_sum(args) -> int:
    mods = [module_from_json(_load(p)) for p in args.modules]
    _emit(direct_sum(*mods).to_json(), args)
    return 0


def cmd_module_triple(args) -> int:
    from .groups import FinAbGroup

    G = FinAbGroup(tuple(args.factors))
    beta = [Phase.parse(s) for s in args.beta]
    gamma = [Phase.parse(s) for s in args.gamma]
    _emit(type_one_triple(G, beta, gamma).to_json(), args)
    return 0


def cmd_module_diagonal(args) -> int:
    from .constructions import diagonal_module

    q = [[Phase.parse(s) for s in row] for row in _load(args.q)]
    _emit(diagonal_module(q).to_json(), args)
    return 0


def cmd_twist_solve(args) -> int:
    phi = cochain3_from_json(_load(args.cocycle))
    target = phi
    if args.hat:
        H, pi, _ = hat_group(phi.group)
        target = pullback(phi, pi)
    try:
        J = solve_coboundary(target)
    except NotCoboundary as exc:
        raise InputError(str(exc)) from None
    _emit(J.to_json(), args)
    return 0


def cmd_twist_apply(args) -> int:
    V = module_from_json(_load(args.module))
    J = Cochain2.from_json(_load(args.j))
    if args.inverse:
        J = J.inverse()
    _emit(twist_module(V, J).to_json(), args)
    return 0


def cmd_change_base(args) -> int:
    V = module_from_json(_load(args.module))
    H, pi, iota = hat_group(V.group)
    _emit(change_base(V, pi, iota).to_json(), args)
    return 0


def classify_report(V, caps, series: int = 4):
    v = is_finite_type(V, caps)
    out = {
        "standard_basis": v.standard_basis is not None,
        "verdict": v.verdict,
        "reason": v.reason,
        "status": 1 if v.verdict == "inconclusive" else 0,
    }
    if v.bicharacter is not None:
        out["q"] = v.bicharacter.to_json()["q"]
    if v.roots is not None and v.roots.finite:
        out["positive_roots"] = [list(r) for r in v.roots.positive_roots]
    if v.verdict == "finite":
        out["heights"] = v.heights
        out["dim_B"] = v.dimension
        out["dim_bosonization"] = v.dimension * V.group.order
        out["hilbert_prediction"] = hilbert_prediction(v.roots, v.heights, series)
    return out, v


def cmd_classify(args) -> int:
    V = module_from_json(_load(args.module))
    out, v = classify_report(V, _caps(args), args.series)
    if args.dot and v.standard_basis is not None:
        out["dot"] = dynkin_diagram(v.standard_basis).to_dot()
    _emit(out, args)
    return 0


def _scalar(c):
    from .exact_scalars import Cyclotomic

    if isinstance(c, int):
        return Cyclotomic.from_int(c)
    return Cyclotomic.from_phase(Phase.parse(c))


def build_element(V, expr) -> TensorElement:
    """Expression language: label | index | {ad:[x,y]} | {mul:[...]} | {sum:[[coeff, expr], ...]}."""
    if isinstance(expr, (str, int)):
        return TensorElement.word(V, [expr])
    if not isinstance(expr, dict) or len(expr) != 1:
        raise InputError(f"bad element expression {expr!r}")
    (op, arg), = expr.items()
    if op == "ad":
        x, y = arg
        return braided_adjoint(V, build_element(V, x), build_element(V, y))
    if op == "mul":
        parts = [build_element(V, a) for a in arg]
        out = parts[0]
        for p in parts[1:]:
            out = tensor_mul(V, out, p)
        return out
    if op == "sum":
        terms = [build_element(V, e).scale(_scalar(c)) for c, e in arg]
        out = terms[0]
        for t in terms[1:]:
            out = out + t
        return out
    raise InputError(f"unknown operation {op!r}")


def cmd_oracle(args) -> int:
    V = module_from_json(_load(args.module))
    reports = [graded_dim(V, n, args.budget).to_json() for n in range(args.max_degree + 1)]
    out = {"hilbert": [r["rank"] for r in reports], "degrees": reports}
    if args.relations:
        rels = _load(args.relations)
        items = rels["elements"] if isinstance(rels, dict) else rels
        res = []
        for k, item in enumerate(items):
            expr = item["expr"] if isinstance(item, dict) and "expr" in item else item
            name = item.get("name", str(k)) if isinstance(item, dict) else str(k)
            x = build_element(V, expr)
            res.append({"name": name, "degree": x.n, "in_ideal": in_nichols_ideal(V, x, args.budget)})
        out["relations"] = res
    _emit(out, args)
    return 0


def cmd_diagram(args) -> int:
    from .ydmod import has_standard_basis

    V = module_from_json(_load(args.module))
    sb = has_standard_basis(V)
    if sb is None:
        raise InputError("module has no standard basis; no diagram")
    d = dynkin_diagram(sb)
    if args.json:
        _emit(d.to_json(), args)
    else:
        sys.stdout.write(d.to_dot())
    return 0


# --- parser ------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="quasinichols", description=__doc__)
    p.add_argument("--version", action="version", version=__version__)
    p.add_argument("--compact", action="store_true", help="single-line JSON")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("group", help="describe a group and its hat group")
    g.add_argument("group")
    g.add_argument("--elements", action="store_true")
    g.set_defaults(func=cmd_group)

    c = sub.add_parser("cocycles", help="enumerate representative 3-cocycles")
    c.add_argument("group")
    c.add_argument("--enumerate", action="store_true")
    c.add_argument("--verify", action="store_true")
    c.add_argument("--abelian", action="store_true")
    c.add_argument("--format", choices=["json", "table"], default="json")
    c.set_defaults(func=cmd_cocycles)

    m = sub.add_parser("module", help="build modules")
    msub = m.add_subparsers(dest="module_command", required=True)
    ms = msub.add_parser("simple")
    ms.add_argument("--cocycle", required=True)
    ms.add_argument("--context", type=int, nargs=3, help="1-based generator indices, degree first")
    ms.add_argument("--degree", type=int, nargs="+")
    ms.add_argument("--values", nargs="+", help="phases of the generators on a 1-dimensional module")
    ms.add_argument("--alpha")
    ms.add_argument("--beta")
    ms.add_argument("--gamma")
    ms.add_argument("--dim", type=int)
    ms.add_argument("--balanced", action="store_true")
    ms.add_argument("--verify", action="store_true")
    ms.set_defaults(func=cmd_module_simple)
    mm = msub.add_parser("sum")
    mm.add_argument("modules", nargs="+")
    mm.set_defaults(func=cmd_module_sum)
    mt = msub.add_parser("triple", help="three 2-dimensional type (I) simples over a rank-3 group")
    mt.add_argument("--factors", type=int, nargs=3, default=[2, 2, 2])
    mt.add_argument("--beta", nargs=3, default=["0", "0", "1/2"])
    mt.add_argument("--gamma", nargs=3, default=["0", "1/2", "1/2"])
    mt.set_defaults(func=cmd_module_triple)
    md = msub.add_parser("diagonal", help="diagonal braiding over Z_N^n from a phase matrix")
    md.add_argument("q")
    md.set_defaults(func=cmd_module_diagonal)

    t = sub.add_parser("twist", help="2-cochains and twisting")
    tsub = t.add_subparsers(dest="twist_command", required=True)
    ts = tsub.add_parser("solve-j")
    ts.add_argument("--cocycle", required=True)
    ts.add_argument("--hat", action="store_true", help="solve for the pullback to the hat group")
    ts.set_defaults(func=cmd_twist_solve)
    ta = tsub.add_parser("apply")
    ta.add_argument("--module", required=True)
    ta.add_argument("--j", required=True)
    ta.add_argument("--inverse", action="store_true")
    ta.set_defaults(func=cmd_twist_apply)

    cb = sub.add_parser("change-base", help="lift a module to the hat group")
    cb.add_argument("--module", required=True)
    cb.set_defaults(func=cmd_change_base)

    for name, fn, helptext in (("classify", cmd_classify, "finite-type decision"),):
        k = sub.add_parser(name, help=helptext)
        k.add_argument("--module", required=True)
        k.add_argument("--dot", action="store_true")
        k.add_argument("--series", type=int, default=4, help="degree bound for the predicted Hilbert series")
        k.add_argument("--max-objects", type=int, default=DEFAULT_CAPS["max_objects"])
        k.add_argument("--max-roots", type=int, default=DEFAULT_CAPS["max_roots"])
        k.set_defaults(func=fn)

    o = sub.add_parser("oracle", help="symmetrizer ranks and relation membership")
    o.add_argument("--module", required=True)
    o.add_argument("--max-degree", type=int, default=3)
    o.add_argument("--relations")
    o.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    o.set_defaults(func=cmd_oracle)

    d = sub.add_parser("diagram", help="generalized Dynkin diagram as DOT")
    d.add_argument("--module", required=True)
    d.add_argument("--json", action="store_true")
    d.set_defaults(func=cmd_diagram)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except BudgetExceeded as exc:
        print(json.dumps({"error": "budget", "message": str(exc)}), file=sys.stderr)
        return EXIT_BUDGET
    except (InputError, DescriptorError, ModuleError, ValueError, KeyError, TypeError) as exc:
        print(json.dumps({"error": "input", "message": str(exc)}), file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
