"""``ncs`` command line.

Exit codes: 0 on success (including a passing verification), 2 when a
verification or identity check fails, 1 on usage or parse errors.
"""
from __future__ import annotations

import argparse
import json
import random
import sys
from typing import Sequence

from . import __version__
from . import diffop as D
from . import nsym as N
from . import trees as T
from .algebra import ParseError, TruncSeries
from .ncs import Component, NcsSystem, complete_from, system_from_json, system_to_json, verify_ncs
from .treesys import TreeSystemConfig, omega_trees, surjectivity_rank, t_w, t_w_star

EXIT_OK, EXIT_USAGE, EXIT_FAILED = 0, 1, 2

MANIFEST = {
    "name": "ncsys",
    "version": __version__,
    "defaults": {
        "order": D.DEFAULT_ORDER,
        "degree": D.DEFAULT_DEGREE,
        "nsym_weight": N.DEFAULT_WEIGHT,
        "labels": [1],
    },
    "grammar": {
        "polynomial": "terms joined by + / -; monomials are *-joined generators in order "
                      "(z1*z2 - 2*z2*z1); ^ powers allowed (3*z1^2*z2); rationals as p/q",
        "nsym": "generators L<m>, S<m>, Ph<m>, Ps<m>, Xi<m>; e.g. Ps2 - L1*L1 + 2*L2",
        "qsym": "monomial quasi-symmetric functions M[1,2]; e.g. M[2] - 1/2*M[1,1]",
        "tree": "s-expression (label child ...), e.g. (0 (1) (1 (2)))",
        "forest": "{tree, tree, ...}; {} is the empty forest",
        "map": "comma-separated components of F_t in the variables of --vars, e.g. "
               "--vars z1,z2 --map \"z1 - t*z2*z1, z2\"",
    },
    "commands": ["invert", "dlog", "cm", "nsym-expand", "trees-enum", "trees-system",
                 "diffop-system", "verify", "translate", "pair", "trees enum", "trees system"],
}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _labels(text: str) -> list[int]:
    try:
        out = sorted({int(x) for x in text.split(",") if x.strip()})
    except ValueError:
        raise argparse.ArgumentTypeError(f"labels must be comma-separated positive integers: {text!r}")
    if not out or min(out) <= 0:
        raise argparse.ArgumentTypeError("labels must be positive integers")
    return out


def _emit(args, payload, text: str) -> None:
    if args.json:
        print(json.dumps(payload, indent=2, sort_keys=False))
    else:
        print(text)


# --------------------------------------------------------------------------
# shared argument groups
# --------------------------------------------------------------------------


def _common(p, order_default=None):
    p.add_argument("--order", type=int, default=order_default, help="truncation order N in t")
    p.add_argument("--json", action="store_true", help="machine-readable output")
    p.add_argument("--seed", type=int, default=0, help="seed for randomized sampling")


def _map_args(p, need_map=True):
    p.add_argument("--vars", default="z", help="comma-separated variable names")
    if need_map:
        p.add_argument("--map", required=True, help="components of F_t, comma separated")
    p.add_argument("--degree", type=int, default=D.DEFAULT_DEGREE, help="polynomial degree bound D")
    p.add_argument("--commutative", action="store_true", help="commuting variables")


def _tree_args(p):
    p.add_argument("--labels", type=_labels, default=[1], help="label set W, e.g. 1,2")


def _load_map(args) -> D.FormalMap:
    order = args.order if args.order is not None else D.DEFAULT_ORDER
    return D.FormalMap.parse(args.map, [v.strip() for v in args.vars.split(",")], order,
                             args.degree, args.commutative)


# --------------------------------------------------------------------------
# commands
# --------------------------------------------------------------------------


def cmd_invert(args) -> int:
    fm = _load_map(args)
    G = D.invert_map(fm)
    lines = [f"{v} -> {c}" for v, c in zip(fm.space.variables, D.format_map(G))]
    payload = {"vars": list(fm.space.variables), "order": fm.order, "degree": fm.space.degree,
               "G": D.format_map(G)}
    slices = D.inverse_slices(fm)
    payload["N"] = [[str(x) for x in vec] for vec in slices]
    if args.tree_expansion:
        from_trees = D.tree_expansion_inverse(fm)
        agree = from_trees == slices
        payload["tree_expansion"] = [[str(x) for x in vec] for vec in from_trees]
        payload["tree_expansion_agrees"] = agree
        lines.append("tree expansion of N_[m] = sum_S field(S)/alpha(S):")
        for m, vec in enumerate(from_trees, 1):
            lines.append(f"  N_[{m}] = ({', '.join(map(str, vec))})")
        lines.append("tree expansion agrees with the fixed-point inverse" if agree
                     else "tree expansion DISAGREES with the fixed-point inverse")
        _emit(args, payload, "\n".join(lines))
        return EXIT_OK if agree else EXIT_FAILED
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK


def cmd_dlog(args) -> int:
    fm = _load_map(args)
    a = D.dlog(fm)
    strs = [D._t_poly_str(s) for s in a]
    lines = ["d(t) = -[a_t d/dz] with"] + [f"a_t[{v}] = {s}" for v, s in zip(fm.space.variables, strs)]
    _emit(args, {"vars": list(fm.space.variables), "a": strs}, "\n".join(lines))
    return EXIT_OK


def cmd_cm(args) -> int:
    space = D.PolySpace([v.strip() for v in args.vars.split(",")], args.degree, args.commutative)
    H = [space.parse(p) for p in D.split_top_level(args.H)]
    if len(H) != len(space.variables):
        raise UsageError(f"--H needs {len(space.variables)} components")
    seq = D.cm_sequence(space, H, args.max_m)
    lines = [f"C_{m} = ({', '.join(map(str, vec))})" for m, vec in enumerate(seq, 1)]
    payload = {"vars": list(space.variables), "C": [[str(x) for x in vec] for vec in seq]}
    code = EXIT_OK
    if space.commutative:
        agree = all(D.jacobian_cm(space, H, m) == seq[m - 1] for m in range(1, args.max_m + 1))
        payload["jacobian_agrees"] = agree
        lines.append("(JH)^(m-1) H agrees" if agree else "(JH)^(m-1) H DISAGREES")
        code = EXIT_OK if agree else EXIT_FAILED
    _emit(args, payload, "\n".join(lines))
    return code


def cmd_nsym_expand(args) -> int:
    x = N.parse(args.expr)
    y = N.convert(x, args.basis)
    payload = {"expr": args.expr, "basis": args.basis, "result": str(y)}
    if args.weight is not None:
        y = N.homogeneous_component(y, args.weight)
        payload["result"] = str(y)
    _emit(args, payload, str(y))
    return EXIT_OK


def _tree_row(t: T.LTree) -> dict:
    return {
        "tree": T.format_tree(t),
        "weight": T.weight(t),
        "alpha": T.aut_count(t),
        "chain": T.is_chain(t),
        "shrub": T.is_shrub(t),
        "primitive": T.is_primitive(t),
        "theta": str(T.theta(t)),
        "beta": T.beta(t),
        "gamma": T.gamma(t),
    }


def cmd_trees_enum(args) -> int:
    rows = [_tree_row(t) for t in T.enumerate_gl_trees(args.labels, args.max_weight, include_singleton=False)]
    if args.json:
        print(json.dumps(rows, indent=2))
        return EXIT_OK
    flag = lambda b: "y" if b else "-"  # noqa: E731
    print(f"{'tree':<28} {'weight':>6} {'alpha':>5} {'chain':>5} {'shrub':>5} {'prim':>5} {'theta':>7}")
    for r in rows:
        print(f"{r['tree']:<28} {r['weight']:>6} {r['alpha']:>5} {flag(r['chain']):>5} "
              f"{flag(r['shrub']):>5} {flag(r['primitive']):>5} {r['theta']:>7}")
    return EXIT_OK


def _system_text(sys_: NcsSystem, fmt=str) -> str:
    lines = []
    for name in "fgdhm":
        s = getattr(sys_, name)
        lines.append(f"{name}(t):")
        for k, c in enumerate(s):
            if c:
                lines.append(f"  t^{k}: {fmt(c)}")
    return "\n".join(lines)


def _report(args, sys_: NcsSystem, payload: dict, text: str) -> int:
    code = EXIT_OK
    if getattr(args, "verify", False):
        rep = verify_ncs(sys_)
        payload["verify"] = {"valid": rep.valid,
                             "residuals": [{"equation": r.equation, "order": r.order, "zero": r.zero}
                                           for r in rep.residuals]}
        text += "\n" + str(rep)
        code = EXIT_OK if rep.valid else EXIT_FAILED
    _emit(args, payload, text)
    return code


def cmd_trees_system(args) -> int:
    cfg = TreeSystemConfig(args.labels, args.order if args.order is not None else 4)
    sys_ = omega_trees(cfg)
    payload = system_to_json(sys_)
    payload["labels"] = sorted(cfg.labels)
    payload["terms"] = {name: [{T.format_tree(k): str(v) for k, v in c.items()} for c in getattr(sys_, name)]
                        for name in "fgdhm"}
    return _report(args, sys_, payload, _system_text(sys_))


def _diffop_payload(fm: D.FormalMap, sys_: NcsSystem) -> dict:
    return {
        "space": D.space_to_json(fm.space),
        "map": D.format_map(fm),
        "order": sys_.order,
        **{name: [D.op_to_json(op) for op in getattr(sys_, name)] for name in "fgdhm"},
    }


def diffop_system_from_json(data: dict) -> NcsSystem:
    space = D.space_from_json(data["space"])
    comps = []
    alg = D.DiffOpAlgebra(space)
    for name in "fgdhm":
        comps.append(TruncSeries(alg, [D.op_from_json(space, c) for c in data[name]]))
    return NcsSystem(*comps)


def cmd_diffop_system(args) -> int:
    fm = _load_map(args)
    sys_ = D.omega_Ft(fm)
    return _report(args, sys_, _diffop_payload(fm, sys_), _system_text(sys_))


def cmd_verify(args) -> int:
    order = args.order
    if args.system == "trees":
        sys_ = omega_trees(TreeSystemConfig(args.labels, order if order is not None else 4))
    elif args.system == "diffop":
        if not args.map:
            raise UsageError("--system diffop needs --map")
        sys_ = D.omega_Ft(_load_map(args))
    elif args.system == "nsym":
        sys_ = N.universal_system(order if order is not None else 4)
    elif args.system == "random":
        from .sampling import random_nsym_component, random_scalar_component

        rng = random.Random(args.seed)
        make = random_nsym_component if args.carrier == "nsym" else random_scalar_component
        sys_ = complete_from(args.tag, make(args.tag, order if order is not None else 4, rng))
    else:
        if not args.file:
            raise UsageError("--system file needs --file")
        with open(args.file) as fh:
            data = json.load(fh)
        sys_ = diffop_system_from_json(data) if "space" in data else system_from_json(data)
    rep = verify_ncs(sys_)
    payload = {"system": args.system, "order": sys_.order, "valid": rep.valid,
               "residuals": [{"equation": r.equation, "order": r.order, "zero": r.zero,
                              "residual": str(r.series)} for r in rep.residuals]}
    _emit(args, payload, str(rep))
    return EXIT_OK if rep.valid else EXIT_FAILED


def _specializer(args, weight: int):
    """A function NSym -> target carrier, plus a formatter for its values."""
    target = args.target
    if target == "nsym":
        return (lambda x: N.convert(x, args.basis)), str
    if target == "abelian":
        ring = N.abelian_ring(max(weight, 1))
        return (lambda x: N.abelianize(x, ring)), str
    if target == "trees":
        cfg = TreeSystemConfig(args.labels, max(weight, args.order or 0, 1))
        return (lambda x: t_w(cfg, x)), str
    if target == "diffop":
        if not args.map:
            raise UsageError("--target diffop needs --map")
        if args.order is None:
            args.order = max(weight, 1)
        fm = _load_map(args)
        return (lambda x: D.s_Ft(fm, x)), str
    raise UsageError(f"unknown target {target!r}")


def cmd_translate(args) -> int:
    lhs, rhs = N.parse(args.lhs), N.parse(args.rhs)
    weight = max(N.weight(N.to_lambda(lhs)), N.weight(N.to_lambda(rhs)))
    spec, fmt = _specializer(args, weight)
    a, b = spec(lhs), spec(rhs)
    holds = a == b
    payload = {"target": args.target, "lhs": fmt(a), "rhs": fmt(b), "holds": holds}
    text = "\n".join([f"lhs -> {fmt(a)}", f"rhs -> {fmt(b)}",
                      "identity holds" if holds else "identity FAILS"])
    _emit(args, payload, text)
    return EXIT_OK if holds else EXIT_FAILED


def cmd_pair(args) -> int:
    if args.nsym is not None:
        if args.qsym is None:
            raise UsageError("--nsym needs --qsym")
        val = N.pair(N.parse(args.nsym), N.QSYM.parse(args.qsym))
    elif args.tree is not None:
        if args.forest is None:
            raise UsageError("--tree needs --forest")
        val = T.pair_elements(T.GL.parse(args.tree), T.CK.parse(args.forest))
    elif args.forest is not None:
        # dual map T_W^*: forest -> QSym
        f = T.parse_forest(args.forest)
        cfg = TreeSystemConfig(args.labels, max(T.forest_weight(f), 1))
        q = t_w_star(cfg, f)
        _emit(args, {"forest": T.format_forest(f), "qsym": str(q)}, str(q))
        return EXIT_OK
    else:
        raise UsageError("give --nsym/--qsym, --tree/--forest, or --forest alone")
    _emit(args, {"value": str(val)}, str(val))
    return EXIT_OK


def cmd_rank(args) -> int:
    m = args.weight
    r = surjectivity_rank(args.labels, m)
    _emit(args, {"weight": m, "rank": r, "dim_qsym": 2 ** (m - 1)}, f"rank {r} (dim QSym_{m} = {2 ** (m - 1)})")
    return EXIT_OK


# --------------------------------------------------------------------------
# parser
# --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="ncs", description="Exact computations with NCS systems.")
    p.add_argument("--manifest", action="store_true", help="print version, defaults and grammar, then exit")
    p.add_argument("--version", action="version", version=f"ncs {__version__}")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    c = sub.add_parser("invert", help="invert F_t = z - H_t(z)")
    _common(c)
    _map_args(c)
    c.add_argument("--tree-expansion", action="store_true", help="also rebuild N_[m] from labeled trees")
    c.set_defaults(fn=cmd_invert)

    c = sub.add_parser("dlog", help="D-Log a_t of F_t")
    _common(c)
    _map_args(c)
    c.set_defaults(fn=cmd_dlog)

    c = sub.add_parser("cm", help="C_1 = H, C_m = [C_(m-1) d/dz] H")
    _common(c)
    _map_args(c, need_map=False)
    c.add_argument("--H", required=True, help="components of H, comma separated")
    c.add_argument("--max-m", type=int, default=4)
    c.set_defaults(fn=cmd_cm)

    c = sub.add_parser("nsym-expand", help="rewrite an NSym expression in one family")
    _common(c)
    c.add_argument("--expr", required=True)
    c.add_argument("--basis", choices=N.BASES, default="L")
    c.add_argument("--weight", type=int, help="keep only this homogeneous component")
    c.set_defaults(fn=cmd_nsym_expand)

    def enum_parser(c):
        _common(c)
        _tree_args(c)
        c.add_argument("--max-weight", type=int, default=4)
        c.set_defaults(fn=cmd_trees_enum)

    def system_parser(c):
        _common(c)
        _tree_args(c)
        c.add_argument("--verify", action="store_true")
        c.set_defaults(fn=cmd_trees_system)

    enum_parser(sub.add_parser("trees-enum", help="Grossman-Larson basis trees with statistics"))
    system_parser(sub.add_parser("trees-system", help="the tree NCS system"))
    trees = sub.add_parser("trees", help="tree commands: enum, system, rank")
    tsub = trees.add_subparsers(dest="trees_command", parser_class=_Parser, required=True)
    enum_parser(tsub.add_parser("enum"))
    system_parser(tsub.add_parser("system"))
    c = tsub.add_parser("rank", help="rank of the dual map on weight-m forests")
    _common(c)
    _tree_args(c)
    c.add_argument("--weight", type=int, required=True)
    c.set_defaults(fn=cmd_rank)

    c = sub.add_parser("diffop-system", help="the NCS system of F_t over differential operators")
    _common(c)
    _map_args(c)
    c.add_argument("--verify", action="store_true")
    c.set_defaults(fn=cmd_diffop_system)

    c = sub.add_parser("verify", help="check the five defining equations")
    _common(c)
    _tree_args(c)
    _map_args(c, need_map=False)
    c.add_argument("--map")
    c.add_argument("--system", choices=["trees", "diffop", "nsym", "random", "file"], required=True)
    c.add_argument("--file", help="system JSON (from --json output)")
    c.add_argument("--tag", choices=[t.name for t in Component], default="F")
    c.add_argument("--carrier", choices=["qq", "nsym"], default="nsym")
    c.set_defaults(fn=cmd_verify)

    c = sub.add_parser("translate", help="specialize an NSym identity lhs = rhs")
    _common(c)
    _tree_args(c)
    _map_args(c, need_map=False)
    c.add_argument("--map")
    c.add_argument("--lhs", required=True)
    c.add_argument("--rhs", required=True)
    c.add_argument("--target", choices=["nsym", "abelian", "trees", "diffop"], default="nsym")
    c.add_argument("--basis", choices=N.BASES, default="L")
    c.set_defaults(fn=cmd_translate)

    c = sub.add_parser("pair", help="NSym/QSym or GL/CK pairing, or the dual map on a forest")
    _common(c)
    _tree_args(c)
    c.add_argument("--nsym")
    c.add_argument("--qsym")
    c.add_argument("--tree", help="Grossman-Larson element")
    c.add_argument("--forest", help="Connes-Kreimer element (or a single forest for the dual map)")
    c.set_defaults(fn=cmd_pair)
    return p


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    if args.manifest:
        print(json.dumps(MANIFEST, indent=2))
        return EXIT_OK
    if not getattr(args, "fn", None):
        parser.print_help()
        return EXIT_USAGE
    try:
        return args.fn(args)
    except (ParseError, UsageError, ValueError, KeyError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    raise SystemExit(run())


if __name__ == "__main__":
    main()
