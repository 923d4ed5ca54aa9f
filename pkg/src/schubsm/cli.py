"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 usage error or refused request.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from . import chernaffine as ca
from . import chernfinite as cf
from . import positroid as pr
from . import weylperm as wp
from .symra import serialize
from .verify import SUITES, run_suite


class UsageError(Exception):
    pass


def _ints(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(v) for v in text.split(","))
    except ValueError:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from None


def _window(args, k_required: bool = True) -> wp.AffinePerm:
    try:
        f = wp.AffinePerm.from_text(args.window)
    except wp.WindowError as exc:
        raise UsageError(f"malformed window: {exc}") from None
    if args.n is not None and f.n != args.n:
        raise UsageError(f"window has {f.n} entries but --n is {args.n}")
    if k_required and args.k is not None and f.degree != args.k:
        raise UsageError(f"window has degree {f.degree} but --k is {args.k}")
    return f


def _perm(text: str, n: int | None = None) -> wp.FinitePerm:
    try:
        p = wp.parse_perm(text)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if n is not None and len(p) != n:
        raise UsageError(f"permutation {text} does not have {n} entries")
    return p


def _parabolic(args) -> wp.ParabolicData:
    if getattr(args, "lam", None):
        try:
            return wp.ParabolicData(_ints(args.lam))
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    if args.n is None:
        raise UsageError("--n is required with --parabolic")
    text = args.parabolic or ""
    simple = [] if text in ("", "none") else _ints(text)
    try:
        return wp.ParabolicData.from_simple_set(args.n, simple)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _limit(args, default: int) -> int:
    if args.limit is None:
        return default
    if args.limit > default and not args.unsafe_limits:
        raise UsageError(f"--limit {args.limit} exceeds the module limit {default}; pass --unsafe-limits to raise it")
    return args.limit


def _emit_ratfunc(r, fmt: str, out) -> None:
    if fmt == "dot":
        raise UsageError("dot format only applies to poset and bruhat exports")
    print(serialize(r, fmt), file=out)


def _emit_table(t: cf.LocTable, fmt: str, out) -> None:
    if fmt == "json":
        print(json.dumps(t.to_json(), separators=(",", ":"), sort_keys=False), file=out)
        return
    for p, v in t.items():
        key = ",".join(map(str, p)) if t.parabolic is not None else wp.perm_str(p)
        print(f"{key}\t{serialize(v, fmt)}", file=out)


# ---------------------------------------------------------------------------
# subcommands


def cmd_ffunc(args, out) -> int:
    f = _window(args)
    F = pr.f_tilde(f, limit=_limit(args, pr.MAX_GRID))
    _emit_ratfunc(F, args.format, out)
    return 0


def cmd_pipedreams(args, out) -> int:
    f = _window(args)
    pds = pr.enumerate_pd(f, method=args.method, limit=_limit(args, pr.MAX_GRID))
    if args.format == "json":
        print(json.dumps([pd.to_json() for pd in pds], separators=(",", ":")), file=out)
    else:
        print("\n\n".join(pd.to_ascii() for pd in pds), file=out)
    return 0


def cmd_bruhat(args, out) -> int:
    if args.export:
        P = _parabolic(args)
        print(wp.poset_export(P, limit=_limit(args, wp.MAX_POSET_N)), end="", file=out)
        return 0
    if args.f is not None or args.g is not None:
        if args.f is None or args.g is None:
            raise UsageError("affine comparison needs both --f and --g")
        try:
            f, g = wp.AffinePerm.from_text(args.f), wp.AffinePerm.from_text(args.g)
        except wp.WindowError as exc:
            raise UsageError(f"malformed window: {exc}") from None
        print("true" if wp.bruhat_leq(f, g) else "false", file=out)
        return 0
    if args.u is None or args.w is None:
        raise UsageError("bruhat needs --u and --w (or --f and --g, or --export)")
    u, w = _perm(args.u, args.n), _perm(args.w, args.n)
    if len(u) != len(w):
        raise UsageError("u and w have different sizes")
    if args.n is None:
        args.n = len(u)
    if args.k is not None:
        ans = wp.k_bruhat(u, w, args.k)
    else:
        ans = wp.ext_p_bruhat(u, w, _parabolic(args), args.algorithm)
    print("true" if ans else "false", file=out)
    return 0


def cmd_localize(args, out) -> int:
    kind = args.kind
    if kind == "affine":
        f = _window(args, k_required=False)
        if args.g is None:
            raise UsageError("affine localization needs --g")
        try:
            g = wp.AffinePerm.from_text(args.g)
        except wp.WindowError as exc:
            raise UsageError(f"malformed window: {exc}") from None
        _emit_ratfunc(ca.affine_ssm_loc(f, g), args.format, out)
        return 0
    if kind == "projected":
        P = _parabolic(args)
        cf.guard(P.n, _limit(args, cf.MAX_PROJRICH_N), "projected Richardson recursion")
        if args.window is not None:
            args.n = P.n
            f = _window(args, k_required=False)
        elif args.u is not None and args.w is not None:
            f = wp.AffinePerm.from_uw(_perm(args.u, P.n), _perm(args.w, P.n), P.lam)
        else:
            raise UsageError("projected localization needs --window or --u/--w")
        table = cf.projrich_ssm_recursive(P)
        if f.window not in table.by_f:
            raise UsageError(f"{f} is not of the form u t_lambda w^-1 for lambda={P.lam}")
        t = cf.LocTable(cf.ring_for(P.n), dict(table.by_f[f.window]), P)
        _emit_table(t, args.format, out)
        return 0
    n = args.n
    if n is None:
        for text in (args.u, args.w):
            if text is not None:
                n = len(_perm(text))
                break
    if n is None:
        raise UsageError("--n is required")
    cf.guard(n, _limit(args, cf.MAX_SCHUBERT_N), "Schubert tables")
    tab = cf.schubert_tables(n)
    if kind == "richardson":
        if args.u is None or args.w is None:
            raise UsageError("richardson needs --u and --w")
        _emit_table(cf.richardson_csm(_perm(args.u, n), _perm(args.w, n)), args.format, out)
        return 0
    if kind == "tangent":
        _emit_table(tab.tangent, args.format, out)
        return 0
    source = {
        "csm_cell": (tab.csm_cell, args.w),
        "ssm_cell": (tab.ssm_cell, args.w),
        "csm_opp": (tab.csm_opp, args.u),
        "ssm_opp": (tab.ssm_opp, args.u),
    }
    if kind not in source:
        raise UsageError(f"unknown kind {kind!r}")
    tables, text = source[kind]
    if text is None:
        raise UsageError(f"{kind} needs --{'w' if kind.endswith('cell') else 'u'}")
    _emit_table(tables[_perm(text, n)], args.format, out)
    return 0


def cmd_verify(args, out) -> int:
    params = {"k": args.k, "n": args.n, "samples": args.samples, "seed": args.seed}
    if args.lam:
        params["lam"] = _ints(args.lam)
    if args.name == "thm62" and args.n is None and not args.lam:
        params["n"] = None
    plain = args.format != "json"

    def show(ident, ok):
        if plain:
            print(f"{'PASS' if ok else 'FAIL'} {ident}", file=out)

    try:
        report = run_suite(args.name, instance_seconds=args.instance_seconds, on_result=show, **params)
    except (KeyError, TypeError) as exc:
        raise UsageError(str(exc)) from None
    if plain:
        print(f"{report.suite}: {report.instances - len(report.failures)}/{report.instances} passed", file=out)
    else:
        print(json.dumps(report.to_json(), separators=(",", ":")), file=out)
    return 0 if report.ok else 1


def cmd_poset(args, out) -> int:
    P = _parabolic(args)
    print(wp.poset_export(P, limit=_limit(args, wp.MAX_POSET_N)), end="", file=out)
    return 0


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="schubsm", description="Localized CSM/SM classes and pipe dreams in type A.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, formats=("plain", "latex", "json")):
        p.add_argument("--k", type=int)
        p.add_argument("--n", type=int)
        p.add_argument("--window")
        p.add_argument("--format", choices=formats, default=formats[0])
        p.add_argument("--limit", type=int, help="size guard (may only be lowered without --unsafe-limits)")
        p.add_argument("--unsafe-limits", action="store_true")

    p = sub.add_parser("ffunc", help="print the pipe-dream generating function")
    common(p)
    p.set_defaults(func=cmd_ffunc)

    p = sub.add_parser("pipedreams", help="list the pipe dreams of a bounded affine permutation")
    common(p, ("ascii", "json"))
    p.add_argument("--method", choices=("dfs", "brute"), default="dfs")
    p.set_defaults(func=cmd_pipedreams)

    p = sub.add_parser("bruhat", help="extended P-Bruhat, k-Bruhat or affine Bruhat queries")
    common(p, ("plain", "dot"))
    p.add_argument("--parabolic", help="comma-separated simple indices, or 'none'")
    p.add_argument("--lambda", dest="lam")
    p.add_argument("--u")
    p.add_argument("--w")
    p.add_argument("--f")
    p.add_argument("--g")
    p.add_argument("--algorithm", choices=("coset_reduce", "cover_bfs", "affine"), default="coset_reduce")
    p.add_argument("--export", action="store_true", help="print the relation digraph as DOT")
    p.set_defaults(func=cmd_bruhat)

    p = sub.add_parser("localize", help="print localization tables")
    common(p)
    p.add_argument(
        "--kind",
        choices=("csm_cell", "ssm_cell", "csm_opp", "ssm_opp", "tangent", "richardson", "projected", "affine"),
        required=True,
    )
    p.add_argument("--u")
    p.add_argument("--w")
    p.add_argument("--g")
    p.add_argument("--parabolic")
    p.add_argument("--lambda", dest="lam")
    p.set_defaults(func=cmd_localize)

    p = sub.add_parser("verify", help="run an identity suite")
    p.add_argument("name", choices=SUITES)
    p.add_argument("--k", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--lambda", dest="lam")
    p.add_argument("--samples", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--instance-seconds", type=float, help="runtime guard per instance")
    p.add_argument("--format", choices=("plain", "json"), default="plain")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("poset", help="DOT export of the extended P-Bruhat relation digraph")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--parabolic")
    p.add_argument("--limit", type=int)
    p.add_argument("--unsafe-limits", action="store_true")
    p.set_defaults(func=cmd_poset)
    return parser


def main(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args, out)
    except (UsageError, wp.WindowError, pr.PipeDreamError) as exc:
        print(f"error: {exc}", file=err)
        return 2
    except ValueError as exc:  # size guards and domain checks
        print(f"error: {exc}", file=err)
        return 2


if __name__ == "__main__":
    sys.exit(main())
