"""Command line front end.

Exit codes: 0 success, 1 a verification or comparison failed, 2 bad
usage (argparse), 3 a computation was outside the supported range or
hit a recorded gap.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import extresolver, render, specseq
from .cplmodel import cpl_dims, cpl_module, exterior_r2_dims, gamma_t_dims, v_dims
from .extresolver import cached_chart, chart_bytes, chart_compare
from .gradedspaces import InconsistencyReport, k1_dims


def _load_config(path: str | None) -> dict:
    if path is None:
        return {}
    try:
        import tomllib
    except ModuleNotFoundError:
        import tomli as tomllib
    with open(path, "rb") as fh:
        return tomllib.load(fh)


def _data_path(name: str) -> str:
    return os.path.join(os.path.dirname(__file__), "data", name)


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)


# -- verify


def cmd_verify(args) -> int:
    with open(args.claims, "r", encoding="utf-8") as fh:
        claims = json.load(fh)
    warn_degrees = set(claims.get("warn_degrees", []))
    failures = 0
    warnings = 0

    def check(label: str, claimed: dict, computed) -> None:
        nonlocal failures, warnings
        for d_str, want in sorted(claimed.items(), key=lambda kv: int(kv[0])):
            d = int(d_str)
            got = computed[d]
            if got == want:
                print(f"ok   {label}[{d}] = {got}")
            elif d in warn_degrees:
                warnings += 1
                print(f"warn {label}[{d}] recorded {want}, recomputed {got}")
            else:
                failures += 1
                print(f"FAIL {label}[{d}] recorded {want}, recomputed {got}")

    max_d = 11
    check("k1", claims.get("k1_dims", {}), k1_dims(max_d))
    check("exterior_r2", claims.get("exterior_r2_dims", {}), exterior_r2_dims(max_d))
    gamma = gamma_t_dims(max_d)
    if isinstance(gamma, InconsistencyReport):
        print(f"FAIL series division: {gamma.message}")
        return 1
    check("gamma_t", claims.get("gamma_t_dims", {}), gamma)
    check("v_total", claims.get("v_total_dims", {}), v_dims(max_d).total)
    check("cpl", claims.get("cpl_dims", {}), cpl_dims(max_d))

    module = cpl_module()
    violations = module.check_relations()
    if violations:
        failures += 1
        for v in violations:
            print(f"FAIL module {v}")
    else:
        print("ok   module action satisfies every algebra relation")
    print(f"note {len(module.truncated_actions())} actions cut by the degree-11 truncation")

    print(f"verify: {failures} failure(s), {warnings} warning(s)")
    return 1 if failures else 0


# -- resolve


def cmd_resolve(args) -> int:
    if args.no_cache:
        builders = {
            "sphere": extresolver.sphere_chart,
            "cpl": extresolver.cpl_chart,
            "mpl8": extresolver.mpl8_chart,
        }
        chart = builders[args.target](args.s_max, args.t_max)
    else:
        chart, path = cached_chart(args.target, args.s_max, args.t_max)
        if args.verbose:
            print(f"cache entry: {path}", file=sys.stderr)
    _emit(chart_bytes(chart).decode(), args.output)
    return 0


# -- compare


def cmd_compare(args) -> int:
    chart, _ = cached_chart(args.target, args.s_max, args.t_max)
    with open(args.reference, "r", encoding="utf-8") as fh:
        reference = json.load(fh)
    report = chart_compare(chart, reference)
    for e in report.errors:
        print(f"FAIL {e}")
    for w in report.warnings:
        print(f"warn {w}")
    print("compare:", "match" if report.matches else "mismatch")
    return 0 if report.matches else 1


# -- ss


def cmd_ss(args) -> int:
    chart, _ = cached_chart("mpl8", args.s_max, args.t_max)
    script = (
        specseq.DeductionScript.load(args.script)
        if args.script
        else specseq.mpl8_script()
    )
    result = specseq.adams_run(chart, script)
    if args.verbose:
        for line in result.log:
            print(f"log  {line}")
    for stem in sorted(result.groups):
        print(f"pi[{stem}] = {result.groups[stem]}")
    return 0


# -- render


def cmd_render(args) -> int:
    chart, _ = cached_chart(args.target, 9, 26)
    if args.format == "ascii":
        _emit(render.render_ascii(chart, args.stem_max, args.chart_s_max) + "\n", args.output)
    else:
        _emit(render.render_svg(chart, args.stem_max, args.chart_s_max), args.output)
    return 0


# -- cache


def cmd_cache(args) -> int:
    if args.action == "path":
        print(extresolver.cache_dir())
    elif args.action == "clear":
        print(f"removed {extresolver.cache_clear()} entries")
    elif args.action == "gc":
        print(f"removed {extresolver.cache_gc()} stale entries")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="extseq",
        description="Exact Ext-chart and spectral sequence computations "
        "over finite subalgebras of the mod-2 Steenrod algebra.",
    )
    parser.add_argument("--config", help="TOML file with default options")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="recompute the graded bookkeeping against recorded claims")
    p.add_argument("--claims", default=_data_path("verify_claims.json"))
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("resolve", help="compute a chart and print its JSON")
    p.add_argument("target", choices=["sphere", "cpl", "mpl8"])
    p.add_argument("--s-max", type=int, default=9)
    p.add_argument("--t-max", type=int, default=26)
    p.add_argument("--no-cache", action="store_true")
    p.add_argument("-o", "--output")
    p.add_argument("-v", "--verbose", action="store_true")
    p.set_defaults(func=cmd_resolve)

    p = sub.add_parser("compare", help="compare a chart against a reference table")
    p.add_argument("target", choices=["sphere", "cpl", "mpl8"])
    p.add_argument("reference")
    p.add_argument("--s-max", type=int, default=9)
    p.add_argument("--t-max", type=int, default=26)
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("ss", help="run the scripted Adams differentials and read off groups")
    p.add_argument("--script")
    p.add_argument("--s-max", type=int, default=9)
    p.add_argument("--t-max", type=int, default=26)
    p.add_argument("-v", "--verbose", action="store_true")
    p.set_defaults(func=cmd_ss)

    p = sub.add_parser("render", help="draw a chart as text or SVG")
    p.add_argument("target", choices=["sphere", "cpl", "mpl8"])
    p.add_argument("--format", choices=["ascii", "svg"], default="ascii")
    p.add_argument("--stem-max", type=int, default=17)
    p.add_argument("--chart-s-max", type=int, default=8)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_render)

    p = sub.add_parser("cache", help="manage the chart cache")
    p.add_argument("action", choices=["path", "clear", "gc"])
    p.set_defaults(func=cmd_cache)

    return parser


_CONFIGURABLE_DEFAULTS = {"s_max": 9, "t_max": 26, "stem_max": 17, "chart_s_max": 8}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    config = _load_config(args.config)
    # a flag explicitly given wins; otherwise the config file may
    # override the built-in default
    for key, value in config.items():
        attr = key.replace("-", "_")
        default = _CONFIGURABLE_DEFAULTS.get(attr)
        if hasattr(args, attr) and getattr(args, attr) == default:
            setattr(args, attr, value)
    try:
        return args.func(args)
    except (specseq.GapError, IndexError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
