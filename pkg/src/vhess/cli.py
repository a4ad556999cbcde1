"""``vhess`` command line.

Exit codes: 0 when every check passes, 1 when a check fails, 2 for usage,
parse or unknown-id errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import __version__, checks
from . import families as fam
from .acceptance import run_acceptance, summary_lines
from .hessian import RankModError, profile
from .ring import Poly, PolyError, parse
from .sampling import DEFAULT_PRIME, SampleConfig

EXPECT_ALIASES = {
    "codim": "codim_dual_in_polar",
    "rank": "generic_rank",
    "rank_mod": "rank_mod_f",
    "hess": "hess_is_zero",
    "cone": "is_cone",
    "dim_dual": "dim_dual",
    "dim_polar": "dim_polar_image",
}

FAMILY_PARAMS = ("g", "n", "m", "N", "r", "a", "b")


class UsageError(Exception):
    pass


def _emit(obj, args):
    text = json.dumps(obj, indent=2, sort_keys=True)
    print(text)
    if getattr(args, "json", None):
        with open(args.json, "w") as fh:
            fh.write(text + "\n")


def _cfg(args):
    try:
        return SampleConfig(prime=args.prime or DEFAULT_PRIME, trials=args.trials, seed=args.seed,
                            points=args.points)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _family_params(args):
    out = {}
    for k in FAMILY_PARAMS:
        v = getattr(args, f"p_{k}", None)
        if v is not None:
            out[k] = v
    return out


def _build_family(fid, args):
    params = _family_params(args)
    if "g" in params:
        params["g"] = parse(params["g"])
    try:
        return fam.build(fid, **params)
    except (fam.FamilyError, PolyError) as exc:
        raise UsageError(str(exc)) from None


def _load_poly(source):
    """A polynomial from a JSON file, a text file, or inline text."""
    if os.path.isfile(source):
        with open(source) as fh:
            text = fh.read()
        try:
            obj = json.loads(text)
        except json.JSONDecodeError:
            return parse(text)
        if isinstance(obj, dict) and "polynomial" in obj:
            obj = obj["polynomial"]
        return Poly.from_json(obj)
    return parse(source)


# ---- commands ---------------------------------------------------------------

def cmd_family(args):
    if args.action == "list":
        _emit(fam.catalog_manifest(), args)
        return 0
    if not args.id:
        raise UsageError("family build needs an id")
    inst = _build_family(args.id, args)
    obj = inst.to_json()
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(json.dumps(obj, indent=2, sort_keys=True) + "\n")
    _emit(obj, args)
    return 0


def _parse_expect(items):
    out = {}
    for item in items or []:
        if "=" not in item:
            raise UsageError(f"--expect needs key=value, got {item!r}")
        k, v = item.split("=", 1)
        key = EXPECT_ALIASES.get(k.strip(), k.strip())
        v = v.strip().lower()
        if v in ("true", "false"):
            out[key] = v == "true"
        else:
            try:
                out[key] = int(v)
            except ValueError:
                raise UsageError(f"--expect value for {k} must be an integer or bool") from None
    return out


def cmd_profile(args):
    cfg = _cfg(args)
    expect = _parse_expect(args.expect)
    if args.target in fam.CATALOG:
        inst = _build_family(args.target, args)
        f = inst.poly
        cfg = inst.sample_config(cfg) if args.prime is None else cfg
    else:
        f = _load_poly(args.target)
    if f.is_homogeneous() is None:
        raise UsageError("profile needs a nonzero homogeneous polynomial")
    try:
        pr = profile(f, cfg, rank_mod=args.rank_mod)
    except RankModError as exc:
        raise UsageError(str(exc)) from None
    obj = pr.to_json()
    got = pr.numeric()
    unknown = [k for k in expect if k not in got]
    if unknown:
        raise UsageError(f"unknown --expect field(s): {', '.join(unknown)}")
    mismatches = {k: {"expected": v, "measured": got[k]} for k, v in expect.items()
                  if got[k] != v}
    if expect:
        obj["expect"] = {"verdict": "FAIL" if mismatches else "PASS",
                         "mismatches": mismatches}
    _emit(obj, args)
    return 1 if mismatches else 0


def cmd_verify(args):
    cfg = _cfg(args)
    if args.identity not in checks.REGISTRY:
        raise UsageError(f"unknown identity {args.identity!r}; "
                         f"known: {', '.join(sorted(checks.REGISTRY))}")
    fn, defaults = checks.REGISTRY[args.identity]
    kw = {}
    for k in ("n", "m", "size", "count", "b", "g", "family", "mode", "poly"):
        v = getattr(args, f"p_{k}", None)
        if v is not None:
            if k not in defaults and k != "mode":
                raise UsageError(f"{args.identity} takes no --{k}")
            kw[k] = v
    try:
        rep = checks.run(args.identity, cfg, **kw)
    except (fam.FamilyError, PolyError, TypeError, ValueError) as exc:
        raise UsageError(str(exc)) from None
    _emit(rep.to_json(), args)
    return 0 if rep.passed else 1


def cmd_acceptance(args):
    cfg = _cfg(args)
    only = set(args.only.split(",")) if args.only else None
    report = run_acceptance(cfg, only=only, timings=args.timings)
    for line in summary_lines(report):
        print(line)
    print(f"overall {report.verdict}")
    if args.json:
        with open(args.json, "w") as fh:
            fh.write(report.dumps() + "\n")
    return 0 if report.verdict == "PASS" else 1


# ---- parser -------------------------------------------------------------------

def _global_flags(parser, suppress):
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    parser.add_argument("--prime", type=int, default=d(None),
                        help=f"prime for sampling (default {DEFAULT_PRIME})")
    parser.add_argument("--trials", type=int, default=d(20))
    parser.add_argument("--seed", type=int, default=d(0))
    parser.add_argument("--points", type=int, default=d(100),
                        help="hypersurface points for sampled rank mod f")
    parser.add_argument("--json", metavar="PATH", default=d(None),
                        help="also write the report to PATH")


def _family_flags(parser):
    parser.add_argument("--g", dest="p_g", help="base form, e.g. 'z1^2+z2^2+z3^2'")
    for k in ("n", "m", "N", "r", "a", "b"):
        parser.add_argument(f"--{k}", dest=f"p_{k}", type=int)


def build_parser():
    p = argparse.ArgumentParser(prog="vhess", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"vhess {__version__}")
    _global_flags(p, suppress=False)
    sub = p.add_subparsers(dest="command", required=True)

    f = sub.add_parser("family", help="build or list family instances")
    _global_flags(f, suppress=True)
    f.add_argument("action", choices=["build", "list"])
    f.add_argument("id", nargs="?")
    f.add_argument("-o", "--output")
    _family_flags(f)
    f.set_defaults(func=cmd_family)

    pr = sub.add_parser("profile", help="hessian profile of a polynomial or family")
    _global_flags(pr, suppress=True)
    pr.add_argument("target", help="family id, polynomial file, or inline polynomial")
    pr.add_argument("--rank-mod", choices=["exact", "sample"])
    pr.add_argument("--expect", action="append", metavar="KEY=VALUE")
    _family_flags(pr)
    pr.set_defaults(func=cmd_profile)

    v = sub.add_parser("verify", help="run one named identity check")
    _global_flags(v, suppress=True)
    v.add_argument("identity")
    for k in ("n", "m", "size", "count", "b"):
        v.add_argument(f"--{k}", dest=f"p_{k}", type=int)
    v.add_argument("--g", dest="p_g")
    v.add_argument("--family", dest="p_family")
    v.add_argument("--poly", dest="p_poly", help="form for the hess-zero check")
    v.add_argument("--mode", dest="p_mode", choices=["exact", "sz"])
    v.set_defaults(func=cmd_verify)

    a = sub.add_parser("acceptance", help="run the full acceptance suite")
    _global_flags(a, suppress=True)
    a.add_argument("--only", help="comma-separated criterion ids, e.g. C01,C03")
    a.add_argument("--timings", action="store_true",
                   help="record elapsed times (reports are then not byte-reproducible)")
    a.set_defaults(func=cmd_acceptance)
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, PolyError) as exc:
        print(f"vhess: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
