"""Command-line front end; every command prints one JSON document."""
from __future__ import annotations

import argparse
import json
import os
import sys

from . import linalg as la
from .cellmod import (
    CellModule,
    cosections,
    direct_sum,
    indicator,
    module_from_json,
    module_to_json,
    sections,
    shift,
)
from .errors import ScottPersistError
from .functors import (
    PosetModule,
    apply_functor,
    is_ephemeral,
    is_lower_semicontinuous,
    is_upper_semicontinuous,
    poset_module_from_json,
    poset_module_to_json,
)
from .metrics import (
    SuperlinearFamily,
    canonical_interleaving,
    certificate_from_json,
    certificate_to_json,
    check_interleaving,
    distance_indicator,
    distance_scott,
    distance_to_json,
    distance_to_zero,
    tr_flags,
)
from .poset import as_point, poset_from_json
from .regions import (
    ConvexRegion,
    Region,
    boundary,
    closure,
    interior,
    interior_down,
    is_injective_indicator_region,
    is_meager,
    region_from_json,
    region_to_json,
)
from .serialize import dumps, parse_rat, rat_str
from .verify import SUITES, run_suite

EXIT_OK, EXIT_DOMAIN, EXIT_USAGE, EXIT_VERIFY = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _read_json(path: str | None, flag: str) -> dict:
    if path is None:
        raise UsageError(f"{flag} is required")
    try:
        if path == "-":
            return json.load(sys.stdin)
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path} is not valid JSON: {exc}") from None


def _parse(loader, data, what):
    try:
        return loader(data)
    except ScottPersistError:
        raise
    except (KeyError, TypeError, ValueError, IndexError) as exc:
        raise UsageError(f"malformed {what}: {exc}") from None


def _is_region_json(d: dict) -> bool:
    return "kind" in d or "outer" in d


def load_region(path, flag="--in"):
    return _parse(region_from_json, _read_json(path, flag), "region")


def load_module(path, flag="--in"):
    """A cell module, a finite-poset module, or a region (read as its indicator)."""
    d = _read_json(path, flag)
    if isinstance(d, dict) and _is_region_json(d):
        return indicator(_parse(region_from_json, d, "region"))
    if isinstance(d, dict) and "poset" in d and "dims" in d:
        return _parse(poset_module_from_json, d, "poset module")
    return _parse(module_from_json, d, "module")


def _module_json(m):
    return poset_module_to_json(m) if isinstance(m, PosetModule) else module_to_json(m)


def _point(text, flag):
    if text is None:
        raise UsageError(f"{flag} is required")
    try:
        return as_point(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"bad point for {flag}: {exc}") from None


def _family(args, n):
    v = _point(args.v, "--v") if args.v is not None else (1,) * n
    poset = poset_from_json(_read_json(args.poset, "--poset")) if args.poset else None
    return SuperlinearFamily(v, poset)


def _rat(text, flag):
    if text is None:
        raise UsageError(f"{flag} is required")
    try:
        return parse_rat(text)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"bad rational for {flag}: {text!r}") from None


# --------------------------------------------------------------------------- commands


def cmd_region(args) -> tuple:
    r = load_region(args.inp)
    op = args.op
    if op == "show":
        return region_to_json(r), EXIT_OK
    if op == "meager":
        res = is_meager(r, seed=args.seed)
        out = {"meager": res.meager}
        if res.certificate is not None:
            out["certificate"] = res.certificate
        if res.witness is not None:
            out["witness"] = [[rat_str(c) for c in p] for p in res.witness]
        return out, EXIT_OK
    if isinstance(r, ConvexRegion):
        raise UsageError(f"region {op} takes an up-set or down-set, not a difference")
    if op == "injective":
        return {"result": is_injective_indicator_region(r)}, EXIT_OK
    if op == "interior":
        out = interior(r) if r.kind == "up" else interior_down(r)
    elif op == "closure":
        out = closure(r)
    elif op == "boundary":
        out = boundary(r)
    else:
        raise UsageError(f"unknown region operation {op!r}")
    return region_to_json(out), EXIT_OK


def cmd_module(args) -> tuple:
    op = args.op
    if op == "sum":
        a, b = load_module(args.a, "--a"), load_module(args.b, "--b")
        return module_to_json(direct_sum(a, b)), EXIT_OK
    m = load_module(args.inp)
    if isinstance(m, PosetModule):
        if op == "show":
            return poset_module_to_json(m), EXIT_OK
        if op == "eval":
            i, j = int(_rat(args.p, "--p")), int(_rat(args.q, "--q"))
            a = m.eval_map(i, j)
            return {"shape": list(a.shape), "matrix": [[rat_str(x) for x in r] for r in a.entries]}, EXIT_OK
        raise UsageError(f"module {op} is only available for modules over R^n")
    if op == "show":
        return module_to_json(m), EXIT_OK
    if op == "eval":
        a = m.eval_map(_point(args.p, "--p"), _point(args.q, "--q"))
        return {"shape": list(a.shape), "matrix": [[rat_str(x) for x in r] for r in a.entries]}, EXIT_OK
    if op in ("sections", "cosections"):
        r = load_region(args.region, "--region")
        if not isinstance(r, Region):
            raise UsageError("--region must be an up-set or down-set")
        if op == "sections":
            dim, basis = sections(m, r)
            return {"dim": dim, "basis": [[rat_str(x) for x in row] for row in basis.entries]}, EXIT_OK
        return {"dim": cosections(m, r)}, EXIT_OK
    if op == "shift":
        return module_to_json(shift(m, _point(args.v, "--v"), _rat(args.eps, "--eps"))), EXIT_OK
    raise UsageError(f"unknown module operation {op!r}")


def cmd_functor(args) -> tuple:
    m = load_module(args.inp)
    name = args.name
    if name == "ephemeral":
        return {"ephemeral": is_ephemeral(m)}, EXIT_OK
    if name == "semicont":
        return {"upper": is_upper_semicontinuous(m), "lower": is_lower_semicontinuous(m)}, EXIT_OK
    return _module_json(apply_functor(name, m)), EXIT_OK


def cmd_distance(args) -> tuple:
    op = args.op
    if op == "tr":
        fam = _family(args, len(_point(args.v, "--v")))
        flags = tr_flags(fam)
        return {"TR1": flags.TR1, "TR2": flags.TR2, "TR3": flags.TR3, "witnesses": flags.witnesses}, EXIT_OK
    if op == "certify":
        m = load_module(args.inp)
        fam = _family(args, m.n)
        other, cert = canonical_interleaving(m, args.which, _rat(args.eps, "--eps"), fam)
        ok, why = check_interleaving(m, other, cert, explain=True)
        out = {"valid": ok, "other": module_to_json(other), "certificate": certificate_to_json(cert)}
        if why:
            out["reason"] = why
        return out, EXIT_OK
    if op == "check":
        a, b = load_module(args.a, "--a"), load_module(args.b, "--b")
        cert = _parse(lambda d: certificate_from_json(d, a, b), _read_json(args.cert, "--cert"), "certificate")
        ok, why = check_interleaving(a, b, cert, explain=True)
        return ({"valid": ok, "reason": why} if why else {"valid": ok}), EXIT_OK
    if op == "distance0":
        m = load_module(args.inp)
        return {"d": distance_to_json(distance_to_zero(m, _family(args, m.n)))}, EXIT_OK
    if op == "distance":
        da, db = _read_json(args.a, "--a"), _read_json(args.b, "--b")
        if _is_region_json(da) and _is_region_json(db):
            ra, rb = _parse(region_from_json, da, "region"), _parse(region_from_json, db, "region")
            if isinstance(ra, Region) and isinstance(rb, Region):
                return {"d": distance_to_json(distance_indicator(ra, rb, _family(args, ra.dim)))}, EXIT_OK
        a, b = load_module(args.a, "--a"), load_module(args.b, "--b")
        return {"d": distance_to_json(distance_scott(a, b, _family(args, a.n)))}, EXIT_OK
    raise UsageError(f"unknown distance operation {op!r}")


def cmd_verify(args) -> tuple:
    report = run_suite(args.suite, seed=args.seed, cases=args.cases)
    return report, EXIT_OK if report["passed"] else EXIT_VERIFY


# --------------------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="scottpersist", description="Scott-topology persistence toolkit")
    p.add_argument("--field", help="coefficient field: rational (default) or fp:<prime>")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--in", dest="inp", help="input JSON file ('-' for stdin)")
        sp.add_argument("--out", help="write the JSON result here instead of stdout")
        sp.add_argument("--seed", type=int, default=0)

    r = sub.add_parser("region", help="region algebra")
    r.add_argument("op", choices=["show", "interior", "closure", "boundary", "meager", "injective"])
    common(r)

    m = sub.add_parser("module", help="module operations")
    m.add_argument("op", choices=["show", "eval", "sections", "cosections", "sum", "shift"])
    common(m)
    m.add_argument("--a")
    m.add_argument("--b")
    m.add_argument("--p")
    m.add_argument("--q")
    m.add_argument("--v")
    m.add_argument("--eps")
    m.add_argument("--region", help="region JSON for sections/cosections")

    f = sub.add_parser("functor", help="apply a functor or a classification")
    f.add_argument(
        "name",
        choices=["overline", "underline", "soc", "rad", "top", "r1soc", "l1top", "ephemeral", "semicont", "jstar"],
    )
    common(f)

    d = sub.add_parser("distance", help="translation families, certificates and distances")
    common(d)
    d.add_argument("--op", choices=["distance", "distance0", "tr", "certify", "check"], default="distance")
    d.add_argument("--a")
    d.add_argument("--b")
    d.add_argument("--v", help="direction, e.g. 1,1 (default all ones)")
    d.add_argument("--eps")
    d.add_argument("--which", choices=["overline", "underline"], default="overline")
    d.add_argument("--cert", help="certificate JSON for --op check")
    d.add_argument("--poset", help="poset JSON for cone-ordered families")

    v = sub.add_parser("verify", help="run a property suite")
    v.add_argument("suite", choices=sorted(SUITES))
    v.add_argument("--cases", type=int, default=20)
    common(v)
    return p


HANDLERS = {
    "region": cmd_region,
    "module": cmd_module,
    "functor": cmd_functor,
    "distance": cmd_distance,
    "verify": cmd_verify,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        with la.use_field(args.field) if args.field else _null():
            out, code = HANDLERS[args.command](args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"scottpersist: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ScottPersistError, ValueError, ZeroDivisionError) as exc:
        print(f"scottpersist: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    text = dumps(out) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        try:
            sys.stdout.write(text)
            sys.stdout.flush()
        except BrokenPipeError:
            # reader went away (e.g. piped into head); silence the flush at exit
            sys.stdout = open(os.devnull, "w")
    return code


class _null:
    def __enter__(self):
        return None

    def __exit__(self, *exc):
        return False


if __name__ == "__main__":
    sys.exit(main())
