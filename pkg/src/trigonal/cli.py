"""Command-line entry point: ``trig <chow|cover|bundle|verify> ...``.

Results go to stdout (JSON unless ``--format`` says otherwise); errors go
to stderr as a JSON object.  Exit codes: 0 ok, 1 domain error, 2 usage.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path

from . import acceptance, bundle, chow, cover, cubic
from .forms import BinaryForm
from .parsing import ParseError
from .scalars import DomainError, PrimeField, field_from_spec


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _field(spec: str):
    fld = field_from_spec(spec)
    if isinstance(fld, PrimeField) and fld.p <= 3:
        raise UsageError(f"--field prime must be > 3 (got {fld.p})")
    return fld


def _read_json(path: str):
    p = Path(path)
    if not p.is_file():
        raise DomainError(f"file not found: {path}")
    try:
        return json.loads(p.read_text())
    except json.JSONDecodeError as e:
        raise DomainError(f"{path}: invalid JSON ({e.msg} at line {e.lineno} column {e.colno})") from None


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=False)


# --- chow -------------------------------------------------------------------

def cmd_chow_class_w(args):
    W = chow.class_of_W()
    return str(W) if args.format == "text" else _dump(str(W))


def cmd_chow_class_y(args):
    if args.genus is not None and args.symbolic:
        raise UsageError("--genus and --symbolic are mutually exclusive")
    Y = chow.class_of_Y_cached()
    if args.genus is None:
        out = Y.to_json()
        out["kernel_coords"] = None
        out["restriction_check"] = chow.restriction_to_gm(Y).is_zero()
    else:
        if args.genus < 2:
            raise UsageError("--genus must be >= 2")
        Yg = Y.instantiate(args.genus)
        out = Yg.to_json()
        out["kernel_coords"] = list(chow.kernel_coordinates(Yg, args.genus))
        out["restriction_check"] = chow.restriction_to_gm(Yg, args.genus) == 0
    if args.format == "text":
        return "\n".join(f"{k}: {v}" for k, v in out.items())
    return _dump(out)


def cmd_chow_picard(args):
    if args.g_from < 2 or args.g_to < args.g_from:
        raise UsageError("need 2 <= --from <= --to")
    rows = [
        {"g": P.g, "a": P.a, "b": P.b, "group": P.label()}
        for P in chow.picard_table(args.g_from, args.g_to)
    ]
    if args.format == "csv":
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=["g", "a", "b", "group"], lineterminator="\n")
        w.writeheader()
        w.writerows(rows)
        return buf.getvalue().rstrip("\n")
    if args.format == "text":
        return "\n".join(f"g={r['g']:<4d} a={r['a']:<6d} b={r['b']:<6d} {r['group']}" for r in rows)
    return _dump(rows)


# --- cover ---------------------------------------------------------------------

def cmd_cover_singular(args):
    fld = _field(args.field)
    v = cubic.DualCubic.parse(args.f, args.g, fld)
    out = cubic.in_W(v).to_json()
    return _dump(out)


def cmd_cover_build(args):
    fld = _field(args.field)
    f = BinaryForm.parse(args.cubic, 3, fld)
    R = cover.form_to_algebra(f)
    return _dump({"cubic": str(f), "table": R.to_json(), "fiber_type": cover.fiber_type(f)})


def cmd_cover_smooth(args):
    D = cover.TrigonalDatum.from_json(_read_json(args.input))
    return _dump(cover.smooth_check(D).to_json())


# --- bundle ----------------------------------------------------------------------

def _matrix(args):
    return bundle.LinearMatrix.from_json(_read_json(args.input), _field(args.field))


def cmd_bundle_split(args):
    return _dump({"splitting": bundle.splitting_type(_matrix(args))})


def cmd_bundle_degeneracy(args):
    L = _matrix(args)
    ok = bundle.degeneracy_check(L)
    return _dump({"nondegenerate": ok, "degenerate": not ok})


def cmd_bundle_probe(args):
    if args.trials <= 0 and not args.exhaustive:
        raise UsageError("--trials must be positive (or pass --exhaustive)")
    res = bundle.codim_probe(args.r, args.d, args.p, args.trials, args.seed, args.exhaustive)
    return _dump(res.to_json())


# --- verify --------------------------------------------------------------------------

def cmd_verify(args):
    keys = None
    if args.only:
        keys = [k for item in args.only for k in item.split(",") if k]
        known = {k for k, *_ in acceptance.CHECKS} | {str(n) for _, n, *_ in acceptance.CHECKS}
        bad = [k for k in keys if k not in known]
        if bad:
            raise UsageError(f"unknown check(s): {', '.join(bad)}")
    results = acceptance.run_checks(keys)
    if args.format == "json":
        text = _dump([{"number": r.number, "key": r.key, "passed": r.passed, "detail": r.detail} for r in results])
    else:
        text = "\n".join(r.line() for r in results)
    return text, (0 if all(r.passed for r in results) else 1)


# --- parser -------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="trig", description="Trigonal curves: Chow classes, cubic covers and vector bundles on P^1.")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def fmt(p, choices=("json", "text"), default="json"):
        p.add_argument("--format", choices=choices, default=default)

    ch = sub.add_parser("chow", help="equivariant Chern-class pipeline").add_subparsers(
        dest="subcommand", required=True, parser_class=_Parser)
    p = ch.add_parser("class-w")
    fmt(p)
    p.set_defaults(func=cmd_chow_class_w)
    p = ch.add_parser("class-y")
    p.add_argument("--genus", type=int)
    p.add_argument("--symbolic", action="store_true")
    fmt(p)
    p.set_defaults(func=cmd_chow_class_y)
    p = ch.add_parser("picard")
    p.add_argument("--from", dest="g_from", type=int, default=2)
    p.add_argument("--to", dest="g_to", type=int, default=12)
    fmt(p, ("json", "csv", "text"))
    p.set_defaults(func=cmd_chow_picard)

    co = sub.add_parser("cover", help="cubic forms, algebras and trigonal data").add_subparsers(
        dest="subcommand", required=True, parser_class=_Parser)
    p = co.add_parser("singular")
    p.add_argument("--f", required=True)
    p.add_argument("--g", default="0")
    p.add_argument("--field", default="q")
    p.set_defaults(func=cmd_cover_singular)
    p = co.add_parser("build")
    p.add_argument("--cubic", required=True)
    p.add_argument("--field", default="q")
    p.set_defaults(func=cmd_cover_build)
    p = co.add_parser("smooth")
    p.add_argument("--input", required=True)
    p.set_defaults(func=cmd_cover_smooth)

    bu = sub.add_parser("bundle", help="linear matrices and splitting types").add_subparsers(
        dest="subcommand", required=True, parser_class=_Parser)
    for name, fn in (("split", cmd_bundle_split), ("degeneracy", cmd_bundle_degeneracy)):
        p = bu.add_parser(name)
        p.add_argument("--input", required=True)
        p.add_argument("--field", default="q")
        p.set_defaults(func=fn)
    p = bu.add_parser("probe")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--trials", type=int, default=0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--exhaustive", action="store_true")
    p.set_defaults(func=cmd_bundle_probe)

    p = sub.add_parser("verify", help="run the acceptance checks")
    p.add_argument("--only", action="append", help="check key or number; repeatable or comma separated")
    fmt(p, ("text", "json"), "text")
    p.set_defaults(func=cmd_verify, subcommand=None)
    return ap


def _error(kind: str, exc: BaseException, code: int, **extra) -> int:
    payload = {"error": kind, "message": str(exc), **extra}
    print(json.dumps(payload), file=sys.stderr)
    return code


def run(argv: list[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        out = args.func(args)
    except UsageError as e:
        return _error("usage", e, 2)
    except ParseError as e:
        return _error("parse", e, 1, offset=e.offset)
    except (DomainError, NotImplementedError, ZeroDivisionError) as e:
        return _error(type(e).__name__, e, 1)
    code = 0
    if isinstance(out, tuple):
        out, code = out
    print(out)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
