"""Command-line client.

Every subcommand builds a request model and calls the same handler the
HTTP service uses, then renders the response as a table or as JSON
(--emit json).  Exit codes: 0 success, 1 the checked property failed,
2 usage or parse errors.
"""

import argparse
import json
import os
import sys

from .errors import (MulticxError, NotStabilized, ParseError, ValidationError,
                     WindowTooSmall)
from .service import handlers
from .service import schemas as S

EXIT_OK = 0
EXIT_PROPERTY = 1
EXIT_USAGE = 2


def _read(path):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return fh.read()
    except OSError as e:
        raise ParseError(f"cannot read {path}: {e}")


def _parse_at(text):
    try:
        p, q = (int(x) for x in text.split(","))
        return (p, q)
    except ValueError:
        raise ParseError(f"bad bidegree {text!r}, expected p,q")


def _parse_window(text):
    try:
        a, b, c, d = (int(x) for x in text.split(","))
        return (a, b, c, d)
    except ValueError:
        raise ParseError(f"bad window {text!r}, expected pmin,pmax,qmin,qmax")


def _emit(args, payload, table_lines):
    if args.emit == "json":
        print(json.dumps(payload, sort_keys=True))
    else:
        for line in table_lines:
            print(line)


def _emit_document(args, document, extra=None):
    if args.emit == "json":
        payload = {"document": document}
        if extra:
            payload.update(extra)
        print(json.dumps(payload, sort_keys=True))
    else:
        sys.stdout.write(document)


def cmd_validate(args):
    resp = handlers.handle_validate(S.ValidateRequest(document=_read(args.file)))
    payload = resp.model_dump()
    lines = [f"kind: {resp.kind}", f"checked: {resp.checked}",
             f"ok: {str(resp.ok).lower()}"]
    for v in resp.violations:
        lines.append(f"violation l={v.l} at ({v.p},{v.q})")
    _emit(args, payload, lines)
    return EXIT_OK if resp.ok else EXIT_PROPERTY


def cmd_page(args):
    req = S.PageRequest(document=_read(args.file), r=args.r, method=args.method,
                        at=_parse_at(args.at) if args.at else None)
    try:
        resp = handlers.handle_page(req)
    except WindowTooSmall as e:
        if args.at:
            p, q = _parse_at(args.at)
            m = 2 * args.r + 1
            print(f"window too small: stage {args.r} at ({p},{q}) needs the box "
                  f"p in [{p - m},{p + m}], q in [{q - m},{q + m}]; {e}",
                  file=sys.stderr)
        else:
            print(f"window too small: {e}", file=sys.stderr)
        return EXIT_USAGE
    payload = resp.model_dump()
    lines = [f"page r={resp.r} method={resp.method}", "p\tq\tdim"]
    lines += [f"{e.p}\t{e.q}\t{e.dim}" for e in resp.entries]
    _emit(args, payload, lines)
    return EXIT_OK


def cmd_pagemap(args):
    req = S.PageMapRequest(document=_read(args.file), r=args.r,
                           at=_parse_at(args.at), method=args.method)
    resp = handlers.handle_pagemap(req)
    payload = resp.model_dump()
    lines = [f"page map r={resp.r} at ({resp.at[0]},{resp.at[1]}): "
             f"{resp.source_dim} -> {resp.target_dim}",
             f"iso: {str(resp.iso).lower()}",
             f"surjective: {str(resp.surjective).lower()}"]
    for row in resp.matrix:
        lines.append("[" + " ".join(row) + "]")
    _emit(args, payload, lines)
    return EXIT_OK


def cmd_weq(args):
    resp = handlers.handle_weq(S.WeqRequest(document=_read(args.file), r=args.r))
    payload = resp.model_dump()
    msg = "true" if resp.result else (
        f"false (fails at {resp.failing})" if resp.failing else "false")
    _emit(args, payload, [f"E_{args.r}-equivalence: {msg}"])
    return EXIT_OK if resp.result else EXIT_PROPERTY


def cmd_fib(args):
    resp = handlers.handle_fib(S.FibRequest(
        document=_read(args.file), r=args.r, style=args.style,
        trivial=args.trivial))
    payload = resp.model_dump()
    label = "trivial fibration" if args.trivial else "fibration"
    msg = "true" if resp.result else (
        f"false (fails at {resp.failing})" if resp.failing else "false")
    _emit(args, payload, [f"{args.r}-{label} ({args.style}): {msg}"])
    return EXIT_OK if resp.result else EXIT_PROPERTY


def cmd_lift(args):
    resp = handlers.handle_lift(S.LiftRequest(
        i=_read(args.i), p=_read(args.p), top=_read(args.top),
        bottom=_read(args.bottom)))
    payload = resp.model_dump()
    if resp.exists:
        if args.emit == "json":
            print(json.dumps(payload, sort_keys=True))
        else:
            print("lift exists")
            sys.stdout.write(resp.lift)
        return EXIT_OK
    _emit(args, payload, [f"no lift; certificate {resp.certificate}"])
    return EXIT_PROPERTY


def cmd_build(args):
    req = S.BuildRequest(
        kind=args.kind, field=args.field, n=args.n, r=args.r, p=args.p,
        q=args.q,
        window=_parse_window(args.window) if args.window else None,
        s_max=args.s_max,
        document=_read(args.input) if args.input else None)
    resp = handlers.handle_build(req)
    _emit_document(args, resp.document, {"meta": resp.meta})
    return EXIT_OK


def cmd_tensor(args):
    resp = handlers.handle_tensor(S.BinaryOpRequest(
        left=_read(args.left), right=_read(args.right)))
    _emit_document(args, resp.document)
    return EXIT_OK


def cmd_dsum(args):
    resp = handlers.handle_dsum(S.BinaryOpRequest(
        left=_read(args.left), right=_read(args.right)))
    _emit_document(args, resp.document)
    return EXIT_OK


def cmd_pushout(args):
    resp = handlers.handle_pushout(S.PushoutRequest(
        f=_read(args.f), g=_read(args.g)))
    _emit_document(args, resp.document,
                   {"leg_left": resp.leg_left, "leg_right": resp.leg_right})
    return EXIT_OK


def cmd_extend(args):
    resp = handlers.handle_extend(S.ExtendRequest(
        document=_read(args.file), to=args.to))
    _emit_document(args, resp.document)
    return EXIT_OK


def cmd_restrict(args):
    resp = handlers.handle_restrict(S.ExtendRequest(
        document=_read(args.file), to=args.to))
    _emit_document(args, resp.document)
    return EXIT_OK


def cmd_truncate(args):
    resp = handlers.handle_truncate(S.TruncateRequest(
        document=_read(args.file), mode=args.mode))
    _emit_document(args, resp.document)
    return EXIT_OK


def cmd_cn(args):
    resp = handlers.handle_cn_check(S.CnCheckRequest(
        field=args.field, max_weight=args.max_weight))
    payload = resp.model_dump()
    lines = [f"words checked: {resp.words_checked} (weight <= {resp.max_weight})",
             f"ok: {str(resp.ok).lower()}"]
    for tag, w in resp.failures:
        lines.append(f"failure {tag} at word {w}")
    _emit(args, payload, lines)
    return EXIT_OK if resp.ok else EXIT_PROPERTY


def build_parser():
    default_field = os.environ.get("MULTICX_FIELD", "gf2")
    ap = argparse.ArgumentParser(
        prog="multicx",
        description="Exact multicomplex calculator: spectral-sequence pages, "
                    "fibration/equivalence checks, lifting problems, "
                    "representing objects, scalar changes and truncations.")
    ap.add_argument("--emit", choices=("table", "json"), default="table")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check the defining relations of a document")
    p.add_argument("file")
    p.set_defaults(fn=cmd_validate)

    p = sub.add_parser("page", help="spectral-sequence page dimensions")
    p.add_argument("file")
    p.add_argument("-r", type=int, default=1)
    p.add_argument("--method", choices=("witness", "direct"), default="witness")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--at", help="single bidegree p,q")
    g.add_argument("--table", action="store_true", help="all nonzero entries")
    p.set_defaults(fn=cmd_page)

    p = sub.add_parser("pagemap", help="induced map on a page at one bidegree")
    p.add_argument("file", help="a morphism document")
    p.add_argument("-r", type=int, default=1)
    p.add_argument("--at", required=True)
    p.add_argument("--method", choices=("witness", "direct"), default="witness")
    p.set_defaults(fn=cmd_pagemap)

    p = sub.add_parser("weq", help="is the morphism a stage-r equivalence")
    p.add_argument("file")
    p.add_argument("-r", type=int, default=0)
    p.set_defaults(fn=cmd_weq)

    p = sub.add_parser("fib", help="is the morphism a stage-r fibration")
    p.add_argument("file")
    p.add_argument("-r", type=int, default=0)
    p.add_argument("--style", choices=("witness", "page"), default="page")
    p.add_argument("--trivial", action="store_true",
                   help="also require a stage-r equivalence")
    p.set_defaults(fn=cmd_fib)

    p = sub.add_parser("lift", help="solve a lifting problem exactly")
    p.add_argument("--i", required=True, help="left leg A -> B")
    p.add_argument("--p", required=True, help="right leg X -> Y")
    p.add_argument("--top", required=True, help="A -> X")
    p.add_argument("--bottom", required=True, help="B -> Y")
    p.set_defaults(fn=cmd_lift)

    p = sub.add_parser("build", help="materialize a named object")
    p.add_argument("kind", choices=("disk", "zw", "bw", "zwinf", "cone",
                                    "coneinf", "path"))
    p.add_argument("input", nargs="?", help="input document (path builds)")
    p.add_argument("--field", default=default_field)
    p.add_argument("--n", default="2")
    p.add_argument("-r", type=int, default=0)
    p.add_argument("--p", type=int, default=0)
    p.add_argument("--q", type=int, default=0)
    p.add_argument("--window", help="pmin,pmax,qmin,qmax")
    p.add_argument("--s-max", type=int, default=None, dest="s_max")
    p.set_defaults(fn=cmd_build)

    p = sub.add_parser("tensor", help="tensor product of two multicomplexes")
    p.add_argument("left")
    p.add_argument("right")
    p.set_defaults(fn=cmd_tensor)

    p = sub.add_parser("dsum", help="direct sum of two multicomplexes")
    p.add_argument("left")
    p.add_argument("right")
    p.set_defaults(fn=cmd_dsum)

    p = sub.add_parser("pushout", help="pushout of two morphisms with common source")
    p.add_argument("f")
    p.add_argument("g")
    p.set_defaults(fn=cmd_pushout)

    p = sub.add_parser("extend", help="push down to a smaller bound")
    p.add_argument("file")
    p.add_argument("--to", required=True)
    p.set_defaults(fn=cmd_extend)

    p = sub.add_parser("restrict", help="view with a larger bound")
    p.add_argument("file")
    p.add_argument("--to", required=True)
    p.set_defaults(fn=cmd_restrict)

    p = sub.add_parser("truncate", help="half-plane truncation")
    p.add_argument("file")
    p.add_argument("--mode", choices=("left", "upper"), required=True)
    p.set_defaults(fn=cmd_truncate)

    p = sub.add_parser("cn", help="weight-bounded dg-algebra identity checks")
    p.add_argument("--check-dg", action="store_true", default=True,
                   dest="check_dg")
    p.add_argument("--max-weight", type=int, default=8, dest="max_weight")
    p.add_argument("--field", default=os.environ.get("MULTICX_FIELD", "qq"))
    p.set_defaults(fn=cmd_cn)

    return ap


def main(argv=None):
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code not in (0, None) else EXIT_OK
    try:
        return args.fn(args)
    except (ParseError, ValidationError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (WindowTooSmall, NotStabilized) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except MulticxError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
