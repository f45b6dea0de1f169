"""Command-line interface.

Exit codes: 0 success or property holds, 1 property violated / no such object /
unsupported order, 2 usage or parse error, 3 search budget exhausted.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import construct, io
from .certify import (CertLevel, certify_x_member, check_corrupting_pair, check_properties,
                      corrupter_data)
from .core import Hypercube, LatinSquare
from .errors import BudgetExhausted, CertificationFailed, NotLatin, UnsupportedOrder
from .verify import find_intercalate, find_proper_subhypercube, find_proper_subsquare

OK, VIOLATED, USAGE, BUDGET = 0, 1, 2, 3


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    return Path(path).read_text(encoding="utf-8")


def _emit(text: str, out: str | None) -> None:
    if out and out != "-":
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _render(obj, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(io.to_json(obj)) + "\n"
    return io.to_text(obj)


def _box_text(box) -> str:
    if hasattr(box, "coords"):
        axes = " ".join(f"axis{t + 1}={list(c)}" for t, c in enumerate(box.coords))
        return f"order={box.order} {axes} symbols={list(box.symbols)}"
    return f"order={box.order} rows={list(box.rows)} cols={list(box.cols)} symbols={list(box.symbols)}"


# ---------------------------------------------------------------------------


def _generate(order: int, dim: int, seed: int, budget: int, use_cache: bool):
    recipe = "build"
    kind = "latin_square" if dim == 2 else "latin_hypercube"
    cache = io.ArtifactCache() if use_cache else None
    if cache is not None:
        rec = cache.get(kind, order, dim, recipe, seed)
        if rec is not None:
            a = io.parse_json(rec.payload)
            return io.as_square(a) if dim == 2 else io.as_hypercube(a)
    if dim == 2:
        obj = construct.build_square(order, seed, budget)
    else:
        obj = construct.build_hypercube(order, dim, seed, budget)
    if cache is not None:
        payload = io.to_json(obj)
        cache.put(order, dim, recipe, seed, io.ArtifactRecord.make(kind, payload, "constructed", f"{recipe}:seed={seed}"))
    return obj


def cmd_gen(args) -> int:
    if args.order < 1 or args.dim < 2:
        print("order must be positive and dim at least 2", file=sys.stderr)
        return USAGE
    try:
        obj = _generate(args.order, args.dim, args.seed, args.budget, not args.no_cache)
    except UnsupportedOrder as exc:
        print(f"error: {exc}", file=sys.stderr)
        return VIOLATED
    except BudgetExhausted as exc:
        print(f"error: {exc}", file=sys.stderr)
        return BUDGET
    if args.verify_level != "none":
        H = obj if isinstance(obj, Hypercube) else Hypercube.from_square(obj)
        box = find_proper_subsquare(obj) if isinstance(obj, LatinSquare) else find_proper_subhypercube(H)
        if box is not None:
            print(f"error: constructed object has a proper substructure {_box_text(box)}", file=sys.stderr)
            return VIOLATED
    _emit(_render(obj, args.format), args.out)
    return OK


def cmd_verify(args) -> int:
    try:
        a, _ = io.parse_any(_read(args.input))
    except (io.ParseError, OSError) as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return USAGE
    try:
        if args.mode == "hypercube":
            if a.ndim < 2:
                print("parse error: hypercube mode needs dimension at least 2", file=sys.stderr)
                return USAGE
            H = io.as_hypercube(a)
            box = find_proper_subhypercube(H)
        else:
            if a.ndim != 2:
                print("parse error: expected a square", file=sys.stderr)
                return USAGE
            L = io.as_square(a)
            if args.mode == "latin":
                box = None
            elif args.mode == "ninf":
                box = find_proper_subsquare(L)
            else:
                box = find_intercalate(L)
    except NotLatin as exc:
        print(f"not Latin: {exc}", file=sys.stderr)
        print(f"violation: {exc}")
        return VIOLATED
    if box is not None:
        print(f"violation: {_box_text(box)}")
        return VIOLATED
    print(f"ok: {args.mode}")
    return OK


def cmd_certify(args) -> int:
    try:
        squares = [io.as_square(io.parse_any(_read(p))[0]) for p in args.inputs]
    except (io.ParseError, OSError, NotLatin) as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return USAGE
    if args.mode == "pair":
        if len(squares) != 2:
            print("pair mode takes two squares", file=sys.stderr)
            return USAGE
        A, B = squares
        rep = check_corrupting_pair(A, B)
        data = corrupter_data(A, B) if rep.ok else None
        if rep.ok and data is None:
            rep.record("P3", False, "no length-3 pattern found")
        elif data is not None:
            rep.merge(check_properties(data))
        cert = {"order": A.order, "checks": rep.checks, "failures": rep.failures,
                "p3": list(data.p3) if data else None}
        _emit(json.dumps(cert) + "\n", args.out)
        if not rep.ok:
            print(f"failed: {rep.failures[0]}", file=sys.stderr)
            return VIOLATED
        return OK
    if len(squares) != 1 or args.shift is None:
        print("xmember mode takes one square and --shift", file=sys.stderr)
        return USAGE
    try:
        x = certify_x_member(squares[0], args.shift, args.level)
    except CertificationFailed as exc:
        print(f"failed clause: {exc.clause} ({exc.detail})", file=sys.stderr)
        _emit(json.dumps({"order": squares[0].order, "shift": args.shift, "failed": exc.clause}) + "\n", args.out)
        return VIOLATED
    _emit(json.dumps(io.certificate_to_json(x)) + "\n", args.out)
    return OK


def cmd_search(args) -> int:
    try:
        L = construct.search_ninf(args.order, args.seed, args.max_iters)
    except BudgetExhausted as exc:
        print(f"error: {exc}", file=sys.stderr)
        return BUDGET
    _emit(_render(L, args.format), args.out)
    return OK


def cmd_plan(args) -> int:
    try:
        plan = construct.plan_order(args.order)
    except UnsupportedOrder as exc:
        print(f"error: {exc}", file=sys.stderr)
        return VIOLATED
    print(plan)
    return OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="ninf", description="Build and certify Latin squares and hypercubes "
                                "without proper subsquares.")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="construct a square or hypercube")
    g.add_argument("--order", type=int, required=True)
    g.add_argument("--dim", type=int, default=2)
    g.add_argument("--format", choices=("text", "json"), default="json")
    g.add_argument("--verify-level", choices=("none", "ninf"), default="ninf")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--budget", type=int, default=5000, help="search steps for orders built by search")
    g.add_argument("--no-cache", action="store_true")
    g.add_argument("--out")
    g.set_defaults(func=cmd_gen)

    v = sub.add_parser("verify", help="check a property of a square or hypercube")
    v.add_argument("input", help="file path or - for stdin")
    v.add_argument("--mode", choices=("latin", "ninf", "intercalates", "hypercube"), default="ninf")
    v.set_defaults(func=cmd_verify)

    c = sub.add_parser("certify", help="certify a corrupting pair or a family member")
    c.add_argument("inputs", nargs="+")
    c.add_argument("--mode", choices=("pair", "xmember"), default="xmember")
    c.add_argument("--shift", type=int)
    c.add_argument("--level", choices=tuple(lvl.label for lvl in CertLevel), default="fullyVerified")
    c.add_argument("--out")
    c.set_defaults(func=cmd_certify)

    s = sub.add_parser("search", help="stochastic search for a subsquare-free square")
    s.add_argument("--order", type=int, required=True)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--max-iters", type=int, default=5000)
    s.add_argument("--format", choices=("text", "json"), default="json")
    s.add_argument("--out")
    s.set_defaults(func=cmd_search)

    pl = sub.add_parser("plan", help="decompose an order for the recursion")
    pl.add_argument("--order", type=int, required=True)
    pl.set_defaults(func=cmd_plan)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
