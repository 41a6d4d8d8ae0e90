"""Command line interface.

Exit codes for the deciding commands follow the convention: 0 for a
pumping certificate, 1 for a blocking certificate, 2 when no shield was
found, and anything above 2 for errors.  Budgets honor the
``PUMPKIT_BUDGET_*`` environment variables.
"""

from __future__ import annotations

import argparse
import sys as _sys
from typing import Optional

from . import driver, formats, oracle, shield as engine, svgout, tam, visibility
from .budgets import EnumBudget
from .errors import PumpkitError
from .tam import PumpingSpec

EXIT_PUMPABLE = 0
EXIT_FRAGILE = 1
EXIT_NO_SHIELD = 2
EXIT_USAGE = 3
EXIT_ERROR = 4


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(_sys.stderr)
        _sys.stderr.write(f"error: {message}\n")
        raise SystemExit(EXIT_USAGE)


def _load(path_arg: str, need_path=False):
    with open(path_arg, "r", encoding="utf-8") as fh:
        system, path = formats.parse_system(fh.read())
    if need_path and path is None:
        raise PumpkitError(f"{path_arg} has no path line")
    return system, path


def _emit(text: str, out: Optional[str]):
    if out is None:
        _sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)


def cmd_validate(args) -> int:
    worst = 0
    for file_arg in args.files:
        prefix = f"{file_arg}: " if len(args.files) > 1 else ""
        system, path = _load(file_arg)
        if path is None:
            print(f"{prefix}system ok: {len(system.tiles)} tiles, "
                  f"seed of {len(system.seed)}")
            continue
        rep = tam.validate_producible_path(system, path)
        if rep:
            print(f"{prefix}path ok: {len(path)} tiles")
            for note in rep.notes:
                print(f"{prefix}note: {note}")
        else:
            print(f"{prefix}invalid path: {rep.code} at index {rep.index}")
            worst = EXIT_ERROR
    return worst


def cmd_analyze(args) -> int:
    system, path = _load(args.file, need_path=True)
    res = driver.analyze(system, path, args.bound_override,
                         EnumBudget.from_env())
    for step in res.trail:
        print(f"trail: {step}")
    if res.kind == "pumpable":
        print(f"pumpable i={res.pumpable.i} j={res.pumpable.j} "
              f"vector={res.pumpable.vector}")
        _emit(formats.emit_certificate(res), args.output)
    elif res.kind == "fragile":
        print(f"fragile: {len(res.fragile.attachments)} attachments, "
              f"conflict at {res.fragile.conflict}")
        _emit(formats.emit_certificate(res), args.output)
    else:
        print("no shield found")
    return res.exit_code


def cmd_shields(args) -> int:
    system, path = _load(args.file, need_path=True)
    found = engine.enumerate_shields(system, path)
    for sh in found:
        print(f"shield {sh.i} {sh.j} {sh.k}")
    print(f"{len(found)} shield(s)")
    return 0


def cmd_pump_or_block(args) -> int:
    system, path = _load(args.file, need_path=True)
    i, j, k = args.shield
    out = engine.pump_or_block(system, path, engine.Shield(i, j, k),
                               EnumBudget.from_env(), collect_trace=args.trace)
    print(f"branch: {out.branch}")
    if args.trace and out.trace is not None:
        print(out.trace.dump())
    if out.kind == "pumpable":
        print(f"pumpable i={out.pumpable.i} j={out.pumpable.j} "
              f"vector={out.pumpable.vector}")
        _emit(formats.emit_certificate(out), args.output)
        return EXIT_PUMPABLE
    print(f"fragile: conflict at {out.fragile.conflict}")
    _emit(formats.emit_certificate(out), args.output)
    return EXIT_FRAGILE


def cmd_spans(args) -> int:
    system, path = _load(args.file, need_path=True)
    axis = "vertical" if args.axis == "v" else "horizontal"
    for s in visibility.spans(system, path, axis):
        print(f"span coord={s.coordinate} s={s.s} n={s.n} "
              f"orient={s.orientation} pointing={s.pointing or '-'} "
              f"type={s.glue_type} extent={s.extent}")
    return 0


def cmd_verify(args) -> int:
    system, path = _load(args.file)
    with open(args.cert, "r", encoding="utf-8") as fh:
        cert = formats.parse_certificate(fh.read(), system, path)
    if isinstance(cert, PumpingSpec):
        res = tam.verify_pumpable_cert(system, cert)
    else:
        if path is None:
            raise PumpkitError("blocking certificates need the path to conflict with")
        res = tam.verify_fragile_cert(system, path, cert)
    if res:
        print("certificate: valid")
        return 0
    print(f"certificate: INVALID ({res.reason})")
    return EXIT_ERROR


def cmd_oracle(args) -> int:
    system, path = _load(args.file, need_path=args.mode != "enumerate")
    budget = EnumBudget.from_env()
    if args.mode == "enumerate":
        enum = oracle.enumerate_paths(system, budget)
        n = 0
        for q in enum:
            n += 1
            if args.verbose:
                print(" ; ".join(f"{x} {y} {t.name}" for (x, y), t in q.entries))
        print(f"{n} producible path(s)"
              + (" [truncated]" if enum.truncated else ""))
        return 0
    if args.mode == "fragile":
        cert = oracle.brute_fragile(system, path, budget)
        if cert is None:
            print("no conflicting assembly within budget")
            return EXIT_NO_SHIELD
        print(f"conflict at {cert.conflict}")
        _emit(formats.emit_certificate(cert), args.output)
        return EXIT_FRAGILE
    if args.mode == "pumpable":
        spec = oracle.brute_pumpable(system, path, budget)
        if spec is None:
            print("no pumpable pair within budget")
            return EXIT_NO_SHIELD
        print(f"pumpable i={spec.i} j={spec.j} vector={spec.vector}")
        _emit(formats.emit_certificate(spec), args.output)
        return EXIT_PUMPABLE
    # mode == "rp": compare the engine's route against the exhaustive one.
    if args.shield is None:
        raise PumpkitError("oracle rp needs --shield I J K")
    i, j, k = args.shield
    sh = engine.Shield(i, j, k)
    engine.check_shield(system, path, i, j, k)
    pt = path.prefix(k + 1)
    ws = engine.build_workspace(system, pt, sh)
    fast = engine.build_r(system, pt, sh, ws, budget)
    slow = oracle.brute_right_priority(system, pt, sh, ws, budget)
    print("engine route: " + " ".join(f"{x},{y}" for x, y in fast))
    print("oracle route: " + " ".join(f"{x},{y}" for x, y in slow))
    if fast != slow:
        print("MISMATCH")
        return EXIT_ERROR
    print("routes agree")
    return 0


def cmd_render(args) -> int:
    system, path = _load(args.file)
    sh = engine.Shield(*args.shield) if args.shield else None
    overlays = set(args.overlays.split(",")) - {""} if args.overlays else set()
    trace = None
    if "trace" in overlays and sh is not None:
        trace = engine.pump_or_block(system, path, sh, EnumBudget.from_env(),
                                     collect_trace=True).trace
    svg = svgout.render_svg(system, path, overlays, sh, trace=trace)
    _emit(svg, args.output)
    return 0


def cmd_bound(args) -> int:
    print(driver.bound(args.tiles, args.seed))
    if args.all:
        print(f"square-half-side "
              f"{driver.bound_theorem1_square_half_side(args.tiles, args.seed)}")
        print(f"extent {driver.bound_theorem1_extent(args.tiles, args.seed)}")
    return 0


def cmd_reduce_2ham(args) -> int:
    system, path = _load(args.file, need_path=True)
    red = driver.reduce_2ham(system.tiles, path, args.width)
    for note in red.notes:
        print(f"note: {note}")
    _emit(formats.print_system(red.sys, red.path), args.output)
    return 0


def build_parser() -> _Parser:
    parser = _Parser(prog="pumpkit",
                     description="pumping/fragility certificates for "
                                 "temperature-1 tile assembly paths")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, **kwargs):
        p = sub.add_parser(name, **kwargs)
        p.set_defaults(fn=fn)
        return p

    p = add("validate", cmd_validate, help="check system/path files")
    p.add_argument("files", nargs="+")

    p = add("analyze", cmd_analyze, help="run the full decision pipeline")
    p.add_argument("file")
    p.add_argument("--bound-override", type=int, default=None,
                   help="use this distance bound instead of the true one")
    p.add_argument("-o", "--output", default=None,
                   help="write the certificate here")

    p = add("shields", cmd_shields, help="list all shields of the path")
    p.add_argument("file")

    p = add("pump-or-block", cmd_pump_or_block, help="decide one shield")
    p.add_argument("file")
    p.add_argument("--shield", nargs=3, type=int, required=True,
                   metavar=("I", "J", "K"))
    p.add_argument("-o", "--output", default=None)
    p.add_argument("--trace", action="store_true",
                   help="print the engine's construction trace")

    p = add("spans", cmd_spans, help="print the path's spans")
    p.add_argument("file")
    p.add_argument("--axis", choices=("v", "h"), default="v")

    p = add("verify", cmd_verify, help="verify a certificate file")
    p.add_argument("file")
    p.add_argument("cert")

    p = add("oracle", cmd_oracle, help="brute-force ground truth")
    p.add_argument("mode", choices=("enumerate", "fragile", "pumpable", "rp"))
    p.add_argument("file")
    p.add_argument("--shield", nargs=3, type=int, metavar=("I", "J", "K"))
    p.add_argument("-o", "--output", default=None)
    p.add_argument("-v", "--verbose", action="store_true")

    p = add("render", cmd_render, help="render the system/path as SVG")
    p.add_argument("file")
    p.add_argument("-o", "--output", default=None)
    p.add_argument("--overlays", default="",
                   help="comma list of rays,cut,regions,trace")
    p.add_argument("--shield", nargs=3, type=int, metavar=("I", "J", "K"))

    p = add("bound", cmd_bound, help="print the exact distance bound")
    p.add_argument("--tiles", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--all", action="store_true",
                   help="also print the square half side and extent bounds")

    p = add("reduce-2ham", cmd_reduce_2ham,
            help="re-seed a free path at its westernmost tile")
    p.add_argument("file")
    p.add_argument("--width", type=int, default=None)
    p.add_argument("-o", "--output", default=None)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except PumpkitError as e:
        _sys.stderr.write(f"error: {type(e).__name__}: {e}\n")
        return EXIT_ERROR


if __name__ == "__main__":
    raise SystemExit(main())
