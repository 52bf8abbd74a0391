"""Command line front end.

Exit status is 0 when every report passes, 1 when a check fails and 2 on
bad input (malformed JSON, unknown names, ranges outside a window).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path
from typing import Callable, List, Optional, Sequence

from . import acceptance as acc
from . import barres, chaincore, coalg, stable, suspops, symgrp
from .operad import (BarOperad, Operad, Report, check_axioms, make_coassoc, make_S0, make_susp,
                     operad_from_json, operad_to_json)

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def parse_range(text: str) -> tuple:
    try:
        lo, hi = text.split("..")
        lo, hi = int(lo), int(hi)
    except ValueError:
        raise InputError(f"range must look like a..b, got {text!r}") from None
    if lo > hi:
        raise InputError(f"empty range {text}")
    return lo, hi


def parse_ints(text: str) -> List[int]:
    try:
        return [int(t) for t in text.replace(" ", "").split(",") if t]
    except ValueError:
        raise InputError(f"expected comma separated integers, got {text!r}") from None


def read_json(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: not valid JSON ({exc})") from None
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None


def emit(args, obj) -> None:
    text = dumps(obj)
    if getattr(args, "out", None):
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def finish(args, rep: Report) -> int:
    print(rep.summary())
    if getattr(args, "out", None):
        Path(args.out).write_text(dumps(rep.to_json()), encoding="utf-8")
    return EXIT_OK if rep.ok else EXIT_FAIL


# -- builders -----------------------------------------------------------------

OPERAD_NAMES = ("s0", "coassoc", "susp", "susp-inv", "bar")
COALGEBRA_NAMES = ("interval", "sphere0", "circle", "point")


def build_operad(name: str, max_rank: Optional[int], max_degree: int) -> Operad:
    if name == "s0":
        return make_S0(max_rank or 4)
    if name == "coassoc":
        return make_coassoc(max_rank or 6)
    if name == "susp":
        return make_susp(1, max_rank or 5)
    if name == "susp-inv":
        return make_susp(-1, max_rank or 5)
    if name == "bar":
        return BarOperad(max_rank or 3, max_degree)
    raise InputError(f"unknown operad {name!r}; choose from {', '.join(OPERAD_NAMES)}")


def build_coalgebra(name: str, max_rank: Optional[int], max_degree: int) -> coalg.Coalgebra:
    S = BarOperad(max_rank or 3, max_degree)
    if name == "interval":
        return coalg.make_interval(S)
    if name == "sphere0":
        return coalg.make_sphere0(S)
    if name == "circle":
        return coalg.reduce(coalg.suspend_m(coalg.make_sphere0(S)))
    if name == "point":
        return coalg.trivial_coalgebra(S)
    raise InputError(f"unknown coalgebra {name!r}; choose from {', '.join(COALGEBRA_NAMES)}")


def load_operad(args) -> Operad:
    if args.input:
        return operad_from_json(read_json(args.input))
    if not args.name:
        raise InputError("give --in or --name")
    return build_operad(args.name, args.max_rank, args.max_degree)


def load_coalgebra(args) -> coalg.Coalgebra:
    if args.input:
        return coalg.coalgebra_from_json(read_json(args.input))
    if not args.name:
        raise InputError("give --in or --name")
    return build_coalgebra(args.name, args.max_rank, args.max_degree)


# -- commands -----------------------------------------------------------------

def cmd_operad_build(args) -> int:
    emit(args, operad_to_json(build_operad(args.name, args.max_rank, args.max_degree)))
    return EXIT_OK


def cmd_check_axioms(args) -> int:
    O = load_operad(args)
    return finish(args, check_axioms(O, args.max_rank))


def cmd_homology(args) -> int:
    data = read_json(args.input)
    if "carrier" in data:
        data = data["carrier"]
    C = chaincore.complex_from_json(data)
    if args.range:
        lo, hi = parse_range(args.range)
    else:
        lo, hi = C.window.min_degree, C.window.homology_top()
    groups = chaincore.homology(C, lo, hi)
    for d, g in zip(range(lo, hi + 1), groups):
        print(f"H_{d} = {g}")
    if args.out:
        Path(args.out).write_text(dumps(chaincore.homology_to_json(groups, lo)), encoding="utf-8")
    return EXIT_OK


def cmd_tmap(args) -> int:
    alpha = parse_ints(args.alpha)
    try:
        sigma = symgrp.parse_perm(args.sigma, len(alpha))
    except ValueError as exc:
        raise InputError(str(exc)) from None
    out = symgrp.tmap(alpha, sigma)
    print(",".join(map(str, out)))
    if args.cycles:
        print("".join("(" + " ".join(map(str, c)) + ")" for c in symgrp.to_cycles(out)) or "()")
    return EXIT_OK


def cmd_bar(args) -> int:
    lo, hi = parse_range(args.range)
    if args.n < 1:
        raise InputError("n must be positive")
    groups = barres.group_homology(args.n, args.coefficients, lo, hi, cohomology=args.cohomology)
    name = "H^" if args.cohomology else "H_"
    for d, g in zip(range(lo, hi + 1), groups):
        print(f"{name}{d}(S{args.n}; {args.coefficients}) = {g}")
    if args.out:
        Path(args.out).write_text(dumps(chaincore.homology_to_json(groups, lo)), encoding="utf-8")
    return EXIT_OK


def cmd_bar_dump(args) -> int:
    res = barres.build_bar(args.n, args.max_degree)
    emit(args, chaincore.complex_to_json(res.complex))
    return EXIT_OK


def cmd_coalg_check(args) -> int:
    K = load_coalgebra(args)
    rep = coalg.check_coalgebra(K, args.max_rank)
    if isinstance(K, coalg.PointedCoalgebra):
        rep.merge(coalg.check_pointed(K), "pointed ")
    return finish(args, rep)


def cmd_coalg_dump(args) -> int:
    emit(args, coalg.coalgebra_to_json(load_coalgebra(args)))
    return EXIT_OK


def cmd_coalg_suspend(args) -> int:
    K = load_coalgebra(args)
    if not isinstance(K, coalg.PointedCoalgebra):
        raise InputError(f"{K.name} has no basepoint; the m-suspension needs a pointed coalgebra")
    SK = coalg.suspend_m(K)
    if args.reduced:
        SK = coalg.reduce(SK)
    emit(args, coalg.coalgebra_to_json(SK))
    return EXIT_OK


def cmd_susp_vmap(args) -> int:
    S = BarOperad(args.max_rank or 3, args.max_degree)
    V = suspops.make_V(S)
    T = V.target
    rows = [{"key": S.label(a), "value": sorted([T.label(k), c] for k, c in v.items())}
            for a, v in V.table(args.max_degree).items()]
    emit(args, {"source": S.name, "target": T.name, "max_rank": S.max_rank,
                "max_degree": args.max_degree, "values": rows})
    return EXIT_OK


def cmd_susp_theorem(args) -> int:
    if args.input:
        K = coalg.coalgebra_from_json(read_json(args.input))
    else:
        K = build_coalgebra(args.coalgebra, 3, max(args.max_degree, 3))
    if not isinstance(K, coalg.PointedCoalgebra):
        raise InputError("the suspension theorem needs a pointed coalgebra")
    morphism = chaincore.identity_map(coalg.suspend_m(K).carrier) if args.identity else None
    rep = coalg.check_suspension_theorem(K, args.max_rank or 2, args.max_degree, morphism=morphism)
    return finish(args, rep)


def _range_or_default(args, z: stable.Zigzag) -> tuple:
    if args.range:
        return parse_range(args.range)
    los = [o.coalgebra.carrier.window.min_degree for o in z.objects]
    his = [o.coalgebra.carrier.window.homology_top() for o in z.objects]
    return max(los), min(his)


def cmd_stable_verify(args) -> int:
    z = stable.zigzag_from_json(read_json(args.input))
    lo, hi = _range_or_default(args, z)
    rep = stable.verify_zigzag(z, lo, hi)
    code = finish(args, rep)
    if rep.ok:
        verdict = "equivalent" if rep.equivalence else "not an equivalence (a right arrow is not a quasi-iso)"
        print(f"level {rep.level}: {verdict} on degrees {lo}..{hi}")
    return code


def cmd_stable_align(args) -> int:
    z = stable.zigzag_from_json(read_json(args.input))
    lo, hi = _range_or_default(args, z)
    emit(args, stable.zigzag_to_json(stable.align_zigzag(z, lo, hi)))
    return EXIT_OK


def cmd_stable_example(args) -> int:
    S = BarOperad(args.max_rank or 3, args.max_degree)
    circle = coalg.reduce(coalg.suspend_m(coalg.make_sphere0(S)))
    if args.kind == "identity":
        z = stable.identity_zigzag(coalg.make_interval(S))
    elif args.kind == "cone":
        z = stable.cone_zigzag(circle, kind="retraction")
    elif args.kind == "zero":
        z = stable.corrupt_zero(stable.cone_zigzag(circle))
    else:
        z = acc.mixed_level_zigzag(circle)
    emit(args, stable.zigzag_to_json(z))
    return EXIT_OK


def cmd_acceptance(args) -> int:
    rep = acc.acceptance(args.profile, echo=print)
    print(f"{'PASS' if rep.ok else 'FAIL'} acceptance ({rep.profile}) in {rep.seconds:.1f} s")
    if args.out:
        Path(args.out).write_text(dumps(rep.to_json(timings=args.timings)), encoding="utf-8")
    return EXIT_OK if rep.ok else EXIT_FAIL


def manifest_argv(manifest: dict, base: Path) -> List[str]:
    """Turn {"command": "stable verify", "in": ..., "range": ...} into arguments."""
    if not isinstance(manifest, dict) or "command" not in manifest:
        raise InputError("a manifest is a JSON object with a 'command' field")
    argv = str(manifest["command"]).split()
    for key in sorted(manifest):
        if key in ("command", "deterministic"):
            continue
        value = manifest[key]
        flag = "--" + key.replace("_", "-")
        if key in ("in", "out") and value is not None:
            value = str((base / str(value)) if not os.path.isabs(str(value)) else value)
        if value is True:
            argv.append(flag)
        elif value is False or value is None:
            continue
        else:
            argv += [flag, str(value)]
    return argv


def cmd_run(args) -> int:
    manifest = read_json(args.manifest)
    argv = manifest_argv(manifest, Path(args.manifest).resolve().parent)
    if argv and argv[0] == "run":
        raise InputError("manifests cannot nest")
    return main(argv)


# -- parser -------------------------------------------------------------------

def _window(p: argparse.ArgumentParser, degree: int = 3) -> None:
    p.add_argument("--max-rank", type=int, default=None)
    p.add_argument("--max-degree", type=int, default=degree)
    p.add_argument("--min-degree", type=int, default=0)


def _source(p: argparse.ArgumentParser, names: Sequence[str]) -> None:
    p.add_argument("--in", dest="input")
    p.add_argument("--name", choices=names)


def _cmd(sub, name: str, fn: Callable, help: str) -> argparse.ArgumentParser:
    p = sub.add_parser(name, help=help)
    p.set_defaults(fn=fn)
    return p


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="opsusp", description=(
        "Exact chain complexes, operads and coalgebras, with the operadic suspension "
        "checks. Set OPSUSP_MAX_BASIS to change the basis-count cap."))
    sub = ap.add_subparsers(dest="command", required=True)

    op = sub.add_parser("operad", help="build or check operads").add_subparsers(dest="sub", required=True)
    p = _cmd(op, "build", cmd_operad_build, "dump an operad as JSON")
    p.add_argument("--name", required=True, choices=OPERAD_NAMES)
    _window(p)
    p.add_argument("--out")
    for parent in (op, sub):
        p = _cmd(parent, "check-axioms", cmd_check_axioms, "check the operad laws")
        _source(p, OPERAD_NAMES)
        _window(p)
        p.add_argument("--out")

    p = _cmd(sub, "homology", cmd_homology, "integral homology of a complex or coalgebra carrier")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--range")
    p.add_argument("--out")

    p = _cmd(sub, "tmap", cmd_tmap, "block permutation T_alpha(sigma)")
    p.add_argument("--alpha", required=True)
    p.add_argument("--sigma", required=True)
    p.add_argument("--cycles", action="store_true")

    bar = sub.add_parser("bar", help="bar resolution of S_n").add_subparsers(dest="sub", required=True)
    p = _cmd(bar, "homology", cmd_bar, "group (co)homology of S_n")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--range", required=True)
    p.add_argument("--coefficients", choices=barres.COEFFICIENTS, default="trivial")
    p.add_argument("--cohomology", action="store_true")
    p.add_argument("--out")
    p = _cmd(bar, "dump", cmd_bar_dump, "dump RS_n as a complex")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--max-degree", type=int, default=3)
    p.add_argument("--out")

    co = sub.add_parser("coalg", help="coalgebras over the bar operad").add_subparsers(dest="sub", required=True)
    for name, fn, help in (("check", cmd_coalg_check, "check the structure maps"),
                           ("dump", cmd_coalg_dump, "dump a coalgebra as JSON"),
                           ("suspend", cmd_coalg_suspend, "m-suspension of a pointed coalgebra")):
        p = _cmd(co, name, fn, help)
        _source(p, COALGEBRA_NAMES)
        _window(p)
        p.add_argument("--out")
        if name == "suspend":
            p.add_argument("--reduced", action="store_true")

    su = sub.add_parser("susp", help="the morphism V and the suspension theorem").add_subparsers(
        dest="sub", required=True)
    p = _cmd(su, "vmap", cmd_susp_vmap, "dump the values of V")
    _window(p)
    p.add_argument("--out")
    p = _cmd(su, "check-theorem", cmd_susp_theorem, "check both suspension squares")
    p.add_argument("--coalgebra", choices=("interval", "sphere0", "point"), default="interval")
    p.add_argument("--in", dest="input")
    p.add_argument("--identity", action="store_true",
                   help="also check the desuspended square for the identity of SC")
    _window(p)
    p.add_argument("--out")

    st = sub.add_parser("stable", help="zigzag certificates").add_subparsers(dest="sub", required=True)
    p = _cmd(st, "verify", cmd_stable_verify, "verify a zigzag certificate")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--range")
    p.add_argument("--out")
    p = _cmd(st, "align", cmd_stable_align, "pull every object to the top level")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--range")
    p.add_argument("--out")
    p = _cmd(st, "example", cmd_stable_example, "write a sample certificate")
    p.add_argument("--kind", choices=("identity", "cone", "zero", "mixed"), default="cone")
    _window(p)
    p.add_argument("--out")

    p = _cmd(sub, "acceptance", cmd_acceptance, "run the acceptance suite")
    p.add_argument("--profile", choices=acc.PROFILES, default="fast")
    p.add_argument("--timings", action="store_true", help="include wall-clock times in --out")
    p.add_argument("--out")

    p = _cmd(sub, "run", cmd_run, "run a JSON manifest")
    p.add_argument("--manifest", required=True)
    return ap


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return args.fn(args)
    except (InputError, ValueError, KeyError, MemoryError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
