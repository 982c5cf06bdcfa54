"""Command line front end: ``distfrob <command> [flags]``.

Exit codes: 0 success, 1 a check found failures, 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import json
import sys

from .arith import check_prime
from .descent import can, prime_map
from .diffops import Poly, act, diffop_text, is_global, poly_text, rho, transform_chart
from .expr import ParseError, evaluate
from .frobsplit import fr, phi
from .pbw import DistElem, to_records, to_text
from .suites import SUITES, run_suite
from .verma import verma_summary


class UsageError(Exception):
    pass


def _prime(text: str) -> int:
    try:
        return check_prime(int(text))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _emit(args, payload: dict, text: str):
    if args.format == "json":
        print(json.dumps(payload, sort_keys=True))
    else:
        print(text)


def _elem(args) -> DistElem:
    return evaluate(args.expr, args.p)


def _elem_payload(args, x: DistElem) -> dict:
    return {"p": args.p, "element": to_records(x), "text": to_text(x)}


def cmd_eval(args) -> int:
    x = _elem(args)
    _emit(args, _elem_payload(args, x), to_text(x))
    return 0


def cmd_fr(args) -> int:
    x = fr(_elem(args))
    _emit(args, _elem_payload(args, x), to_text(x))
    return 0


def cmd_phi(args) -> int:
    x = phi(_elem(args))
    _emit(args, _elem_payload(args, x), to_text(x))
    return 0


def _rho(args):
    try:
        return rho(_elem(args), args.chart, args.m, args.opposite_rho)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def cmd_rho(args) -> int:
    D = _rho(args)
    payload = {"p": args.p, "operator": D.to_json(), "text": diffop_text(D)}
    text = diffop_text(D)
    if args.prime_map:
        Dp = prime_map(D)
        payload["prime_map"] = Dp.to_json()
        payload["can_of_prime_map"] = str(can(Dp))
        text += f"\n' -> {diffop_text(Dp)}\ncan -> {can(Dp)}"
    _emit(args, payload, text)
    return 0


def cmd_act(args) -> int:
    D = _rho(args)
    f = act(D, Poly.monomial(args.power, args.p))
    payload = {"p": args.p, "operator": D.to_json(),
               "input": {str(args.power): 1},
               "result": {str(k): v for k, v in sorted(f.terms.items())}}
    _emit(args, payload, poly_text(f))
    return 0


def cmd_chart(args) -> int:
    D = _rho(args)
    other = transform_chart(D)
    glob = is_global(D, other) if D.chart == "t" else is_global(other, D)
    payload = {"p": args.p, "operator": D.to_json(), "transformed": other.to_json(),
               "global": glob}
    _emit(args, payload, f"{diffop_text(D)}\n= {diffop_text(other)}\nglobal: {glob}")
    return 0


def cmd_check(args) -> int:
    rep = run_suite(args.suite, args.p, args.m, args.max_index, args.seed,
                    args.opposite_rho, args.strict_kernel)
    if args.format == "json":
        print(rep.to_json())
    else:
        print(rep.to_text())
    return 0 if rep.ok else 1


def cmd_verma(args) -> int:
    m = 0 if args.m is None else args.m
    s = verma_summary(args.p, m, args.weight, args.strict_kernel)
    text = "\n".join([
        f"Z_{m + 1}({args.weight}) over F_{args.p}: dim {s['dim']}",
        f"H eigenvalues: {s['eigenvalues']}",
        f"Delta_T image ({len(s['delta_image'])}): {s['delta_image']}",
        f"joint kernel ({len(s['joint_kernel'])}): {s['joint_kernel']}",
        f"equal: {s['equal']}",
    ])
    _emit(args, s, text)
    return 0 if s["equal"] else 1


def cmd_repl(args) -> int:
    """One expression per line on stdin; ':p N' switches the prime."""
    status = 0
    interactive = sys.stdin.isatty()
    while True:
        if interactive:
            print(f"F_{args.p}> ", end="", flush=True)
        line = sys.stdin.readline()
        if not line:
            break
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if line in (":q", ":quit"):
            break
        if line.startswith(":p"):
            try:
                args.p = check_prime(int(line[2:]))
            except ValueError as exc:
                print(f"error: {exc}", file=sys.stderr)
                status = 2
            continue
        try:
            x = evaluate(line, args.p)
        except ParseError as exc:
            print(f"error: {exc}", file=sys.stderr)
            status = 2
            continue
        _emit(args, _elem_payload(args, x), to_text(x))
    return status


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--p", type=_prime, default=3, help="odd prime (default 3)")
    common.add_argument("--m", type=int, default=None, help="level")
    common.add_argument("--max-index", type=int, default=None, help="sweep bound")
    common.add_argument("--seed", type=int, default=0, help="sampling seed")
    common.add_argument("--format", choices=("json", "text"), default="text")
    common.add_argument("--opposite-rho", action="store_true",
                        help="use H -> 2 t d (the opposite-algebra convention)")
    common.add_argument("--strict-kernel", action="store_true",
                        help="verma: intersect kernels of all divided powers of the level")

    parser = argparse.ArgumentParser(prog="distfrob", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    for name, fn, help_ in [("eval", cmd_eval, "normal form of an expression"),
                            ("fr", cmd_fr, "apply Fr"),
                            ("phi", cmd_phi, "apply the splitting phi")]:
        sp = sub.add_parser(name, parents=[common], help=help_)
        sp.add_argument("expr")
        sp.set_defaults(func=fn)

    for name, fn, help_ in [("rho", cmd_rho, "realize as a differential operator"),
                            ("act", cmd_act, "apply rho(x) to t^K"),
                            ("chart", cmd_chart, "rewrite rho(x) on the other chart")]:
        sp = sub.add_parser(name, parents=[common], help=help_)
        sp.add_argument("expr")
        sp.add_argument("--chart", choices=("t", "t'"), default="t")
        if name == "act":
            sp.add_argument("power", type=int, help="exponent K of t^K")
        if name == "rho":
            sp.add_argument("--prime-map", action="store_true",
                            help="also print the image under P -> P'")
        sp.set_defaults(func=fn)

    sp = sub.add_parser("check", parents=[common], help="run a check suite")
    sp.add_argument("suite", choices=SUITES)
    sp.set_defaults(func=cmd_check)

    sp = sub.add_parser("verma", parents=[common], help="Delta_T image in a baby Verma module")
    sp.add_argument("--lambda", dest="weight", type=int, default=-2)
    sp.set_defaults(func=cmd_verma)

    sp = sub.add_parser("repl", parents=[common], help="evaluate expressions from stdin")
    sp.set_defaults(func=cmd_repl)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (ParseError, UsageError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
