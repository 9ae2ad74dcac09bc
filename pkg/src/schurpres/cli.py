"""Command-line front end.

Exit codes: 0 all requested checks pass, 2 verification failure,
3 invalid parameters, 4 resource cap exceeded.
"""
from __future__ import annotations

import argparse
import json
import random
import re
import sys
import time

from .errors import ParameterError, ResourceCapExceeded
from .exact_arith import QQ, Field, is_prime
from .generators import BinomialH, DividedPower, render_word
from .params import AlgebraParams
from .presentation import LABELS, build_presentation, donkin_report, export_presentation, verify_presentation
from .rewrite import RewriteContext, certify_rewrite, pbw_rewrite, random_word
from .tensor_rep import TensorRepresentation, algebra_closure_dimension
from .weights import (
    RSParams,
    enumerate_lambda,
    enumerate_lambda_plus,
    enumerate_lambda_plus_rs,
    enumerate_lambda_rs,
    nu_prime_set,
    pi_double_prime_set,
    pi_prime_set,
    sum_weyl_dimension_squares,
)

EXIT_OK, EXIT_FAIL, EXIT_PARAM, EXIT_CAP = 0, 2, 3, 4


def desk_preset() -> list[tuple[str, AlgebraParams]]:
    """The default verification grid: small n, d, r, s and q = p^m <= 9."""
    out = []
    for n in (2, 3):
        for r in (0, 1):
            for s in (0, 1):
                out.append(("char0_rational", AlgebraParams(n, r, s)))
    for p in (2, 3):
        for m in (1, 2, 3):
            q = p**m
            if q > 9:
                continue
            for n in (1, 2, 3):
                for d in (1, 2, 3):
                    if d < q:
                        out.append(("charp_schur", AlgebraParams(n, d, 0, p, m)))
            for n in (2, 3):
                for r in (0, 1):
                    for s in (0, 1):
                        if r + (n - 1) * s < q:
                            out.append(("charp_rational", AlgebraParams(n, r, s, p, m)))
    return out


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ParameterError(message)


def _emit(args, payload) -> None:
    text = payload if isinstance(payload, str) else json.dumps(payload, sort_keys=True) + "\n"
    if getattr(args, "output", None):
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _params(args, *, need_rs: bool = False) -> AlgebraParams:
    p = args.char
    if p and not is_prime(p):
        raise ParameterError(f"--char {p} is neither 0 nor a prime")
    m = args.m if p else 0
    if p and m is None:
        raise ParameterError("--m is required in characteristic p")
    if args.d is not None:
        if args.r is not None or args.s is not None:
            raise ParameterError("give either --d or --r/--s, not both")
        if need_rs:
            raise ParameterError("this command needs --r and --s")
        return AlgebraParams.polynomial(args.n, args.d, p, m or 0)
    if args.r is None or args.s is None:
        raise ParameterError("give --d, or both --r and --s")
    return AlgebraParams(args.n, args.r, args.s, p, m or 0)


def _add_params(sp, with_char=True):
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--d", type=int)
    sp.add_argument("--r", type=int)
    sp.add_argument("--s", type=int)
    if with_char:
        sp.add_argument("--char", type=int, default=0, help="0 or a prime p")
        sp.add_argument("--m", type=int, help="Frobenius exponent, q = p^m")


def cmd_weights(args) -> int:
    if args.d is not None:
        n, d = args.n, args.d
        if n < 1 or d < 0:
            raise ParameterError("need n >= 1 and d >= 0")
        sets = {"lambda": lambda: enumerate_lambda(n, d), "lambda_plus": lambda: enumerate_lambda_plus(n, d)}
        default = "lambda"
    else:
        if args.r is None or args.s is None:
            raise ParameterError("give --d, or both --r and --s")
        rs = RSParams(args.n, args.r, args.s)
        sets = {
            "lambda": lambda: enumerate_lambda_rs(rs),
            "lambda_plus": lambda: enumerate_lambda_plus_rs(rs),
            "pi_prime": lambda: pi_prime_set(rs),
            "pi_double_prime": lambda: pi_double_prime_set(rs),
            "nu_prime": lambda: nu_prime_set(rs),
        }
        default = "lambda"
    name = args.set or default
    if name not in sets:
        raise ParameterError(f"set {name!r} not available here; choose from {sorted(sets)}")
    ws = sets[name]()
    if args.format == "table":
        _emit(args, "".join(" ".join(str(x) for x in w) + "\n" for w in ws))
    else:
        _emit(args, ws.to_json() + "\n")
    return EXIT_OK


def _closure(params: AlgebraParams, cap: int) -> int:
    n = params.n
    rep = TensorRepresentation(n, params.r, params.s, QQ)
    gens = [rep.matrix_divided_power((i, j), 1) for i in range(1, n + 1) for j in range(1, n + 1) if i != j]
    gens += [rep.matrix_binomial_H(i, 1) for i in range(1, n + 1)]
    return algebra_closure_dimension(gens, cap=cap)


def cmd_dims(args) -> int:
    params = _params(args)
    if args.d is not None:
        lam = enumerate_lambda(params.n, params.d)
        dominant = enumerate_lambda_plus(params.n, params.d)
    else:
        lam = enumerate_lambda_rs(params.rs)
        dominant = enumerate_lambda_plus_rs(params.rs)
    out = {"lambda_count": len(lam), "weyl_dimension_square_sum": sum_weyl_dimension_squares(dominant)}
    if params.p == 0:
        out["closure_dimension"] = _closure(params, args.cap)
        ok = out["closure_dimension"] == out["weyl_dimension_square_sum"]
    else:
        ok = True
    out["pass"] = ok
    if args.format == "table":
        _emit(args, "".join(f"{k}: {v}\n" for k, v in out.items()))
    else:
        _emit(args, out)
    return EXIT_OK if ok else EXIT_FAIL


def _label_for(params: AlgebraParams, explicit: str | None) -> str:
    if explicit:
        return explicit
    if params.p == 0:
        return "char0_rational"
    return "charp_rational" if params.s else "charp_schur"


def cmd_verify(args) -> int:
    if args.preset:
        if args.preset != "desk":
            raise ParameterError(f"unknown preset {args.preset!r}")
        jobs = desk_preset()
    else:
        params = _params(args)
        jobs = [(_label_for(params, args.label), params)]
    reports = []
    for label, params in jobs:
        t0 = time.perf_counter()
        pres = build_presentation(label, params, literal=args.literal, weak=args.weak)
        rep = verify_presentation(pres, closure_cap=args.cap)
        reports.append(rep)
        if args.verbose:
            print(f"{label} {params.as_dict()} pass={rep.passed} {time.perf_counter() - t0:.2f}s", file=sys.stderr)
    ok = all(r.passed for r in reports)
    if args.format == "table":
        lines = []
        for r in reports:
            lines.append(f"{'PASS' if r.passed else 'FAIL'} {r.label} {json.dumps(r.params.as_dict(), sort_keys=True)}\n")
            for item in r.failures():
                lines.append(f"  failed {item.check} {item.name}\n")
        _emit(args, "".join(lines))
    else:
        _emit(args, {"pass": ok, "reports": [r.to_dict() for r in reports]})
    return EXIT_OK if ok else EXIT_FAIL


def cmd_present(args) -> int:
    params = _params(args)
    pres = build_presentation(_label_for(params, args.label), params, literal=args.literal, weak=args.weak)
    _emit(args, export_presentation(pres, args.format))
    return EXIT_OK


_TOKEN = re.compile(r"^x\((\d+),(\d+)\)\^(\d+)$|^H(\d+)\^(\d+)$")


def parse_word(text: str):
    """``"x(2,1)^1 x(1,2)^1 H1^1"`` -> generator symbols (``*`` also separates)."""
    out = []
    for tok in text.replace("*", " ").split():
        mt = _TOKEN.match(tok)
        if not mt:
            raise ParameterError(f"cannot parse word token {tok!r}; use x(i,j)^k or Hi^a")
        if mt.group(1):
            out.append(DividedPower((int(mt.group(1)), int(mt.group(2))), int(mt.group(3))))
        else:
            out.append(BinomialH(int(mt.group(4)), int(mt.group(5))))
    return out


def cmd_rewrite_demo(args) -> int:
    if not is_prime(args.p):
        raise ParameterError(f"--p {args.p} is not prime")
    if args.n < 2:
        raise ParameterError("rewrite-demo needs n >= 2")
    ctx = RewriteContext(args.n, args.p, args.m)
    degrees = [args.d] if args.d is not None else list(range(1, min(ctx.q, 4)))
    for d in degrees:
        if not 0 < d < ctx.q:
            raise ParameterError(f"certification degree d={d} must satisfy 0 < d < q={ctx.q}")
    modules = [TensorRepresentation(args.n, d, 0, Field(args.p)) for d in degrees]
    if args.word is not None:
        try:
            words = [parse_word(args.word)]
            for sym in words[0]:
                ctx.letter(sym)
        except ValueError as exc:
            raise ParameterError(str(exc)) from exc
    else:
        rng = random.Random(args.seed)
        words = [random_word(ctx, rng.randint(0, args.length), rng) for _ in range(args.random)]
    results = []
    for w in words:
        nf = pbw_rewrite(w, ctx)
        cert = all(certify_rewrite(w, nf, mod) for mod in modules)
        results.append({"word": render_word(tuple(w)), "normal_form": nf.to_text(),
                        "terms": nf.to_dict()["terms"], "certified": cert})
    ok = all(r["certified"] for r in results)
    _emit(args, {"context": {"n": args.n, "p": args.p, "m": args.m}, "degrees": degrees,
                 "results": results, "pass": ok})
    return EXIT_OK if ok else EXIT_FAIL


def cmd_counterexample(args) -> int:
    rep = donkin_report()
    if args.format == "table":
        lam = tuple(rep["lambda"])
        lines = [
            f"(n,r,s) = (4,1,1), lambda = {lam}\n",
            f"lambda in pi': {rep['in_pi_prime']}\n",
            f"lambda in pi'': {rep['in_pi_double_prime']}  since {rep['inequality']}\n",
            f"mu = lambda - s(1,1,1,1) = {tuple(rep['mu'])} in Lambda(4,1,1): {rep['mu_in_lambda_rs']}\n",
            f"verdict: {'PASS' if rep['pass'] else 'FAIL'}\n",
        ]
        _emit(args, "".join(lines))
    else:
        _emit(args, rep)
    return EXIT_OK if rep["pass"] else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="schurpres", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sp = sub.add_parser("weights", help="enumerate weight sets")
    _add_params(sp, with_char=False)
    sp.add_argument("--set", choices=["lambda", "lambda_plus", "pi_prime", "pi_double_prime", "nu_prime"])
    sp.add_argument("--format", choices=["json", "table"], default="json")
    sp.add_argument("--output")
    sp.set_defaults(func=cmd_weights)

    sp = sub.add_parser("dims", help="weight counts, Weyl dimension sums and closure dimensions")
    _add_params(sp)
    sp.add_argument("--cap", type=int, default=5000)
    sp.add_argument("--format", choices=["json", "table"], default="json")
    sp.add_argument("--output")
    sp.set_defaults(func=cmd_dims)

    sp = sub.add_parser("verify", help="verify a presentation against the tensor representations")
    sp.add_argument("--preset", help="'desk' runs the built-in parameter grid")
    sp.add_argument("--label", choices=LABELS)
    sp.add_argument("--n", type=int)
    sp.add_argument("--d", type=int)
    sp.add_argument("--r", type=int)
    sp.add_argument("--s", type=int)
    sp.add_argument("--char", type=int, default=0)
    sp.add_argument("--m", type=int)
    sp.add_argument("--literal", action="store_true", help="use the printed ranges and signs verbatim")
    sp.add_argument("--weak", action="store_true", help="subset relations only for |S| <= n/2")
    sp.add_argument("--cap", type=int, default=5000)
    sp.add_argument("--format", choices=["json", "table"], default="json")
    sp.add_argument("--output")
    sp.add_argument("--verbose", action="store_true")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("present", help="build and export a presentation")
    sp.add_argument("--label", choices=LABELS)
    _add_params(sp)
    sp.add_argument("--literal", action="store_true")
    sp.add_argument("--weak", action="store_true")
    sp.add_argument("--format", choices=["json", "text"], default="json")
    sp.add_argument("--output")
    sp.set_defaults(func=cmd_present)

    sp = sub.add_parser("rewrite-demo", help="PBW straightening with matrix certification")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--m", type=int, required=True)
    sp.add_argument("--d", type=int, help="degree of E^(x)d used to certify (default 1..min(q-1,3))")
    sp.add_argument("--word", help="e.g. 'x(2,1)^1 x(1,2)^1 H1^1'")
    sp.add_argument("--random", type=int, default=5, help="number of random words when --word is absent")
    sp.add_argument("--length", type=int, default=6)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--output")
    sp.set_defaults(func=cmd_rewrite_demo)

    sp = sub.add_parser("counterexample", help="the (4,1,1) weight in pi' but not pi''")
    sp.add_argument("--format", choices=["json", "table"], default="table")
    sp.add_argument("--output")
    sp.set_defaults(func=cmd_counterexample)
    return parser


def run(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        if args.command == "verify" and not args.preset and args.n is None:
            raise ParameterError("verify needs --preset desk or explicit parameters")
        return args.func(args)
    except ParameterError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARAM
    except ResourceCapExceeded as exc:
        print(f"resource cap exceeded: {exc}", file=sys.stderr)
        return EXIT_CAP


def main(argv=None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
