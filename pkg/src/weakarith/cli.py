"""Command-line entry point ``weakarith``.

Exit codes: 0 success, 1 an expectation failed (or a requested step was
refuted), 2 parse or validation error, 3 internal invariant breach.
"""

from __future__ import annotations

import argparse
import json
import sys

from .axioms import (
    BezoutPending,
    SoundnessError,
    Undecided,
    bezout_witness,
    normality_check,
    oi_obstruction,
    zr_divide,
)
from .models.chain import (
    ChainError,
    ChainState,
    DivisibilityError,
    InvariantBreach,
    chain_f_step,
    chain_init,
    chain_zhat_step,
    register_prime,
)
from .models.mb import Rejection, mb_admit
from .puiseux import InsufficientTruncation, expand_roots, format_series_pairs, parse_series, parse_series_poly, plug_back_ok, ps_floor
from .scenario import Breach, ScenarioError, dumps, load_scenario, mb_config, parse_field, parse_univariate_rational, run_scenario
from .textforms import ParseError

EXIT_OK, EXIT_EXPECT, EXIT_INPUT, EXIT_BREACH = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def _globals() -> argparse.ArgumentParser:
    g = argparse.ArgumentParser(add_help=False)
    g.add_argument("--out", default=argparse.SUPPRESS, help="write the JSON result here instead of stdout")
    g.add_argument("--depth", type=int, default=argparse.SUPPRESS, help="Puiseux expansion depth (terms per branch)")
    g.add_argument("--nmax", type=int, default=argparse.SUPPRESS, help="largest tracked modulus for chain states")
    g.add_argument("--seed", type=int, default=argparse.SUPPRESS, help="seed for randomized sweeps only")
    return g


def build_parser() -> argparse.ArgumentParser:
    common = _globals()
    parser = _Parser(prog="weakarith", description="Exact constructions of nonstandard models of weak arithmetic.",
                     parents=[common])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    run = sub.add_parser("run", parents=[common], help="run a scenario file")
    run.add_argument("scenario")

    mb = sub.add_parser("mb", help="single checks in the localized polynomial ring")
    mbs = mb.add_subparsers(dest="action", required=True, parser_class=_Parser)

    def model_args(p):
        p.add_argument("--config", help="JSON file with field, S, q (and indeterminates, coefficients)")
        p.add_argument("--field", help="field preset name (sqrt2, cbrt2, rational)")
        p.add_argument("--S", help="comma-separated primes")
        p.add_argument("--q", type=int)

    div = mbs.add_parser("check-div", parents=[common], help="Euclidean division g = n q + r")
    model_args(div)
    div.add_argument("--g", required=True)
    div.add_argument("--n", type=int, required=True)
    nor = mbs.add_parser("check-normality", parents=[common], help="is u/v in the ring given a monic equation")
    model_args(nor)
    nor.add_argument("--u", required=True)
    nor.add_argument("--v", required=True)
    nor.add_argument("--z", action="append", required=True, help="equation coefficient z_i (repeat, in order)")

    ch = sub.add_parser("chain", help="operate on a serialized chain state")
    chs = ch.add_subparsers(dest="action", required=True, parser_class=_Parser)
    init = chs.add_parser("init", parents=[common])
    init.add_argument("--S", required=True)
    init.add_argument("--state", required=True, help="state file to create")
    for name, helptext in (("f-step", "adjoin x_k, y_k for the primes v, w"), ("zhat-step", "adjoin a/n"),
                           ("bezout", "Bezout witness for a, b"), ("register", "register a prime")):
        p = chs.add_parser(name, parents=[common], help=helptext)
        p.add_argument("--state", required=True)
        p.add_argument("--state-out", help="where to write the new state (default: overwrite --state)")
        if name == "f-step":
            p.add_argument("--v")
            p.add_argument("--w")
        elif name == "zhat-step":
            p.add_argument("--a", required=True)
            p.add_argument("--n", type=int, required=True)
        elif name == "bezout":
            p.add_argument("--a", required=True, help="element, or JSON list of factors / [factor, exponent] pairs")
            p.add_argument("--b", required=True)
        else:
            p.add_argument("--element", required=True)

    pu = sub.add_parser("puiseux", help="series roots and integer parts")
    pus = pu.add_subparsers(dest="action", required=True, parser_class=_Parser)
    roots = pus.add_parser("roots", parents=[common])
    roots.add_argument("--poly", required=True, help='polynomial in y with series coefficients, e.g. "y^2 - x"')
    roots.add_argument("-p", type=int, help="degree bound (default: degree of the polynomial)")
    roots.add_argument("--field", help="coefficient field preset")
    fl = pus.add_parser("floor", parents=[common])
    fl.add_argument("--series", required=True, help='pairs "[(1/2,1),(0,1/2)]" or an expression in x')
    fl.add_argument("--field", help="coefficient field preset")

    oi = sub.add_parser("oi", help="open-induction obstruction analysis")
    ois = oi.add_subparsers(dest="action", required=True, parser_class=_Parser)
    ob = ois.add_parser("obstruct", parents=[common])
    ob.add_argument("-P", required=True, help='ascending coefficients "-2,0,1" or a polynomial in t')
    ob.add_argument("-p", type=int, required=True)
    ob.add_argument("--certs", help="comma-separated outside/inside per real root, increasing order")
    return parser


def _emit(args, obj) -> None:
    text = dumps(obj)
    out = getattr(args, "out", None)
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _load_config(args):
    params = {}
    if args.config:
        with open(args.config, encoding="utf-8") as fh:
            params = json.load(fh)
    if args.field:
        params["field"] = args.field
    if args.S:
        params["S"] = args.S
    if args.q is not None:
        params["q"] = args.q
    multi = int(params.get("indeterminates", 1)) > 1
    return mb_config(params, multi=multi)


def _read_state(path) -> ChainState:
    with open(path, encoding="utf-8") as fh:
        state = ChainState.loads(fh.read())
    state.assert_invariants()
    return state


def _write_state(args, state: ChainState) -> None:
    with open(args.state_out or args.state, "w", encoding="utf-8") as fh:
        fh.write(state.dumps())


def _factor_arg(text):
    text = text.strip()
    if text.startswith("["):
        return json.loads(text)
    return text


def _dispatch(args) -> int:
    cmd = args.command
    if cmd == "run":
        report, code = run_scenario(
            load_scenario(args.scenario),
            seed=getattr(args, "seed", 0),
            depth=getattr(args, "depth", None),
            nmax=getattr(args, "nmax", None),
        )
        _emit(args, report)
        return code

    if cmd == "mb":
        cfg = _load_config(args)
        fmt_vars = cfg.variables

        def elem(text):
            res = mb_admit(text, cfg)
            if isinstance(res, Rejection):
                raise ValueError(f"{text!r} is not an element of the model: {res.reason}")
            return res

        if args.action == "check-div":
            res = zr_divide(cfg, elem(args.g), args.n)
            rep = res.report(lambda e: str(e))
            _emit(args, rep.to_json())
            return EXIT_OK
        verdict = normality_check(cfg, elem(args.u), elem(args.v), [elem(z) for z in args.z])
        _emit(args, verdict.report(str, {"u": args.u, "v": args.v, "zs": args.z, "variables": fmt_vars}).to_json())
        return EXIT_OK

    if cmd == "chain":
        if args.action == "init":
            from .scenario import _prime_set

            state = chain_init(_prime_set(args.S), getattr(args, "nmax", None) or 24)
            with open(args.state, "w", encoding="utf-8") as fh:
                fh.write(state.dumps())
            _emit(args, {"outcome": "ok", "moduli": state.moduli})
            return EXIT_OK
        state = _read_state(args.state)
        if args.action == "f-step":
            if args.v is not None and args.w is not None:
                for e in (args.v, args.w):
                    state = register_prime(state, e)
            state = chain_f_step(state, args.v, args.w)
            state.assert_invariants()
            _write_state(args, state)
            rec = state.bezout_log[-1] if args.v is not None else {"k": 1, "stage": state.stage}
            _emit(args, {"outcome": "ok", **rec})
            return EXIT_OK
        if args.action == "zhat-step":
            try:
                state, e = chain_zhat_step(state, args.a, args.n)
            except DivisibilityError as exc:
                _emit(args, {"outcome": "refuted", "residue": exc.residue, "n": exc.n, "element": exc.element})
                return EXIT_EXPECT
            state.assert_invariants()
            _write_state(args, state)
            _emit(args, {"outcome": "ok", "element": state.fmt(e.poly), "stage": state.stage})
            return EXIT_OK
        if args.action == "register":
            state = register_prime(state, args.element)
            _write_state(args, state)
            entry, _ = state.find_prime(args.element)
            _emit(args, {"outcome": "registered", "element": state.fmt(entry.poly), "certificate": entry.certificate})
            return EXIT_OK
        res = bezout_witness(state, _factor_arg(args.a), _factor_arg(args.b))
        if isinstance(res, BezoutPending):
            _emit(args, {"outcome": "pending", "pair": list(res.pair)})
            return EXIT_OK
        f = state.fmt
        _emit(args, {"outcome": "witness", "z": f(res.z), "t": f(res.t), "d": f(res.d), "audit": res.audit})
        return EXIT_OK

    if cmd == "puiseux":
        field = parse_field(args.field or "rational")
        depth = getattr(args, "depth", None) or 6
        if args.action == "roots":
            f = parse_series_poly(args.poly, field)
            roots = expand_roots(f, args.p or max(f.degree, 1), depth)
            _emit(args, {
                "outcome": "ok",
                "roots": [str(r.series) for r in roots],
                "pairs": [format_series_pairs(r.series) for r in roots],
                "exact": [r.exact for r in roots],
                "plug_back": [plug_back_ok(f, r) for r in roots],
            })
            return EXIT_OK
        s = parse_series(args.series, field)
        try:
            rep = ps_floor(s)
        except InsufficientTruncation as exc:
            _emit(args, {"outcome": "insufficient_truncation", "reason": str(exc)})
            return EXIT_EXPECT
        _emit(args, {**rep.to_json(), "outcome": "ok", "integer_part": format_series_pairs(rep.integer_part),
             "remainder": format_series_pairs(rep.remainder)})
        return EXIT_OK

    if cmd == "oi":
        certs = None
        if args.certs:
            certs = [c.strip() or None for c in args.certs.split(",")]
        rep = oi_obstruction(parse_univariate_rational(args.P), args.p, certs)
        _emit(args, rep.to_json())
        return EXIT_OK
    raise ScenarioError(f"unknown command {cmd!r}")


def _glue_negative_values(argv):
    # "-P -2,0,1" would otherwise be read as two options
    out = []
    it = iter(argv)
    for tok in it:
        if tok in ("-P", "-p", "--n", "--g"):
            nxt = next(it, None)
            if nxt is not None and len(nxt) > 1 and nxt[0] == "-" and (nxt[1].isdigit() or nxt[1] in "./"):
                out.append(f"{tok}={nxt}")
                continue
            out.append(tok)
            if nxt is not None:
                out.append(nxt)
            continue
        out.append(tok)
    return out


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(_glue_negative_values(sys.argv[1:] if argv is None else list(argv)))
    try:
        return _dispatch(args)
    except (Breach, SoundnessError, InvariantBreach) as exc:
        print(f"invariant breach: {exc}", file=sys.stderr)
        return EXIT_BREACH
    except (ScenarioError, ParseError, json.JSONDecodeError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except Undecided as exc:
        print(f"undecided: {exc}", file=sys.stderr)
        return EXIT_EXPECT
    except (ChainError, ValueError, ZeroDivisionError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
