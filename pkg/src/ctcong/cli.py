"""Command-line frontend.

Exit codes: 0 all checks pass, 1 a counterexample was found,
2 usage / parse / hypothesis errors.
"""

import argparse
import json
import sys

from . import congruences, polytope as polytope_mod, schemes
from .errors import CtcongError, HypothesisViolation, ParseError
from .laurent import LaurentPoly
from .parsing import parse
from .report import CongruenceReport
from .sequences import CtSpec, ct_sequence, oracle_S


def _parse_vars(text):
    return tuple(v.strip() for v in text.split(",") if v.strip())


def _parse_primes(text):
    out = []
    for tok in text.split(","):
        p = int(tok)
        if p < 2 or any(p % d == 0 for d in range(2, int(p ** 0.5) + 1)):
            raise CtcongError(f"{p} is not prime")
        out.append(p)
    return out


def _poly(args, which, default_one=False):
    text = getattr(args, which)
    if text is None:
        if default_one:
            return LaurentPoly.constant(len(args.vars_tuple), 1)
        raise CtcongError(f"--{which} is required")
    return parse(text, args.vars_tuple)


def _signed(value, m, signed):
    if signed and value > m // 2:
        return value - m
    return value


def _emit_report(report, out):
    out.write(json.dumps(report.to_dict(), sort_keys=False) + "\n")


def _report_exit(reports):
    if any(r.verdict == "inapplicable" for r in reports):
        return 2
    return 0 if all(r.passed for r in reports) else 1


def _add_common(sub, q_default_one=False, primes=True):
    sub.add_argument("--vars", required=True,
                     help="comma-separated variable declaration, e.g. x,y")
    sub.add_argument("--P", required=True, help="expression for P")
    sub.add_argument("--Q", default=None, help="expression for Q (default 1)")
    if primes:
        sub.add_argument("--primes", required=True,
                         help="comma-separated primes")
    sub.add_argument("--n-max", type=int, required=True)


def build_parser():
    ap = argparse.ArgumentParser(
        prog="ctcong",
        description="constant-term sequences, congruence sweeps, and "
                    "linear p-schemes")
    ap.add_argument("--signed", action="store_true",
                    help="print balanced residues instead of 0..m-1")
    sp = ap.add_subparsers(dest="command", required=True)

    ev = sp.add_parser("eval", help="TSV window of ct[P^n Q]")
    ev.add_argument("--vars", required=True)
    ev.add_argument("--P", required=True)
    ev.add_argument("--Q", default=None)
    ev.add_argument("--n-max", type=int, required=True)
    ev.add_argument("--mod", type=int, default=None)

    lu = sp.add_parser("lucas", help="verify plain Lucas congruences")
    _add_common(lu)

    dw = sp.add_parser("dwork", help="verify Dwork congruences mod p^r")
    dw.add_argument("--vars", required=True)
    dw.add_argument("--P", required=True)
    dw.add_argument("--primes", required=True)
    dw.add_argument("--r", type=int, required=True)
    dw.add_argument("--m-max", type=int, required=True)
    dw.add_argument("--n-max", type=int, required=True)

    gl = sp.add_parser("glc", help="verify the two-case generalized "
                                   "Lucas congruence")
    _add_common(gl)

    gs = sp.add_parser("glc-simple", help="verify the simplified "
                                          "generalized Lucas congruence")
    _add_common(gs)

    sc = sp.add_parser("scheme", help="linear p-scheme operations")
    scsp = sc.add_subparsers(dest="scheme_command", required=True)

    ss = scsp.add_parser("synth", help="synthesize a scheme (JSON)")
    ss.add_argument("--vars", required=True)
    ss.add_argument("--P", required=True)
    ss.add_argument("--Q", default=None)
    ss.add_argument("--prime", type=int, required=True)
    ss.add_argument("--r", type=int, default=1)
    ss.add_argument("--max-states", type=int, default=64)
    ss.add_argument("--out", default=None, help="output file (default stdout)")

    se = scsp.add_parser("eval", help="evaluate a scheme file (TSV)")
    se.add_argument("--scheme", required=True)
    se.add_argument("--n-max", type=int, required=True)

    sv = scsp.add_parser("verify", help="verify a scheme file against "
                                        "a constant-term spec")
    sv.add_argument("--scheme", required=True)
    sv.add_argument("--vars", required=True)
    sv.add_argument("--P", required=True)
    sv.add_argument("--Q", default=None)
    sv.add_argument("--n-max", type=int, required=True)

    po = sp.add_parser("polytope", help="Newton polytope report (JSON)")
    po.add_argument("--vars", required=True)
    po.add_argument("--P", required=True)

    ca = sp.add_parser("catalan", help="Catalan residues (TSV)")
    ca.add_argument("--prime", type=int, required=True)
    ca.add_argument("--n-max", type=int, required=True)
    ca.add_argument("--method", default="direct",
                    choices=["direct", "digits", "step", "mod3", "mod5"])

    nd = sp.add_parser("never-divides",
                       help="primes never dividing the hexagonal sum S(n)")
    nd.add_argument("--bound", type=int, required=True)
    return ap


def run(args, out=sys.stdout):
    cmd = args.command
    if hasattr(args, "vars"):
        args.vars_tuple = _parse_vars(args.vars)

    if cmd == "eval":
        spec = CtSpec(_poly(args, "P"), _poly(args, "Q", default_one=True))
        window = ct_sequence(spec, args.n_max, mod=args.mod)
        out.write("n\tvalue\n")
        for n, v in enumerate(window.values):
            if args.mod:
                v = _signed(v, args.mod, args.signed)
            out.write(f"{n}\t{v}\n")
        return 0

    if cmd in ("lucas", "glc", "glc-simple"):
        P = _poly(args, "P")
        Q = _poly(args, "Q", default_one=True)
        reports = []
        for p in _parse_primes(args.primes):
            if cmd == "lucas":
                rep = congruences.lucas_verify(CtSpec(P, Q), p, args.n_max)
            elif cmd == "glc":
                rep = congruences.glc_verify(P, Q, p, args.n_max)
            else:
                rep = congruences.glc_simple_verify(P, Q, p, args.n_max)
            _emit_report(rep, out)
            reports.append(rep)
        return _report_exit(reports)

    if cmd == "dwork":
        P = _poly(args, "P")
        reports = []
        for p in _parse_primes(args.primes):
            rep = congruences.dwork_verify(
                CtSpec(P), p, args.r, args.m_max, args.n_max)
            _emit_report(rep, out)
            reports.append(rep)
        return _report_exit(reports)

    if cmd == "scheme":
        return _run_scheme(args, out)

    if cmd == "polytope":
        P = _poly(args, "P")
        np_data = polytope_mod.newton_polytope(P)
        interior = polytope_mod.interior_integral_points(np_data)
        payload = {
            "dimension": np_data.d,
            "full_dimensional": np_data.full_dimensional,
            "vertices": [list(v) for v in np_data.vertices],
            "facets": [{"normal": list(n), "offset": off}
                       for n, off in np_data.facets],
            "interior_integral_points": [list(v) for v in interior],
            "origin_only_interior": interior == [(0,) * np_data.d],
            "support_in_unit_box": polytope_mod.support_in_unit_box(P),
        }
        out.write(json.dumps(payload, indent=2) + "\n")
        return 0

    if cmd == "catalan":
        return _run_catalan(args, out)

    if cmd == "never-divides":
        primes = congruences.never_divisible_primes(
            lambda n: oracle_S(n), args.bound)
        out.write(json.dumps(primes) + "\n")
        return 0

    raise CtcongError(f"unknown command {cmd!r}")


def _run_scheme(args, out):
    sub = args.scheme_command
    if sub == "synth":
        args.vars_tuple = _parse_vars(args.vars)
        spec = CtSpec(_poly(args, "P"), _poly(args, "Q", default_one=True))
        sch = schemes.synthesize(spec, args.prime, args.r,
                                 max_states=args.max_states)
        text = schemes.scheme_to_json(sch)
        if args.out:
            with open(args.out, "w") as fh:
                fh.write(text)
        else:
            out.write(text)
        return 0
    with open(args.scheme) as fh:
        sch = schemes.scheme_from_json(fh.read())
    if sub == "eval":
        out.write("n\tvalue\n")
        for n in range(args.n_max + 1):
            v = schemes.evaluate(sch, n)
            v = _signed(v, sch.modulus, args.signed)
            out.write(f"{n}\t{v}\n")
        return 0
    if sub == "verify":
        args.vars_tuple = _parse_vars(args.vars)
        spec = CtSpec(_poly(args, "P"), _poly(args, "Q", default_one=True))
        rep = schemes.verify(sch, spec, args.n_max)
        _emit_report(rep, out)
        return _report_exit([rep])
    raise CtcongError(f"unknown scheme command {sub!r}")


def _run_catalan(args, out):
    p, method = args.prime, args.method
    if method == "mod3" and p != 3:
        raise CtcongError("--method mod3 requires --prime 3")
    if method == "mod5" and p != 5:
        raise CtcongError("--method mod5 requires --prime 5")

    if method == "direct":
        fn = lambda n: congruences._catalan_exact(n) % p
    elif method == "digits":
        fn = lambda n: congruences.catalan_digit_formula(n, p)
    elif method == "step":
        fn = lambda n: congruences.catalan_via_step(n, p)
    elif method == "mod3":
        fn = congruences.catalan_mod3
    else:
        fn = congruences.catalan_mod5

    out.write("n\tvalue\n")
    for n in range(args.n_max + 1):
        out.write(f"{n}\t{_signed(fn(n), p, args.signed)}\n")
    return 0


def main(argv=None):
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        code = run(args)
    except (ParseError, HypothesisViolation) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except CtcongError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return code


if __name__ == "__main__":
    sys.exit(main())
