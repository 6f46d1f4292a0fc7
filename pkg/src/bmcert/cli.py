"""Command-line interface.

Exit codes: 0 success / verdict true, 3 verdict false, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import arith, certify
from .cohomo import h2, pushforward_coefficients, restriction
from .extensions import classify_extensions
from .finab import FinAb, FinAbHom
from .groups import GroupError, find_central_derived_cyclic, prime_power
from .repinduce import determinant_twist, induce_character, verify_sl_faithful

EXIT_OK, EXIT_USAGE, EXIT_FALSE = 0, 2, 3


class UsageError(ValueError):
    pass


def _emit(obj: dict, path: str | None, quiet: bool = False) -> None:
    text = json.dumps(obj, indent=1, sort_keys=True)
    if path:
        Path(path).write_text(text + "\n")
    if not quiet:
        print(text)


def _coeffs(args) -> FinAb:
    if args.coeffs:
        return FinAb(int(x) for x in args.coeffs.split(","))
    if args.p is None or args.n is None:
        raise UsageError("give --coeffs or both -p and -n")
    return FinAb([args.p**args.n])


def _p_of(G, p: int | None) -> int:
    if p is not None:
        return p
    pp = prime_power(G.order)
    if pp is None:
        raise UsageError("group order is not a prime power; give -p")
    return pp[0]


def cmd_h2(args) -> int:
    G = certify.resolve_group(args.group)
    A = _coeffs(args)
    H = h2(G, A)
    _emit({"group": args.group, "coeffs": A.to_json(), "order": H.order, **H.to_json()}, args.json)
    return EXIT_OK


def cmd_extensions(args) -> int:
    G = certify.resolve_group(args.group)
    A = _coeffs(args)
    H = h2(G, A)
    types = classify_extensions(G, A)
    out = {
        "group": args.group,
        "coeffs": A.to_json(),
        "h2": H.structure.to_json(),
        "types": [
            {"classes": [list(c) for c in t.classes], "split": t.split, "extension": t.extension.to_json(H)}
            for t in types
        ],
    }
    _emit(out, args.json)
    return EXIT_OK


def cmd_restrict(args) -> int:
    G = certify.resolve_group(args.group)
    p = _p_of(G, args.p)
    n = args.n if args.n is not None else prime_power(G.order)[1]
    Z = find_central_derived_cyclic(G, p)
    H = h2(G, FinAb([p**n]))
    res = restriction(H, Z)
    push = pushforward_coefficients(res.target, FinAbHom.cyclic(p**n, p ** (n + 1), p))
    composite = [push(res(c)).tolist() for c in H.classes()]
    out = {
        "group": args.group,
        "z_members": list(Z.members),
        "restriction": res.to_json(),
        "pushforward": push.to_json(),
        "pushed_restrictions_zero": all(not any(v) for v in composite),
    }
    _emit(out, args.json)
    return EXIT_OK if out["pushed_restrictions_zero"] else EXIT_FALSE


def cmd_induce(args) -> int:
    G = certify.resolve_group(args.group)
    p = _p_of(G, args.p)
    Z = find_central_derived_cyclic(G, p)
    rho = induce_character(G, Z, args.k)
    report = verify_sl_faithful(rho, Z, p)
    out = {"group": args.group, "z_members": list(Z.members), "report": report.to_json(), "representation": rho.to_json()}
    if not report.determinant_one:
        out["twist"] = determinant_twist(rho).to_json()
    _emit(out, args.json, quiet=args.quiet)
    if args.quiet:
        print(json.dumps(report.checks()))
    return EXIT_OK if report.passed else EXIT_FALSE


def cmd_classgroup(args) -> int:
    C = arith.class_group(args.disc)
    out = C.to_json()
    if args.s_primes:
        S = arith.s_class_group(C, args.s_primes)
        out["s_class_group"] = S.to_json()
        if args.p is not None:
            out["s_class_group"]["mod_p"] = S.mod(args.p).to_json()
    _emit(out, args.json)
    return EXIT_OK


def cmd_irregular(args) -> int:
    if args.below is not None:
        primes = [q for q in range(3, args.below) if all(q % d for d in range(2, int(q**0.5) + 1))]
        out = {"below": args.below, "irregular": [q for q in primes if arith.is_irregular(q)[0]]}
        _emit(out, args.json)
        return EXIT_OK
    if args.p is None:
        raise UsageError("give -p or --below")
    out = arith.irregularity_json(args.p)
    _emit(out, args.json)
    return EXIT_OK


def _finish(cert: certify.Certificate, args) -> int:
    if args.json:
        Path(args.json).write_text(cert.dumps() + "\n")
    print(cert.summary())
    return EXIT_OK if cert.verdict else EXIT_FALSE


def cmd_certify_af(args) -> int:
    cert = certify.certify_strong_approx(args.group, args.p, args.n, group_level=not args.class_level_only)
    return _finish(cert, args)


def cmd_certify_hasse(args) -> int:
    if (args.quadratic is None) == (args.cyclotomic is None):
        raise UsageError("give exactly one of --quadratic D or --cyclotomic N")
    field = {"quadratic": args.quadratic} if args.quadratic is not None else {"cyclotomic": args.cyclotomic}
    cert = certify.certify_integral_hasse(
        args.group, args.p, args.n, field, args.s_primes or [], group_level=not args.class_level_only
    )
    return _finish(cert, args)


def cmd_verify_q8(args) -> int:
    return _finish(certify.verify_q8_proposition(), args)


def cmd_replay(args) -> int:
    data = json.loads(Path(args.certificate).read_text())
    result = certify.replay(data)
    ok = True
    for name, (recorded, replayed) in result.items():
        same = recorded == replayed
        ok &= same
        print(f"{'ok' if same else 'MISMATCH'} {name}: recorded {recorded}, replayed {replayed}")
    return EXIT_OK if ok else EXIT_FALSE


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="bmcert", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, group=True, pn=True, json_out=True):
        if group:
            p.add_argument("--group", required=True, help="catalog name or JSON file")
        if pn:
            p.add_argument("-p", type=int, help="prime")
            p.add_argument("-n", type=int, help="exponent")
        if json_out:
            p.add_argument("--json", metavar="PATH", help="write JSON output to PATH")
        return p

    p = common(sub.add_parser("h2", help="H^2(G, A) with trivial action"))
    p.add_argument("--coeffs", help="comma-separated moduli of A (default Z/p^n)")
    p.set_defaults(func=cmd_h2)

    p = common(sub.add_parser("extensions", help="central extensions by isomorphism type"))
    p.add_argument("--coeffs", help="comma-separated moduli of A (default Z/p^n)")
    p.set_defaults(func=cmd_extensions)

    p = common(sub.add_parser("restrict", help="restriction to Z followed by Z/p^n -> Z/p^(n+1)"))
    p.set_defaults(func=cmd_restrict)

    p = common(sub.add_parser("induce", help="induced representation and SL checks"), pn=False)
    p.add_argument("-p", type=int, help="prime")
    p.add_argument("-k", type=int, default=1, help="character exponent (unit mod |Z|)")
    p.add_argument("--quiet", action="store_true", help="print only the check summary")
    p.set_defaults(func=cmd_induce)

    p = common(sub.add_parser("classgroup", help="class group of an imaginary quadratic field"), group=False, pn=False)
    p.add_argument("--disc", type=int, required=True, help="fundamental discriminant D < 0")
    p.add_argument("--s-primes", type=int, nargs="*", default=[], help="primes whose classes are removed")
    p.add_argument("-p", type=int, help="report the S-class group modulo p")
    p.set_defaults(func=cmd_classgroup)

    p = common(sub.add_parser("irregular", help="Kummer criterion"), group=False, pn=False)
    p.add_argument("-p", type=int, help="odd prime")
    p.add_argument("--below", type=int, help="list irregular primes below this bound")
    p.set_defaults(func=cmd_irregular)

    for name, func, help_ in (
        ("certify-af", cmd_certify_af, "strong approximation hypotheses certificate"),
        ("certify-hasse", cmd_certify_hasse, "integral Hasse principle hypotheses certificate"),
    ):
        p = sub.add_parser(name, help=help_)
        p.add_argument("--group", required=True, help="catalog name or JSON file")
        p.add_argument("-p", type=int, required=True, help="prime")
        p.add_argument("-n", type=int, required=True, help="|H| = p^n")
        p.add_argument("--json", metavar="PATH", help="write the certificate to PATH")
        p.add_argument("--class-level-only", action="store_true", help="skip the explicit group-level splitting")
        if name == "certify-hasse":
            p.add_argument("--quadratic", type=int, metavar="D", help="imaginary quadratic field of discriminant D")
            p.add_argument("--cyclotomic", type=int, metavar="N", help="cyclotomic field of conductor N")
            p.add_argument("--s-primes", type=int, nargs="*", default=[], help="rational primes below S")
        p.set_defaults(func=func)

    p = sub.add_parser("verify-q8", help="central extensions of Q8 by Z/8")
    p.add_argument("--json", metavar="PATH", help="write the certificate to PATH")
    p.set_defaults(func=cmd_verify_q8)

    p = sub.add_parser("replay", help="re-verify a certificate from its witnesses")
    p.add_argument("certificate", help="certificate JSON file")
    p.set_defaults(func=cmd_replay)
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (
        UsageError,
        certify.UnresolvableGroup,
        certify.FieldSpecError,
        GroupError,
        arith.NotFundamental,
        arith.NotImaginary,
        arith.InertPrime,
        arith.BadDegree,
        ValueError,
        OSError,
    ) as exc:
        print(f"bmcert: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
