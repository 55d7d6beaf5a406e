"""Command line: verify case files, print Stickelberger elements, compute cohomology."""
import argparse
import json
import sys

from . import errors
from .casefile import load_case
from .checks import verify
from .cohomology import cohomology_group, homology_group, tate_group, tor_sign
from .gmodule import permutation_module, regular, sign_module, trivial
from .groups import FiniteAbelianGroup
from .selftest import run as run_selftest
from .stickelberger import kubota_oracle_theta, theta_for_conductor

EXIT_PASS, EXIT_FAIL, EXIT_INVALID, EXIT_PRECISION = 0, 2, 3, 4

# everything else the package raises is a problem with the input; precision is handled first
INVALID = (errors.AlgebraError, ValueError)


def _ints(text):
    return [int(x) for x in text.split(",") if x.strip()] if text else []


def _dump(obj):
    return json.dumps(obj, indent=2, sort_keys=True)


def _text_report(report):
    lines = [f"{report['case']}: {report['verdict'].upper()}"]
    for name, section in sorted(report["checks"].items()):
        line = f"  {name}: {section['verdict']}"
        if "reason" in section:
            line += f" ({section['reason']})"
        lines.append(line)
    for w in report.get("warnings", []):
        lines.append(f"  warning: {w}")
    return "\n".join(lines)


def cmd_verify(args):
    reports, code = [], EXIT_PASS
    for path in args.cases:
        try:
            case = load_case(path, strict_provenance=args.strict_provenance)
            report = verify(case, p=args.prime, precision=args.precision)
            status = EXIT_PASS if report["verdict"] == "pass" else EXIT_FAIL
        except errors.PrecisionExhausted as err:
            report = {"case": path, "verdict": "error", "error": type(err).__name__, "reason": str(err),
                      "checks": {}}
            status = EXIT_PRECISION
        except (FileNotFoundError, *INVALID) as err:
            report = {"case": path, "verdict": "error", "error": type(err).__name__, "reason": str(err),
                      "checks": {}}
            status = EXIT_INVALID
        reports.append(report)
        code = max(code, status)
    if args.report == "json":
        print(_dump(reports if len(reports) > 1 else reports[0]))
    else:
        for r in reports:
            if r["verdict"] == "error":
                print(f"{r['case']}: ERROR {r['error']}: {r['reason']}")
            else:
                print(_text_report(r))
    return code


def _format_element(el):
    G = el.group
    terms = []
    for g, a in zip(G.elements, el.coeffs):
        if a:
            terms.append(f"{a}*{list(g)}")
    return " + ".join(terms) or "0"


def cmd_theta(args):
    deplete, smooth = _ints(args.deplete), _ints(args.smooth)
    kernel = tuple(_ints(args.kernel))
    fourier = theta_for_conductor(args.conductor, deplete, smooth, kernel, t=args.t, p=args.prime)
    ramified = [q for q in range(2, args.conductor + 1)
                if args.conductor % q == 0 and all(q % r for r in range(2, q))]
    oracle = kubota_oracle_theta(args.conductor, sorted(set(deplete) | set(ramified)), smooth, kernel,
                                 t=args.t, p=args.prime)
    out = {
        "conductor": args.conductor,
        "group": {"invariants": list(fourier.group.invariants), "c": list(fourier.group.c)},
        "S": list(fourier.S),
        "T": list(fourier.T),
        "l_value_assembly": _format_element(fourier.element),
        "partial_zeta": _format_element(oracle.element),
        "agree": fourier.element == oracle.element,
        "integral": fourier.integral,
        "dr_condition": fourier.dr_condition,
    }
    if args.report == "json":
        print(_dump(out))
    else:
        for k in ("conductor", "group", "S", "T", "l_value_assembly", "partial_zeta", "agree",
                  "integral", "dr_condition"):
            print(f"{k}: {out[k]}")
    return EXIT_PASS if out["agree"] else EXIT_FAIL


def _module(G, spec):
    kind, _, arg = spec.partition(":")
    if kind == "trivial":
        return trivial(G, (int(arg or 0),))
    if kind == "sign":
        return sign_module(G, (int(arg or 0),))
    if kind == "regular":
        return regular(G, 1, int(arg or 0))
    if kind == "perm":
        gens = [tuple(_ints(g)) for g in arg.split(";") if g]
        return permutation_module(G, G.subgroup(gens))[0]
    raise argparse.ArgumentTypeError(f"unknown module {spec!r}")


def cmd_cohomology(args):
    G = FiniteAbelianGroup(_ints(args.group), tuple(_ints(args.c)) if args.c else None)
    M = _module(G, args.module)
    i = args.degree
    if args.kind == "tate":
        A = tate_group(M, i)
    elif args.kind == "cohomology":
        A = cohomology_group(M, i)
    elif args.kind == "homology":
        A = homology_group(M, i)
    else:
        A = tor_sign(M, args.kind[-1], i)
    inv = A.invariants()
    if args.report == "json":
        print(_dump({"group": list(G.invariants), "module": args.module, "kind": args.kind,
                     "degree": i, "invariants": inv}))
    else:
        print(" x ".join("Z" if d == 0 else f"Z/{d}" for d in inv) or "0")
    return EXIT_PASS


def cmd_selftest(args):
    result = run_selftest(args.seed, args.draws)
    if args.report == "json":
        print(_dump({k: {"draws": v["draws"], "failures": v["failures"]} for k, v in result.items()}))
    else:
        for name, r in result.items():
            print(f"{name}: {r['draws'] - r['failures']}/{r['draws']} passed in {r['seconds']} s")
    return EXIT_PASS if all(r["failures"] == 0 for r in result.values()) else EXIT_FAIL


def build_parser():
    parser = argparse.ArgumentParser(prog="brumer-stark", description=__doc__)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--precision", type=int, default=None, help="p-adic working precision")
    common.add_argument("--prime", type=int, default=None, help="the prime p")
    common.add_argument("--report", choices=["json", "text"], default="text")
    common.add_argument("--strict-provenance", action="store_true",
                        help="reject case files with unprovenanced numbers")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", parents=[common], help="run every applicable check on case files")
    p.add_argument("cases", nargs="+")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("theta", parents=[common], help="Stickelberger element by both assembly paths")
    p.add_argument("--conductor", type=int, required=True)
    p.add_argument("--deplete", default="", help="comma-separated primes added to S")
    p.add_argument("--smooth", default="", help="comma-separated primes forming T")
    p.add_argument("--kernel", default="", help="comma-separated residues generating the kernel")
    p.add_argument("--t", type=int, default=0)
    p.set_defaults(func=cmd_theta)

    p = sub.add_parser("cohomology", parents=[common], help="cohomology of a small G-module")
    p.add_argument("--group", required=True, help="invariants, e.g. 2,4")
    p.add_argument("--c", default="", help="the involution as an exponent vector")
    p.add_argument("--module", default="trivial",
                   help="trivial[:n], sign[:n], regular[:n] or perm:g1;g2")
    p.add_argument("--degree", type=int, default=0)
    p.add_argument("--kind", choices=["tate", "cohomology", "homology", "tor-", "tor+"], default="tate")
    p.set_defaults(func=cmd_cohomology)

    p = sub.add_parser("selftest", parents=[common], help="randomized invariant suite")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--draws", type=int, default=10)
    p.set_defaults(func=cmd_selftest)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except errors.PrecisionExhausted as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_PRECISION
    except INVALID as err:
        print(f"error: {type(err).__name__}: {err}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
