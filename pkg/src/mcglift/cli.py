"""Command-line entry points.

Subcommands: enumerate (homomorphism/epimorphism counts), forge (cover
certificates), search (degree sweep), alpha (restriction suites on a
characteristic cover).  All output is deterministic for a fixed seed and
configuration; timing fields are the only exception, and they are kept in a
separate key so certificates can be compared byte-for-byte without them.

Exit codes: 0 completed (even when a certificate is INVALID), 1 usage
error, 2 budget exceeded, 3 internal invariant breach.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import __version__
from .autos import AutError, identity_auto, standard_autgens
from .cosets import (
    CosetError,
    alpha_apply,
    certified_homology_table,
    expand,
    inner_compatibility_holds,
    schreier_generators,
    verify_finite_index_containment,
    verify_injectivity_mechanism,
)
from .forge import (
    ForgeError,
    forge_certificate_hall,
    forge_certificate_s3,
    minimal_degree_search,
)
from .perm import EnumerationBoundExceeded, PermError
from .quotients import (
    QuotientError,
    count_homs_oracle,
    enumerate_homs,
    get_target,
)
from .words import SurfacePresentation, WordError

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_BUDGET = 2
EXIT_BREACH = 3

BUDGET_PROFILES = {
    "desk": {"tuples": 10**7, "points": 4000, "enum": 10**5},
    "default": {"tuples": 10**8, "points": 30000, "enum": 10**6},
    "wide": {"tuples": 5 * 10**8, "points": 120000, "enum": 5 * 10**6},
}
BUDGET_ENV = "MCGLIFT_BUDGET_PROFILE"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _genus(value):
    g = int(value)
    if g < 2:
        raise argparse.ArgumentTypeError(
            f"genus must be >= 2 (closed hyperbolic surfaces), got {g}")
    return g


def build_parser():
    parser = _Parser(
        prog="mcglift",
        description="Finite covers of closed surfaces from finite quotients"
                    " of their fundamental groups, with lifting-condition"
                    " certificates.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--genus", type=_genus, default=2)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--out", type=str, default=None)
        p.add_argument("--budget-tuples", type=int, default=None)
        p.add_argument("--budget-points", type=int, default=None)
        p.add_argument("--budget-enum", type=int, default=None)

    p = sub.add_parser("enumerate",
                       help="count homomorphisms and epimorphisms")
    common(p)
    p.add_argument("--target", choices=("s3", "c2", "a5", "psl2"),
                   required=True)
    p.add_argument("--prime", type=int, default=None)

    p = sub.add_parser("forge", help="forge a cover certificate")
    common(p)
    p.add_argument("--route", choices=("s3", "hall"), default="s3")
    p.add_argument("--prime", type=int, default=5)
    p.add_argument("--collection", type=int, default=2)
    p.add_argument("--truncate-k", type=int, default=None)

    p = sub.add_parser("search", help="sweep routes for small cover degrees")
    common(p)
    p.add_argument("--route", choices=("s3", "hall", "all"), default="all")
    p.add_argument("--budget", type=int, default=0,
                   help="number of forge jobs to run")

    p = sub.add_parser("alpha",
                       help="restriction suites on a characteristic cover")
    common(p)
    p.add_argument("--cover", type=str, default="homology2")
    p.add_argument("--check",
                   choices=("all", "hom-law", "inner", "containment",
                            "injectivity"),
                   default="all")
    return parser


def resolve_budgets(args):
    profile = BUDGET_PROFILES.get(
        os.environ.get(BUDGET_ENV, "default"), BUDGET_PROFILES["default"])
    return {
        "tuples": args.budget_tuples or profile["tuples"],
        "points": args.budget_points or profile["points"],
        "enum": args.budget_enum or profile["enum"],
    }


def _emit_json(payload, path):
    text = json.dumps(payload, sort_keys=True, indent=2)
    if path:
        with open(path, "w") as f:
            f.write(text + "\n")
    return text


def cmd_enumerate(args):
    budgets = resolve_budgets(args)
    target = get_target(args.target, prime=args.prime)
    homs = enumerate_homs(args.genus, target, budget=budgets["tuples"])
    epis = [h for h in homs if h.is_surjective()]
    try:
        oracle = count_homs_oracle(args.genus, target)
    except QuotientError:
        oracle_note = ""
    else:
        if oracle != len(homs):
            raise RuntimeError(
                f"enumeration found {len(homs)} but the character count says"
                f" {oracle}")
        oracle_note = f", oracle: {oracle}"
    print(f"homs: {len(homs)}, epis: {len(epis)}{oracle_note}")
    if args.out:
        listing = {
            "genus": args.genus,
            "target": target.name,
            "homs": len(homs),
            "epis": len(epis),
            "epi_images": [[p.cycle_string() for p in h.images]
                           for h in epis],
        }
        _emit_json(listing, args.out)
    return EXIT_OK


def cmd_forge(args):
    budgets = resolve_budgets(args)
    if args.route == "s3":
        cert = forge_certificate_s3(
            args.genus, truncate_k=args.truncate_k, seed=args.seed,
            point_cap=budgets["points"], enum_bound=budgets["enum"])
    else:
        cert = forge_certificate_hall(
            args.genus, args.prime, collection=args.collection,
            seed=args.seed, point_cap=budgets["points"],
            enum_bound=budgets["enum"])
    out = args.out or f"certificate-{args.route}-g{args.genus}.json"
    _emit_json(cert.json_dict(), out)
    print(f"{cert.status}: route={cert.route} k={cert.k} degree={cert.degree}"
          f" genus_out={cert.genus_out} -> {out}")
    return EXIT_OK


def cmd_search(args):
    budgets = resolve_budgets(args)
    routes = ("hall", "s3") if args.route == "all" else (args.route,)
    report = minimal_degree_search(
        args.genus, routes=routes, budget=args.budget, seed=args.seed,
        point_cap=budgets["points"])
    if args.out:
        base, ext = os.path.splitext(args.out)
        for i, job in enumerate(report["jobs"]):
            path = f"{base}-job{i}{ext or '.json'}"
            _emit_json(job["certificate"], path)
            job["path"] = path
    else:
        for job in report["jobs"]:
            job["path"] = "(not written)"
    text = _emit_json(report, args.out)
    if not args.out:
        print(text)
    else:
        best = report["best_valid"] or report["best_flagged"]
        line = (f"best degree {best['degree']} ({best['status']})"
                if best else "no certificates examined")
        print(f"searched {len(report['jobs'])} jobs; {line} -> {args.out}")
    return EXIT_OK


def _parse_cover(name):
    if name.startswith("homology"):
        tail = name[len("homology"):]
        if tail.isdigit() and int(tail) >= 2:
            return int(tail)
    raise UsageError(f"unknown cover name {name!r}; expected homology<g>")


def cmd_alpha(args):
    genus = _parse_cover(args.cover)
    if genus != args.genus and args.genus != 2:
        raise UsageError(
            f"--genus {args.genus} conflicts with cover {args.cover}")
    table, rec, cert = certified_homology_table(genus)
    rs = schreier_generators(table)
    gens = standard_autgens(genus)
    pres = SurfacePresentation(genus)
    lines = [
        f"cover: {args.cover} (degree {table.d}, {rs.count} subgroup"
        f" generators, certificate on {rec.k} order-2 surjections)"
    ]
    suites = {}

    if args.check in ("all", "hom-law"):
        images = {g.name: alpha_apply(table, g.forward, name=g.name)
                  for g in gens}
        fails = 0
        for g1 in gens:
            for g2 in gens:
                left = alpha_apply(table, g1.forward.compose(g2.forward))
                right = images[g1.name].compose(images[g2.name])
                for i in range(rs.count):
                    lv, rv = left.values[i], right.values[i]
                    if lv != rv and not pres.words_equal(
                            expand(lv, rs), expand(rv, rs)):
                        fails += 1
        suites["hom-law"] = fails == 0
        lines.append(
            f"hom-law: {len(gens)**2} ordered pairs, failures={fails}")

    if args.check in ("all", "inner"):
        import random

        rng = random.Random(args.seed)
        fails = 0
        trials = 25
        for _ in range(trials):
            u = []
            for _ in range(rng.randint(1, 6)):
                j = rng.randint(1, rs.count)
                w = rs.words[j - 1]
                u.extend(w if rng.random() < 0.5
                         else [-x for x in reversed(w)])
            if not inner_compatibility_holds(table, tuple(u), pres):
                fails += 1
        suites["inner"] = fails == 0
        lines.append(f"inner: {trials} random subgroup words, failures={fails}")

    if args.check in ("all", "containment"):
        ok, d = verify_finite_index_containment(table, pres)
        suites["containment"] = ok
        lines.append(f"containment: {'ok' if ok else 'FAILED'}, index {d}")

    if args.check in ("all", "injectivity"):
        autos = [identity_auto(genus)] + [g.forward for g in gens]
        held = sum(
            1 for a in autos if verify_injectivity_mechanism(table, a, pres))
        suites["injectivity"] = held == len(autos)
        lines.append(
            f"injectivity: implication held on {held}/{len(autos)} maps")

    for line in lines:
        print(line)
    all_ok = all(suites.values())
    print("alpha suites:", "all pass" if all_ok else "FAILURES PRESENT")
    if args.out:
        dump = {
            "cover": args.cover,
            "suites": suites,
            "images": {
                g.name: alpha_apply(table, g.forward, name=g.name).as_dict()
                for g in gens
            },
        }
        _emit_json(dump, args.out)
    if not all_ok:
        raise RuntimeError("alpha verification suite failed")
    return EXIT_OK


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        handler = {
            "enumerate": cmd_enumerate,
            "forge": cmd_forge,
            "search": cmd_search,
            "alpha": cmd_alpha,
        }[args.command]
        return handler(args)
    except UsageError as e:
        print(f"usage error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (ForgeError, QuotientError, WordError, AutError) as e:
        print(f"usage error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except EnumerationBoundExceeded as e:
        print(f"budget exceeded: {e}", file=sys.stderr)
        return EXIT_BUDGET
    except (RuntimeError, AssertionError, PermError, CosetError) as e:
        print(f"internal invariant breach: {e}", file=sys.stderr)
        return EXIT_BREACH


if __name__ == "__main__":
    sys.exit(main())
