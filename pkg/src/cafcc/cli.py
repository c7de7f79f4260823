"""Command-line front end.

Verbs: list the catalogue, evaluate one equation, solve a corner, run the
consistency check for one system, check one compatibility case, run the
property suites, and crosscheck builders against the hard-coded catalogue.
All numeric I/O uses canonical rational strings; no decimals anywhere.
Exit codes: 0 all requested checks pass, 1 a check failed, 2 usage error,
3 internal error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .catalogue import (
    ADMISSIBLE_DELTAS,
    FacePoint,
    Family,
    ParamPair,
    equation_label,
    evaluate,
    parse_equation,
)
from .cube import all_system_configs, parse_config, solve_corner
from .errors import CafccError, DomainViolation
from .exactnum import format_scalar, parse_scalar, scalar
from .lax import LAX_CASES, PropId
from .verify import (
    DEFAULT_TRIALS,
    SUITE_NAMES,
    SamplerConfig,
    Scope,
    run_suite,
)

USAGE_ERROR = 2
CHECK_FAILURE = 1
INTERNAL_ERROR = 3


def _seed_default() -> int:
    env = os.environ.get("CAFCC_SEED")
    if env is not None:
        try:
            return int(env)
        except ValueError:
            pass
    return 0


def _parse_pair(text: str) -> ParamPair:
    parts = text.split(",")
    if len(parts) != 2:
        raise ValueError(f"expected two comma-separated values, got {text!r}")
    return ParamPair(parse_scalar(parts[0]), parse_scalar(parts[1]))


def _parse_list(text: str, n: int):
    parts = text.split(",")
    if len(parts) != n:
        raise ValueError(f"expected {n} comma-separated values, got {text!r}")
    return [parse_scalar(p) for p in parts]


def _build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="cafcc",
        description="exact checks for face-centered quad equations")
    sub = top.add_subparsers(dest="verb", required=True)

    sub.add_parser("list", help="catalogue, systems, cases and suites")

    p = sub.add_parser("eval", help="evaluate one equation at a point")
    p.add_argument("--eq", required=True, help="equation label, e.g. A3:d=1")
    p.add_argument("--x", default="0", help="face value (canonical rational)")
    p.add_argument("--corners", required=True, help="xa,xb,xc,xd")
    p.add_argument("--alpha", default="1,1")
    p.add_argument("--beta", default="1,1")

    p = sub.add_parser("solve", help="solve one affine corner slot")
    p.add_argument("--eq", required=True)
    p.add_argument("--slot", required=True, choices=("a", "b", "c", "d"))
    p.add_argument("--x", default="0")
    p.add_argument("--corners", required=True,
                   help="three known corner values, in a,b,c,d order")
    p.add_argument("--alpha", default="1,1")
    p.add_argument("--beta", default="1,1")

    p = sub.add_parser("cafcc", help="six-step consistency run for one system")
    p.add_argument("--config", required=True,
                   help='"A3:d=0" or "ABC:A2,B2,C2:1,0,1"')
    p.add_argument("--trials", type=int, default=DEFAULT_TRIALS["cafcc"])
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--json", dest="json_path")

    p = sub.add_parser("lax", help="compatibility checks for one case")
    p.add_argument("--prop", required=True,
                   help="case id P4.1 .. P4.8")
    p.add_argument("--variant", type=int, default=0,
                   help="normalization variant (0 = all)")
    p.add_argument("--branch", choices=("plus", "minus", "both"), default="both")
    p.add_argument("--trials", type=int, default=DEFAULT_TRIALS["lax_compat"])
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--json", dest="json_path")

    p = sub.add_parser("suite", help="run property suites")
    p.add_argument("--name", default="all",
                   help=f"one of {', '.join(SUITE_NAMES)} or 'all'")
    p.add_argument("--trials", type=int, default=None)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--json", dest="json_path")
    p.add_argument("--timings", action="store_true",
                   help="include wall times in JSON (breaks byte stability)")
    p.add_argument("--inject-fault", type=int, default=0, metavar="INDEX",
                   help="test hook: corrupt one centered equation (1..14)")

    p = sub.add_parser("crosscheck", help="builders vs hard-coded catalogue")
    p.add_argument("--what", default="builder-vs-catalogue",
                   choices=("builder-vs-catalogue", "det", "proof-oracle"))
    p.add_argument("--family", required=False)
    p.add_argument("--deltas", required=False)
    p.add_argument("--trials", type=int, default=None)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--json", dest="json_path")
    return top


def _facepoint(args) -> tuple:
    eq = parse_equation(args.eq)
    corners = _parse_list(args.corners, 4)
    p = FacePoint(parse_scalar(args.x), corners[0], corners[1], corners[2],
                  corners[3], _parse_pair(args.alpha), _parse_pair(args.beta))
    return eq, p


def _emit_reports(reports, args) -> int:
    all_pass = all(r.pass_ for r in reports)
    for r in reports:
        line = f"{r.suite}: {'pass' if r.pass_ else 'FAIL'}"
        line += f" (cases={r.cases}, trials={r.trials}, seed={r.seed}"
        if r.failures:
            line += f", failures={len(r.failures)}"
        print(line + ")")
        for f in r.failures[:10]:
            print(f"  FAIL {f['case']} seed={f['seed']}: {f['detail']}")
    if getattr(args, "json_path", None):
        timings = bool(getattr(args, "timings", False))
        payload = {
            "schema": "1",
            "seed": reports[0].seed if reports else 0,
            "pass": all_pass,
            "reports": [r.to_json_dict(include_timing=timings) for r in reports],
        }
        with open(args.json_path, "w") as fh:
            json.dump(payload, fh, sort_keys=True, indent=1)
            fh.write("\n")
    return 0 if all_pass else CHECK_FAILURE


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return USAGE_ERROR if exc.code not in (0, None) else 0

    seed = getattr(args, "seed", None)
    if seed is None:
        seed = _seed_default()
    cfg = SamplerConfig(seed=seed)

    try:
        if args.verb == "list":
            print("equations:")
            for family in Family:
                labels = [equation_label(family, d)
                          for d in ADMISSIBLE_DELTAS[family]]
                print(f"  {family.value}: {', '.join(labels)}")
            print("systems:")
            for c in all_system_configs():
                print(f"  {c.label}")
            print("compatibility cases:")
            for prop, case in LAX_CASES.items():
                regs = ", ".join(str(r) for r in case.regimes)
                print(f"  {prop.value}: {case.builder_family.value}-built via "
                      f"approach {case.approach}, central "
                      f"{case.central_family.value}, regimes [{regs}]")
            print("suites:")
            print(f"  {', '.join(SUITE_NAMES)}")
            return 0

        if args.verb == "eval":
            eq, p = _facepoint(args)
            print(format_scalar(evaluate(eq, p)))
            return 0

        if args.verb == "solve":
            eq = parse_equation(args.eq)
            known_vals = _parse_list(args.corners, 3)
            slots = [s for s in ("a", "b", "c", "d") if s != args.slot]
            known = dict(zip(slots, known_vals))
            val = solve_corner(eq, args.slot, parse_scalar(args.x), known,
                               _parse_pair(args.alpha), _parse_pair(args.beta))
            print(format_scalar(val))
            return 0

        if args.verb == "cafcc":
            config = parse_config(args.config)
            scope = Scope(systems=(config.label,))
            report = run_suite("cafcc", scope, args.trials, cfg)
            return _emit_reports([report], args)

        if args.verb == "lax":
            try:
                prop = PropId(args.prop)
            except ValueError:
                print(f"unknown case id {args.prop!r}", file=sys.stderr)
                return USAGE_ERROR
            eps = {"plus": (1,), "minus": (-1,), "both": ()}[args.branch]
            variants = (args.variant,) if args.variant else ()
            scope = Scope(props=(prop.value,), variants=variants, epsilons=eps)
            reports = [run_suite("lax_compat", scope, args.trials, cfg),
                       run_suite("lax_offshell", scope, None, cfg),
                       run_suite("proof_oracle", scope, args.trials, cfg),
                       run_suite("spectral_sweep", scope, None, cfg)]
            return _emit_reports(reports, args)

        if args.verb == "suite":
            names = SUITE_NAMES if args.name == "all" else (args.name,)
            for n in names:
                if n not in SUITE_NAMES:
                    print(f"unknown suite {n!r}", file=sys.stderr)
                    return USAGE_ERROR
            reports = []
            for n in names:
                kwargs = {}
                if n == "cafcc" and args.inject_fault:
                    kwargs["fault"] = args.inject_fault
                reports.append(run_suite(n, None, args.trials, cfg, **kwargs))
            return _emit_reports(reports, args)

        if args.verb == "crosscheck":
            scope = Scope()
            if args.family:
                try:
                    family = Family(args.family)
                except ValueError:
                    print(f"unknown family {args.family!r}", file=sys.stderr)
                    return USAGE_ERROR
                if args.deltas:
                    label = f"{family.value}:{args.deltas}"
                    if family is Family.A3 and not args.deltas.startswith("d="):
                        label = f"A3:d={args.deltas}"
                    eq = parse_equation(label)
                else:
                    eq = parse_equation(family.value) if \
                        family in (Family.C1, Family.D1) else None
                scope = Scope(equations=(eq.label,) if eq else ())
                if eq is None:
                    labels = tuple(equation_label(family, d)
                                   for d in ADMISSIBLE_DELTAS[family])
                    scope = Scope(equations=labels)
            suite = {"builder-vs-catalogue": "builder_vs_catalogue",
                     "det": "det", "proof-oracle": "proof_oracle"}[args.what]
            report = run_suite(suite, scope, args.trials, cfg)
            return _emit_reports([report], args)

        print(f"unknown verb {args.verb!r}", file=sys.stderr)
        return USAGE_ERROR
    except (ValueError, DomainViolation) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    except CafccError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    except ZeroDivisionError as exc:
        print(f"error: division by zero ({exc})", file=sys.stderr)
        return USAGE_ERROR
    except Exception as exc:  # noqa: BLE001 - last-resort classification
        print(f"internal error: {exc!r}", file=sys.stderr)
        return INTERNAL_ERROR


if __name__ == "__main__":
    sys.exit(main())
