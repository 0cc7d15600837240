"""Command line front end.

Subcommands: `plan` prints the sampling plan for one (q, n); `table`
prints reference grids as CSV; `run` builds an oracle, samples it and
reports JSON; `dist` compares analytic zero-count models with brute-force
enumeration.  Exit codes: 0 success (or LikelyIrreducible), 1 usage or
oracle error, 2 infeasible plan, 3 LikelyReducible.
"""

import argparse
import json
import sys
from fractions import Fraction

from .blackbox import (
    curve_determinantal_matrix,
    det_rank_bb,
    from_poly,
    load_poly_matrix,
    singular_curve_bb,
    ternary_monomials,
)
from .errors import Error, InfeasibleOrder
from .estimator import (
    INFEASIBLE,
    LIKELY_REDUCIBLE,
    MODE_EXACT,
    estimate_gamma,
    exact_gamma,
    make_product_trap_fixture,
    run_irreducibility_test,
)
from .fields import GF, make_field
from .planner import COMPAT_S, emit_table_csv, plan_test
from .polynomials import parse_poly
from .stats import (
    det_expectation,
    gamma_model,
    intersection_model,
    product_model,
    substitution_model,
    brute_force_distribution,
)

_BF_LIMIT = 10**6


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _build_parser():
    parser = _Parser(prog="irredtest", description=__doc__)
    common = _Parser(add_help=False)
    common.add_argument("-e", "--epsilon", type=float, default=0.005)
    common.add_argument(
        "--compat-s258",
        action="store_true",
        help="plan with the tabulated quantile 2.58 instead of the precise one",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_plan = sub.add_parser("plan", parents=[common], help="sampling plan for one (q, n)")
    p_plan.add_argument("-q", type=int, required=True)
    p_plan.add_argument("-n", type=int, required=True)

    p_table = sub.add_parser("table", parents=[common], help="reference grid as CSV")
    p_table.add_argument("--which", choices=("N", "threshold"), required=True)

    p_run = sub.add_parser("run", parents=[common], help="sample an oracle")
    p_run.add_argument("-q", type=int, help="prime field order shorthand")
    p_run.add_argument("--field", help="field spec, e.g. 7 or 2^4:1,1,0,0,1")
    p_run.add_argument("-n", type=int, help="number of variables (with --poly)")
    p_run.add_argument("--poly", help="polynomial text over x1..xn")
    p_run.add_argument("--matrix", help="matrix file; oracle is the rank-drop locus")
    p_run.add_argument("--fixture", choices=("trap", "curve", "singular"))
    p_run.add_argument("--fixture-seed", type=int, default=0)
    p_run.add_argument("-d", "--degree", type=int, default=3, help="form degree (fixture singular)")
    p_run.add_argument("--ext-bound", type=int, help="extension search bound (fixture singular)")
    p_run.add_argument("-N", "--samples", type=int, help="estimate only, with this many draws")
    p_run.add_argument("--exact", action="store_true", help="exhaustive count instead of sampling")
    p_run.add_argument("--seed", type=int, default=0)
    p_run.add_argument("--workers", type=int, default=1)

    p_dist = sub.add_parser("dist", parents=[common], help="zero-count distributions")
    p_dist.add_argument("--kind", required=True,
                        choices=("single", "product", "intersection", "substitution", "det"))
    p_dist.add_argument("-q", type=int, required=True)
    p_dist.add_argument("-n", type=int, default=1)
    p_dist.add_argument("--x-count", type=int, help="size of the fixed point set")
    p_dist.add_argument("--m", type=int, help="target dimension (substitution)")
    p_dist.add_argument("--gamma-x", help="target density as a fraction, e.g. 1/3")
    p_dist.add_argument("--rows", type=int, default=2)
    p_dist.add_argument("--cols", type=int, default=2)
    return parser


def _plan_quantile(args):
    return COMPAT_S if args.compat_s258 else None


def cmd_plan(args) -> int:
    plan = plan_test(args.q, args.n, args.epsilon, s=_plan_quantile(args))
    print(f"q={plan.q}")
    print(f"n={plan.n}")
    print(f"epsilon={plan.epsilon}")
    print(f"s={plan.s}")
    print(f"p1={plan.p1}")
    print(f"p2={plan.p2}")
    print(f"feasible={'true' if plan.feasible else 'false'}")
    if not plan.feasible:
        return 2
    print(f"p_middle={plan.p_middle}")
    print(f"N={plan.N}")
    print(f"threshold_k={plan.threshold_k}")
    print(f"exceeds_point_count={'true' if plan.exceeds_point_count else 'false'}")
    return 0


def cmd_table(args) -> int:
    sys.stdout.write(emit_table_csv(args.epsilon, args.which, s=_plan_quantile(args)))
    return 0


def _run_field(args):
    if args.field and args.q is not None:
        raise _UsageError("give either -q or --field, not both")
    if args.field:
        return make_field(args.field)
    if args.q is not None:
        return GF(args.q)
    raise _UsageError("a field is required (-q or --field)")


def _run_oracle(args):
    sources = [s for s in (args.poly, args.matrix, args.fixture) if s]
    if len(sources) != 1:
        raise _UsageError("exactly one of --poly, --matrix, --fixture is required")
    if args.matrix:
        return det_rank_bb(load_poly_matrix(args.matrix))
    field = _run_field(args)
    if args.poly:
        if args.n is None:
            raise _UsageError("--poly needs -n (number of variables)")
        return from_poly(parse_poly(args.poly, field, args.n), label="cli poly")
    if args.fixture == "trap":
        fixture = make_product_trap_fixture(args.fixture_seed)
        return from_poly(fixture.reduce_mod(field), label=f"trap(seed={args.fixture_seed})")
    if args.fixture == "curve":
        return det_rank_bb(curve_determinantal_matrix(field))
    kwargs = {}
    if args.ext_bound is not None:
        kwargs["ext_bound"] = args.ext_bound
    return singular_curve_bb(args.degree, field, **kwargs)


def _report_json(bb, report, outcome=None) -> str:
    payload = {
        "q": bb.field.q,
        "n": bb.n,
        "N": report.N if report else None,
        "k": report.k if report else None,
        "p_hat": report.p_hat if report else None,
        "half_width": report.interval.half_width if report else None,
        "mode": report.mode if report else None,
        "seed": report.seed if report else None,
    }
    if outcome is not None:
        payload["outcome"] = outcome
    return json.dumps(payload)


def cmd_run(args) -> int:
    bb = _run_oracle(args)
    if args.exact:
        report = estimate_gamma(
            bb, 0, args.seed, epsilon=args.epsilon, mode="exact"
        )
        print(_report_json(bb, report))
        return 0
    if args.samples is not None:
        report = estimate_gamma(
            bb,
            args.samples,
            args.seed,
            epsilon=args.epsilon,
            workers=args.workers,
        )
        print(_report_json(bb, report))
        return 0
    plan = plan_test(bb.field.q, bb.n, args.epsilon, s=_plan_quantile(args))
    verdict = run_irreducibility_test(bb, plan, args.seed, workers=args.workers)
    print(_report_json(bb, verdict.report, outcome=verdict.outcome))
    if verdict.outcome == INFEASIBLE:
        return 2
    return 3 if verdict.outcome == LIKELY_REDUCIBLE else 0


def _dist_brute(args):
    """Brute-force pmf when the function space is small enough, else None."""
    q, n = args.q, args.n
    space = q ** (q**n)
    try:
        if args.kind == "single":
            if space > _BF_LIMIT:
                return None
            return brute_force_distribution(q, n, "single", limit=_BF_LIMIT)
        if args.kind == "product":
            if space * space > _BF_LIMIT:
                return None
            return brute_force_distribution(q, n, "product", limit=_BF_LIMIT)
        if args.kind == "intersection":
            if space > _BF_LIMIT:
                return None
            pts = _first_points(q, n, args.x_count)
            return brute_force_distribution(q, n, "intersection", x_points=pts, limit=_BF_LIMIT)
        if args.kind == "substitution":
            if args.m is None or args.x_count is None:
                return None
            if (q ** args.m) ** (q**n) > _BF_LIMIT:
                return None
            pts = _first_points(q, args.m, args.x_count)
            return brute_force_distribution(
                q, n, "substitution", x_points=pts, m=args.m, limit=_BF_LIMIT
            )
    except Error:
        return None
    return None


def _first_points(q, dims, count):
    """The first `count` points of F_q^dims in enumeration order."""
    pts = []
    for idx in range(count):
        coords = []
        rem = idx
        for _ in range(dims):
            coords.append(rem % q)
            rem //= q
        pts.append(tuple(reversed(coords)))
    return pts


def cmd_dist(args) -> int:
    q, n = args.q, args.n
    if args.kind == "det":
        p = det_expectation(q, args.rows, args.cols)
        print(f"# kind=det q={q} rows={args.rows} cols={args.cols} expectation={float(p)}")
        return 0
    if args.kind == "single":
        model = gamma_model(q, n)
    elif args.kind == "product":
        model = product_model(q, n)
    elif args.kind == "intersection":
        if args.x_count is None:
            raise _UsageError("--kind intersection needs --x-count")
        model = intersection_model(q, n, args.x_count)
    else:
        if args.gamma_x is not None:
            gamma_x = Fraction(args.gamma_x)
        elif args.x_count is not None and args.m is not None:
            gamma_x = Fraction(args.x_count, q**args.m)
        else:
            raise _UsageError("--kind substitution needs --gamma-x or --x-count with --m")
        model = substitution_model(q, n, gamma_x)
    brute = _dist_brute(args)
    print(
        f"# kind={args.kind} q={q} n={n} trials={model.trials}"
        f" mean={float(model.mean_fraction())}"
    )
    print("k,p_analytic" + (",p_bruteforce" if brute else ""))
    rows = max(model.trials, len(brute) - 1 if brute else 0)
    exact_ok = model.trials <= 1000  # beyond that, rationals get enormous
    for k in range(rows + 1):
        analytic = float(model.pmf(k)) if exact_ok else model.pmf_float(k)
        line = f"{k},{analytic}"
        if brute:
            bf = brute[k] if k < len(brute) else Fraction(0)
            line += f",{float(bf)}"
        print(line)
    return 0


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        handler = {
            "plan": cmd_plan,
            "table": cmd_table,
            "run": cmd_run,
            "dist": cmd_dist,
        }[args.command]
        return handler(args)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except InfeasibleOrder as exc:
        print(f"infeasible: {exc}", file=sys.stderr)
        return 2
    except (Error, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def entrypoint():
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
