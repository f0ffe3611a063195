"""Batch command-line front end.

Every command prints (or writes with ``--out``) one JSON report carrying
``"schema": 1``, the tool version, the seed and the caps in force.  Reports
contain no timestamps, so re-running with the same arguments reproduces them
byte for byte.

Exit codes::

    0  all requested checks passed
    1  a check failed
    2  usage error
    3  parse error (malformed JSON or schema mismatch)
    4  precondition failure
    5  genericity failure (no certified frame within the retry limit)
    6  cap exceeded
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from math import comb
from pathlib import Path

from . import __version__
from . import serialize as ser
from .errors import CapacityError, GenericityFailure, ParseError, PreconditionError
from .exterior import algebraic_shift_with_certificate
from .hypergraphs import (
    CROSS_N_CAP,
    EKR_N_CAP,
    INTERSECTING_N_CAP,
    cross_product_oracle,
    ekr_oracle,
    local_lym_check,
    random_hypergraph,
)
from .projection import (
    DEFAULT_COEFF_BOUND,
    DEFAULT_RETRY_LIMIT,
    GenericityRequest,
    check_lift_bound,
    check_projection_bound,
    ext_lym_check,
    sample_generic_basis,
    shadow_containment,
)
from .sampling import DEFAULT_SEED, random_frame, random_subspace, stream
from .two_families import (
    EXAMPLES,
    MIXED_PROFILE_N_CAP,
    MODES,
    SINGLE_PROFILE_N_CAP,
    brute_force_extremal,
    certify_two_families,
    conjecture_search,
    generate_example,
    verify_conditions,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_PARSE, EXIT_PRECONDITION, EXIT_GENERICITY, EXIT_CAP = range(7)

THEOREMS = ("ekr", "cross", "local_lym", "ext_lym", "proj_bound", "lift_bound", "init_containment")
DEFAULT_TRIALS = 20
SEED_ENV = "EXTALG_SEED"


class UsageError(Exception):
    pass


def default_seed() -> int:
    raw = os.environ.get(SEED_ENV)
    if raw is None or raw == "":
        return DEFAULT_SEED
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"{SEED_ENV} must be an integer, got {raw!r}") from None


def envelope(command: str, args, caps: dict, result: dict, passed: bool) -> dict:
    return {
        "schema": ser.SCHEMA,
        "tool": "extalg",
        "version": __version__,
        "command": command,
        "seed": args.seed,
        "coeff_bound": args.coeff_bound,
        "caps": caps,
        "passed": passed,
        "result": result,
    }


# -- commands -----------------------------------------------------------------------

def cmd_shift(args):
    H = ser.hypergraph_from_json(ser.load_file(args.input))
    sizes = {len(e) for e in H.sets()}
    if len(sizes) > 1:
        raise PreconditionError(f"shift needs a uniform hypergraph, got edge sizes {sorted(sizes)}")
    caps = {"retry_limit": args.retry_limit}
    if not len(H):
        result = {"input": ser.hypergraph_to_json(H), "shift": ser.hypergraph_to_json(H),
                  "genericity": None}
        return envelope("shift", args, caps, result, True)
    shifted, _, cert = algebraic_shift_with_certificate(
        H, args.seed, coeff_bound=args.coeff_bound, retry_limit=args.retry_limit)
    result = {
        "input": ser.hypergraph_to_json(H),
        "shift": ser.hypergraph_to_json(shifted),
        "genericity": ser.genericity_to_json(cert, include_checks=args.full_certificate),
    }
    return envelope("shift", args, caps, result, True)


def _need(args, *names):
    missing = [f"--{n}" for n in names if getattr(args, n) is None]
    if missing:
        raise UsageError(f"check {args.theorem} needs {' '.join(missing)}")


def _subspace_json(W) -> dict:
    return {"n": W.n, "r": W.r, "frame": W.frame.frame_id, "rows": ser.matrix_to_json(W.int_rows)}


def _trials(args, label, run):
    """Run ``run(rng)`` per trial; each returns (holds, detail)."""
    passed = failed = 0
    first = None
    for t in range(args.trials):
        holds, detail = run(stream(args.seed, "check", label, t))
        if holds:
            passed += 1
        else:
            failed += 1
            if first is None:
                first = {"trial": t, **detail}
    return {"trials": args.trials, "passed_count": passed, "failed_count": failed,
            "first_counterexample": first}, failed == 0


def cmd_check(args):
    th = args.theorem
    params = {k: getattr(args, k) for k in ("n", "r", "s", "d") if getattr(args, k) is not None}
    caps = {"n_cap": args.n_cap, "trials": args.trials}
    _need(args, "n")
    n = args.n
    if th == "ekr":
        cap = args.n_cap or (EKR_N_CAP if args.r is not None else INTERSECTING_N_CAP)
        caps["n_cap"] = cap
        res = ekr_oracle(n, args.r, cap=cap)
        if args.r is None:
            expected = 2 ** (n - 1) if n else 0
        elif 2 * args.r <= n:
            expected = comb(n - 1, args.r - 1)
        else:
            expected = comb(n, args.r)
        ok = res.max_size == expected
        body = {"max_size": res.max_size, "expected": expected, "witness_count": len(res.witnesses),
                "first_witness": ser.hypergraph_to_json(res.witnesses[0]) if res.witnesses else None}
    elif th == "cross":
        _need(args, "r", "s")
        cap = args.n_cap or CROSS_N_CAP
        caps["n_cap"] = cap
        res = cross_product_oracle(n, args.r, args.s, cap=cap)
        expected = None
        if 2 * args.r <= n and 2 * args.s <= n:
            expected = comb(n - 1, args.r - 1) * comb(n - 1, args.s - 1)
        ok = expected is None or res.max_product == expected
        body = {"max_product": res.max_product, "expected": expected,
                "A": ser.hypergraph_to_json(res.A), "B": ser.hypergraph_to_json(res.B)}
    elif th == "local_lym":
        _need(args, "r")
        b = 1 if args.d is None else args.d

        def run(rng):
            H = random_hypergraph(rng, n, args.r)
            c = local_lym_check(H, b)
            return c.holds, {"hypergraph": ser.hypergraph_to_json(H),
                             "lhs": ser.rat(c.lhs), "rhs": ser.rat(c.rhs)}
        body, ok = _trials(args, th, run)
    elif th in ("ext_lym", "init_containment"):
        _need(args, "r")
        c = 1 if args.d is None else args.d

        def run(rng):
            W = random_subspace(rng, n, args.r)
            if th == "ext_lym":
                chk = ext_lym_check(W, c)
                return chk.holds, {"W": _subspace_json(W), "lhs": ser.rat(chk.lhs),
                                   "rhs": ser.rat(chk.rhs)}
            holds, lifted, shadow = shadow_containment(W, c)
            return holds, {"W": _subspace_json(W), "lifted": ser.hypergraph_to_json(lifted),
                           "shadow": ser.hypergraph_to_json(shadow)}
        body, ok = _trials(args, th, run)
    elif th == "proj_bound":
        _need(args, "r")
        d = 1 if args.d is None else args.d

        def run(rng):
            W = random_subspace(rng, n, args.r)
            F = random_frame(rng, n)
            rep = check_projection_bound(W, d, F)
            return rep.holds, {"W": _subspace_json(W), "frame": ser.matrix_to_json(
                F.matrix.to_rows()), "best": ser.rat(rep.best_fraction),
                "fraction": ser.rat(rep.fraction)}
        body, ok = _trials(args, th, run)
    else:
        _need(args, "r")
        d = 1 if args.d is None else args.d

        def run(rng):
            W = random_subspace(rng, n, args.r)
            request = GenericityRequest(n, multivector_spaces=[W])
            F, _ = sample_generic_basis(request, rng.getrandbits(63), args.coeff_bound,
                                        args.retry_limit)
            rep = check_lift_bound(W, d, F, generic=True)
            return rep.holds, {"W": _subspace_json(W), "lift": ser.rat(rep.lift_fraction),
                               "average": ser.rat(rep.average_fraction),
                               "prefix": ser.rat(rep.prefix_fraction)}
        body, ok = _trials(args, th, run)
    result = {"theorem": th, "params": params, **body}
    return envelope("check", args, caps, result, ok)


def cmd_verify_pairs(args):
    system = ser.system_from_json(ser.load_file(args.input))
    report = verify_conditions(system, args.mode)
    result = {"m": len(system), "profiles": [list(p) for p in system.profiles],
              **ser.condition_report_to_json(report)}
    return envelope("verify-pairs", args, {}, result, report.passed)


def cmd_certify(args):
    system = ser.system_from_json(ser.load_file(args.input))
    cert = certify_two_families(system, args.seed, args.coeff_bound, args.retry_limit)
    caps = {"retry_limit": args.retry_limit}
    return envelope("certify", args, caps, ser.two_families_certificate_to_json(cert),
                    cert.verdict == "pass")


def _parse_params(items) -> dict:
    out = {}
    for item in items:
        key, sep, value = item.partition("=")
        if not sep:
            raise UsageError(f"example parameters look like key=value, got {item!r}")
        try:
            out[key] = int(value)
        except ValueError:
            raise UsageError(f"parameter {key} must be an integer") from None
    return out


def cmd_examples(args):
    if args.name not in EXAMPLES:
        raise UsageError(f"unknown example {args.name!r}; choose from {sorted(EXAMPLES)}")
    params = _parse_params(args.params)
    try:
        system = generate_example(args.name, **params)
    except ValueError as exc:
        if isinstance(exc, PreconditionError):
            raise
        raise UsageError(str(exc)) from None
    out = envelope("examples", args, {}, {
        "example": args.name,
        "params": params,
        "m": len(system),
        "weighted_sum": ser.rat(verify_conditions(system, "skew").weighted_sum),
        "nonempty": not system.has_empty_sets(),
    }, True)
    # the system sits at top level so the file feeds verify-pairs and certify directly
    out.update(ser.set_system_to_json(system))
    return out


def _parse_profiles(text: str) -> list[tuple[int, int]]:
    if not text.strip():
        return []
    out = []
    for chunk in text.split(";"):
        try:
            a, b = (int(x) for x in chunk.split(","))
        except ValueError:
            raise UsageError(f"profiles look like 'a,b;a,b', got {text!r}") from None
        out.append((a, b))
    return out


def cmd_search(args):
    profiles = _parse_profiles(args.profiles)
    single = len(set(profiles)) <= 1
    cap = args.n_cap or (SINGLE_PROFILE_N_CAP if single else MIXED_PROFILE_N_CAP)
    caps = {"n_cap": cap, "budget": args.budget}
    if args.mode == "conjecture":
        if args.ground_n > cap:
            raise CapacityError(f"search capped at ground_n <= {cap}")
        if not profiles:
            rep = conjecture_search([], args.ground_n, args.budget)
        else:
            rep = conjecture_search(profiles, args.ground_n, args.budget)
        result = {"mode": "mixed_profile_conjecture", **ser.conjecture_report_to_json(rep)}
        # exploratory: no outcome is asserted, so the run itself always passes
        return envelope("search", args, caps, result, True)
    res = brute_force_extremal(profiles, args.ground_n, args.mode, args.budget, cap=cap)
    result = {"mode": args.mode, "profiles": [list(p) for p in profiles],
              "ground_n": args.ground_n, **ser.search_result_to_json(res)}
    return envelope("search", args, caps, result, res.exhausted)


# -- parser and output ------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=None,
                        help=f"PRNG seed (default {DEFAULT_SEED}, or ${SEED_ENV})")
    common.add_argument("--coeff-bound", type=int, default=DEFAULT_COEFF_BOUND,
                        help="initial frame coefficient bound M")
    common.add_argument("--retry-limit", type=int, default=DEFAULT_RETRY_LIMIT)
    common.add_argument("--n-cap", type=int, default=None,
                        help="override the ground-set cap of exhaustive oracles")
    common.add_argument("--trials", type=int, default=DEFAULT_TRIALS)
    common.add_argument("--format", choices=("json", "table"), default="json")
    common.add_argument("--out", default=None, help="write the report here instead of stdout")

    p = argparse.ArgumentParser(prog="extalg", description=__doc__.split("\n")[0])
    p.add_argument("--version", action="version", version=f"extalg {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("shift", parents=[common], help="algebraic shift of a uniform hypergraph")
    s.add_argument("input")
    s.add_argument("--full-certificate", action="store_true",
                   help="include every genericity check in the report")
    s.set_defaults(func=cmd_shift)

    s = sub.add_parser("check", parents=[common], help="run one theorem check")
    s.add_argument("theorem", choices=THEOREMS)
    s.add_argument("--n", type=int)
    s.add_argument("--r", type=int)
    s.add_argument("--s", type=int)
    s.add_argument("--d", "--c", "--b", dest="d", type=int,
                   help="lift / shadow / projection amount")
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("verify-pairs", parents=[common], help="check pair-system conditions")
    s.add_argument("input")
    s.add_argument("--mode", choices=MODES, default="skew")
    s.set_defaults(func=cmd_verify_pairs)

    s = sub.add_parser("certify", parents=[common], help="certificate chain for a pair system")
    s.add_argument("input")
    s.set_defaults(func=cmd_certify)

    s = sub.add_parser("examples", parents=[common], help="write an example pair system")
    s.add_argument("name")
    s.add_argument("params", nargs="*", help="key=value, e.g. n=3")
    s.set_defaults(func=cmd_examples)

    s = sub.add_parser("search", parents=[common], help="exhaustive extremal search")
    s.add_argument("--profiles", required=True, help="'a,b;a,b;...'")
    s.add_argument("--ground-n", "--n", dest="ground_n", type=int, required=True)
    s.add_argument("--mode", choices=MODES + ("conjecture",), default="skew")
    s.add_argument("--budget", type=int, default=None, help="max memoised states")
    s.set_defaults(func=cmd_search)
    return p


def _scalar(v) -> str:
    if v is None:
        return "-"
    if isinstance(v, bool):
        return "yes" if v else "no"
    if isinstance(v, (dict, list)):
        return json.dumps(v, separators=(",", ":"))
    return str(v)


def render_table(report: dict) -> str:
    """Human summary: scalar fields, then any list of flat records as columns."""
    lines = []
    head = ("command", "version", "seed", "passed")
    lines.append("  ".join(f"{k}={_scalar(report.get(k))}" for k in head))
    result = report.get("result", {})
    tables = []
    for key, val in result.items():
        if isinstance(val, (dict, list)):
            if isinstance(val, list) and val and all(isinstance(x, dict) for x in val):
                tables.append((key, val))
            continue
        lines.append(f"{key:>24}: {_scalar(val)}")
    if "pairs" in report:
        lines.append(f"{'pairs':>24}: {len(report['pairs'])}")
    for key, rows in tables:
        cols = list(rows[0])
        cells = [[_scalar(r.get(c)) for c in cols] for r in rows]
        widths = [max(len(c), *(len(row[i]) for row in cells)) for i, c in enumerate(cols)]
        lines.append("")
        lines.append(key)
        lines.append("  ".join(c.rjust(w) for c, w in zip(cols, widths)))
        lines.extend("  ".join(x.rjust(w) for x, w in zip(row, widths)) for row in cells)
    return "\n".join(lines) + "\n"


def _emit(text: str, out: str | None):
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        if args.seed is None:
            args.seed = default_seed()
        report = args.func(args)
    except UsageError as exc:
        print(f"extalg: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ParseError as exc:
        print(f"extalg: parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except PreconditionError as exc:
        print(f"extalg: precondition failed: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except GenericityFailure as exc:
        print(f"extalg: genericity failure: {exc}", file=sys.stderr)
        return EXIT_GENERICITY
    except CapacityError as exc:
        print(f"extalg: cap exceeded: {exc}", file=sys.stderr)
        return EXIT_CAP
    text = ser.dumps(report) if args.format == "json" else render_table(report)
    _emit(text, args.out)
    return EXIT_OK if report["passed"] else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
