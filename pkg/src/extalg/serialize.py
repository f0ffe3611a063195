"""JSON encoding for hypergraphs, multivectors, frames, pair systems and reports.

Rationals are always written as "p/q" strings (q > 0, lowest terms, "p/1"
for integers) so nothing passes through a float.  Subsets are 1-indexed
ascending lists.  Dicts are built in a fixed key order, so equal inputs give
byte-identical output.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path

from .errors import ParseError
from .exterior import BasisFrame, MultiVector
from .hypergraphs import Hypergraph
from .subsets import members, to_mask

SCHEMA = 1


def rat(x) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def parse_rat(s) -> Fraction:
    if isinstance(s, bool) or isinstance(s, float):
        raise ParseError(f"rationals must be strings 'p/q' or integers, got {s!r}")
    if isinstance(s, int):
        return Fraction(s)
    if not isinstance(s, str):
        raise ParseError(f"bad rational {s!r}")
    try:
        if "/" in s:
            p, q = s.split("/")
            q = int(q)
            if q <= 0:
                raise ParseError(f"denominator must be positive in {s!r}")
            return Fraction(int(p), q)
        return Fraction(int(s))
    except ValueError as exc:
        raise ParseError(f"bad rational {s!r}") from exc


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def loads(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from exc


def load_file(path) -> object:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    return loads(text)


def _require(obj, keys, what):
    if not isinstance(obj, dict):
        raise ParseError(f"{what} must be a JSON object")
    missing = [k for k in keys if k not in obj]
    if missing:
        raise ParseError(f"{what} is missing {missing}")


def _int(x, what) -> int:
    if isinstance(x, bool) or not isinstance(x, int):
        raise ParseError(f"{what} must be an integer, got {x!r}")
    return x


def _subset(lst, n, what) -> tuple[int, ...]:
    if not isinstance(lst, list):
        raise ParseError(f"{what} must be a list of integers")
    out = [_int(x, what) for x in lst]
    if any(x < 1 or (n is not None and x > n) for x in out):
        raise ParseError(f"{what} has elements outside [1, {n}]")
    if len(set(out)) != len(out):
        raise ParseError(f"{what} has repeated elements")
    return tuple(sorted(out))


# -- hypergraphs ------------------------------------------------------------------

def hypergraph_to_json(H: Hypergraph) -> dict:
    return {"n": H.n, "edges": [list(members(A)) for A in H.sorted_edges()]}


def hypergraph_from_json(obj) -> Hypergraph:
    _require(obj, ("n", "edges"), "hypergraph")
    n = _int(obj["n"], "n")
    if n < 0:
        raise ParseError("n must be nonnegative")
    if not isinstance(obj["edges"], list):
        raise ParseError("edges must be a list")
    edges = [_subset(e, n, "edge") for e in obj["edges"]]
    return Hypergraph(n, [to_mask(e) for e in edges])


# -- frames and multivectors -----------------------------------------------------------

def _entry(x):
    x = Fraction(x)
    return x.numerator if x.denominator == 1 else rat(x)


def matrix_to_json(rows) -> list[list]:
    return [[_entry(x) for x in row] for row in rows]


def frame_to_json(F: BasisFrame) -> dict:
    return {"id": F.frame_id, "matrix": matrix_to_json(F.matrix.to_rows())}


def frame_from_json(obj) -> BasisFrame:
    _require(obj, ("matrix",), "frame")
    rows = obj["matrix"]
    if not isinstance(rows, list) or any(not isinstance(r, list) for r in rows):
        raise ParseError("frame matrix must be a list of rows")
    return BasisFrame([[parse_rat(x) for x in row] for row in rows])


def multivector_to_json(w: MultiVector, frame_ref: str | None = None) -> dict:
    if frame_ref is None:
        frame_ref = "standard" if w.frame.is_standard else f"id:{w.frame.frame_id}"
    return {
        "n": w.n,
        "r": w.r,
        "frame": frame_ref,
        "terms": [{"set": list(A), "coeff": rat(c)} for A, c in w.terms()],
    }


def multivector_from_json(obj, base_dir=".", frames: dict | None = None) -> MultiVector:
    """Decode a multivector; ``frame`` is "standard", "file:<path>" or a known id."""
    _require(obj, ("n", "r", "terms"), "multivector")
    n, r = _int(obj["n"], "n"), _int(obj["r"], "r")
    ref = obj.get("frame", "standard")
    if ref == "standard":
        frame = None
    elif isinstance(ref, str) and ref.startswith("file:"):
        frame = frame_from_json(load_file(Path(base_dir) / ref[5:]))
    elif isinstance(ref, str) and frames and ref in frames:
        frame = frames[ref]
    else:
        raise ParseError(f"unknown frame reference {ref!r}")
    terms = {}
    for t in obj["terms"]:
        _require(t, ("set", "coeff"), "term")
        A = _subset(t["set"], n, "term set")
        if len(A) != r:
            raise ParseError(f"term set {list(A)} does not have size r={r}")
        terms[A] = terms.get(A, 0) + parse_rat(t["coeff"])
    return MultiVector.from_terms(n, terms, frame) if terms else MultiVector(n, r, {}, frame)


# -- pair systems ----------------------------------------------------------------------------

def set_system_to_json(S) -> dict:
    return {"pairs": [{"A": list(A), "B": list(B)} for A, B in S.pairs]}


def subspace_system_to_json(S) -> dict:
    return {
        "N": S.N,
        "pairs": [{"A": matrix_to_json(ga), "B": matrix_to_json(gb)} for ga, gb in S.generators],
    }


def system_from_json(obj):
    """SetPairSystem for ``{"pairs": [{"A": [...], "B": [...]}]}``; with an
    ``"N"`` key the A/B entries are generator matrices of a SubspacePairSystem."""
    from .two_families import SetPairSystem, SubspacePairSystem

    _require(obj, ("pairs",), "pair system")
    pairs = obj["pairs"]
    if not isinstance(pairs, list):
        raise ParseError("pairs must be a list")
    for p in pairs:
        _require(p, ("A", "B"), "pair")
    if "N" in obj:
        N = _int(obj["N"], "N")
        try:
            gens = [([[parse_rat(x) for x in v] for v in p["A"]],
                     [[parse_rat(x) for x in v] for v in p["B"]]) for p in pairs]
        except TypeError as exc:
            raise ParseError("generator matrices must be lists of rows") from exc
        try:
            return SubspacePairSystem(N, gens)
        except ValueError as exc:
            if type(exc) is ValueError:
                raise ParseError(str(exc)) from exc
            raise
    return SetPairSystem((_subset(p["A"], None, "A"), _subset(p["B"], None, "B")) for p in pairs)


# -- reports --------------------------------------------------------------------------------

def check_to_json(c) -> dict:
    return {
        "property": c.property,
        "target": c.target,
        "J": None if c.J is None else list(c.J),
        "expected": c.expected,
        "observed": c.observed,
        "passed": c.passed,
    }


def _t_table(values: dict) -> list[dict]:
    return [{"space": s, "m": m, "t": t} for (s, m), t in sorted(values.items())]


def genericity_to_json(cert, include_checks: bool = True) -> dict:
    kind, k = cert.j_mode
    out = {
        "seed": cert.seed,
        "M": cert.coeff_bound,
        "resample_count": cert.resample_count,
        "j_mode": kind if k is None else f"{kind}:{k}",
        "frame_matrix": matrix_to_json(cert.frame_matrix),
        "passed": cert.passed,
        "check_count": len(cert.checks),
        "t_values": _t_table(cert.t_values),
        "t_max_seen": _t_table(cert.t_max_seen),
    }
    if include_checks:
        out["checks"] = [check_to_json(c) for c in cert.checks]
    return out


def condition_report_to_json(report) -> dict:
    return {
        "mode": report.mode,
        "passed": report.passed,
        "conditions": [
            {"name": c.name, "passed": c.passed,
             "violation": None if c.violation is None else list(c.violation)}
            for c in report.conditions
        ],
        "nonempty": report.nonempty,
        "weighted_sum": rat(report.weighted_sum),
        "weighted_sum_bounded_b": None if report.weighted_sum_bounded_b is None
        else rat(report.weighted_sum_bounded_b),
    }


def step_to_json(s) -> dict:
    return {
        "i": s.index,
        "a": s.a,
        "b": s.b,
        "n": s.n,
        "profile_case": s.profile_case,
        "dim_W": s.dim_W,
        "dim_Z": s.dim_Z,
        "dim_Z_prev": s.dim_Z_prev,
        "dim_X_prev": s.dim_X,
        "dim_Y_prev": s.dim_Y,
        "zdim_holds": s.zdim_holds,
        "step_lhs": rat(s.step_lhs),
        "step_rhs": rat(s.step_rhs),
        "step_holds": s.step_holds,
        "blade_product_nonzero": s.blade_product_nonzero,
        "lifted_products_vanish": s.lifted_products_vanish,
        "blade_independence": s.blade_independence,
        "z_fraction": rat(s.z_fraction),
        "partial_sum": rat(s.partial_sum),
        "telescoping_holds": s.telescoping_holds,
    }


def two_families_certificate_to_json(cert) -> dict:
    return {
        "seed": cert.seed,
        "N": cert.N,
        "frame_seed": cert.frame_seed,
        "pipeline_restarts": cert.pipeline_restarts,
        "genericity": genericity_to_json(cert.genericity),
        "w_constancy": {"checks_run": cert.w_checks_run, "t_values": _t_table(cert.w_t_values)},
        "steps": [step_to_json(s) for s in cert.steps],
        "final_sum": rat(cert.final_sum),
        "verdict": cert.verdict,
    }


def search_result_to_json(res) -> dict:
    return {
        "max_weighted_sum": rat(res.max_weighted_sum),
        "max_m": res.max_m,
        "witness": set_system_to_json(res.witness),
        "states": res.states,
        "exhausted": res.exhausted,
    }


def conjecture_report_to_json(rep) -> dict:
    return {
        "profiles": [list(p) for p in rep.profiles],
        "ground_n": rep.ground_n,
        "max_weighted_sum": rat(rep.max_weighted_sum),
        "witness": set_system_to_json(rep.witness),
        "counterexample_found": rep.counterexample_found,
        "exhausted": rep.exhausted,
        "states": rep.states,
    }
