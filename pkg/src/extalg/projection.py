"""Coordinate projections, wedge lifts and sampled generic frames.

For a frame F and J ⊆ [n], the projection keeps the F-coordinates indexed by
J; on level r it keeps the monomials f_A with A ⊆ J.  The lift of W by d is
``W ∧ Λ^d V``.  :func:`sample_generic_basis` draws integer frames and keeps
the first one whose projections behave generically on the requested spaces,
recording every check it ran in a :class:`GenericityCertificate`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Iterable, Sequence

from .errors import GenericityFailure, PreconditionError
from .exterior import BasisFrame, MultiVector, Subspace
from .hypergraphs import Hypergraph, upper_shadow
from .rational_linalg import RatMatrix, det, rank_int
from .sampling import random_int_matrix, stream
from .subsets import full, level, level_index, members, to_mask, wedge_sign

DEFAULT_COEFF_BOUND = 2 ** 16
DEFAULT_RETRY_LIMIT = 8
DEFAULT_J_SAMPLES = 64
EXHAUSTIVE_J_MAX_N = 8


def _mask(J, n: int) -> int:
    return J if isinstance(J, int) else to_mask(J, n)


# -- projections and lifts ----------------------------------------------------

def project_vector(v: MultiVector, J) -> MultiVector:
    if v.r != 1:
        raise PreconditionError("project_vector expects a degree-1 element")
    return project_multivector(v, J)


def project_multivector(w: MultiVector, J) -> MultiVector:
    J = _mask(J, w.n)
    return MultiVector(w.n, w.r, {A: c for A, c in w.coeffs.items() if A & ~J == 0}, w.frame)


def _kept_columns(n: int, r: int, J: int) -> list[int]:
    return [i for i, A in enumerate(level(n, r)) if A & ~J == 0]


def projection_dim(W: Subspace, J) -> int:
    """dim of the projection of W onto span{f_j : j in J}, in W's own frame."""
    J = _mask(J, W.n)
    keep = _kept_columns(W.n, W.r, J)
    return rank_int([row[i] for i in keep] for row in W.int_rows)


def project_subspace(W: Subspace, J) -> Subspace:
    J = _mask(J, W.n)
    keep = set(_kept_columns(W.n, W.r, J))
    rows = [[x if i in keep else 0 for i, x in enumerate(row)] for row in W.int_rows]
    return Subspace.from_int_rows(W.n, W.r, W.frame, rows)


def wedge_with_power(W: Subspace, d: int, within=None) -> Subspace:
    """span{w ∧ f_K : w in a basis of W, K a d-subset}, same frame.

    ``within`` restricts K to subsets of a given set, i.e. wedging with the
    d-th power of span{f_j : j in within}.
    """
    n, r = W.n, W.r
    if d < 0 or r + d > n:
        raise PreconditionError(f"degree overflow: r + d = {r + d} > n = {n}")
    if d == 0:
        return W
    allowed = full(n) if within is None else _mask(within, n)
    Ks = [K for K in level(n, d) if K & ~allowed == 0]
    src = level(n, r)
    tgt = level_index(n, r + d)
    width = comb(n, r + d)
    rows = []
    for row in W.int_rows:
        support = [(src[i], x) for i, x in enumerate(row) if x]
        for K in Ks:
            new = [0] * width
            hit = False
            for A, x in support:
                if A & K:
                    continue
                new[tgt[A | K]] += wedge_sign(A, K) * x
                hit = True
            if hit and any(new):
                rows.append(new)
    return Subspace.from_int_rows(n, r + d, W.frame, rows)


# -- bounds ----------------------------------------------------------------------

@dataclass(frozen=True)
class FractionCheck:
    lhs: Fraction
    rhs: Fraction
    holds: bool


def ext_lym_check(W: Subspace, c: int) -> FractionCheck:
    """Dimensional fraction of W ∧ Λ^c V against that of W."""
    if not 0 <= c <= W.n - W.r:
        raise PreconditionError(f"need 0 <= c <= n - r, got c={c}")
    lifted = wedge_with_power(W, c)
    lhs = Fraction(lifted.dim, comb(W.n, W.r + c))
    rhs = Fraction(W.dim, comb(W.n, W.r))
    return FractionCheck(lhs, rhs, lhs >= rhs)


def shadow_containment(W: Subspace, c: int) -> tuple[bool, Hypergraph, Hypergraph]:
    """Whether the initial hypergraph of W ∧ Λ^c V contains the c-shadow of H(W)."""
    lifted = wedge_with_power(W, c).initial_hypergraph()
    shadow = upper_shadow(W.initial_hypergraph(), c)
    return lifted >= shadow, lifted, shadow


@dataclass(frozen=True)
class ProjectionBound:
    best_J: int
    best_fraction: Fraction
    fraction: Fraction
    holds: bool


def _in_frame(W: Subspace, frame: BasisFrame | None) -> Subspace:
    return W if frame is None else W.to_frame(frame)


def check_projection_bound(W: Subspace, d: int, frame: BasisFrame | None = None) -> ProjectionBound:
    """max over (n-d)-sets J of dim π_J(W)/C(n-d, r) against dim W / C(n, r)."""
    W = _in_frame(W, frame)
    n, r = W.n, W.r
    if not (0 < r <= n - d and d >= 0):
        raise PreconditionError(f"need 0 < r <= n - d, got r={r}, n={n}, d={d}")
    rhs = Fraction(W.dim, comb(n, r))
    best_J, best = None, Fraction(-1)
    for J in level(n, n - d):
        value = Fraction(projection_dim(W, J), comb(n - d, r))
        if value > best:
            best_J, best = J, value
    return ProjectionBound(best_J, best, rhs, best >= rhs)


@dataclass(frozen=True)
class LiftBound:
    lift_fraction: Fraction
    average_fraction: Fraction
    prefix_fraction: Fraction
    holds_average: bool
    holds_prefix: bool
    generic: bool

    @property
    def holds(self) -> bool:
        return self.holds_average and (self.holds_prefix or not self.generic)


def check_lift_bound(W: Subspace, d: int, frame: BasisFrame | None = None,
                     generic: bool = False) -> LiftBound:
    """Compare the fraction of W ∧ Λ^d V with projected fractions of W.

    The average over all (n-d)-sets J is a lower bound in every frame.  The
    single projection onto the first n-d basis vectors is a lower bound in a
    generic frame; it enters ``holds`` only when ``generic`` is set.
    """
    W = _in_frame(W, frame)
    n, r = W.n, W.r
    if not (0 < r <= n - d and d >= 0):
        raise PreconditionError(f"need 0 < r <= n - d, got r={r}, n={n}, d={d}")
    lift = Fraction(wedge_with_power(W, d).dim, comb(n, r + d))
    Js = level(n, n - d)
    avg = Fraction(sum(projection_dim(W, J) for J in Js), len(Js) * comb(n - d, r))
    prefix = Fraction(projection_dim(W, full(n - d)), comb(n - d, r))
    return LiftBound(lift, avg, prefix, lift >= avg, lift >= prefix, generic)


# -- generic frames ---------------------------------------------------------------

@dataclass
class GenericityRequest:
    """Spaces a sampled frame must treat generically.

    ``subspace_list`` holds degree-1 subspaces C whose projections must have
    full dimension min(dim C, |J|); ``multivector_spaces`` holds subspaces W
    whose projection dimension must depend on |J| only.  ``j_check_mode`` is
    ``"exhaustive"``, ``("sampled", k)`` or ``"auto"`` (exhaustive up to n = 8).
    """

    ground_n: int
    subspace_list: Sequence[Subspace] = ()
    multivector_spaces: Sequence[Subspace] = ()
    j_check_mode: object = "auto"

    def __post_init__(self):
        for S in list(self.subspace_list) + list(self.multivector_spaces):
            if S.n != self.ground_n:
                raise PreconditionError("all requested spaces must share ground_n")
        for C in self.subspace_list:
            if C.r != 1:
                raise PreconditionError("subspace_list holds degree-1 subspaces")

    @property
    def mode(self) -> tuple[str, int | None]:
        m = self.j_check_mode
        if m == "auto":
            return ("exhaustive", None) if self.ground_n <= EXHAUSTIVE_J_MAX_N \
                else ("sampled", DEFAULT_J_SAMPLES)
        if m == "exhaustive":
            return ("exhaustive", None)
        kind, k = m
        if kind != "sampled":
            raise ValueError(f"unknown J check mode {m!r}")
        return ("sampled", int(k))


@dataclass(frozen=True)
class Check:
    property: str
    target: str
    J: tuple[int, ...] | None
    expected: int
    observed: int
    passed: bool


@dataclass
class GenericityCertificate:
    seed: int
    coeff_bound: int
    resample_count: int
    j_mode: tuple[str, int | None]
    frame_matrix: list[list[int]]
    checks: list[Check] = field(default_factory=list)
    # (space label, m) -> observed constant projection dimension
    t_values: dict[tuple[str, int], int] = field(default_factory=dict)
    # (space label, m) -> largest dimension seen over every sampled frame and J
    t_max_seen: dict[tuple[str, int], int] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)


def j_sets(n: int, m: int, mode: tuple[str, int | None], rng) -> list[int]:
    sets = list(level(n, m))
    if mode[0] == "exhaustive" or len(sets) <= mode[1]:
        return sets
    return sorted(rng.sample(sets, mode[1]))


def full_dimension_checks(C: Subspace, label: str, mode, rng) -> Iterable[Check]:
    """Yield the full-rank projection checks for a degree-1 space in frame coordinates."""
    for m in range(1, C.n):
        for J in j_sets(C.n, m, mode, rng):
            obs = projection_dim(C, J)
            exp = min(C.dim, m)
            yield Check("full_rank_projection", label, members(J), exp, obs, obs == exp)


def constant_projection_checks(W: Subspace, label: str, mode, rng,
                               t_max_seen: dict) -> tuple[list[Check], dict]:
    """Projection dimensions of W (frame coordinates) for every checked J.

    A size m passes when every J of that size gives the same dimension and
    that dimension is not below anything seen for this space before (in
    earlier frames).  Updates ``t_max_seen`` in place.
    """
    checks = []
    t_values = {}
    for m in range(1, W.n):
        Js = j_sets(W.n, m, mode, rng)
        dims = [projection_dim(W, J) for J in Js]
        key = (label, m)
        top = max(dims + [t_max_seen.get(key, 0)])
        t_max_seen[key] = top
        for J, obs in zip(Js, dims):
            checks.append(Check("constant_projection", label, members(J), top, obs, obs == top))
        t_values[key] = top
        if any(obs != top for obs in dims):
            break
    return checks, t_values


def sample_generic_basis(request: GenericityRequest, seed: int = 0,
                         coeff_bound: int = DEFAULT_COEFF_BOUND,
                         retry_limit: int = DEFAULT_RETRY_LIMIT
                         ) -> tuple[BasisFrame, GenericityCertificate]:
    """Sample an integer frame passing every requested genericity check.

    Attempt k draws entries uniformly from [-M 2^k, M 2^k] using the stream
    ``(seed, "frame", k)``; sampled J sets use ``(seed, "J", k)``.  At most
    ``retry_limit`` resamples follow the first draw.
    """
    n = request.ground_n
    mode = request.mode
    t_max_seen: dict = {}
    failing = None
    for attempt in range(retry_limit + 1):
        bound = coeff_bound * 2 ** attempt
        rng = stream(seed, "frame", attempt)
        mat = random_int_matrix(rng, n, n, bound)
        cert = GenericityCertificate(seed, bound, attempt, mode, mat)
        nonsingular = det(RatMatrix.from_rows(mat)) != 0
        cert.checks.append(Check("det_nonzero", "frame", None, 1, int(nonsingular), nonsingular))
        if not nonsingular:
            failing = cert.checks[-1]
            continue
        F = BasisFrame(mat)
        j_rng = stream(seed, "J", attempt)
        ok = True
        for i, C in enumerate(request.subspace_list):
            for check in full_dimension_checks(C.to_frame(F), f"C[{i}]", mode, j_rng):
                cert.checks.append(check)
                if not check.passed:
                    ok, failing = False, check
                    break
            if not ok:
                break
        if ok:
            for k, W in enumerate(request.multivector_spaces):
                checks, t_values = constant_projection_checks(
                    W.to_frame(F), f"W[{k}]", mode, j_rng, t_max_seen)
                cert.checks.extend(checks)
                cert.t_values.update(t_values)
                bad = next((c for c in checks if not c.passed), None)
                if bad is not None:
                    ok, failing = False, bad
                    break
        if ok:
            cert.t_max_seen = dict(t_max_seen)
            return F, cert
    raise GenericityFailure(
        f"no generic frame within {retry_limit} resamples (seed {seed})", failing)
