"""Set-pair and subspace-pair systems, weighted sums, and the certificate chain.

The certificate follows the wedge construction: with a generic frame F,
W_1 ⊆ W_2 ⊆ ... are built by lifting the previous space to the next exterior
degree and adding the blade of the next A-space.  Each step projects onto the
first n_i basis vectors and records the dimensions that force
``sum 1/C(a_i + b_i, a_i) <= 1``, every one computed exactly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Iterable, Sequence

from .errors import CapacityError, GenericityFailure, NotABasis, PreconditionError
from .exterior import BasisFrame, MultiVector, Subspace, span, wedge
from .projection import (
    DEFAULT_COEFF_BOUND,
    DEFAULT_RETRY_LIMIT,
    GenericityCertificate,
    GenericityRequest,
    constant_projection_checks,
    project_multivector,
    project_subspace,
    projection_dim,
    sample_generic_basis,
    wedge_with_power,
)
from .rational_linalg import intersect_row_spaces, rank, RatMatrix
from .sampling import random_int_matrix, stream
from .subsets import full, members, to_mask

MODES = (
    "symmetric",
    "skew",
    "skew_with_ordered_profiles",
    "constant_sum_symmetric",
    "bounded_b_symmetric",
    "mixed_profile_conjecture",
)

SINGLE_PROFILE_N_CAP = 6
MIXED_PROFILE_N_CAP = 5


def weight(a: int, b: int) -> Fraction:
    return Fraction(1, comb(a + b, a))


# -- systems ------------------------------------------------------------------

class SetPairSystem:
    """Ordered pairs (A_i, B_i) of finite sets of positive integers."""

    __slots__ = ("pairs",)

    def __init__(self, pairs: Iterable[tuple[Iterable[int], Iterable[int]]]):
        out = []
        for A, B in pairs:
            A, B = tuple(sorted(set(A))), tuple(sorted(set(B)))
            if any(x < 1 for x in A + B):
                raise ValueError("set elements must be positive integers")
            out.append((A, B))
        self.pairs = tuple(out)

    def __len__(self) -> int:
        return len(self.pairs)

    def __iter__(self):
        return iter(self.pairs)

    def __eq__(self, other) -> bool:
        return isinstance(other, SetPairSystem) and self.pairs == other.pairs

    def __hash__(self) -> int:
        return hash(self.pairs)

    def __repr__(self) -> str:
        body = ", ".join(f"({set(A) or '{}'}, {set(B) or '{}'})" for A, B in self.pairs)
        return f"SetPairSystem([{body}])"

    @property
    def profiles(self) -> list[tuple[int, int]]:
        return [(len(A), len(B)) for A, B in self.pairs]

    @property
    def ground(self) -> int:
        return max((x for A, B in self.pairs for x in A + B), default=0)

    def masks(self) -> list[tuple[int, int]]:
        return [(to_mask(A), to_mask(B)) for A, B in self.pairs]

    def has_empty_sets(self) -> bool:
        return any(not A or not B for A, B in self.pairs)


class SubspacePairSystem:
    """Ordered pairs of subspaces of Q^N, each given by generator vectors.

    Generators are standard coordinates.  ``A[i]``/``B[i]`` are the spans as
    degree-1 :class:`Subspace` objects.
    """

    __slots__ = ("N", "generators", "A", "B")

    def __init__(self, N: int, pairs: Iterable[tuple[Sequence[Sequence], Sequence[Sequence]]]):
        self.N = N
        gens = []
        self.A, self.B = [], []
        for i, (ga, gb) in enumerate(pairs):
            ga = [[Fraction(x) for x in v] for v in ga]
            gb = [[Fraction(x) for x in v] for v in gb]
            if any(len(v) != N for v in ga + gb):
                raise ValueError(f"pair {i + 1}: generators must have length N={N}")
            A = span([MultiVector.vector(v) for v in ga], N, 1)
            B = span([MultiVector.vector(v) for v in gb], N, 1)
            if A.dim == 0 or B.dim == 0:
                raise PreconditionError(f"pair {i + 1} has a trivial subspace", i + 1)
            gens.append((ga, gb))
            self.A.append(A)
            self.B.append(B)
        self.generators = tuple(gens)

    def __len__(self) -> int:
        return len(self.generators)

    @property
    def profiles(self) -> list[tuple[int, int]]:
        return [(A.dim, B.dim) for A, B in zip(self.A, self.B)]

    def intersection_dim(self, i: int, j: int) -> int:
        """dim(A_i ∩ B_j), 0-based indices."""
        A, B = self.A[i], self.B[j]
        both = Subspace.from_int_rows(self.N, 1, A.frame, A.int_rows + B.int_rows)
        return A.dim + B.dim - both.dim

    def intersection(self, i: int, j: int) -> Subspace:
        vecs = intersect_row_spaces(self.A[i].int_rows, self.B[j].int_rows)
        return span([MultiVector.vector(v) for v in vecs], self.N, 1)

    def combined(self, i: int) -> Subspace:
        """C_i = span(A_i ∪ B_i)."""
        A, B = self.A[i], self.B[i]
        return Subspace.from_int_rows(self.N, 1, A.frame, A.int_rows + B.int_rows)


def weighted_sum(system: SetPairSystem | SubspacePairSystem) -> Fraction:
    return sum((weight(a, b) for a, b in system.profiles), Fraction(0))


def weighted_sum_bounded_b(system) -> Fraction:
    """sum 1/C(a_i + b, a_i) with b the largest B-dimension."""
    b = max((b for _, b in system.profiles), default=0)
    return sum((weight(a, b) for a, _ in system.profiles), Fraction(0))


def sets_to_subspaces(system: SetPairSystem, N: int | None = None) -> SubspacePairSystem:
    """Coordinate subspaces span{e_a : a in A_i}, span{e_b : b in B_i} of Q^N."""
    N = max(system.ground, 1) if N is None else N
    if N < system.ground:
        raise PreconditionError(f"ambient N={N} smaller than the ground set")

    def coord(x):
        v = [0] * N
        v[x - 1] = 1
        return v

    pairs = []
    for i, (A, B) in enumerate(system.pairs):
        if not A or not B:
            raise PreconditionError(f"pair {i + 1} has an empty set", i + 1)
        pairs.append(([coord(x) for x in A], [coord(x) for x in B]))
    return SubspacePairSystem(N, pairs)


def transform_system(system: SubspacePairSystem, T: Sequence[Sequence]) -> SubspacePairSystem:
    """Apply an invertible N x N matrix to every generator; intersection dimensions are kept."""
    M = RatMatrix.from_rows(T)
    pairs = [([M.matvec(v) for v in ga], [M.matvec(v) for v in gb]) for ga, gb in system.generators]
    return SubspacePairSystem(system.N, pairs)


# -- conditions ------------------------------------------------------------------

@dataclass(frozen=True)
class ConditionResult:
    name: str
    passed: bool
    violation: tuple[int, int] | None = None


@dataclass(frozen=True)
class ConditionReport:
    mode: str
    conditions: tuple[ConditionResult, ...]
    nonempty: bool
    weighted_sum: Fraction
    weighted_sum_bounded_b: Fraction | None = None

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.conditions)

    @property
    def first_failure(self) -> ConditionResult | None:
        return next((c for c in self.conditions if not c.passed), None)


def _predicates(system):
    if isinstance(system, SetPairSystem):
        masks = system.masks()

        def meets(i, j):
            return bool(masks[i][0] & masks[j][1])
        nonempty = not system.has_empty_sets()
    else:
        def meets(i, j):
            return system.intersection_dim(i, j) > 0
        nonempty = True
    return meets, nonempty


def verify_conditions(system: SetPairSystem | SubspacePairSystem, mode: str) -> ConditionReport:
    """Check the hypotheses named by ``mode``; violations are 1-based (i, j)."""
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}; expected one of {MODES}")
    meets, nonempty = _predicates(system)
    m = len(system)
    prof = system.profiles

    def first(pairs, test):
        for i, j in pairs:
            if not test(i, j):
                return (i + 1, j + 1)
        return None

    def result(name, violation):
        return ConditionResult(name, violation is None, violation)

    def disjoint():
        return result("disjoint", first(((i, i) for i in range(m)), lambda i, j: not meets(i, i)))

    def skew():
        return result("skew_intersecting",
                      first(((i, j) for i in range(m) for j in range(i + 1, m)), meets))

    def cross():
        return result("cross_intersecting",
                      first(((i, j) for i in range(m) for j in range(m) if i != j), meets))

    def ordered():
        bad = next((i for i in range(m - 1)
                    if prof[i + 1][0] < prof[i][0] or prof[i + 1][1] > prof[i][1]), None)
        return result("ordered_profiles", None if bad is None else (bad + 1, bad + 2))

    def constant_sum():
        sums = [a + b for a, b in prof]
        bad = next((i for i in range(1, m) if sums[i] != sums[0]), None)
        return result("constant_profile_sum", None if bad is None else (1, bad + 1))

    def cross_profile():
        return result("cross_profile_intersecting",
                      first(((i, j) for i in range(m) for j in range(m)
                             if i != j and prof[i] != prof[j]), meets))

    table = {
        "symmetric": (disjoint, cross),
        "skew": (disjoint, skew),
        "skew_with_ordered_profiles": (disjoint, skew, ordered),
        "constant_sum_symmetric": (disjoint, cross, constant_sum),
        "bounded_b_symmetric": (disjoint, cross),
        "mixed_profile_conjecture": (disjoint, skew, cross_profile),
    }
    conditions = tuple(check() for check in table[mode])
    bounded = weighted_sum_bounded_b(system) if mode == "bounded_b_symmetric" else None
    return ConditionReport(mode, conditions, nonempty, weighted_sum(system), bounded)


# -- blades and the certificate chain -----------------------------------------------

def blade(generators: Sequence, frame: BasisFrame | None = None) -> MultiVector:
    """Wedge of the generators (degree-1 elements or coordinate lists)."""
    vecs = [g if isinstance(g, MultiVector) else MultiVector.vector(list(g), frame)
            for g in generators]
    if not vecs:
        raise NotABasis("blade of an empty generator list")
    out = vecs[0]
    for v in vecs[1:]:
        out = wedge(out, v)
    if not out:
        raise NotABasis("generators are linearly dependent")
    return out


def profile_case(prev: tuple[int, int], cur: tuple[int, int]) -> str:
    (a0, b0), (a1, b1) = prev, cur
    if (a0, b0) == (a1, b1):
        return "unchanged"
    n0, n1 = a0 + b0, a1 + b1
    if n1 == n0:
        return "constant_sum"
    return "B_shrinks_faster" if n1 < n0 else "A_grows_faster"


@dataclass(frozen=True)
class StepRecord:
    """Transition into pair ``index`` (1-based): from W_{i-1} to W_i.

    ``dim_X``/``dim_Y`` belong to the previous space (X_{i-1}, Y_{i-1});
    ``dim_Z_prev`` is dim Z_{i-1}.  For the first step the previous profile
    is taken equal to the current one and all previous spaces are zero.
    """

    index: int
    a: int
    b: int
    n: int
    dim_W: int
    dim_Z: int
    dim_Z_prev: int
    dim_X: int
    dim_Y: int
    profile_case: str
    step_lhs: Fraction
    step_rhs: Fraction
    z_fraction: Fraction
    partial_sum: Fraction
    blade_product_nonzero: bool
    lifted_products_vanish: bool

    @property
    def zdim_holds(self) -> bool:
        return self.dim_Z == self.dim_Y + 1

    @property
    def step_holds(self) -> bool:
        return self.step_lhs >= self.step_rhs

    @property
    def blade_independence(self) -> bool:
        return self.blade_product_nonzero and self.lifted_products_vanish

    @property
    def telescoping_holds(self) -> bool:
        return self.z_fraction >= self.partial_sum

    @property
    def passed(self) -> bool:
        return self.zdim_holds and self.step_holds and self.blade_independence \
            and self.telescoping_holds


@dataclass
class TwoFamiliesCertificate:
    seed: int
    N: int
    frame_seed: int
    pipeline_restarts: int
    genericity: GenericityCertificate
    steps: list[StepRecord] = field(default_factory=list)
    # (label of W_i, m) -> constant projection dimension in the final frame
    w_t_values: dict = field(default_factory=dict)
    w_checks_run: int = 0
    final_sum: Fraction = Fraction(0)

    @property
    def steps_pass(self) -> bool:
        return all(s.passed for s in self.steps)

    @property
    def verdict(self) -> str:
        return "pass" if self.steps_pass and self.final_sum <= 1 else "fail"


class _Restart(Exception):
    pass


def _frame_blade(S: Subspace, frame: BasisFrame) -> MultiVector:
    basis = S.to_frame(frame)
    return blade([MultiVector(S.n, 1, {1 << k: x for k, x in enumerate(row) if x}, frame)
                  for row in basis.int_rows])


def _run_chain(system: SubspacePairSystem, frame: BasisFrame, cert: TwoFamiliesCertificate,
               mode, j_rng, t_max_seen: dict):
    N = system.N
    prof = system.profiles
    a_prev, b_prev = prof[0]
    W = Subspace.zero(N, a_prev, frame)
    partial = Fraction(0)
    for i, (a, b) in enumerate(prof):
        n, n_prev = a + b, a_prev + b_prev
        d = a - a_prev
        prefix = full(n)
        X = project_subspace(W, prefix)
        Y = wedge_with_power(X, d, within=prefix)
        dim_Z_prev = projection_dim(W, full(n_prev))
        v_A = _frame_blade(system.A[i], frame)
        v_B = _frame_blade(system.B[i], frame)
        lifted = wedge_with_power(W, d)
        W = Subspace.from_int_rows(
            N, a, frame, lifted.int_rows + [[int(x) for x in _dense_int(v_A)]])
        Z = project_subspace(W, prefix)
        pA, pB = project_multivector(v_A, prefix), project_multivector(v_B, prefix)
        a0 = bool(wedge(pA, pB))
        a1 = all(not wedge(y, pB) for y in Y.rows)
        partial += weight(a, b)
        cert.steps.append(StepRecord(
            index=i + 1, a=a, b=b, n=n, dim_W=W.dim, dim_Z=Z.dim, dim_Z_prev=dim_Z_prev,
            dim_X=X.dim, dim_Y=Y.dim, profile_case=profile_case((a_prev, b_prev), (a, b)),
            step_lhs=Fraction(Y.dim, comb(n, a)),
            step_rhs=Fraction(dim_Z_prev, comb(n_prev, a_prev)),
            z_fraction=Fraction(Z.dim, comb(n, a)), partial_sum=partial,
            blade_product_nonzero=a0, lifted_products_vanish=a1))
        checks, t_values = constant_projection_checks(W, f"W_{i + 1}", mode, j_rng, t_max_seen)
        cert.w_checks_run += len(checks)
        cert.w_t_values.update(t_values)
        if not all(c.passed for c in checks):
            raise _Restart()
        a_prev, b_prev = a, b


def _dense_int(w: MultiVector) -> list[int]:
    from .rational_linalg import integer_row
    return integer_row(w.dense())


def certify_two_families(system: SetPairSystem | SubspacePairSystem, seed: int = 0,
                         coeff_bound: int = DEFAULT_COEFF_BOUND,
                         retry_limit: int = DEFAULT_RETRY_LIMIT) -> TwoFamiliesCertificate:
    """Run the wedge-chain certificate for a skew system with ordered profiles.

    The frame is certified up front for every C_i = A_i + B_i and every
    nonzero A_i ∩ B_j (i < j); each W_i is then checked for constant
    projection dimensions as it is built.  A failure there restarts the whole
    chain in a freshly sampled frame, at most ``retry_limit`` times.
    """
    if isinstance(system, SetPairSystem):
        system = sets_to_subspaces(system)
    report = verify_conditions(system, "skew_with_ordered_profiles")
    if not report.passed:
        bad = report.first_failure
        raise PreconditionError(
            f"system fails {bad.name} at pairs {bad.violation}", bad.violation)
    if len(system) == 0:
        raise PreconditionError("empty system")
    m = len(system)
    C = [system.combined(i) for i in range(m)]
    cross = [system.intersection(i, j) for i in range(m) for j in range(i + 1, m)]
    request = GenericityRequest(system.N, subspace_list=C + [S for S in cross if S.dim])
    mode = request.mode
    t_max_seen: dict = {}
    last_error = None
    for restart in range(retry_limit + 1):
        frame_seed = stream(seed, "pipeline", restart).getrandbits(63)
        try:
            frame, gcert = sample_generic_basis(request, frame_seed, coeff_bound, retry_limit)
        except GenericityFailure as exc:
            last_error = exc
            continue
        cert = TwoFamiliesCertificate(seed, system.N, frame_seed, restart, gcert)
        try:
            _run_chain(system, frame, cert, mode, stream(frame_seed, "W-J"), t_max_seen)
        except _Restart:
            last_error = GenericityFailure("a W_i space failed the constant-projection check")
            continue
        cert.final_sum = weighted_sum(system)
        return cert
    raise last_error or GenericityFailure("certificate pipeline exhausted its restarts")


def pad_b_dimensions(system: SubspacePairSystem, seed: int = 0, bound: int = 9) -> SubspacePairSystem:
    """Sort by dim A_i and extend each B_i by random vectors up to b = max dim B_i.

    The ambient space grows to max(N, max a_i + b) if needed.  Extra vectors
    are resampled until A_i ∩ B_i stays trivial and the new B_i has dimension b.
    """
    b = max(bi for _, bi in system.profiles)
    a_max = max(ai for ai, _ in system.profiles)
    N = max(system.N, a_max + b)
    order = sorted(range(len(system)), key=lambda i: (system.profiles[i][0], i))
    rng = stream(seed, "pad-b")
    pairs = []
    for i in order:
        ga, gb = system.generators[i]
        ga = [list(v) + [0] * (N - system.N) for v in ga]
        gb = [list(v) + [0] * (N - system.N) for v in gb]
        a_i = system.A[i].dim
        need = b - system.B[i].dim
        while True:
            extra = random_int_matrix(rng, need, N, bound)
            cand = gb + extra
            stacked = RatMatrix.from_rows(ga + cand)
            if rank(RatMatrix.from_rows(cand)) == b and rank(stacked) == a_i + b:
                break
        pairs.append((ga, cand))
    return SubspacePairSystem(N, pairs)


# -- example generators --------------------------------------------------------------

def _complementary_pairs(ground: Sequence[int], a: int) -> list[tuple[tuple, tuple]]:
    ground = tuple(ground)
    return [(A, tuple(x for x in ground if x not in A)) for A in combinations(ground, a)]


def uniform_extremal(a: int, b: int) -> SetPairSystem:
    return SetPairSystem(_complementary_pairs(range(1, a + b + 1), a))


def death(n: int) -> SetPairSystem:
    """All (A, [n] minus A), first sets in decreasing size."""
    ground = range(1, n + 1)
    pairs = []
    for k in range(n, -1, -1):
        pairs.extend(_complementary_pairs(ground, k))
    return SetPairSystem(pairs)


def log_example(n: int) -> SetPairSystem:
    return SetPairSystem(({i}, range(1, i)) for i in range(1, n + 1))


def appended_pair(a: int, b: int, c: int) -> SetPairSystem:
    """Complementary (a, b) pairs on [a+b] followed by one (a, b+c) pair.

    B* contains S = {1..b+1} plus the new points a+b+1 .. a+b+c-1; A* is the
    rest of [a+b] together with the point a+b+c.
    """
    if min(a, b, c) <= 0:
        raise PreconditionError("appended_pair needs a, b, c > 0")
    n = a + b
    S = set(range(1, b + 2))
    B_star = S | set(range(n + 1, n + c))
    A_star = (set(range(1, n + 1)) - S) | {n + c}
    return SetPairSystem(list(uniform_extremal(a, b)) + [(A_star, B_star)])


def two_level(a: int, b: int, c: int, d: int) -> SetPairSystem:
    """Complementary (a, b) pairs on [a+b], then (a-c, b+c+d) pairs on [a+b+d]."""
    if min(a, b, c, d) <= 0 or a <= c:
        raise PreconditionError("two_level needs a, b, c, d > 0 and a > c")
    n = a + b
    first = _complementary_pairs(range(1, n + 1), a)
    second = _complementary_pairs(range(1, n + d + 1), a - c)
    return SetPairSystem(first + second)


EXAMPLES = {
    "uniform_extremal": (uniform_extremal, ("a", "b")),
    "death": (death, ("n",)),
    "log": (log_example, ("n",)),
    "appended_pair": (appended_pair, ("a", "b", "c")),
    "two_level": (two_level, ("a", "b", "c", "d")),
}


def generate_example(name: str, **params) -> SetPairSystem:
    if name not in EXAMPLES:
        raise ValueError(f"unknown example {name!r}; expected one of {sorted(EXAMPLES)}")
    fn, names = EXAMPLES[name]
    missing = [p for p in names if p not in params]
    if missing:
        raise ValueError(f"example {name!r} needs parameters {missing}")
    return fn(**{p: int(params[p]) for p in names})


# -- random systems ------------------------------------------------------------------------

def random_ordered_skew_system(rng, N: int, m: int, tries: int = 200) -> SetPairSystem:
    """Random set-pair system on [N] passing the ordered-profile skew conditions.

    Profiles walk monotonically (a up, b down); each pair is drawn at random
    among those compatible with the prefix.  The result may be shorter than
    ``m`` when the prefix admits no continuation.
    """
    a = rng.randint(1, max(1, N // 2))
    b = rng.randint(1, N - a)
    pairs: list[tuple[int, int]] = []
    for _ in range(m):
        if pairs and rng.random() < 0.4:
            if rng.random() < 0.5 and a + b < N:
                a += 1
            elif b > 1:
                b -= 1
        found = None
        for _ in range(tries):
            A = to_mask(rng.sample(range(1, N + 1), a))
            rest = [x for x in range(1, N + 1) if not A >> (x - 1) & 1]
            if len(rest) < b:
                break
            B = to_mask(rng.sample(rest, b))
            if all(pA & B for pA, _ in pairs):
                found = (A, B)
                break
        if found is None:
            break
        pairs.append(found)
    return SetPairSystem((members(A), members(B)) for A, B in pairs)


# -- brute force -------------------------------------------------------------------------

@dataclass(frozen=True)
class SearchResult:
    max_weighted_sum: Fraction
    max_m: int
    witness: SetPairSystem
    states: int
    exhausted: bool


def _candidates(profiles, ground_n):
    out = []
    for a, b in sorted(set(profiles)):
        for A in combinations(range(1, ground_n + 1), a):
            rest = [x for x in range(1, ground_n + 1) if x not in A]
            for B in combinations(rest, b):
                out.append((A, B, (a, b)))
    out.sort(key=lambda t: (t[0], t[1]))
    return [(to_mask(A), to_mask(B), p, weight(*p)) for A, B, p in out]


class _Budget(Exception):
    pass


def brute_force_extremal(profiles: Sequence[tuple[int, int]], ground_n: int,
                         condition_mode: str = "skew", budget: int | None = None,
                         cap: int | None = None) -> SearchResult:
    """Exhaustive maximum weighted sum over systems of pairs on [ground_n].

    Pairs are drawn from the given profiles.  For a single profile the weighted
    sum is m / C(a+b, a), so the count maximum is reported too.  Symmetric
    modes run a weighted clique search; skew modes run a memoised search over
    the state that constrains future pairs (the A-sets so far, plus the last
    profile or cross-profile B-sets where the mode needs them).  The first pair
    is fixed to the canonical representative of its profile's orbit under
    permutations of the ground set.  The witness is the lexicographically least
    optimal system.
    """
    profiles = sorted(set(tuple(p) for p in profiles))
    if condition_mode not in MODES:
        raise ValueError(f"unknown mode {condition_mode!r}")
    if cap is None:
        cap = SINGLE_PROFILE_N_CAP if len(profiles) <= 1 else MIXED_PROFILE_N_CAP
    if ground_n > cap:
        raise CapacityError(f"search capped at ground_n <= {cap} for {len(profiles)} profile(s)")
    if not profiles:
        return SearchResult(Fraction(0), 0, SetPairSystem([]), 0, True)
    if condition_mode == "constant_sum_symmetric" and len({a + b for a, b in profiles}) > 1:
        raise PreconditionError("constant_sum_symmetric needs profiles with one profile sum")
    cands = _candidates(profiles, ground_n)
    if condition_mode in ("symmetric", "constant_sum_symmetric", "bounded_b_symmetric"):
        return _symmetric_search(cands, profiles)
    return _skew_search(cands, profiles, condition_mode, budget)


def _result(best, seq, cands, profiles, states, exhausted):
    system = SetPairSystem((members(cands[k][0]), members(cands[k][1])) for k in seq)
    max_m = len(seq) if len(profiles) == 1 else max(
        (sum(1 for k in seq if cands[k][2] == p) for p in profiles), default=0)
    return SearchResult(best, max_m if len(profiles) == 1 else len(seq), system, states, exhausted)


def _symmetric_search(cands, profiles):
    from .hypergraphs import max_weight_cliques
    adjacency = []
    for i, (A, B, _, _) in enumerate(cands):
        nb = 0
        for j, (A2, B2, _, _) in enumerate(cands):
            if i != j and A & B2 and A2 & B:
                nb |= 1 << j
        adjacency.append(nb)
    best, cliques = max_weight_cliques(adjacency, [c[3] for c in cands])
    seq = cliques[0] if cliques else ()
    return _result(Fraction(best), seq, cands, profiles, len(cands), True)


def _skew_search(cands, profiles, mode, budget):
    ordered = mode == "skew_with_ordered_profiles"
    conjecture = mode == "mixed_profile_conjecture"
    memo: dict = {}
    best_seen = [Fraction(0), ()]

    def key(As, Bp, last):
        return (As, Bp if conjecture else None, last if ordered else None)

    def feasible(k, As, Bp, last):
        A, B, p, _ = cands[k]
        if any(not (A2 & B) for A2 in As):
            return False
        if ordered and last is not None and (p[0] < last[0] or p[1] > last[1]):
            return False
        if conjecture and any(not (A & B2) for B2, p2 in Bp if p2 != p):
            return False
        return True

    def solve(As, Bp, last, prefix, prefix_value):
        # every prefix is itself a valid system, so it is a lower bound if the budget runs out
        if prefix_value > best_seen[0]:
            best_seen[:] = [prefix_value, tuple(prefix)]
        k_ = key(As, Bp, last)
        if k_ in memo:
            return memo[k_]
        if budget is not None and len(memo) >= budget:
            raise _Budget()
        best, choice = Fraction(0), None
        for k in range(len(cands)):
            if not feasible(k, As, Bp, last):
                continue
            A, B, p, w = cands[k]
            prefix.append(k)
            value = w + solve(As | {A}, Bp | {(B, p)} if conjecture else Bp, p,
                              prefix, prefix_value + w)[0]
            prefix.pop()
            if value > best:
                best, choice = value, k
        memo[k_] = (best, choice)
        return memo[k_]

    def rebuild(As, Bp, last, prefix):
        seq = list(prefix)
        while True:
            _, k = memo[key(As, Bp, last)]
            if k is None:
                return seq
            A, B, p, _ = cands[k]
            seq.append(k)
            As, Bp, last = As | {A}, (Bp | {(B, p)} if conjecture else Bp), p

    exhausted = True
    roots = []
    for p in profiles:
        a, b = p
        A, B = full(a), full(a + b) & ~full(a)
        roots.append(next(k for k, c in enumerate(cands) if c[0] == A and c[1] == B))
    results = []
    try:
        for k in sorted(roots):
            A, B, p, w = cands[k]
            As, Bp = frozenset({A}), (frozenset({(B, p)}) if conjecture else frozenset())
            value = w + solve(As, Bp, p, [k], w)[0]
            results.append((value, k, As, Bp, p))
            if value > best_seen[0]:
                best_seen[:] = [value, tuple(rebuild(As, Bp, p, [k]))]
    except _Budget:
        exhausted = False
    if not results:
        return _result(best_seen[0], best_seen[1], cands, profiles, len(memo), exhausted)
    top = max(r[0] for r in results)
    value, k, As, Bp, p = next(r for r in results if r[0] == top)
    if value >= best_seen[0]:
        best_seen[:] = [value, tuple(rebuild(As, Bp, p, [k]))]
    return _result(best_seen[0], best_seen[1], cands, profiles, len(memo), exhausted)


@dataclass(frozen=True)
class ConjectureReport:
    profiles: tuple[tuple[int, int], ...]
    ground_n: int
    max_weighted_sum: Fraction
    witness: SetPairSystem
    counterexample_found: bool
    exhausted: bool
    states: int


def conjecture_search(profiles: Sequence[tuple[int, int]], ground_n: int,
                      budget: int | None = None) -> ConjectureReport:
    """Largest weighted sum among systems with skew, cross-profile intersecting pairs.

    Sets must be nonempty, so profiles with a zero entry are rejected.  A
    result above 1 would be a counterexample; the report only states what the
    bounded search saw.
    """
    profiles = sorted(set(tuple(p) for p in profiles))
    if any(a < 1 or b < 1 for a, b in profiles):
        raise PreconditionError("conjecture profiles need nonempty sets")
    res = brute_force_extremal(profiles, ground_n, "mixed_profile_conjecture", budget)
    return ConjectureReport(tuple(profiles), ground_n, res.max_weighted_sum, res.witness,
                            res.max_weighted_sum > 1, res.exhausted, res.states)
