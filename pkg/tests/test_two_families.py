from fractions import Fraction
from itertools import combinations
from math import comb

import pytest
from hypothesis import given, strategies as st

from extalg.errors import CapacityError, NotABasis, PreconditionError
from extalg.exterior import MultiVector
from extalg.sampling import random_frame, random_int_matrix, stream
from extalg.two_families import (
    SetPairSystem,
    SubspacePairSystem,
    appended_pair,
    blade,
    brute_force_extremal,
    certify_two_families,
    conjecture_search,
    death,
    generate_example,
    log_example,
    pad_b_dimensions,
    profile_case,
    random_ordered_skew_system,
    sets_to_subspaces,
    transform_system,
    two_level,
    uniform_extremal,
    verify_conditions,
    weighted_sum,
)


def harmonic(n):
    return sum(Fraction(1, i) for i in range(1, n + 1))


# -- blades and sums ---------------------------------------------------------------

def test_blade_examples():
    assert blade([[1, 0], [0, 1]]) == MultiVector.monomial(2, {1, 2})
    assert blade([[1, 1], [1, -1]]) == MultiVector.monomial(2, {1, 2}, -2)
    with pytest.raises(NotABasis):
        blade([[1, 0], [2, 0]])


def test_weighted_sum_examples():
    assert weighted_sum(SetPairSystem([({1}, {2})])) == Fraction(1, 2)
    assert weighted_sum(uniform_extremal(2, 3)) == 1
    assert weighted_sum(death(3)) == 4


# -- examples ---------------------------------------------------------------------------

@pytest.mark.parametrize("n", range(1, 7))
def test_death_and_log(n):
    assert weighted_sum(death(n)) == n + 1
    assert len(death(n)) == 2 ** n
    assert weighted_sum(log_example(n)) == harmonic(n)
    assert death(n).has_empty_sets() and log_example(n).has_empty_sets()
    assert verify_conditions(death(n), "skew").passed
    assert verify_conditions(log_example(n), "skew").passed


def test_named_example_values():
    assert len(death(3)) == 8
    assert weighted_sum(log_example(4)) == Fraction(25, 12)
    assert weighted_sum(appended_pair(1, 1, 1)) == Fraction(4, 3)


@pytest.mark.parametrize("a,b,c", [(1, 1, 1), (2, 1, 1), (1, 2, 3), (2, 2, 2)])
def test_appended_pair(a, b, c):
    S = appended_pair(a, b, c)
    assert weighted_sum(S) == 1 + Fraction(1, comb(a + b + c, a))
    assert S.profiles[-1] == (a, b + c)
    report = verify_conditions(S, "skew")
    assert report.passed and report.nonempty
    # b grows at the last pair, which is what lets the sum pass 1
    ordered = verify_conditions(S, "skew_with_ordered_profiles")
    assert ordered.first_failure.name == "ordered_profiles"


@pytest.mark.parametrize("a,b,c,d", [(2, 1, 1, 1), (3, 1, 2, 1), (3, 2, 1, 2), (2, 2, 1, 1)])
def test_two_level(a, b, c, d):
    S = two_level(a, b, c, d)
    assert weighted_sum(S) == 2
    assert verify_conditions(S, "skew").passed


@pytest.mark.parametrize("a,b", [(1, 1), (1, 2), (2, 2), (3, 1), (2, 3)])
def test_uniform_extremal(a, b):
    S = uniform_extremal(a, b)
    assert weighted_sum(S) == 1 and len(S) == comb(a + b, a)
    assert verify_conditions(S, "symmetric").passed


def test_generate_example_validation():
    assert generate_example("death", n=3) == death(3)
    with pytest.raises(ValueError):
        generate_example("nope")
    with pytest.raises(ValueError):
        generate_example("two_level", a=1, b=1, c=1)
    with pytest.raises(PreconditionError):
        two_level(1, 1, 1, 1)


# -- conditions -----------------------------------------------------------------------------

def test_condition_examples():
    S = SetPairSystem([({1}, {2}), ({3}, {1})])
    assert verify_conditions(S, "skew").passed
    rep = verify_conditions(S, "symmetric")
    # A_2 = {3} misses B_1 = {2}; violations are reported as (i, j) for A_i and B_j
    assert not rep.passed and rep.first_failure.violation == (2, 1)
    rep = verify_conditions(death(3), "skew_with_ordered_profiles")
    assert rep.first_failure.name == "ordered_profiles" and not rep.nonempty
    assert verify_conditions(SetPairSystem([({1}, {1})]), "skew").first_failure.name == "disjoint"


def test_constant_sum_and_bounded_b():
    S = SetPairSystem([({1}, {2, 3}), ({2, 3}, {1})])
    assert verify_conditions(S, "constant_sum_symmetric").passed
    T = SetPairSystem([({1}, {2}), ({2, 3}, {1})])
    rep = verify_conditions(T, "constant_sum_symmetric")
    assert rep.first_failure.name == "constant_profile_sum"
    rep = verify_conditions(T, "bounded_b_symmetric")
    assert rep.weighted_sum_bounded_b == Fraction(1, 2) + Fraction(1, 3)


def test_conjecture_mode():
    # equal profiles only need the skew condition
    S = SetPairSystem([({1}, {2}), ({3}, {1})])
    assert verify_conditions(S, "mixed_profile_conjecture").passed
    T = SetPairSystem([({1}, {2}), ({3}, {1, 4})])
    rep = verify_conditions(T, "mixed_profile_conjecture")
    assert rep.first_failure.name == "cross_profile_intersecting"


def test_sets_to_subspaces_examples():
    V = sets_to_subspaces(SetPairSystem([({1}, {2})]))
    assert V.A[0].int_rows == [[1, 0]] and V.B[0].int_rows == [[0, 1]]
    with pytest.raises(PreconditionError):
        sets_to_subspaces(death(2))


@st.composite
def set_systems(draw, n_max=5, m_max=5):
    n = draw(st.integers(2, n_max))
    subset = st.sets(st.integers(1, n), min_size=1, max_size=n)
    pairs = draw(st.lists(st.tuples(subset, subset), min_size=1, max_size=m_max))
    return SetPairSystem(pairs)


@given(set_systems(), st.sampled_from(["symmetric", "skew", "skew_with_ordered_profiles",
                                       "mixed_profile_conjecture"]))
def test_condition_transfer(S, mode):
    V = sets_to_subspaces(S)
    assert [a for a, _ in V.profiles] == [len(A) for A, _ in S.pairs]
    assert weighted_sum(V) == weighted_sum(S)
    a, b = verify_conditions(S, mode), verify_conditions(V, mode)
    assert [(c.name, c.violation) for c in a.conditions] == \
        [(c.name, c.violation) for c in b.conditions]


@given(set_systems(), st.integers(0, 10 ** 6))
def test_conditions_invariant_under_linear_maps(S, seed):
    V = sets_to_subspaces(S)
    F = random_frame(stream(seed, "T"), V.N)
    W = transform_system(V, F.matrix.to_rows())
    for mode in ("symmetric", "skew"):
        assert verify_conditions(V, mode).conditions == verify_conditions(W, mode).conditions


# -- certificate --------------------------------------------------------------------------------

def test_profile_cases():
    assert profile_case((2, 2), (2, 2)) == "unchanged"
    assert profile_case((1, 3), (2, 2)) == "constant_sum"
    assert profile_case((2, 3), (2, 2)) == "B_shrinks_faster"
    assert profile_case((1, 2), (2, 2)) == "A_grows_faster"


@pytest.mark.parametrize("a,b", [(1, 1), (1, 2), (2, 2)])
def test_certificate_uniform_extremal_is_tight(a, b):
    cert = certify_two_families(uniform_extremal(a, b), seed=0)
    assert cert.verdict == "pass" and cert.final_sum == 1
    for s in cert.steps:
        assert s.passed and s.step_lhs == s.step_rhs and s.z_fraction == s.partial_sum


def test_single_pair_certificate():
    cert = certify_two_families(SetPairSystem([({1, 2}, {3})]), seed=4)
    assert cert.final_sum == Fraction(1, 3)
    assert cert.steps[0].dim_Z == 1 and cert.verdict == "pass"


def test_certificate_rejects_invalid_systems():
    with pytest.raises(PreconditionError) as info:
        certify_two_families(SetPairSystem([({1, 2}, {3}), ({1}, {2, 3})]))
    assert info.value.index == (1, 2)
    with pytest.raises(PreconditionError):
        certify_two_families(death(3))


def test_certificate_deterministic():
    S = random_ordered_skew_system(stream(2, "det"), 5, 5)
    a, b = certify_two_families(S, seed=8), certify_two_families(S, seed=8)
    assert a.steps == b.steps and a.frame_seed == b.frame_seed
    assert a.genericity == b.genericity


@pytest.mark.parametrize("seed", range(6))
def test_certificate_random_coordinate_systems(seed):
    S = random_ordered_skew_system(stream(seed, "sys"), 5, 6)
    cert = certify_two_families(S, seed=seed)
    assert cert.verdict == "pass" and cert.final_sum <= 1
    assert all(s.zdim_holds for s in cert.steps)


def test_certificate_on_transformed_subspaces():
    V = sets_to_subspaces(uniform_extremal(1, 2))
    T = random_int_matrix(stream(1, "T"), V.N, V.N, 3)
    while True:
        try:
            W = transform_system(V, T)
            break
        except Exception:
            T = random_int_matrix(stream(2, "T"), V.N, V.N, 3)
    cert = certify_two_families(W, seed=3)
    assert cert.verdict == "pass" and cert.final_sum == weighted_sum(W)


def test_generic_subspace_system():
    # non-coordinate subspaces of Q^4; B_2 meets A_1 in the line spanned by e_1
    A1 = [[1, 0, 0, 0]]
    B1 = [[0, 1, 0, 0], [0, 0, 1, 0]]
    A2 = [[0, 1, 1, 0]]
    B2 = [[1, 0, 0, 1], [0, 0, 0, 1]]
    S = SubspacePairSystem(4, [(A1, B1), (A2, B2)])
    assert verify_conditions(S, "skew_with_ordered_profiles").passed
    cert = certify_two_families(S, seed=0)
    assert cert.verdict == "pass" and cert.final_sum == Fraction(2, 3)


def test_pad_b_dimensions():
    S = sets_to_subspaces(SetPairSystem([({2, 3}, {1}), ({1}, {2, 3})]))
    assert verify_conditions(S, "symmetric").passed
    P = pad_b_dimensions(S, seed=1)
    assert {b for _, b in P.profiles} == {2}
    assert verify_conditions(P, "skew_with_ordered_profiles").passed
    cert = certify_two_families(P, seed=1)
    assert cert.verdict == "pass"
    assert cert.final_sum == verify_conditions(S, "bounded_b_symmetric").weighted_sum_bounded_b


# -- brute force --------------------------------------------------------------------------------

def _naive_skew(profiles, n):
    """Plain DFS over ordered sequences with no memo and no symmetry pruning."""
    cands = []
    for a, b in profiles:
        for A in combinations(range(1, n + 1), a):
            rest = [x for x in range(1, n + 1) if x not in A]
            for B in combinations(rest, b):
                cands.append((set(A), set(B), Fraction(1, comb(a + b, a))))
    best = Fraction(0)

    def dfs(As, total):
        nonlocal best
        best = max(best, total)
        for A, B, w in cands:
            if all(A2 & B for A2 in As):
                dfs(As + [A], total + w)
    dfs([], Fraction(0))
    return best


@pytest.mark.parametrize("profiles,n", [([(1, 1)], 3), ([(1, 2)], 4), ([(2, 1)], 4),
                                        ([(1, 1), (1, 2)], 4), ([(1, 1)], 4)])
def test_brute_force_matches_naive(profiles, n):
    assert brute_force_extremal(profiles, n, "skew").max_weighted_sum == _naive_skew(profiles, n)


def test_brute_force_examples():
    res = brute_force_extremal([(1, 1)], 3, "skew")
    assert res.max_m == 2 and res.exhausted
    assert brute_force_extremal([(1, 2)], 4, "skew").max_m == 3
    res = brute_force_extremal([(2, 2)], 4, "symmetric")
    assert res.max_m == 6 and res.max_weighted_sum == 1
    assert verify_conditions(res.witness, "symmetric").passed


def test_brute_force_witness_is_valid_and_canonical():
    res = brute_force_extremal([(1, 2), (2, 1)], 4, "skew_with_ordered_profiles")
    assert verify_conditions(res.witness, "skew_with_ordered_profiles").passed
    assert weighted_sum(res.witness) == res.max_weighted_sum
    again = brute_force_extremal([(1, 2), (2, 1)], 4, "skew_with_ordered_profiles")
    assert again.witness == res.witness


def test_brute_force_caps():
    with pytest.raises(CapacityError):
        brute_force_extremal([(1, 1), (1, 2)], 6, "skew")
    with pytest.raises(CapacityError):
        brute_force_extremal([(1, 1)], 7, "skew")


def test_brute_force_budget():
    res = brute_force_extremal([(2, 2)], 6, "skew", budget=10)
    assert not res.exhausted and res.max_weighted_sum > 0


def test_conjecture_search():
    assert conjecture_search([], 4).max_weighted_sum == 0
    single = conjecture_search([(1, 2)], 4)
    assert single.max_weighted_sum == brute_force_extremal([(1, 2)], 4, "skew").max_weighted_sum
    assert single.max_weighted_sum <= 1
    rep = conjecture_search([(1, 1), (1, 2)], 4)
    assert verify_conditions(rep.witness, "mixed_profile_conjecture").passed
    assert rep.counterexample_found == (rep.max_weighted_sum > 1)
    with pytest.raises(PreconditionError):
        conjecture_search([(0, 2)], 3)
