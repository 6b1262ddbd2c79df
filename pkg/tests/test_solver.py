import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from djsim.classical import OneBitFunction
from djsim.protocol import DJInput, run
from djsim.solver import (
    CandidateState,
    CaseLabel,
    InvalidStep,
    grid_agreement,
    grid_clusters,
    grid_search,
    identification_infeasibility,
    nearest_solution_distance,
    real_case_analysis,
    reduction_identity_check,
    residuals,
    solve_real_cases,
    theta_family_state,
)

FIRST_SOLUTION = (0.5, -0.5, 0.5, -0.5)
SECOND_SOLUTION = (0.5, -0.5, -0.5, 0.5)

finite_amp = st.complex_numbers(max_magnitude=100, allow_nan=False, allow_infinity=False)


# --- residuals ------------------------------------------------------------

def test_residuals_on_the_first_solution():
    r = residuals(FIRST_SOLUTION)
    assert abs(r.first) <= 1e-12
    assert abs(r.second) <= 1e-12
    assert abs(r.norm) <= 1e-12
    assert abs(r.fifth - (-1.0)) <= 1e-12


def test_residuals_on_a_basis_vector():
    r = residuals((1, 0, 0, 0))
    assert r.first == 0
    assert r.second == 1
    assert r.norm == 0
    assert r.fifth == 0


def test_residuals_on_the_third_basis_vector():
    r = residuals((0, 0, 1, 0))
    assert r.first == 1
    assert r.second == 0
    assert r.fifth == 0


def test_residuals_on_the_zero_candidate():
    r = residuals((0, 0, 0, 0))
    assert r.first == r.second == r.third == r.fourth == r.fifth == r.sixth == 0
    assert r.norm == -1.0


def test_matrix_pairings_reduce_to_the_closed_forms():
    rng = np.random.default_rng(11)
    for _ in range(500):
        c = tuple(rng.standard_normal(4) + 1j * rng.standard_normal(4))
        r = residuals(c)
        assert abs(r.third - r.first) <= 1e-12
        assert abs(r.fourth - r.second) <= 1e-12
        assert abs(r.fifth - r.sixth) <= 1e-12


def test_reduction_identity_check_is_tight():
    check = reduction_identity_check(samples=10_000, seed=0)
    assert check.max_first_error <= 1e-12
    assert check.max_second_error <= 1e-12
    assert check.max_third_vs_first <= 1e-12
    assert check.max_fourth_vs_second <= 1e-12


@given(st.tuples(finite_amp, finite_amp, finite_amp, finite_amp))
def test_identification_pairing_is_tied_to_the_core_residuals(amps):
    # fifth = (first + second) - squared norm, for every candidate
    r = residuals(amps)
    norm_sq = sum(abs(a) ** 2 for a in amps)
    error = abs(r.fifth - ((r.first + r.second) - norm_sq))
    assert error <= 1e-9 * max(1.0, norm_sq)


def test_candidate_state_validation():
    with pytest.raises(ValueError):
        CandidateState((1, 2, 3))
    with pytest.raises(ValueError):
        CandidateState((float("nan"), 0, 0, 0))


# --- analytic case tree ---------------------------------------------------

def test_solve_real_cases_returns_the_two_known_states():
    solutions = solve_real_cases()
    assert len(solutions) == 2
    by_label = {s.case_label: s for s in solutions}
    assert by_label[CaseLabel.CASE_1].state.amplitudes == FIRST_SOLUTION
    assert by_label[CaseLabel.CASE_2].state.amplitudes == SECOND_SOLUTION
    for s in solutions:
        assert s.max_residual <= 1e-12


def test_case_tree_flags_sign_duplicates():
    cases = {c.label: c for c in real_case_analysis()}
    assert len(cases) == 4
    assert cases[CaseLabel.CASE_1].duplicate_of is None
    assert cases[CaseLabel.CASE_2].duplicate_of is None
    assert cases[CaseLabel.CASE_3].duplicate_of == CaseLabel.CASE_2
    assert cases[CaseLabel.CASE_4].duplicate_of == CaseLabel.CASE_1
    # third case: c1 = c2 - 1 and c3 = c4 + 1 lands on minus the second state
    half = Fraction(1, 2)
    assert cases[CaseLabel.CASE_3].amplitudes == (-half, half, half, -half)
    assert cases[CaseLabel.CASE_4].amplitudes == (-half, half, -half, half)


def test_case_algebra_is_exact():
    for case in real_case_analysis():
        assert case.c4_root == Fraction(-case.c3_minus_c4, 2)
        c1, c2, c3, c4 = case.amplitudes
        assert c1 - c2 == case.c1_minus_c2
        assert c3 - c4 == case.c3_minus_c4
        assert c1 * c1 + c2 * c2 + c3 * c3 + c4 * c4 == 1


def test_solutions_are_orthogonal_product_states():
    first, second = solve_real_cases()
    u, v = first.state, second.state
    assert sum(a.conjugate() * b for a, b in zip(u.amplitudes, v.amplitudes)) == 0
    for state in (u, v):
        c1, c2, c3, c4 = state.amplitudes
        assert c1 * c4 - c2 * c3 == 0  # rank-1 amplitude matrix


@pytest.mark.parametrize("label,theta", [(CaseLabel.CASE_1, 0.0), (CaseLabel.CASE_2, math.pi)])
def test_solutions_drive_the_protocol_correctly(label, theta):
    solution = {s.case_label: s for s in solve_real_cases()}[label]
    prepared = DJInput(theta=theta, state=solution.state)
    magnitudes = [run(f, prepared).projection_magnitude for f in OneBitFunction]
    assert magnitudes[0] == pytest.approx(1.0, abs=1e-12)  # C_I
    assert magnitudes[1] == pytest.approx(1.0, abs=1e-12)  # C_II
    assert magnitudes[2] == pytest.approx(0.0, abs=1e-12)  # B_I
    assert magnitudes[3] == pytest.approx(0.0, abs=1e-12)  # B_II


# --- grid search ----------------------------------------------------------

def test_grid_search_at_fine_step_recovers_the_solutions():
    clusters = grid_clusters(0.05)
    patterns = {c.sign_pattern for c in clusters}
    assert patterns == {
        (1, -1, 1, -1),
        (1, -1, -1, 1),
        (-1, 1, -1, 1),
        (-1, 1, 1, -1),
    }
    reps = {c.sign_pattern: c.representative.amplitudes for c in clusters}
    assert reps[(1, -1, 1, -1)] == FIRST_SOLUTION
    assert reps[(1, -1, -1, 1)] == SECOND_SOLUTION
    assert reps[(-1, 1, -1, 1)] == tuple(-a for a in FIRST_SOLUTION)
    assert reps[(-1, 1, 1, -1)] == tuple(-a for a in SECOND_SOLUTION)
    solutions = solve_real_cases()
    assert grid_agreement(clusters, solutions, tol=0.05)
    for cluster in clusters:
        distance, _, _ = nearest_solution_distance(cluster.representative, solutions)
        assert distance <= 0.05


def _brute_force_clusters(step):
    """Plain-Python rescan of the same grid, as an independent oracle."""
    k = int(1.0 / step + 1e-9)
    values = [i * step for i in range(-k, k + 1)]
    clusters = {}
    for c1 in values:
        for c2 in values:
            for c3 in values:
                for c4 in values:
                    r_norm = c1 * c1 + c2 * c2 + c3 * c3 + c4 * c4 - 1.0
                    r_first = 2.0 * c1 * c2 + c3 * c3 + c4 * c4
                    r_second = 2.0 * c3 * c4 + c1 * c1 + c2 * c2
                    if (
                        abs(r_norm) > 2 * step
                        or abs(r_first) > 2 * step
                        or abs(r_second) > 2 * step
                    ):
                        continue
                    pattern = tuple((v > 0) - (v < 0) for v in (c1, c2, c3, c4))
                    worst = max(abs(r_norm), abs(r_first), abs(r_second))
                    entry = (worst, (c1, c2, c3, c4))
                    if pattern not in clusters:
                        clusters[pattern] = [entry, 1]
                    else:
                        clusters[pattern][0] = min(clusters[pattern][0], entry)
                        clusters[pattern][1] += 1
    return clusters


def test_grid_search_at_coarse_step_matches_brute_force():
    expected = _brute_force_clusters(0.5)
    clusters = grid_clusters(0.5)
    assert {c.sign_pattern for c in clusters} == set(expected)
    for cluster in clusters:
        (worst, coords), size = expected[cluster.sign_pattern]
        assert cluster.size == size
        assert cluster.representative.amplitudes == coords
        assert cluster.max_residual == worst
    # the exact solutions still appear among the coarse survivors
    reps = {c.sign_pattern: c.representative.amplitudes for c in clusters}
    assert reps[(1, -1, 1, -1)] == FIRST_SOLUTION
    assert reps[(1, -1, -1, 1)] == SECOND_SOLUTION


def test_grid_search_between_regimes_is_a_superset():
    patterns = {c.sign_pattern for c in grid_clusters(0.3)}
    assert {
        (1, -1, 1, -1),
        (1, -1, -1, 1),
        (-1, 1, -1, 1),
        (-1, 1, 1, -1),
    } <= patterns


@pytest.mark.parametrize("step", [0.0, -0.1, 0.6, float("nan")])
def test_grid_search_rejects_bad_steps(step):
    with pytest.raises(InvalidStep):
        grid_search(step)


def test_grid_search_returns_candidate_states():
    reps = grid_search(0.05)
    assert len(reps) == 4
    assert all(isinstance(rep, CandidateState) for rep in reps)


# --- identification infeasibility ------------------------------------------

@pytest.mark.parametrize("theta", [0.0, 1.0, math.pi, 5.5])
def test_theta_family_satisfies_separation_but_not_identification(theta):
    r = residuals(theta_family_state(theta))
    assert abs(r.first) <= 1e-12
    assert abs(r.second) <= 1e-12
    assert abs(abs(r.fifth) - 1.0) <= 1e-12


def test_infeasibility_report():
    report = identification_infeasibility(samples=2000, seed=0)
    assert report.identity_ok
    assert report.identity_max_error <= 1e-12
    assert report.forced_pairing_sum == -0.5
    assert report.required_pairing_sum == 0.0
    for check in report.theta_family:
        assert check.first_abs <= 1e-12
        assert check.second_abs <= 1e-12
        assert abs(check.fifth_abs - 1.0) <= 1e-12
    # any normalized state violates one of the three constraints by >= 1/3
    assert report.sweep_ok
    assert report.min_joint_violation >= 1 / 3 - 1e-9


def test_infeasibility_rejects_empty_sweeps():
    with pytest.raises(ValueError):
        identification_infeasibility(samples=0)


def test_sweep_is_deterministic_for_a_seed():
    a = identification_infeasibility(samples=3000, seed=42)
    b = identification_infeasibility(samples=3000, seed=42)
    assert a.min_joint_violation == b.min_joint_violation
