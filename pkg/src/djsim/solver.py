"""Derivation of the optimal oracle input from orthogonality constraints.

A candidate input (c1, c2, c3, c4) lets one oracle application separate
constant from balanced exactly when every balanced-oracle output is
orthogonal to every constant-oracle output. Expanding the four bra-ket
pairings gives only two independent scalar conditions,

    first  = 2 Re(c1 conj(c2)) + |c3|^2 + |c4|^2 = 0
    second = 2 Re(conj(c3) c4) + |c1|^2 + |c2|^2 = 0

plus unit norm. Restricted to real coefficients the system factors into four
sign cases, c1 = c2 +- 1 crossed with c3 = c4 +- 1; in each case the
discriminant of the remaining quadratic is a downward parabola touching zero
at a single point, so each case collapses to one state and only two are
distinct up to an overall sign. A brute grid scan over real 4-vectors
recovers the same two states independently.

Exact identification of the function would additionally need the
constant-vs-constant and balanced-vs-balanced pairings to vanish, but any
feasible candidate forces that pairing sum to -1/2 instead of 0; this module
demonstrates the contradiction numerically (identity check, the theta family
of optimal inputs, and a seeded random sweep).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Sequence, Union

import numpy as np

from .classical import OneBitFunction
from .quantum import ORACLE_MATRICES, TwoQubitState, inner

#: Residual level at which an analytic solution is accepted.
SOLUTION_TOL = 1e-9
#: Two normalized states count as one solution when |<u|v>| is this close to 1.
GLOBAL_PHASE_TOL = 1e-9
#: Grid steps must lie in (0, GRID_STEP_MAX]; only steps <= 0.05 are
#: guaranteed to isolate the analytic solutions, coarser runs are best effort.
GRID_STEP_MAX = 0.5

IDENTITY_TOL = 1e-12
IDENTITY_SAMPLES = 10_000
SWEEP_BOUND = 0.1
DEFAULT_SWEEP_SAMPLES = 100_000

THETA_PROBES = (0.0, math.pi / 3, math.pi / 2, math.pi, 2.0, 5.5)


class InvalidStep(ValueError):
    """Grid step outside the legal range (0, 0.5]."""


@dataclass(frozen=True)
class CandidateState:
    """An arbitrary 4-amplitude candidate; normalization is not required."""

    amplitudes: tuple[complex, complex, complex, complex]

    def __post_init__(self) -> None:
        amps = tuple(complex(v) for v in self.amplitudes)
        if len(amps) != 4:
            raise ValueError(f"expected 4 amplitudes, got {len(amps)}")
        for a in amps:
            if not cmath.isfinite(a):
                raise ValueError(f"amplitudes must be finite, got {a!r}")
        object.__setattr__(self, "amplitudes", amps)


Candidate = Union[CandidateState, TwoQubitState, Sequence[complex]]


def _amplitudes(candidate: Candidate) -> tuple[complex, ...]:
    if isinstance(candidate, (CandidateState, TwoQubitState)):
        return candidate.amplitudes
    return CandidateState(tuple(candidate)).amplitudes


@dataclass(frozen=True)
class ConstraintResiduals:
    """Every orthogonality pairing evaluated at one candidate.

    ``first`` and ``second`` are the closed forms above. ``third`` and
    ``fourth`` redo the two pairings against the constant-one oracle as
    explicit matrix products; they coincide with ``first`` and ``second``
    identically, which is the whole reduction. ``fifth`` and ``sixth`` are
    the pairings that exact identification would need to vanish, and
    ``norm`` is the squared-norm deviation from 1.
    """

    first: complex
    second: complex
    third: complex
    fourth: complex
    norm: float
    fifth: complex
    sixth: complex

    @property
    def max_core(self) -> float:
        """Worst magnitude among the constraints a solution must satisfy."""
        return max(abs(self.first), abs(self.second), abs(self.norm))


def residuals(candidate: Candidate) -> ConstraintResiduals:
    """Evaluate all pairings at the candidate.

    first/second use the closed forms; third/fourth recompute the same
    quantities from scratch via <F psi | F' psi> with explicit matrices
    (constant-one against balanced-two, and constant-one against
    balanced-one respectively), which makes the reduction a checked fact
    rather than an assumption.
    """
    c1, c2, c3, c4 = _amplitudes(candidate)
    norm_sq = abs(c1) ** 2 + abs(c2) ** 2 + abs(c3) ** 2 + abs(c4) ** 2
    first = 2.0 * (c1 * c2.conjugate()).real + abs(c3) ** 2 + abs(c4) ** 2
    second = 2.0 * (c3.conjugate() * c4).real + abs(c1) ** 2 + abs(c2) ** 2

    v = np.array((c1, c2, c3, c4), dtype=complex)
    out = {f: ORACLE_MATRICES[f] @ v for f in OneBitFunction}
    third = complex(np.vdot(out[OneBitFunction.C_II], out[OneBitFunction.B_II]))
    fourth = complex(np.vdot(out[OneBitFunction.C_II], out[OneBitFunction.B_I]))
    fifth = complex(np.vdot(out[OneBitFunction.C_I], out[OneBitFunction.C_II]))
    sixth = complex(np.vdot(out[OneBitFunction.B_I], out[OneBitFunction.B_II]))

    scale = max(1.0, norm_sq)
    if abs(third - first) > 1e-9 * scale or abs(fourth - second) > 1e-9 * scale:
        raise ArithmeticError("matrix pairings disagree with closed forms")

    return ConstraintResiduals(
        first=complex(first),
        second=complex(second),
        third=third,
        fourth=fourth,
        norm=norm_sq - 1.0,
        fifth=fifth,
        sixth=sixth,
    )


# ---------------------------------------------------------------------------
# Analytic case tree over real coefficients
# ---------------------------------------------------------------------------

class CaseLabel(Enum):
    CASE_1 = "Case1"
    CASE_2 = "Case2"
    CASE_3 = "Case3"
    CASE_4 = "Case4"


#: Offsets (c1 - c2, c3 - c4) defining each case, in the canonical order.
CASE_OFFSETS: dict[CaseLabel, tuple[int, int]] = {
    CaseLabel.CASE_1: (1, 1),
    CaseLabel.CASE_2: (1, -1),
    CaseLabel.CASE_3: (-1, 1),
    CaseLabel.CASE_4: (-1, -1),
}


@dataclass(frozen=True)
class RealCase:
    """One branch of the real case analysis, solved exactly.

    Substituting c1 = c2 + s1 and c3 = c4 + s2 into the unit-norm condition
    leaves a quadratic for c2 whose discriminant is -(2 c4 + s2)^2: a
    downward parabola with apex value exactly zero, so c4 is pinned to the
    apex and c2 to the double root.
    """

    label: CaseLabel
    c1_minus_c2: int
    c3_minus_c4: int
    c4_root: Fraction
    amplitudes: tuple[Fraction, Fraction, Fraction, Fraction]
    duplicate_of: CaseLabel | None


@dataclass(frozen=True)
class DerivationSolution:
    """A normalized state satisfying all core constraints."""

    state: TwoQubitState
    case_label: CaseLabel
    max_residual: float


def _solve_case(label: CaseLabel) -> tuple[CaseLabel, tuple[Fraction, ...], Fraction]:
    s1, s2 = CASE_OFFSETS[label]
    # discriminant of the c2 quadratic, as a polynomial in c4: -4 c4^2 - 4 s2 c4 - 1
    a, b, c = Fraction(-4), Fraction(-4 * s2), Fraction(-1)
    apex = -b / (2 * a)
    apex_value = c - b * b / (4 * a)
    if apex_value != 0:
        raise ArithmeticError(f"{label.value}: discriminant apex is {apex_value}, not 0")
    c4 = apex
    c2 = Fraction(-s1, 2)  # double root of the quadratic at zero discriminant
    c1 = c2 + s1
    c3 = c4 + s2
    return label, (c1, c2, c3, c4), c4


def real_case_analysis() -> tuple[RealCase, ...]:
    """Solve all four sign cases exactly and flag global-sign duplicates."""
    cases: list[RealCase] = []
    for label in CaseLabel:
        _, amps, c4 = _solve_case(label)
        state = TwoQubitState.normalized([float(a) for a in amps])
        duplicate_of = None
        for earlier in cases:
            earlier_state = TwoQubitState.normalized(
                [float(a) for a in earlier.amplitudes]
            )
            if abs(abs(inner(earlier_state, state)) - 1.0) <= GLOBAL_PHASE_TOL:
                duplicate_of = earlier.label
                break
        s1, s2 = CASE_OFFSETS[label]
        cases.append(
            RealCase(
                label=label,
                c1_minus_c2=s1,
                c3_minus_c4=s2,
                c4_root=c4,
                amplitudes=tuple(amps),
                duplicate_of=duplicate_of,
            )
        )
    return tuple(cases)


def solve_real_cases() -> list[DerivationSolution]:
    """The distinct real solutions, one per equivalence class up to sign.

    Exactly two survive: (1, -1, 1, -1)/2 and (1, -1, -1, 1)/2; the other
    two cases reproduce these with an overall factor of -1 and are dropped
    (see real_case_analysis for the full tree including duplicates).
    """
    solutions = []
    for case in real_case_analysis():
        if case.duplicate_of is not None:
            continue
        state = TwoQubitState.normalized([float(a) for a in case.amplitudes])
        max_residual = residuals(state).max_core
        if max_residual > SOLUTION_TOL:
            raise ArithmeticError(
                f"{case.label.value}: residual {max_residual} exceeds {SOLUTION_TOL}"
            )
        solutions.append(
            DerivationSolution(
                state=state,
                case_label=case.label,
                max_residual=max_residual,
            )
        )
    return solutions


# ---------------------------------------------------------------------------
# Independent grid search over real candidates
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GridCluster:
    """Survivors of the grid filter sharing one amplitude sign pattern."""

    sign_pattern: tuple[int, int, int, int]
    size: int
    representative: CandidateState
    max_residual: float


def grid_clusters(step: float) -> list[GridCluster]:
    """Scan real 4-vectors on a symmetric grid over [-1, 1] and cluster hits.

    A point survives when |norm residual|, |first| and |second| are all at
    most 2*step. Survivors are grouped by sign pattern; each cluster's
    representative is its point with the smallest worst-case residual, ties
    broken lexicographically. Deterministic for a given step.
    """
    if not (isinstance(step, (int, float)) and math.isfinite(step)):
        raise InvalidStep(f"step must be a finite number, got {step!r}")
    if not 0.0 < step <= GRID_STEP_MAX:
        raise InvalidStep(
            f"step must lie in (0, {GRID_STEP_MAX}], got {step!r}"
        )

    k = int(math.floor(1.0 / step + 1e-9))
    vals = np.arange(-k, k + 1, dtype=np.float64) * step
    sq = vals * vals

    head = sq[:, None, None, None] + sq[None, :, None, None]   # |c1|^2 + |c2|^2
    tail = sq[None, None, :, None] + sq[None, None, None, :]   # |c3|^2 + |c4|^2
    cross12 = 2.0 * vals[:, None, None, None] * vals[None, :, None, None]
    cross34 = 2.0 * vals[None, None, :, None] * vals[None, None, None, :]

    bound = 2.0 * step
    keep = np.abs(head + tail - 1.0) <= bound
    keep &= np.abs(cross12 + tail) <= bound
    keep &= np.abs(cross34 + head) <= bound

    points = vals[np.argwhere(keep)]  # (m, 4) survivor coordinates
    c1, c2, c3, c4 = points.T
    r_norm = c1 * c1 + c2 * c2 + c3 * c3 + c4 * c4 - 1.0
    r_first = 2.0 * c1 * c2 + c3 * c3 + c4 * c4
    r_second = 2.0 * c3 * c4 + c1 * c1 + c2 * c2
    worst = np.maximum(np.abs(r_norm), np.maximum(np.abs(r_first), np.abs(r_second)))

    best: dict[tuple[int, int, int, int], tuple[float, tuple[float, ...], int]] = {}
    for point, bad in zip(points, worst):
        coords = tuple(float(v) for v in point)
        pattern = tuple(int(np.sign(v)) for v in coords)
        bad = float(bad)
        if pattern not in best:
            best[pattern] = (bad, coords, 1)
            continue
        old_bad, old_coords, count = best[pattern]
        if (bad, coords) < (old_bad, old_coords):
            best[pattern] = (bad, coords, count + 1)
        else:
            best[pattern] = (old_bad, old_coords, count + 1)

    return [
        GridCluster(
            sign_pattern=pattern,
            size=count,
            representative=CandidateState(coords),
            max_residual=bad,
        )
        for pattern, (bad, coords, count) in sorted(best.items())
    ]


def grid_search(step: float) -> list[CandidateState]:
    """Cluster representatives of the grid scan (see grid_clusters)."""
    return [cluster.representative for cluster in grid_clusters(step)]


def nearest_solution_distance(
    candidate: Candidate, solutions: Sequence[DerivationSolution]
) -> tuple[float, CaseLabel, int]:
    """Smallest entrywise distance from the candidate to a solution up to sign.

    Returns (distance, case label, sign) over both signs of every solution.
    """
    amps = _amplitudes(candidate)
    best: tuple[float, CaseLabel, int] | None = None
    for solution in solutions:
        for sign in (1, -1):
            distance = max(
                abs(a - sign * s)
                for a, s in zip(amps, solution.state.amplitudes)
            )
            if best is None or distance < best[0]:
                best = (distance, solution.case_label, sign)
    assert best is not None
    return best


def grid_agreement(
    clusters: Sequence[GridCluster],
    solutions: Sequence[DerivationSolution],
    tol: float,
) -> bool:
    """True when representatives and signed solutions match within tol, both ways."""
    for cluster in clusters:
        distance, _, _ = nearest_solution_distance(cluster.representative, solutions)
        if distance > tol:
            return False
    for solution in solutions:
        for sign in (1, -1):
            target = tuple(sign * a for a in solution.state.amplitudes)
            covered = any(
                max(
                    abs(a - b)
                    for a, b in zip(cluster.representative.amplitudes, target)
                )
                <= tol
                for cluster in clusters
            )
            if not covered:
                return False
    return True


# ---------------------------------------------------------------------------
# Reduction and identification-infeasibility checks
# ---------------------------------------------------------------------------

def _random_candidates(samples: int, seed: int) -> np.ndarray:
    rng = np.random.default_rng(seed)
    re = rng.standard_normal((samples, 4))
    im = rng.standard_normal((samples, 4))
    return re + 1j * im


def _closed_forms(c: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """Vectorized first/second/fifth residuals and squared norms for (n, 4) input."""
    c1, c2, c3, c4 = c.T
    norm_sq = np.abs(c1) ** 2 + np.abs(c2) ** 2 + np.abs(c3) ** 2 + np.abs(c4) ** 2
    first = 2.0 * (c1 * np.conj(c2)).real + np.abs(c3) ** 2 + np.abs(c4) ** 2
    second = 2.0 * (np.conj(c3) * c4).real + np.abs(c1) ** 2 + np.abs(c2) ** 2
    fifth = 2.0 * (np.conj(c1) * c2).real + 2.0 * (np.conj(c3) * c4).real
    return first, second, fifth, norm_sq


@dataclass(frozen=True)
class ReductionCheck:
    """Worst disagreement between matrix pairings and closed forms."""

    samples: int
    seed: int
    max_first_error: float
    max_second_error: float
    max_third_vs_first: float
    max_fourth_vs_second: float

    @property
    def max_error(self) -> float:
        return max(
            self.max_first_error,
            self.max_second_error,
            self.max_third_vs_first,
            self.max_fourth_vs_second,
        )


def reduction_identity_check(samples: int = IDENTITY_SAMPLES, seed: int = 0) -> ReductionCheck:
    """Compare every matrix pairing against its closed form on random candidates."""
    c = _random_candidates(samples, seed)
    first, second, _, _ = _closed_forms(c)

    out = {f: c @ ORACLE_MATRICES[f].T for f in OneBitFunction}

    def pairing(a: OneBitFunction, b: OneBitFunction) -> np.ndarray:
        return np.sum(np.conj(out[a]) * out[b], axis=1)

    pair_first = pairing(OneBitFunction.C_I, OneBitFunction.B_I)
    pair_second = pairing(OneBitFunction.C_I, OneBitFunction.B_II)
    pair_third = pairing(OneBitFunction.C_II, OneBitFunction.B_II)
    pair_fourth = pairing(OneBitFunction.C_II, OneBitFunction.B_I)

    return ReductionCheck(
        samples=samples,
        seed=seed,
        max_first_error=float(np.max(np.abs(pair_first - first))),
        max_second_error=float(np.max(np.abs(pair_second - second))),
        max_third_vs_first=float(np.max(np.abs(pair_third - first))),
        max_fourth_vs_second=float(np.max(np.abs(pair_fourth - second))),
    )


def theta_family_state(theta: float) -> CandidateState:
    """The optimal-input family ((1, -1, e^{i theta}, -e^{i theta}) / 2)."""
    phase = cmath.exp(1j * theta)
    return CandidateState((0.5, -0.5, 0.5 * phase, -0.5 * phase))


@dataclass(frozen=True)
class ThetaFamilyCheck:
    theta: float
    first_abs: float
    second_abs: float
    fifth_abs: float


@dataclass(frozen=True)
class InfeasibilityReport:
    """Why no single oracle application can identify the function exactly.

    The identity ties the identification pairing to the separation residuals:
    fifth = (first + second) - squared norm, checked numerically on seeded
    random candidates. Feasible separation (first = second = 0, unit norm)
    therefore forces the pairing sum to -1/2 where identification needs 0.
    The theta family realizes the contradiction exactly, and the random
    sweep shows every sampled normalized state violates one of the three
    constraints by a definite margin. The sweep samples states; it makes no
    completeness claim about the solution set of the separation constraints
    beyond the theta family.
    """

    identity_samples: int
    identity_seed: int
    identity_max_error: float
    identity_ok: bool
    forced_pairing_sum: float
    required_pairing_sum: float
    theta_family: tuple[ThetaFamilyCheck, ...]
    sweep_samples: int
    sweep_seed: int
    min_joint_violation: float
    sweep_ok: bool


def identification_infeasibility(
    samples: int = DEFAULT_SWEEP_SAMPLES, seed: int = 0
) -> InfeasibilityReport:
    """Run all three infeasibility demonstrations; see InfeasibilityReport."""
    if samples < 1:
        raise ValueError(f"samples must be at least 1, got {samples}")

    c = _random_candidates(IDENTITY_SAMPLES, seed=0)
    first, second, fifth, norm_sq = _closed_forms(c)
    identity_max_error = float(np.max(np.abs(fifth - ((first + second) - norm_sq))))

    theta_checks = []
    for theta in THETA_PROBES:
        r = residuals(theta_family_state(theta))
        theta_checks.append(
            ThetaFamilyCheck(
                theta=theta,
                first_abs=abs(r.first),
                second_abs=abs(r.second),
                fifth_abs=abs(r.fifth),
            )
        )

    rng = np.random.default_rng(seed)
    raw = rng.standard_normal((samples, 8))
    raw /= np.linalg.norm(raw, axis=1, keepdims=True)  # uniform on the unit 7-sphere
    states = raw[:, :4] + 1j * raw[:, 4:]
    s_first, s_second, s_fifth, _ = _closed_forms(states)
    joint = np.maximum(
        np.abs(s_first), np.maximum(np.abs(s_second), np.abs(s_fifth))
    )
    min_joint = float(np.min(joint))

    return InfeasibilityReport(
        identity_samples=IDENTITY_SAMPLES,
        identity_seed=0,
        identity_max_error=identity_max_error,
        identity_ok=identity_max_error <= IDENTITY_TOL,
        forced_pairing_sum=-0.5,
        required_pairing_sum=0.0,
        theta_family=tuple(theta_checks),
        sweep_samples=samples,
        sweep_seed=seed,
        min_joint_violation=min_joint,
        sweep_ok=min_joint >= SWEEP_BOUND,
    )
