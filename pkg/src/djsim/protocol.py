"""The one-query constant-vs-balanced decision with projection readout.

The prepared input is ((|0> + e^{i theta} |1>)/sqrt(2)) (x) ((|0> - |1>)/sqrt(2)).
Any oracle maps it either back onto itself (constant functions) or onto an
orthogonal state (balanced functions), so the magnitude of the projection of
the output on the input decides the class after a single application. The
oracle is handled purely as an opaque state-to-state callable behind a call
counter: ``run`` never reads a truth table, and the single-query claim is a
checked runtime fact rather than a convention.
"""

from __future__ import annotations

import cmath
import functools
import math
from dataclasses import dataclass
from typing import Callable, Union

from .classical import OneBitFunction, Verdict
from .quantum import EXACT_TOL, Qubit, TwoQubitState, apply_oracle, inner, minus_target, tensor


class InvalidAngle(ValueError):
    """The requested control-qubit phase is NaN or infinite."""


class ProtocolViolation(RuntimeError):
    """The run observed something the protocol's invariants rule out."""


#: The readout must land this close to 0 or 1; anything in between means the
#: prepared-input invariant was broken.
READOUT_TOL = 1e-9

ApplyFn = Callable[[TwoQubitState], TwoQubitState]


def _input_state(theta: float) -> TwoQubitState:
    control = Qubit(2 ** -0.5, cmath.exp(1j * theta) * 2 ** -0.5)
    return tensor(control, minus_target())


@dataclass(frozen=True)
class DJInput:
    """A prepared oracle input; the state must match the theta product form."""

    theta: float
    state: TwoQubitState

    def __post_init__(self) -> None:
        if not math.isfinite(self.theta):
            raise InvalidAngle(f"theta must be finite, got {self.theta!r}")
        expected = _input_state(self.theta)
        error = max(
            abs(a - b)
            for a, b in zip(self.state.amplitudes, expected.amplitudes)
        )
        if error > EXACT_TOL:
            raise ValueError(
                f"state deviates from the prepared form for theta={self.theta} "
                f"by {error:.3e}"
            )


@dataclass(frozen=True)
class DJOutcome:
    projection_magnitude: float
    verdict: Verdict
    oracle_calls: int


def prepare_input(theta: float = 0.0) -> DJInput:
    """Build the prepared input for a given control-qubit relative phase."""
    if not math.isfinite(theta):
        raise InvalidAngle(f"theta must be finite, got {theta!r}")
    return DJInput(theta=float(theta), state=_input_state(theta))


class CountingOracle:
    """Apply-only access to a hidden operator, with an invocation counter."""

    def __init__(self, apply_fn: ApplyFn) -> None:
        self._apply = apply_fn
        self.calls = 0

    @classmethod
    def hiding(cls, f: OneBitFunction) -> "CountingOracle":
        """Wrap a known function so that only its oracle action is reachable."""
        return cls(functools.partial(apply_oracle, f))

    def __call__(self, state: TwoQubitState) -> TwoQubitState:
        self.calls += 1
        return self._apply(state)


def projection_magnitude(apply_fn: ApplyFn, state: TwoQubitState) -> float:
    """|<state | apply_fn(state)>|; insensitive to any global phase on state."""
    return abs(inner(state, apply_fn(state)))


def run(
    oracle: Union[OneBitFunction, CountingOracle, ApplyFn],
    prepared: DJInput,
) -> DJOutcome:
    """Apply the oracle exactly once and decide Constant vs Balanced.

    ``oracle`` may be a OneBitFunction (wrapped so only its action is
    visible), an existing CountingOracle, or any state-to-state callable.
    The outcome's ``oracle_calls`` counts applications made by this
    invocation alone and is checked to be exactly one. A readout that is
    not essentially 0 or 1 raises ProtocolViolation.
    """
    if isinstance(oracle, OneBitFunction):
        counter = CountingOracle.hiding(oracle)
    elif isinstance(oracle, CountingOracle):
        counter = oracle
    else:
        counter = CountingOracle(oracle)

    before = counter.calls
    magnitude = projection_magnitude(counter, prepared.state)
    used = counter.calls - before

    if used != 1:
        raise ProtocolViolation(f"oracle was applied {used} times, expected 1")
    if min(abs(magnitude), abs(magnitude - 1.0)) > READOUT_TOL:
        raise ProtocolViolation(
            f"projection magnitude {magnitude!r} is neither 0 nor 1; "
            "the prepared-input invariant must have been broken"
        )
    verdict = Verdict.CONSTANT if magnitude > 0.5 else Verdict.BALANCED
    return DJOutcome(
        projection_magnitude=magnitude,
        verdict=verdict,
        oracle_calls=used,
    )
