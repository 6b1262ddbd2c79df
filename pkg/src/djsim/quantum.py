"""Two-qubit state algebra and the four feedback oracles as exact matrices.

Amplitude vectors use the fixed basis order |00>, |01>, |10>, |11>; the first
qubit is the control. This ordering is global and not configurable. Oracle
matrices carry exact 0/1 integer entries and are cross-checked at
construction between a hardcoded table and the defining action on the four
basis states, so a transcription slip in either source raises immediately.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .classical import BitPair, OneBitFunction, apply_f_operator, check_bit

#: Tolerance for accepting user-supplied amplitudes as normalized.
NORM_TOL = 1e-9
#: Tolerance for identity checks on exactly representable values.
EXACT_TOL = 1e-12


class NormalizationError(ValueError):
    """Amplitudes handed to a ``normalized`` constructor do not have unit norm."""


def _as_amplitudes(values: Iterable[complex], count: int) -> tuple[complex, ...]:
    amps = tuple(complex(v) for v in values)
    if len(amps) != count:
        raise ValueError(f"expected {count} amplitudes, got {len(amps)}")
    for a in amps:
        if not cmath.isfinite(a):
            raise ValueError(f"amplitudes must be finite, got {a!r}")
    return amps


@dataclass(frozen=True)
class Qubit:
    """One qubit as amplitudes of |0> and |1>; the plain constructor is raw."""

    a0: complex
    a1: complex

    def __post_init__(self) -> None:
        a0, a1 = _as_amplitudes((self.a0, self.a1), 2)
        object.__setattr__(self, "a0", a0)
        object.__setattr__(self, "a1", a1)

    @classmethod
    def normalized(cls, a0: complex, a1: complex) -> "Qubit":
        qubit = cls(a0, a1)
        if abs(qubit.squared_norm() - 1.0) > NORM_TOL:
            raise NormalizationError(
                f"squared norm {qubit.squared_norm()!r} is not 1 within {NORM_TOL}"
            )
        return qubit

    def squared_norm(self) -> float:
        return abs(self.a0) ** 2 + abs(self.a1) ** 2


@dataclass(frozen=True)
class TwoQubitState:
    """Four amplitudes in the basis order |00>, |01>, |10>, |11>."""

    amplitudes: tuple[complex, complex, complex, complex]

    def __post_init__(self) -> None:
        object.__setattr__(self, "amplitudes", _as_amplitudes(self.amplitudes, 4))

    @classmethod
    def raw(cls, amplitudes: Sequence[complex]) -> "TwoQubitState":
        """Build a state without any normalization requirement."""
        return cls(tuple(amplitudes))

    @classmethod
    def normalized(cls, amplitudes: Sequence[complex]) -> "TwoQubitState":
        """Build a state that must already have unit norm."""
        state = cls.raw(amplitudes)
        if abs(state.squared_norm() - 1.0) > NORM_TOL:
            raise NormalizationError(
                f"squared norm {state.squared_norm()!r} is not 1 within {NORM_TOL}"
            )
        return state

    @property
    def vector(self) -> np.ndarray:
        return np.array(self.amplitudes, dtype=complex)

    def squared_norm(self) -> float:
        return sum(abs(a) ** 2 for a in self.amplitudes)

    def norm(self) -> float:
        return self.squared_norm() ** 0.5


def tensor(a: Qubit, b: Qubit) -> TwoQubitState:
    """Product state of control ``a`` and target ``b``: (a0 b0, a0 b1, a1 b0, a1 b1)."""
    return TwoQubitState.raw(
        (a.a0 * b.a0, a.a0 * b.a1, a.a1 * b.a0, a.a1 * b.a1)
    )


def inner(u: TwoQubitState, v: TwoQubitState) -> complex:
    """Hermitian inner product, conjugate-linear in the first argument."""
    return sum(ua.conjugate() * va for ua, va in zip(u.amplitudes, v.amplitudes))


def basis_index(pair: BitPair | tuple[int, int]) -> int:
    x, y = pair
    return 2 * check_bit(x) + check_bit(y)


def basis_state(pair: BitPair | tuple[int, int]) -> TwoQubitState:
    """The classical pair (x, y) embedded as a basis vector."""
    amps = [0.0, 0.0, 0.0, 0.0]
    amps[basis_index(pair)] = 1.0
    return TwoQubitState.raw(amps)


#: Hardcoded 0/1 tables for the four feedback operators in the fixed basis
#: order. Kept literal on purpose: OracleMatrix checks them against the
#: action (x, y) -> (x, f(x) XOR y) on every construction.
ORACLE_TABLES: dict[OneBitFunction, tuple[tuple[int, ...], ...]] = {
    OneBitFunction.C_I: (
        (1, 0, 0, 0),
        (0, 1, 0, 0),
        (0, 0, 1, 0),
        (0, 0, 0, 1),
    ),
    OneBitFunction.C_II: (
        (0, 1, 0, 0),
        (1, 0, 0, 0),
        (0, 0, 0, 1),
        (0, 0, 1, 0),
    ),
    OneBitFunction.B_I: (
        (0, 1, 0, 0),
        (1, 0, 0, 0),
        (0, 0, 1, 0),
        (0, 0, 0, 1),
    ),
    OneBitFunction.B_II: (
        (1, 0, 0, 0),
        (0, 1, 0, 0),
        (0, 0, 0, 1),
        (0, 0, 1, 0),
    ),
}


def _matrix_from_action(f: OneBitFunction) -> np.ndarray:
    """Column k is the image of basis pair k under the classical operator."""
    m = np.zeros((4, 4), dtype=int)
    for x in (0, 1):
        for y in (0, 1):
            image = apply_f_operator(f, BitPair(x, y))
            m[basis_index(image), basis_index((x, y))] = 1
    return m


@dataclass(frozen=True, eq=False)
class OracleMatrix:
    """A feedback oracle as an exact 4x4 permutation matrix.

    Construction verifies entry-exact agreement between the stored table and
    the matrix rebuilt from the classical action, plus the permutation and
    involution properties.
    """

    function: OneBitFunction
    matrix: np.ndarray

    def __post_init__(self) -> None:
        m = np.asarray(self.matrix, dtype=int)
        if m.shape != (4, 4):
            raise ValueError(f"oracle matrix must be 4x4, got shape {m.shape}")
        if not np.isin(m, (0, 1)).all():
            raise ValueError("oracle matrix entries must be 0 or 1")
        if not ((m.sum(axis=0) == 1).all() and (m.sum(axis=1) == 1).all()):
            raise ValueError("oracle matrix must be a permutation matrix")
        if not (m @ m == np.eye(4, dtype=int)).all():
            raise ValueError("oracle matrix must be an involution")
        if not (m == np.array(ORACLE_TABLES[self.function], dtype=int)).all():
            raise ValueError(f"matrix does not match the stored {self.function.name} table")
        if not (m == _matrix_from_action(self.function)).all():
            raise ValueError(f"matrix does not match the {self.function.name} basis action")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)


def oracle_matrix(f: OneBitFunction) -> OracleMatrix:
    """Build (and fully re-verify) the oracle matrix for f."""
    return OracleMatrix(function=f, matrix=np.array(ORACLE_TABLES[f], dtype=int))


#: Verified once at import; apply_oracle and the solver reuse these
#: read-only matrices instead of re-validating on every call.
ORACLE_MATRICES: dict[OneBitFunction, np.ndarray] = {
    f: oracle_matrix(f).matrix for f in OneBitFunction
}


def apply_oracle(f: OneBitFunction, psi: TwoQubitState) -> TwoQubitState:
    """Matrix-vector action of the oracle for f on a two-qubit state."""
    return TwoQubitState.raw(ORACLE_MATRICES[f] @ psi.vector)


def minus_target() -> Qubit:
    """(|0> - |1>)/sqrt(2): the target choice that turns f into a sign."""
    return Qubit(2 ** -0.5, -(2 ** -0.5))


def kickback_error(f: OneBitFunction, x: int) -> float:
    """Entrywise error of the oracle acting on |x> (x) minus-target against
    the predicted sign flip (-1)^f(x)."""
    check_bit(x)
    control = Qubit(1 - x, x)
    state = tensor(control, minus_target())
    out = apply_oracle(f, state)
    sign = (-1) ** f(x)
    return max(
        abs(o - sign * s) for o, s in zip(out.amplitudes, state.amplitudes)
    )
