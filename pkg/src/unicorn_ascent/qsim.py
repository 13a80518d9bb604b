"""Minimal statevector quantum simulator.

Conventions used throughout the package:

* Basis index ``k`` encodes qubit ``i`` as bit ``i`` of ``k`` (qubit 0 is the
  least significant bit).
* Bitstring keys read left to right from the highest-index qubit down to
  qubit 0, so the 4-qubit key ``'1011'`` is basis index 11.
* ``measure`` samples shots by inverse-CDF lookup over the cumulative
  probability array, then corrupts each measured bit independently with the
  readout flip probability of the active noise model.
* All randomness flows through ``numpy.random.Generator``; every sampling
  entry point accepts either an integer seed or an existing generator, so
  results are reproducible bit-for-bit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

MAX_QUBITS = 20

RngLike = "int | np.random.Generator | None"


class GateKind(Enum):
    X = "x"
    H = "h"
    Z = "z"
    U3 = "u3"
    PHASE_FLIP = "phase_flip"
    DIFFUSION = "diffusion"


_SINGLE_QUBIT_KINDS = frozenset({GateKind.X, GateKind.H, GateKind.Z, GateKind.U3})

_X_MATRIX = np.array([[0, 1], [1, 0]], dtype=complex)
_H_MATRIX = np.array([[1, 1], [1, -1]], dtype=complex) / math.sqrt(2)
_Z_MATRIX = np.array([[1, 0], [0, -1]], dtype=complex)


@dataclass(frozen=True)
class GateOp:
    """One gate application: a kind plus whichever parameters it needs."""

    kind: GateKind
    target: int | None = None
    theta: float = 0.0
    phi: float = 0.0
    lam: float = 0.0
    basis_index: int | None = None


def x(target: int) -> GateOp:
    return GateOp(GateKind.X, target=target)


def h(target: int) -> GateOp:
    return GateOp(GateKind.H, target=target)


def z(target: int) -> GateOp:
    return GateOp(GateKind.Z, target=target)


def u3(theta: float, phi: float, lam: float, target: int) -> GateOp:
    """General single-qubit rotation; angles in radians and must be finite."""
    for name, value in (("theta", theta), ("phi", phi), ("lam", lam)):
        if not math.isfinite(value):
            raise ValueError(f"u3 {name} must be finite, got {value!r}")
    return GateOp(GateKind.U3, target=target, theta=theta, phi=phi, lam=lam)


def phase_flip(basis_index: int) -> GateOp:
    """Negate the amplitude of one computational basis state."""
    return GateOp(GateKind.PHASE_FLIP, basis_index=basis_index)


def diffusion() -> GateOp:
    """Reflection about the uniform superposition: 2|s><s| - I."""
    return GateOp(GateKind.DIFFUSION)


@dataclass(frozen=True, eq=False)
class StateVector:
    """Complex amplitudes over the 2^n computational basis states.

    Treated as an immutable value: operations return new StateVectors and
    never mutate their input. Amplitudes are assumed normalized; gates
    preserve the norm.
    """

    n_qubits: int
    amplitudes: np.ndarray

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=complex)
        if amps.shape != (2**self.n_qubits,):
            raise ValueError(
                f"expected {2**self.n_qubits} amplitudes for {self.n_qubits} "
                f"qubit(s), got shape {amps.shape}"
            )
        object.__setattr__(self, "amplitudes", amps)
        amps.setflags(write=False)


@dataclass(frozen=True)
class NoiseModel:
    """Classical readout error: each measured bit flips with this probability."""

    readout_flip_prob: float = 0.0

    def __post_init__(self):
        if not 0.0 <= self.readout_flip_prob <= 1.0:
            raise ValueError(
                f"readout_flip_prob must be in [0, 1], got {self.readout_flip_prob}"
            )


IDEAL = NoiseModel(0.0)


@dataclass(frozen=True)
class MeasurementCounts:
    """Aggregated multi-shot outcomes: bitstring -> occurrence count."""

    counts: dict[str, int]
    shots: int

    def count_of(self, bitstring: str) -> int:
        return self.counts.get(bitstring, 0)


def bitstring(basis_index: int, n_qubits: int) -> str:
    """Render a basis index with the highest qubit leftmost ('1011' == 11)."""
    return format(basis_index, f"0{n_qubits}b")


def new_state(n_qubits: int) -> StateVector:
    """Ground state |0...0>."""
    if not 1 <= n_qubits <= MAX_QUBITS:
        raise ValueError(f"n_qubits must be in [1, {MAX_QUBITS}], got {n_qubits}")
    amps = np.zeros(2**n_qubits, dtype=complex)
    amps[0] = 1.0
    return StateVector(n_qubits, amps)


def u3_matrix(theta: float, phi: float, lam: float) -> np.ndarray:
    """2x2 unitary: [[cos(t/2), -e^{i*lam} sin(t/2)],
    [e^{i*phi} sin(t/2), e^{i(phi+lam)} cos(t/2)]]."""
    c = math.cos(theta / 2.0)
    s = math.sin(theta / 2.0)
    return np.array(
        [
            [c, -np.exp(1j * lam) * s],
            [np.exp(1j * phi) * s, np.exp(1j * (phi + lam)) * c],
        ],
        dtype=complex,
    )


def _apply_single_qubit(amps: np.ndarray, matrix: np.ndarray, target: int, n: int) -> np.ndarray:
    # Basis index k reshaped C-order puts qubit q on axis n-1-q.
    psi = amps.reshape([2] * n)
    axis = n - 1 - target
    psi = np.moveaxis(psi, axis, -1)
    out = psi @ matrix.T
    return np.moveaxis(out, -1, axis).reshape(-1)


def apply_gate(state: StateVector, op: GateOp) -> StateVector:
    """Apply one unitary gate and return the resulting state."""
    n = state.n_qubits
    if op.kind in _SINGLE_QUBIT_KINDS:
        if op.target is None or not 0 <= op.target < n:
            raise ValueError(
                f"gate target {op.target!r} out of range for {n} qubit(s)"
            )
        if op.kind is GateKind.X:
            matrix = _X_MATRIX
        elif op.kind is GateKind.H:
            matrix = _H_MATRIX
        elif op.kind is GateKind.Z:
            matrix = _Z_MATRIX
        else:
            matrix = u3_matrix(op.theta, op.phi, op.lam)
        return StateVector(n, _apply_single_qubit(state.amplitudes, matrix, op.target, n))

    if op.kind is GateKind.PHASE_FLIP:
        if op.basis_index is None or not 0 <= op.basis_index < 2**n:
            raise ValueError(
                f"phase flip index {op.basis_index!r} out of range for {n} qubit(s)"
            )
        amps = state.amplitudes.copy()
        amps[op.basis_index] = -amps[op.basis_index]
        return StateVector(n, amps)

    if op.kind is GateKind.DIFFUSION:
        # (2|s><s| - I) psi has amplitudes 2*mean(psi) - psi.
        amps = 2.0 * state.amplitudes.mean() - state.amplitudes
        return StateVector(n, amps)

    raise ValueError(f"unknown gate kind {op.kind!r}")


def probability(state: StateVector, basis_index: int) -> float:
    """|amplitude|^2 of one basis state."""
    if not 0 <= basis_index < 2**state.n_qubits:
        raise ValueError(
            f"basis index {basis_index} out of range for {state.n_qubits} qubit(s)"
        )
    return float(abs(state.amplitudes[basis_index]) ** 2)


def measure(
    state: StateVector,
    shots: int,
    noise: NoiseModel | None = None,
    seed: int | np.random.Generator | None = None,
) -> MeasurementCounts:
    """Sample `shots` outcomes from |amplitude|^2, then apply readout flips.

    Deterministic for identical (state, shots, noise, seed); counts keys are
    emitted in ascending basis order so aggregation is order-independent.
    """
    if shots < 1:
        raise ValueError(f"shots must be >= 1, got {shots}")
    rng = np.random.default_rng(seed)
    n = state.n_qubits

    probs = np.abs(state.amplitudes) ** 2
    cumulative = np.cumsum(probs / probs.sum())
    cumulative[-1] = 1.0
    outcomes = np.searchsorted(cumulative, rng.random(shots), side="right")

    flip_prob = noise.readout_flip_prob if noise is not None else 0.0
    if flip_prob > 0.0:
        flips = rng.random((shots, n)) < flip_prob
        masks = flips @ (1 << np.arange(n, dtype=np.int64))
        outcomes = outcomes ^ masks

    values, tallies = np.unique(outcomes, return_counts=True)
    counts = {bitstring(int(v), n): int(c) for v, c in zip(values, tallies)}
    return MeasurementCounts(counts=counts, shots=shots)
