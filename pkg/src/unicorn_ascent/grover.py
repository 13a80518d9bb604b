"""Grover search over a small unordered space, used as the computer opponent.

The oracle is realized directly on the statevector as a phase flip of the
secret basis index; the diffusion step reflects about the uniform
superposition. For N basis states and k iterations the secret's probability
is sin^2((2k+1) * arcsin(1/sqrt(N))).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .qsim import (
    MAX_QUBITS,
    MeasurementCounts,
    NoiseModel,
    StateVector,
    apply_gate,
    bitstring,
    diffusion,
    h,
    measure,
    new_state,
    phase_flip,
)


@dataclass(frozen=True)
class GroverConfig:
    secret: int
    n_qubits: int = 4
    iterations: int = 1
    shots: int = 100

    def __post_init__(self):
        if not 1 <= self.n_qubits <= MAX_QUBITS:
            raise ValueError(f"n_qubits must be in [1, {MAX_QUBITS}], got {self.n_qubits}")
        if not 0 <= self.secret < 2**self.n_qubits:
            raise ValueError(
                f"secret must be in [0, {2**self.n_qubits}), got {self.secret}"
            )
        if self.iterations < 0:
            raise ValueError(f"iterations must be >= 0, got {self.iterations}")
        if self.shots < 1:
            raise ValueError(f"shots must be >= 1, got {self.shots}")

    @property
    def n_states(self) -> int:
        return 2**self.n_qubits


@dataclass(frozen=True)
class GroverResult:
    counts: MeasurementCounts
    argmax: int
    success: bool


def grover_state(cfg: GroverConfig) -> StateVector:
    """Pre-measurement state: uniform superposition, then k oracle+diffusion rounds."""
    state = new_state(cfg.n_qubits)
    for qubit in range(cfg.n_qubits):
        state = apply_gate(state, h(qubit))
    for _ in range(cfg.iterations):
        state = apply_gate(state, phase_flip(cfg.secret))
        state = apply_gate(state, diffusion())
    return state


def grover_search(
    cfg: GroverConfig,
    noise: NoiseModel | None = None,
    seed: int | np.random.Generator | None = None,
) -> GroverResult:
    """Run the search and report counts over the full space.

    The argmax is the basis value with the highest count, ties broken by the
    smallest value so seeded runs are reproducible. Counts include every
    basis state, zeros included.
    """
    sampled = measure(grover_state(cfg), cfg.shots, noise, seed)
    tally = np.zeros(cfg.n_states, dtype=np.int64)
    for key, count in sampled.counts.items():
        tally[int(key, 2)] = count
    argmax = int(tally.argmax())  # argmax takes the first maximum: smallest value
    counts = {bitstring(k, cfg.n_qubits): int(tally[k]) for k in range(cfg.n_states)}
    return GroverResult(
        counts=MeasurementCounts(counts=counts, shots=cfg.shots),
        argmax=argmax,
        success=argmax == cfg.secret,
    )


def theoretical_success_prob(n_states: int, iterations: int) -> float:
    """Closed-form probability of measuring the secret after k iterations."""
    if n_states < 2:
        raise ValueError(f"n_states must be >= 2, got {n_states}")
    angle = math.asin(1.0 / math.sqrt(n_states))
    return math.sin((2 * iterations + 1) * angle) ** 2


def noise_sweep(
    cfg: GroverConfig,
    flip_probs,
    trials: int,
    seed: int | np.random.Generator | None = None,
) -> list[tuple[float, float]]:
    """Empirical argmax success rate at each readout flip probability."""
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials}")
    rng = np.random.default_rng(seed)
    table = []
    for p in flip_probs:
        noise = NoiseModel(float(p))
        hits = sum(grover_search(cfg, noise, rng).success for _ in range(trials))
        table.append((float(p), hits / trials))
    return table
