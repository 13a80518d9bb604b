"""Quantum random number generation strategies and the player-name generator.

Three generators are available, trading qubit count against bias:

* one qubit per bit: n independent single-qubit programs, one shot each
* multi qubit single shot: one program with H on every qubit, one shot
* probabilistic measurement: q qubits measured many times; outcome k's bit is
  1 iff its count strictly exceeds the average probability shots / 2^q

Bit order is canonical LSB-first everywhere: the outcome whose bitstring reads
as binary value k supplies bit k of the result.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .qsim import MAX_QUBITS, NoiseModel, apply_gate, h, measure, new_state

# Fixed default pool of 16 name fragments; a player name is two draws in
# [1, 16], 1-indexed into this list.
DEFAULT_NAME_FRAGMENTS = (
    "Pixel",
    "Twilight",
    "Sparkle",
    "Stardust",
    "Rainbow",
    "Shimmer",
    "Aurora",
    "Moonbeam",
    "Comet",
    "Glitter",
    "Nova",
    "Willow",
    "Ember",
    "Misty",
    "Clover",
    "Sunny",
)


@dataclass(frozen=True)
class OneQubitPerBit:
    """One single-qubit program per output bit."""


@dataclass(frozen=True)
class MultiQubitSingleShot:
    """One program, one qubit per output bit, a single shot."""


@dataclass(frozen=True)
class ProbabilisticMeasurement:
    """q qubits, many shots; yields 2^q output bits via the average-probability rule."""

    q: int
    shots: int

    def __post_init__(self):
        if not 1 <= self.q <= MAX_QUBITS:
            raise ValueError(f"q must be in [1, {MAX_QUBITS}], got {self.q}")
        if self.shots < 2**self.q:
            raise ValueError(
                f"shots must be >= 2^q = {2**self.q} so the average probability "
                f"is at least 1, got {self.shots}"
            )


RngMethod = OneQubitPerBit | MultiQubitSingleShot | ProbabilisticMeasurement


@dataclass(frozen=True)
class RandomInteger:
    """An unsigned integer together with its bits, LSB first."""

    bits: tuple[int, ...]
    value: int

    def __post_init__(self):
        expected = sum(bit << i for i, bit in enumerate(self.bits))
        if self.value != expected:
            raise ValueError(
                f"value {self.value} does not match bits {list(self.bits)} "
                f"(expected {expected})"
            )

    @classmethod
    def from_bits(cls, bits) -> "RandomInteger":
        bits = tuple(int(b) for b in bits)
        return cls(bits=bits, value=sum(bit << i for i, bit in enumerate(bits)))


def random_bits_one_qubit(
    n_bits: int,
    noise: NoiseModel | None = None,
    seed: int | np.random.Generator | None = None,
) -> RandomInteger:
    """n_bits independent 1-qubit programs (H, then one shot) -> one bit each."""
    if n_bits < 1:
        raise ValueError(f"n_bits must be >= 1, got {n_bits}")
    rng = np.random.default_rng(seed)
    bits = []
    for _ in range(n_bits):
        state = apply_gate(new_state(1), h(0))
        outcome = measure(state, 1, noise, rng)
        bits.append(outcome.count_of("1"))
    return RandomInteger.from_bits(bits)


def random_bits_multi_qubit(
    n_bits: int,
    noise: NoiseModel | None = None,
    seed: int | np.random.Generator | None = None,
) -> RandomInteger:
    """One program: H on each of n_bits qubits, a single shot."""
    if not 1 <= n_bits <= MAX_QUBITS:
        raise ValueError(f"n_bits must be in [1, {MAX_QUBITS}], got {n_bits}")
    rng = np.random.default_rng(seed)
    state = new_state(n_bits)
    for qubit in range(n_bits):
        state = apply_gate(state, h(qubit))
    outcome = measure(state, 1, noise, rng)
    key = next(iter(outcome.counts))
    # key reads highest qubit first; bit i of the value is qubit i.
    bits = [int(key[n_bits - 1 - i]) for i in range(n_bits)]
    return RandomInteger.from_bits(bits)


def bits_from_counts(
    counts: dict[str, int], shots: int, q: int, *, rule: str = ">"
) -> list[int]:
    """Average-probability bit extraction, LSB first.

    Bit k is 1 iff the count of the outcome with binary value k exceeds
    shots / 2^q. The ">=" rule variant exists only so tests can check the
    min/max duality; production callers use the default strict rule.
    """
    if rule not in (">", ">="):
        raise ValueError(f"rule must be '>' or '>=', got {rule!r}")
    average = shots / 2**q
    bits = []
    for k in range(2**q):
        count = counts.get(format(k, f"0{q}b"), 0)
        hit = count > average if rule == ">" else count >= average
        bits.append(1 if hit else 0)
    return bits


def random_int_probabilistic(
    q: int,
    shots: int,
    noise: NoiseModel | None = None,
    seed: int | np.random.Generator | None = None,
    *,
    rule: str = ">",
) -> RandomInteger:
    """One program: H on q qubits, `shots` measurements, 2^q output bits."""
    ProbabilisticMeasurement(q, shots)  # validate the (q, shots) pair
    rng = np.random.default_rng(seed)
    state = new_state(q)
    for qubit in range(q):
        state = apply_gate(state, h(qubit))
    outcome = measure(state, shots, noise, rng)
    return RandomInteger.from_bits(bits_from_counts(outcome.counts, shots, q, rule=rule))


def _draw(method: RngMethod, n_bits, noise, rng) -> RandomInteger:
    if isinstance(method, OneQubitPerBit):
        return random_bits_one_qubit(n_bits, noise, rng)
    if isinstance(method, MultiQubitSingleShot):
        return random_bits_multi_qubit(n_bits, noise, rng)
    raise ValueError(f"unsupported method {method!r}")


def random_in_range(
    lo: int,
    hi: int,
    method: RngMethod,
    noise: NoiseModel | None = None,
    seed: int | np.random.Generator | None = None,
) -> int:
    """Integer in [lo, hi] from the given generator.

    Unbiased methods rejection-sample over the smallest covering bit width;
    the probabilistic method reduces its raw value modulo the range size
    instead, accepting that method's documented bias.
    """
    if lo > hi:
        raise ValueError(f"empty range [{lo}, {hi}]")
    span = hi - lo + 1
    if span == 1:
        return lo
    rng = np.random.default_rng(seed)
    if isinstance(method, ProbabilisticMeasurement):
        raw = random_int_probabilistic(method.q, method.shots, noise, rng)
        return lo + raw.value % span
    width = (span - 1).bit_length()
    while True:
        raw = _draw(method, width, noise, rng)
        if raw.value < span:
            return lo + raw.value


def generate_player_name(
    fragments=DEFAULT_NAME_FRAGMENTS,
    noise: NoiseModel | None = None,
    seed: int | np.random.Generator | None = None,
    method: RngMethod | None = None,
) -> str:
    """Two independent draws in [1, 16], 1-indexed into the fragment pool."""
    fragments = tuple(fragments)
    if len(fragments) != 16:
        raise ValueError(f"expected exactly 16 name fragments, got {len(fragments)}")
    if method is None:
        method = ProbabilisticMeasurement(q=2, shots=1024)
    rng = np.random.default_rng(seed)
    first = fragments[random_in_range(1, 16, method, noise, rng) - 1]
    last = fragments[random_in_range(1, 16, method, noise, rng) - 1]
    return f"{first} {last}"


def bias_report(
    q: int,
    shots: int,
    trials: int,
    seed: int | np.random.Generator | None = None,
    *,
    rule: str = ">",
) -> dict[int, float]:
    """Empirical frequency of each value produced by the probabilistic method."""
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials}")
    rng = np.random.default_rng(seed)
    tallies: dict[int, int] = {}
    for _ in range(trials):
        value = random_int_probabilistic(q, shots, None, rng, rule=rule).value
        tallies[value] = tallies.get(value, 0) + 1
    return {value: count / trials for value, count in sorted(tallies.items())}
