"""The altitude game engine, in quantum and classical variants.

A game tracks a single altitude measured in counts out of ``base_shots``
(1024). Each quantum turn computes the inversion fraction
``frac = (altitude + modifier) / goal``, applies a full inversion when
``frac >= 1`` or a partial inversion otherwise, measures ``shots`` times under
the device mode's readout noise, and takes the number of '1' outcomes as the
new altitude. The classical variant adds ``modifier + uniform(1, 50)``
directly.

Two partial-inversion calibrations are provided because they disagree except
at frac 0, 0.5 and 1:

* raw-theta: theta = frac * pi, so P(1) = sin^2(frac * pi / 2)
* linear-probability: theta = 2 * arcsin(sqrt(frac)), so P(1) = frac

raw-theta is the default.

Random encounters interrupt the climb with a jewel guessing mini-game: the
quantum opponent runs Grover search over 16 states grouped into 4 jewels;
the classical opponent guesses from an elimination list of 14 jewels.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from . import qrng
from .grover import GroverConfig, grover_search
from .qsim import NoiseModel, apply_gate, measure, new_state, u3, x

QUANTUM_JEWELS = ("amethyst", "sapphire", "emerald", "jade")
CLASSICAL_JEWELS = (
    "ruby",
    "sapphire",
    "emerald",
    "jade",
    "opal",
    "topaz",
    "amethyst",
    "garnet",
    "pearl",
    "onyx",
    "amber",
    "quartz",
    "citrine",
    "moonstone",
)

HARDWARE_ERROR_BUFFER = 75
HARDWARE_FLIP_PROB = 0.05


class GameError(Exception):
    """Base class for game-state violations."""


class InvalidTurnError(GameError):
    """Acting on a finished game or a finished jewel round."""


class EncounterPendingError(GameError):
    """A jewel round must be answered before the next turn."""


class NoEncounterError(GameError):
    """A guess was submitted with no jewel round pending."""


class DeviceMode(Enum):
    SIMULATOR = "simulator"
    HARDWARE = "hardware"


class InversionMode(Enum):
    RAW_THETA = "raw-theta"
    LINEAR_PROBABILITY = "linear-probability"


class Variant(Enum):
    QUANTUM = "quantum"
    CLASSICAL = "classical"


class Action(Enum):
    UP = "up"
    DOWN = "down"


class GameStatus(Enum):
    IN_PROGRESS = "in_progress"
    WON = "won"
    QUIT = "quit"


class RoundOutcome(Enum):
    ONGOING = "ongoing"
    PLAYER_WON = "player_won"
    COMPUTER_WON = "computer_won"


@dataclass(frozen=True)
class GameConfig:
    """Tunables for one game; goal and shots derive from the error buffer."""

    device_mode: DeviceMode = DeviceMode.SIMULATOR
    base_shots: int = 1024
    error_buffer: int | None = None
    readout_flip_prob: float | None = None
    modifier_up: int = 150
    modifier_down: int = -150
    encounter_prob: float = 0.2
    encounter_bonus: int = 100
    inversion_mode: InversionMode = InversionMode.RAW_THETA
    grover_shots: int = 100
    grover_iterations: int = 1

    def __post_init__(self):
        if self.error_buffer is None:
            buffer = (
                HARDWARE_ERROR_BUFFER
                if self.device_mode is DeviceMode.HARDWARE
                else 0
            )
            object.__setattr__(self, "error_buffer", buffer)
        if self.readout_flip_prob is None:
            p = (
                HARDWARE_FLIP_PROB
                if self.device_mode is DeviceMode.HARDWARE
                else 0.0
            )
            object.__setattr__(self, "readout_flip_prob", p)
        if self.base_shots < 1:
            raise ValueError(f"base_shots must be >= 1, got {self.base_shots}")
        if not 0 <= self.error_buffer < self.base_shots:
            raise ValueError(
                f"error_buffer must be in [0, {self.base_shots}), got {self.error_buffer}"
            )
        if not 0.0 <= self.encounter_prob <= 1.0:
            raise ValueError(
                f"encounter_prob must be in [0, 1], got {self.encounter_prob}"
            )
        if self.modifier_up <= 0:
            raise ValueError(f"modifier_up must be positive, got {self.modifier_up}")
        if self.modifier_down >= 0:
            raise ValueError(f"modifier_down must be negative, got {self.modifier_down}")

    @property
    def goal(self) -> int:
        return self.base_shots - self.error_buffer

    @property
    def shots(self) -> int:
        return self.goal + self.error_buffer

    @property
    def noise(self) -> NoiseModel:
        return NoiseModel(self.readout_flip_prob)


@dataclass
class JewelRound:
    """One jewel guessing encounter; mutated in place as guesses come in."""

    secret: int
    jewel_names: tuple[str, ...] = QUANTUM_JEWELS
    group_size: int = 4
    round: int = 1
    outcome: RoundOutcome = RoundOutcome.ONGOING
    computer_memory: list[int] | None = None
    player_guess: str | None = None
    computer_guess: str | None = None
    grover_counts: dict[str, int] | None = None
    grover_argmax: int | None = None
    altitude_delta: int | None = None
    altitude_after: int | None = None

    @property
    def secret_jewel(self) -> str:
        return self.jewel_names[self.secret // self.group_size]

    def to_dict(self, reveal_secret: bool = True) -> dict:
        record = {
            "round": self.round,
            "outcome": self.outcome.value,
            "jewels": list(self.jewel_names),
            "player_guess": self.player_guess,
            "computer_guess": self.computer_guess,
            "grover_counts": self.grover_counts,
            "grover_argmax": self.grover_argmax,
            "altitude_delta": self.altitude_delta,
            "altitude_after": self.altitude_after,
        }
        if reveal_secret:
            record["secret"] = self.secret
            record["secret_jewel"] = self.secret_jewel
        return record


@dataclass
class TurnRecord:
    action: Action
    frac: float | None
    counts: dict[str, int]
    altitude_after: int
    message: str
    encounter: JewelRound | None = None

    def to_dict(self, reveal_secret: bool = True) -> dict:
        return {
            "action": self.action.value,
            "frac": self.frac,
            "counts": self.counts,
            "altitude": self.altitude_after,
            "message": self.message,
            "encounter": (
                self.encounter.to_dict(reveal_secret) if self.encounter else None
            ),
        }


@dataclass
class GameState:
    player_name: str
    altitude: int = 0
    turn: int = 0
    status: GameStatus = GameStatus.IN_PROGRESS
    transcript: list[TurnRecord] = field(default_factory=list)
    pending_encounter: JewelRound | None = None


def status_message(altitude: int, goal: int, player_name: str) -> str:
    """Band message for the current altitude, prefixed by the player name."""
    if altitude >= goal:
        return f"{player_name} has reached the castle!"
    if altitude >= 500:
        return f"{player_name} is approaching the castle."
    if altitude >= 100:
        return f"{player_name} is soaring through the sky."
    if altitude >= 1:
        return f"{player_name} is floating gently above the ground."
    return f"{player_name} is waiting for you on the ground."


def new_game(
    cfg: GameConfig, seed: int | np.random.Generator | None = None
) -> GameState:
    """Fresh game at altitude 0 with a generated player name."""
    rng = np.random.default_rng(seed)
    name = qrng.generate_player_name(noise=cfg.noise, seed=rng)
    return GameState(player_name=name)


def _require_in_progress(state: GameState):
    if state.status is not GameStatus.IN_PROGRESS:
        raise InvalidTurnError(f"game is over ({state.status.value})")


def _roll_quantum_encounter(cfg: GameConfig, rng) -> JewelRound | None:
    if rng.random() >= cfg.encounter_prob:
        return None
    secret = qrng.random_in_range(
        0,
        15,
        qrng.ProbabilisticMeasurement(q=2, shots=cfg.base_shots),
        cfg.noise,
        rng,
    )
    return JewelRound(secret=secret, jewel_names=QUANTUM_JEWELS, group_size=4)


def _roll_classical_encounter(cfg: GameConfig, rng) -> JewelRound | None:
    if rng.random() >= cfg.encounter_prob:
        return None
    secret = int(rng.integers(0, len(CLASSICAL_JEWELS)))
    return JewelRound(
        secret=secret,
        jewel_names=CLASSICAL_JEWELS,
        group_size=1,
        computer_memory=list(range(len(CLASSICAL_JEWELS))),
    )


def _finish_turn(
    state: GameState,
    goal: int,
    record: TurnRecord,
) -> TurnRecord:
    state.turn += 1
    if record.altitude_after >= goal:
        state.status = GameStatus.WON
        record.encounter = None  # the climb is over; drop any rolled encounter
    state.transcript.append(record)
    state.pending_encounter = record.encounter
    return record


def quantum_turn(
    state: GameState,
    cfg: GameConfig,
    action: Action,
    noise: NoiseModel | None = None,
    seed: int | np.random.Generator | None = None,
) -> TurnRecord:
    """One qubit-backed turn: partial inversion sized by frac, then measurement."""
    _require_in_progress(state)
    rng = np.random.default_rng(seed)
    encounter = _roll_quantum_encounter(cfg, rng)

    modifier = cfg.modifier_up if action is Action.UP else cfg.modifier_down
    frac = max(0.0, (state.altitude + modifier) / cfg.goal)

    qubit = new_state(1)
    if frac >= 1.0:
        qubit = apply_gate(qubit, x(0))
    elif frac > 0.0:
        if cfg.inversion_mode is InversionMode.RAW_THETA:
            theta = frac * math.pi
        else:
            theta = 2.0 * math.asin(math.sqrt(frac))
        qubit = apply_gate(qubit, u3(theta, 0.0, 0.0, 0))
    outcome = measure(qubit, cfg.shots, noise, rng)

    altitude = outcome.count_of("1")
    state.altitude = altitude
    record = TurnRecord(
        action=action,
        frac=frac,
        counts=outcome.counts,
        altitude_after=altitude,
        message=status_message(altitude, cfg.goal, state.player_name),
        encounter=encounter,
    )
    return _finish_turn(state, cfg.goal, record)


def classical_turn(
    state: GameState,
    action: Action,
    seed: int | np.random.Generator | None = None,
    cfg: GameConfig | None = None,
) -> TurnRecord:
    """One classical turn: modifier plus a uniform 1..50 roll, floored at 0."""
    _require_in_progress(state)
    cfg = cfg or GameConfig()
    goal = cfg.base_shots  # the classical game has no error buffer
    rng = np.random.default_rng(seed)
    encounter = _roll_classical_encounter(cfg, rng)

    modifier = cfg.modifier_up if action is Action.UP else cfg.modifier_down
    roll = int(rng.integers(1, 51))
    altitude = max(0, state.altitude + modifier + roll)
    state.altitude = altitude
    record = TurnRecord(
        action=action,
        frac=None,
        counts={},
        altitude_after=altitude,
        message=status_message(altitude, goal, state.player_name),
        encounter=encounter,
    )
    return _finish_turn(state, goal, record)


def jewel_round_quantum(
    rnd: JewelRound,
    player_guess: str,
    noise: NoiseModel | None = None,
    seed: int | np.random.Generator | None = None,
    *,
    shots: int = 100,
    iterations: int = 1,
) -> JewelRound:
    """Player picks one of four jewels; on a miss, Grover search guesses back."""
    if rnd.outcome is not RoundOutcome.ONGOING:
        raise InvalidTurnError(f"jewel round already settled ({rnd.outcome.value})")
    if player_guess not in rnd.jewel_names:
        raise ValueError(
            f"unknown jewel {player_guess!r}; expected one of {list(rnd.jewel_names)}"
        )
    rnd.player_guess = player_guess
    rnd.computer_guess = None  # fields below describe this call only
    rnd.grover_counts = None
    rnd.grover_argmax = None
    if player_guess == rnd.secret_jewel:
        rnd.outcome = RoundOutcome.PLAYER_WON
        return rnd

    result = grover_search(
        GroverConfig(secret=rnd.secret, iterations=iterations, shots=shots),
        noise,
        seed,
    )
    rnd.grover_counts = result.counts.counts
    rnd.grover_argmax = result.argmax
    rnd.computer_guess = rnd.jewel_names[result.argmax // rnd.group_size]
    if rnd.computer_guess == rnd.secret_jewel:
        rnd.outcome = RoundOutcome.COMPUTER_WON
    else:
        rnd.round += 1
    return rnd


def jewel_round_classical(
    rnd: JewelRound,
    player_guess: int,
    seed: int | np.random.Generator | None = None,
) -> JewelRound:
    """Player guesses by index; the computer draws from its elimination list."""
    if rnd.outcome is not RoundOutcome.ONGOING:
        raise InvalidTurnError(f"jewel round already settled ({rnd.outcome.value})")
    if not 0 <= player_guess < len(rnd.jewel_names):
        raise ValueError(
            f"guess index {player_guess} outside the {len(rnd.jewel_names)}-jewel list"
        )
    if rnd.computer_memory is None:
        rnd.computer_memory = list(range(len(rnd.jewel_names)))
    rng = np.random.default_rng(seed)

    rnd.player_guess = rnd.jewel_names[player_guess]
    rnd.computer_guess = None
    if player_guess == rnd.secret:
        rnd.outcome = RoundOutcome.PLAYER_WON
        return rnd
    if player_guess in rnd.computer_memory:
        rnd.computer_memory.remove(player_guess)

    pick = rnd.computer_memory[int(rng.integers(len(rnd.computer_memory)))]
    rnd.computer_guess = rnd.jewel_names[pick]
    if pick == rnd.secret:
        rnd.outcome = RoundOutcome.COMPUTER_WON
    else:
        rnd.computer_memory.remove(pick)
        rnd.round += 1
    return rnd


def apply_encounter_result(
    state: GameState,
    cfg: GameConfig,
    rnd: JewelRound,
    goal: int | None = None,
) -> GameState:
    """Apply the settled round's bonus or penalty to the altitude."""
    if rnd.outcome is RoundOutcome.ONGOING:
        raise InvalidTurnError("jewel round is still ongoing")
    goal = cfg.goal if goal is None else goal
    if rnd.outcome is RoundOutcome.PLAYER_WON:
        delta = cfg.encounter_bonus
        state.altitude = min(cfg.base_shots, state.altitude + delta)
    else:
        delta = -cfg.encounter_bonus
        state.altitude = max(0, state.altitude + delta)
    rnd.altitude_delta = delta
    rnd.altitude_after = state.altitude
    if state.status is GameStatus.IN_PROGRESS and state.altitude >= goal:
        state.status = GameStatus.WON
    return state


class Game:
    """Owns one game's config, variant and random stream; turns are sequential."""

    def __init__(
        self,
        cfg: GameConfig | None = None,
        variant: Variant = Variant.QUANTUM,
        seed: int | None = None,
    ):
        self.cfg = cfg or GameConfig()
        self.variant = variant
        if seed is None:
            seed = int(np.random.SeedSequence().generate_state(1)[0])
        self.seed = seed
        self._rng = np.random.default_rng(seed)
        self.state = new_game(self.cfg, self._rng)

    @property
    def goal(self) -> int:
        if self.variant is Variant.CLASSICAL:
            return self.cfg.base_shots
        return self.cfg.goal

    @property
    def shots(self) -> int:
        return self.cfg.shots

    def take_turn(self, action: Action) -> TurnRecord:
        if self.state.pending_encounter is not None:
            raise EncounterPendingError("answer the jewel round before the next turn")
        if self.variant is Variant.QUANTUM:
            return quantum_turn(self.state, self.cfg, action, self.cfg.noise, self._rng)
        return classical_turn(self.state, action, self._rng, self.cfg)

    def guess(self, jewel: str) -> JewelRound:
        rnd = self.state.pending_encounter
        if rnd is None:
            raise NoEncounterError("no jewel round is pending")
        if self.variant is Variant.QUANTUM:
            jewel_round_quantum(
                rnd,
                jewel,
                self.cfg.noise,
                self._rng,
                shots=self.cfg.grover_shots,
                iterations=self.cfg.grover_iterations,
            )
        else:
            if jewel not in rnd.jewel_names:
                raise ValueError(
                    f"unknown jewel {jewel!r}; expected one of {list(rnd.jewel_names)}"
                )
            jewel_round_classical(rnd, rnd.jewel_names.index(jewel), self._rng)
        if rnd.outcome is not RoundOutcome.ONGOING:
            apply_encounter_result(self.state, self.cfg, rnd, goal=self.goal)
            self.state.pending_encounter = None
        return rnd

    def quit(self):
        if self.state.status is GameStatus.IN_PROGRESS:
            self.state.status = GameStatus.QUIT
