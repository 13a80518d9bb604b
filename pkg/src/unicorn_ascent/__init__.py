"""Quantum altitude game on a from-scratch statevector simulator."""

__version__ = "0.1.0"

from .qsim import (  # noqa: F401
    GateKind,
    GateOp,
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
    probability,
    u3,
    u3_matrix,
    x,
    z,
)
from .qrng import (  # noqa: F401
    DEFAULT_NAME_FRAGMENTS,
    MultiQubitSingleShot,
    OneQubitPerBit,
    ProbabilisticMeasurement,
    RandomInteger,
    bias_report,
    generate_player_name,
    random_bits_multi_qubit,
    random_bits_one_qubit,
    random_in_range,
    random_int_probabilistic,
)
from .grover import (  # noqa: F401
    GroverConfig,
    GroverResult,
    grover_search,
    grover_state,
    noise_sweep,
    theoretical_success_prob,
)
from .game import (  # noqa: F401
    Action,
    DeviceMode,
    Game,
    GameConfig,
    GameState,
    GameStatus,
    InversionMode,
    JewelRound,
    RoundOutcome,
    TurnRecord,
    Variant,
    apply_encounter_result,
    classical_turn,
    jewel_round_classical,
    jewel_round_quantum,
    new_game,
    quantum_turn,
    status_message,
)
