"""JSON-over-HTTP game service.

Sessions live in memory and expire after an idle timeout. Requests touching
one session are serialized through a per-session lock, so turn numbers are
gapless and strictly increasing even under concurrent clients. Error bodies
are always {"error": str, "code": str}.
"""

from __future__ import annotations

import threading
import time
import uuid
from dataclasses import dataclass, field

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from pydantic import BaseModel

from . import __version__, qrng
from .game import (
    Action,
    DeviceMode,
    EncounterPendingError,
    Game,
    GameConfig,
    GameError,
    GameStatus,
    InvalidTurnError,
    JewelRound,
    NoEncounterError,
    TurnRecord,
    Variant,
)
from .grover import GroverConfig, grover_search, theoretical_success_prob
from .qsim import NoiseModel, bitstring

DEFAULT_SESSION_TIMEOUT_S = 1800.0


class ApiError(Exception):
    def __init__(self, status_code: int, code: str, message: str):
        super().__init__(message)
        self.status_code = status_code
        self.code = code
        self.message = message


@dataclass
class SessionRecord:
    session_id: str
    game: Game
    created_at: float
    last_active: float
    lock: threading.Lock = field(default_factory=threading.Lock)


class SessionStore:
    """Thread-safe in-memory session registry with idle eviction."""

    def __init__(self, timeout_s: float = DEFAULT_SESSION_TIMEOUT_S, clock=time.monotonic):
        self._timeout_s = timeout_s
        self._clock = clock
        self._lock = threading.Lock()
        self._sessions: dict[str, SessionRecord] = {}

    def _sweep(self, now: float):
        expired = [
            sid
            for sid, record in self._sessions.items()
            if now - record.last_active > self._timeout_s
        ]
        for sid in expired:
            del self._sessions[sid]

    def create(self, game: Game) -> SessionRecord:
        now = self._clock()
        record = SessionRecord(
            session_id=uuid.uuid4().hex,
            game=game,
            created_at=now,
            last_active=now,
        )
        with self._lock:
            self._sweep(now)
            self._sessions[record.session_id] = record
        return record

    def get(self, session_id: str) -> SessionRecord:
        now = self._clock()
        with self._lock:
            self._sweep(now)
            record = self._sessions.get(session_id)
            if record is None:
                raise ApiError(404, "not_found", f"unknown session {session_id!r}")
            record.last_active = now
            return record

    def __len__(self) -> int:
        with self._lock:
            return len(self._sessions)


class CreateGameRequest(BaseModel):
    mode: str | None = None
    variant: str | None = None
    seed: int | None = None
    encounter_prob: float | None = None


class ActionRequest(BaseModel):
    action: str


class GuessRequest(BaseModel):
    jewel: str


def _turn_payload(game: Game, record: TurnRecord) -> dict:
    return {
        "turn": game.state.turn,
        "action": record.action.value,
        "frac": record.frac,
        "counts": record.counts,
        "altitude": game.state.altitude,
        "goal": game.goal,
        "message": record.message,
        "status": game.state.status.value,
        "encounter": _encounter_payload(record.encounter, pending=True),
    }


def _encounter_payload(rnd: JewelRound | None, pending: bool) -> dict | None:
    """Round view; the secret stays hidden until the round is settled."""
    if rnd is None:
        return None
    payload = rnd.to_dict(reveal_secret=not pending)
    if rnd.grover_argmax is not None:
        payload["grover_argmax_bits"] = bitstring(rnd.grover_argmax, 4)
    return payload


def _game_payload(record: SessionRecord) -> dict:
    game = record.game
    pending = game.state.pending_encounter
    turns = []
    for i, rec in enumerate(game.state.transcript):
        turn = rec.to_dict(reveal_secret=False)
        turn["turn"] = i + 1
        turn["encounter"] = _encounter_payload(
            rec.encounter, pending=rec.encounter is pending
        )
        turns.append(turn)
    return {
        "session_id": record.session_id,
        "player_name": game.state.player_name,
        "mode": game.cfg.device_mode.value,
        "variant": game.variant.value,
        "seed": game.seed,
        "goal": game.goal,
        "shots": game.shots,
        "altitude": game.state.altitude,
        "turn": game.state.turn,
        "status": game.state.status.value,
        "pending_encounter": _encounter_payload(pending, pending=True),
        "turns": turns,
    }


def _parse_enum(cls, value: str, what: str):
    try:
        return cls(value)
    except ValueError:
        choices = [member.value for member in cls]
        raise ApiError(400, "invalid_argument", f"invalid {what} {value!r}; expected one of {choices}")


def create_app(
    default_mode: str = "simulator",
    cors_origins=("*",),
    session_timeout_s: float = DEFAULT_SESSION_TIMEOUT_S,
    clock=time.monotonic,
) -> FastAPI:
    app = FastAPI(title="unicorn-ascent", version=__version__)
    app.add_middleware(
        CORSMiddleware,
        allow_origins=list(cors_origins),
        allow_methods=["*"],
        allow_headers=["*"],
    )
    store = SessionStore(session_timeout_s, clock)
    app.state.store = store
    app.state.default_mode = default_mode

    @app.exception_handler(ApiError)
    async def _api_error(request: Request, exc: ApiError):
        return JSONResponse(
            status_code=exc.status_code,
            content={"error": exc.message, "code": exc.code},
        )

    @app.exception_handler(RequestValidationError)
    async def _validation_error(request: Request, exc: RequestValidationError):
        first = exc.errors()[0] if exc.errors() else {}
        loc = ".".join(str(part) for part in first.get("loc", []))
        msg = first.get("msg", "invalid request body")
        return JSONResponse(
            status_code=400,
            content={
                "error": f"{loc}: {msg}" if loc else msg,
                "code": "invalid_argument",
            },
        )

    @app.exception_handler(ValueError)
    async def _value_error(request: Request, exc: ValueError):
        return JSONResponse(
            status_code=400,
            content={"error": str(exc), "code": "invalid_argument"},
        )

    @app.exception_handler(GameError)
    async def _game_error(request: Request, exc: GameError):
        codes = {
            EncounterPendingError: "encounter_pending",
            NoEncounterError: "no_encounter",
            InvalidTurnError: "invalid_state",
        }
        return JSONResponse(
            status_code=409,
            content={"error": str(exc), "code": codes.get(type(exc), "conflict")},
        )

    @app.get("/health")
    def health():
        return {"status": "ok", "version": __version__}

    @app.post("/games", status_code=201)
    def create_game(body: CreateGameRequest):
        mode = _parse_enum(DeviceMode, body.mode or app.state.default_mode, "mode")
        variant = _parse_enum(Variant, body.variant or "quantum", "variant")
        overrides = {}
        if body.encounter_prob is not None:
            overrides["encounter_prob"] = body.encounter_prob
        cfg = GameConfig(device_mode=mode, **overrides)
        game = Game(cfg=cfg, variant=variant, seed=body.seed)
        record = store.create(game)
        return {
            "session_id": record.session_id,
            "player_name": game.state.player_name,
            "mode": mode.value,
            "variant": variant.value,
            "seed": game.seed,
            "goal": game.goal,
            "shots": game.shots,
            "altitude": game.state.altitude,
        }

    @app.get("/games/{session_id}")
    def get_game(session_id: str):
        record = store.get(session_id)
        with record.lock:
            return _game_payload(record)

    @app.post("/games/{session_id}/action")
    def post_action(session_id: str, body: ActionRequest):
        record = store.get(session_id)
        action = _parse_enum(Action, body.action, "action")
        with record.lock:
            game = record.game
            if game.state.status is not GameStatus.IN_PROGRESS:
                raise InvalidTurnError(f"game is over ({game.state.status.value})")
            turn = game.take_turn(action)
            return _turn_payload(game, turn)

    @app.post("/games/{session_id}/guess")
    def post_guess(session_id: str, body: GuessRequest):
        record = store.get(session_id)
        with record.lock:
            game = record.game
            rnd = game.guess(body.jewel)
            settled = game.state.pending_encounter is None
            payload = _encounter_payload(rnd, pending=not settled)
            payload["altitude"] = game.state.altitude
            payload["goal"] = game.goal
            payload["status"] = game.state.status.value
            return payload

    @app.get("/rng")
    def get_rng(
        method: str = "prob",
        n_bits: int = 4,
        q: int = 2,
        shots: int = 1024,
        seed: int | None = None,
    ):
        if method == "one":
            value = qrng.random_bits_one_qubit(n_bits, seed=seed)
            extra = {"n_bits": n_bits}
        elif method == "multi":
            value = qrng.random_bits_multi_qubit(n_bits, seed=seed)
            extra = {"n_bits": n_bits}
        elif method == "prob":
            value = qrng.random_int_probabilistic(q, shots, seed=seed)
            extra = {"q": q, "shots": shots}
        else:
            raise ApiError(
                400, "invalid_argument", f"invalid method {method!r}; expected one/multi/prob"
            )
        return {"method": method, "bits": list(value.bits), "value": value.value, **extra}

    @app.get("/grover")
    def get_grover(
        secret: int = 11,
        iterations: int = 1,
        shots: int = 100,
        noise_p: float = 0.0,
        seed: int | None = None,
    ):
        cfg = GroverConfig(secret=secret, iterations=iterations, shots=shots)
        result = grover_search(cfg, NoiseModel(noise_p), seed)
        return {
            "secret": secret,
            "iterations": iterations,
            "shots": shots,
            "noise_p": noise_p,
            "counts": result.counts.counts,
            "argmax": result.argmax,
            "argmax_bits": bitstring(result.argmax, cfg.n_qubits),
            "success": result.success,
            "theoretical_single_draw": theoretical_success_prob(cfg.n_states, iterations),
        }

    return app


app = create_app()
