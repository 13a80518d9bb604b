"""Terminal front door: play the game, run RNG/Grover demos, benchmark, serve.

Every subcommand honors --seed (entropy-seeded and echoed when absent, so any
session can be replayed) and --output. Exit codes: 0 success, 1 runtime
error, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import socket
import sys
from pathlib import Path

import numpy as np

from . import __version__, qrng
from .game import (
    Action,
    DeviceMode,
    Game,
    GameConfig,
    GameStatus,
    RoundOutcome,
    Variant,
)
from .grover import GroverConfig, grover_search, theoretical_success_prob
from .qsim import NoiseModel, bitstring

ACTION_WORDS = {
    "u": Action.UP,
    "up": Action.UP,
    "d": Action.DOWN,
    "down": Action.DOWN,
}
QUIT_WORDS = {"q", "quit"}


def _fresh_seed() -> int:
    return int(np.random.SeedSequence().generate_state(1)[0])


def _print_counts(counts: dict[str, int], out):
    print(repr(counts), file=out)


def _prompt(text: str, in_stream, out) -> str | None:
    """Write a prompt and read one line; None signals end of input."""
    out.write(text)
    out.flush()
    line = in_stream.readline()
    if line == "":
        return None
    return line.strip().lower()


def _play_encounter(game: Game, in_stream, out) -> bool:
    """Run the pending jewel round to completion; False if input ran out."""
    rnd = game.state.pending_encounter
    print("A mischievous cloud appears and hides the real jewel!", file=out)
    while game.state.pending_encounter is not None:
        rnd = game.state.pending_encounter
        print(f"Round {rnd.round}. Which unicorn jewel is the real one?", file=out)
        choices = ",".join(rnd.jewel_names)
        answer = _prompt(f"[{choices}]: ", in_stream, out)
        if answer is None:
            return False
        if answer not in rnd.jewel_names:
            print("That is not one of the jewels.", file=out)
            continue
        rnd = game.guess(answer)
        if rnd.outcome is RoundOutcome.PLAYER_WON:
            print(
                f"You found the real jewel! Altitude +{game.cfg.encounter_bonus}.",
                file=out,
            )
            break
        print("You guessed wrong.", file=out)
        if rnd.grover_counts is not None:
            k = game.cfg.grover_iterations
            plural = "s" if k != 1 else ""
            print(f"Measurements after {k} iteration{plural} of Grover search:", file=out)
            _print_counts(rnd.grover_counts, out)
            print(
                f"Maximum outcome: {bitstring(rnd.grover_argmax, 4)} ({rnd.grover_argmax})",
                file=out,
            )
        print(f"The mischievous cloud guesses {rnd.computer_guess}.", file=out)
        if rnd.outcome is RoundOutcome.COMPUTER_WON:
            print(
                f"The cloud found the real jewel. Altitude -{game.cfg.encounter_bonus}.",
                file=out,
            )
            break
        print("The cloud guessed wrong too. Another round!", file=out)
    return True


def _write_transcript(game: Game, path: str):
    lines = [json.dumps(rec.to_dict()) for rec in game.state.transcript]
    Path(path).write_text("".join(line + "\n" for line in lines))


def play_loop(game: Game, in_stream, out) -> int:
    """Interactive turn loop; returns the process exit status."""
    print(f"Your unicorn, {game.state.player_name}, is ready for flight!", file=out)
    print("Use the keyboard to fly up or down, as you", file=out)
    print("ascend your way into the castle.", file=out)
    print(f"(variant: {game.variant.value}, mode: {game.cfg.device_mode.value}, "
          f"goal: {game.goal}, seed: {game.seed})", file=out)

    while game.state.status is GameStatus.IN_PROGRESS:
        print("", file=out)
        print("=====================", file=out)
        print(f"-[ Altitude {game.state.altitude} feet ]-", file=out)
        print(game.state.transcript[-1].message if game.state.transcript
              else f"{game.state.player_name} is waiting for you on the ground.",
              file=out)
        answer = _prompt("[up,down,quit]: ", in_stream, out)
        if answer is None or answer in QUIT_WORDS:
            game.quit()
            print("Goodbye.", file=out)
            break
        action = ACTION_WORDS.get(answer)
        if action is None:
            print("Please choose up, down, or quit.", file=out)
            continue

        record = game.take_turn(action)
        if action is Action.UP:
            print("You soar into the sky.", file=out)
        else:
            print("You drift downward.", file=out)
        if game.variant is Variant.QUANTUM:
            mode = game.cfg.device_mode
            label = (
                "Running on the simulator."
                if mode is DeviceMode.SIMULATOR
                else "Running on the hardware emulator."
            )
            print(label, file=out)
            _print_counts(record.counts, out)

        if game.state.pending_encounter is not None:
            if not _play_encounter(game, in_stream, out):
                game.quit()
                print("Goodbye.", file=out)
                break

    if game.state.status is GameStatus.WON:
        print("", file=out)
        print("=====================", file=out)
        print(f"-[ Altitude {game.state.altitude} feet ]-", file=out)
        print(f"{game.state.player_name} has reached the castle!", file=out)
        print("You win!", file=out)
    return 0


def _cmd_play(args) -> int:
    seed = args.seed if args.seed is not None else _fresh_seed()
    cfg = GameConfig(
        device_mode=DeviceMode(args.mode),
        base_shots=args.shots,
        encounter_prob=args.encounter_prob,
    )
    game = Game(cfg=cfg, variant=Variant(args.variant), seed=seed)
    status = play_loop(game, sys.stdin, sys.stdout)
    if args.output:
        _write_transcript(game, args.output)
    return status


def _cmd_rng(args) -> int:
    seed = args.seed if args.seed is not None else _fresh_seed()
    payload: dict = {"method": args.method, "seed": seed}
    if args.method == "one":
        value = qrng.random_bits_one_qubit(args.n_bits, seed=seed)
        payload.update(n_bits=args.n_bits, bits=list(value.bits), value=value.value)
    elif args.method == "multi":
        value = qrng.random_bits_multi_qubit(args.n_bits, seed=seed)
        payload.update(n_bits=args.n_bits, bits=list(value.bits), value=value.value)
    else:
        value = qrng.random_int_probabilistic(args.q, args.shots, seed=seed)
        payload.update(
            q=args.q, shots=args.shots, bits=list(value.bits), value=value.value
        )
    text = json.dumps(payload, indent=2)
    print(text)
    if args.output:
        Path(args.output).write_text(text + "\n")
    return 0


def _cmd_grover(args) -> int:
    seed = args.seed if args.seed is not None else _fresh_seed()
    rng = np.random.default_rng(seed)
    secret = args.secret
    if secret is None:
        secret = qrng.random_in_range(0, 15, qrng.OneQubitPerBit(), None, rng)
    cfg = GroverConfig(secret=secret, iterations=args.iterations, shots=args.shots)
    result = grover_search(cfg, NoiseModel(args.noise_p), rng)
    payload = {
        "secret": secret,
        "iterations": args.iterations,
        "shots": args.shots,
        "noise_p": args.noise_p,
        "seed": seed,
        "counts": result.counts.counts,
        "argmax": result.argmax,
        "argmax_bits": bitstring(result.argmax, cfg.n_qubits),
        "success": result.success,
        "theoretical_single_draw": theoretical_success_prob(
            cfg.n_states, cfg.iterations
        ),
    }
    text = json.dumps(payload, indent=2)
    print(text)
    if args.output:
        Path(args.output).write_text(text + "\n")
    return 0


def _cmd_bench(args) -> int:
    from . import bench

    seed = args.seed if args.seed is not None else _fresh_seed()
    report = bench.run_full_report(seed)
    bench.attach_timing(report, runs=args.runs, seed=seed)
    json_path, csv_path = bench.write_report(report, args.output)
    timing = report["execution_timing"]["simulator"]
    print(f"seed: {seed}")
    print(
        f"simulator timing over {timing['runs']} runs: "
        f"min {timing['min_s']:.6f}s mean {timing['mean_s']:.6f}s max {timing['max_s']:.6f}s"
    )
    print(f"wrote {json_path} and {csv_path}")
    return 0


def _cmd_serve(args) -> int:
    try:
        probe = socket.create_server((args.host, args.port))
        probe.close()
    except OSError as exc:
        print(f"cannot bind {args.host}:{args.port}: {exc}", file=sys.stderr)
        return 1

    import uvicorn

    from .api import create_app

    app = create_app(
        default_mode=args.mode,
        cors_origins=tuple(args.cors_origin),
        session_timeout_s=args.session_timeout,
    )
    print(f"serving on http://{args.host}:{args.port}")
    uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="unicorn-ascent",
        description="Quantum altitude game, RNG and Grover demos, and benchmarks.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    play = sub.add_parser("play", help="play the game interactively")
    play.add_argument("--variant", choices=["quantum", "classical"], default="quantum")
    play.add_argument("--mode", choices=["simulator", "hardware"], default="simulator")
    play.add_argument("--seed", type=int, default=None)
    play.add_argument("--shots", type=int, default=1024,
                      help="measurements per turn (sets the altitude scale)")
    play.add_argument("--encounter-prob", type=float, default=0.2)
    play.add_argument("--output", default=None, help="write the turn transcript (JSONL)")
    play.set_defaults(func=_cmd_play)

    rng = sub.add_parser("rng", help="draw one random integer")
    rng.add_argument("--method", choices=["one", "multi", "prob"], default="prob")
    rng.add_argument("--n-bits", type=int, default=4)
    rng.add_argument("--q", type=int, default=2)
    rng.add_argument("--shots", type=int, default=1024)
    rng.add_argument("--seed", type=int, default=None)
    rng.add_argument("--output", default=None)
    rng.set_defaults(func=_cmd_rng)

    grover = sub.add_parser("grover", help="run one Grover search")
    grover.add_argument("--secret", type=int, default=None)
    grover.add_argument("--iterations", type=int, default=1)
    grover.add_argument("--shots", type=int, default=100)
    grover.add_argument("--noise-p", type=float, default=0.0)
    grover.add_argument("--seed", type=int, default=None)
    grover.add_argument("--output", default=None)
    grover.set_defaults(func=_cmd_grover)

    bench = sub.add_parser("bench", help="write report.json and report.csv")
    bench.add_argument("--runs", type=int, default=175)
    bench.add_argument("--seed", type=int, default=None)
    bench.add_argument("--output", default="report")
    bench.set_defaults(func=_cmd_bench)

    serve = sub.add_parser("serve", help="start the HTTP game service")
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument("--port", type=int, default=8000)
    serve.add_argument("--mode", choices=["simulator", "hardware"], default="simulator")
    serve.add_argument("--cors-origin", action="append", default=["*"])
    serve.add_argument("--session-timeout", type=float, default=1800.0)
    serve.set_defaults(func=_cmd_serve)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
