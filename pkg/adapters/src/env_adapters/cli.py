"""Command line exporters.

Two replay drivers are built in so episodes can be regenerated from the
shell: a scripted action list for text games and a seeded random policy
for the grid game. Anything smarter belongs outside this package; the
export functions accept arbitrary callbacks.
"""

import argparse
import random
import sys
from importlib import resources
from pathlib import Path

from env_adapters.crafter_adapter import export_grid_episode
from env_adapters.errors import EngineNotAvailable, ExportAborted
from env_adapters.jericho_adapter import export_text_episode


def scripted_callback(actions_file):
    actions = [
        line.strip()
        for line in Path(actions_file).read_text(encoding="utf-8").splitlines()
        if line.strip()
    ]
    iterator = iter(actions)

    def callback(observation, candidates, history):
        return next(iterator)

    return callback


def random_grid_callback(policy_seed):
    rng = random.Random(f"policy:{policy_seed}")

    def callback(observation, candidates, history):
        moves = [a for a in candidates if a.startswith("MOVE_")]
        roll = rng.random()
        if roll < 0.55 and moves:
            return rng.choice(moves)
        if roll < 0.80 and "DO" in candidates:
            return "DO"
        return rng.choice(candidates)

    return callback


def default_story() -> str:
    return str(resources.files("env_adapters.data").joinpath("toy_house.json"))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="env-adapters",
        description="Export game engine episodes into the canonical trace format.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("export-text", help="export an interactive-fiction episode")
    p.add_argument("--rom", default=None, help="story file; toy house JSON when --stub")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--max-steps", type=int, default=200)
    p.add_argument("--actions", required=True, help="file with one action per line")
    p.add_argument("--out", required=True)
    p.add_argument("--stub", action="store_true", help="use the in-repo engine")

    p = sub.add_parser("export-grid", help="export a survival-grid episode")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--max-steps", type=int, default=200)
    p.add_argument("--policy-seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.add_argument("--stub", action="store_true", help="use the in-repo engine")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "export-text":
            rom = args.rom or (default_story() if args.stub else None)
            if rom is None:
                print("export-text: --rom is required without --stub", file=sys.stderr)
                return 2
            env = None
            if args.stub:
                from env_adapters.stubs import FrotzEnv
                env = FrotzEnv(rom, seed=args.seed)
            trace, sidecar = export_text_episode(
                rom, args.seed, scripted_callback(args.actions),
                args.max_steps, args.out, env=env,
            )
        else:
            env = None
            if args.stub:
                from env_adapters.stubs import Env
                env = Env(seed=args.seed)
            trace, sidecar = export_grid_episode(
                args.seed, random_grid_callback(args.policy_seed),
                args.max_steps, args.out, env=env,
            )
    except EngineNotAvailable as exc:
        print(f"engine unavailable: {exc}", file=sys.stderr)
        return 1
    except ExportAborted as exc:
        print(f"export aborted after {exc.steps_written} steps: {exc}", file=sys.stderr)
        return 1
    print(f"wrote {trace} and {sidecar}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
