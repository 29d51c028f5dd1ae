"""Export an interactive-fiction episode through the FrotzEnv API.

The exporter is a logger: the agent callback picks each action from the
engine's candidate list, the engine plays it, and the step is recorded
with the pre-action observation and candidates next to the post-action
score, moves, location, and inventory. A room graph derived from the
observed transitions goes into the sidecar.
"""

from pathlib import Path

from env_adapters import serialize
from env_adapters.errors import EngineNotAvailable, ExportAborted


def _load_engine(game_rom, env_seed):
    try:
        from jericho import FrotzEnv
    except ImportError as exc:
        raise EngineNotAvailable(
            "the jericho package is not installed; install it or pass env="
        ) from exc
    return FrotzEnv(str(game_rom), seed=env_seed)


def _one_line(text: str) -> str:
    return " ".join(str(text).split())


def _inventory_names(env) -> list[str]:
    return [getattr(obj, "name", str(obj)) for obj in env.get_inventory()]


def export_text_episode(
    game_rom,
    env_seed: int,
    agent_callback,
    max_steps: int,
    out_dir,
    game_id: str | None = None,
    run_id: str | None = None,
    env=None,
) -> tuple[Path, Path]:
    """Play up to ``max_steps`` actions and write trace.jsonl + sidecar.jsonl.

    ``agent_callback(observation, candidates, history)`` must return one
    action string; ``history`` is the list of prior (observation, action)
    pairs. A callback or engine failure writes the partial log before
    raising ExportAborted.
    """
    if env is None:
        env = _load_engine(game_rom, env_seed)
    game_id = game_id or Path(str(game_rom)).stem
    run_id = run_id or f"{game_id}-s{env_seed}-jericho-n{max_steps}"
    out_dir = Path(out_dir)
    trace_path = out_dir / "trace.jsonl"
    sidecar_path = out_dir / "sidecar.jsonl"

    observation, info = env.reset()
    observation = _one_line(observation)
    location = env.get_player_location().name
    lines = [serialize.text_header(
        game_id, env_seed, run_id,
        location=location,
        inventory=_inventory_names(env),
        score=info.get("score", 0),
    )]
    rooms = {location}
    edges: set[tuple[str, str, str]] = set()
    history: list[tuple[str, str]] = []

    def flush():
        serialize.write_lines(trace_path, lines)
        serialize.write_lines(
            sidecar_path,
            [serialize.text_sidecar(game_id, env_seed, run_id, rooms, edges)],
        )

    for t in range(1, max_steps + 1):
        candidates = sorted(set(env.get_valid_actions()))
        try:
            action = agent_callback(observation, candidates, history)
            next_observation, reward, done, info = env.step(action)
        except Exception as exc:
            flush()
            raise ExportAborted(
                f"step {t} failed: {exc}", steps_written=t - 1
            ) from exc
        previous_location = location
        location = env.get_player_location().name
        rooms.add(location)
        if location != previous_location:
            edges.add((previous_location, action, location))
        lines.append(serialize.text_step(
            step_index=t,
            action=action,
            observation=observation,
            reward=reward,
            done=done,
            location=location,
            inventory=_inventory_names(env),
            valid_actions=sorted(set(candidates) | {action}),
            score=info["score"],
            moves=info["moves"],
        ))
        history.append((observation, action))
        observation = _one_line(next_observation)
        if done:
            break

    flush()
    return trace_path, sidecar_path
