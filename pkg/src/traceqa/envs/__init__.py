"""Built-in seeded game environments and their scripted policies."""

from __future__ import annotations

from traceqa.envs import gridworld, textworld
from traceqa.trace import BackendSidecar, EpisodeTrace

GAMES = {
    gridworld.GAME_ID: ("grid", gridworld.run_grid_episode, gridworld.POLICIES),
    textworld.GAME_ID: ("text", textworld.run_text_episode, textworld.POLICIES),
}

DEFAULT_STEPS = {gridworld.GAME_ID: 200, textworld.GAME_ID: 120}


def run_episode(
    game_id: str,
    env_seed: int,
    policy_name: str | None = None,
    max_steps: int | None = None,
    run_id: str | None = None,
) -> tuple[EpisodeTrace, BackendSidecar]:
    """Play one episode of a built-in game, fully determined by its inputs."""
    if game_id not in GAMES:
        raise ValueError(f"unknown game {game_id!r}; choose from {sorted(GAMES)}")
    _, runner, policies = GAMES[game_id]
    if policy_name is None:
        policy_name = next(iter(policies))
    if max_steps is None:
        max_steps = DEFAULT_STEPS[game_id]
    return runner(env_seed, policy_name, max_steps, run_id)
