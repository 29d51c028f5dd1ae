"""Export a survival-grid episode through the crafter Env API.

The exporter reads the engine's materials map and player state, remaps
terrain and action ids through the committed bijections, synthesizes the
agent-visible text observation from the pre-action view, and records
post-action position, stats, inventory, achievements, and derived
events. Per-step map changes become grid_delta records, so the consumer
can replay the dynamic grid exactly.
"""

from pathlib import Path

from env_adapters import remap, serialize
from env_adapters.errors import EngineNotAvailable, ExportAborted

VIEW_RADIUS = 4

MOVE_TO_FACING = {
    "MOVE_LEFT": "left",
    "MOVE_RIGHT": "right",
    "MOVE_UP": "up",
    "MOVE_DOWN": "down",
}

STAT_FROM_ENGINE = {"health": "health", "food": "food", "drink": "water", "energy": "energy"}

RAW_ITEMS = ("wood", "stone", "coal", "iron", "diamond", "sapling")

PLACE_OBJECTS = {
    "PLACE_STONE": ("stone", "stone"),
    "PLACE_TABLE": ("wood", "table"),
    "PLACE_FURNACE": ("stone", "furnace"),
    "PLACE_PLANT": ("sapling", "plant"),
}

NOTABLE = ("water", "tree", "stone", "coal", "iron", "diamond", "lava", "table", "furnace", "sand")


def _load_engine(env_seed):
    try:
        import crafter
    except ImportError as exc:
        raise EngineNotAvailable(
            "the crafter package is not installed; install it or pass env="
        ) from exc
    return crafter.Env(seed=env_seed)


def _split_inventory(engine_inventory: dict) -> tuple[dict, dict]:
    stats = {ours: int(engine_inventory[theirs]) for theirs, ours in STAT_FROM_ENGINE.items()}
    items = {
        k: int(v)
        for k, v in engine_inventory.items()
        if k not in STAT_FROM_ENGINE and v > 0
    }
    return stats, items


def _snapshot_grid(env, terrain_map) -> list[list[int]]:
    mats = env._world._mat_map
    width = len(mats)
    height = len(mats[0])
    return [
        [remap.remap_id(terrain_map, int(mats[x][y]), "terrain") for x in range(width)]
        for y in range(height)
    ]


def _diff_grids(before, after) -> list[tuple[int, int, int]]:
    edits = []
    for r, row in enumerate(after):
        for c, value in enumerate(row):
            if before[r][c] != value:
                edits.append((r, c, value))
    return edits


def _direction(dr: int, dc: int) -> str:
    if abs(dr) >= abs(dc):
        return "up" if dr < 0 else "down"
    return "left" if dc < 0 else "right"


def _describe(grid, position, stats, names) -> str:
    r, c = position
    parts = [f"Standing on {names[grid[r][c]]}."]
    nearest: dict[str, tuple[int, int, int]] = {}
    for dr in range(-VIEW_RADIUS, VIEW_RADIUS + 1):
        for dc in range(-VIEW_RADIUS, VIEW_RADIUS + 1):
            if dr == 0 and dc == 0:
                continue
            rr, cc = r + dr, c + dc
            if not (0 <= rr < len(grid) and 0 <= cc < len(grid[0])):
                continue
            name = names[grid[rr][cc]]
            if name not in NOTABLE:
                continue
            rank = (max(abs(dr), abs(dc)), abs(dr) + abs(dc), dr, dc)
            if name not in nearest or rank < nearest[name]:
                nearest[name] = rank
    for name, (dist, _, dr, dc) in sorted(nearest.items(), key=lambda kv: (kv[1][:2], kv[0]))[:3]:
        step_word = "step" if dist == 1 else "steps"
        parts.append(f"You see {name} {dist} {step_word} {_direction(dr, dc)}.")
    for stat, phrase in (("food", "hungry"), ("water", "thirsty"), ("energy", "drowsy")):
        if stats[stat] <= 3:
            parts.append(f"You feel {phrase}.")
    return " ".join(parts)


def _derive_events(action: str, old_items: dict, new_items: dict) -> list[tuple[str, str]]:
    events = []
    for item in RAW_ITEMS:
        if new_items.get(item, 0) > old_items.get(item, 0):
            events.append(("collect_success", item))
    for item in new_items:
        if item.endswith(("_pickaxe", "_sword")):
            if new_items.get(item, 0) > old_items.get(item, 0):
                events.append(("craft", item))
    if action in PLACE_OBJECTS:
        source, placed = PLACE_OBJECTS[action]
        if new_items.get(source, 0) < old_items.get(source, 0):
            events.append(("place", placed))
    return events


def export_grid_episode(
    env_seed: int,
    agent_callback,
    max_steps: int,
    out_dir,
    game_id: str = "crafter",
    run_id: str | None = None,
    env=None,
) -> tuple[Path, Path]:
    """Play up to ``max_steps`` actions and write trace.jsonl + sidecar.jsonl.

    ``agent_callback(observation, candidates, history)`` picks one of the
    canonical action names; ``history`` is the list of prior
    (observation, action) pairs. A callback or engine failure writes the
    partial log before raising ExportAborted.
    """
    if env is None:
        env = _load_engine(env_seed)
    run_id = run_id or f"{game_id}-s{env_seed}-n{max_steps}"
    out_dir = Path(out_dir)
    trace_path = out_dir / "trace.jsonl"
    sidecar_path = out_dir / "sidecar.jsonl"

    terrain_map = remap.terrain_remap()
    names = remap.canonical_terrain_names()
    action_map = remap.action_remap()
    engine_actions = list(env.action_names)
    candidates = [action_map[name] for name in engine_actions]
    engine_index = {canonical: i for i, canonical in enumerate(candidates)}

    env.reset()
    grid = _snapshot_grid(env, terrain_map)
    pos_xy = env._player.pos
    position = (int(pos_xy[1]), int(pos_xy[0]))
    facing = "down"
    stats, items = _split_inventory(env._player.inventory)

    lines = [serialize.grid_header(
        game_id, env_seed, run_id,
        position=position, facing=facing, stats=stats, inventory=items,
    )]
    delta_lines: list[str] = []
    history: list[tuple[str, str]] = []

    def flush():
        serialize.write_lines(trace_path, lines)
        head = serialize.grid_sidecar(
            game_id, env_seed, run_id,
            view_radius=VIEW_RADIUS,
            terrain_vocab=names,
            base_grid=base_grid,
        )
        serialize.write_lines(sidecar_path, [head] + delta_lines)

    base_grid = [list(row) for row in grid]
    for t in range(1, max_steps + 1):
        observation = _describe(grid, position, stats, names)
        try:
            action = agent_callback(observation, list(candidates), history)
            _, reward, done, info = env.step(engine_index[action])
        except Exception as exc:
            flush()
            raise ExportAborted(
                f"step {t} failed: {exc}", steps_written=t - 1
            ) from exc
        new_grid = _snapshot_grid(env, terrain_map)
        edits = _diff_grids(grid, new_grid)
        if edits:
            delta_lines.append(serialize.grid_delta(t, edits))
        grid = new_grid
        pos_xy = info["player_pos"]
        position = (int(pos_xy[1]), int(pos_xy[0]))
        facing = MOVE_TO_FACING.get(action, facing)
        new_stats, new_items = _split_inventory(info["inventory"])
        lines.append(serialize.grid_step(
            step_index=t,
            action=action,
            observation=observation,
            reward=reward,
            done=done,
            position=position,
            facing=facing,
            terrain_under=grid[position[0]][position[1]],
            stats=new_stats,
            inventory=new_items,
            achievements=[k for k, v in info["achievements"].items() if v > 0],
            events=_derive_events(action, items, new_items),
        ))
        history.append((observation, action))
        stats, items = new_stats, new_items
        if done:
            break

    flush()
    return trace_path, sidecar_path
