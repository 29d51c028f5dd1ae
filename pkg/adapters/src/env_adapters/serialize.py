"""Writers for the canonical episode interchange format.

The format is the contract with the consuming benchmark package, so the
byte layout matters: one JSON object per line, fixed key order, compact
separators, sorted set-derived collections, stats in the fixed
health/food/water/energy order. Parsing a file and serializing it back
must be byte identical.
"""

import json
from pathlib import Path

STAT_KEYS = ("health", "food", "water", "energy")


def _dumps(obj: dict) -> str:
    return json.dumps(obj, separators=(",", ":"))


def _ordered_stats(stats: dict) -> dict:
    missing = [k for k in STAT_KEYS if k not in stats]
    extra = [k for k in stats if k not in STAT_KEYS]
    if missing or extra:
        raise ValueError(f"stats keys must be {STAT_KEYS}, missing {missing}, extra {extra}")
    return {k: int(stats[k]) for k in STAT_KEYS}


def text_header(game_id, env_seed, run_id, location, inventory, score) -> str:
    return _dumps({
        "record": "header",
        "game_id": game_id,
        "family": "text",
        "env_seed": env_seed,
        "run_id": run_id,
        "initial_location": location,
        "initial_inventory": list(inventory),
        "initial_score": score,
    })


def text_step(step_index, action, observation, reward, done,
              location, inventory, valid_actions, score, moves) -> str:
    return _dumps({
        "record": "step",
        "step_index": step_index,
        "action": action,
        "observation": observation,
        "reward": reward,
        "done": done,
        "location": location,
        "inventory": list(inventory),
        "valid_actions": list(valid_actions),
        "score": score,
        "moves": moves,
    })


def grid_header(game_id, env_seed, run_id, position, facing, stats, inventory) -> str:
    return _dumps({
        "record": "header",
        "game_id": game_id,
        "family": "grid",
        "env_seed": env_seed,
        "run_id": run_id,
        "initial_position": [int(position[0]), int(position[1])],
        "initial_facing": facing,
        "initial_stats": _ordered_stats(stats),
        "initial_inventory": {k: int(inventory[k]) for k in sorted(inventory)},
    })


def grid_step(step_index, action, observation, reward, done,
              position, facing, terrain_under, stats, inventory,
              achievements, events) -> str:
    return _dumps({
        "record": "step",
        "step_index": step_index,
        "action": action,
        "observation": observation,
        "reward": reward,
        "done": done,
        "position": [int(position[0]), int(position[1])],
        "facing": facing,
        "terrain_under": int(terrain_under),
        "stats": _ordered_stats(stats),
        "inventory": {k: int(inventory[k]) for k in sorted(inventory)},
        "achievements": sorted(achievements),
        "events": [list(ev) for ev in events],
    })


def text_sidecar(game_id, env_seed, run_id, rooms, edges) -> str:
    return _dumps({
        "record": "sidecar",
        "game_id": game_id,
        "family": "text",
        "env_seed": env_seed,
        "run_id": run_id,
        "location_graph_hint": {
            "rooms": sorted(rooms),
            "edges": [list(e) for e in sorted(tuple(e) for e in edges)],
        },
    })


def grid_sidecar(game_id, env_seed, run_id, view_radius, terrain_vocab, base_grid) -> str:
    return _dumps({
        "record": "sidecar",
        "game_id": game_id,
        "family": "grid",
        "env_seed": env_seed,
        "run_id": run_id,
        "view_radius": view_radius,
        "terrain_vocab": {str(k): terrain_vocab[k] for k in sorted(terrain_vocab)},
        "base_grid": [[int(v) for v in row] for row in base_grid],
    })


def grid_delta(step, edits) -> str:
    ordered = sorted((int(r), int(c), int(v)) for r, c, v in edits)
    return _dumps({
        "record": "grid_delta",
        "step": step,
        "edits": [list(e) for e in ordered],
    })


def write_lines(path, lines) -> None:
    Path(path).parent.mkdir(parents=True, exist_ok=True)
    Path(path).write_text("".join(line + "\n" for line in lines), encoding="utf-8")
