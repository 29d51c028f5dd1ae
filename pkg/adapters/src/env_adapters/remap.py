"""Committed id and name remapping tables for the Crafter exporter.

Both tables are bijections: inverting and reapplying must be the
identity, and every id the engine emits must be covered, so an unknown
id is an export error rather than a silent passthrough.
"""

import json
from importlib import resources


def _load(name: str) -> dict:
    path = resources.files("env_adapters.data").joinpath(name)
    return json.loads(path.read_text(encoding="utf-8"))


def terrain_remap() -> dict[int, int]:
    raw = _load("crafter_terrain_remap.json")["engine_to_canonical"]
    return {int(k): int(v) for k, v in raw.items()}


def canonical_terrain_names() -> dict[int, str]:
    raw = _load("crafter_terrain_remap.json")["canonical_names"]
    return {int(k): v for k, v in raw.items()}


def action_remap() -> dict[str, str]:
    return dict(_load("crafter_action_remap.json"))


def invert(mapping: dict) -> dict:
    inverse = {v: k for k, v in mapping.items()}
    if len(inverse) != len(mapping):
        raise ValueError("mapping is not a bijection")
    return inverse


def remap_id(mapping: dict[int, int], engine_id: int, what: str) -> int:
    if engine_id not in mapping:
        raise ValueError(f"no canonical id for engine {what} id {engine_id}")
    return mapping[engine_id]
