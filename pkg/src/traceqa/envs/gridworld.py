"""Built-in survival grid game and its scripted agents.

A 64x64 seeded map of grass, water, sand, forests, mineral fields, and lava.
The agent moves in four directions, collects from the faced cell with DO,
places structures, and crafts tools near stations, while food, water, and
energy decay on fixed periods and scripted skeleton attacks chip health.
When health reaches zero the episode ends with a death event naming the
cause. Every run is a pure function of (env_seed, policy, max_steps): maps,
attack schedules, and policy choices all derive from seeded generators.
"""

from __future__ import annotations

import random

from traceqa.gamedata import (
    COLLECT_RULES,
    CRAFT_COSTS,
    CRAFT_STATIONS,
    DECAY_PERIOD,
    GRID_SIZE,
    HEALTH_DRAIN_PERIOD,
    HEALTH_RECOVER_PERIOD,
    PLACE_COSTS,
    STAT_RANGE,
    TERRAIN_VOCAB,
    VIEW_RADIUS,
)
from traceqa.spatial import (
    DIRECTIONS,
    bfs_min_targets,
    faced_cell,
    reconstruct_route,
    terrain_ids_by_name,
    traversable_ids,
    visible_window,
)
from traceqa.trace import STAT_KEYS, BackendSidecar, EpisodeTrace, StartState, StepRecord

GAME_ID = "harvest"
SPAWN = (GRID_SIZE // 2, GRID_SIZE // 2)
MAX_STAT = STAT_RANGE[1]

MOVE_FOR_DIRECTION = {
    "up": "MOVE_UP",
    "down": "MOVE_DOWN",
    "left": "MOVE_LEFT",
    "right": "MOVE_RIGHT",
}

DRAIN_CAUSE = {"food": "starvation", "water": "dehydration", "energy": "exhaustion"}

_BY_NAME = terrain_ids_by_name(TERRAIN_VOCAB)
_PASSABLE = traversable_ids(TERRAIN_VOCAB)

# Terrains worth calling out in observations, nearest first.
_NOTABLE = ("tree", "stone", "coal", "iron", "diamond", "water", "lava",
            "table", "furnace", "plant", "sand")


def _paint_blob(grid, rng, center, radius, terrain_id):
    r0, c0 = center
    for r in range(max(0, r0 - radius), min(GRID_SIZE, r0 + radius + 1)):
        for c in range(max(0, c0 - radius), min(GRID_SIZE, c0 + radius + 1)):
            if abs(r - r0) + abs(c - c0) + rng.random() * 1.5 <= radius + 0.5:
                grid[r][c] = terrain_id


def build_map(env_seed: int) -> list[list[int]]:
    """Seeded map: mostly grass, with deposits forced near the spawn."""
    rng = random.Random(f"map:{env_seed}")
    grass = _BY_NAME["grass"]
    grid = [[grass] * GRID_SIZE for _ in range(GRID_SIZE)]

    def far_center(min_dist):
        while True:
            cell = (rng.randrange(3, GRID_SIZE - 3), rng.randrange(3, GRID_SIZE - 3))
            if abs(cell[0] - SPAWN[0]) + abs(cell[1] - SPAWN[1]) >= min_dist:
                return cell

    for _ in range(5):
        _paint_blob(grid, rng, far_center(12), rng.randrange(3, 6), _BY_NAME["water"])
    for _ in range(2):
        _paint_blob(grid, rng, far_center(18), rng.randrange(1, 3), _BY_NAME["lava"])
    water = _BY_NAME["water"]
    sand = _BY_NAME["sand"]
    for r in range(GRID_SIZE):
        for c in range(GRID_SIZE):
            if grid[r][c] != grass:
                continue
            near_water = any(
                0 <= r + dr < GRID_SIZE and 0 <= c + dc < GRID_SIZE
                and grid[r + dr][c + dc] == water
                for _, (dr, dc) in DIRECTIONS
            )
            if near_water and rng.random() < 0.6:
                grid[r][c] = sand
    stone = _BY_NAME["stone"]
    for _ in range(6):
        center = far_center(10)
        _paint_blob(grid, rng, center, rng.randrange(2, 5), stone)
        for r in range(center[0] - 3, center[0] + 4):
            for c in range(center[1] - 3, center[1] + 4):
                if 0 <= r < GRID_SIZE and 0 <= c < GRID_SIZE and grid[r][c] == stone:
                    roll = rng.random()
                    if roll < 0.18:
                        grid[r][c] = _BY_NAME["coal"]
                    elif roll < 0.26:
                        grid[r][c] = _BY_NAME["iron"]
    for _ in range(8):
        _paint_blob(grid, rng, far_center(8), rng.randrange(1, 4), _BY_NAME["tree"])
    for _ in range(15):
        r, c = rng.randrange(GRID_SIZE), rng.randrange(GRID_SIZE)
        if grid[r][c] == grass:
            grid[r][c] = _BY_NAME["path"]

    # Guaranteed starter deposits so early goals never depend on map luck.
    _paint_blob(grid, random.Random(f"trees:{env_seed}"),
                (SPAWN[0] + 3, SPAWN[1] + 3), 2, _BY_NAME["tree"])
    field = (SPAWN[0] - 7, SPAWN[1] + 7)
    _paint_blob(grid, random.Random(f"stone:{env_seed}"), field, 3, stone)
    grid[field[0] + 1][field[1]] = _BY_NAME["coal"]
    grid[field[0]][field[1] + 1] = _BY_NAME["iron"]
    grid[field[0] + 1][field[1] + 1] = _BY_NAME["diamond"]
    for dr in (-1, 0, 1):
        for dc in (-1, 0, 1):
            grid[SPAWN[0] + dr][SPAWN[1] + dc] = grass
    return grid


class GridWorld:
    """Survival game state machine; one instance per episode."""

    def __init__(self, env_seed: int, max_steps: int):
        self.env_seed = env_seed
        self.grid = build_map(env_seed)
        self.base_grid = tuple(tuple(row) for row in self.grid)
        self.position = SPAWN
        self.facing = "down"
        self.stats = {key: MAX_STAT for key in STAT_KEYS}
        self.inventory: dict[str, int] = {}
        self.achievements: set[str] = set()
        self.alive = True
        rng = random.Random(f"attacks:{env_seed}")
        self.attack_steps = frozenset(
            t for t in range(25, max_steps + 1) if rng.random() < 0.03
        )

    # -- queries used by policies and the observation composer ---------------

    def terrain_at(self, cell) -> int:
        return self.grid[cell[0]][cell[1]]

    def in_bounds(self, cell) -> bool:
        return 0 <= cell[0] < GRID_SIZE and 0 <= cell[1] < GRID_SIZE

    def passable(self, cell) -> bool:
        return self.in_bounds(cell) and self.terrain_at(cell) in _PASSABLE

    def count(self, resource: str) -> int:
        return self.inventory.get(resource, 0)

    def station_near(self, station: str) -> bool:
        sid = _BY_NAME[station]
        r0, c0 = self.position
        return any(
            self.in_bounds((r, c)) and self.grid[r][c] == sid
            for r in range(r0 - 1, r0 + 2)
            for c in range(c0 - 1, c0 + 2)
        )

    def can_craft(self, item: str) -> bool:
        costs = CRAFT_COSTS[item]
        if any(self.count(res) < need for res, need in costs.items()):
            return False
        return all(self.station_near(station) for station in CRAFT_STATIONS[item])

    def observe(self) -> str:
        """Pre-action view summary: footing, nearby features, body warnings."""
        parts = [f"Standing on {TERRAIN_VOCAB[self.terrain_at(self.position)]}."]
        r_lo, r_hi, c_lo, c_hi = visible_window(
            self.position, VIEW_RADIUS, GRID_SIZE, GRID_SIZE
        )
        nearest: dict[str, tuple[int, tuple[int, int]]] = {}
        r0, c0 = self.position
        for r in range(r_lo, r_hi + 1):
            for c in range(c_lo, c_hi + 1):
                name = TERRAIN_VOCAB[self.grid[r][c]]
                if name not in _NOTABLE or (r, c) == (r0, c0):
                    continue
                d = abs(r - r0) + abs(c - c0)
                if name not in nearest or (d, (r, c)) < nearest[name]:
                    nearest[name] = (d, (r, c))
        sights = []
        for name in sorted(nearest, key=lambda n: (nearest[n][0], n))[:3]:
            d, (r, c) = nearest[name]
            vertical = "up" if r < r0 else "down"
            horizontal = "left" if c < c0 else "right"
            if abs(r - r0) >= abs(c - c0):
                direction = vertical if r != r0 else horizontal
            else:
                direction = horizontal
            sights.append(f"{name} {d} step{'s' if d != 1 else ''} {direction}")
        if sights:
            parts.append("You see " + ", ".join(sights) + ".")
        if self.stats["food"] <= 3:
            parts.append("You feel hungry.")
        if self.stats["water"] <= 3:
            parts.append("You feel thirsty.")
        if self.stats["energy"] <= 3:
            parts.append("You feel drowsy.")
        if self.stats["health"] <= 3:
            parts.append("You are badly hurt.")
        return " ".join(parts)

    # -- one environment step -------------------------------------------------

    def step(self, t: int, action: str):
        """Apply ``action`` at 1-based step ``t``.

        Returns (reward, done, events, edits) where edits are the cell writes
        applied this step.
        """
        events: list[tuple[str, str]] = []
        edits: list[tuple[int, int, int]] = []
        before = set(self.achievements)

        if action in MOVE_FOR_DIRECTION.values():
            direction = next(d for d, a in MOVE_FOR_DIRECTION.items() if a == action)
            self.facing = direction
            target = faced_cell(self.position, direction)
            if self.passable(target):
                self.position = target
        elif action == "DO":
            self._do(events, edits)
        elif action == "SLEEP":
            self.stats["energy"] = min(MAX_STAT, self.stats["energy"] + 1)
        elif action in PLACE_COSTS:
            self._place(action, events, edits)
        elif action.startswith("MAKE_"):
            self._craft(action.removeprefix("MAKE_").lower(), events)

        last_damage = None
        for stat, period in DECAY_PERIOD.items():
            if t % period == 0:
                self.stats[stat] = max(0, self.stats[stat] - 1)
        if t in self.attack_steps:
            self.stats["health"] = max(0, self.stats["health"] - 2)
            events.append(("attack_received", "skeleton"))
            last_damage = "skeleton"
        depleted = [s for s in ("food", "water", "energy") if self.stats[s] == 0]
        if depleted and t % HEALTH_DRAIN_PERIOD == 0:
            self.stats["health"] = max(0, self.stats["health"] - 1)
            last_damage = DRAIN_CAUSE[depleted[0]]
        elif not depleted and t % HEALTH_RECOVER_PERIOD == 0:
            self.stats["health"] = min(MAX_STAT, self.stats["health"] + 1)

        done = False
        if self.stats["health"] == 0 and last_damage is not None:
            self.alive = False
            done = True
            events.append(("death", last_damage))

        reward = len(self.achievements - before)
        return reward, done, tuple(events), tuple(edits)

    def _do(self, events, edits):
        target = faced_cell(self.position, self.facing)
        if not self.in_bounds(target):
            return
        terrain = TERRAIN_VOCAB[self.terrain_at(target)]
        rule = COLLECT_RULES.get(terrain)
        if rule is None:
            return
        resource, tool, leftover = rule
        if tool is not None and self.count(tool) == 0:
            return
        self.inventory[resource] = self.count(resource) + 1
        if leftover != terrain:
            self.grid[target[0]][target[1]] = _BY_NAME[leftover]
            edits.append((target[0], target[1], _BY_NAME[leftover]))
        events.append(("collect_success", resource))
        self.achievements.add(f"collect_{resource}")

    def _place(self, action, events, edits):
        resource, structure = PLACE_COSTS[action]
        if self.count(resource) == 0:
            return
        if structure == "furnace" and not self.station_near("table"):
            return
        target = faced_cell(self.position, self.facing)
        if not self.passable(target):
            return
        self.inventory[resource] -= 1
        if self.inventory[resource] == 0:
            del self.inventory[resource]
        self.grid[target[0]][target[1]] = _BY_NAME[structure]
        edits.append((target[0], target[1], _BY_NAME[structure]))
        events.append(("place", structure))
        self.achievements.add(f"place_{structure}")

    def _craft(self, item, events):
        if item not in CRAFT_COSTS or not self.can_craft(item):
            return
        for resource, need in CRAFT_COSTS[item].items():
            self.inventory[resource] -= need
            if self.inventory[resource] == 0:
                del self.inventory[resource]
        self.inventory[item] = self.count(item) + 1
        events.append(("craft", item))
        self.achievements.add(f"make_{item}")


# -- policies -----------------------------------------------------------------

TECH_ORDER = (
    "wood_pickaxe",
    "wood_sword",
    "stone_pickaxe",
    "stone_sword",
    "iron_pickaxe",
    "iron_sword",
)

RESOURCE_TERRAIN = {
    "wood": "tree",
    "stone": "stone",
    "coal": "coal",
    "iron": "iron",
    "diamond": "diamond",
    "sapling": "grass",
}

COLLECT_VERB = {
    "wood": "chop",
    "stone": "mine",
    "coal": "mine",
    "iron": "mine",
    "diamond": "mine",
    "sapling": "pick",
}


class GathererPolicy:
    """Tech-tree agent: chop, place stations, craft tools, mine upward."""

    def __init__(self, env_seed: int):
        self.rng = random.Random(f"gatherer:{env_seed}")
        self.table_pos = None
        self.craft_spot = None
        self.unreachable: set[str] = set()

    def act(self, env: GridWorld) -> tuple[str, str]:
        goal = self._next_goal(env)
        kind = goal[0]
        if kind == "collect":
            return self._go_collect(env, goal[1])
        if kind == "place":
            return self._go_place(env, goal[1])
        if kind == "craft":
            return self._go_craft(env, goal[1])
        return self._wander(env)

    def _next_goal(self, env: GridWorld):
        if self.table_pos is None:
            if env.count("wood") >= 2:
                return ("place", "PLACE_TABLE")
            return ("collect", "wood")
        for item in TECH_ORDER:
            if f"make_{item}" in env.achievements:
                continue
            for resource in ("wood", "stone", "coal", "iron"):
                need = CRAFT_COSTS[item].get(resource, 0)
                if env.count(resource) < need and resource not in self.unreachable:
                    return ("collect", resource)
            if "furnace" in CRAFT_STATIONS[item] and "place_furnace" not in env.achievements:
                if env.count("stone") == 0 and "stone" not in self.unreachable:
                    return ("collect", "stone")
                return ("place", "PLACE_FURNACE")
            return ("craft", item)
        if "collect_diamond" not in env.achievements and "diamond" not in self.unreachable:
            return ("collect", "diamond")
        if "collect_sapling" not in env.achievements:
            return ("collect", "sapling")
        if "place_plant" not in env.achievements and env.count("sapling") > 0:
            return ("place", "PLACE_PLANT")
        if "wood" not in self.unreachable:
            return ("collect", "wood")
        return ("wander",)

    def _go_collect(self, env: GridWorld, resource: str):
        terrain = RESOURCE_TERRAIN[resource]
        tid = _BY_NAME[terrain]
        verb = COLLECT_VERB[resource]
        d, targets, parents = bfs_min_targets(env.grid, env.position, {tid}, _PASSABLE)
        if d is None or d == 0:
            self.unreachable.add(resource)
            return self._wander(env)
        target = targets[0]
        route = reconstruct_route(parents, env.position, target)
        if d == 1:
            if faced_cell(env.position, env.facing) == target:
                noun = "the grass" if terrain == "grass" else f"the {terrain}"
                return "DO", f"{verb.capitalize()} {noun} to collect {resource}."
            return (
                MOVE_FOR_DIRECTION[route[0]],
                f"Turn {route[0]} to face the {terrain}.",
            )
        return (
            MOVE_FOR_DIRECTION[route[0]],
            f"Head {route[0]} toward the nearest {terrain} to {verb} {resource}.",
        )

    def _go_place(self, env: GridWorld, action: str):
        if action == "PLACE_TABLE":
            facing_ok = env.passable(faced_cell(env.position, env.facing))
            if facing_ok:
                self.table_pos = faced_cell(env.position, env.facing)
                self.craft_spot = env.position
                return action, "Place the crafting table on open ground."
            return self._turn_to_open(env, "spot for the table")
        if action == "PLACE_FURNACE":
            if env.position != self.craft_spot:
                move = self._step_toward(env, self.craft_spot)
                if move is None:
                    self.craft_spot = env.position
                else:
                    return move, "Return to the table to set up a furnace."
            target = faced_cell(env.position, env.facing)
            if env.passable(target) and target != self.table_pos:
                return action, "Place the furnace beside the table."
            return self._turn_to_open(env, "spot for the furnace", avoid=self.table_pos)
        if action == "PLACE_PLANT":
            target = faced_cell(env.position, env.facing)
            if env.in_bounds(target) and env.terrain_at(target) == _BY_NAME["grass"]:
                return action, "Plant the sapling in the soil."
            return self._turn_to_open(env, "patch for the sapling")
        return self._wander(env)

    def _go_craft(self, env: GridWorld, item: str):
        if env.can_craft(item):
            label = item.replace("_", " ")
            station = (
                "at the table and furnace"
                if "furnace" in CRAFT_STATIONS[item]
                else "at the table"
            )
            return f"MAKE_{item.upper()}", f"Craft a {label} {station}."
        move = self._step_toward(env, self.craft_spot)
        if move is None:
            return self._wander(env)
        return move, "Walk back to the crafting spot."

    def _turn_to_open(self, env: GridWorld, noun: str, avoid=None):
        for direction, _ in DIRECTIONS:
            cell = faced_cell(env.position, direction)
            if env.passable(cell) and cell != avoid:
                return MOVE_FOR_DIRECTION[direction], f"Turn {direction} to find a clear {noun}."
        return self._wander(env)

    def _step_toward(self, env: GridWorld, cell):
        """First move of a shortest path to an exact cell; None when there."""
        if cell is None or env.position == cell:
            return None
        seen = {env.position}
        queue = [(env.position, None)]
        while queue:
            here, first = queue.pop(0)
            for direction, (dr, dc) in DIRECTIONS:
                nxt = (here[0] + dr, here[1] + dc)
                if nxt in seen or not env.passable(nxt):
                    continue
                start = first or MOVE_FOR_DIRECTION[direction]
                if nxt == cell:
                    return start
                seen.add(nxt)
                queue.append((nxt, start))
        return None

    def _wander(self, env: GridWorld):
        options = [
            (direction, cell)
            for direction, _ in DIRECTIONS
            for cell in [faced_cell(env.position, direction)]
            if env.passable(cell)
        ]
        if not options:
            return "NOOP", "Wait; there is nowhere to walk."
        direction, _ = self.rng.choice(options)
        return MOVE_FOR_DIRECTION[direction], f"Wander {direction} scanning for resources."


class RandomWalkPolicy:
    """Aimless agent: seeded moves with occasional pokes and naps."""

    PHRASES = (
        "Drift {direction} with no particular aim.",
        "Wander {direction} to see what turns up.",
        "Keep moving {direction} across the terrain.",
    )

    def __init__(self, env_seed: int):
        self.rng = random.Random(f"random_walk:{env_seed}")
        self.phrase_index = 0

    def act(self, env: GridWorld) -> tuple[str, str]:
        roll = self.rng.random()
        if roll < 0.08:
            return "DO", "Poke at whatever lies ahead."
        if roll < 0.12:
            return "SLEEP", "Stop for a short rest."
        direction = self.rng.choice([d for d, _ in DIRECTIONS])
        phrase = self.PHRASES[self.phrase_index % len(self.PHRASES)]
        self.phrase_index += 1
        return MOVE_FOR_DIRECTION[direction], phrase.format(direction=direction)


POLICIES = {"gatherer": GathererPolicy, "random_walk": RandomWalkPolicy}


def run_grid_episode(
    env_seed: int,
    policy_name: str = "gatherer",
    max_steps: int = 200,
    run_id: str | None = None,
) -> tuple[EpisodeTrace, BackendSidecar]:
    """Play one seeded episode and return its trace and sidecar."""
    if policy_name not in POLICIES:
        raise ValueError(f"unknown grid policy {policy_name!r}")
    env = GridWorld(env_seed, max_steps)
    policy = POLICIES[policy_name](env_seed)
    if run_id is None:
        run_id = f"{GAME_ID}-s{env_seed}-{policy_name}-n{max_steps}"

    initial = StartState(
        position=SPAWN,
        facing="down",
        stats={key: MAX_STAT for key in STAT_KEYS},
        inventory_counts={},
    )
    records = []
    step_edits: dict[int, tuple[tuple[int, int, int], ...]] = {}
    for t in range(1, max_steps + 1):
        observation = env.observe()
        action, reason = policy.act(env)
        reward, done, events, edits = env.step(t, action)
        if edits:
            step_edits[t] = edits
        records.append(
            StepRecord(
                step_index=t,
                action=action,
                observation=observation,
                reward=reward,
                done=done,
                reason=reason,
                position=env.position,
                facing=env.facing,
                terrain_under=env.terrain_at(env.position),
                stats=dict(env.stats),
                inventory_counts=dict(env.inventory),
                achievements=tuple(sorted(env.achievements)),
                events=events,
            )
        )
        if done:
            break

    trace = EpisodeTrace(
        game_id=GAME_ID,
        family="grid",
        env_seed=env_seed,
        run_id=run_id,
        initial=initial,
        steps=tuple(records),
    )
    sidecar = BackendSidecar(
        family="grid",
        game_id=GAME_ID,
        env_seed=env_seed,
        run_id=run_id,
        view_radius=VIEW_RADIUS,
        terrain_vocab=dict(TERRAIN_VOCAB),
        base_grid=env.base_grid,
        step_edits=step_edits,
    )
    return trace, sidecar
