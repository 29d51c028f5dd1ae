"""Miniature survival-grid engine behind the crafter Env API.

Exposes the same surface the exporter reads from the real package:
``action_names``, ``step`` info with inventory/achievements/player_pos,
and the ``_world._mat_map`` / ``_mat_ids`` / ``_player`` internals.
Material ids follow the real engine's ordering (1=water .. 12=furnace).
Simplifications are deliberate and local to the stub: reward is one
point per newly unlocked achievement, sleeping restores one energy, and
there are no roaming creatures.
"""

import random

MATERIALS = (
    None, "water", "grass", "stone", "path", "sand", "tree",
    "lava", "coal", "iron", "diamond", "table", "furnace",
)

ACTION_NAMES = (
    "noop", "move_left", "move_right", "move_up", "move_down", "do", "sleep",
    "place_stone", "place_table", "place_furnace", "place_plant",
    "make_wood_pickaxe", "make_stone_pickaxe", "make_iron_pickaxe",
    "make_wood_sword", "make_stone_sword", "make_iron_sword",
)

WALKABLE = ("grass", "path", "sand")

MOVE_FACING = {
    "move_left": (-1, 0),
    "move_right": (1, 0),
    "move_up": (0, -1),
    "move_down": (0, 1),
}

COLLECT = {
    "tree": ("wood", None, "grass"),
    "stone": ("stone", "wood_pickaxe", "path"),
    "coal": ("coal", "wood_pickaxe", "path"),
    "iron": ("iron", "stone_pickaxe", "path"),
    "diamond": ("diamond", "iron_pickaxe", "path"),
}

CRAFT_COSTS = {
    "make_wood_pickaxe": {"wood": 1},
    "make_stone_pickaxe": {"wood": 1, "stone": 1},
    "make_iron_pickaxe": {"wood": 1, "coal": 1, "iron": 1},
    "make_wood_sword": {"wood": 1},
    "make_stone_sword": {"wood": 1, "stone": 1},
    "make_iron_sword": {"wood": 1, "coal": 1, "iron": 1},
}

PLACE_RULES = {
    "place_stone": ("stone", "stone"),
    "place_table": ("wood", "table"),
    "place_furnace": ("stone", "furnace"),
}

ITEM_KEYS = (
    "sapling", "wood", "stone", "coal", "iron", "diamond",
    "wood_pickaxe", "stone_pickaxe", "iron_pickaxe",
    "wood_sword", "stone_sword", "iron_sword",
)


class _World:
    def __init__(self, area, seed):
        self.area = area
        self._mat_ids = {name: i for i, name in enumerate(MATERIALS)}
        g = self._mat_ids["grass"]
        self._mat_map = [[g for _ in range(area[1])] for _ in range(area[0])]
        self._generate(random.Random(f"world:{seed}"))

    def _paint(self, cx, cy, radius, name, rng=None, skip=0.0):
        mat = self._mat_ids[name]
        for x in range(cx - radius, cx + radius + 1):
            for y in range(cy - radius, cy + radius + 1):
                if not (0 <= x < self.area[0] and 0 <= y < self.area[1]):
                    continue
                if (x - cx) ** 2 + (y - cy) ** 2 > radius * radius:
                    continue
                if rng is not None and rng.random() < skip:
                    continue
                self._mat_map[x][y] = mat

    def _generate(self, rng):
        w, h = self.area
        for _ in range(3):
            self._paint(rng.randrange(w), rng.randrange(h), rng.randint(2, 4), "water")
        for _ in range(2):
            cx, cy = rng.randrange(w), rng.randrange(h)
            self._paint(cx, cy, rng.randint(2, 3), "sand")
            self._paint(cx, cy, rng.randint(1, 2), "water")
        for _ in range(3):
            cx, cy = rng.randrange(w), rng.randrange(h)
            self._paint(cx, cy, rng.randint(2, 3), "stone")
            for name in ("coal", "iron"):
                for _ in range(rng.randint(1, 3)):
                    x = cx + rng.randint(-2, 2)
                    y = cy + rng.randint(-2, 2)
                    if 0 <= x < w and 0 <= y < h and self._mat_map[x][y] == self._mat_ids["stone"]:
                        self._mat_map[x][y] = self._mat_ids[name]
        self._paint(rng.randrange(w), rng.randrange(h), 1, "lava")
        for _ in range(5):
            self._paint(rng.randrange(w), rng.randrange(h), rng.randint(1, 2), "tree", rng, 0.4)
        # guaranteed resources near the spawn point
        cx, cy = w // 2, h // 2
        self._paint(cx + 3, cy + 3, 1, "tree")
        self._paint(cx - 5, cy, 1, "water")
        self._paint(cx + 5, cy - 4, 1, "stone")
        self._mat_map[cx + 5][cy - 4] = self._mat_ids["coal"]
        self._mat_map[cx + 6][cy - 4] = self._mat_ids["iron"]
        self._mat_map[cx + 5][cy - 5] = self._mat_ids["diamond"]
        for x in range(cx - 1, cx + 2):
            for y in range(cy - 1, cy + 2):
                self._mat_map[x][y] = self._mat_ids["grass"]


class _Player:
    def __init__(self, pos):
        self.pos = pos
        self.facing = (0, 1)
        self.inventory = {"health": 9, "food": 9, "drink": 9, "energy": 9}
        self.inventory.update({k: 0 for k in ITEM_KEYS})
        self.achievements: dict[str, int] = {}


class Env:
    action_names = list(ACTION_NAMES)

    def __init__(self, area=(32, 32), seed=None):
        self._area = area
        self._seed = seed
        self.reset()

    def reset(self):
        self._world = _World(self._area, self._seed)
        self._player = _Player((self._area[0] // 2, self._area[1] // 2))
        self._rng = random.Random(f"play:{self._seed}")
        self._step = 0
        self._done = False
        return None

    def _mat_at(self, x, y) -> str | None:
        if not (0 <= x < self._area[0] and 0 <= y < self._area[1]):
            return None
        return MATERIALS[self._world._mat_map[x][y]]

    def _set_mat(self, x, y, name):
        self._world._mat_map[x][y] = self._world._mat_ids[name]

    def _near(self, name) -> bool:
        px, py = self._player.pos
        return any(
            self._mat_at(px + dx, py + dy) == name
            for dx in (-1, 0, 1)
            for dy in (-1, 0, 1)
        )

    def _unlock(self, name):
        self._player.achievements[name] = self._player.achievements.get(name, 0) + 1

    def _apply(self, action: str):
        player = self._player
        inv = player.inventory
        if action in MOVE_FACING:
            player.facing = MOVE_FACING[action]
            nxt = (player.pos[0] + player.facing[0], player.pos[1] + player.facing[1])
            if self._mat_at(*nxt) in WALKABLE:
                player.pos = nxt
            return
        if action == "sleep":
            inv["energy"] = min(9, inv["energy"] + 1)
            return
        tx = player.pos[0] + player.facing[0]
        ty = player.pos[1] + player.facing[1]
        target = self._mat_at(tx, ty)
        if action == "do":
            if target in COLLECT:
                item, tool, leftover = COLLECT[target]
                if tool is None or inv[tool] > 0:
                    inv[item] += 1
                    self._set_mat(tx, ty, leftover)
                    self._unlock(f"collect_{item}")
            elif target == "water":
                inv["drink"] = min(9, inv["drink"] + 1)
                self._unlock("collect_drink")
            elif target == "grass" and self._rng.random() < 0.1:
                inv["sapling"] += 1
                self._unlock("collect_sapling")
            return
        if action in PLACE_RULES:
            cost, placed = PLACE_RULES[action]
            if inv[cost] > 0 and target in WALKABLE + ("water",):
                inv[cost] -= 1
                self._set_mat(tx, ty, placed)
                self._unlock(action)
            return
        if action == "place_plant":
            if inv["sapling"] > 0 and target == "grass":
                inv["sapling"] -= 1
                self._unlock("place_plant")
            return
        if action in CRAFT_COSTS:
            cost = CRAFT_COSTS[action]
            needs_furnace = "iron" in action
            ready = (
                self._near("table")
                and (not needs_furnace or self._near("furnace"))
                and all(inv[k] >= v for k, v in cost.items())
            )
            if ready:
                for k, v in cost.items():
                    inv[k] -= v
                item = action[len("make_"):]
                inv[item] += 1
                self._unlock(action)

    def _decay(self):
        inv = self._player.inventory
        for stat, period in (("food", 25), ("drink", 20), ("energy", 30)):
            if self._step % period == 0:
                inv[stat] = max(0, inv[stat] - 1)
        if self._step % 5 == 0 and min(inv["food"], inv["drink"], inv["energy"]) == 0:
            inv["health"] = max(0, inv["health"] - 1)
            if inv["health"] == 0:
                self._done = True

    def _info(self, reward) -> dict:
        return {
            "inventory": dict(self._player.inventory),
            "achievements": dict(self._player.achievements),
            "discount": 0.0 if self._done else 1.0,
            "player_pos": tuple(self._player.pos),
            "reward": reward,
            "semantic": None,
        }

    def step(self, action: int):
        if self._done:
            raise RuntimeError("episode already finished")
        self._step += 1
        before = len(self._player.achievements)
        self._apply(ACTION_NAMES[action])
        self._decay()
        reward = float(len(self._player.achievements) - before)
        return None, reward, self._done, self._info(reward)
