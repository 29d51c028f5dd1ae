"""Fixed contract data for the built-in survival grid game.

Action inventory, terrain palette, crafting and placement recipes, and stat
decay cadence are shared between the simulator, the question templates, and
external exporters, so they live here rather than inside any one of them.
All values are frozen: changing them invalidates recorded episodes.
"""

from __future__ import annotations

ACTIONS = (
    "NOOP",
    "MOVE_LEFT",
    "MOVE_RIGHT",
    "MOVE_UP",
    "MOVE_DOWN",
    "DO",
    "SLEEP",
    "PLACE_STONE",
    "PLACE_TABLE",
    "PLACE_FURNACE",
    "PLACE_PLANT",
    "MAKE_WOOD_PICKAXE",
    "MAKE_STONE_PICKAXE",
    "MAKE_IRON_PICKAXE",
    "MAKE_WOOD_SWORD",
    "MAKE_STONE_SWORD",
    "MAKE_IRON_SWORD",
)

TERRAIN_VOCAB = {
    0: "water",
    1: "grass",
    2: "stone",
    3: "coal",
    4: "sand",
    5: "tree",
    6: "path",
    7: "iron",
    8: "diamond",
    9: "lava",
    10: "table",
    11: "furnace",
    12: "plant",
}

RESOURCES = (
    "wood",
    "stone",
    "coal",
    "iron",
    "diamond",
    "sapling",
    "wood_pickaxe",
    "stone_pickaxe",
    "iron_pickaxe",
    "wood_sword",
    "stone_sword",
    "iron_sword",
)

STAT_RANGE = (0, 9)

# Ingredients consumed by MAKE_* actions; stations (table, furnace) must
# additionally be within Chebyshev distance 1 but are not consumed.
CRAFT_COSTS = {
    "wood_pickaxe": {"wood": 1},
    "stone_pickaxe": {"wood": 1, "stone": 1},
    "iron_pickaxe": {"wood": 1, "coal": 1, "iron": 1},
    "wood_sword": {"wood": 1},
    "stone_sword": {"wood": 1, "stone": 1},
    "iron_sword": {"wood": 1, "coal": 1, "iron": 1},
}

CRAFT_STATIONS = {
    "wood_pickaxe": ("table",),
    "stone_pickaxe": ("table",),
    "iron_pickaxe": ("table", "furnace"),
    "wood_sword": ("table",),
    "stone_sword": ("table",),
    "iron_sword": ("table", "furnace"),
}

PLACE_COSTS = {
    "PLACE_STONE": ("stone", "stone"),
    "PLACE_TABLE": ("wood", "table"),
    "PLACE_FURNACE": ("stone", "furnace"),
    "PLACE_PLANT": ("sapling", "plant"),
}

# PLACE_FURNACE additionally requires a table within Chebyshev distance 1.

# Which terrains DO collects from, the pickaxe tier needed, and the cell left
# behind. Grass yields saplings without converting the cell.
COLLECT_RULES = {
    "tree": ("wood", None, "grass"),
    "stone": ("stone", "wood_pickaxe", "path"),
    "coal": ("coal", "wood_pickaxe", "path"),
    "iron": ("iron", "stone_pickaxe", "path"),
    "diamond": ("diamond", "iron_pickaxe", "path"),
    "grass": ("sapling", None, "grass"),
}

# Stat decay cadence: one point lost every N steps.
DECAY_PERIOD = {"food": 20, "water": 15, "energy": 30}

# While any of food/water/energy sits at zero, health drains one point every
# HEALTH_DRAIN_PERIOD steps; with all three positive and health below max it
# recovers one point every HEALTH_RECOVER_PERIOD steps.
HEALTH_DRAIN_PERIOD = 5
HEALTH_RECOVER_PERIOD = 10

VIEW_RADIUS = 4

GRID_SIZE = 64
