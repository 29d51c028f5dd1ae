"""Hand-encoded episode fragments with independently known answers.

Each builder returns (trace, sidecar) for a small scripted episode whose
relevant ground truth was worked out by hand and frozen in the companion
tests: a keyword-anchored offset lookup, a longest action run, a distinct
location count, a success-versus-attempt count, a unique-tree count under a
moving view, and a detour navigation route.
"""

from traceqa.gamedata import TERRAIN_VOCAB, VIEW_RADIUS
from traceqa.trace import BackendSidecar, EpisodeTrace, StartState, StepRecord

WATER, GRASS, STONE, TREE = 0, 1, 2, 5

FULL_STATS = {"health": 9, "food": 9, "water": 9, "energy": 9}


def _grid_sidecar(run_id, base_grid, step_edits):
    return BackendSidecar(
        family="grid",
        game_id="casebook",
        env_seed=0,
        run_id=run_id,
        view_radius=VIEW_RADIUS,
        terrain_vocab=dict(TERRAIN_VOCAB),
        base_grid=tuple(tuple(row) for row in base_grid),
        step_edits=step_edits,
    )


def _grid_step(t, action, reason, position, facing, **overrides):
    fields = {
        "step_index": t,
        "action": action,
        "observation": overrides.pop("observation", "Open ground all around."),
        "reward": overrides.pop("reward", 0),
        "done": overrides.pop("done", False),
        "reason": reason,
        "position": position,
        "facing": facing,
        "terrain_under": overrides.pop("terrain_under", GRASS),
        "stats": overrides.pop("stats", dict(FULL_STATS)),
        "inventory_counts": overrides.pop("inventory_counts", {}),
        "achievements": overrides.pop("achievements", ()),
        "events": overrides.pop("events", ()),
    }
    assert not overrides, f"unused overrides: {overrides}"
    return StepRecord(**fields)


def _text_step(t, action, reason, observation, location, valid, score, inventory=()):
    return StepRecord(
        step_index=t,
        action=action,
        observation=observation,
        reward=0,
        done=False,
        reason=reason,
        location=location,
        inventory_list=tuple(inventory),
        valid_actions=tuple(valid),
        score=score,
        moves=t,
    )


def keyword_offset_episode():
    """Maze fragment: the first reason mentioning 'out' is two steps before
    a 'north' action."""
    moves = ("east", "look", "north", "south", "wait", "west")
    steps = (
        _text_step(
            1, "east", "Try unexplored maze direction to find a way out",
            "Maze. A threatening little dwarf comes out of the shadows!",
            "alike_maze_3", moves, 32,
        ),
        _text_step(
            2, "west", "Try a new maze direction; avoid repeating recent moves",
            "Maze. The dwarf stalks after you and throws a nasty little knife, but misses!",
            "alike_maze_2", moves, 32,
        ),
        _text_step(
            3, "north", "Keep exploring maze; try to find exit or landmark",
            "Maze. A threatening little dwarf hides in the shadows.",
            "alike_maze_1", moves, 32,
        ),
    )
    trace = EpisodeTrace(
        game_id="casebook",
        family="text",
        env_seed=0,
        run_id="case-keyword-offset",
        initial=StartState(location="alike_maze_4", inventory_list=(), score=32),
        steps=steps,
    )
    return trace, None


def longest_run_episode():
    """Six MOVE_LEFT presses split 2 and 4 by one MOVE_UP: longest run 4."""
    base = [[GRASS] * 8 for _ in range(4)]
    script = [
        ("MOVE_LEFT", (2, 5), "left", "Close the distance to the stone wall on the far left."),
        ("MOVE_LEFT", (2, 4), "left", "Keep moving left toward the stone wall."),
        ("MOVE_UP", (1, 4), "up", "Sidestep up around a hollow in the ground."),
        ("MOVE_LEFT", (1, 3), "left", "Resume the approach to the stone wall."),
        ("MOVE_LEFT", (1, 2), "left", "Move left; the wall is getting closer."),
        ("MOVE_LEFT", (1, 1), "left", "Move left along the open ground."),
        ("MOVE_LEFT", (1, 0), "left", "Stand adjacent to the wall, ready to mine."),
        ("DO", (1, 0), "left", "Swing at the wall edge."),
    ]
    steps = tuple(
        _grid_step(t, action, reason, position, facing)
        for t, (action, position, facing, reason) in enumerate(script, start=1)
    )
    trace = EpisodeTrace(
        game_id="casebook",
        family="grid",
        env_seed=0,
        run_id="case-longest-run",
        initial=StartState(
            position=(2, 6), facing="down", stats=dict(FULL_STATS), inventory_counts={}
        ),
        steps=steps,
    )
    return trace, _grid_sidecar("case-longest-run", base, {})


CAVE_ROOMS = (
    "inside barrow", "narrow tunnel", "foot bridge", "shallow ford",
    "dark tunnel", "path near stream", "formal garden", "north end garden",
    "gazebo", "grecavern", "topiary", "carousel", "cool", "ice",
    "lava tube", "cobwebby corridor", "stone bridge", "drag", "end ledge",
    "fresco", "bank entrance", "west tellers", "west viewing",
    "east tellers", "east viewing",
)


def distinct_locations_episode():
    """A sweep through 25 named rooms with three revisits at the end."""
    moves = ("east", "look", "north", "south", "wait", "west")
    verbs = ("north", "east", "south", "west")
    route = list(CAVE_ROOMS[1:]) + ["gazebo", "ice", "inside barrow"]
    steps = tuple(
        _text_step(
            t, verbs[t % 4], f"Press on toward the {room}.",
            f"You arrive at the {room}.", room, moves, 0,
        )
        for t, room in enumerate(route, start=1)
    )
    trace = EpisodeTrace(
        game_id="casebook",
        family="text",
        env_seed=0,
        run_id="case-distinct-locations",
        initial=StartState(location=CAVE_ROOMS[0], inventory_list=(), score=0),
        steps=steps,
    )
    return trace, None


def collect_success_episode():
    """Twenty chop attempts along a river bank; exactly five yield wood."""
    cols = 18
    base = [[WATER] * cols, [GRASS] * cols, [GRASS] * cols]
    tree_cols = (2, 5, 8, 11, 14)
    for c in tree_cols:
        base[1][c] = TREE

    steps = []
    edits = {}
    wood = 0
    t = 0
    position = (1, 1)

    def push(action, reason, facing, **overrides):
        nonlocal t
        t += 1
        overrides.setdefault("inventory_counts", {"wood": wood} if wood else {})
        overrides.setdefault("achievements", ("collect_wood",) if wood else ())
        steps.append(_grid_step(t, action, reason, position, facing, **overrides))

    for tree_col in tree_cols:
        push("MOVE_RIGHT", "Face the tree on the bank.", "right")
        wood += 1
        edits[t + 1] = ((1, tree_col, GRASS),)
        push(
            "DO", "Chop the tree to collect wood.", "right",
            events=(("collect_success", "wood"),),
            reward=1 if wood == 1 else 0,
        )
        push("MOVE_UP", "Check the waterline upstream.", "up")
        for _ in range(3):
            push("DO", "Try to collect from the water's edge.", "up")
        for _ in range(3):
            position = (1, position[1] + 1)
            push("MOVE_RIGHT", "Shift along the bank toward the next tree.", "right")

    trace = EpisodeTrace(
        game_id="casebook",
        family="grid",
        env_seed=0,
        run_id="case-collect-success",
        initial=StartState(
            position=(1, 1), facing="down", stats=dict(FULL_STATS), inventory_counts={}
        ),
        steps=tuple(steps),
    )
    return trace, _grid_sidecar("case-collect-success", base, edits)


def unique_trees_episode():
    """Eighteen trees drift through a moving 9x9 view; one gets chopped."""
    size = 16
    base = [[GRASS] * size for _ in range(size)]
    tree_cells = (
        (4, 0), (4, 3), (4, 7), (4, 11), (4, 15),
        (6, 1), (6, 5), (6, 9), (6, 13),
        (8, 12),
        (10, 0), (10, 4), (10, 8), (10, 12),
        (12, 2), (12, 6), (12, 10), (12, 14),
    )
    for r, c in tree_cells:
        base[r][c] = TREE

    steps = []
    for t in range(1, 9):
        steps.append(
            _grid_step(
                t, "MOVE_RIGHT", "Sweep east across the meadow.", (8, 3 + t), "right"
            )
        )
    steps.append(
        _grid_step(9, "MOVE_RIGHT", "Face the lone tree ahead.", (8, 11), "right")
    )
    steps.append(
        _grid_step(
            10, "DO", "Chop the tree to collect wood.", (8, 11), "right",
            inventory_counts={"wood": 1},
            achievements=("collect_wood",),
            events=(("collect_success", "wood"),),
            reward=1,
        )
    )
    trace = EpisodeTrace(
        game_id="casebook",
        family="grid",
        env_seed=0,
        run_id="case-unique-trees",
        initial=StartState(
            position=(8, 3), facing="down", stats=dict(FULL_STATS), inventory_counts={}
        ),
        steps=tuple(steps),
    )
    return trace, _grid_sidecar("case-unique-trees", base, {10: ((8, 12, GRASS),)})


def detour_navigation_episode():
    """A walled corridor where the nearest water needs a 10-step detour."""
    grid = [[STONE] * 6 for _ in range(9)]
    corridor = [(7, 0), (7, 1), (6, 1), (5, 1), (4, 1), (3, 1), (2, 1), (1, 1), (1, 2), (1, 3)]
    for r, c in corridor:
        grid[r][c] = GRASS
    grid[1][4] = WATER
    steps = (
        _grid_step(
            1, "MOVE_LEFT", "Step into the corridor mouth.", (7, 0), "left"
        ),
    )
    trace = EpisodeTrace(
        game_id="casebook",
        family="grid",
        env_seed=0,
        run_id="case-detour-navigation",
        initial=StartState(
            position=(7, 1), facing="down", stats=dict(FULL_STATS), inventory_counts={}
        ),
        steps=steps,
    )
    return trace, _grid_sidecar("case-detour-navigation", grid, {})
