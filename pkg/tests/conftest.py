"""Shared fixtures: tiny hand-built episodes exercising both families."""

import pytest

from traceqa.trace import BackendSidecar, EpisodeTrace, StartState, StepRecord


def build_text_episode():
    """Three-room toy episode: take a lamp, walk north twice."""
    steps = (
        StepRecord(
            step_index=1,
            action="take lamp",
            reason="Grab the lamp; it could be useful in the dark.",
            observation="You are in the Foyer. A brass lamp rests here.",
            reward=2,
            done=False,
            location="foyer",
            inventory_list=("lamp",),
            valid_actions=("look", "north", "take lamp", "wait"),
            score=2,
            moves=1,
        ),
        StepRecord(
            step_index=2,
            action="north",
            reason="Head north to explore the hallway.",
            observation="Taken.",
            reward=0,
            done=False,
            location="hallway",
            inventory_list=("lamp",),
            valid_actions=("look", "north", "wait"),
            score=2,
            moves=2,
        ),
        StepRecord(
            step_index=3,
            action="north",
            reason="Keep going north toward the kitchen.",
            observation="Hallway. A long corridor stretches on.",
            reward=5,
            done=True,
            location="kitchen",
            inventory_list=("lamp",),
            valid_actions=("look", "north", "south", "wait"),
            score=7,
            moves=3,
        ),
    )
    trace = EpisodeTrace(
        game_id="toy_text",
        family="text",
        env_seed=7,
        run_id="toy-text-7",
        initial=StartState(location="foyer", inventory_list=(), score=0),
        steps=steps,
    )
    sidecar = BackendSidecar(
        family="text",
        game_id="toy_text",
        env_seed=7,
        run_id="toy-text-7",
        location_graph_hint={
            "rooms": ["foyer", "hallway", "kitchen"],
            "edges": [
                ("foyer", "north", "hallway"),
                ("hallway", "north", "kitchen"),
                ("hallway", "south", "foyer"),
                ("kitchen", "south", "hallway"),
            ],
        },
    )
    return trace, sidecar


def build_grid_episode():
    """Four-step toy episode on a 5x5 map: move, chop a tree, move."""
    base = (
        (1, 1, 1, 1, 1),
        (1, 5, 1, 0, 1),
        (1, 1, 1, 0, 1),
        (1, 2, 1, 1, 1),
        (1, 1, 1, 1, 1),
    )
    stats = {"health": 9, "food": 9, "water": 9, "energy": 9}
    steps = (
        StepRecord(
            step_index=1,
            action="MOVE_UP",
            reason="Move up toward the tree to gather wood.",
            observation="grass all around",
            reward=0,
            done=False,
            position=(2, 2),
            facing="up",
            terrain_under=1,
            stats=dict(stats),
            inventory_counts={},
            achievements=(),
            events=(),
        ),
        StepRecord(
            step_index=2,
            action="MOVE_LEFT",
            reason="Step left to face the tree.",
            observation="a tree to the left",
            reward=0,
            done=False,
            position=(2, 1),
            facing="left",
            terrain_under=1,
            stats=dict(stats),
            inventory_counts={},
            achievements=(),
            events=(),
        ),
        StepRecord(
            step_index=3,
            action="MOVE_UP",
            reason="Face the tree before chopping.",
            observation="the tree is just above",
            reward=0,
            done=False,
            position=(2, 1),
            facing="up",
            terrain_under=1,
            stats=dict(stats),
            inventory_counts={},
            achievements=(),
            events=(),
        ),
        StepRecord(
            step_index=4,
            action="DO",
            reason="Chop the tree to collect wood.",
            observation="wood collected",
            reward=1,
            done=True,
            position=(2, 1),
            facing="up",
            terrain_under=1,
            stats=dict(stats),
            inventory_counts={"wood": 1},
            achievements=("collect_wood",),
            events=(("collect_success", "wood"),),
        ),
    )
    trace = EpisodeTrace(
        game_id="toy_grid",
        family="grid",
        env_seed=3,
        run_id="toy-grid-3",
        initial=StartState(
            position=(3, 2),
            facing="up",
            stats=dict(stats),
            inventory_counts={},
        ),
        steps=steps,
    )
    sidecar = BackendSidecar(
        family="grid",
        game_id="toy_grid",
        env_seed=3,
        run_id="toy-grid-3",
        view_radius=1,
        terrain_vocab={
            0: "water",
            1: "grass",
            2: "stone",
            5: "tree",
        },
        base_grid=base,
        step_edits={1: (), 2: (), 3: (), 4: ((1, 1, 1),)},
    )
    return trace, sidecar


@pytest.fixture
def text_episode():
    return build_text_episode()


@pytest.fixture
def grid_episode():
    return build_grid_episode()
