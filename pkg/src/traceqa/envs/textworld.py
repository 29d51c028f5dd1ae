"""Built-in manor exploration game and its scripted agents.

Thirteen authored rooms joined by compass and stair exits, with eight
portable items worth points on first pickup and two rooms that award a
discovery bonus on first entry. Observations follow the interactive-fiction
convention: each step's observation is the engine's response to the previous
command, so it describes the world as the agent sees it before acting.
Episodes end when every item has been picked up at least once, or at the
step cap. Runs are pure functions of (env_seed, policy, max_steps).
"""

from __future__ import annotations

import random

from traceqa.trace import BackendSidecar, EpisodeTrace, StartState, StepRecord

GAME_ID = "manor"
START_ROOM = "foyer"

EXITS = {
    "foyer": {"north": "hallway", "east": "gallery", "down": "cellar"},
    "hallway": {"south": "foyer", "north": "kitchen", "east": "library", "west": "workshop"},
    "kitchen": {"south": "hallway", "east": "pantry", "north": "garden"},
    "pantry": {"west": "kitchen"},
    "garden": {"south": "kitchen", "east": "greenhouse"},
    "greenhouse": {"west": "garden"},
    "library": {"west": "hallway", "up": "study"},
    "study": {"down": "library", "up": "attic"},
    "attic": {"down": "study"},
    "gallery": {"west": "foyer", "up": "tower"},
    "tower": {"down": "gallery"},
    "workshop": {"east": "hallway"},
    "cellar": {"up": "foyer"},
}

FLAVOR = {
    "foyer": "Coat hooks line the entry wall.",
    "hallway": "A long corridor stretches on.",
    "kitchen": "Copper pots hang over the stove.",
    "pantry": "Shelves of preserves crowd the walls.",
    "garden": "Hedges frame a gravel path.",
    "greenhouse": "Warm air smells of soil and leaves.",
    "library": "Tall shelves sag under old books.",
    "study": "A desk sits under a narrow window.",
    "attic": "Dust drifts in the slanted light.",
    "gallery": "Portraits watch from gilded frames.",
    "tower": "Wind hums past the parapet.",
    "workshop": "Benches are strewn with tools.",
    "cellar": "The air is cool and damp here.",
}

ITEM_HOMES = {
    "lamp": "foyer",
    "key": "workshop",
    "book": "library",
    "coin": "cellar",
    "rope": "garden",
    "apple": "pantry",
    "gem": "tower",
    "hammer": "workshop",
}

TAKE_POINTS = {
    "lamp": 2,
    "key": 3,
    "book": 1,
    "coin": 5,
    "rope": 1,
    "apple": 1,
    "gem": 4,
    "hammer": 2,
}

ENTRY_BONUS = {"greenhouse": 2, "tower": 3}

AMBIENT_LINES = ("A cold draft passes through.", "Somewhere a clock chimes.")


def room_description(room: str, items: tuple[str, ...]) -> str:
    parts = [f"{room.capitalize()}. {FLAVOR[room]}"]
    for item in items:
        parts.append(f"A {item} rests here.")
    return " ".join(parts)


class ManorWorld:
    """Manor game state machine; one instance per episode."""

    def __init__(self, env_seed: int, max_steps: int):
        self.env_seed = env_seed
        self.room = START_ROOM
        self.items_by_room = {room: [] for room in EXITS}
        for item, home in ITEM_HOMES.items():
            self.items_by_room[home].append(item)
        self.inventory: list[str] = []
        self.taken_once: set[str] = set()
        self.visited = {START_ROOM}
        self.score = 0
        self.pending_response = room_description(
            START_ROOM, tuple(self.items_by_room[START_ROOM])
        )
        rng = random.Random(f"ambient:{env_seed}")
        steps = rng.sample(range(5, min(40, max_steps)), 2)
        self.ambient = {step: line for step, line in zip(sorted(steps), AMBIENT_LINES)}

    def valid_actions(self) -> tuple[str, ...]:
        actions = ["look", "wait"]
        actions.extend(sorted(EXITS[self.room]))
        actions.extend(f"take {item}" for item in sorted(self.items_by_room[self.room]))
        actions.extend(f"drop {item}" for item in sorted(self.inventory))
        return tuple(actions)

    def step(self, t: int, action: str) -> tuple[str, int, bool]:
        """Apply ``action``; return (observation, reward, done).

        The returned observation is the response the agent will read before
        its next action.
        """
        gained = 0
        if action == "look":
            response = room_description(self.room, tuple(self.items_by_room[self.room]))
        elif action == "wait":
            response = "Time passes."
        elif action in EXITS[self.room]:
            self.room = EXITS[self.room][action]
            response = room_description(self.room, tuple(self.items_by_room[self.room]))
            if self.room not in self.visited:
                self.visited.add(self.room)
                bonus = ENTRY_BONUS.get(self.room, 0)
                if bonus:
                    gained += bonus
                    response += " You feel a surge of discovery."
        elif action.startswith("take "):
            item = action.removeprefix("take ")
            self.items_by_room[self.room].remove(item)
            self.inventory.append(item)
            if item not in self.taken_once:
                self.taken_once.add(item)
                gained += TAKE_POINTS[item]
            response = "Taken."
        elif action.startswith("drop "):
            item = action.removeprefix("drop ")
            self.inventory.remove(item)
            self.items_by_room[self.room].append(item)
            response = "Dropped."
        else:
            response = "Nothing happens."
        if t in self.ambient:
            response += " " + self.ambient[t]
        self.score += gained
        self.pending_response = response
        done = self.taken_once == set(ITEM_HOMES)
        return response, gained, done


# -- policies -----------------------------------------------------------------

TAKE_REASONS = {
    "lamp": "Grab the lamp; it could be useful in the dark.",
    "coin": "Pocket the coin; it looks like treasure.",
    "key": "Grab the key; it might open a locked door.",
}


class ExplorerPolicy:
    """Depth-first sweep of the manor, picking up everything it finds."""

    def __init__(self, env_seed: int):
        self.rng = random.Random(f"explorer:{env_seed}")
        self.visited: set[str] = set()
        self.trail: list[str] = []
        self.scripted: list[tuple[str, str]] = []
        self.quirk_done = False

    def act(self, env: ManorWorld) -> tuple[str, str]:
        if self.scripted:
            return self.scripted.pop(0)
        room = env.room
        self.visited.add(room)
        items = sorted(env.items_by_room[room])
        untaken = [i for i in items if i not in env.taken_once]
        if untaken:
            item = untaken[0]
            if not self.quirk_done and self.rng.random() < 0.35:
                self.quirk_done = True
                self.scripted = [
                    (f"drop {item}", f"Set the {item} down to lighten the load."),
                    (f"take {item}", f"Pick the {item} back up before moving on."),
                ]
            reason = TAKE_REASONS.get(item, f"Grab the {item}; it could be useful later.")
            return f"take {item}", reason
        for verb in sorted(EXITS[room]):
            nxt = EXITS[room][verb]
            if nxt not in self.visited:
                self.trail.append(_reverse_verb(room, verb))
                return verb, f"Head {verb} to explore new ground."
        if self.trail:
            back = self.trail.pop()
            return back, f"Backtrack {back} to search other routes."
        return "wait", "Stay put; the whole manor has been searched."


def _reverse_verb(room: str, verb: str) -> str:
    """The verb that returns from the room ``verb`` leads to."""
    destination = EXITS[room][verb]
    for back, target in EXITS[destination].items():
        if target == room:
            return back
    raise ValueError(f"no return edge from {destination} to {room}")


class TextRandomWalkPolicy:
    """Aimless agent: seeded choices among whatever is currently valid."""

    PHRASES = (
        "Wander {verb} without a plan.",
        "Drift {verb} and keep moving.",
        "Take the {verb} way on a hunch.",
    )

    def __init__(self, env_seed: int):
        self.rng = random.Random(f"random_walk:{env_seed}")
        self.phrase_index = 0

    def act(self, env: ManorWorld) -> tuple[str, str]:
        moves = sorted(EXITS[env.room])
        takes = [f"take {i}" for i in sorted(env.items_by_room[env.room])]
        roll = self.rng.random()
        if takes and roll < 0.2:
            action = self.rng.choice(takes)
            item = action.removeprefix("take ")
            return action, f"Pick up the {item} on a whim."
        if roll < 0.9:
            verb = self.rng.choice(moves)
            phrase = self.PHRASES[self.phrase_index % len(self.PHRASES)]
            self.phrase_index += 1
            return verb, phrase.format(verb=verb)
        return "look", "Glance around before choosing a path."


POLICIES = {"explorer": ExplorerPolicy, "random_walk": TextRandomWalkPolicy}


def run_text_episode(
    env_seed: int,
    policy_name: str = "explorer",
    max_steps: int = 120,
    run_id: str | None = None,
) -> tuple[EpisodeTrace, BackendSidecar]:
    """Play one seeded episode and return its trace and sidecar."""
    if policy_name not in POLICIES:
        raise ValueError(f"unknown text policy {policy_name!r}")
    env = ManorWorld(env_seed, max_steps)
    policy = POLICIES[policy_name](env_seed)
    if run_id is None:
        run_id = f"{GAME_ID}-s{env_seed}-{policy_name}-n{max_steps}"

    initial = StartState(location=START_ROOM, inventory_list=(), score=0)
    records = []
    for t in range(1, max_steps + 1):
        observation = env.pending_response
        valid = env.valid_actions()
        action, reason = policy.act(env)
        _, reward, done = env.step(t, action)
        records.append(
            StepRecord(
                step_index=t,
                action=action,
                observation=observation,
                reward=reward,
                done=done,
                reason=reason,
                location=env.room,
                inventory_list=tuple(env.inventory),
                valid_actions=valid,
                score=env.score,
                moves=t,
            )
        )
        if done:
            break

    trace = EpisodeTrace(
        game_id=GAME_ID,
        family="text",
        env_seed=env_seed,
        run_id=run_id,
        initial=initial,
        steps=tuple(records),
    )
    sidecar = BackendSidecar(
        family="text",
        game_id=GAME_ID,
        env_seed=env_seed,
        run_id=run_id,
        location_graph_hint={
            "rooms": sorted(EXITS),
            "edges": [
                (room, verb, EXITS[room][verb])
                for room in sorted(EXITS)
                for verb in sorted(EXITS[room])
            ],
        },
    )
    return trace, sidecar
