"""Miniature interactive-fiction engine behind the FrotzEnv API.

Story files are JSON: rooms with exits and descriptions, items with a
home room and take points, a start room, and a victory bonus awarded
when the last item is taken. The engine is fully deterministic; the
seed argument exists only for constructor compatibility.
"""

import json
from pathlib import Path


class _ZObject:
    def __init__(self, name: str):
        self.name = name

    def __repr__(self):
        return f"_ZObject({self.name!r})"


class FrotzEnv:
    def __init__(self, story_file: str, seed: int | None = None):
        self.story = json.loads(Path(story_file).read_text(encoding="utf-8"))
        self.seed = seed
        self.reset()

    def reset(self):
        self.location = self.story["start"]
        self.carried: list[str] = []
        self.item_rooms = {name: entry["room"] for name, entry in self.story["items"].items()}
        self.score = 0
        self.moves = 0
        self.done = False
        return self._describe(), self._info()

    def _info(self) -> dict:
        return {"score": self.score, "moves": self.moves}

    def _room(self) -> dict:
        return self.story["rooms"][self.location]

    def _items_here(self) -> list[str]:
        return sorted(n for n, room in self.item_rooms.items() if room == self.location)

    def _describe(self) -> str:
        parts = [self._room()["description"]]
        for item in self._items_here():
            parts.append(f"A {item} lies here.")
        return " ".join(parts)

    def get_valid_actions(self) -> list[str]:
        acts = ["look"] + sorted(self._room()["exits"])
        acts += [f"take {item}" for item in self._items_here()]
        return acts

    def get_inventory(self) -> list[_ZObject]:
        return [_ZObject(name) for name in self.carried]

    def get_player_location(self) -> _ZObject:
        return _ZObject(self.location)

    def get_max_score(self) -> int:
        points = sum(entry["points"] for entry in self.story["items"].values())
        return points + self.story["victory_bonus"]

    def victory(self) -> bool:
        return self.done

    def step(self, action: str):
        if self.done:
            raise RuntimeError("episode already finished")
        self.moves += 1
        reward = 0
        exits = self._room()["exits"]
        if action == "look":
            obs = self._describe()
        elif action in exits:
            self.location = exits[action]
            obs = self._describe()
        elif action.startswith("take "):
            item = action[len("take "):]
            if self.item_rooms.get(item) == self.location:
                self.item_rooms[item] = None
                self.carried.append(item)
                reward = self.story["items"][item]["points"]
                obs = f"You pick up the {item}."
                if len(self.carried) == len(self.story["items"]):
                    reward += self.story["victory_bonus"]
                    self.done = True
                    obs += " That was the last treasure. You have won!"
            else:
                obs = f"There is no {item} here."
        else:
            obs = "That is not something you can do here."
        self.score += reward
        return obs, reward, self.done, self._info()
