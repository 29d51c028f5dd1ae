"""Step-addressable timeline and event index over a recorded episode.

The index answers two kinds of lookups that every question template builds
on: state at a step (location, inventory, stats, position, score, with step 0
meaning the pre-episode header state) and ordered occurrence lists of events
(item gains, room entries, collects, attacks, keyword mentions, action uses)
for ordinal queries like "the third time you collected wood".

The index never looks past the steps it was built from. Callers that need a
bounded view truncate the episode first, which makes leaking future state
structurally impossible.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache

from traceqa.trace import BackendSidecar, EpisodeTrace, serialize_trace

MOVE_ACTIONS = {
    "MOVE_LEFT": "left",
    "MOVE_RIGHT": "right",
    "MOVE_UP": "up",
    "MOVE_DOWN": "down",
}

ORDINALS = ("first", "second", "third", "last", "second_last")

ORDINAL_PHRASE = {
    "first": "first",
    "second": "second",
    "third": "third",
    "last": "last",
    "second_last": "second-to-last",
}


def pick_ordinal(steps: list[int], ordinal: str) -> int | None:
    """Select one step from an ascending occurrence list, or None."""
    n = len(steps)
    if ordinal == "first":
        return steps[0] if n >= 1 else None
    if ordinal == "second":
        return steps[1] if n >= 2 else None
    if ordinal == "third":
        return steps[2] if n >= 3 else None
    if ordinal == "last":
        return steps[-1] if n >= 1 else None
    if ordinal == "second_last":
        return steps[-2] if n >= 2 else None
    raise ValueError(f"unknown ordinal {ordinal!r}")


@dataclass(frozen=True)
class Occurrence:
    step: int
    value: str


def _word_pattern(word: str) -> re.Pattern:
    return re.compile(rf"(?<![a-z0-9_]){re.escape(word.lower())}(?![a-z0-9_])")


class EpisodeIndex:
    """Precomputed lookups over one episode (built once, read many times)."""

    def __init__(self, trace: EpisodeTrace, sidecar: BackendSidecar | None = None):
        self.trace = trace
        self.sidecar = sidecar
        self.family = trace.family
        self.T = trace.length
        self._events: dict[str, list[Occurrence]] = {}
        self._keyword_cache: dict[tuple[str, str], list[int]] = {}
        if self.family == "text":
            self._build_text_events()
        else:
            self._build_grid_events()
        self._episode_text = self._collect_episode_text()

    # -- state at a step (0 = before step 1) --------------------------------

    def location_at(self, t: int) -> str:
        if t == 0:
            return self.trace.initial.location
        return self.trace.step(t).location

    def inventory_list_at(self, t: int) -> tuple[str, ...]:
        if t == 0:
            return self.trace.initial.inventory_list
        return self.trace.step(t).inventory_list

    def score_at(self, t: int) -> int:
        if t == 0:
            return self.trace.initial.score
        return self.trace.step(t).score

    def position_at(self, t: int) -> tuple[int, int]:
        if t == 0:
            return self.trace.initial.position
        return self.trace.step(t).position

    def stats_at(self, t: int) -> dict[str, int]:
        if t == 0:
            return dict(self.trace.initial.stats)
        return dict(self.trace.step(t).stats)

    def inventory_counts_at(self, t: int) -> dict[str, int]:
        if t == 0:
            return dict(self.trace.initial.inventory_counts)
        return dict(self.trace.step(t).inventory_counts)

    def inventory_count_at(self, t: int, resource: str) -> int:
        return self.inventory_counts_at(t).get(resource, 0)

    def achievements_at(self, t: int) -> frozenset[str]:
        if t == 0:
            return frozenset()
        return frozenset(self.trace.step(t).achievements)

    # -- event lists ---------------------------------------------------------

    def _add(self, kind: str, step: int, value: str) -> None:
        self._events.setdefault(kind, []).append(Occurrence(step, value))

    def _build_text_events(self) -> None:
        prev_inv = set(self.trace.initial.inventory_list)
        prev_loc = self.trace.initial.location
        prev_score = self.trace.initial.score
        for step in self.trace.steps:
            t = step.step_index
            inv = set(step.inventory_list)
            for item in sorted(inv - prev_inv):
                self._add("inventory_gain", t, item)
            for item in sorted(prev_inv - inv):
                self._add("inventory_loss", t, item)
            if step.location != prev_loc:
                self._add("location_leave", t, prev_loc)
                self._add("location_enter", t, step.location)
            if step.score > prev_score:
                self._add("score_increase", t, str(step.score - prev_score))
            prev_inv, prev_loc, prev_score = inv, step.location, step.score

    def _build_grid_events(self) -> None:
        prev_counts = dict(self.trace.initial.inventory_counts)
        prev_ach: frozenset[str] = frozenset()
        prev_pos = self.trace.initial.position
        for step in self.trace.steps:
            t = step.step_index
            for kind, value in step.events:
                self._add(kind, t, value)
            counts = step.inventory_counts
            for res in sorted(set(prev_counts) | set(counts)):
                before = prev_counts.get(res, 0)
                after = counts.get(res, 0)
                if after > before:
                    self._add("inventory_gain", t, res)
                elif after < before:
                    self._add("inventory_loss", t, res)
            for name in sorted(frozenset(step.achievements) - prev_ach):
                self._add("achievement_unlock", t, name)
            if step.action in MOVE_ACTIONS:
                direction = MOVE_ACTIONS[step.action]
                self._add("move_attempt", t, direction)
                if step.position != prev_pos:
                    self._add("move_success", t, direction)
            self._add("terrain_stand", t, str(step.terrain_under))
            prev_counts = dict(counts)
            prev_ach = frozenset(step.achievements)
            prev_pos = step.position

    def occurrences(self, kind: str, value: str | None = None) -> list[int]:
        """Steps at which an event occurred, ascending; filter by value."""
        occ = self._events.get(kind, ())
        if value is None:
            return [o.step for o in occ]
        return [o.step for o in occ if o.value == value]

    def event_values(self, kind: str) -> list[str]:
        """Distinct values an event kind took, sorted."""
        return sorted({o.value for o in self._events.get(kind, ())})

    def action_steps(self, action: str) -> list[int]:
        return [s.step_index for s in self.trace.steps if s.action == action]

    def distinct_actions(self) -> list[str]:
        return sorted({s.action for s in self.trace.steps})

    # -- keyword search ------------------------------------------------------

    def keyword_steps(self, field: str, word: str) -> list[int]:
        """Steps whose ``observation`` or ``reason`` mentions ``word``.

        Matching is case-insensitive on whole words (identifier characters
        delimit), so "out" does not match "south".
        """
        key = (field, word.lower())
        if key not in self._keyword_cache:
            pattern = _word_pattern(word)
            steps = []
            for step in self.trace.steps:
                text = step.observation if field == "observation" else (step.reason or "")
                if pattern.search(text.lower()):
                    steps.append(step.step_index)
            self._keyword_cache[key] = steps
        return self._keyword_cache[key]

    def keyword_total(self, field: str, word: str, lo: int, hi: int) -> int:
        """Total occurrences of ``word`` in a step span (not step count)."""
        pattern = _word_pattern(word)
        total = 0
        for t in range(lo, hi + 1):
            step = self.trace.step(t)
            text = step.observation if field == "observation" else (step.reason or "")
            total += len(pattern.findall(text.lower()))
        return total

    # -- derived views -------------------------------------------------------

    def visited_rooms(self, lo: int, hi: int) -> list[str]:
        """Rooms occupied at any time during steps [lo, hi], sorted.

        Includes the room occupied when the span began (the post-state of
        step lo-1, or the start room when lo is 1).
        """
        rooms = {self.location_at(lo - 1)}
        for t in range(lo, hi + 1):
            rooms.add(self.location_at(t))
        return sorted(rooms)

    def room_visit_counts(self, lo: int, hi: int) -> dict[str, int]:
        """Number of entries into each room during [lo, hi].

        Occupying a room as the span opens counts as one entry into it.
        """
        counts: dict[str, int] = {self.location_at(lo - 1): 1}
        for t in range(lo, hi + 1):
            loc = self.location_at(t)
            if loc != self.location_at(t - 1):
                counts[loc] = counts.get(loc, 0) + 1
        return counts

    def room_dwell_steps(self, lo: int, hi: int) -> dict[str, int]:
        """Steps spent in each room during [lo, hi] (by post-action state)."""
        counts: dict[str, int] = {}
        for t in range(lo, hi + 1):
            loc = self.location_at(t)
            counts[loc] = counts.get(loc, 0) + 1
        return counts

    def _collect_episode_text(self) -> str:
        return serialize_trace(self.trace).lower()

    @lru_cache(maxsize=4096)
    def mentioned_in_episode(self, term: str) -> bool:
        """Whole-word check of ``term`` against the full serialized episode.

        Scanning the canonical serialization covers every recorded surface at
        once: actions, reasons, observations, locations, items, achievement
        and event names, and structural keys. Underscore identifiers are also
        tried with spaces so that, say, the phrase "wood pickaxe" in a reason
        shadows the ``wood_pickaxe`` binding.
        """
        if _word_pattern(term).search(self._episode_text):
            return True
        spaced = term.replace("_", " ")
        return spaced != term and bool(_word_pattern(spaced).search(self._episode_text))
