"""Canonical episode-log model and its line-delimited interchange format.

An episode is recorded as JSON Lines: one header record carrying episode
identity and pre-episode state, followed by one step record per environment
step. Backend ground-truth state that the acting agent never saw (full maps,
per-step grid edits, authored room graphs) travels in a separate sidecar
stream so that the agent-visible trace stays honest.

Two families share the format. ``text`` episodes log location, carried items,
valid actions, score, and move count per step. ``grid`` episodes log position,
facing, terrain under the agent, survival stats, inventory counts, cumulative
achievements, and discrete events.

Field timing contract: ``observation`` and ``valid_actions`` describe the
state the agent saw *before* acting at that step, while ``reward``,
``score``, ``moves``, ``location``, ``inventory``, ``position``, ``facing``,
``terrain_under``, ``stats``, ``achievements``, and ``events`` describe the
state *after* the action resolved. The header's ``initial_*`` fields supply
the missing before-step-1 state so that step-1 diffs are well defined.

Serialization is canonical: fixed key order, compact separators, sorted
collections where the underlying value is a set. Parsing then re-serializing
a well-formed stream is byte-identical.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from typing import Iterable, Iterator

FAMILIES = ("text", "grid")

STAT_KEYS = ("health", "food", "water", "energy")

EVENT_KINDS = (
    "collect_success",
    "attack_received",
    "death",
    "place",
    "craft",
)

FACINGS = ("up", "down", "left", "right")


class TraceFormatError(ValueError):
    """Raised when a record stream violates the interchange format."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


@dataclass(frozen=True)
class StartState:
    """Pre-episode state carried by the header record.

    Text episodes use ``location``, ``inventory_list``, and ``score``; grid
    episodes use ``position``, ``facing``, ``stats``, and
    ``inventory_counts``.
    """

    location: str | None = None
    inventory_list: tuple[str, ...] = ()
    score: int = 0
    position: tuple[int, int] | None = None
    facing: str | None = None
    stats: dict[str, int] | None = None
    inventory_counts: dict[str, int] | None = None


@dataclass(frozen=True)
class StepRecord:
    """One environment step. Family-specific fields are None when absent."""

    step_index: int
    action: str
    observation: str
    reward: int | float
    done: bool
    reason: str | None = None
    # text family
    location: str | None = None
    inventory_list: tuple[str, ...] | None = None
    valid_actions: tuple[str, ...] | None = None
    score: int | None = None
    moves: int | None = None
    # grid family
    position: tuple[int, int] | None = None
    facing: str | None = None
    terrain_under: int | None = None
    stats: dict[str, int] | None = None
    inventory_counts: dict[str, int] | None = None
    achievements: tuple[str, ...] | None = None
    events: tuple[tuple[str, str], ...] | None = None


@dataclass(frozen=True)
class EpisodeTrace:
    """A full recorded episode: identity, start state, and ordered steps."""

    game_id: str
    family: str
    env_seed: int
    run_id: str
    initial: StartState
    steps: tuple[StepRecord, ...]

    @property
    def length(self) -> int:
        return len(self.steps)

    def step(self, index: int) -> StepRecord:
        """Return the record for 1-based step ``index``."""
        if not 1 <= index <= len(self.steps):
            raise IndexError(f"step index {index} outside 1..{len(self.steps)}")
        return self.steps[index - 1]


@dataclass(frozen=True)
class BackendSidecar:
    """Backend ground truth recorded alongside a trace.

    Grid episodes always carry ``base_grid`` (the full map before step 1),
    ``view_radius``, and ``terrain_vocab``. ``step_edits`` maps each step to
    the cell writes that the engine applied during that step; when present it
    covers every step, so the grid after step t is reconstructable exactly.
    Text episodes may carry ``location_graph_hint``, the authored room graph.
    """

    family: str
    game_id: str
    env_seed: int
    run_id: str
    view_radius: int | None = None
    terrain_vocab: dict[int, str] | None = None
    base_grid: tuple[tuple[int, ...], ...] | None = None
    step_edits: dict[int, tuple[tuple[int, int, int], ...]] | None = None
    location_graph_hint: dict | None = None

    def grid_after(self, step_index: int) -> list[list[int]]:
        """Replay recorded edits and return the grid after ``step_index``.

        Step 0 returns the base grid. Requires ``base_grid`` and
        ``step_edits``.
        """
        if self.base_grid is None or self.step_edits is None:
            raise ValueError("sidecar has no per-step grid information")
        grid = [list(row) for row in self.base_grid]
        for t in range(1, step_index + 1):
            for r, c, value in self.step_edits.get(t, ()):
                grid[r][c] = value
        return grid


def _dumps(obj: dict) -> str:
    return json.dumps(obj, separators=(",", ":"))


def _sorted_stats(stats: dict[str, int]) -> dict[str, int]:
    out = {k: stats[k] for k in STAT_KEYS if k in stats}
    for k in sorted(stats):
        if k not in out:
            out[k] = stats[k]
    return out


def _header_dict(trace: EpisodeTrace) -> dict:
    head: dict = {
        "record": "header",
        "game_id": trace.game_id,
        "family": trace.family,
        "env_seed": trace.env_seed,
        "run_id": trace.run_id,
    }
    init = trace.initial
    if trace.family == "text":
        head["initial_location"] = init.location
        head["initial_inventory"] = list(init.inventory_list)
        head["initial_score"] = init.score
    else:
        head["initial_position"] = list(init.position)
        head["initial_facing"] = init.facing
        head["initial_stats"] = _sorted_stats(init.stats)
        head["initial_inventory"] = {
            k: init.inventory_counts[k] for k in sorted(init.inventory_counts)
        }
    return head


def _step_dict(trace_family: str, step: StepRecord) -> dict:
    rec: dict = {
        "record": "step",
        "step_index": step.step_index,
        "action": step.action,
    }
    if step.reason is not None:
        rec["reason"] = step.reason
    rec["observation"] = step.observation
    rec["reward"] = step.reward
    rec["done"] = step.done
    if trace_family == "text":
        rec["location"] = step.location
        rec["inventory"] = list(step.inventory_list)
        rec["valid_actions"] = list(step.valid_actions)
        rec["score"] = step.score
        rec["moves"] = step.moves
    else:
        rec["position"] = list(step.position)
        rec["facing"] = step.facing
        rec["terrain_under"] = step.terrain_under
        rec["stats"] = _sorted_stats(step.stats)
        rec["inventory"] = {
            k: step.inventory_counts[k] for k in sorted(step.inventory_counts)
        }
        rec["achievements"] = sorted(step.achievements)
        rec["events"] = [list(ev) for ev in step.events]
    return rec


def serialize_trace(trace: EpisodeTrace) -> str:
    """Render a trace as canonical JSON Lines (header first, then steps)."""
    lines = [_dumps(_header_dict(trace))]
    for step in trace.steps:
        lines.append(_dumps(_step_dict(trace.family, step)))
    return "\n".join(lines) + "\n"


def serialize_sidecar(sidecar: BackendSidecar) -> str:
    """Render a sidecar as canonical JSON Lines (summary first, then deltas)."""
    head: dict = {
        "record": "sidecar",
        "game_id": sidecar.game_id,
        "family": sidecar.family,
        "env_seed": sidecar.env_seed,
        "run_id": sidecar.run_id,
    }
    if sidecar.view_radius is not None:
        head["view_radius"] = sidecar.view_radius
    if sidecar.terrain_vocab is not None:
        head["terrain_vocab"] = {
            str(k): sidecar.terrain_vocab[k] for k in sorted(sidecar.terrain_vocab)
        }
    if sidecar.base_grid is not None:
        head["base_grid"] = [list(row) for row in sidecar.base_grid]
    if sidecar.location_graph_hint is not None:
        hint = sidecar.location_graph_hint
        head["location_graph_hint"] = {
            "rooms": sorted(hint["rooms"]),
            "edges": [list(e) for e in sorted(tuple(e) for e in hint["edges"])],
        }
    lines = [_dumps(head)]
    if sidecar.step_edits is not None:
        for t in sorted(sidecar.step_edits):
            edits = sorted(tuple(e) for e in sidecar.step_edits[t])
            lines.append(
                _dumps({"record": "grid_delta", "step": t, "edits": [list(e) for e in edits]})
            )
    return "\n".join(lines) + "\n"


def _require(cond: bool, message: str, line: int) -> None:
    if not cond:
        raise TraceFormatError(message, line)


def _parse_header(rec: dict, line: int) -> tuple[str, str, int, str, StartState]:
    for key in ("game_id", "family", "env_seed", "run_id"):
        _require(key in rec, f"header missing field {key!r}", line)
    family = rec["family"]
    _require(family in FAMILIES, f"unknown family {family!r}", line)
    if family == "text":
        _require("initial_location" in rec, "text header missing field 'initial_location'", line)
        initial = StartState(
            location=rec["initial_location"],
            inventory_list=tuple(rec.get("initial_inventory", [])),
            score=rec.get("initial_score", 0),
        )
    else:
        for key in ("initial_position", "initial_stats", "initial_inventory"):
            _require(key in rec, f"grid header missing field {key!r}", line)
        initial = StartState(
            position=tuple(rec["initial_position"]),
            facing=rec.get("initial_facing"),
            stats=dict(rec["initial_stats"]),
            inventory_counts={k: int(v) for k, v in rec["initial_inventory"].items()},
        )
    return rec["game_id"], family, int(rec["env_seed"]), rec["run_id"], initial


def _parse_step(rec: dict, family: str, line: int) -> StepRecord:
    for key in ("step_index", "action", "observation", "reward", "done"):
        _require(key in rec, f"step missing field {key!r}", line)
    common = dict(
        step_index=int(rec["step_index"]),
        action=rec["action"],
        observation=rec["observation"],
        reward=rec["reward"],
        done=bool(rec["done"]),
        reason=rec.get("reason"),
    )
    if family == "text":
        for key in ("location", "inventory", "valid_actions", "score", "moves"):
            _require(key in rec, f"text step missing field {key!r}", line)
        return StepRecord(
            **common,
            location=rec["location"],
            inventory_list=tuple(rec["inventory"]),
            valid_actions=tuple(rec["valid_actions"]),
            score=int(rec["score"]),
            moves=int(rec["moves"]),
        )
    for key in (
        "position",
        "facing",
        "terrain_under",
        "stats",
        "inventory",
        "achievements",
        "events",
    ):
        _require(key in rec, f"grid step missing field {key!r}", line)
    events = []
    for ev in rec["events"]:
        _require(
            isinstance(ev, list) and len(ev) == 2,
            f"event must be a [kind, value] pair, got {ev!r}",
            line,
        )
        _require(ev[0] in EVENT_KINDS, f"unknown event kind {ev[0]!r}", line)
        events.append((ev[0], ev[1]))
    return StepRecord(
        **common,
        position=tuple(rec["position"]),
        facing=rec["facing"],
        terrain_under=int(rec["terrain_under"]),
        stats={k: int(v) for k, v in rec["stats"].items()},
        inventory_counts={k: int(v) for k, v in rec["inventory"].items()},
        achievements=tuple(sorted(rec["achievements"])),
        events=tuple(events),
    )


def parse_trace(stream: str | Iterable[str]) -> tuple[EpisodeTrace, BackendSidecar | None]:
    """Parse a record stream into a trace and, if present, its sidecar.

    ``stream`` is a string or iterable of lines. Trace records (header +
    steps) and sidecar records (sidecar + grid_delta) may share one stream;
    ordering between the two groups is free, but the header must precede its
    steps and the sidecar record must precede its deltas.
    """
    if isinstance(stream, str):
        lines: Iterable[str] = stream.splitlines()
    else:
        lines = stream

    header: tuple | None = None
    steps: list[StepRecord] = []
    sidecar_head: dict | None = None
    sidecar_line = 0
    deltas: dict[int, tuple[tuple[int, int, int], ...]] = {}
    saw_delta = False

    for line_no, raw in enumerate(lines, start=1):
        text = raw.strip()
        if not text:
            continue
        try:
            rec = json.loads(text)
        except json.JSONDecodeError as exc:
            raise TraceFormatError(f"invalid JSON ({exc.msg})", line_no) from None
        _require(isinstance(rec, dict), "record must be a JSON object", line_no)
        kind = rec.get("record")
        if kind == "header":
            _require(header is None, "duplicate header record", line_no)
            header = _parse_header(rec, line_no)
        elif kind == "step":
            _require(header is not None, "step record before header", line_no)
            steps.append(_parse_step(rec, header[1], line_no))
        elif kind == "sidecar":
            _require(sidecar_head is None, "duplicate sidecar record", line_no)
            sidecar_head, sidecar_line = rec, line_no
        elif kind == "grid_delta":
            _require(sidecar_head is not None, "grid_delta before sidecar record", line_no)
            for key in ("step", "edits"):
                _require(key in rec, f"grid_delta missing field {key!r}", line_no)
            edits = []
            for edit in rec["edits"]:
                _require(
                    isinstance(edit, list) and len(edit) == 3,
                    f"edit must be [row, col, terrain], got {edit!r}",
                    line_no,
                )
                edits.append((int(edit[0]), int(edit[1]), int(edit[2])))
            step = int(rec["step"])
            _require(step not in deltas, f"duplicate grid_delta for step {step}", line_no)
            deltas[step] = tuple(edits)
            saw_delta = True
        else:
            raise TraceFormatError(f"unknown record kind {kind!r}", line_no)

    _require(header is not None, "stream has no header record", 0)
    game_id, family, env_seed, run_id, initial = header
    trace = EpisodeTrace(
        game_id=game_id,
        family=family,
        env_seed=env_seed,
        run_id=run_id,
        initial=initial,
        steps=tuple(steps),
    )

    sidecar = None
    if sidecar_head is not None:
        vocab = sidecar_head.get("terrain_vocab")
        base = sidecar_head.get("base_grid")
        hint = sidecar_head.get("location_graph_hint")
        for key in ("game_id", "family", "env_seed", "run_id"):
            _require(key in sidecar_head, f"sidecar missing field {key!r}", sidecar_line)
        sidecar = BackendSidecar(
            family=sidecar_head["family"],
            game_id=sidecar_head["game_id"],
            env_seed=int(sidecar_head["env_seed"]),
            run_id=sidecar_head["run_id"],
            view_radius=sidecar_head.get("view_radius"),
            terrain_vocab={int(k): v for k, v in vocab.items()} if vocab else None,
            base_grid=tuple(tuple(int(v) for v in row) for row in base) if base else None,
            step_edits=deltas if saw_delta else None,
            location_graph_hint={
                "rooms": list(hint["rooms"]),
                "edges": [tuple(e) for e in hint["edges"]],
            }
            if hint
            else None,
        )
    return trace, sidecar


def load_episode(trace_path, sidecar_path=None) -> tuple[EpisodeTrace, BackendSidecar | None]:
    """Read a trace file and an optional sidecar file from disk."""
    with open(trace_path, "r", encoding="utf-8") as fh:
        text = fh.read()
    if sidecar_path is not None:
        with open(sidecar_path, "r", encoding="utf-8") as fh:
            text += fh.read()
    return parse_trace(text)


def save_episode(
    trace: EpisodeTrace,
    sidecar: BackendSidecar | None,
    trace_path,
    sidecar_path=None,
) -> None:
    """Write a trace (and optionally its sidecar) as canonical JSON Lines."""
    with open(trace_path, "w", encoding="utf-8") as fh:
        fh.write(serialize_trace(trace))
    if sidecar is not None and sidecar_path is not None:
        with open(sidecar_path, "w", encoding="utf-8") as fh:
            fh.write(serialize_sidecar(sidecar))


def truncate_episode(
    trace: EpisodeTrace, sidecar: BackendSidecar | None, max_steps: int
) -> tuple[EpisodeTrace, BackendSidecar | None]:
    """Drop every record after ``max_steps``, leaving earlier records intact.

    The new final step keeps its recorded ``done`` flag unchanged unless it
    was only terminal in the dropped suffix, so truncated prefixes of a
    finished episode remain honest open episodes.
    """
    if max_steps >= trace.length:
        return trace, sidecar
    steps = trace.steps[:max_steps]
    new_trace = replace(trace, steps=steps)
    new_sidecar = sidecar
    if sidecar is not None and sidecar.step_edits is not None:
        kept = {t: e for t, e in sidecar.step_edits.items() if t <= max_steps}
        new_sidecar = replace(sidecar, step_edits=kept)
    return new_trace, new_sidecar


def _validate_step_family(step: StepRecord, family: str, problems: list[str]) -> None:
    text_fields = ("location", "inventory_list", "valid_actions", "score", "moves")
    grid_fields = (
        "position",
        "facing",
        "terrain_under",
        "stats",
        "inventory_counts",
        "achievements",
        "events",
    )
    want, forbid = (text_fields, grid_fields) if family == "text" else (grid_fields, text_fields)
    for name in want:
        if getattr(step, name) is None:
            problems.append(f"step {step.step_index}: missing {family} field {name}")
    for name in forbid:
        if getattr(step, name) is not None:
            problems.append(f"step {step.step_index}: unexpected field {name} for family {family}")


def validate_trace(trace: EpisodeTrace, sidecar: BackendSidecar | None = None) -> list[str]:
    """Check structural invariants; return a list of problem descriptions.

    An empty list means the episode satisfies the format contract: known
    family, step indices contiguous from 1, ``done`` nowhere but the final
    record, family-consistent step fields, monotone cumulative achievements,
    and a sidecar (when given) that matches the trace identity with an
    in-bounds rectangular grid and edit steps within the episode.
    """
    problems: list[str] = []
    if trace.family not in FAMILIES:
        problems.append(f"unknown family {trace.family!r}")
        return problems

    for i, step in enumerate(trace.steps, start=1):
        if step.step_index != i:
            problems.append(f"step at position {i} has step_index {step.step_index}")
        if step.done and i != trace.length:
            problems.append(f"step {i}: done=True before the final record")
        _validate_step_family(step, trace.family, problems)

    if trace.family == "grid":
        if trace.initial.position is None or trace.initial.stats is None:
            problems.append("grid header missing initial position or stats")
        prev: frozenset[str] = frozenset()
        for step in trace.steps:
            if step.achievements is None:
                continue
            cur = frozenset(step.achievements)
            if not prev <= cur:
                problems.append(
                    f"step {step.step_index}: achievements lost {sorted(prev - cur)}"
                )
            prev = cur
        for step in trace.steps:
            if step.stats is not None and sorted(step.stats) != sorted(STAT_KEYS):
                problems.append(f"step {step.step_index}: stats keys {sorted(step.stats)}")

    if trace.family == "text":
        if trace.initial.location is None:
            problems.append("text header missing initial location")
        for step in trace.steps:
            if step.valid_actions is not None and step.action not in step.valid_actions:
                problems.append(
                    f"step {step.step_index}: action {step.action!r} not in valid_actions"
                )

    if sidecar is not None:
        ident = (sidecar.game_id, sidecar.family, sidecar.env_seed, sidecar.run_id)
        expect = (trace.game_id, trace.family, trace.env_seed, trace.run_id)
        if ident != expect:
            problems.append(f"sidecar identity {ident} does not match trace {expect}")
        if sidecar.family == "grid":
            if sidecar.base_grid is None:
                problems.append("grid sidecar missing base_grid")
            else:
                widths = {len(row) for row in sidecar.base_grid}
                if len(widths) > 1:
                    problems.append("base_grid rows have unequal widths")
                if sidecar.step_edits is not None:
                    rows = len(sidecar.base_grid)
                    cols = len(sidecar.base_grid[0]) if rows else 0
                    for t, edits in sorted(sidecar.step_edits.items()):
                        if not 1 <= t <= trace.length:
                            problems.append(f"grid_delta step {t} outside episode")
                        for r, c, _ in edits:
                            if not (0 <= r < rows and 0 <= c < cols):
                                problems.append(f"grid_delta step {t}: edit ({r},{c}) out of bounds")
            if sidecar.view_radius is None:
                problems.append("grid sidecar missing view_radius")
            if sidecar.terrain_vocab is None:
                problems.append("grid sidecar missing terrain_vocab")
    return problems
