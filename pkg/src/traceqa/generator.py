"""Question suite generation: deterministic sampling over template catalogs.

The pipeline truncates the episode to the questioned scope, builds the index
and family-specific caches once, then for every template enumerates valid
candidates, samples a bounded number with a per-template random stream
seeded from the question seed, renders the surface form, and validates the
instance. Identical inputs produce byte-identical QA files; a horizon of N
produces exactly the suite that the episode's N-step prefix produces,
because generation never reads past the truncation.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field

from traceqa import templates as template_base
from traceqa.indices import EpisodeIndex
from traceqa.spatial import (
    COLLECT_CONVERSIONS,
    PLACE_RESULTS,
    build_room_graph,
    count_adjacent,
    distance_field,
    faced_cell,
    terrain_ids_by_name,
    traversable_ids,
    visible_window,
)
from traceqa.templates import NOT_ANSWERABLE, Template, grid as grid_templates
from traceqa.templates import text as text_templates
from traceqa.trace import BackendSidecar, EpisodeTrace, truncate_episode
from traceqa.vocab import word_list

ANSWER_TYPES = ("string", "integer", "float", "list", "step_number", "yes_no")


class GenerationError(ValueError):
    """Raised when an instantiated question violates the suite contract."""


@dataclass(frozen=True)
class GenerationConfig:
    """Knobs that define a generation run; defaults match the benchmark."""

    question_seed: int = 42
    max_per_type: int = 2
    horizon: int = -1
    paraphrase: bool = False
    paraphrase_rate: float = 1.0


class GenContext:
    """Per-episode caches shared by every template enumerator."""

    def __init__(self, trace: EpisodeTrace, sidecar: BackendSidecar | None):
        self.index = EpisodeIndex(trace, sidecar)
        self.family = trace.family
        self.T = trace.length
        self.anchors = template_base.step_lattice(self.T)
        self.windows = template_base.window_lattice(self.T)
        if self.family == "text":
            self.graph = build_room_graph(trace)
        else:
            self._build_grid_caches(trace, sidecar)

    def word_list(self, category: str) -> tuple[str, ...]:
        return word_list(self.family, category)

    def terrain_name(self, terrain_id: int) -> str:
        return self._vocab[terrain_id]

    def terrain_id(self, name: str) -> int | None:
        return self._by_name.get(name)

    def distance_field(self, terrain_id: int) -> dict:
        if terrain_id not in self._fields:
            self._fields[terrain_id] = distance_field(
                self.final_grid, {terrain_id}, self.passable_ids
            )
        return self._fields[terrain_id]

    def _build_grid_caches(self, trace: EpisodeTrace, sidecar: BackendSidecar) -> None:
        self._vocab = dict(sidecar.terrain_vocab)
        self._by_name = terrain_ids_by_name(self._vocab)
        self.known_terrain_ids = sorted(self._vocab)
        self.passable_ids = traversable_ids(self._vocab)
        self.view_radius = sidecar.view_radius
        self._fields: dict[int, dict] = {}

        grid = [list(row) for row in sidecar.base_grid]
        rows, cols = len(grid), len(grid[0])
        # Index 0 is a placeholder so these line up with 1-based steps.
        self.visible_ids: list[frozenset[int]] = [frozenset()]
        self.adjacent_ids: list[frozenset[int]] = [frozenset()]
        self.seen_tree_cells: list[frozenset] = [frozenset()]
        tree_id = self._by_name.get("tree")
        prev_counts = dict(trace.initial.inventory_counts)
        for step in trace.steps:
            t = step.step_index
            if sidecar.step_edits is not None:
                for r, c, value in sidecar.step_edits.get(t, ()):
                    grid[r][c] = value
            else:
                for r, c, value in self._implied_edits(step, prev_counts, rows, cols):
                    grid[r][c] = value
            prev_counts = dict(step.inventory_counts)
            pos = step.position
            r_lo, r_hi, c_lo, c_hi = visible_window(pos, self.view_radius, rows, cols)
            seen = set()
            trees = set()
            for r in range(r_lo, r_hi + 1):
                for c in range(c_lo, c_hi + 1):
                    seen.add(grid[r][c])
                    if grid[r][c] == tree_id:
                        trees.add((r, c))
            self.visible_ids.append(frozenset(seen))
            self.seen_tree_cells.append(frozenset(trees))
            adjacent = frozenset(
                tid
                for tid in seen
                if count_adjacent(grid, pos, tid) > 0
            )
            self.adjacent_ids.append(adjacent)
        self.final_grid = grid

    def _implied_edits(self, step, prev_counts, rows, cols):
        new_terrain = None
        counts = step.inventory_counts
        if step.action == "DO":
            for resource, result in COLLECT_CONVERSIONS.items():
                if counts.get(resource, 0) > prev_counts.get(resource, 0):
                    new_terrain = result
                    break
        elif step.action in PLACE_RESULTS:
            cost_resource, result = PLACE_RESULTS[step.action]
            if counts.get(cost_resource, 0) < prev_counts.get(cost_resource, 0):
                new_terrain = result
        if new_terrain is None:
            return ()
        r, c = faced_cell(step.position, step.facing)
        if not (0 <= r < rows and 0 <= c < cols):
            return ()
        return ((r, c, self._by_name[new_terrain]),)


def catalog_for(family: str) -> tuple[Template, ...]:
    if family == "text":
        return text_templates.build_catalog()
    return grid_templates.build_catalog()


def _render_question(template: Template, bindings: dict, horizon: int) -> str:
    question = template.surface.format(**bindings)
    if horizon != -1 and template.scope_sensitive:
        question = f"From step 1 to {horizon}, " + question[0].lower() + question[1:]
    return question


def _instance(template: Template, cand, ctx: GenContext, horizon: int, seq: int, run_id: str) -> dict:
    adversarial = template.template_id.startswith(template_base.ADVERSARIAL_PREFIX)
    ground_truth = NOT_ANSWERABLE if adversarial else cand.ground_truth
    answer_type = cand.answer_type or template.answer_type
    if adversarial:
        answer_type = "string"
    return {
        "qa_id": f"{run_id}/{template.template_id}/{seq}",
        "ability": template.ability,
        "template_id": template.template_id,
        "question": _render_question(template, cand.bindings, horizon),
        "answer_type": answer_type,
        "ground_truth": ground_truth,
        "metadata": {
            "evidence_steps": sorted(cand.evidence),
            "value_bindings": {k: cand.bindings[k] for k in sorted(cand.bindings)},
            "horizon": horizon,
            "adversarial": adversarial,
            "source": "programmatic",
            "difficulty": None,
        },
    }


def validate_instance(instance: dict, scope_end: int) -> None:
    """Reject malformed instances; generation bugs fail loudly, not silently."""
    if not instance["question"].strip():
        raise GenerationError(f"{instance['qa_id']}: empty question")
    if "{" in instance["question"] or "}" in instance["question"]:
        raise GenerationError(f"{instance['qa_id']}: unresolved slot in question")
    answer_type = instance["answer_type"]
    if answer_type not in ANSWER_TYPES:
        raise GenerationError(f"{instance['qa_id']}: unknown answer type {answer_type!r}")
    gt = instance["ground_truth"]
    meta = instance["metadata"]
    for step in meta["evidence_steps"]:
        if not 1 <= step <= scope_end:
            raise GenerationError(
                f"{instance['qa_id']}: evidence step {step} outside scope 1..{scope_end}"
            )
    if meta["adversarial"]:
        if gt != NOT_ANSWERABLE:
            raise GenerationError(f"{instance['qa_id']}: adversarial ground truth {gt!r}")
        return
    if not meta["evidence_steps"]:
        raise GenerationError(f"{instance['qa_id']}: answerable question without evidence")
    if answer_type in ("integer", "step_number") and not isinstance(gt, int):
        raise GenerationError(f"{instance['qa_id']}: ground truth {gt!r} is not an integer")
    if answer_type == "step_number" and not 1 <= gt <= scope_end:
        raise GenerationError(f"{instance['qa_id']}: step answer {gt} outside scope")
    if answer_type == "yes_no" and gt not in ("yes", "no"):
        raise GenerationError(f"{instance['qa_id']}: yes/no ground truth {gt!r}")
    if answer_type == "list" and (not isinstance(gt, list) or not gt):
        raise GenerationError(f"{instance['qa_id']}: list ground truth {gt!r}")
    if answer_type == "string" and not isinstance(gt, str):
        raise GenerationError(f"{instance['qa_id']}: string ground truth {gt!r}")
    if answer_type == "float" and not isinstance(gt, (int, float)):
        raise GenerationError(f"{instance['qa_id']}: float ground truth {gt!r}")


def generate_suite(
    trace: EpisodeTrace,
    sidecar: BackendSidecar | None,
    config: GenerationConfig = GenerationConfig(),
) -> list[dict]:
    """Build the full question suite for one episode.

    Deterministic in (trace, sidecar, config). With a horizon N >= 0 the
    episode is truncated to its first N steps before any enumeration, and
    scope-sensitive questions carry an explicit "From step 1 to N" phrase.
    """
    horizon = config.horizon
    scope_end = trace.length if horizon == -1 else min(trace.length, horizon)
    trace_eff, sidecar_eff = truncate_episode(trace, sidecar, scope_end)
    ctx = GenContext(trace_eff, sidecar_eff)
    suite: list[dict] = []
    for template in catalog_for(trace.family):
        candidates = template.enumerate(ctx)
        if not candidates:
            continue
        rng = random.Random(f"{config.question_seed}:{template.template_id}")
        k = min(config.max_per_type, len(candidates))
        chosen = rng.sample(candidates, k)
        for seq, cand in enumerate(chosen, start=1):
            instance = _instance(template, cand, ctx, horizon, seq, trace_eff.run_id)
            validate_instance(instance, scope_end)
            suite.append(instance)
    if config.paraphrase:
        from traceqa.paraphrase import apply_paraphrase

        suite = apply_paraphrase(suite, config)
    return suite


# -- QA and prediction files --------------------------------------------------


def serialize_qa(suite: list[dict]) -> str:
    """QA suite as canonical JSON Lines."""
    lines = []
    for inst in suite:
        meta = inst["metadata"]
        record = {
            "qa_id": inst["qa_id"],
            "ability": inst["ability"],
            "template_id": inst["template_id"],
            "question": inst["question"],
            "answer_type": inst["answer_type"],
            "ground_truth": inst["ground_truth"],
            "metadata": {
                "evidence_steps": meta["evidence_steps"],
                "value_bindings": meta["value_bindings"],
                "horizon": meta["horizon"],
                "adversarial": meta["adversarial"],
                "source": meta["source"],
                "difficulty": meta["difficulty"],
            },
        }
        lines.append(json.dumps(record, separators=(",", ":")))
    return "\n".join(lines) + ("\n" if lines else "")


def parse_qa(stream: str) -> list[dict]:
    return [json.loads(line) for line in stream.splitlines() if line.strip()]


def serialize_predictions(predictions: list[dict]) -> str:
    lines = []
    for pred in predictions:
        record = {"qa_id": pred["qa_id"], "answer": pred["answer"]}
        if pred.get("explanation") is not None:
            record["explanation"] = pred["explanation"]
        lines.append(json.dumps(record, separators=(",", ":")))
    return "\n".join(lines) + ("\n" if lines else "")


def parse_predictions(stream: str) -> list[dict]:
    return [json.loads(line) for line in stream.splitlines() if line.strip()]
