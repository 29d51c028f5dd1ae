"""Question template catalog for survival grid episodes.

Step-state questions read the post-action record of the named step. All map
reasoning (navigation, nearest-terrain, terrain prediction, distance
extremes) runs against the dynamic grid at the end of the questioned scope,
which folds in every collect and placement the agent performed; per-step
visibility questions use the grid as it stood at each step.
"""

from __future__ import annotations

from traceqa.gamedata import CRAFT_COSTS
from traceqa.indices import pick_ordinal
from traceqa.spatial import (
    displacement_phrase,
    navigation_answer,
    nearest_cell_direction,
)
from traceqa.templates import Candidate, Template, join_list
from traceqa.trace import STAT_KEYS

OFFSETS = (1, 2, 3)
GRID_ORDINALS = ("first", "second", "third", "last")
WALK_LENGTHS = (1, 2, 3, 4)
STAT_THRESHOLDS = (3, 5, 8)
NOT_ANSWERABLE = "not answerable"


def _enum_action(ctx):
    return [
        Candidate({"step": t}, (t,), ctx.index.trace.step(t).action)
        for t in ctx.anchors
    ]


def _enum_reason(ctx):
    out = []
    for t in ctx.anchors:
        reason = ctx.index.trace.step(t).reason
        if reason:
            out.append(Candidate({"step": t}, (t,), reason))
    return out


def _enum_stat(ctx):
    out = []
    for t in ctx.anchors:
        stats = ctx.index.stats_at(t)
        for stat in STAT_KEYS:
            out.append(Candidate({"stat": stat, "step": t}, (t,), stats[stat]))
    return out


def _enum_terrain(ctx):
    return [
        Candidate(
            {"step": t}, (t,), ctx.terrain_name(ctx.index.trace.step(t).terrain_under)
        )
        for t in ctx.anchors
    ]


def _present_resources(ctx):
    present = set()
    for t in range(1, ctx.T + 1):
        for res, count in ctx.index.inventory_counts_at(t).items():
            if count > 0:
                present.add(res)
    return sorted(present)


def _enum_inventory(ctx):
    out = []
    for res in _present_resources(ctx):
        for t in ctx.anchors:
            out.append(
                Candidate(
                    {"resource": res, "step": t},
                    (t,),
                    ctx.index.inventory_count_at(t, res),
                )
            )
    return out


def _ordinal_candidates(occurrences_of, values, slot):
    out = []
    for value in values:
        occ = occurrences_of(value)
        if not occ:
            continue
        for ordinal in GRID_ORDINALS:
            step = pick_ordinal(occ, ordinal)
            if step is not None:
                out.append(
                    Candidate({"ordinal": ordinal, slot: value}, (step,), step, "step_number")
                )
    return out


def _enum_occ_action(ctx):
    return _ordinal_candidates(ctx.index.action_steps, ctx.index.distinct_actions(), "action")


def _enum_occ_keyword(ctx):
    return _ordinal_candidates(
        lambda kw: ctx.index.keyword_steps("reason", kw),
        ctx.word_list("keywords"),
        "keyword",
    )


def _enum_occ_terrain(ctx):
    stood = sorted(
        {ctx.terrain_name(int(v)) for v in ctx.index.event_values("terrain_stand")}
    )
    return _ordinal_candidates(
        lambda name: ctx.index.occurrences("terrain_stand", str(ctx.terrain_id(name))),
        stood,
        "terrain",
    )


def _offset_candidates(ctx, occurrences_of, values, slot):
    out = []
    for value in values:
        occ = occurrences_of(value)
        if not occ:
            continue
        for ordinal in ("first", "last"):
            anchor = pick_ordinal(occ, ordinal)
            if anchor is None:
                continue
            for direction in ("before", "after"):
                for offset in OFFSETS:
                    target = anchor - offset if direction == "before" else anchor + offset
                    if not 1 <= target <= ctx.T:
                        continue
                    out.append(
                        Candidate(
                            {
                                "offset": offset,
                                "direction": direction,
                                "ordinal": ordinal,
                                slot: value,
                            },
                            (anchor, target) if target > anchor else (target, anchor),
                            ctx.index.trace.step(target).action,
                        )
                    )
    return out


def _enum_b_action(ctx):
    return _offset_candidates(
        ctx, ctx.index.action_steps, ctx.index.distinct_actions(), "action"
    )


def _enum_b_keyword(ctx):
    return _offset_candidates(
        ctx,
        lambda kw: ctx.index.keyword_steps("reason", kw),
        ctx.word_list("keywords"),
        "keyword",
    )


def _enum_b_terrain(ctx):
    stood = sorted(
        {ctx.terrain_name(int(v)) for v in ctx.index.event_values("terrain_stand")}
    )
    return _offset_candidates(
        ctx,
        lambda name: ctx.index.occurrences("terrain_stand", str(ctx.terrain_id(name))),
        stood,
        "terrain",
    )


def _enum_keyword_count(ctx):
    out = []
    for lo, hi in ctx.windows:
        added = 0
        for keyword in ctx.word_list("keywords"):
            steps = [t for t in ctx.index.keyword_steps("reason", keyword) if lo <= t <= hi]
            if steps:
                out.append(
                    Candidate({"L": lo, "R": hi, "keyword": keyword}, (lo, hi), len(steps))
                )
                added += 1
                if added >= 6:
                    break
    return out


def _enum_most_move(ctx):
    out = []
    for lo, hi in ctx.windows:
        counts: dict[str, int] = {}
        for direction in ("up", "down", "left", "right"):
            n = sum(1 for t in ctx.index.occurrences("move_attempt", direction) if lo <= t <= hi)
            if n:
                counts[direction] = n
        best = None
        tied = False
        for direction in sorted(counts):
            if best is None or counts[direction] > counts[best]:
                best, tied = direction, False
            elif counts[direction] == counts[best]:
                tied = True
        if best is not None and not tied:
            out.append(Candidate({"L": lo, "R": hi}, (lo, hi), best))
    return out


def _enum_longest_run(ctx):
    out = []
    for lo, hi in ctx.windows:
        runs: dict[str, int] = {}
        current = None
        length = 0
        for t in range(lo, hi + 1):
            action = ctx.index.trace.step(t).action
            if action == current:
                length += 1
            else:
                current, length = action, 1
            runs[action] = max(runs.get(action, 0), length)
        for action in sorted(runs)[:6]:
            out.append(
                Candidate({"L": lo, "R": hi, "action": action}, (lo, hi), runs[action])
            )
    return out


def _enum_collect_res(ctx):
    out = []
    for lo, hi in ctx.windows:
        for res in ctx.index.event_values("collect_success"):
            n = sum(1 for t in ctx.index.occurrences("collect_success", res) if lo <= t <= hi)
            if n >= 1:
                out.append(
                    Candidate({"L": lo, "R": hi, "resource": res}, (lo, hi), n)
                )
    return out


def _enum_resource_peak(ctx):
    out = []
    for res in _present_resources(ctx):
        best_step = None
        best = 0
        for t in range(1, ctx.T + 1):
            count = ctx.index.inventory_count_at(t, res)
            if count > best:
                best, best_step = count, t
        if best_step is not None:
            out.append(
                Candidate({"resource": res}, (best_step,), best_step, "step_number")
            )
    return out


def _enum_resource_change(ctx):
    out = []
    for lo, hi in ctx.windows:
        for res in _present_resources(ctx):
            change = ctx.index.inventory_count_at(hi, res) - ctx.index.inventory_count_at(
                lo - 1, res
            )
            out.append(Candidate({"L": lo, "R": hi, "resource": res}, (lo, hi), change))
    return out


def _enum_visible_count(ctx):
    out = []
    for lo, hi in ctx.windows:
        for tid in ctx.known_terrain_ids:
            n = sum(1 for t in range(lo, hi + 1) if tid in ctx.visible_ids[t])
            if n >= 1:
                out.append(
                    Candidate(
                        {"L": lo, "R": hi, "terrain": ctx.terrain_name(tid)}, (lo, hi), n
                    )
                )
    return out


def _enum_adjacent_count(ctx):
    out = []
    for lo, hi in ctx.windows:
        for tid in ctx.known_terrain_ids:
            n = sum(1 for t in range(lo, hi + 1) if tid in ctx.adjacent_ids[t])
            if n >= 1:
                out.append(
                    Candidate(
                        {"L": lo, "R": hi, "terrain": ctx.terrain_name(tid)}, (lo, hi), n
                    )
                )
    return out


def _enum_distinct_trees(ctx):
    out = []
    for lo, hi in ctx.windows:
        seen: set = set()
        for t in range(lo, hi + 1):
            seen |= ctx.seen_tree_cells[t]
        if seen:
            out.append(Candidate({"L": lo, "R": hi}, (lo, hi), len(seen)))
    return out


def _enum_displacement(ctx):
    out = []
    for lo, hi in ctx.windows:
        phrase = displacement_phrase(ctx.index.position_at(lo - 1), ctx.index.position_at(hi))
        out.append(Candidate({"L": lo, "R": hi}, (lo, hi), phrase))
    return out


def _enum_path_length(ctx):
    out = []
    for lo, hi in ctx.windows:
        attempts = sum(
            1 for t in ctx.index.occurrences("move_attempt") if lo <= t <= hi
        )
        if attempts == 0:
            continue
        moved = sum(1 for t in ctx.index.occurrences("move_success") if lo <= t <= hi)
        out.append(Candidate({"L": lo, "R": hi}, (lo, hi), moved))
    return out


def _enum_predict_terrain(ctx):
    deltas = {"up": (-1, 0), "down": (1, 0), "left": (0, -1), "right": (0, 1)}
    rows = len(ctx.final_grid)
    cols = len(ctx.final_grid[0])
    out = []
    for t in ctx.anchors:
        r0, c0 = ctx.index.position_at(t)
        for direction in ("up", "down", "left", "right"):
            dr, dc = deltas[direction]
            for k in WALK_LENGTHS:
                r, c = r0 + dr * k, c0 + dc * k
                if not (0 <= r < rows and 0 <= c < cols):
                    continue
                out.append(
                    Candidate(
                        {"step": t, "direction": direction, "K": k},
                        (t,),
                        ctx.terrain_name(ctx.final_grid[r][c]),
                    )
                )
    return out


def _grid_terrains_present(ctx):
    present = set()
    for row in ctx.final_grid:
        present.update(row)
    return sorted(present)


def _enum_nearest_dir(ctx):
    out = []
    for t in ctx.anchors:
        pos = ctx.index.position_at(t)
        for tid in _grid_terrains_present(ctx):
            direction = nearest_cell_direction(ctx.final_grid, pos, tid)
            if direction is not None:
                out.append(
                    Candidate(
                        {"step": t, "terrain": ctx.terrain_name(tid)}, (t,), direction
                    )
                )
    return out


def _enum_nav_to_target(ctx):
    out = []
    for t in ctx.anchors:
        pos = ctx.index.position_at(t)
        for tid in _grid_terrains_present(ctx):
            distance, routes = navigation_answer(
                ctx.final_grid, pos, {tid}, ctx.passable_ids
            )
            name = ctx.terrain_name(tid)
            if distance is None:
                out.append(
                    Candidate({"step": t, "terrain": name}, (t,), NOT_ANSWERABLE, "string")
                )
            elif distance == 0:
                out.append(Candidate({"step": t, "terrain": name}, (t,), "0", "string"))
            else:
                out.append(Candidate({"step": t, "terrain": name}, (t,), routes, "list"))
    return out


def _distance_extreme(ctx, take_max):
    out = []
    for lo, hi in ctx.windows:
        for tid in _grid_terrains_present(ctx):
            field = ctx.distance_field(tid)
            ds = []
            ok = True
            for t in range(lo, hi + 1):
                d = field.get(ctx.index.position_at(t))
                if d is None:
                    ok = False
                    break
                ds.append(d)
            if not ok or not ds:
                continue
            target = max(ds) if take_max else min(ds)
            step = lo + ds.index(target)
            out.append(
                Candidate(
                    {"L": lo, "R": hi, "terrain": ctx.terrain_name(tid)},
                    (lo, hi),
                    step,
                    "step_number",
                )
            )
    return out


def _enum_min_dist(ctx):
    return _distance_extreme(ctx, take_max=False)


def _enum_max_dist(ctx):
    return _distance_extreme(ctx, take_max=True)


def _event_catalog(ctx):
    """Deterministic (phrase, step) descriptors for temporal questions."""
    events = []
    for res in ctx.index.event_values("collect_success"):
        step = ctx.index.occurrences("collect_success", res)[0]
        events.append((f"you first collected {res}", step))
    for obj in ctx.index.event_values("place"):
        step = ctx.index.occurrences("place", obj)[0]
        events.append((f"you first placed a {obj}", step))
    for obj in ctx.index.event_values("craft"):
        step = ctx.index.occurrences("craft", obj)[0]
        events.append((f"you first crafted a {obj}", step))
    attacks = ctx.index.occurrences("attack_received")
    if attacks:
        events.append(("you were first attacked", attacks[0]))
    for stat in STAT_KEYS:
        for k in STAT_THRESHOLDS:
            prev = ctx.index.stats_at(0).get(stat, 0)
            for t in range(1, ctx.T + 1):
                value = ctx.index.stats_at(t)[stat]
                if value < k <= prev:
                    events.append((f"your {stat} first dropped below {k}", t))
                    break
                prev = value
    return events


def _enum_event_order(ctx):
    events = _event_catalog(ctx)
    out = []
    for phrase_a, step_a in events:
        for phrase_b, step_b in events:
            if phrase_a >= phrase_b or step_a == step_b:
                continue
            out.append(
                Candidate(
                    {"eventA": phrase_a, "eventB": phrase_b},
                    tuple(sorted((step_a, step_b))),
                    "yes" if step_a < step_b else "no",
                    "yes_no",
                )
            )
            if len(out) >= 60:
                return out
    return out


def _enum_event_interval(ctx):
    events = _event_catalog(ctx)
    out = []
    for phrase_a, step_a in events:
        for phrase_b, step_b in events:
            if phrase_a == phrase_b or step_b <= step_a:
                continue
            out.append(
                Candidate(
                    {"eventA": phrase_a, "eventB": phrase_b},
                    (step_a, step_b),
                    step_b - step_a,
                )
            )
            if len(out) >= 60:
                return out
    return out


def _enum_state_after_event(ctx):
    events = _event_catalog(ctx)
    out = []
    for phrase, step in events:
        stats = ctx.index.stats_at(step)
        for stat in STAT_KEYS:
            out.append(
                Candidate({"event": phrase, "stat": stat}, (step,), stats[stat])
            )
    return out


def _enum_craft_feasibility(ctx):
    out = []
    for t in ctx.anchors:
        counts = ctx.index.inventory_counts_at(t)
        for craft in sorted(CRAFT_COSTS):
            enough = all(counts.get(res, 0) >= n for res, n in CRAFT_COSTS[craft].items())
            out.append(
                Candidate(
                    {"step": t, "craft": craft}, (t,), "yes" if enough else "no", "yes_no"
                )
            )
    return out


def _enum_event_loc(ctx):
    out = []
    for obj in ctx.index.event_values("place"):
        steps = ctx.index.occurrences("place", obj)
        out.append(
            Candidate({"event": f"place a {obj}"}, tuple(steps), [join_list(steps)], "list")
        )
    for obj in ctx.index.event_values("craft"):
        steps = ctx.index.occurrences("craft", obj)
        out.append(
            Candidate({"event": f"craft a {obj}"}, tuple(steps), [join_list(steps)], "list")
        )
    return out


def _enum_attack_count(ctx):
    attacks = ctx.index.occurrences("attack_received")
    if not attacks:
        return []
    return [Candidate({}, (attacks[0], attacks[-1]), len(attacks))]


def _enum_death_reason(ctx):
    deaths = ctx.index.occurrences("death")
    if not deaths:
        return []
    cause = [v for k, v in ctx.index.trace.step(deaths[0]).events if k == "death"][0]
    return [Candidate({}, (deaths[0],), cause)]


def _enum_first_attack_step(ctx):
    attacks = ctx.index.occurrences("attack_received")
    if not attacks:
        return []
    return [Candidate({}, (attacks[0],), attacks[0], "step_number")]


def _enum_last_attack_step(ctx):
    attacks = ctx.index.occurrences("attack_received")
    if not attacks:
        return []
    return [Candidate({}, (attacks[-1],), attacks[-1], "step_number")]


def _enum_inventory_contents(ctx):
    out = []
    for t in ctx.anchors:
        carried = sorted(
            res for res, count in ctx.index.inventory_counts_at(t).items() if count > 0
        )
        if carried:
            out.append(Candidate({"step": t}, (t,), [join_list(carried)], "list"))
    return out


def _enum_adv_occ_action(ctx):
    from traceqa.gamedata import ACTIONS

    return [
        Candidate({"ordinal": "first", "action": action}, (), None)
        for action in sorted(ACTIONS)
        if not ctx.index.action_steps(action)
        and not ctx.index.mentioned_in_episode(action)
    ]


def _enum_adv_occ_keyword(ctx):
    return [
        Candidate({"ordinal": "first", "keyword": kw}, (), None)
        for kw in ctx.word_list("keywords")
        if not ctx.index.mentioned_in_episode(kw)
    ]


def _enum_adv_occ_terrain(ctx):
    out = []
    for name in ctx.word_list("terrains"):
        tid = ctx.terrain_id(name)
        if tid is None:
            continue
        if not ctx.index.occurrences("terrain_stand", str(tid)) and not (
            ctx.index.mentioned_in_episode(name)
        ):
            out.append(Candidate({"ordinal": "first", "terrain": name}, (), None))
    return out


def _enum_adv_resource_peak(ctx):
    present = set(_present_resources(ctx))
    return [
        Candidate({"resource": res}, (), None)
        for res in ctx.word_list("resources")
        if res not in present and not ctx.index.mentioned_in_episode(res)
    ]


def _enum_adv_nav_to_target(ctx):
    present = {ctx.terrain_name(tid) for tid in _grid_terrains_present(ctx)}
    out = []
    for name in ctx.word_list("terrains"):
        if name in present or ctx.terrain_id(name) is None:
            continue
        if ctx.index.mentioned_in_episode(name):
            continue
        out.append(Candidate({"step": ctx.T, "terrain": name}, (), None))
    return out


def build_catalog() -> tuple[Template, ...]:
    G = "grid"
    return (
        Template("A_action", G, "What is the action at step {step}?", "string", _enum_action),
        Template("A_reason", G, "What was the reasoning at step {step}?", "string", _enum_reason),
        Template("A_stat", G, "What was your {stat} value at step {step}?", "integer", _enum_stat),
        Template("A_terrain", G, "What terrain was under you at step {step}?", "string", _enum_terrain),
        Template("A_inventory", G, "How many {resource} did you have at step {step}?", "integer", _enum_inventory),
        Template("A_occ_action", G, "Which step is the {ordinal} step whose action is '{action}'?", "step_number", _enum_occ_action, scope_sensitive=True),
        Template("A_occ_keyword", G, "Which step is the {ordinal} step whose reason mentions '{keyword}'?", "step_number", _enum_occ_keyword, scope_sensitive=True),
        Template("A_occ_terrain", G, "Which step is the {ordinal} step which you stood on {terrain} terrain?", "step_number", _enum_occ_terrain, scope_sensitive=True),
        Template("B_action", G, "What is the action {offset} step(s) {direction} the {ordinal} step whose action is '{action}'?", "string", _enum_b_action, scope_sensitive=True),
        Template("B_keyword", G, "What is the action {offset} step(s) {direction} the {ordinal} step whose reason mentions '{keyword}'?", "string", _enum_b_keyword, scope_sensitive=True),
        Template("B_terrain", G, "What is the action {offset} step(s) {direction} the {ordinal} step which you stood on {terrain} terrain?", "string", _enum_b_terrain, scope_sensitive=True),
        Template("C_keyword_count", G, "From steps {L} to {R}, how many steps have reasons that mention '{keyword}'?", "integer", _enum_keyword_count),
        Template("C_most_move", G, "From steps {L} to {R}, what was the most common movement direction?", "string", _enum_most_move),
        Template("C_longest_run", G, "From steps {L} to {R}, what was the longest consecutive run of {action}?", "integer", _enum_longest_run),
        Template("C_collect_res", G, "From steps {L} to {R}, how many times did you successfully collect {resource}?", "integer", _enum_collect_res),
        Template("C_resource_peak", G, "After completing which step does {resource} reach its maximum quantity (at least 1)?", "step_number", _enum_resource_peak, scope_sensitive=True),
        Template("C_resource_change", G, "From steps {L} to {R}, what was the change in {resource} quantity?", "integer", _enum_resource_change),
        Template("C_visible_count", G, "From steps {L} to {R}, in how many steps could you see any {terrain} in the frame?", "integer", _enum_visible_count),
        Template("C_adjacent_count", G, "From steps {L} to {R}, in how many steps were you adjacent to any {terrain}?", "integer", _enum_adjacent_count),
        Template("C_distinct_trees", G, "From steps {L} to {R}, how many distinct trees did you see in total?", "integer", _enum_distinct_trees),
        Template("D_displacement", G, "From steps {L} to {R}, what was the total displacement of you? Answer in 'X step(s) left/right and Y step(s) up/down'.", "string", _enum_displacement),
        Template("D_path_length", G, "From steps {L} to {R}, how many movement steps did you successfully take?", "integer", _enum_path_length),
        Template("D_predict_terrain", G, "At step {step}, if you walked {direction} {K} step(s), what terrain would be underfoot?", "string", _enum_predict_terrain),
        Template("D_nearest_dir", G, "At step {step}, in which direction is the nearest {terrain} relative to you?", "string", _enum_nearest_dir),
        Template("D_nav_to_target", G, "At step {step}, how should you move to reach the nearest {terrain}? Answer in displacement format (or '0' if already on target).", "string", _enum_nav_to_target),
        Template("D_min_dist", G, "From steps {L} to {R}, at which step were you closest to the nearest {terrain}? (If ties, answer the first.)", "step_number", _enum_min_dist),
        Template("D_max_dist", G, "From steps {L} to {R}, at which step were you furthest from the nearest {terrain}? (If ties, answer the first.)", "step_number", _enum_max_dist),
        Template("E_event_order", G, "Did {eventA} happen before {eventB}? Answer in 'yes' or 'no'.", "yes_no", _enum_event_order, scope_sensitive=True),
        Template("E_event_interval", G, "After {eventA}, after how many steps did {eventB} occur?", "integer", _enum_event_interval, scope_sensitive=True),
        Template("E_state_after_event", G, "Immediately after {event}, what was your {stat} value?", "integer", _enum_state_after_event, scope_sensitive=True),
        Template("F_craft_feasibility", G, "At step {step}, are the collected resources enough to craft {craft}? Answer in 'yes' or 'no'.", "yes_no", _enum_craft_feasibility),
        Template("F_event_loc", G, "At which step(s) did you {event}? (Answer as a list of step numbers.)", "list", _enum_event_loc, scope_sensitive=True),
        Template("F_attack_count", G, "How many times were you attacked?", "integer", _enum_attack_count, scope_sensitive=True),
        Template("F_death_reason", G, "What was the cause of your death at the end of the episode?", "string", _enum_death_reason, scope_sensitive=True),
        Template("F_first_attack_step", G, "At which step were you attacked for the first time?", "step_number", _enum_first_attack_step, scope_sensitive=True),
        Template("F_last_attack_step", G, "At which step were you attacked for the last time?", "step_number", _enum_last_attack_step, scope_sensitive=True),
        Template("F_inventory_contents", G, "At step {step}, what are all the items you carry?", "list", _enum_inventory_contents),
        Template("ADV_A_occ_action", G, "Which step is the {ordinal} step whose action is '{action}'?", "string", _enum_adv_occ_action, scope_sensitive=True),
        Template("ADV_A_occ_keyword", G, "Which step is the {ordinal} step whose reason mentions '{keyword}'?", "string", _enum_adv_occ_keyword, scope_sensitive=True),
        Template("ADV_A_occ_terrain", G, "Which step is the {ordinal} step which you stood on {terrain} terrain?", "string", _enum_adv_occ_terrain, scope_sensitive=True),
        Template("ADV_C_resource_peak", G, "After completing which step does {resource} reach its maximum quantity (at least 1)?", "string", _enum_adv_resource_peak, scope_sensitive=True),
        Template("ADV_D_nav_to_target", G, "At step {step}, how should you move to reach the nearest {terrain}? Answer in displacement format (or '0' if already on target).", "string", _enum_adv_nav_to_target, scope_sensitive=True),
    )
