"""Question template catalog for text-adventure episodes.

Conventions used throughout: locations asked "before performing the action"
read the pre-action room (the post-state of the previous step); plain
"location" slots read the post-action room; observations are what the agent
saw when choosing that step's action; cumulative reward is the post-action
score. Room-graph questions use only transitions the agent actually walked.
"""

from __future__ import annotations

from itertools import combinations

from traceqa.spatial import follow_moves, room_distances
from traceqa.templates import (
    Candidate,
    Template,
    first_sentence,
    join_list,
    ordinal_phrase,
    unique_max,
)
from traceqa.indices import pick_ordinal

GAIN_DELTAS = (1, 2, 3, 5)
REACH_LIMITS = (1, 2, 3)


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
            out.append(Candidate({"step": t}, (t,), first_sentence(reason)))
    return out


def _enum_location(ctx):
    return [
        Candidate({"step": t}, (t,), ctx.index.location_at(t - 1)) for t in ctx.anchors
    ]


def _enum_obs_before(ctx):
    out = []
    for t in ctx.anchors:
        obs = ctx.index.trace.step(t).observation
        if obs.strip():
            out.append(Candidate({"step": t}, (t,), obs))
    return out


def _enum_obs_after(ctx):
    out = []
    for t in ctx.anchors:
        if t + 1 > ctx.T:
            continue
        obs = ctx.index.trace.step(t + 1).observation
        if obs.strip():
            out.append(Candidate({"step": t}, (t, t + 1), obs))
    return out


def _enum_reward(ctx):
    return [Candidate({"step": t}, (t,), ctx.index.score_at(t)) for t in ctx.anchors]


def _enum_valid_action(ctx):
    out = []
    known = ctx.index.distinct_actions()
    for t in ctx.anchors:
        valids = ctx.index.trace.step(t).valid_actions
        for action in sorted(valids)[:2]:
            out.append(Candidate({"step": t, "action": action}, (t,), "yes", "yes_no"))
        invalid = [a for a in known if a not in valids]
        for action in invalid[:2]:
            out.append(Candidate({"step": t, "action": action}, (t,), "no", "yes_no"))
    return out


def _enum_gain_item(ctx):
    out = []
    for item in ctx.index.event_values("inventory_gain"):
        occ = ctx.index.occurrences("inventory_gain", item)
        for ordinal in ("first", "last"):
            step = pick_ordinal(occ, ordinal)
            if step is not None:
                out.append(
                    Candidate({"ordinal": ordinal, "item": item}, (step,), step, "step_number")
                )
    return out


def _pre_location(ctx, t: int) -> str:
    return ctx.index.location_at(t - 1)


def _enum_enter_leave(ctx):
    rooms = sorted({_pre_location(ctx, t) for t in range(1, ctx.T + 1)})
    out = []
    for room in rooms:
        starts = [
            t
            for t in range(1, ctx.T + 1)
            if _pre_location(ctx, t) == room
            and (t == 1 or _pre_location(ctx, t - 1) != room)
        ]
        leaves = [
            t
            for t in range(2, ctx.T + 1)
            if _pre_location(ctx, t) != room and _pre_location(ctx, t - 1) == room
        ]
        modes = [
            ("first start being at", starts[0] if starts else None),
            ("first leave", leaves[0] if leaves else None),
            ("last start being at", starts[-1] if starts else None),
        ]
        for mode, step in modes:
            if step is not None:
                out.append(
                    Candidate({"mode": mode, "location": room}, (step,), step, "step_number")
                )
    return out


def _enum_keyword_occurrence(ctx):
    out = []
    for keyword in ctx.word_list("keywords"):
        occ = ctx.index.keyword_steps("reason", keyword)
        if not occ:
            continue
        for ordinal in ("first", "second", "last", "second_last"):
            step = pick_ordinal(occ, ordinal)
            if step is not None:
                out.append(
                    Candidate(
                        {"ordinal": ordinal_phrase(ordinal), "keyword": keyword},
                        (step,),
                        step,
                        "step_number",
                    )
                )
    return out


def _gain_anchor_candidates(ctx, value_of):
    out = []
    for item in ctx.index.event_values("inventory_gain"):
        anchor = ctx.index.occurrences("inventory_gain", item)[0]
        for delta in GAIN_DELTAS:
            target = anchor + delta
            if target > ctx.T:
                continue
            out.append(
                Candidate(
                    {"item": item, "delta": delta},
                    (anchor, target),
                    value_of(ctx, target),
                )
            )
    return out


def _keyword_anchor_candidates(ctx, value_of):
    out = []
    for keyword in ctx.word_list("keywords"):
        occ = ctx.index.keyword_steps("reason", keyword)
        if not occ:
            continue
        anchor = occ[0]
        for delta in GAIN_DELTAS:
            target = anchor + delta
            if target > ctx.T:
                continue
            out.append(
                Candidate(
                    {"keyword": keyword, "delta": delta},
                    (anchor, target),
                    value_of(ctx, target),
                )
            )
    return out


def _value_action(ctx, t):
    return ctx.index.trace.step(t).action


def _value_location(ctx, t):
    return ctx.index.location_at(t)


def _value_observation(ctx, t):
    return ctx.index.trace.step(t).observation


def _value_reward(ctx, t):
    return ctx.index.score_at(t)


def _enum_action_mode(ctx):
    counts: dict[str, int] = {}
    for step in ctx.index.trace.steps:
        counts[step.action] = counts.get(step.action, 0) + 1
    winner = unique_max(counts)
    if winner is None:
        return []
    return [Candidate({}, (1, ctx.T), winner)]


def _enum_distinct_locations(ctx):
    return [
        Candidate({"L": lo, "R": hi}, (lo, hi), len(ctx.index.visited_rooms(lo, hi)))
        for lo, hi in ctx.windows
    ]


def _enum_most_frequent_location(ctx):
    out = []
    for lo, hi in ctx.windows:
        winner = unique_max(ctx.index.room_visit_counts(lo, hi))
        if winner is not None:
            out.append(Candidate({"L": lo, "R": hi}, (lo, hi), winner))
    return out


def _enum_total_dwell(ctx):
    out = []
    for lo, hi in ctx.windows:
        winner = unique_max(ctx.index.room_dwell_steps(lo, hi))
        if winner is not None:
            out.append(Candidate({"L": lo, "R": hi}, (lo, hi), winner))
    return out


def _keyword_window_counts(ctx, fields):
    out = []
    for lo, hi in ctx.windows:
        found = 0
        for keyword in ctx.word_list("keywords"):
            total = sum(ctx.index.keyword_total(f, keyword, lo, hi) for f in fields)
            if total >= 1:
                out.append(
                    Candidate({"L": lo, "R": hi, "keyword": keyword}, (lo, hi), total)
                )
                found += 1
                if found >= 6:
                    break
    return out


def _enum_keyword_count_obs(ctx):
    return _keyword_window_counts(ctx, ("observation",))


def _enum_keyword_count_reason(ctx):
    return _keyword_window_counts(ctx, ("reason",))


def _enum_compare_distances(ctx):
    out = []
    for anchor in ctx.anchors:
        origin = ctx.index.location_at(anchor)
        dists = room_distances(ctx.graph, origin)
        targets = sorted(room for room, d in dists.items() if d > 0)[:5]
        added = 0
        for a, b in combinations(targets, 2):
            if dists[a] == dists[b]:
                continue
            winner = a if dists[a] < dists[b] else b
            out.append(Candidate({"A": a, "B": b, "anchor": anchor}, (anchor,), winner))
            added += 1
            if added >= 6:
                break
    return out


def _enum_direction_count(ctx):
    out = []
    for lo, hi in ctx.windows:
        for direction in ctx.word_list("directions"):
            attempts = [
                t for t in ctx.index.action_steps(direction) if lo <= t <= hi
            ]
            if not attempts:
                continue
            moved = sum(
                1
                for t in attempts
                if ctx.index.location_at(t) != ctx.index.location_at(t - 1)
            )
            out.append(
                Candidate({"L": lo, "R": hi, "direction": direction}, (lo, hi), moved)
            )
    return out


def _enum_reachable_locations_count(ctx):
    out = []
    for room in sorted(ctx.graph):
        dists = room_distances(ctx.graph, room)
        for k in REACH_LIMITS:
            count = sum(1 for d in dists.values() if 1 <= d <= k)
            if count >= 1:
                out.append(Candidate({"location": room, "k": k}, (1, ctx.T), count))
    return out


def _enum_reachable_within(ctx):
    rooms = sorted(set(ctx.graph) | {r for edges in ctx.graph.values() for r in edges.values()})
    out = []
    for source in sorted(ctx.graph):
        dists = room_distances(ctx.graph, source)
        added = 0
        for target in rooms:
            if target == source:
                continue
            for k in REACH_LIMITS:
                reachable = dists.get(target) is not None and dists[target] <= k
                out.append(
                    Candidate(
                        {"target": target, "source": source, "k": k},
                        (1, ctx.T),
                        "yes" if reachable else "no",
                        "yes_no",
                    )
                )
                added += 1
            if added >= 6:
                break
    return out


def _walks_from(graph, start, max_len):
    walks = []

    def extend(room, seq):
        if len(seq) >= 2:
            walks.append((tuple(seq), room))
        if len(seq) == max_len:
            return
        for verb in sorted(graph.get(room, {})):
            extend(graph[room][verb], seq + [verb])

    extend(start, [])
    return walks


def _enum_sequence_moves(ctx):
    out = []
    for anchor in ctx.anchors:
        start = ctx.index.location_at(anchor)
        for seq, end in _walks_from(ctx.graph, start, 3)[:8]:
            assert follow_moves(ctx.graph, start, list(seq)) == end
            out.append(
                Candidate(
                    {"step": anchor, "sequence": ", then ".join(seq)},
                    (anchor,),
                    end,
                )
            )
    return out


def _enum_shortest_path(ctx):
    out = []
    for i, j in combinations(ctx.anchors, 2):
        a = ctx.index.location_at(i)
        b = ctx.index.location_at(j)
        if a == b:
            continue
        d = room_distances(ctx.graph, a).get(b)
        if d is None:
            continue
        out.append(Candidate({"i": i, "j": j}, (i, j), d))
        if len(out) >= 40:
            break
    return out


def _enum_gain_delay(ctx):
    out = []
    for item in ctx.index.event_values("inventory_gain"):
        occ = ctx.index.occurrences("inventory_gain", item)
        if len(occ) >= 2:
            out.append(
                Candidate({"item": item}, (occ[0], occ[1]), occ[1] - occ[0])
            )
    return out


def _enum_item_before_leave(ctx):
    out = []
    gained = ctx.index.event_values("inventory_gain")
    for room in ctx.index.event_values("location_leave"):
        first_leave = ctx.index.occurrences("location_leave", room)[0]
        for item in gained:
            gains = ctx.index.occurrences("inventory_gain", item)
            answer = "yes" if any(g < first_leave for g in gains) else "no"
            out.append(
                Candidate(
                    {"location": room, "item": item}, (first_leave,), answer, "yes_no"
                )
            )
            if len(out) >= 40:
                return out
    return out


def _enum_item_order(ctx):
    gained = ctx.index.event_values("inventory_gain")
    out = []
    for a in gained:
        fa = ctx.index.occurrences("inventory_gain", a)[0]
        for b in gained:
            if a == b:
                continue
            fb = ctx.index.occurrences("inventory_gain", b)[0]
            if fa == fb:
                continue
            answer = "yes" if fb < fa else "no"
            out.append(
                Candidate({"A": a, "B": b}, tuple(sorted((fa, fb))), answer, "yes_no")
            )
            if len(out) >= 40:
                return out
    return out


def _enum_region_stay(ctx):
    out = []
    for room in ctx.index.event_values("location_enter"):
        enter = ctx.index.occurrences("location_enter", room)[0]
        run = 0
        t = enter
        while t <= ctx.T and ctx.index.location_at(t) == room:
            run += 1
            t += 1
        out.append(Candidate({"location": room}, (enter, enter + run - 1), run))
    return out


def _enum_scene_order(ctx):
    occupied = {ctx.index.location_at(t) for t in range(0, ctx.T + 1)}
    first_seen = {}
    for t in range(0, ctx.T + 1):
        room = ctx.index.location_at(t)
        if room not in first_seen:
            first_seen[room] = t
    out = []
    for a in ctx.index.event_values("location_enter"):
        fa = ctx.index.occurrences("location_enter", a)[0]
        for b in sorted(occupied):
            if b == a:
                continue
            answer = "yes" if first_seen[b] < fa else "no"
            out.append(Candidate({"A": a, "B": b}, (fa,), answer, "yes_no"))
            if len(out) >= 40:
                return out
    return out


def _enum_has_item(ctx):
    gained = ctx.index.event_values("inventory_gain")
    out = []
    for t in ctx.anchors:
        carried = set(ctx.index.inventory_list_at(t))
        for item in gained:
            answer = "yes" if item in carried else "no"
            out.append(Candidate({"step": t, "item": item}, (t,), answer, "yes_no"))
    return out


def _enum_list_inventory(ctx):
    out = []
    for t in ctx.anchors:
        items = sorted(ctx.index.inventory_list_at(t))
        if items:
            out.append(Candidate({"step": t}, (t,), [join_list(items)], "list"))
    return out


def _enum_max_inventory_step(ctx):
    best_step = None
    best = 0
    for t in range(1, ctx.T + 1):
        size = len(ctx.index.inventory_list_at(t))
        if size > best:
            best, best_step = size, t
    if best_step is None:
        return []
    return [Candidate({}, (best_step,), best_step, "step_number")]


def _enum_location_most_item_gain(ctx):
    per_room: dict[str, set[str]] = {}
    for item in ctx.index.event_values("inventory_gain"):
        for step in ctx.index.occurrences("inventory_gain", item):
            per_room.setdefault(ctx.index.location_at(step), set()).add(item)
    winner = unique_max({room: len(items) for room, items in per_room.items()})
    if winner is None:
        return []
    return [Candidate({}, (1, ctx.T), winner)]


def _absent_values(ctx, category):
    return [
        value
        for value in ctx.word_list(category)
        if not ctx.index.mentioned_in_episode(value)
    ]


def _enum_adv_gain_item(ctx):
    return [
        Candidate({"ordinal": "first", "item": item}, (), None)
        for item in _absent_values(ctx, "items")
    ]


def _enum_adv_enter_leave(ctx):
    return [
        Candidate({"mode": "first start being at", "location": room}, (), None)
        for room in _absent_values(ctx, "locations")
    ]


def _enum_adv_keyword_occurrence(ctx):
    return [
        Candidate({"ordinal": "first", "keyword": kw}, (), None)
        for kw in _absent_values(ctx, "keywords")
    ]


def _enum_adv_gain_after_location(ctx):
    return [
        Candidate({"item": item, "delta": 2}, (), None)
        for item in _absent_values(ctx, "items")
    ]


def _enum_adv_region_stay(ctx):
    return [
        Candidate({"location": room}, (), None)
        for room in _absent_values(ctx, "locations")
    ]


def build_catalog() -> tuple[Template, ...]:
    T = "text"
    return (
        Template("A_action", T, "At step {step}, what action did you execute?", "string", _enum_action),
        Template("A_reason", T, "At step {step}, what is the first sentence of your reasoning?", "string", _enum_reason),
        Template("A_location", T, "Before performing the action at step {step}, what is your location?", "string", _enum_location),
        Template("A_obs_before", T, "Before performing the action at step {step}, what is the observation?", "string", _enum_obs_before),
        Template("A_obs_after", T, "After performing the action at step {step}, what is the resulting observation?", "string", _enum_obs_after),
        Template("A_reward", T, "After performing the action at step {step}, what is the cumulative reward so far?", "integer", _enum_reward),
        Template("A_valid_action", T, "At step {step}, is '{action}' a valid action? Answer in 'yes' or 'no'.", "yes_no", _enum_valid_action),
        Template("A_gain_item", T, "At which step did you {ordinal} gain '{item}'?", "step_number", _enum_gain_item, scope_sensitive=True),
        Template("A_enter_leave", T, "At which step did you {mode} '{location}' before performing the action?", "step_number", _enum_enter_leave, scope_sensitive=True),
        Template("A_keyword_occurrence", T, "Which step is the {ordinal} step whose reason mentions '{keyword}'?", "step_number", _enum_keyword_occurrence, scope_sensitive=True),
        Template("B_gain_after_action", T, "After first obtaining '{item}', what action is executed {delta} step(s) later?", "string", lambda ctx: _gain_anchor_candidates(ctx, _value_action), scope_sensitive=True),
        Template("B_gain_after_location", T, "After first obtaining '{item}', what is your location {delta} step(s) later?", "string", lambda ctx: _gain_anchor_candidates(ctx, _value_location), scope_sensitive=True),
        Template("B_gain_after_observation", T, "After first obtaining '{item}', what is the observation {delta} step(s) later?", "string", lambda ctx: _gain_anchor_candidates(ctx, _value_observation), scope_sensitive=True),
        Template("B_gain_after_reward", T, "After first obtaining '{item}', what is the cumulative reward {delta} step(s) later?", "integer", lambda ctx: _gain_anchor_candidates(ctx, _value_reward), scope_sensitive=True),
        Template("B_keyword_after_action", T, "After the first step whose reason mentions '{keyword}', what action is executed {delta} step(s) later?", "string", lambda ctx: _keyword_anchor_candidates(ctx, _value_action), scope_sensitive=True),
        Template("B_keyword_after_location", T, "After the first step whose reason mentions '{keyword}', what is your location {delta} step(s) later?", "string", lambda ctx: _keyword_anchor_candidates(ctx, _value_location), scope_sensitive=True),
        Template("B_keyword_after_observation", T, "After the first step whose reason mentions '{keyword}', what is the observation {delta} step(s) later?", "string", lambda ctx: _keyword_anchor_candidates(ctx, _value_observation), scope_sensitive=True),
        Template("B_keyword_after_reward", T, "After the first step whose reason mentions '{keyword}', what is the cumulative reward {delta} step(s) later?", "integer", lambda ctx: _keyword_anchor_candidates(ctx, _value_reward), scope_sensitive=True),
        Template("C_action_mode", T, "What is the most frequent action executed?", "string", _enum_action_mode, scope_sensitive=True),
        Template("C_distinct_locations", T, "From steps {L} to {R}, how many distinct locations were visited?", "integer", _enum_distinct_locations),
        Template("C_most_frequent_location", T, "From steps {L} to {R}, what is the most frequently visited location?", "string", _enum_most_frequent_location),
        Template("C_total_dwell", T, "Which is the location with the longest duration of stay in total (within {L}-{R})?", "string", _enum_total_dwell),
        Template("C_keyword_count_obs", T, "From steps {L} to {R}, how many times does '{keyword}' appear in observations?", "integer", _enum_keyword_count_obs),
        Template("C_keyword_count_reason", T, "From steps {L} to {R}, how many times does '{keyword}' appear in reasons?", "integer", _enum_keyword_count_reason),
        Template("D_compare_distances", T, "Which is closer (fewer steps to reach), '{A}' or '{B}', from the location at step {anchor}?", "string", _enum_compare_distances, scope_sensitive=True),
        Template("D_direction_count", T, "From steps {L} to {R}, how many times did you move {direction}?", "integer", _enum_direction_count),
        Template("D_reachable_locations_count", T, "How many distinct locations are reachable from '{location}' within {k} steps?", "integer", _enum_reachable_locations_count, scope_sensitive=True),
        Template("D_reachable_within", T, "Is '{target}' reachable from '{source}' within {k} steps? Answer in 'yes' or 'no'.", "yes_no", _enum_reachable_within, scope_sensitive=True),
        Template("D_sequence_moves", T, "At step {step}, if you move {sequence}, which location do you reach?", "string", _enum_sequence_moves, scope_sensitive=True),
        Template("D_shortest_path", T, "What is the shortest path length between the locations at steps {i} and {j}?", "integer", _enum_shortest_path, scope_sensitive=True),
        Template("E_gain_delay", T, "After first obtaining '{item}', how many steps later is '{item}' obtained again?", "integer", _enum_gain_delay, scope_sensitive=True),
        Template("E_item_before_leave", T, "Before first leaving '{location}', did you ever obtain '{item}'? Answer in 'yes' or 'no'.", "yes_no", _enum_item_before_leave, scope_sensitive=True),
        Template("E_item_order", T, "Before first time obtaining '{A}', have you ever obtained '{B}'? Answer in 'yes' or 'no'.", "yes_no", _enum_item_order, scope_sensitive=True),
        Template("E_region_stay", T, "After first entering '{location}', for how many consecutive steps did you stay in '{location}'?", "integer", _enum_region_stay, scope_sensitive=True),
        Template("E_scene_order", T, "Before first time entering '{A}', have you ever been to '{B}'? Answer in 'yes' or 'no'.", "yes_no", _enum_scene_order, scope_sensitive=True),
        Template("F_has_item", T, "At step {step}, did you have '{item}' in inventory? Answer in 'yes' or 'no'.", "yes_no", _enum_has_item),
        Template("F_list_inventory", T, "After performing the action at step {step}, what are all the items you carry?", "list", _enum_list_inventory),
        Template("F_max_inventory_step", T, "After completing which step does the inventory contain the most items?", "step_number", _enum_max_inventory_step, scope_sensitive=True),
        Template("F_location_most_item_gain", T, "At which location did you gain the most distinct items?", "string", _enum_location_most_item_gain, scope_sensitive=True),
        Template("ADV_A_gain_item", T, "At which step did you {ordinal} gain '{item}'?", "string", _enum_adv_gain_item, scope_sensitive=True),
        Template("ADV_A_enter_leave", T, "At which step did you {mode} '{location}' before performing the action?", "string", _enum_adv_enter_leave, scope_sensitive=True),
        Template("ADV_A_keyword_occurrence", T, "Which step is the {ordinal} step whose reason mentions '{keyword}'?", "string", _enum_adv_keyword_occurrence, scope_sensitive=True),
        Template("ADV_B_gain_after_location", T, "After first obtaining '{item}', what is your location {delta} step(s) later?", "string", _enum_adv_gain_after_location, scope_sensitive=True),
        Template("ADV_E_region_stay", T, "After first entering '{location}', for how many consecutive steps did you stay in '{location}'?", "string", _enum_adv_region_stay, scope_sensitive=True),
    )
