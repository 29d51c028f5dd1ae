"""Spatial ground-truth rules, cross-checked against an independent oracle.

The oracle computes nearest-target distances by flooding from the start over
passable cells and taking the best final hop into each target, with no early
exit and no goal bookkeeping, so it shares no shortcuts with the search under
test.
"""

import random
from collections import deque

from traceqa.indices import EpisodeIndex
from traceqa.spatial import (
    apply_trajectory_edits,
    bfs_min_targets,
    build_room_graph,
    compress_route,
    count_adjacent,
    count_visible,
    displacement_phrase,
    distance_field,
    dynamic_grid,
    follow_moves,
    navigation_answer,
    nearest_cell_direction,
    reconstruct_route,
    room_distances,
    visible_window,
)

GRASS, STONE, TREE, WATER, IRON = 1, 2, 5, 0, 7

STEP_DELTAS = {"up": (-1, 0), "down": (1, 0), "left": (0, -1), "right": (0, 1)}


def oracle_min_targets(grid, start, target_ids, passable_ids):
    """Flood fill over passable cells, then best last hop into each target."""
    rows, cols = len(grid), len(grid[0])
    if grid[start[0]][start[1]] in target_ids:
        return 0, [start]
    dist = {start: 0}
    queue = deque([start])
    while queue:
        r, c = queue.popleft()
        for dr, dc in STEP_DELTAS.values():
            nxt = (r + dr, c + dc)
            if not (0 <= nxt[0] < rows and 0 <= nxt[1] < cols):
                continue
            if nxt in dist or grid[nxt[0]][nxt[1]] not in passable_ids:
                continue
            dist[nxt] = dist[(r, c)] + 1
            queue.append(nxt)
    best = None
    cells = []
    for r in range(rows):
        for c in range(cols):
            if grid[r][c] not in target_ids:
                continue
            reach = [
                dist[(r + dr, c + dc)]
                for dr, dc in STEP_DELTAS.values()
                if (r + dr, c + dc) in dist
            ]
            if not reach:
                continue
            d = min(reach) + 1
            if best is None or d < best:
                best, cells = d, [(r, c)]
            elif d == best:
                cells.append((r, c))
    if best is None:
        return None, []
    return best, sorted(cells)


def random_grid(rng, rows=9, cols=9):
    weights = [GRASS] * 5 + [STONE] * 2 + [TREE] + [WATER]
    return [[rng.choice(weights) for _ in range(cols)] for _ in range(rows)]


def test_bfs_matches_oracle_on_random_grids():
    rng = random.Random(2024)
    passable = {GRASS}
    targets = {TREE}
    checked = 0
    for _ in range(60):
        grid = random_grid(rng)
        starts = [
            (r, c)
            for r in range(len(grid))
            for c in range(len(grid[0]))
            if grid[r][c] == GRASS
        ]
        for start in starts[:6]:
            want_d, want_cells = oracle_min_targets(grid, start, targets, passable)
            got_d, got_cells, _ = bfs_min_targets(grid, start, targets, passable)
            assert got_d == want_d
            assert got_cells == want_cells
            checked += 1
    assert checked > 100


def test_distance_field_matches_per_cell_search():
    rng = random.Random(77)
    passable = {GRASS}
    targets = {TREE}
    for _ in range(20):
        grid = random_grid(rng)
        field = distance_field(grid, targets, passable)
        for r in range(len(grid)):
            for c in range(len(grid[0])):
                if grid[r][c] == GRASS:
                    d, _, _ = bfs_min_targets(grid, (r, c), targets, passable)
                    assert field.get((r, c)) == d
                elif grid[r][c] == TREE:
                    assert field[(r, c)] == 0


def test_targets_terminate_paths():
    # The only way to the far tree passes through the near tree, so only the
    # near tree is reported and the far one stays behind it.
    grid = [[STONE] * 5 for _ in range(3)]
    for c in range(5):
        grid[1][c] = GRASS
    grid[1][2] = TREE
    grid[1][4] = TREE
    d, cells, _ = bfs_min_targets(grid, (1, 0), {TREE}, {GRASS})
    assert d == 2
    assert cells == [(1, 2)]


def test_equidistant_targets_all_reported():
    grid = [[GRASS] * 5 for _ in range(5)]
    grid[2][0] = TREE
    grid[2][4] = TREE
    d, cells, parents = bfs_min_targets(grid, (2, 2), {TREE}, {GRASS})
    assert d == 2
    assert cells == [(2, 0), (2, 4)]
    assert reconstruct_route(parents, (2, 2), (2, 0)) == ["left", "left"]
    assert reconstruct_route(parents, (2, 2), (2, 4)) == ["right", "right"]


def test_start_on_target_is_distance_zero():
    grid = [[TREE]]
    assert bfs_min_targets(grid, (0, 0), {TREE}, {GRASS}) == (0, [(0, 0)], {})
    assert navigation_answer(grid, (0, 0), {TREE}, {GRASS}) == (0, ["0"])


def test_unreachable_target_reports_none():
    grid = [
        [GRASS, STONE, TREE],
        [GRASS, STONE, STONE],
    ]
    d, cells, _ = bfs_min_targets(grid, (0, 0), {TREE}, {GRASS})
    assert d is None
    assert cells == []
    assert navigation_answer(grid, (0, 0), {TREE}, {GRASS}) == (None, [])


def test_compress_route_table():
    cases = [
        ([], "0"),
        (["up"], "1 step up"),
        (["up", "up"], "2 steps up"),
        (["left", "down", "down"], "1 step left and 2 steps down"),
        (
            ["right", "up", "up", "up", "up", "up", "up", "right", "right", "right"],
            "1 step right, 6 steps up and 3 steps right",
        ),
        (
            ["down", "down", "left", "up", "up", "up"],
            "2 steps down, 1 step left and 3 steps up",
        ),
    ]
    for moves, phrase in cases:
        assert compress_route(moves) == phrase


def test_corridor_route_reproduces_known_phrase():
    # Walled corridor forcing right 1, up 6, right 3 to the iron cell.
    grid = [[STONE] * 6 for _ in range(9)]
    open_cells = [(7, 0), (7, 1), (6, 1), (5, 1), (4, 1), (3, 1), (2, 1), (1, 1), (1, 2), (1, 3)]
    for r, c in open_cells:
        grid[r][c] = GRASS
    grid[1][4] = IRON
    d, routes = navigation_answer(grid, (7, 0), {IRON}, {GRASS})
    assert d == 10
    assert routes == ["1 step right, 6 steps up and 3 steps right"]


def walk_route(phrase, start):
    moves = []
    for part in phrase.replace(" and ", ", ").split(", "):
        count, _, direction = part.split(" ")
        moves.extend([direction] * int(count))
    pos = start
    for move in moves:
        dr, dc = STEP_DELTAS[move]
        pos = (pos[0] + dr, pos[1] + dc)
    return pos, len(moves)


def test_routes_replay_onto_min_targets():
    rng = random.Random(4242)
    for _ in range(40):
        grid = random_grid(rng)
        starts = [
            (r, c)
            for r in range(len(grid))
            for c in range(len(grid[0]))
            if grid[r][c] == GRASS
        ]
        if not starts:
            continue
        start = starts[0]
        d, routes = navigation_answer(grid, start, {TREE}, {GRASS})
        if d is None or d == 0:
            continue
        _, cells, _ = bfs_min_targets(grid, start, {TREE}, {GRASS})
        for phrase in routes:
            end, count = walk_route(phrase, start)
            assert count == d
            assert end in cells


def test_displacement_phrase_table():
    cases = [
        ((5, 5), (5, 5), "0"),
        ((9, 1), (2, 5), "4 steps right and 7 steps up"),
        ((5, 5), (2, 9), "4 steps right and 3 steps up"),
        ((5, 5), (5, 3), "2 steps left"),
        ((5, 5), (6, 5), "1 step down"),
        ((0, 0), (1, 1), "1 step right and 1 step down"),
        ((3, 3), (5, 0), "3 steps left and 2 steps down"),
    ]
    for origin, end, phrase in cases:
        assert displacement_phrase(origin, end) == phrase


def test_nearest_cell_direction_rules():
    grid = [[GRASS] * 7 for _ in range(7)]
    grid[0][3] = TREE
    assert nearest_cell_direction(grid, (3, 3), TREE) == "up"
    grid[3][6] = IRON
    assert nearest_cell_direction(grid, (3, 3), IRON) == "right"
    # Equal Manhattan distance: (1,3) wins the (row, col) tie-break over
    # (3,1), and the dominant axis is vertical.
    grid2 = [[GRASS] * 7 for _ in range(7)]
    grid2[1][3] = TREE
    grid2[3][1] = TREE
    assert nearest_cell_direction(grid2, (3, 3), TREE) == "up"
    # Diagonal tie between axes prefers the vertical direction.
    grid3 = [[GRASS] * 7 for _ in range(7)]
    grid3[5][5] = TREE
    assert nearest_cell_direction(grid3, (3, 3), TREE) == "down"
    assert nearest_cell_direction(grid3, (3, 3), IRON) is None
    grid4 = [[GRASS]]
    grid4[0][0] = TREE
    assert nearest_cell_direction(grid4, (0, 0), TREE) is None


def test_view_window_and_counts():
    grid = [[GRASS] * 8 for _ in range(8)]
    grid[0][0] = TREE
    grid[0][1] = TREE
    grid[2][2] = TREE
    grid[1][0] = WATER
    assert visible_window((0, 0), 2, 8, 8) == (0, 2, 0, 2)
    assert visible_window((4, 4), 2, 8, 8) == (2, 6, 2, 6)
    assert count_visible(grid, (0, 0), 2, TREE) == 3
    assert count_visible(grid, (5, 5), 2, TREE) == 0
    assert count_adjacent(grid, (0, 1), TREE) == 1
    assert count_adjacent(grid, (1, 1), TREE) == 1
    assert count_adjacent(grid, (0, 0), WATER) == 1
    assert count_adjacent(grid, (7, 7), TREE) == 0


def test_trajectory_edit_replay_matches_recorded_deltas(grid_episode):
    trace, sidecar = grid_episode
    replayed = apply_trajectory_edits(sidecar.base_grid, trace, sidecar.terrain_vocab)
    assert replayed == sidecar.grid_after(4)
    half = apply_trajectory_edits(sidecar.base_grid, trace, sidecar.terrain_vocab, 3)
    assert half == sidecar.grid_after(3)
    assert dynamic_grid(trace, sidecar, 4) == replayed


def test_room_graph_from_observed_transitions(text_episode):
    trace, _ = text_episode
    graph = build_room_graph(trace)
    assert graph == {
        "foyer": {"north": "hallway"},
        "hallway": {"north": "kitchen"},
    }
    assert room_distances(graph, "foyer") == {"foyer": 0, "hallway": 1, "kitchen": 2}
    assert room_distances(graph, "kitchen") == {"kitchen": 0}
    assert follow_moves(graph, "foyer", ["north", "north"]) == "kitchen"
    assert follow_moves(graph, "foyer", ["south"]) is None


def test_index_and_dynamic_grid_agree(grid_episode):
    trace, sidecar = grid_episode
    index = EpisodeIndex(trace, sidecar)
    grid = dynamic_grid(trace, sidecar)
    assert grid[1][1] == GRASS
    assert index.occurrences("collect_success", "wood") == [4]
