"""Spatial ground truth: grid navigation, displacement, and room graphs.

Grid side: breadth-first search from the agent over traversable cells with
target cells admitted as terminal goals but never expanded, returning the
minimum distance, every minimum-distance target, and a parent map for route
reconstruction. Neighbor expansion order is fixed (up, down, left, right)
and the queue is FIFO, so parent maps and the routes derived from them are
deterministic. A multi-source variant computes whole-map distance fields for
window minimum/maximum questions.

Text side: a directed room graph built from observed transitions only, so
path answers never assume connections the agent has not walked.

Directions use screen coordinates: up means decreasing row, left means
decreasing column.
"""

from __future__ import annotations

from collections import deque

from traceqa.trace import BackendSidecar, EpisodeTrace

DIRECTIONS = (
    ("up", (-1, 0)),
    ("down", (1, 0)),
    ("left", (0, -1)),
    ("right", (0, 1)),
)

DELTA = {name: delta for name, delta in DIRECTIONS}

TRAVERSABLE_TERRAINS = frozenset({"grass", "sand", "path"})

# Grid edits that a trace implies on its own, used when no per-step grid
# deltas were recorded. A successful collect converts the faced cell; a
# successful placement writes the placed object's terrain.
COLLECT_CONVERSIONS = {
    "wood": "grass",
    "stone": "path",
    "coal": "path",
    "iron": "path",
    "diamond": "path",
}

PLACE_RESULTS = {
    "PLACE_STONE": ("stone", "stone"),
    "PLACE_TABLE": ("wood", "table"),
    "PLACE_FURNACE": ("stone", "furnace"),
    "PLACE_PLANT": ("sapling", "plant"),
}


def terrain_ids_by_name(terrain_vocab: dict[int, str]) -> dict[str, int]:
    return {name: tid for tid, name in terrain_vocab.items()}


def traversable_ids(terrain_vocab: dict[int, str]) -> frozenset[int]:
    return frozenset(
        tid for tid, name in terrain_vocab.items() if name in TRAVERSABLE_TERRAINS
    )


def faced_cell(position: tuple[int, int], facing: str) -> tuple[int, int]:
    dr, dc = DELTA[facing]
    return position[0] + dr, position[1] + dc


def apply_trajectory_edits(
    base_grid,
    trace: EpisodeTrace,
    terrain_vocab: dict[int, str],
    up_to_step: int | None = None,
) -> list[list[int]]:
    """Replay the grid edits a trace implies onto a copy of the base grid.

    Collect successes convert the faced cell (tree to grass, minerals to
    path); successful placements write the placed terrain. Success is read
    from inventory diffs, so failed actions leave the grid alone. Returns the
    grid after ``up_to_step`` (defaults to the final step).
    """
    by_name = terrain_ids_by_name(terrain_vocab)
    grid = [list(row) for row in base_grid]
    rows, cols = len(grid), len(grid[0]) if grid else 0
    limit = trace.length if up_to_step is None else up_to_step
    prev_counts = dict(trace.initial.inventory_counts)
    for step in trace.steps[:limit]:
        counts = step.inventory_counts
        new_terrain: str | None = None
        if step.action == "DO":
            for resource, result in COLLECT_CONVERSIONS.items():
                if counts.get(resource, 0) > prev_counts.get(resource, 0):
                    new_terrain = result
                    break
        elif step.action in PLACE_RESULTS:
            cost_resource, result = PLACE_RESULTS[step.action]
            if counts.get(cost_resource, 0) < prev_counts.get(cost_resource, 0):
                new_terrain = result
        if new_terrain is not None:
            r, c = faced_cell(step.position, step.facing)
            if 0 <= r < rows and 0 <= c < cols:
                grid[r][c] = by_name[new_terrain]
        prev_counts = dict(counts)
    return grid


def dynamic_grid(
    trace: EpisodeTrace, sidecar: BackendSidecar, up_to_step: int | None = None
) -> list[list[int]]:
    """Grid state after a step: recorded deltas when present, replay otherwise."""
    limit = trace.length if up_to_step is None else up_to_step
    if sidecar.step_edits is not None:
        return sidecar.grid_after(limit)
    return apply_trajectory_edits(sidecar.base_grid, trace, sidecar.terrain_vocab, limit)


def bfs_min_targets(
    grid,
    start: tuple[int, int],
    target_ids: frozenset[int] | set[int],
    passable_ids: frozenset[int] | set[int],
) -> tuple[int | None, list[tuple[int, int]], dict]:
    """All nearest target cells by walking distance, with a route tree.

    Returns ``(distance, targets, parents)``. Target cells terminate search
    paths: they are never expanded, so routes cannot tunnel through one
    target to reach another. When the start cell itself is a target the
    distance is 0. When no target is reachable the distance is None.
    """
    rows, cols = len(grid), len(grid[0]) if grid else 0
    if grid[start[0]][start[1]] in target_ids:
        return 0, [start], {}
    dist = {start: 0}
    parents: dict = {}
    queue = deque([start])
    best: int | None = None
    found: list[tuple[int, int]] = []
    while queue:
        cell = queue.popleft()
        d = dist[cell]
        if best is not None and d >= best:
            break
        for _, (dr, dc) in DIRECTIONS:
            nxt = (cell[0] + dr, cell[1] + dc)
            if not (0 <= nxt[0] < rows and 0 <= nxt[1] < cols):
                continue
            if nxt in dist:
                continue
            terrain = grid[nxt[0]][nxt[1]]
            if terrain in target_ids:
                dist[nxt] = d + 1
                parents[nxt] = cell
                if best is None:
                    best = d + 1
                found.append(nxt)
                continue
            if terrain not in passable_ids:
                continue
            dist[nxt] = d + 1
            parents[nxt] = cell
            queue.append(nxt)
    if best is None:
        return None, [], parents
    return best, sorted(found), parents


def distance_field(
    grid,
    target_ids: frozenset[int] | set[int],
    passable_ids: frozenset[int] | set[int],
) -> dict[tuple[int, int], int]:
    """Walking distance from every cell to its nearest target cell.

    Multi-source BFS seeded at the targets, expanding only through passable
    cells; equivalent to running ``bfs_min_targets`` from every cell. Cells
    with no reachable target are absent from the result.
    """
    rows, cols = len(grid), len(grid[0]) if grid else 0
    dist: dict[tuple[int, int], int] = {}
    queue = deque()
    for r in range(rows):
        for c in range(cols):
            if grid[r][c] in target_ids:
                dist[(r, c)] = 0
                queue.append((r, c))
    while queue:
        cell = queue.popleft()
        d = dist[cell]
        for _, (dr, dc) in DIRECTIONS:
            nxt = (cell[0] + dr, cell[1] + dc)
            if not (0 <= nxt[0] < rows and 0 <= nxt[1] < cols):
                continue
            if nxt in dist:
                continue
            if grid[nxt[0]][nxt[1]] not in passable_ids:
                continue
            dist[nxt] = d + 1
            queue.append(nxt)
    return dist


def reconstruct_route(
    parents: dict, start: tuple[int, int], target: tuple[int, int]
) -> list[str]:
    """Direction names from start to target along the BFS parent tree."""
    cells = [target]
    while cells[-1] != start:
        cells.append(parents[cells[-1]])
    cells.reverse()
    moves = []
    for (r1, c1), (r2, c2) in zip(cells, cells[1:]):
        for name, (dr, dc) in DIRECTIONS:
            if (r1 + dr, c1 + dc) == (r2, c2):
                moves.append(name)
                break
    return moves


def compress_route(moves: list[str]) -> str:
    """Run-length phrase for a move list: "1 step right, 6 steps up and 3 steps right"."""
    if not moves:
        return "0"
    segments: list[tuple[int, str]] = []
    for move in moves:
        if segments and segments[-1][1] == move:
            segments[-1] = (segments[-1][0] + 1, move)
        else:
            segments.append((1, move))
    parts = [f"{n} step{'s' if n != 1 else ''} {d}" for n, d in segments]
    if len(parts) == 1:
        return parts[0]
    return ", ".join(parts[:-1]) + " and " + parts[-1]


def navigation_answer(
    grid,
    start: tuple[int, int],
    target_ids: frozenset[int] | set[int],
    passable_ids: frozenset[int] | set[int],
) -> tuple[int | None, list[str]]:
    """Distance and canonical route phrases to the nearest target cells.

    Returns ``(None, [])`` when unreachable, ``(0, ["0"])`` when already on a
    target, otherwise the distance and one compressed route per minimum
    target, sorted for a canonical candidate list.
    """
    d, targets, parents = bfs_min_targets(grid, start, target_ids, passable_ids)
    if d is None:
        return None, []
    if d == 0:
        return 0, ["0"]
    routes = sorted(compress_route(reconstruct_route(parents, start, t)) for t in targets)
    return d, routes


def displacement_phrase(origin: tuple[int, int], end: tuple[int, int]) -> str:
    """Net offset phrase, horizontal component first: "4 steps right and 7 steps up"."""
    dr = end[0] - origin[0]
    dc = end[1] - origin[1]
    parts = []
    if dc:
        n = abs(dc)
        parts.append(f"{n} step{'s' if n != 1 else ''} {'right' if dc > 0 else 'left'}")
    if dr:
        n = abs(dr)
        parts.append(f"{n} step{'s' if n != 1 else ''} {'down' if dr > 0 else 'up'}")
    if not parts:
        return "0"
    return " and ".join(parts)


def nearest_cell_direction(
    grid, position: tuple[int, int], target_id: int
) -> str | None:
    """Dominant compass direction toward the nearest cell of a terrain.

    Nearest is by Manhattan distance with (row, col) tie-breaking, so the
    answer is deterministic. Axis ties fall back to the canonical direction
    order (up, down, left, right). None when the terrain is absent or only
    under the agent.
    """
    rows, cols = len(grid), len(grid[0]) if grid else 0
    best: tuple[int, int, int] | None = None
    for r in range(rows):
        for c in range(cols):
            if grid[r][c] != target_id or (r, c) == position:
                continue
            d = abs(r - position[0]) + abs(c - position[1])
            key = (d, r, c)
            if best is None or key < best:
                best = key
    if best is None:
        return None
    _, r, c = best
    dr = r - position[0]
    dc = c - position[1]
    if abs(dr) >= abs(dc) and dr != 0:
        return "up" if dr < 0 else "down"
    return "left" if dc < 0 else "right"


def visible_window(
    position: tuple[int, int], radius: int, rows: int, cols: int
) -> tuple[int, int, int, int]:
    """Clipped inclusive bounds (r_lo, r_hi, c_lo, c_hi) of the view square."""
    r, c = position
    return (
        max(0, r - radius),
        min(rows - 1, r + radius),
        max(0, c - radius),
        min(cols - 1, c + radius),
    )


def count_visible(grid, position: tuple[int, int], radius: int, terrain_id: int) -> int:
    """Cells of one terrain inside the agent's view square."""
    r_lo, r_hi, c_lo, c_hi = visible_window(position, radius, len(grid), len(grid[0]))
    return sum(
        1
        for r in range(r_lo, r_hi + 1)
        for c in range(c_lo, c_hi + 1)
        if grid[r][c] == terrain_id
    )


def count_adjacent(grid, position: tuple[int, int], terrain_id: int) -> int:
    """Cells of one terrain among the four neighbors of a position."""
    rows, cols = len(grid), len(grid[0]) if grid else 0
    total = 0
    for _, (dr, dc) in DIRECTIONS:
        r, c = position[0] + dr, position[1] + dc
        if 0 <= r < rows and 0 <= c < cols and grid[r][c] == terrain_id:
            total += 1
    return total


# -- text family: observed room graph ----------------------------------------


def build_room_graph(trace: EpisodeTrace) -> dict[str, dict[str, str]]:
    """Directed labeled graph of room transitions the agent actually made.

    An edge (room_a -[verb]-> room_b) exists when some step issued ``verb``
    in room_a and arrived in room_b. Only observed transitions appear, so
    answers derived from the graph never assume unexplored connections.
    """
    graph: dict[str, dict[str, str]] = {}
    prev = trace.initial.location
    for step in trace.steps:
        here = step.location
        if here != prev:
            graph.setdefault(prev, {}).setdefault(step.action, here)
        prev = here
    return graph


def room_distances(graph: dict[str, dict[str, str]], start: str) -> dict[str, int]:
    """BFS hop counts from a room over the observed directed graph."""
    dist = {start: 0}
    queue = deque([start])
    while queue:
        room = queue.popleft()
        for verb in sorted(graph.get(room, {})):
            nxt = graph[room][verb]
            if nxt not in dist:
                dist[nxt] = dist[room] + 1
                queue.append(nxt)
    return dist


def follow_moves(
    graph: dict[str, dict[str, str]], start: str, moves: list[str]
) -> str | None:
    """Walk labeled edges from ``start``; None when a move has no edge."""
    here = start
    for verb in moves:
        here = graph.get(here, {}).get(verb)
        if here is None:
            return None
    return here
