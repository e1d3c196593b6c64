"""A* pathfinding over partial knowledge, with replanning on discovery.

Plans are computed over an optimistic view of the grid: cells the agent
has confirmed as walls are blocked, every other in-bounds cell (confirmed
free or never probed) is assumed traversable. The Manhattan heuristic is
admissible on that view, so plans are shortest paths over it. When the
walker probes the next waypoint and finds a wall, the wall is recorded
and the caller replans from scratch; every replan adds at least one new
wall to knowledge, so replanning terminates.

Tie-breaking is pinned for determinism: equal f prefers lower h, equal h
prefers the earliest-discovered node, and neighbours are expanded in
east, south, west, north order.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from enum import Enum

from .grid import (
    DIRECTION_VECTORS,
    HEADINGS,
    KnowledgeMap,
    MazeGrid,
    Position,
    Probe,
    manhattan,
    probe,
    trajectory_to_text,
)


class StepOutcome(Enum):
    ADVANCED = "advanced"
    REPLAN_NEEDED = "replan_needed"
    ARRIVED = "arrived"


@dataclass
class Plan:
    """Waypoints from the current cell to the target, inclusive.

    ``cursor`` marks the waypoint the agent currently stands on;
    ``planned_over`` records the knowledge revision the plan was built
    against.
    """

    waypoints: list
    cost: int
    planned_over: int
    cursor: int = 0


def astar_plan(
    start: Position, target: Position, knowledge: KnowledgeMap, n: int
) -> Plan | None:
    """Shortest path over the optimistic planning graph, or None.

    None is only possible when the target itself is a known wall, which
    generated mazes never allow.
    """
    if start in knowledge.known_walls:
        raise ValueError(f"cannot plan from a known wall at {start}")
    if start == target:
        return Plan([start], 0, knowledge.revision)

    walls = knowledge.known_walls
    h0 = manhattan(start, target)
    frontier = [(h0, h0, 0, start)]
    came_from = {}
    g_score = {start: 0}
    closed = set()
    counter = 1

    while frontier:
        _, _, _, cell = heapq.heappop(frontier)
        if cell == target:
            waypoints = [cell]
            while cell in came_from:
                cell = came_from[cell]
                waypoints.append(cell)
            waypoints.reverse()
            return Plan(waypoints, len(waypoints) - 1, knowledge.revision)
        if cell in closed:
            continue
        closed.add(cell)
        g_next = g_score[cell] + 1
        x, y = cell
        for heading in HEADINGS:
            dx, dy = DIRECTION_VECTORS[heading]
            nbr = (x + dx, y + dy)
            if not (0 <= nbr[0] < n and 0 <= nbr[1] < n) or nbr in walls:
                continue
            if nbr in g_score and g_score[nbr] <= g_next:
                continue
            g_score[nbr] = g_next
            came_from[nbr] = cell
            h = manhattan(nbr, target)
            heapq.heappush(frontier, (g_next + h, h, counter, nbr))
            counter += 1
    return None


def follow_plan(
    plan: Plan, maze: MazeGrid, knowledge: KnowledgeMap
) -> tuple[Position, StepOutcome]:
    """Probe the next waypoint and advance onto it if passable.

    A blocked waypoint is recorded as a wall and the agent stays put,
    signalling the caller to replan. The probe is strictly local: only
    the adjacent waypoint is sensed.
    """
    here = plan.waypoints[plan.cursor]
    if plan.cursor == len(plan.waypoints) - 1:
        return here, StepOutcome.ARRIVED
    nxt = plan.waypoints[plan.cursor + 1]
    result = probe(maze, here, nxt)
    knowledge.note(nxt, result)
    if result is Probe.BLOCKED:
        return here, StepOutcome.REPLAN_NEEDED
    if result is Probe.OUT_OF_BOUNDS:
        raise AssertionError(f"plan left the grid at {nxt}")
    plan.cursor += 1
    if plan.cursor == len(plan.waypoints) - 1:
        return nxt, StepOutcome.ARRIVED
    return nxt, StepOutcome.ADVANCED


def plan_to_text(plan: Plan) -> str:
    """Waypoints in the trajectory text format, for debugging dumps."""
    return trajectory_to_text(plan.waypoints)
