"""Maze grids, the local wall sensor, and the agent's accumulated knowledge.

Coordinates are ``(x, y)`` tuples: ``x`` indexes rows printed top to
bottom, ``y`` indexes columns left to right. "East" increases ``y``,
"south" increases ``x``.

Layouts are carved with a randomized depth-first backtracker over the
room lattice (cells with both coordinates even), which yields a perfect
maze, and are then braided: behind each dead end the far wall is removed
with probability 0.10 so that multiple routes to the target exist. The
target cell and its four in-bounds neighbours are always carved open.
All randomness comes from one SplitMix64 stream, so ``(n, seed)`` pins
the layout bit for bit.

Text form (``save_maze``/``load_maze`` round-trip exactly)::

    n seed
    S.#...
    ......

with ``#`` wall, ``.`` open, ``S`` start at (0, 0), ``T`` target at
(n/2, n/2). Body row i holds x == i, column j holds y == j.
"""

from __future__ import annotations

import hashlib
from collections import deque
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path

import numpy as np

from .rng import SplitMix64

Position = tuple  # (x, y)

EAST, SOUTH, WEST, NORTH = "E", "S", "W", "N"
HEADINGS = (EAST, SOUTH, WEST, NORTH)  # clockwise order
DIRECTION_VECTORS = {EAST: (0, 1), SOUTH: (1, 0), WEST: (0, -1), NORTH: (-1, 0)}

BRAID_PROBABILITY = 0.10

_PROBE_OFFSETS = {(0, 0), (0, 1), (1, 0), (0, -1), (-1, 0)}


class Probe(Enum):
    PASSABLE = "passable"
    BLOCKED = "blocked"
    OUT_OF_BOUNDS = "out_of_bounds"


class MazeConfigError(ValueError):
    """Unusable generation parameters."""


class MazeFormatError(ValueError):
    """Malformed maze text."""


@dataclass(eq=False)
class MazeGrid:
    """Immutable wall layout with a fixed start (0, 0) and center target."""

    n: int
    walls: np.ndarray  # bool, shape (n, n), True = blocked
    target: Position
    seed: int

    def in_bounds(self, x: int, y: int) -> bool:
        return 0 <= x < self.n and 0 <= y < self.n

    def layout_hash(self) -> str:
        return hashlib.sha256(self.walls.tobytes()).hexdigest()


def probe(maze: MazeGrid, frm: Position, neighbor: Position) -> Probe:
    """Constant-time local wall sensor.

    Only the occupied cell itself or one of its four neighbours may be
    probed; anything else is a programming error and raises.
    """
    dx = neighbor[0] - frm[0]
    dy = neighbor[1] - frm[1]
    if (dx, dy) not in _PROBE_OFFSETS:
        raise ValueError(f"non-local probe from {frm} to {neighbor}")
    if not maze.in_bounds(neighbor[0], neighbor[1]):
        return Probe.OUT_OF_BOUNDS
    return Probe.BLOCKED if maze.walls[neighbor] else Probe.PASSABLE


def manhattan(a: Position, b: Position) -> int:
    return abs(a[0] - b[0]) + abs(a[1] - b[1])


@dataclass
class KnowledgeMap:
    """What the agent has learned so far from local probes.

    ``visited`` holds every cell the agent has occupied; coverage is its
    cardinality, so revisits never inflate it. ``sampled_history`` is the
    stored visit history: every first visit in full-memory mode, every
    ``stride``-th first visit in sentinel mode. The history is record
    keeping only and never feeds back into control decisions.
    """

    known_walls: set = field(default_factory=set)
    known_free: set = field(default_factory=set)
    visited: set = field(default_factory=set)
    sampled_history: list = field(default_factory=list)
    revision: int = 0

    @property
    def visited_count(self) -> int:
        return len(self.visited)

    def note(self, cell: Position, result: Probe) -> None:
        """Record one probe result. Out-of-bounds probes carry no cell fact."""
        if result is Probe.PASSABLE:
            if cell not in self.known_free:
                self.known_free.add(cell)
                self.revision += 1
        elif result is Probe.BLOCKED:
            if cell not in self.known_walls:
                self.known_walls.add(cell)
                self.revision += 1

    def observe_surroundings(self, maze: MazeGrid, pos: Position) -> None:
        """Probe the occupied cell and its four neighbours."""
        self.note(pos, probe(maze, pos, pos))
        x, y = pos
        for heading in HEADINGS:
            dx, dy = DIRECTION_VECTORS[heading]
            cell = (x + dx, y + dy)
            self.note(cell, probe(maze, pos, cell))

    def record(self, pos: Position, memory: str, sample_stride: int) -> bool:
        """Mark ``pos`` visited; returns True if it was a first visit."""
        if pos in self.visited:
            return False
        ordinal = len(self.visited)
        self.visited.add(pos)
        if memory == "full" or ordinal % sample_stride == 0:
            self.sampled_history.append(pos)
        return True


def coverage_percent(knowledge: KnowledgeMap, n: int) -> float:
    """Distinct visited cells over all n*n cells, as a percentage."""
    return knowledge.visited_count / (n * n) * 100.0


def generate_maze(n: int, seed: int) -> MazeGrid:
    """Carve a braided maze; pure function of ``(n, seed)``.

    Requires even ``n >= 8``. The start (0, 0), the target (n/2, n/2),
    and a path between them are guaranteed.
    """
    if n < 8:
        raise MazeConfigError(f"maze size must be at least 8, got {n}")
    if n % 2:
        raise MazeConfigError(f"maze size must be even, got {n}")

    rng = SplitMix64(seed)
    walls = np.ones((n, n), dtype=bool)

    # Depth-first backtracker over rooms at even coordinates.
    walls[0, 0] = False
    stack = [(0, 0)]
    seen = {(0, 0)}
    while stack:
        x, y = stack[-1]
        candidates = []
        for heading in HEADINGS:
            dx, dy = DIRECTION_VECTORS[heading]
            room = (x + 2 * dx, y + 2 * dy)
            if 0 <= room[0] < n and 0 <= room[1] < n and room not in seen:
                candidates.append((heading, room))
        if not candidates:
            stack.pop()
            continue
        heading, room = candidates[rng.randbelow(len(candidates))]
        dx, dy = DIRECTION_VECTORS[heading]
        walls[x + dx, y + dy] = False
        walls[room] = False
        seen.add(room)
        stack.append(room)

    _braid_dead_ends(walls, n, rng)

    # The target area is always open, whatever the carving did.
    target = (n // 2, n // 2)
    walls[target] = False
    for heading in HEADINGS:
        dx, dy = DIRECTION_VECTORS[heading]
        cx, cy = target[0] + dx, target[1] + dy
        if 0 <= cx < n and 0 <= cy < n:
            walls[cx, cy] = False

    walls.flags.writeable = False
    grid = MazeGrid(n=n, walls=walls, target=target, seed=seed)
    if not _connected(grid, (0, 0), target):
        raise AssertionError(f"generated maze ({n}, {seed}) lost connectivity")
    return grid


def _braid_dead_ends(walls: np.ndarray, n: int, rng: SplitMix64) -> None:
    """Open the far wall behind some dead-end rooms, creating loops.

    Dead ends are detected on a snapshot of the carved maze, then each one
    independently braids with probability BRAID_PROBABILITY. The opened
    wall prefers the direction opposite the room's single opening.
    """
    dead_ends = []
    for x in range(0, n, 2):
        for y in range(0, n, 2):
            open_dirs = [
                h
                for h in HEADINGS
                if 0 <= x + DIRECTION_VECTORS[h][0] < n
                and 0 <= y + DIRECTION_VECTORS[h][1] < n
                and not walls[x + DIRECTION_VECTORS[h][0], y + DIRECTION_VECTORS[h][1]]
            ]
            if len(open_dirs) == 1:
                dead_ends.append(((x, y), open_dirs[0]))

    opposite = {EAST: WEST, WEST: EAST, NORTH: SOUTH, SOUTH: NORTH}
    for (x, y), open_dir in dead_ends:
        if rng.random() >= BRAID_PROBABILITY:
            continue
        candidates = []
        for h in HEADINGS:
            dx, dy = DIRECTION_VECTORS[h]
            wall = (x + dx, y + dy)
            beyond = (x + 2 * dx, y + 2 * dy)
            if (
                0 <= beyond[0] < n
                and 0 <= beyond[1] < n
                and walls[wall]
                and not walls[beyond]
            ):
                candidates.append(h)
        if not candidates:
            continue
        pick = opposite[open_dir] if opposite[open_dir] in candidates else candidates[0]
        dx, dy = DIRECTION_VECTORS[pick]
        walls[x + dx, y + dy] = False


def _connected(maze: MazeGrid, a: Position, b: Position) -> bool:
    if maze.walls[a] or maze.walls[b]:
        return False
    frontier = deque([a])
    seen = {a}
    while frontier:
        x, y = frontier.popleft()
        if (x, y) == b:
            return True
        for heading in HEADINGS:
            dx, dy = DIRECTION_VECTORS[heading]
            cell = (x + dx, y + dy)
            if (
                maze.in_bounds(cell[0], cell[1])
                and not maze.walls[cell]
                and cell not in seen
            ):
                seen.add(cell)
                frontier.append(cell)
    return False


def to_text(maze: MazeGrid) -> str:
    lines = [f"{maze.n} {maze.seed}"]
    for x in range(maze.n):
        row = []
        for y in range(maze.n):
            if (x, y) == (0, 0):
                row.append("S")
            elif (x, y) == maze.target:
                row.append("T")
            elif maze.walls[x, y]:
                row.append("#")
            else:
                row.append(".")
        lines.append("".join(row))
    return "\n".join(lines) + "\n"


def from_text(text: str) -> MazeGrid:
    lines = text.splitlines()
    if not lines:
        raise MazeFormatError("empty maze text")
    header = lines[0].split()
    if len(header) != 2:
        raise MazeFormatError(f"bad header line: {lines[0]!r}")
    try:
        n, seed = int(header[0]), int(header[1])
    except ValueError as exc:
        raise MazeFormatError(f"bad header line: {lines[0]!r}") from exc
    body = lines[1:]
    if len(body) != n:
        raise MazeFormatError(f"expected {n} rows, got {len(body)}")

    walls = np.zeros((n, n), dtype=bool)
    start_seen = target_seen = None
    for x, row in enumerate(body):
        if len(row) != n:
            raise MazeFormatError(f"row {x} has length {len(row)}, expected {n}")
        for y, ch in enumerate(row):
            if ch == "#":
                walls[x, y] = True
            elif ch == "S":
                start_seen = (x, y)
            elif ch == "T":
                target_seen = (x, y)
            elif ch != ".":
                raise MazeFormatError(f"unknown cell character {ch!r} at ({x}, {y})")
    if start_seen != (0, 0):
        raise MazeFormatError(f"start marker must sit at (0, 0), found {start_seen}")
    if target_seen != (n // 2, n // 2):
        raise MazeFormatError(
            f"target marker must sit at ({n // 2}, {n // 2}), found {target_seen}"
        )
    walls.flags.writeable = False
    return MazeGrid(n=n, walls=walls, target=target_seen, seed=seed)


def save_maze(maze: MazeGrid, path) -> None:
    Path(path).write_text(to_text(maze))


def load_maze(path) -> MazeGrid:
    return from_text(Path(path).read_text())


def trajectory_to_text(positions) -> str:
    """Position sequence as newline-separated "x,y" pairs (golden-file form)."""
    return "\n".join(f"{x},{y}" for x, y in positions) + "\n"


def trajectory_from_text(text: str) -> list:
    positions = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        parts = line.split(",")
        if len(parts) != 2:
            raise MazeFormatError(f"bad trajectory line {lineno}: {line!r}")
        positions.append((int(parts[0]), int(parts[1])))
    return positions
