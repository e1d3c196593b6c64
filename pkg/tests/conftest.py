import numpy as np
import pytest

from mazeswitch.grid import MazeGrid

ACCEPTANCE_RESULTS = []


def record_acceptance(num: int, passed: bool, detail: str) -> None:
    ACCEPTANCE_RESULTS.append((num, passed, detail))


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.write_sep("-", "acceptance criteria")
    for num, passed, detail in sorted(ACCEPTANCE_RESULTS):
        status = "PASS" if passed else "FAIL"
        terminalreporter.write_line(f"criterion {num:2d}: {status} - {detail}")


@pytest.fixture
def open_grid():
    """Wall-free grid factory for policy tests."""

    def make(n, target=None):
        walls = np.zeros((n, n), dtype=bool)
        walls.flags.writeable = False
        return MazeGrid(n=n, walls=walls, target=target or (n // 2, n // 2), seed=0)

    return make


def bfs_distance(maze, a, b):
    """Independent shortest-path oracle over passable cells."""
    from collections import deque

    if maze.walls[a] or maze.walls[b]:
        return None
    dist = {a: 0}
    queue = deque([a])
    while queue:
        x, y = queue.popleft()
        if (x, y) == b:
            return dist[(x, y)]
        for nbr in ((x, y + 1), (x + 1, y), (x, y - 1), (x - 1, y)):
            if (
                0 <= nbr[0] < maze.n
                and 0 <= nbr[1] < maze.n
                and not maze.walls[nbr]
                and nbr not in dist
            ):
                dist[nbr] = dist[(x, y)] + 1
                queue.append(nbr)
    return None


def bfs_reachable(maze, start=(0, 0)):
    """Independent reachable-set oracle."""
    from collections import deque

    seen = {start}
    queue = deque([start])
    while queue:
        x, y = queue.popleft()
        for nbr in ((x, y + 1), (x + 1, y), (x, y - 1), (x - 1, y)):
            if (
                0 <= nbr[0] < maze.n
                and 0 <= nbr[1] < maze.n
                and not maze.walls[nbr]
                and nbr not in seen
            ):
                seen.add(nbr)
                queue.append(nbr)
    return seen
