"""Goal-directed navigation under partial knowledge.

Plans assume unprobed cells are open, so the first route is nearly a
straight line. Each time the next waypoint turns out to be a wall the
agent records it, replans from where it stands, and tries again. Every
replan adds at least one wall to its map, so the loop always terminates.
"""

from mazeswitch import KnowledgeMap, generate_maze
from mazeswitch.pathfind import StepOutcome, astar_plan, follow_plan

maze = generate_maze(16, seed=1)
knowledge = KnowledgeMap()
knowledge.observe_surroundings(maze, (0, 0))

pos = (0, 0)
moves = replans = 0
print(f"walking from (0, 0) to {maze.target} with no prior wall knowledge\n")
while pos != maze.target:
    plan = astar_plan(pos, maze.target, knowledge, maze.n)
    print(f"plan of cost {plan.cost:2d} from {pos} "
          f"(knows {len(knowledge.known_walls):2d} walls)")
    while True:
        pos, outcome = follow_plan(plan, maze, knowledge)
        if outcome is StepOutcome.REPLAN_NEEDED:
            replans += 1
            break
        moves += 1
        knowledge.observe_surroundings(maze, pos)
        if outcome is StepOutcome.ARRIVED:
            break
    if outcome is StepOutcome.ARRIVED:
        break

print(f"\narrived in {moves} moves with {replans} replans")

# With full knowledge the plan is a true shortest path.
full = KnowledgeMap()
full.known_walls = {
    (x, y) for x in range(maze.n) for y in range(maze.n) if maze.walls[x, y]
}
best = astar_plan((0, 0), maze.target, full, maze.n)
print(f"shortest path with full knowledge: {best.cost} moves")
