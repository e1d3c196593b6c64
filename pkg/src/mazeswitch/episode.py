"""One agent run: variant wiring, step loop, decision cadence, logging.

An episode walks the coverage policy from (0, 0). Variants with a
convergence mode watch the coverage percentage after every step and
switch permanently to A* pathfinding once it reaches the active
threshold: 40% for fixed variants, the most recently selected action for
learning variants (initialized to 40% until the first decision).

Learning variants take a threshold decision every ``decision_period``
steps while still exploring: discretize the current progress, select an
action epsilon-greedily, adopt it as the active threshold, then credit
the previous decision with the shaped interval reward. A decision that
sets the threshold at or below current coverage triggers the switch
immediately. After the episode ends, one terminal update credits the
last decision with the full terminal reward.

The episode ends on reaching the target (success) or on the step limit
(default 4 * n * n). Replans during convergence add knowledge but do not
move the agent and therefore do not consume steps.

Everything is a pure function of the config, so runs replay exactly and
suites may execute episodes concurrently.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Optional

from .grid import KnowledgeMap, coverage_percent, generate_maze, manhattan
from .pathfind import StepOutcome, astar_plan, follow_plan
from .qlearn import (
    QTable,
    RewardBreakdown,
    StateId,
    decision_reward,
    discretize,
    q_update,
    select_action,
    switching_component,
    terminal_reward,
)
from .spiral import (
    DEFAULT_SAMPLE_STRIDE,
    FULL_MEMORY,
    SENTINEL,
    SpiralState,
    record_visit,
    spiral_next,
)

FIXED_THRESHOLD = 40.0
DEFAULT_DECISION_PERIOD = 50

SUCCESS = "success"
STEP_LIMIT_EXCEEDED = "step_limit_exceeded"

BASES = ("spiral", "sentinel")
CONVERGENCE_MODES = ("none", "fixed", "rl")


@dataclass(frozen=True)
class VariantSpec:
    base: str
    convergence: str

    def __post_init__(self):
        if self.base not in BASES:
            raise ValueError(f"unknown base policy {self.base!r}")
        if self.convergence not in CONVERGENCE_MODES:
            raise ValueError(f"unknown convergence mode {self.convergence!r}")

    @property
    def name(self) -> str:
        if self.convergence == "none":
            return self.base
        suffix = "conv" if self.convergence == "fixed" else "rl"
        return f"{self.base}_{suffix}"


VARIANTS = {
    variant.name: variant
    for variant in (
        VariantSpec(base, convergence)
        for base in BASES
        for convergence in CONVERGENCE_MODES
    )
}

VARIANT_ORDER = tuple(VARIANTS)


@dataclass(frozen=True)
class EpisodeConfig:
    n: int
    maze_seed: int
    variant: VariantSpec
    rl_seed: int = 0
    step_limit: Optional[int] = None  # defaults to 4 * n * n
    decision_period: int = DEFAULT_DECISION_PERIOD

    def __post_init__(self):
        if self.step_limit is not None and self.step_limit <= 0:
            raise ValueError("step_limit must be positive")
        if self.decision_period <= 0:
            raise ValueError("decision_period must be positive")

    @property
    def resolved_step_limit(self) -> int:
        return self.step_limit if self.step_limit is not None else 4 * self.n * self.n


@dataclass
class DecisionRecord:
    step: int
    state_index: int
    action: int
    reward: float


@dataclass
class EpisodeLog:
    config: EpisodeConfig
    outcome: str
    total_steps: int
    final_coverage: float
    role_switches: int
    switch_step: Optional[int]
    switch_coverage: Optional[float]
    trajectory: list
    decisions: list
    terminal_state_index: Optional[int] = None
    terminal_decision_reward: Optional[float] = None
    terminal_reward: Optional[RewardBreakdown] = None
    q_values: Optional[list] = None


def run_episode(cfg: EpisodeConfig) -> EpisodeLog:
    maze = generate_maze(cfg.n, cfg.maze_seed)
    n = cfg.n
    limit = cfg.resolved_step_limit
    target = maze.target
    learning = cfg.variant.convergence == "rl"

    knowledge = KnowledgeMap()
    state = SpiralState(
        memory=FULL_MEMORY if cfg.variant.base == "spiral" else SENTINEL,
        sample_stride=DEFAULT_SAMPLE_STRIDE,
    )
    pos = (0, 0)
    record_visit(state, knowledge, pos)
    knowledge.observe_surroundings(maze, pos)
    trajectory = [pos]

    threshold: Optional[float] = None
    if cfg.variant.convergence in ("fixed", "rl"):
        threshold = FIXED_THRESHOLD

    q = QTable(cfg.rl_seed) if learning else None
    decisions: list[DecisionRecord] = []
    last_decision: Optional[tuple[StateId, int]] = None
    # The reference snapshot is pinned to (0 steps, 0 coverage) so interval
    # rewards telescope exactly to the terminal total.
    prev_snapshot = (0, 0.0)

    in_coverage = True
    switch_step: Optional[int] = None
    switch_coverage: Optional[float] = None
    plan = None
    replans = 0
    steps = 0
    outcome = STEP_LIMIT_EXCEEDED

    while steps < limit:
        if in_coverage:
            # The walker senses all four neighbours on arrival itself.
            pos, state = spiral_next(state, maze, knowledge)
            steps += 1
            trajectory.append(pos)
            if pos == target:
                outcome = SUCCESS
                break
            if threshold is None:
                continue
            coverage = coverage_percent(knowledge, n)
            if coverage >= threshold:
                in_coverage = False
                switch_step, switch_coverage = steps, coverage
                continue
            if learning and steps % cfg.decision_period == 0:
                state_id = discretize(coverage, manhattan(pos, target), n)
                action = select_action(q, state_id)
                threshold = float(action)
                reward = decision_reward(prev_snapshot, (steps, coverage), limit)
                decisions.append(
                    DecisionRecord(steps, state_id.index, action, reward)
                )
                if last_decision is not None:
                    q_update(q, last_decision[0], last_decision[1], reward, state_id)
                last_decision = (state_id, action)
                prev_snapshot = (steps, coverage)
                if coverage >= threshold:
                    in_coverage = False
                    switch_step, switch_coverage = steps, coverage
        else:
            if plan is None:
                plan = astar_plan(pos, target, knowledge, n)
                if plan is None:
                    raise AssertionError(f"no optimistic path from {pos} to {target}")
            pos, step_outcome = follow_plan(plan, maze, knowledge)
            if step_outcome is StepOutcome.REPLAN_NEEDED:
                plan = None
                replans += 1
                if replans > n * n:
                    raise AssertionError("replanning failed to make progress")
                continue
            steps += 1
            trajectory.append(pos)
            record_visit(state, knowledge, pos)
            knowledge.observe_surroundings(maze, pos)
            if step_outcome is StepOutcome.ARRIVED:
                outcome = SUCCESS
                break

    final_coverage = coverage_percent(knowledge, n)
    log = EpisodeLog(
        config=cfg,
        outcome=outcome,
        total_steps=steps,
        final_coverage=final_coverage,
        role_switches=0 if switch_step is None else 1,
        switch_step=switch_step,
        switch_coverage=switch_coverage,
        trajectory=trajectory,
        decisions=decisions,
    )
    if learning:
        terminal_state = discretize(final_coverage, manhattan(pos, target), n)
        bonus = (
            switching_component(switch_coverage) if switch_coverage is not None else 0.0
        )
        log.terminal_state_index = terminal_state.index
        log.terminal_decision_reward = decision_reward(
            prev_snapshot, (steps, final_coverage), limit, switch_bonus=bonus
        )
        log.terminal_reward = terminal_reward(steps, limit, final_coverage, switch_coverage)
        if last_decision is not None:
            q_update(q, last_decision[0], last_decision[1], log.terminal_reward.total, None)
        log.q_values = [[float(v) for v in row] for row in q.values]
    return log


def metrics(log: EpisodeLog) -> tuple[int, float, int, str]:
    """(steps, final coverage, role switches, outcome) projection."""
    return log.total_steps, log.final_coverage, log.role_switches, log.outcome


def to_record(log: EpisodeLog) -> dict:
    """JSON-ready dict; one of these per line makes an episode record stream."""
    cfg = log.config
    record = {
        "config": {
            "n": cfg.n,
            "maze_seed": cfg.maze_seed,
            "variant": cfg.variant.name,
            "rl_seed": cfg.rl_seed,
            "step_limit": cfg.resolved_step_limit,
            "decision_period": cfg.decision_period,
        },
        "outcome": log.outcome,
        "total_steps": log.total_steps,
        "final_coverage": log.final_coverage,
        "role_switches": log.role_switches,
        "switch": (
            None
            if log.switch_step is None
            else {"step": log.switch_step, "coverage": log.switch_coverage}
        ),
        "decisions": [
            {"step": d.step, "state": d.state_index, "action": d.action, "reward": d.reward}
            for d in log.decisions
        ],
        "terminal": None,
        "trajectory": [[x, y] for x, y in log.trajectory],
    }
    if log.terminal_reward is not None:
        record["terminal"] = {
            "state": log.terminal_state_index,
            "decision_reward": log.terminal_decision_reward,
            "r_steps": log.terminal_reward.r_steps,
            "r_coverage": log.terminal_reward.r_coverage,
            "r_switching": log.terminal_reward.r_switching,
            "total": log.terminal_reward.total,
        }
        record["q_values"] = log.q_values
    return record


def record_to_json(log: EpisodeLog) -> str:
    return json.dumps(to_record(log), sort_keys=True, separators=(",", ":"))


def config_from_record(record: dict) -> EpisodeConfig:
    cfg = record["config"]
    return EpisodeConfig(
        n=cfg["n"],
        maze_seed=cfg["maze_seed"],
        variant=VARIANTS[cfg["variant"]],
        rl_seed=cfg["rl_seed"],
        step_limit=cfg["step_limit"],
        decision_period=cfg["decision_period"],
    )
