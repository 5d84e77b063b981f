# core/runtime/suites.py
from __future__ import annotations

import random
from dataclasses import dataclass, field, replace
from typing import Callable, Dict, List, Optional, Tuple

from core.cat.errors import StrategyError
from core.cat.forest import ForestCat
from core.cat.scripted import RandomCat, SeagerDemoCat, TStarWeakenedCat
from core.cat.solver_cat import SolverCat
from core.cat.transition import TransitionCat, accounting_violation, event_violation, round_bound
from core.config.workbench_config import SolverLimits, WorkbenchConfig
from core.graph.enumeration import (
    contains_t_star_subtree,
    enumerate_connected_graphs,
    enumerate_labeled_trees,
    enumerate_unlabeled_graphs,
    random_labeled_tree,
)
from core.graph.graph import Graph, is_forest, spanning_forest
from core.graph.named import make_named
from core.mouse.agents import AdversaryMode, CycleMouse, PathMouse, PhantomAdversary, RandomMouse
from core.mouse.consistency import ConsistencySet, SuccessorModel, update_consistency
from core.rules.engine import GameResult, Outcome, play_game
from core.rules.players import CatStrategy
from core.rules.ruleset import (
    MAIN_GAME,
    ORIGINAL_GAME,
    SEAGER_DEMO_GAME,
    FeedbackChannel,
    MovementRule,
    Observation,
    RuleSet,
    feedback,
    legal_mouse_moves,
)
from core.rules.trace import validate_trace
from core.solver.audit import StrategyAudit, explore_cat_strategy
from core.solver.solver import SolverLimitError, solve, solve_game


# ----------------------------
# Report
# ----------------------------

@dataclass
class SuiteReport:
    suite: str
    n_max: int
    instances: int = 0
    failures: List[Tuple[str, str]] = field(default_factory=list)
    stats: Dict[str, int] = field(default_factory=dict)
    rows: List[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def fail(self, instance: str, reason: str) -> None:
        self.failures.append((instance, reason))

    def bump(self, key: str, value: int) -> None:
        self.stats[key] = max(self.stats.get(key, value), value)

    def format_lines(self) -> List[str]:
        lines = [f"suite={self.suite} n_max={self.n_max} instances={self.instances} failures={len(self.failures)}"]
        lines.extend(self.rows)
        lines.extend(f"stat {key}={value}" for key, value in sorted(self.stats.items()))
        lines.extend(f"failure instance={name} reason={reason}" for name, reason in sorted(self.failures))
        lines.append(f"status={'ok' if self.ok else 'fail'}")
        return lines


def instance_name(label: str, g: Graph) -> str:
    edges = ",".join(f"{u}-{v}" for u, v in g.canonical_edges())
    return f"{label}[n={g.vertex_count};{edges}]"


def _check_witness(report: SuiteReport, name: str, g: Graph, rules: RuleSet, result: GameResult) -> None:
    verdict = validate_trace(g, rules, result.omniscient_trace())
    if not verdict:
        report.fail(name, f"witness rejected at round {verdict.round}: {verdict.reason}")


def _check_transition_audit(report: SuiteReport, name: str, audit: StrategyAudit, n: int) -> None:
    if audit.violations:
        report.fail(name, audit.violations[0][1])
        return
    if not audit.all_captured:
        report.fail(name, "some mouse trajectory is never captured")
        return

    report.bump("max_rounds", audit.worst_rounds)
    if audit.worst_tally is not None:
        excess, t2, t3, t4 = audit.worst_tally
        for key, value in (("max_t2", t2), ("max_t3", t3), ("max_t4", t4)):
            report.bump(key, value)
        reason = accounting_violation(excess + t2 + t3 + t4, t2, t3, t4, n, audit.worst_rounds)
        if reason is not None:
            report.fail(name, reason)


class _RestartingCat(CatStrategy):
    """Starts a fresh copy of a strategy whenever it gives up, so games run to the horizon."""

    name = "restarting"

    def __init__(self, factory: Callable[[], CatStrategy]):
        super().__init__()
        self.factory = factory
        self.inner = factory()
        self.restarts = 0

    def next_move(self, observation: Optional[Observation]) -> int:
        try:
            return self.inner.next_move(observation)
        except StrategyError:
            self.restarts += 1
            self.inner = self.factory()
            return self.inner.next_move(None)


# ----------------------------
# Suites
# ----------------------------

def suite_tree_bound(n_max: int, config: WorkbenchConfig) -> SuiteReport:
    """Transition cat against every mouse on every labeled tree, then sampled and random games."""
    report = SuiteReport("tree-bound", n_max)

    for n in range(1, n_max + 1):
        for tree in enumerate_labeled_trees(n, config.enumeration_cap):
            report.instances += 1
            audit = explore_cat_strategy(tree, MAIN_GAME, TransitionCat(tree), round_bound(n))
            _check_transition_audit(report, instance_name("tree", tree), audit, n)

    verify = config.verify
    rng = random.Random(verify.seed)
    sample_n = n_max + 1
    for k in range(verify.sampled_trees):
        tree = random_labeled_tree(sample_n, rng)
        name = instance_name(f"sampled{k}", tree)
        report.instances += 1
        cat = TransitionCat(tree)
        result = play_game(tree, MAIN_GAME, cat, PhantomAdversary(tree, MAIN_GAME), round_bound(sample_n))
        _check_game(report, name, tree, cat, result, sample_n)
        _check_witness(report, name, tree, MAIN_GAME, result)

    for k in range(verify.random_games):
        tree = random_labeled_tree(rng.randint(1, n_max), rng)
        name = instance_name(f"random{k}", tree)
        report.instances += 1
        cat = TransitionCat(tree)
        result = play_game(tree, MAIN_GAME, cat, RandomMouse(verify.seed + k), round_bound(tree.vertex_count))
        _check_game(report, name, tree, cat, result, tree.vertex_count)

    return report


def _check_game(report: SuiteReport, name: str, tree: Graph, cat: TransitionCat, result: GameResult, n: int) -> None:
    if not result.outcome.cat_succeeded:
        report.fail(name, f"mouse survived {result.rounds_played} rounds")
        return
    s = cat.state
    reason = accounting_violation(s.t1, s.t2, s.t3, s.t4, n, result.rounds_played)
    if reason is not None:
        report.fail(name, reason)
    report.bump("max_rounds", result.rounds_played)


def suite_cycles(n_max: int, config: WorkbenchConfig) -> SuiteReport:
    """The mouse wins on every connected graph with a cycle; the cycle mouse is never caught."""
    report = SuiteReport("cycles", n_max)

    for n in range(3, n_max + 1):
        for g in enumerate_connected_graphs(n, config.enumeration_cap):
            if is_forest(g):
                continue
            report.instances += 1
            result = solve(g, MAIN_GAME, config.solver)
            report.bump("max_states", result.states_explored)
            if result.cat_wins:
                report.fail(instance_name("graph", g), f"solver says the cat wins in {result.optimal_rounds}")

    horizon = config.verify.cycle_horizon
    seeds = range(config.verify.seed, config.verify.seed + max(1, config.verify.random_games // 100))
    samples: List[Tuple[str, Graph]] = [(f"cycle:{n}", make_named("cycle", n)) for n in range(3, n_max + 1)]
    samples.append(("triangle+pendant", Graph.from_edges(4, [(0, 1), (1, 2), (2, 0), (2, 3)])))

    for label, g in samples:
        cycle = is_forest(g).cycle
        forest = spanning_forest(g)
        opponents: List[Tuple[str, CatStrategy]] = [
            ("forest-on-spanning-forest", _RestartingCat(lambda: ForestCat(forest, MAIN_GAME))),
        ]
        opponents.extend((f"random:{s}", RandomCat(g, s)) for s in seeds)

        for cat_name, cat in opponents:
            report.instances += 1
            result = play_game(g, MAIN_GAME, cat, CycleMouse(g, MAIN_GAME, cycle), horizon)
            if result.outcome is not Outcome.MOUSE_SURVIVED_HORIZON:
                report.fail(f"{label}/{cat_name}", f"cycle mouse caught in round {result.rounds_played}")

    return report


def suite_original_game(n_max: int, config: WorkbenchConfig) -> SuiteReport:
    """Binary feedback: the mouse wins on T*, the cat wins on every small tree."""
    report = SuiteReport("original-game", n_max)
    t_star = make_named("t_star")

    report.instances += 1
    result = solve(t_star, ORIGINAL_GAME, config.solver)
    report.rows.append(result.format_line("t_star", ORIGINAL_GAME))
    if result.cat_wins:
        report.fail("t_star", "solver says the cat wins")
    if not contains_t_star_subtree(t_star):
        report.fail("t_star", "T* not found inside itself")

    for n in range(1, n_max + 1):
        for tree in enumerate_labeled_trees(n, config.enumeration_cap):
            report.instances += 1
            result = solve(tree, ORIGINAL_GAME, config.solver)
            report.bump("max_rounds", result.optimal_rounds or 0)
            if not result.cat_wins and not contains_t_star_subtree(tree):
                report.fail(instance_name("tree", tree), "mouse wins on a T*-free tree")

    return report


def _t_star_limits(limits: SolverLimits) -> SolverLimits:
    return replace(limits, max_vertices=max(limits.max_vertices, 10))


def suite_tstar_weakened(n_max: int, config: WorkbenchConfig) -> SuiteReport:
    """Coarse-only and comparison-only feedback still let the cat win on T*."""
    report = SuiteReport("tstar-weakened", n_max)
    t_star = make_named("t_star")

    for channel in (FeedbackChannel.COARSE, FeedbackChannel.CMP_ONLY):
        rules = RuleSet(channel, MovementRule.MUST_MOVE)

        report.instances += 1
        audit = explore_cat_strategy(t_star, rules, TStarWeakenedCat(t_star, rules), config.max_rounds)
        if not audit.ok:
            reason = audit.violations[0][1] if audit.violations else "some trajectory escapes the script"
            report.fail(f"t_star/{channel.value}/script", reason)
        report.bump(f"script_rounds_{channel.value}", audit.worst_rounds)

        report.instances += 1
        try:
            result = solve(t_star, rules, _t_star_limits(config.solver))
        except SolverLimitError as e:
            report.fail(f"t_star/{channel.value}/solver", e.message)
            continue
        report.rows.append(result.format_line("t_star", rules))
        if not result.cat_wins:
            report.fail(f"t_star/{channel.value}/solver", "solver says the mouse wins")

    return report


def surviving_trajectories(g: Graph, rules: RuleSet, cat_moves: List[int]) -> List[Tuple[int, ...]]:
    """Every legal mouse trajectory that avoids the fixed cat moves, by plain enumeration."""
    alive: List[Tuple[int, ...]] = [(m,) for m in g.vertices if m != cat_moves[0]]
    for i in range(1, len(cat_moves)):
        alive = [
            path + (m,)
            for path in alive
            for m in sorted(legal_mouse_moves(rules, g, path[-1], cat_moves[i - 1]))
            if m != cat_moves[i]
        ]
    return alive


def suite_seager_demo(n_max: int, config: WorkbenchConfig) -> SuiteReport:
    """Seven fixed moves clear T* when the mouse may not step onto the cat's last vertex."""
    report = SuiteReport("seager-demo", n_max)
    t_star = make_named("t_star")
    script = SeagerDemoCat(t_star).script

    report.instances += 1
    survivors = surviving_trajectories(t_star, SEAGER_DEMO_GAME, script)
    report.rows.append(f"rules={SEAGER_DEMO_GAME.label} survivors={len(survivors)}")
    if survivors:
        report.fail("t_star/avoid-cat", f"trajectory {survivors[0]} survives")

    report.instances += 1
    audit = explore_cat_strategy(t_star, SEAGER_DEMO_GAME, SeagerDemoCat(t_star), len(script))
    if not audit.ok:
        report.fail("t_star/avoid-cat/phantom", "phantom adversary outlives the script")

    relaxed = RuleSet(SEAGER_DEMO_GAME.feedback_channel, MovementRule.MUST_MOVE)
    report.instances += 1
    survivors = surviving_trajectories(t_star, relaxed, script)
    report.rows.append(f"rules={relaxed.label} survivors={len(survivors)}")
    if not survivors:
        report.fail("t_star/must-move", "script also wins without the avoid-cat restriction")

    return report


def suite_accounting(n_max: int, config: WorkbenchConfig) -> SuiteReport:
    """Transition events and counters of games against the greedy phantom on every tree."""
    report = SuiteReport("accounting", n_max)

    for n in range(1, n_max + 1):
        for tree in enumerate_labeled_trees(n, config.enumeration_cap):
            name = instance_name("tree", tree)
            report.instances += 1
            cat = TransitionCat(tree)
            result = play_game(tree, MAIN_GAME, cat, PhantomAdversary(tree, MAIN_GAME), round_bound(n))

            _check_game(report, name, tree, cat, result, n)
            _check_witness(report, name, tree, MAIN_GAME, result)
            for key, value in zip(("max_t1", "max_t2", "max_t3", "max_t4"), cat.state.counters):
                report.bump(key, value)

            events = list(cat.events)
            for k, event in enumerate(events):
                reason = event_violation(event)
                if reason is not None:
                    report.fail(name, f"round {event.start_round}: {reason}")
                    break
                if event.type == 1 and k + 1 < len(events) and events[k + 1].type == 1:
                    report.fail(name, f"round {event.start_round}: type 1 followed by type 1")
                    break
                # Types 1 and 4 end with a reading of 2+ at the reference
                closing = event.start_round + event.j
                if event.type in (1, 4) and closing <= len(result.trace):
                    if result.trace[closing - 1].observation.class_token() != "2+":
                        report.fail(name, f"round {closing}: type {event.type} closed without a 2+ reading")
                        break

    return report


def suite_consistency_oracle(n_max: int, config: WorkbenchConfig) -> SuiteReport:
    """Iterated consistency updates against plain trajectory enumeration."""
    report = SuiteReport("consistency-oracle", n_max)
    depth = config.verify.oracle_depth
    rule_sets = [RuleSet(c, m) for c in FeedbackChannel for m in MovementRule]

    for g in enumerate_unlabeled_graphs(n_max):
        for rules in rule_sets:
            report.instances += 1
            mismatch = _oracle_mismatch(g, rules, depth)
            if mismatch is not None:
                report.fail(f"{instance_name('graph', g)}/{rules.label}", mismatch)

    return report


def _oracle_mismatch(g: Graph, rules: RuleSet, depth: int) -> Optional[str]:
    model = SuccessorModel.for_game(g, rules)
    seen = set()

    def walk(s: ConsistencySet, paths: List[Tuple[Tuple[int, ...], Tuple[int, ...]]]) -> Optional[str]:
        # paths: (mouse positions, cat moves) so far, one entry per trajectory
        if s.round >= depth:
            return None
        ends = frozenset((p[-1], model.distance(cats[-1], p[-1])) for p, cats in paths) if paths else None
        key = (s.round, ends, s.last_cat)
        if key in seen:
            return None
        seen.add(key)

        for c in g.vertices:
            grouped: Dict[Observation, List[Tuple[Tuple[int, ...], Tuple[int, ...]]]] = {}
            if not paths:
                for m in g.vertices:
                    obs = feedback(rules, model.distance(c, m), None)
                    grouped.setdefault(obs, []).append(((m,), (c,)))
            else:
                for p, cats in paths:
                    d_prev = model.distance(cats[-1], p[-1])
                    for m in legal_mouse_moves(rules, g, p[-1], cats[-1]):
                        obs = feedback(rules, model.distance(c, m), d_prev)
                        grouped.setdefault(obs, []).append((p + (m,), cats + (c,)))

            candidates = set(grouped) | set(model.successors(s.elements, c, s.last_cat))
            for obs in sorted(candidates, key=lambda o: o.sort_key):
                nxt = update_consistency(s, g, rules, c, obs)
                brute = frozenset((p[-1], model.distance(c, p[-1])) for p, _ in grouped.get(obs, []))
                if (nxt.elements or frozenset()) != brute:
                    moves = [cat for cat, _ in s.history] + [c]
                    return f"cats={moves} obs={obs}: {sorted(nxt.elements or ())} != {sorted(brute)}"
                if brute and not obs.is_capture:
                    found = walk(nxt, grouped[obs])
                    if found is not None:
                        return found
        return None

    return walk(ConsistencySet.initial(g, rules), [])


def suite_solver_consistency(n_max: int, config: WorkbenchConfig) -> SuiteReport:
    """Solver cat against the exact phantom, channel monotonicity, and the transition cat's gap."""
    report = SuiteReport("solver-consistency", n_max)
    chain = [
        FeedbackChannel.BINARY,
        FeedbackChannel.COARSE,
        FeedbackChannel.COARSE_CMP,
        FeedbackChannel.EXACT,
    ]

    for n in range(1, n_max + 1):
        for tree in enumerate_labeled_trees(n, config.enumeration_cap):
            name = instance_name("tree", tree)
            report.instances += 1

            table = solve_game(tree, MAIN_GAME, config.solver)
            optimum = table.result().optimal_rounds
            if optimum is None:
                report.fail(name, "solver says the mouse wins on a tree")
                continue

            result = play_game(
                tree,
                MAIN_GAME,
                SolverCat(tree, MAIN_GAME, config.solver),
                PhantomAdversary(tree, MAIN_GAME, AdversaryMode.EXACT, table),
                optimum + 1,
            )
            if not result.outcome.cat_succeeded or result.rounds_played != optimum:
                report.fail(name, f"game took {result.rounds_played} rounds, optimum is {optimum}")
            _check_witness(report, name, tree, MAIN_GAME, result)
            report.bump("max_optimal_rounds", optimum)

            wins = [solve(tree, RuleSet(c, MovementRule.MUST_MOVE), config.solver).cat_wins for c in chain]
            for weaker, stronger, label in zip(wins, wins[1:], chain[1:]):
                if weaker and not stronger:
                    report.fail(name, f"more information under {label.value} loses a won game")

            audit = explore_cat_strategy(tree, MAIN_GAME, TransitionCat(tree), round_bound(n))
            if audit.ok and audit.worst_rounds < optimum:
                report.fail(name, f"transition cat beats the optimum: {audit.worst_rounds} < {optimum}")

    return report


def suite_path_survival(n_max: int, config: WorkbenchConfig) -> SuiteReport:
    """Optimal capture time on paths with exact distances, and how long the path mouse lasts."""
    report = SuiteReport("path-survival", n_max)
    rules = RuleSet(FeedbackChannel.EXACT, MovementRule.MUST_MOVE)

    for n in range(2, n_max + 1):
        g = make_named("path", n)
        floor = n // 2 - 1
        report.instances += 1

        result = solve(g, rules, config.solver)
        if not result.cat_wins:
            report.fail(f"path:{n}", "solver says the mouse wins")
            continue

        game = play_game(g, rules, SolverCat(g, rules, config.solver), PathMouse(g, rules), config.max_rounds)
        report.rows.append(
            f"path n={n} optimal={result.optimal_rounds} floor={floor} path_mouse={game.rounds_played}"
        )
        if result.optimal_rounds < floor:
            report.fail(f"path:{n}", f"optimum {result.optimal_rounds} below {floor}")
        if not game.outcome.cat_succeeded or game.rounds_played < floor:
            report.fail(f"path:{n}", f"path mouse lasted {game.rounds_played} rounds, expected at least {floor}")

    return report


# ----------------------------
# Catalogue
# ----------------------------

@dataclass(frozen=True)
class SuiteSpec:
    run: Callable[[int, WorkbenchConfig], SuiteReport]
    default_n: int
    cap: Callable[[WorkbenchConfig], int]


SUITES: Dict[str, SuiteSpec] = {
    "tree-bound": SuiteSpec(suite_tree_bound, 6, lambda c: c.enumeration_cap),
    "cycles": SuiteSpec(suite_cycles, 6, lambda c: min(c.enumeration_cap, c.solver.max_vertices)),
    "original-game": SuiteSpec(
        suite_original_game, 7, lambda c: min(c.enumeration_cap, c.solver.max_vertices_positional)
    ),
    "tstar-weakened": SuiteSpec(suite_tstar_weakened, 10, lambda c: 10),
    "seager-demo": SuiteSpec(suite_seager_demo, 10, lambda c: 10),
    "accounting": SuiteSpec(suite_accounting, 6, lambda c: c.enumeration_cap),
    "consistency-oracle": SuiteSpec(suite_consistency_oracle, 5, lambda c: 7),
    "solver-consistency": SuiteSpec(
        suite_solver_consistency, 5, lambda c: min(c.enumeration_cap, c.solver.max_vertices)
    ),
    "path-survival": SuiteSpec(suite_path_survival, 9, lambda c: c.solver.max_vertices_positional),
}
