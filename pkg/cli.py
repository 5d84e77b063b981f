from __future__ import annotations

import argparse
import logging
import random
import signal
import sys
from contextlib import contextmanager
from pathlib import Path
from typing import Iterator, List, Optional, TextIO

from dotenv import load_dotenv

from core.cat.errors import StrategyError
from core.cat.transition import TransitionCat, round_bound
from core.config.workbench_config import ConfigError, WorkbenchConfig
from core.graph.enumeration import enumerate_connected_graphs, enumerate_labeled_trees, random_labeled_tree
from core.graph.graph import Graph, GraphFormatError, GraphStructureError, format_graph, parse_graph
from core.graph.named import graph_from_spec, make_named
from core.logger import BasicLogger
from core.mouse.agents import PhantomAdversary
from core.mouse.consistency import AdversaryError
from core.registry import StrategyRegistry
from core.rules.engine import RuleViolationError, play_game
from core.rules.ruleset import FeedbackChannel, MovementRule, RuleSet
from core.rules.trace import format_trace
from core.runtime.interactive import PlaySession
from core.runtime.suite_runner import SuiteRunner, UnknownSuiteError
from core.runtime.suites import SUITES
from core.solver.solver import MouseWinsError, NotWinningError, SolverLimitError, solve, variant_table

# Player name that hands a side to the terminal.
HUMAN = "human"

HANDLED_ERRORS = (
    GraphFormatError,
    GraphStructureError,
    RuleViolationError,
    StrategyError,
    AdversaryError,
    SolverLimitError,
    NotWinningError,
    MouseWinsError,
    ConfigError,
    UnknownSuiteError,
    ValueError,
    OSError,
)


def _handle_sigint(signum, frame) -> None:
    print("\n[INTERRUPTED] pounce terminated by user (Ctrl+C).", file=sys.stderr)
    raise SystemExit(130)  # 130 is the conventional exit code for SIGINT


def _add_game_flags(p: argparse.ArgumentParser, graph_required: bool = True) -> None:
    p.add_argument("--graph", required=graph_required, help="Graph file or shape:param (path:5, cycle:4, t_star, ...)")
    p.add_argument(
        "--channel",
        default=FeedbackChannel.COARSE_CMP.value,
        choices=[c.value for c in FeedbackChannel],
        help="Feedback channel. Default: coarse-cmp.",
    )
    p.add_argument(
        "--movement",
        default=MovementRule.MUST_MOVE.value,
        choices=[m.value for m in MovementRule],
        help="Mouse movement rule. Default: must-move.",
    )


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pounce",
        description="pounce – workbench for the cat and mouse game with distance feedback",
    )
    parser.add_argument("--config", default=None, help="Config JSON. Default: $POUNCE_CONFIG, then built-in defaults.")
    parser.add_argument("--verbose", action="store_true", help="Log at DEBUG level.")

    sub = parser.add_subparsers(dest="command", required=True)

    # --------------------
    # verify
    # --------------------
    verify_p = sub.add_parser("verify", help="Run a verification suite")
    verify_p.add_argument("suite", choices=sorted(SUITES), help="Suite name")
    verify_p.add_argument("--n", type=int, default=None, help="Largest instance size. Default: per suite.")
    verify_p.add_argument("--out", default=None, help="Write the report here instead of stdout.")

    # --------------------
    # solve
    # --------------------
    solve_p = sub.add_parser("solve", help="Decide the winner and the optimal capture time")
    _add_game_flags(solve_p)
    solve_p.add_argument("--all-rules", action="store_true", help="Solve under every channel and movement rule.")
    solve_p.add_argument("--out", default=None)

    # --------------------
    # simulate
    # --------------------
    sim_p = sub.add_parser("simulate", help="Play one game and print its trace")
    _add_game_flags(sim_p)
    sim_p.add_argument("--cat", default="transition", help="Cat strategy, or 'human'. Default: transition.")
    sim_p.add_argument("--mouse", default="phantom-greedy", help="Mouse agent, e.g. phantom-exact, random:7 or 'human'.")
    sim_p.add_argument("--max-rounds", type=int, default=None)
    sim_p.add_argument("--out", default=None)

    # --------------------
    # gen
    # --------------------
    gen_p = sub.add_parser("gen", help="Print every labeled tree on n vertices")
    gen_p.add_argument("--n", type=int, required=True)
    gen_p.add_argument("--connected", action="store_true", help="Every connected graph instead of every tree.")
    gen_p.add_argument("--out", default=None)

    # --------------------
    # bench
    # --------------------
    bench_p = sub.add_parser("bench", help="Rounds the transition cat needs on tree families")
    bench_p.add_argument("--n", type=int, default=8, help="Largest tree order. Default: 8.")
    bench_p.add_argument("--out", default=None)

    # --------------------
    # play
    # --------------------
    play_p = sub.add_parser("play", help="Play in the terminal")
    play_p.add_argument("role", choices=["cat", "mouse"], help="Your side")
    _add_game_flags(play_p)
    play_p.add_argument("--cat", default="transition", help="Opponent cat when you play the mouse.")
    play_p.add_argument("--mouse", default="phantom-greedy", help="Opponent mouse when you play the cat.")
    play_p.add_argument("--max-rounds", type=int, default=None)

    return parser


def load_graph(spec: str) -> Graph:
    path = Path(spec)
    if path.is_file():
        with path.open("r", encoding="utf-8") as f:
            return parse_graph(f)
    return graph_from_spec(spec)


@contextmanager
def _output(out: Optional[str]) -> Iterator[TextIO]:
    if out is None:
        yield sys.stdout
        return
    with open(out, "w", encoding="utf-8") as f:
        yield f


def _emit(lines: List[str], out: Optional[str]) -> None:
    with _output(out) as f:
        for line in lines:
            f.write(line + "\n")


# ----------------------------
# Commands
# ----------------------------

def cmd_verify(args, config: WorkbenchConfig) -> int:
    report = SuiteRunner(config).run(args.suite, args.n)
    _emit(report.format_lines(), args.out)
    return 0 if report.ok else 1


def cmd_solve(args, config: WorkbenchConfig) -> int:
    g = load_graph(args.graph)
    if args.all_rules:
        rule_sets = [RuleSet(c, m) for c in FeedbackChannel for m in MovementRule]
        rows = variant_table([(args.graph, g)], rule_sets, config.solver)
        _emit([row.format_line() for row in rows], args.out)
        return 0

    rules = RuleSet.parse(args.channel, args.movement)
    _emit([solve(g, rules, config.solver).format_line(args.graph, rules)], args.out)
    return 0


def _players(args, config: WorkbenchConfig, g: Graph, rules: RuleSet, session: Optional[PlaySession]):
    if session is not None and args.cat == HUMAN:
        cat = session.human_cat()
    else:
        cat = StrategyRegistry.create_cat(args.cat, g, rules, config.solver)
    if session is not None and args.mouse == HUMAN:
        mouse = session.human_mouse()
    else:
        mouse = StrategyRegistry.create_mouse(args.mouse, g, rules, config.solver)
    return cat, mouse


def cmd_simulate(args, config: WorkbenchConfig) -> int:
    logger = BasicLogger("Simulate").get_logger()
    g = load_graph(args.graph)
    rules = RuleSet.parse(args.channel, args.movement)
    max_rounds = args.max_rounds or config.max_rounds

    if HUMAN in (args.cat, args.mouse):
        session = PlaySession(g, rules, max_rounds)
        result = session.play(*_players(args, config, g, rules, session))
        if result is None:
            return 0
    else:
        cat, mouse = _players(args, config, g, rules, None)
        result = play_game(g, rules, cat, mouse, max_rounds)

    _emit(format_trace(result), args.out)
    logger.info("outcome=%s rounds=%s", result.outcome.value, result.rounds_played)
    return 0


def cmd_gen(args, config: WorkbenchConfig) -> int:
    graphs = (
        enumerate_connected_graphs(args.n, config.enumeration_cap)
        if args.connected
        else enumerate_labeled_trees(args.n, config.enumeration_cap)
    )
    with _output(args.out) as f:
        for g in graphs:
            f.write(format_graph(g))
            f.write("\n")
    return 0


def cmd_bench(args, config: WorkbenchConfig) -> int:
    rules = RuleSet(FeedbackChannel.COARSE_CMP, MovementRule.MUST_MOVE)
    rng = random.Random(config.verify.seed)
    lines: List[str] = []

    for n in range(1, args.n + 1):
        families = [("path", make_named("path", n))]
        if n >= 2:
            families.append(("star", make_named("star", n - 1)))
        if n >= 4 and (n - 1) % 3 == 0:
            families.append(("spider", make_named("spider", (n - 1) // 3)))
        families.append(("random", random_labeled_tree(n, rng)))

        for family, tree in families:
            cat = TransitionCat(tree)
            result = play_game(tree, rules, cat, PhantomAdversary(tree, rules), round_bound(n))
            t1, t2, t3, t4 = cat.state.counters
            lines.append(
                f"family={family} n={n} rounds={result.rounds_played} bound={round_bound(n)} "
                f"t1={t1} t2={t2} t3={t3} t4={t4}"
            )

    _emit(lines, args.out)
    return 0


def cmd_play(args, config: WorkbenchConfig) -> int:
    g = load_graph(args.graph)
    rules = RuleSet.parse(args.channel, args.movement)
    session = PlaySession(g, rules, args.max_rounds or config.max_rounds)

    if args.role == "mouse":
        args.mouse = HUMAN
    else:
        args.cat = HUMAN
    session.play(*_players(args, config, g, rules, session))
    return 0


COMMANDS = {
    "verify": cmd_verify,
    "solve": cmd_solve,
    "simulate": cmd_simulate,
    "gen": cmd_gen,
    "bench": cmd_bench,
    "play": cmd_play,
}


def main(argv: list[str] | None = None) -> int:
    # Register Ctrl+C handler as early as possible
    signal.signal(signal.SIGINT, _handle_sigint)

    load_dotenv()

    args = _build_parser().parse_args(argv)

    try:
        config = WorkbenchConfig.load(args.config)
        BasicLogger.configure(
            level=logging.DEBUG if args.verbose else logging.getLevelName(config.log.level.upper()),
            log_to_file=config.log.to_file,
            log_dir=config.log.log_dir,
            log_file=config.log.log_file,
        )
        return COMMANDS[args.command](args, config)
    except HANDLED_ERRORS as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
