# core/runtime/interactive.py
from __future__ import annotations

from typing import FrozenSet, Optional, Sequence, TextIO

from rich.console import Console
from rich.table import Table

from core.graph.graph import Graph
from core.logger import BasicLogger
from core.rules.engine import GameEngine, GameResult, Outcome
from core.rules.players import CatStrategy, ConcreteMouse
from core.rules.ruleset import Observation, RuleSet


class _Terminal:
    """Reads answers line by line; an exhausted input stream ends the session."""

    def __init__(self, console: Console, stream: Optional[TextIO] = None):
        self.console = console
        self.stream = stream

    def ask(self, prompt: str) -> str:
        raw = self.console.input(f"{prompt} ", stream=self.stream)
        if self.stream is not None and raw == "":
            raise EOFError
        return raw.strip()

    def ask_vertex(self, prompt: str, allowed: Sequence[int]) -> int:
        allowed_set = set(allowed)
        while True:
            raw = self.ask(prompt)
            try:
                v = int(raw)
            except ValueError:
                v = None
            if v in allowed_set:
                return v
            self.console.print(f"[red]Illegal move {raw!r}.[/red] Legal moves: {sorted(allowed_set)}")


class HumanMouse(ConcreteMouse):
    name = "human"

    def __init__(self, terminal: _Terminal):
        self.terminal = terminal

    def choose(self, round_no: int, cat: int, cat_history: Sequence[int], legal: FrozenSet[int]) -> Optional[int]:
        if not legal:
            return None
        self.terminal.console.print(f"Round {round_no}: the cat is on [bold]{cat}[/bold]")
        return self.terminal.ask_vertex("Mouse move:", sorted(legal))


class HumanCat(CatStrategy):
    name = "human"

    def __init__(self, graph: Graph, terminal: _Terminal):
        super().__init__()
        self.graph = graph
        self.terminal = terminal
        self.round_no = 0

    def next_move(self, observation: Optional[Observation]) -> int:
        if observation is not None:
            self.terminal.console.print(f"Signal after round {self.round_no}: [bold]{observation}[/bold]")
        self.round_no += 1
        return self.terminal.ask_vertex(f"Round {self.round_no}, cat move:", list(self.graph.vertices))


class PlaySession:
    """Terminal game with a human on one side."""

    def __init__(
        self,
        graph: Graph,
        rules: RuleSet,
        max_rounds: int,
        console: Optional[Console] = None,
        stream: Optional[TextIO] = None,
    ):
        self.graph = graph
        self.rules = rules
        self.max_rounds = max_rounds
        self.console = console or Console()
        self.terminal = _Terminal(self.console, stream)
        self.logger = BasicLogger("PlaySession").get_logger()

    def human_mouse(self) -> HumanMouse:
        return HumanMouse(self.terminal)

    def human_cat(self) -> HumanCat:
        return HumanCat(self.graph, self.terminal)

    def show_graph(self) -> None:
        table = Table(title=f"Graph on {self.graph.vertex_count} vertices ({self.rules.label})")
        table.add_column("vertex", justify="right")
        table.add_column("neighbours")
        for v in self.graph.vertices:
            table.add_row(str(v), ", ".join(str(u) for u in self.graph.neighbors(v)) or "-")
        self.console.print(table)

    def play(self, cat: CatStrategy, mouse) -> Optional[GameResult]:
        self.show_graph()
        try:
            result = GameEngine(self.graph, self.rules).play(cat, mouse, self.max_rounds)
        except EOFError:
            self.console.print("\nSession ended.")
            self.logger.info("Play session ended on end of input")
            return None

        self._announce(result)
        return result

    def _announce(self, result: GameResult) -> None:
        if result.outcome is Outcome.CAT_WINS:
            self.console.print(f"[bold green]Capture in round {result.rounds_played}.[/bold green]")
        elif result.outcome is Outcome.MOUSE_NO_LEGAL_MOVE:
            self.console.print(f"[bold yellow]The mouse has no legal move in round {result.rounds_played}.[/bold yellow]")
        else:
            self.console.print(f"[bold]The mouse survived {result.rounds_played} rounds.[/bold]")

        if result.witness is not None:
            self.console.print("A mouse consistent with every signal: " + ", ".join(str(v) for v in result.witness))
