"""Interactive sentence-by-sentence diagnosis."""

import sys
from dataclasses import replace
from typing import Iterable, Iterator, Optional, TextIO

from src.core.chart import extract_semantics, parse_il
from src.core.config import RepairConfig
from src.core.diagnose import diagnose, render
from src.core.errors import InterlanguageError
from src.core.lexicon import Lexicon
from src.core.signs import Stage

PROMPT = "> "
HELP = ":chart toggles statistics, :stage <transfer|distinct|variable|off>, :strict toggles repair, :quit"


def _stdin_lines(out: TextIO) -> Iterator[str]:
    while True:
        try:
            out.write(PROMPT)
            out.flush()
            line = input()
        except (EOFError, KeyboardInterrupt):
            out.write("\n")
            return
        yield line


class Repl:
    def __init__(
        self,
        lexicon: Lexicon,
        config: Optional[RepairConfig] = None,
        fmt: str = "text",
        stage: Optional[Stage] = None,
    ) -> None:
        self.lexicon = lexicon
        self.config = config or RepairConfig()
        self.fmt = fmt
        self.stage = stage
        self.show_chart = False
        self.strict = self.config.max_repairs == 0
        self._max_repairs = self.config.max_repairs or RepairConfig().max_repairs

    def command(self, line: str, out: TextIO) -> bool:
        """Handle a ``:`` command; False means leave the loop."""
        name, _, arg = line[1:].strip().partition(" ")
        arg = arg.strip()
        if name in ("quit", "q"):
            return False
        if name == "chart":
            self.show_chart = not self.show_chart
            out.write(f"chart statistics {'on' if self.show_chart else 'off'}\n")
        elif name == "strict":
            self.strict = not self.strict
            out.write(f"repair {'off' if self.strict else 'on'}\n")
        elif name == "stage":
            if arg in ("", "off"):
                self.stage = None
                out.write("learner simulation off\n")
            else:
                try:
                    self.stage = Stage(arg)
                except ValueError:
                    print(f"unknown stage {arg!r}", file=sys.stderr)
                else:
                    out.write(f"learner simulation at stage {self.stage.value}\n")
        else:
            out.write(HELP + "\n")
        return True

    def _simulate(self, sentence: str, out: TextIO) -> None:
        assert self.stage is not None
        result = parse_il(sentence, self.lexicon, self.stage, self.config.edge_cap)
        if result.parsed:
            for edge in result.trees:
                out.write(f"accepted at stage {self.stage.value}: {extract_semantics(edge)}\n")
        else:
            out.write(f"rejected at stage {self.stage.value}\n")
        if self.show_chart:
            out.write(f"chart: {result.stats}\n")

    def _diagnose(self, sentence: str, out: TextIO) -> None:
        config = replace(self.config, max_repairs=0 if self.strict else self._max_repairs)
        report = diagnose(sentence, self.lexicon, config)
        out.write(render(report, self.fmt))
        if self.show_chart and report.analyses is not None:
            out.write(f"strict chart: {report.analyses.strict_stats}\n")
            out.write(f"repaired chart: {report.analyses.repaired_stats}\n")

    def handle(self, line: str, out: TextIO) -> bool:
        line = line.strip()
        if not line:
            return True
        if line.startswith(":"):
            return self.command(line, out)
        try:
            if self.stage is not None:
                self._simulate(line, out)
            else:
                self._diagnose(line, out)
        except InterlanguageError as e:
            print(str(e), file=sys.stderr)
        return True

    def run(self, lines: Optional[Iterable[str]] = None, out: TextIO = sys.stdout) -> int:
        source = lines if lines is not None else _stdin_lines(out)
        for line in source:
            if not self.handle(line, out):
                break
        return 0
