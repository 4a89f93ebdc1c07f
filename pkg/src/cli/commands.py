"""Subcommand implementations. Each returns a process exit code.

Data goes to ``out`` (stdout by default); errors and statistics go to stderr.
"""

import argparse
import json
import logging
import sys
from dataclasses import replace
from pathlib import Path
from typing import Dict, Optional, TextIO

from src.cli.batch import BatchRunner, meets, read_corpus
from src.core.chart import ParseResult, extract_semantics, parse_il, parse_strict, to_tree
from src.core.config import RepairConfig, batch_jobs
from src.core.diagnose import DiagnosisReport, diagnose, render
from src.core.errors import UnknownWordError
from src.core.generate import generate, il_vocabulary
from src.core.lexicon import Lexicon, read_lexicon
from src.core.repair import RepairStatus
from src.core.signs import LEXICAL_RULES, Language, Stage
from src.utils.text import tokenize

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_DIAGNOSED = 1
EXIT_NO_ANALYSIS = 2
EXIT_ERROR = 3


def load(args: argparse.Namespace) -> Lexicon:
    return read_lexicon(args.lexicon)


def repair_config(args: argparse.Namespace) -> RepairConfig:
    """Environment defaults, overridden by whichever flags were given."""
    base = RepairConfig.from_env()
    config = RepairConfig(
        max_repairs=base.max_repairs if getattr(args, "max_repairs", None) is None else args.max_repairs,
        beam=base.beam if getattr(args, "beam", None) is None else args.beam,
        edge_cap=base.edge_cap if getattr(args, "edge_cap", None) is None else args.edge_cap,
        repair_cost=base.repair_cost,
    )
    if getattr(args, "strict", False):
        config = replace(config, max_repairs=0)
    return config


def _stage(args: argparse.Namespace) -> Optional[Stage]:
    value = getattr(args, "stage", None)
    return Stage(value) if value else None


def _print_stats(label: str, stats: Dict[str, int]) -> None:
    parts = " ".join(f"{k}={v}" for k, v in stats.items())
    print(f"{label}: {parts}", file=sys.stderr)


def report_exit(report: DiagnosisReport) -> int:
    if report.status == RepairStatus.PARSED.value:
        return EXIT_OK
    if report.errors:
        return EXIT_DIAGNOSED
    return EXIT_NO_ANALYSIS


def cmd_parse(args: argparse.Namespace, out: TextIO = sys.stdout) -> int:
    lexicon = load(args)
    tokens = tokenize(args.sentence)
    stage = _stage(args)
    edge_cap = repair_config(args).edge_cap
    try:
        if stage is not None:
            result: ParseResult = parse_il(tokens, lexicon, stage, edge_cap)
        else:
            result = parse_strict(tokens, lexicon, args.language, edge_cap)
    except UnknownWordError as e:
        print(str(e), file=sys.stderr)
        return EXIT_NO_ANALYSIS
    if args.stats:
        _print_stats("chart", result.stats)
    if not result.parsed:
        if args.format == "machine":
            out.write(json.dumps({"sentence": args.sentence, "status": result.status.value}) + "\n")
        else:
            out.write(f"No parse for '{args.sentence}'.\n")
        return EXIT_NO_ANALYSIS
    for i, edge in enumerate(result.trees, 1):
        tree = to_tree(result.chart, edge)
        semantics = str(extract_semantics(edge))
        if args.format == "machine":
            record = {
                "sentence": args.sentence,
                "status": result.status.value,
                "tree": tree.pformat(margin=10**6),
                "semantics": semantics,
            }
            out.write(json.dumps(record, ensure_ascii=False) + "\n")
        else:
            out.write(f"{i}. {semantics}\n")
            tree.pretty_print(stream=out)
    return EXIT_OK


def _diagnose_one(sentence: str, lexicon: Lexicon, config: RepairConfig) -> DiagnosisReport:
    try:
        return diagnose(sentence, lexicon, config)
    except UnknownWordError as e:
        return DiagnosisReport(sentence.strip(), e.code.lower(), [], detail=str(e))


def cmd_diagnose(args: argparse.Namespace, out: TextIO = sys.stdout) -> int:
    lexicon = load(args)
    report = _diagnose_one(args.sentence, lexicon, repair_config(args))
    if args.stats and report.analyses is not None:
        _print_stats("strict chart", report.analyses.strict_stats)
        _print_stats("repaired chart", report.analyses.repaired_stats)
    out.write(render(report, args.format))
    return report_exit(report)


def cmd_batch(args: argparse.Namespace, out: TextIO = sys.stdout) -> int:
    lexicon = load(args)
    config = repair_config(args)
    lines = read_corpus(Path(args.corpus).read_text(encoding="utf-8"))
    jobs = args.jobs if args.jobs is not None else batch_jobs()
    runner = BatchRunner(lambda s: _diagnose_one(s, lexicon, config), jobs)
    results = runner.run([line.text for line in lines])

    counts = {"sentences": len(lines), "grammatical": 0, "diagnosed": 0, "no_analysis": 0, "mismatches": 0}
    worst = EXIT_OK
    for line, done in zip(lines, results):
        report = done.report
        if not done.ok or report is None:
            report = DiagnosisReport(line.text, "error", [], detail=done.message)
        out.write(render(report, args.format))
        code = report_exit(report)
        if code == EXIT_OK:
            counts["grammatical"] += 1
        elif code == EXIT_DIAGNOSED:
            counts["diagnosed"] += 1
        else:
            counts["no_analysis"] += 1
        if line.expected is not None and not meets(report, line.expected):
            counts["mismatches"] += 1
            print(
                f"line {line.number}: expected {line.expected.classification.value} "
                f"{line.expected.lemma or ''}".rstrip() + f", got {report.status}",
                file=sys.stderr,
            )
            code = max(code, EXIT_DIAGNOSED)
        worst = max(worst, code)
    _print_stats("batch", counts)
    return worst


def cmd_lexcheck(args: argparse.Namespace, out: TextIO = sys.stdout) -> int:
    lexicon = load(args)
    for key, value in lexicon.summary().items():
        out.write(f"{key}: {value}\n")
    for rule_id, rule in sorted(LEXICAL_RULES.items()):
        derived = sum(
            len(rule(entry, lexicon)) for entry in lexicon.entries if entry.language == Language.L1.value
        )
        out.write(f"rule {rule_id}: {derived} derived entries\n")
    return EXIT_OK


def cmd_generate(args: argparse.Namespace, out: TextIO = sys.stdout) -> int:
    lexicon = load(args)
    sentences = generate(il_vocabulary(lexicon, _stage(args)), args.max_tokens)
    for item in sentences:
        sources = sorted(f"{il}<-{l1}" for il, l1 in item.sources)
        if args.format == "machine":
            out.write(json.dumps({"sentence": item.text, "sources": sources}, ensure_ascii=False) + "\n")
        else:
            out.write(item.text + (f"\t[{', '.join(sources)}]" if sources else "") + "\n")
    return EXIT_OK


def cmd_repl(args: argparse.Namespace, out: TextIO = sys.stdout) -> int:
    from src.cli.repl import Repl

    return Repl(load(args), repair_config(args), args.format, _stage(args)).run(out=out)


COMMANDS = {
    "parse": cmd_parse,
    "diagnose": cmd_diagnose,
    "batch": cmd_batch,
    "lexcheck": cmd_lexcheck,
    "repl": cmd_repl,
    "generate": cmd_generate,
}
