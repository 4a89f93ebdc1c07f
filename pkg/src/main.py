import argparse
import logging
import sys
from typing import List, NoReturn, Optional

from src.cli.commands import COMMANDS, EXIT_ERROR
from src.core.config import debug_enabled
from src.core.errors import ConfigError, InterlanguageError, LexiconError
from src.core.signs import Language, Stage

logger = logging.getLogger("ilt")


class _Parser(argparse.ArgumentParser):
    """argparse exits 2 on usage errors; here 2 means "no analysis"."""

    def error(self, message: str) -> NoReturn:
        self.print_usage(sys.stderr)
        self.exit(EXIT_ERROR, f"{self.prog}: error: {message}\n")


def _non_negative(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {text}")
    return value


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="ilt", description="Diagnose lexical transfer errors in learner sentences.")
    parser.add_argument("-v", "--verbose", action="count", default=0, help="-v for INFO, -vv for DEBUG")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def command(name: str, help_text: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--lexicon", required=True, help="lexicon file")
        p.add_argument("--format", choices=("text", "machine"), default="text")
        return p

    def repair_flags(p: argparse.ArgumentParser) -> None:
        p.add_argument("--beam", type=_positive, default=None)
        p.add_argument("--max-repairs", type=_non_negative, default=None)
        p.add_argument("--edge-cap", type=_positive, default=None)
        p.add_argument("--strict", action="store_true", help="disable repair")
        p.add_argument("--stats", action="store_true", help="chart statistics to stderr")

    stages = [s.value for s in Stage]

    p = command("parse", "strict parse; print trees and semantics")
    p.add_argument("sentence")
    p.add_argument("--language", choices=[lang.value for lang in Language], default=Language.LT.value)
    p.add_argument("--stage", choices=stages, default=None, help="parse with a simulated learner lexicon")
    repair_flags(p)

    p = command("diagnose", "repair-parse one sentence and explain it")
    p.add_argument("sentence")
    repair_flags(p)

    p = command("batch", "diagnose a corpus file, one sentence per line")
    p.add_argument("corpus")
    p.add_argument("--jobs", type=_positive, default=None)
    repair_flags(p)

    command("lexcheck", "load and validate a lexicon")

    p = command("repl", "interactive diagnosis")
    p.add_argument("--stage", choices=stages, default=None)
    repair_flags(p)

    p = command("generate", "enumerate the sentences a learner lexicon licenses")
    p.add_argument("--stage", choices=stages, default=None)
    p.add_argument("--max-tokens", type=_positive, default=5)
    return parser


def configure_logging(verbose: int) -> None:
    if verbose >= 2 or debug_enabled():
        level = logging.DEBUG
    elif verbose == 1:
        level = logging.INFO
    else:
        level = logging.WARNING
    logging.basicConfig(stream=sys.stderr, level=level, format="%(levelname)s %(name)s: %(message)s")


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    configure_logging(args.verbose)
    try:
        return COMMANDS[args.command](args, sys.stdout)
    except (LexiconError, ConfigError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_ERROR
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_ERROR
    except ValueError as e:
        # malformed corpus annotations
        print(f"error: {e}", file=sys.stderr)
        return EXIT_ERROR
    except InterlanguageError as e:
        logger.debug("unhandled engine error", exc_info=True)
        print(f"error: {e}", file=sys.stderr)
        return EXIT_ERROR
    except KeyboardInterrupt:
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
