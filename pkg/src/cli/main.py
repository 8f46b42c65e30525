"""
Subclosure - Command Line
Subword closures of context-free grammars: closure automata, closure
equivalence and inequivalence witnesses
"""

import argparse
import logging
import sys
from pathlib import Path
from typing import List, Optional

from src.cli.commands.bench_commands import BenchCommandMixin
from src.cli.commands.closure_commands import ClosureCommandMixin
from src.cli.commands.equiv_commands import EquivCommandMixin
from src.cli.commands.generate_commands import GenerateCommandMixin
from src.cli.common import EXIT_ERROR, WordRenderingMixin
from src.models.errors import SubclosureError
from src.utils.config import Config, get_config, set_config
from src.utils.log import configure_logging

logger = logging.getLogger(__name__)


class SubclosureCli(ClosureCommandMixin, EquivCommandMixin, GenerateCommandMixin, BenchCommandMixin,
                    WordRenderingMixin):
    """Command-line front end"""

    def __init__(self):
        self.config: Optional[Config] = None

    def build_parser(self) -> argparse.ArgumentParser:
        parser = argparse.ArgumentParser(
            prog="subclosure",
            description="Subword closures of context-free grammars")
        parser.add_argument("--config", type=Path, help="YAML configuration file")
        parser.add_argument("-v", "--verbose", action="store_true", help="debug logging on stderr")
        subparsers = parser.add_subparsers(dest="command", required=True)
        self.add_closure_parsers(subparsers)
        self.add_equiv_parsers(subparsers)
        self.add_generate_parser(subparsers)
        self.add_bench_parser(subparsers)
        return parser

    def run(self, argv: Optional[List[str]] = None) -> int:
        """Parse argv, dispatch, and map failures to exit code 2"""
        parser = self.build_parser()
        try:
            args = parser.parse_args(argv)
        except SystemExit as e:
            return int(e.code or 0)

        if args.config is not None:
            set_config(Config(args.config))
        self.config = get_config()
        configure_logging(self.config, args.verbose)

        try:
            return args.handler(args)
        except (SubclosureError, OSError, ValueError) as e:
            logger.debug("command failed", exc_info=True)
            print(f"error: {e}", file=sys.stderr)
            return EXIT_ERROR


def main():
    """Main entry point"""
    sys.exit(SubclosureCli().run())


if __name__ == "__main__":
    main()
