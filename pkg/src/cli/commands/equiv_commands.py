"""
Subclosure - Equivalence Command Mixin
equiv and inequiv subcommands for SubclosureCli
"""

import logging
import sys

from src.cli.common import EXIT_DIFFERENT, EXIT_OK, load_grammar, load_language
from src.core.closure import downward_nfa
from src.core.closure_equiv import equiv_closed
from src.core.inequiv import check_inequiv
from src.models.errors import SubclosureError
from src.models.grammar import Grammar
from src.models.results import Direction, InequivConfig

logger = logging.getLogger(__name__)


class EquivCommandMixin:
    """Mixin providing closure and language comparison subcommands"""

    def add_equiv_parsers(self, subparsers):
        equiv = subparsers.add_parser("equiv", help="compare closures of two grammars or NFAs")
        equiv.add_argument("left", help="grammar or NFA file (or sample:NAME)")
        equiv.add_argument("right", help="grammar or NFA file (or sample:NAME)")
        equiv.add_argument("--dir", choices=[d.value for d in Direction], default="down")
        equiv.add_argument("--node-budget", type=int, help="maximum product pairs")
        equiv.set_defaults(handler=self.cmd_equiv)

        inequiv = subparsers.add_parser("inequiv", help="search a word telling two grammars apart")
        inequiv.add_argument("left", help="grammar file (or sample:NAME)")
        inequiv.add_argument("right", help="grammar file (or sample:NAME)")
        inequiv.add_argument("--max-depth", type=int, help="refinement depth bound")
        inequiv.add_argument("--budget", type=float, help="wall-clock budget in seconds")
        inequiv.add_argument("--node-budget", type=int, help="product pairs per closure check")
        inequiv.add_argument("--no-short-scan", action="store_true", help="skip the short-word enumeration")
        inequiv.add_argument("--jobs", type=int, help="parallel refinement tasks")
        inequiv.set_defaults(handler=self.cmd_inequiv)

    def _closure_automaton(self, path, direction: Direction):
        language = load_language(path)
        if not isinstance(language, Grammar):
            return language
        if direction is Direction.UP:
            raise SubclosureError(f"{path}: upward closures are compared for NFA inputs only")
        return downward_nfa(language)

    def cmd_equiv(self, args) -> int:
        direction = Direction(args.dir)
        left = self._closure_automaton(args.left, direction)
        right = self._closure_automaton(args.right, direction)
        verdict = equiv_closed(left, right, direction, args.node_budget)
        logger.info("explored %d product pairs", verdict.pairs_explored)
        if verdict.is_equal:
            print("equal")
            return EXIT_OK
        print(f"{verdict.side.value}\t{self.render_word(verdict.witness)}")
        return EXIT_DIFFERENT

    def cmd_inequiv(self, args) -> int:
        cfg = InequivConfig.from_config(
            self.config,
            max_depth=args.max_depth,
            budget_seconds=args.budget,
            node_budget=args.node_budget,
            scan_short_words=False if args.no_short_scan else None,
            parallel_tasks=args.jobs,
        )
        report = check_inequiv(load_grammar(args.left), load_grammar(args.right), cfg,
                               self.config.max_nfa_states)
        stats = report.stats
        summary = (f"depth={stats.depth_reached} checks={stats.closure_checks} "
                   f"inconclusive={stats.inconclusive_tasks} elapsed={stats.elapsed_seconds:.3f}s")
        if report.is_inequivalent:
            print(f"{report.side.value}\t{self.render_word(report.witness)}")
            print(f"{report.source.value} {summary}", file=sys.stderr)
            return EXIT_DIFFERENT
        print(f"maybe-equal\t{summary} reason={stats.exhausted}")
        return EXIT_OK
