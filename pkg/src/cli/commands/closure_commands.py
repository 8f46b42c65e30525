"""
Subclosure - Closure Command Mixin
closure and closure-nfa subcommands for SubclosureCli
"""

import logging

from src.cli.common import EXIT_OK, load_grammar, load_nfa, write_output
from src.core.closure import (build_closure_nfa, build_closure_nfa_naive, state_bound)
from src.core.closure_equiv import closed
from src.core.qnf import as_simple_qnf, to_simple_qnf
from src.core.grammar_ops import reduce
from src.models.automata import format_nfa, to_dot
from src.models.results import Direction

logger = logging.getLogger(__name__)


class ClosureCommandMixin:
    """Mixin providing the closure subcommands"""

    def add_closure_parsers(self, subparsers):
        closure = subparsers.add_parser("closure", help="subword-closure NFA of a grammar")
        closure.add_argument("grammar", help="grammar file ('-' for stdin, sample:NAME for a bundled one)")
        closure.add_argument("-o", "--output", help="NFA file to write (default: stdout)")
        closure.add_argument("--dot", metavar="PATH", help="also write a Graphviz rendering")
        closure.add_argument("--naive", action="store_true",
                             help="build without copy sharing (grammars already in simple QNF are taken as-is)")
        closure.set_defaults(handler=self.cmd_closure)

        closure_nfa = subparsers.add_parser("closure-nfa", help="close an NFA downward or upward")
        closure_nfa.add_argument("nfa", help="NFA file ('-' for stdin)")
        closure_nfa.add_argument("--dir", choices=[d.value for d in Direction], default="down")
        closure_nfa.add_argument("-o", "--output", help="NFA file to write (default: stdout)")
        closure_nfa.add_argument("--dot", metavar="PATH", help="also write a Graphviz rendering")
        closure_nfa.set_defaults(handler=self.cmd_closure_nfa)

    def cmd_closure(self, args) -> int:
        """Build the closure NFA and report its size against 2·3^(n-1)"""
        grammar = reduce(load_grammar(args.grammar))
        if args.naive:
            qnf = as_simple_qnf(grammar)
            nfa = build_closure_nfa_naive(qnf)
        else:
            qnf = to_simple_qnf(grammar)
            nfa = build_closure_nfa(qnf)
        n = qnf.nonterminal_count
        report = [f"# states: {nfa.state_count}",
                  f"# bound: 2*3^{n - 1} = {state_bound(n)} ({n} QNF nonterminals)"]
        write_output("\n".join(report) + "\n" + format_nfa(nfa), args.output)
        if args.output:
            print("\n".join(line[2:] for line in report))
        if args.dot:
            write_output(to_dot(nfa), args.dot)
        return EXIT_OK

    def cmd_closure_nfa(self, args) -> int:
        nfa = closed(load_nfa(args.nfa), Direction(args.dir))
        write_output(format_nfa(nfa), args.output)
        if args.dot:
            write_output(to_dot(nfa), args.dot)
        return EXIT_OK
