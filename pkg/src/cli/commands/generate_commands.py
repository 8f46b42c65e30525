"""
Subclosure - Generate Command Mixin
gen subcommand for SubclosureCli
"""

from src.cli.common import EXIT_OK, load_grammar, write_output
from src.core.generators import (MutationScenario, gen_blowup, gen_cube_nfa, gen_dnf_nfa, gen_lk,
                                 gen_pow2, gen_random, mutate)
from src.models.automata import format_nfa
from src.models.formula import DnfFormula
from src.models.grammar import format_grammar

FAMILIES = ("pow2", "lk", "blowup", "cube", "dnf", "random", "mutate")


class GenerateCommandMixin:
    """Mixin providing the instance generators"""

    def add_generate_parser(self, subparsers):
        gen = subparsers.add_parser("gen", help="write a generated grammar or NFA")
        gen.add_argument("family", choices=FAMILIES)
        gen.add_argument("n", type=int, nargs="?", default=1,
                         help="family parameter (nonterminal count for random)")
        gen.add_argument("-o", "--output", help="file to write (default: stdout)")
        gen.add_argument("--seed", type=int, default=0, help="seed for random and mutate")
        gen.add_argument("--formula", default="", help="DNF such as 'x0 & !x1 | x1' (dnf)")
        gen.add_argument("--vars", type=int, help="variable count of the formula (dnf)")
        gen.add_argument("--base", help="grammar file to mutate (mutate)")
        gen.add_argument("--scenario", choices=[s.value for s in MutationScenario], default="mutate")
        gen.set_defaults(handler=self.cmd_gen)

    def cmd_gen(self, args) -> int:
        family = args.family
        if family == "pow2":
            text = format_grammar(gen_pow2(args.n))
        elif family == "lk":
            text = format_grammar(gen_lk(args.n))
        elif family == "blowup":
            text = format_grammar(gen_blowup(args.n))
        elif family == "cube":
            text = format_nfa(gen_cube_nfa(args.n))
        elif family == "dnf":
            text = format_nfa(gen_dnf_nfa(DnfFormula.parse(args.formula, args.vars)))
        elif family == "random":
            text = format_grammar(gen_random(args.seed, nonterminals=max(args.n, 1)))
        else:
            if not args.base:
                raise ValueError("gen mutate needs --base GRAMMAR")
            text = format_grammar(mutate(load_grammar(args.base), MutationScenario(args.scenario), args.seed))
        write_output(text, args.output)
        return EXIT_OK
