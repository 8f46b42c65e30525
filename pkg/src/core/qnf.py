"""
Subclosure - Quadratic Normal Form
Closure-preserving transformation of any grammar into simple QNF
"""

import logging
from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, List, Optional, Set, Tuple

from src.core.grammar_ops import (binarize_productions, dependency_sccs, reduce, size,
                                  terminal_reach)
from src.models.automata import EPSILON
from src.models.errors import InconsistencyError, QnfViolationError
from src.models.grammar import EMPTY_WORD, Grammar, Production, fresh_symbol
from src.utils.config import get_config

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SimpleQnfGrammar:
    """Grammar in simple QNF together with its A_x family.

    terminal_nt maps each letter, and EPSILON for the empty word, to the
    nonterminal whose only rule produces it.
    """
    underlying: Grammar
    terminal_nt: Dict[str, str] = field(compare=False)

    @classmethod
    def from_grammar(cls, g: Grammar) -> 'SimpleQnfGrammar':
        """Validate g and detect its A_x nonterminals"""
        ok, violations = is_simple_qnf(g)
        if not ok:
            raise QnfViolationError(violations)
        terminal_nt, _ = _terminal_nonterminals(g)
        return cls(g, {letter: names[0] for letter, names in terminal_nt.items()})

    @cached_property
    def letter_of(self) -> Dict[str, str]:
        """Inverse of terminal_nt"""
        return {x: letter for letter, x in self.terminal_nt.items()}

    def is_terminal_nt(self, x: str) -> bool:
        return x in self.letter_of

    @property
    def nonterminal_count(self) -> int:
        return len(self.underlying.nonterminals)


def _terminal_nonterminals(g: Grammar) -> Tuple[Dict[str, List[str]], Set[str]]:
    """Candidates for A_x per letter (EPSILON for the empty word) and their union"""
    found: Dict[str, List[str]] = {}
    for x in g.nonterminals:
        alternatives = g.rules[x]
        if len(alternatives) != 1:
            continue
        rhs = alternatives[0]
        if not rhs:
            found.setdefault(EPSILON, []).append(x)
        elif len(rhs) == 1 and rhs[0] in g.terminal_set:
            found.setdefault(rhs[0], []).append(x)
    return found, {x for names in found.values() for x in names}


def is_simple_qnf(g: Grammar) -> Tuple[bool, List[str]]:
    """Check shape, A_x uniqueness and acyclicity apart from self-loops"""
    violations: List[str] = []
    found, terminal_nts = _terminal_nonterminals(g)
    for letter, names in found.items():
        if len(names) > 1:
            shown = EMPTY_WORD if letter == EPSILON else letter
            violations.append(f"several nonterminals produce only {shown}: {', '.join(names)}")

    sccs = dependency_sccs(g)
    for production in g.productions:
        x, rhs = production.lhs, production.rhs
        if x in terminal_nts:
            continue
        if len(rhs) == 0 or len(rhs) > 2:
            violations.append(f"{production}: right-hand side must have one or two symbols")
            continue
        if any(s in g.terminal_set for s in rhs):
            violations.append(f"{production}: terminals may only appear in A_x rules")
            continue
        if rhs == (x,) or rhs == (x, x):
            violations.append(f"{production}: shape requires a symbol other than {x}")
            continue
        for y in rhs:
            if y != x and sccs.same_component(x, y):
                violations.append(f"{production}: {y} is not strictly below {x}")
                break
    return not violations, violations


def lift_terminals(g: Grammar) -> Grammar:
    """Replace every letter x by a fresh A_x and every epsilon rule by A_ε"""
    taken = set(g.nonterminals) | set(g.terminals)
    lifted: Dict[str, str] = {}
    for letter in g.terminals:
        lifted[letter] = fresh_symbol(f"A_{letter}", taken)
        taken.add(lifted[letter])
    lifted[EPSILON] = fresh_symbol(f"A_{EMPTY_WORD}", taken)

    productions = []
    for production in g.productions:
        rhs = tuple(lifted.get(s, s) if s in g.terminal_set else s for s in production.rhs)
        productions.append(Production(production.lhs, rhs or (lifted[EPSILON],)))
    productions += [Production(lifted[letter], (letter,)) for letter in g.terminals]
    productions.append(Production(lifted[EPSILON], ()))
    return Grammar.build(g.start, productions, g.terminals, g.nonterminals + tuple(lifted.values()))


def collapse_double_recursion(g: Grammar) -> Grammar:
    """Rewrite doubly recursive SCCs C to rep -> A_x rep | A_ε for x in Sigma_rep.

    An SCC is doubly recursive when one of its productions has two occurrences
    of members. All members are renamed to the least one.
    """
    sccs = dependency_sccs(g)
    reach = terminal_reach(g)
    found, _ = _terminal_nonterminals(g)

    rename: Dict[str, str] = {}
    for component in sccs.components:
        members = set(component)
        if any(sum(s in members for s in rhs) >= 2 for x in component for rhs in g.rules[x]):
            rep = min(component)
            rename.update({x: rep for x in component})
    if not rename:
        return g
    if EPSILON not in found:
        raise InconsistencyError("collapse_double_recursion needs lifted terminals (no A_ε)")

    productions: List[Production] = []
    emitted: Set[str] = set()
    for production in g.productions:
        rep = rename.get(production.lhs)
        if rep is None:
            productions.append(Production(production.lhs, tuple(rename.get(s, s) for s in production.rhs)))
        elif rep not in emitted:
            emitted.add(rep)
            for letter in g.terminals:
                if letter in reach[rep]:
                    productions.append(Production(rep, (found[letter][0], rep)))
            productions.append(Production(rep, (found[EPSILON][0],)))

    nonterminals = tuple(x for x in g.nonterminals if rename.get(x, x) == x)
    logger.debug("collapse: %d doubly recursive nonterminals folded into %d",
                 len(rename), len(set(rename.values())))
    return Grammar.build(rename.get(g.start, g.start), productions, g.terminals, nonterminals)


def binarize(g: Grammar) -> Grammar:
    """Right-hand sides of length at most two, via shared right chains"""
    return binarize_productions(g)


def contract_sccs(g: Grammar) -> Grammar:
    """Merge each linear SCC into its least member and drop X -> X"""
    sccs = dependency_sccs(g)
    rename: Dict[str, str] = {}
    for component in sccs.components:
        members = set(component)
        for x in component:
            for rhs in g.rules[x]:
                if sum(s in members for s in rhs) >= 2:
                    raise InconsistencyError(f"SCC {{{', '.join(component)}}} is not linear: {x} -> {' '.join(rhs)}")
        if len(component) > 1:
            rep = min(component)
            rename.update({x: rep for x in component})
    if not rename:
        return g

    grouped: Dict[str, List[Production]] = {}
    for production in g.productions:
        lhs = rename.get(production.lhs, production.lhs)
        rhs = tuple(rename.get(s, s) for s in production.rhs)
        if rhs != (lhs,):
            grouped.setdefault(lhs, []).append(Production(lhs, rhs))
    nonterminals = tuple(dict.fromkeys(rename.get(x, x) for x in g.nonterminals))
    logger.debug("contract: %d nonterminals merged into %d", len(rename), len(set(rename.values())))
    return Grammar.build(rename.get(g.start, g.start),
                         [p for productions in grouped.values() for p in productions],
                         g.terminals, nonterminals)


def to_simple_qnf(g: Grammar, growth_constant: Optional[int] = None) -> SimpleQnfGrammar:
    """reduce, lift, collapse, binarize, contract, reduce; the subword closure is preserved"""
    if growth_constant is None:
        growth_constant = get_config().growth_constant
    result = reduce(contract_sccs(binarize(collapse_double_recursion(lift_terminals(reduce(g))))))

    try:
        qnf = SimpleQnfGrammar.from_grammar(result)
    except QnfViolationError as e:
        raise InconsistencyError(f"QNF transformation produced an invalid grammar: {e}")

    bound = growth_constant * size(g) + growth_constant
    if size(result) > bound:
        logger.warning("QNF size %d exceeds %d*|G|+%d = %d", size(result), growth_constant,
                       growth_constant, bound)
    logger.debug("to_simple_qnf: size %d -> %d, %d nonterminals",
                 size(g), size(result), qnf.nonterminal_count)
    return qnf


def as_simple_qnf(g: Grammar) -> SimpleQnfGrammar:
    """g itself when it is already reduced and in simple QNF, otherwise to_simple_qnf(g)"""
    ok, _ = is_simple_qnf(g)
    if ok and reduce(g) is g:
        return SimpleQnfGrammar.from_grammar(g)
    return to_simple_qnf(g)


def growth_ratio(g: Grammar, qnf: SimpleQnfGrammar) -> float:
    """size(qnf) / (size(g) + 1), the quantity bounded by the growth constant"""
    return size(qnf.underlying) / (size(g) + 1)
