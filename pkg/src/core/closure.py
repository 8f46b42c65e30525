"""
Subclosure - Closure Construction
Epsilon-NFAs for the subword closure of grammars in simple QNF
"""

import logging
from dataclasses import dataclass
from typing import Dict, FrozenSet, List, Optional, Tuple

from src.core.graphs import reachable
from src.core.grammar_ops import dependency_sccs, reduce, terminal_reach
from src.core.qnf import SimpleQnfGrammar, to_simple_qnf
from src.models.automata import EPSILON, Nfa, Transition
from src.models.errors import InconsistencyError, StateBudgetExceeded
from src.models.grammar import Grammar
from src.utils.config import get_config

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CoefficientSets:
    """Monomials and coefficients of the productions rewriting one nonterminal"""
    quad: Tuple[Tuple[str, str], ...]
    lin: Tuple[str, ...]
    left_coef: Tuple[str, ...]
    right_coef: Tuple[str, ...]
    left_alpha: FrozenSet[str]
    right_alpha: FrozenSet[str]

    @property
    def left_factors(self) -> Tuple[str, ...]:
        """Children instantiated in copy 1"""
        return tuple(dict.fromkeys(y for y, _ in self.quad))

    @property
    def right_factors(self) -> Tuple[str, ...]:
        """Children instantiated in copy 2: right factors and linear monomials"""
        return tuple(dict.fromkeys([z for _, z in self.quad] + list(self.lin)))


def state_bound(n: int) -> int:
    """2·3^(n-1) states for n nonterminals"""
    return 2 * 3 ** (n - 1) if n >= 1 else 0


def reach_count(g: SimpleQnfGrammar, x: str) -> int:
    """Number of nonterminals reachable from x, x included"""
    rules = g.underlying.rules
    return len(reachable([x], lambda y: (s for rhs in rules[y] for s in rhs if g.underlying.is_nonterminal(s))))


def coefficient_sets(g: SimpleQnfGrammar, x: str,
                     reach: Optional[Dict[str, FrozenSet[str]]] = None) -> CoefficientSets:
    if g.is_terminal_nt(x):
        raise ValueError(f"{x} is a terminal nonterminal")
    if reach is None:
        reach = terminal_reach(g.underlying)
    quad: Dict[Tuple[str, str], None] = {}
    lin: Dict[str, None] = {}
    left: Dict[str, None] = {}
    right: Dict[str, None] = {}
    for rhs in g.underlying.rules[x]:
        if len(rhs) == 1:
            lin.setdefault(rhs[0], None)
        elif rhs[1] == x:
            left.setdefault(rhs[0], None)
        elif rhs[0] == x:
            right.setdefault(rhs[1], None)
        else:
            quad.setdefault((rhs[0], rhs[1]), None)
    return CoefficientSets(
        tuple(quad), tuple(lin), tuple(left), tuple(right),
        frozenset().union(*(reach[y] for y in left)),
        frozenset().union(*(reach[y] for y in right)))


def _bottom_up(g: SimpleQnfGrammar) -> List[str]:
    """Nonterminals with every child before its parent"""
    return [x for component in dependency_sccs(g.underlying).components for x in component]


class _Emitter:
    """Lays fragments out at integer offsets; entry at offset, exit at offset+1"""

    def __init__(self, g: SimpleQnfGrammar, shared: bool):
        self.g = g
        self.shared = shared
        reach = terminal_reach(g.underlying)
        self.coefficients: Dict[str, CoefficientSets] = {
            x: coefficient_sets(g, x, reach) for x in g.underlying.nonterminals if not g.is_terminal_nt(x)}
        self.sizes: Dict[str, int] = {}
        for x in _bottom_up(g):
            self.sizes[x] = 2 + sum(size for _, size in self._children(x))

    def _children(self, x: str) -> List[Tuple[str, int]]:
        """Child fragments of x in layout order, with their sizes"""
        if x not in self.coefficients:
            return []
        c = self.coefficients[x]
        if self.shared:
            names = list(c.left_factors) + list(c.right_factors)
        else:
            names = [s for pair in c.quad for s in pair] + list(c.lin)
        return [(y, self.sizes[y]) for y in names]

    def emit(self, top: str) -> List[Transition]:
        transitions: List[Transition] = []
        stack = [(top, 0)]
        while stack:
            x, offset = stack.pop()
            en, ex = offset, offset + 1
            if x not in self.coefficients:
                letter = self.g.letter_of[x]
                transitions.append((en, EPSILON, ex))
                if letter != EPSILON:
                    transitions.append((en, letter, ex))
                continue

            c = self.coefficients[x]
            position = offset + 2
            placed: List[int] = []
            for y, size in self._children(x):
                placed.append(position)
                stack.append((y, position))
                position += size

            if self.shared:
                copy1 = dict(zip(c.left_factors, placed))
                copy2 = dict(zip(c.right_factors, placed[len(copy1):]))
                pairs = [(copy1[y], copy2[z]) for y, z in c.quad]
                singles = [copy2[y] for y in c.lin]
            else:
                pairs = [(placed[2 * i], placed[2 * i + 1]) for i in range(len(c.quad))]
                singles = placed[2 * len(c.quad):]

            for y_at, z_at in pairs:
                transitions += [(en, EPSILON, y_at), (y_at + 1, EPSILON, z_at), (z_at + 1, EPSILON, ex)]
            for y_at in singles:
                transitions += [(en, EPSILON, y_at), (y_at + 1, EPSILON, ex)]
            transitions += [(en, a, en) for a in sorted(c.left_alpha)]
            transitions += [(ex, a, ex) for a in sorted(c.right_alpha)]
        return transitions


def _assemble(g: SimpleQnfGrammar, emitter: _Emitter) -> Nfa:
    start = g.underlying.start
    transitions = emitter.emit(start)
    return Nfa.build(emitter.sizes[start], g.underlying.terminals, transitions, [0], [0, 1], 0, 1)


def build_closure_nfa(g: SimpleQnfGrammar, max_states: Optional[int] = None) -> Nfa:
    """Subword-closure NFA sharing two copies of each child per parent"""
    if max_states is None:
        max_states = get_config().max_nfa_states
    emitter = _Emitter(g, shared=True)
    states = emitter.sizes[g.underlying.start]
    bound = state_bound(g.nonterminal_count)
    if states > bound:
        raise InconsistencyError(f"closure NFA has {states} states, above the bound {bound}")
    if states > max_states:
        raise StateBudgetExceeded("closure NFA states", max_states)
    nfa = _assemble(g, emitter)
    logger.debug("build_closure_nfa: %d nonterminals -> %d states (bound %d)",
                 g.nonterminal_count, states, bound)
    return nfa


def naive_state_count(g: SimpleQnfGrammar) -> int:
    """State count of the construction without copy sharing"""
    return _Emitter(g, shared=False).sizes[g.underlying.start]


def build_closure_nfa_naive(g: SimpleQnfGrammar, max_states: Optional[int] = None) -> Nfa:
    """Same language as build_closure_nfa, with fresh copies for every monomial occurrence"""
    if max_states is None:
        max_states = get_config().naive_max_states
    emitter = _Emitter(g, shared=False)
    states = emitter.sizes[g.underlying.start]
    if states > max_states:
        raise StateBudgetExceeded("naive closure NFA states", max_states)
    logger.debug("build_closure_nfa_naive: %d states", states)
    return _assemble(g, emitter)


def downward_nfa(g: Grammar, max_states: Optional[int] = None) -> Nfa:
    """NFA for the subword closure of L(g)"""
    return build_closure_nfa(to_simple_qnf(reduce(g)), max_states)
