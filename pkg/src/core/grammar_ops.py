"""
Subclosure - Grammar Operations
Reduction, dependency SCCs, membership, DFA intersection and shortest words
"""

import heapq
import logging
from typing import Dict, FrozenSet, Iterable, List, Optional, Set, Tuple

from src.core.graphs import reachable, tarjan
from src.models.automata import Dfa
from src.models.errors import AlphabetError, EmptyLanguageError
from src.models.grammar import Grammar, Production, SccDecomposition, Word, fresh_symbol

logger = logging.getLogger(__name__)


def productive_nonterminals(g: Grammar) -> Set[str]:
    """Nonterminals deriving at least one terminal word"""
    productive: Set[str] = set()
    changed = True
    while changed:
        changed = False
        for production in g.productions:
            if production.lhs in productive:
                continue
            if all(s in productive or s in g.terminal_set for s in production.rhs):
                productive.add(production.lhs)
                changed = True
    return productive


def reduce(g: Grammar) -> Grammar:
    """Drop unproductive and unreachable nonterminals; the alphabet is kept"""
    productive = productive_nonterminals(g)
    if g.start not in productive:
        raise EmptyLanguageError(f"start symbol {g.start!r} derives no word")
    useful = [p for p in g.productions
              if p.lhs in productive and all(s in productive or s in g.terminal_set for s in p.rhs)]

    successors: Dict[str, Set[str]] = {}
    for production in useful:
        successors.setdefault(production.lhs, set()).update(s for s in production.rhs if s in productive)
    reach = reachable([g.start], lambda x: successors.get(x, ()))

    kept = tuple(p for p in useful if p.lhs in reach)
    nonterminals = tuple(x for x in g.nonterminals if x in reach)
    if len(kept) == len(g.productions) and len(nonterminals) == len(g.nonterminals):
        return g
    logger.debug("reduce: %d -> %d nonterminals, %d -> %d productions",
                 len(g.nonterminals), len(nonterminals), len(g.productions), len(kept))
    return Grammar(nonterminals, g.terminals, kept, g.start)


def size(g: Grammar) -> int:
    """Total number of symbols on right-hand sides"""
    return sum(len(p.rhs) for p in g.productions)


def _nonterminal_successors(g: Grammar) -> Dict[str, List[str]]:
    successors: Dict[str, Dict[str, None]] = {x: {} for x in g.nonterminals}
    for production in g.productions:
        for symbol in production.rhs:
            if g.is_nonterminal(symbol):
                successors[production.lhs].setdefault(symbol, None)
    return {x: list(ys) for x, ys in successors.items()}


def dependency_sccs(g: Grammar) -> SccDecomposition:
    """SCCs of the dependency graph, lower components first"""
    successors = _nonterminal_successors(g)
    components = tuple(tuple(c) for c in tarjan(g.nonterminals, successors.__getitem__))
    component_of = {x: i for i, component in enumerate(components) for x in component}
    return SccDecomposition(components, component_of)


def terminal_reach(g: Grammar) -> Dict[str, FrozenSet[str]]:
    """Sigma_X for every nonterminal X, computed bottom-up over the SCCs"""
    sccs = dependency_sccs(g)
    reach: Dict[str, FrozenSet[str]] = {}
    for component in sccs.components:
        members = set(component)
        letters: Set[str] = set()
        for x in component:
            for rhs in g.rules[x]:
                for symbol in rhs:
                    if symbol in g.terminal_set:
                        letters.add(symbol)
                    elif symbol not in members:
                        letters |= reach[symbol]
        frozen = frozenset(letters)
        for x in component:
            reach[x] = frozen
    return reach


def reachable_terminals(g: Grammar, x: str) -> FrozenSet[str]:
    """Terminals occurring in some sentential form derivable from x"""
    if not g.is_nonterminal(x):
        raise KeyError(f"{x!r} is not a nonterminal")
    successors = _nonterminal_successors(g)
    letters: Set[str] = set()
    for y in reachable([x], successors.__getitem__):
        for rhs in g.rules[y]:
            letters.update(s for s in rhs if s in g.terminal_set)
    return frozenset(letters)


def binarize_productions(g: Grammar) -> Grammar:
    """Language-preserving 2NF: long right-hand sides become right chains.

    Chain nonterminals are named ``<lhs>#k`` and identical suffixes share one
    chain nonterminal across the whole grammar. Unit and epsilon rules stay.
    """
    if all(len(p.rhs) <= 2 for p in g.productions):
        return g
    taken = set(g.nonterminals) | set(g.terminals)
    counters: Dict[str, int] = {}
    suffix_symbol: Dict[Tuple[str, ...], str] = {}
    chains: List[Production] = []
    rewritten: List[Production] = []

    def chain_for(lhs: str, suffix: Tuple[str, ...]) -> str:
        if suffix in suffix_symbol:
            return suffix_symbol[suffix]
        counters[lhs] = counters.get(lhs, 0) + 1
        name = fresh_symbol(f"{lhs}#{counters[lhs]}", taken)
        taken.add(name)
        suffix_symbol[suffix] = name
        rhs = suffix if len(suffix) == 2 else (suffix[0], chain_for(lhs, suffix[1:]))
        chains.append(Production(name, rhs))
        return name

    for production in g.productions:
        rhs = production.rhs
        if len(rhs) <= 2:
            rewritten.append(production)
        else:
            rewritten.append(Production(production.lhs, (rhs[0], chain_for(production.lhs, rhs[1:]))))

    chain_names = [p.lhs for p in chains]
    result = Grammar.build(g.start, rewritten + chains, g.terminals, g.nonterminals + tuple(chain_names))
    logger.debug("binarize: %d chain nonterminals added", len(chain_names))
    return result


def _nullable(g: Grammar) -> Set[str]:
    nullable: Set[str] = set()
    changed = True
    while changed:
        changed = False
        for production in g.productions:
            if production.lhs not in nullable and all(s in nullable for s in production.rhs):
                nullable.add(production.lhs)
                changed = True
    return nullable


def _check_letters(g: Grammar, word: Iterable[str]):
    foreign = sorted({x for x in word if x not in g.terminal_set})
    if foreign:
        raise AlphabetError(f"letters {foreign} are not terminals of the grammar")


def member(g: Grammar, word: Iterable[str]) -> bool:
    """CYK-style recognition over a binarized copy, unit and epsilon rules included"""
    w = tuple(word)
    _check_letters(g, w)
    b = binarize_productions(g)
    nullable = _nullable(b)
    if not w:
        return b.start in nullable

    units = [(p.lhs, p.rhs[0]) for p in b.productions if len(p.rhs) == 1]
    pairs = [(p.lhs, p.rhs[0], p.rhs[1]) for p in b.productions if len(p.rhs) == 2]
    n = len(w)
    # table[i][j] holds the symbols deriving w[i:j]
    table: List[List[Set[str]]] = [[set() for _ in range(n + 1)] for _ in range(n + 1)]
    for i in range(n + 1):
        table[i][i] = set(nullable)

    for length in range(1, n + 1):
        for i in range(n - length + 1):
            j = i + length
            cell = table[i][j]
            if length == 1:
                cell.add(w[i])
            changed = True
            while changed:
                changed = False
                for lhs, y in units:
                    if lhs not in cell and y in cell:
                        cell.add(lhs)
                        changed = True
                for lhs, y, z in pairs:
                    if lhs in cell:
                        continue
                    if any(y in table[i][k] and z in table[k][j] for k in range(i, j + 1)):
                        cell.add(lhs)
                        changed = True
    return b.start in table[0][n]


def bounded_language(g: Grammar, maxlen: int) -> FrozenSet[Word]:
    """All words of L(g) with at most maxlen letters"""
    b = binarize_productions(g)
    words: Dict[str, Set[Word]] = {x: set() for x in b.nonterminals}

    def options(symbol: str) -> Iterable[Word]:
        if symbol in b.terminal_set:
            return ((symbol,),) if maxlen >= 1 else ()
        return words[symbol]

    changed = True
    while changed:
        changed = False
        for production in b.productions:
            target = words[production.lhs]
            before = len(target)
            rhs = production.rhs
            if not rhs:
                target.add(())
            elif len(rhs) == 1:
                target.update(options(rhs[0]))
            else:
                right = list(options(rhs[1]))
                for u in list(options(rhs[0])):
                    room = maxlen - len(u)
                    target.update(u + v for v in right if len(v) <= room)
            if len(target) != before:
                changed = True
    return frozenset(words[b.start])


def shortest_word(g: Grammar) -> Optional[Word]:
    """Length-lexicographically least word of L(g), None when the language is empty.

    Knuth's generalization of Dijkstra: a nonterminal is settled once its best
    candidate is the smallest pending one. Ties follow the declared terminal order.
    """
    order = {x: i for i, x in enumerate(g.terminals)}

    def key(word: Word) -> Tuple[int, Tuple[int, ...]]:
        return len(word), tuple(order[x] for x in word)

    occurrences: Dict[str, List[int]] = {}
    pending: List[int] = []
    for index, production in enumerate(g.productions):
        nts = [s for s in production.rhs if g.is_nonterminal(s)]
        pending.append(len(nts))
        for s in nts:
            occurrences.setdefault(s, []).append(index)

    best: Dict[str, Word] = {}
    heap: List[Tuple[Tuple[int, Tuple[int, ...]], int, Word]] = []

    def push(index: int):
        production = g.productions[index]
        word = tuple(x for s in production.rhs for x in (best[s] if s in best else (s,)))
        heapq.heappush(heap, (key(word), index, word))

    for index, count in enumerate(pending):
        if count == 0:
            push(index)

    while heap:
        _, index, word = heapq.heappop(heap)
        lhs = g.productions[index].lhs
        if lhs in best:
            continue
        best[lhs] = word
        if lhs == g.start:
            break
        for dependent in occurrences.get(lhs, ()):
            pending[dependent] -= 1
            if pending[dependent] == 0:
                push(dependent)
    return best.get(g.start)


def intersect_dfa(g: Grammar, d: Dfa) -> Optional[Grammar]:
    """Triple construction for L(g) ∩ L(d), None when the intersection is empty.

    Works on a binarized copy. Letters of g missing from d's alphabet have no
    transitions, so words using them are excluded.
    """
    b = binarize_productions(g)
    states = range(d.state_count)
    # spans[X][p] = states q such that X derives some w with delta(p, w) = q
    spans: Dict[str, Dict[int, Set[int]]] = {x: {} for x in b.nonterminals}
    letter_spans: Dict[str, Dict[int, Set[int]]] = {}
    for t in b.terminals:
        letter_spans[t] = {p: {d.step(p, t)} for p in states if d.step(p, t) is not None}

    def relation(symbol: str) -> Dict[int, Set[int]]:
        return letter_spans[symbol] if symbol in letter_spans else spans[symbol]

    changed = True
    while changed:
        changed = False
        for production in b.productions:
            target = spans[production.lhs]
            rhs = production.rhs
            found: List[Tuple[int, int]] = []
            if not rhs:
                found = [(p, p) for p in states]
            elif len(rhs) == 1:
                found = [(p, q) for p, qs in relation(rhs[0]).items() for q in qs]
            else:
                left, right = relation(rhs[0]), relation(rhs[1])
                found = [(p, q) for p, rs in left.items() for r in rs for q in right.get(r, ())]
            for p, q in found:
                if q not in target.setdefault(p, set()):
                    target[p].add(q)
                    changed = True

    accepting = [f for f in sorted(d.final) if f in spans[b.start].get(d.initial, ())]
    if not accepting:
        return None

    taken = set(b.nonterminals) | set(b.terminals)
    names: Dict[Tuple[str, int, int], str] = {}

    def triple(symbol: str, p: int, q: int) -> str:
        if symbol in letter_spans:
            return symbol
        if (symbol, p, q) not in names:
            name = fresh_symbol(f"{symbol}[{p},{q}]", taken)
            taken.add(name)
            names[(symbol, p, q)] = name
        return names[(symbol, p, q)]

    start = fresh_symbol(f"{b.start}'", taken)
    taken.add(start)
    productions = [Production(start, (triple(b.start, d.initial, f),)) for f in accepting]
    for production in b.productions:
        rhs = production.rhs
        lhs_spans = spans[production.lhs]
        if not rhs:
            for p in states:
                productions.append(Production(triple(production.lhs, p, p), ()))
        elif len(rhs) == 1:
            for p, qs in sorted(relation(rhs[0]).items()):
                for q in sorted(qs):
                    productions.append(Production(triple(production.lhs, p, q), (triple(rhs[0], p, q),)))
        else:
            left, right = relation(rhs[0]), relation(rhs[1])
            for p, rs in sorted(left.items()):
                for r in sorted(rs):
                    for q in sorted(right.get(r, ())):
                        if q in lhs_spans.get(p, ()):
                            productions.append(Production(
                                triple(production.lhs, p, q),
                                (triple(rhs[0], p, r), triple(rhs[1], r, q))))

    result = reduce(Grammar.build(start, productions, b.terminals, (start,)))
    logger.debug("intersect_dfa: %d nonterminals x %d states -> %d nonterminals, size %d",
                 len(g.nonterminals), d.state_count, len(result.nonterminals), size(result))
    return result
