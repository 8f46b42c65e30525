"""
Subclosure - Inequivalence Search
Semi-decision of L(G1) != L(G2) by comparing subword closures on prefix-refined tasks
"""

import logging
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from src.core.automata import epsilon_closure, prefix_dfa, step, useful_states, word_up_dfa
from src.core.closure import downward_nfa
from src.core.closure_equiv import equiv_closed
from src.core.grammar_ops import bounded_language, intersect_dfa, member, reduce, shortest_word
from src.models.automata import Nfa
from src.models.errors import InconsistencyError, StateBudgetExceeded, TimeBudgetExceeded
from src.models.grammar import Grammar, Production, Word, format_word, fresh_symbol
from src.models.results import (Direction, InequivConfig, InequivReport, InequivStats, InequivStatus,
                                Side, WitnessSource)
from src.utils.config import get_config

logger = logging.getLogger(__name__)


def lift_witness(g: Grammar, w: Sequence[str]) -> Word:
    """Shortest word of L(g) having w as a subword"""
    intersection = intersect_dfa(g, word_up_dfa(w, g.terminals))
    if intersection is None:
        raise InconsistencyError(f"{format_word(w)} is not a subword of any word of the grammar")
    return shortest_word(intersection)


def live_prefixes(a: Nfa, depth: int) -> List[Word]:
    """Words of length depth that are prefixes of words in L(a), lexicographic in alphabet order"""
    useful = useful_states(a)
    start = epsilon_closure(a, a.initial)
    if start.isdisjoint(useful):
        return []
    layer: List[Tuple[Word, frozenset]] = [((), start)]
    for _ in range(depth):
        following = []
        for prefix, states in layer:
            for letter in a.alphabet:
                successor = step(a, states, letter)
                if not successor.isdisjoint(useful):
                    following.append((prefix + (letter,), successor))
        layer = following
    return [prefix for prefix, _ in layer]


def _order_key(letters: Sequence[str]):
    index = {x: i for i, x in enumerate(letters)}
    return lambda word: (len(word), tuple(index[x] for x in word))


def short_word_scan(g1: Grammar, g2: Grammar, maxlen: int) -> Optional[Word]:
    """Length-lexicographically least word of length <= maxlen in exactly one language"""
    letters = tuple(dict.fromkeys(g1.terminals + g2.terminals))
    difference = bounded_language(g1, maxlen) ^ bounded_language(g2, maxlen)
    if not difference:
        return None
    return min(difference, key=_order_key(letters))


@dataclass(frozen=True)
class _TaskOutcome:
    prefix: Word
    witness: Optional[Word] = None
    side: Optional[Side] = None
    source: Optional[WitnessSource] = None
    compared: bool = False
    inconclusive: bool = False


def _run_task(args) -> _TaskOutcome:
    """Compare the closures of g1 and g2 restricted to prefix·Σ*"""
    g1, g2, prefix, node_budget, closure_states, deadline = args
    if prefix:
        dfa = prefix_dfa(prefix, g1.terminals)
        t1, t2 = intersect_dfa(g1, dfa), intersect_dfa(g2, dfa)
    else:
        t1, t2 = g1, g2

    if t1 is None and t2 is None:
        return _TaskOutcome(prefix)
    if t1 is None or t2 is None:
        side = Side.RIGHT_ONLY if t1 is None else Side.LEFT_ONLY
        witness = shortest_word(t2 if t1 is None else t1)
        return _TaskOutcome(prefix, witness, side, WitnessSource.EMPTY_TASK)

    try:
        verdict = equiv_closed(downward_nfa(t1, closure_states), downward_nfa(t2, closure_states),
                               Direction.DOWN, node_budget, deadline)
    except StateBudgetExceeded as e:
        logger.debug("task %s inconclusive: %s", format_word(prefix), e)
        return _TaskOutcome(prefix, inconclusive=True)
    if verdict.is_equal:
        return _TaskOutcome(prefix, compared=True)
    # lifting inside the task grammar keeps the witness out of the other language
    containing = t1 if verdict.side is Side.LEFT_ONLY else t2
    witness = lift_witness(containing, verdict.witness)
    return _TaskOutcome(prefix, witness, verdict.side, WitnessSource.CLOSURE, compared=True)


def _over(g: Grammar, letters: Tuple[str, ...]) -> Grammar:
    """g over the terminal order letters (a superset of its own).

    Nonterminals spelled like a letter of the other grammar are renamed.
    """
    if g.terminals == letters:
        return g
    taken = set(letters) | set(g.nonterminals)
    renamed: Dict[str, str] = {}
    for x in g.nonterminals:
        if x in letters:
            renamed[x] = fresh_symbol(x, taken)
            taken.add(renamed[x])
    if renamed:
        logger.debug("renamed nonterminals %s to keep them apart from letters", renamed)
    productions = tuple(Production(renamed.get(p.lhs, p.lhs), tuple(renamed.get(s, s) for s in p.rhs))
                        for p in g.productions)
    return Grammar(tuple(renamed.get(x, x) for x in g.nonterminals), letters, productions,
                   renamed.get(g.start, g.start))


def _prefixes(automata: Iterable[Nfa], depth: int, letters: Tuple[str, ...]) -> List[Word]:
    found = {p for a in automata for p in live_prefixes(a, depth)}
    return sorted(found, key=_order_key(letters))


def check_inequiv(g1: Grammar, g2: Grammar, cfg: Optional[InequivConfig] = None,
                  closure_states: Optional[int] = None) -> InequivReport:
    """Iterative deepening over prefix length; verified witness or MaybeEqual"""
    if cfg is None:
        cfg = InequivConfig.from_config(get_config())
    if closure_states is None:
        closure_states = get_config().max_nfa_states
    started = time.time()
    deadline = started + cfg.budget_seconds if cfg.budget_seconds is not None else None
    letters = tuple(dict.fromkeys(g1.terminals + g2.terminals))
    g1, g2 = _over(reduce(g1), letters), _over(reduce(g2), letters)
    stats = InequivStats()

    def finish(outcome: _TaskOutcome, depth: int) -> InequivReport:
        in_first, in_second = member(g1, outcome.witness), member(g2, outcome.witness)
        expected = Side.LEFT_ONLY if in_first else Side.RIGHT_ONLY
        if in_first == in_second or outcome.side is not expected:
            raise InconsistencyError(f"witness {format_word(outcome.witness)} does not separate the grammars")
        stats.elapsed_seconds = time.time() - started
        logger.info("witness %s (%s, %s) at depth %d", format_word(outcome.witness),
                    outcome.side.value, outcome.source.value, depth)
        return InequivReport(InequivStatus.INEQUIVALENT, stats, outcome.witness, outcome.side,
                             outcome.source, outcome.prefix)

    def maybe_equal(reason: str) -> InequivReport:
        stats.exhausted = reason
        stats.elapsed_seconds = time.time() - started
        logger.info("maybe equal after depth %d (%s)", stats.depth_reached, reason)
        return InequivReport(InequivStatus.MAYBE_EQUAL, stats)

    executor = ProcessPoolExecutor(max_workers=cfg.parallel_tasks) if cfg.parallel_tasks > 1 else None
    try:
        closures: Optional[List[Nfa]] = None
        for depth in range(cfg.max_depth + 1):
            stats.depth_reached = depth
            if depth == 0:
                prefixes: List[Word] = [()]
            else:
                if closures is None:
                    closures = [downward_nfa(g1, closure_states), downward_nfa(g2, closure_states)]
                prefixes = _prefixes(closures, depth, letters)
            logger.debug("depth %d: %d prefix tasks", depth, len(prefixes))

            tasks = [(g1, g2, p, cfg.node_budget, closure_states, deadline) for p in prefixes]
            outcomes = executor.map(_run_task, tasks) if executor else map(_run_task, tasks)
            for outcome in outcomes:
                stats.closure_checks += outcome.compared
                stats.inconclusive_tasks += outcome.inconclusive
                if outcome.witness is not None:
                    return finish(outcome, depth)

            if cfg.scan_short_words:
                word = short_word_scan(g1, g2, min(depth, cfg.short_scan_max_len))
                if word is not None:
                    side = Side.LEFT_ONLY if member(g1, word) else Side.RIGHT_ONLY
                    return finish(_TaskOutcome((), word, side, WitnessSource.SHORT_SCAN), depth)

            if deadline is not None and time.time() > deadline:
                return maybe_equal("time")
        return maybe_equal("depth")
    except TimeBudgetExceeded:
        return maybe_equal("time")
    except StateBudgetExceeded as e:
        # the full closures for prefix generation did not fit
        logger.warning("stopping refinement: %s", e)
        return maybe_equal("states")
    finally:
        if executor:
            executor.shutdown(cancel_futures=True)
