"""
Subclosure - Closure Equivalence
On-the-fly comparison of subword- or superword-closed automata with shortest witnesses
"""

import logging
import time
from collections import deque
from typing import Dict, Optional, Tuple

from src.core.automata import close_down, close_up, epsilon_closure, step, with_alphabet
from src.models.automata import Nfa
from src.models.errors import InconsistencyError, StateBudgetExceeded, TimeBudgetExceeded
from src.models.results import Direction, Side, Verdict
from src.utils.config import get_config

logger = logging.getLogger(__name__)

Subset = Tuple[int, ...]

# pairs popped between two deadline checks
_CLOCK_STRIDE = 256


def closed(a: Nfa, direction: Direction) -> Nfa:
    """a made downward or upward closed"""
    return close_down(a) if Direction(direction) is Direction.DOWN else close_up(a)


def _advances(before: Subset, after: Subset, direction: Direction) -> bool:
    if direction is Direction.DOWN:
        return set(after) <= set(before)
    return set(before) <= set(after)


def equiv_closed(a: Nfa, b: Nfa, direction: Direction = Direction.DOWN,
                 max_pairs: Optional[int] = None, deadline: Optional[float] = None) -> Verdict:
    """Decide whether the closures of L(a) and L(b) agree.

    Breadth-first search over pairs of subset states of the closed automata.
    Along retained moves both subsets only shrink (down) or only grow (up), and
    moves that change neither side are skipped. deadline is a time.time() value.
    """
    direction = Direction(direction)
    if max_pairs is None:
        max_pairs = get_config().max_product_pairs
    letters = tuple(dict.fromkeys((*a.alphabet, *b.alphabet)))
    left = closed(with_alphabet(a, letters), direction)
    right = closed(with_alphabet(b, letters), direction)

    start = (tuple(sorted(epsilon_closure(left, left.initial))),
             tuple(sorted(epsilon_closure(right, right.initial))))
    parent: Dict[Tuple[Subset, Subset], Optional[Tuple[Tuple[Subset, Subset], str]]] = {start: None}
    queue = deque([start])
    popped = 0
    while queue:
        pair = queue.popleft()
        popped += 1
        if deadline is not None and popped % _CLOCK_STRIDE == 0 and time.time() > deadline:
            raise TimeBudgetExceeded("closure comparison seconds", deadline)

        in_left = not left.final.isdisjoint(pair[0])
        in_right = not right.final.isdisjoint(pair[1])
        if in_left != in_right:
            word = []
            node = pair
            while parent[node] is not None:
                node, letter = parent[node]
                word.append(letter)
            side = Side.LEFT_ONLY if in_left else Side.RIGHT_ONLY
            logger.debug("equiv_closed(%s): separated after %d pairs", direction.value, len(parent))
            return Verdict.separated(tuple(reversed(word)), side, len(parent))

        for letter in letters:
            successor = (tuple(sorted(step(left, pair[0], letter))),
                         tuple(sorted(step(right, pair[1], letter))))
            if successor == pair:
                continue
            if not (_advances(pair[0], successor[0], direction) and _advances(pair[1], successor[1], direction)):
                raise InconsistencyError(f"subset states are not monotone under {letter!r}")
            if successor not in parent:
                if len(parent) >= max_pairs:
                    raise StateBudgetExceeded("product pairs", max_pairs)
                parent[successor] = (pair, letter)
                queue.append(successor)

    logger.debug("equiv_closed(%s): equal after %d pairs", direction.value, len(parent))
    return Verdict.equal(len(parent))
