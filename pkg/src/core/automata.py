"""
Subclosure - Automaton Operations
Closure operators, word-closure DFAs, universality shortcuts and subset-construction oracles
"""

import logging
from collections import deque
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple

from src.core.graphs import reachable, tarjan
from src.models.automata import EPSILON, Dfa, Nfa
from src.models.errors import StateBudgetExceeded
from src.models.grammar import Word
from src.utils.config import get_config

logger = logging.getLogger(__name__)


def _alphabet(word: Sequence[str], alphabet: Optional[Iterable[str]]) -> Tuple[str, ...]:
    letters = dict.fromkeys(alphabet or ())
    letters.update(dict.fromkeys(word))
    return tuple(letters)


def epsilon_closure(a: Nfa, states: Iterable[int]) -> FrozenSet[int]:
    closure: Set[int] = set(states)
    stack = list(closure)
    while stack:
        p = stack.pop()
        for label, q in a.successors[p]:
            if label == EPSILON and q not in closure:
                closure.add(q)
                stack.append(q)
    return frozenset(closure)


def step(a: Nfa, states: Iterable[int], letter: str) -> FrozenSet[int]:
    """Letter move followed by epsilon closure"""
    targets = {q for p in states for label, q in a.successors[p] if label == letter}
    return epsilon_closure(a, targets)


def nfa_member(a: Nfa, word: Sequence[str]) -> bool:
    """Subset simulation with epsilon closures"""
    a.check_word(word)
    current = epsilon_closure(a, a.initial)
    for letter in word:
        if not current:
            return False
        current = step(a, current, letter)
    return not current.isdisjoint(a.final)


def with_alphabet(a: Nfa, letters: Iterable[str]) -> Nfa:
    """Same automaton over an alphabet extended by letters"""
    alphabet = tuple(dict.fromkeys((*a.alphabet, *letters)))
    if alphabet == a.alphabet:
        return a
    return Nfa(a.state_count, alphabet, a.transitions, a.initial, a.final, a.entry, a.exit)


def close_down(a: Nfa) -> Nfa:
    """Subword closure: an epsilon move next to every letter move"""
    added = {(p, EPSILON, q) for p, label, q in a.transitions if label != EPSILON}
    return Nfa(a.state_count, a.alphabet, a.transitions | added, a.initial, a.final, a.entry, a.exit)


def close_up(a: Nfa) -> Nfa:
    """Superword closure: a loop on every letter at every state"""
    added = {(q, letter, q) for q in range(a.state_count) for letter in a.alphabet}
    return Nfa(a.state_count, a.alphabet, a.transitions | added, a.initial, a.final, a.entry, a.exit)


def word_nfa(word: Sequence[str], alphabet: Optional[Iterable[str]] = None) -> Nfa:
    """Chain automaton accepting exactly word"""
    n = len(word)
    return Nfa.build(n + 1, _alphabet(word, alphabet),
                     [(i, letter, i + 1) for i, letter in enumerate(word)], [0], [n])


def words_nfa(words: Iterable[Sequence[str]], alphabet: Optional[Iterable[str]] = None) -> Nfa:
    """Trie automaton of a finite language"""
    children: List[Dict[str, int]] = [{}]
    final: Set[int] = set()
    letters: Dict[str, None] = dict.fromkeys(alphabet or ())
    for word in words:
        state = 0
        for letter in word:
            letters.setdefault(letter, None)
            if letter not in children[state]:
                children.append({})
                children[state][letter] = len(children) - 1
            state = children[state][letter]
        final.add(state)
    transitions = [(p, letter, q) for p, edges in enumerate(children) for letter, q in edges.items()]
    return Nfa.build(len(children), letters, transitions, [0], final)


def word_down_dfa(word: Sequence[str], alphabet: Optional[Iterable[str]] = None) -> Dfa:
    """DFA for the subwords of word: greedy match positions plus a sink"""
    letters = _alphabet(word, alphabet)
    n = len(word)
    sink = n + 1
    delta = []
    for i in range(n + 1):
        row = []
        for letter in letters:
            j = next((k for k in range(i, n) if word[k] == letter), None)
            row.append(sink if j is None else j + 1)
        delta.append(tuple(row))
    delta.append(tuple(sink for _ in letters))
    return Dfa(letters, tuple(delta), 0, frozenset(range(n + 1)))


def word_up_dfa(word: Sequence[str], alphabet: Optional[Iterable[str]] = None) -> Dfa:
    """DFA for the superwords of word; state i means word[:i] has been embedded"""
    letters = _alphabet(word, alphabet)
    n = len(word)
    delta = tuple(tuple(i + 1 if i < n and word[i] == letter else i for letter in letters)
                  for i in range(n + 1))
    return Dfa(letters, delta, 0, frozenset([n]))


def prefix_dfa(prefix: Sequence[str], alphabet: Optional[Iterable[str]] = None) -> Dfa:
    """DFA for prefix·Σ* with |prefix|+2 states"""
    letters = _alphabet(prefix, alphabet)
    n = len(prefix)
    sink = n + 1
    delta = []
    for i in range(n):
        delta.append(tuple(i + 1 if prefix[i] == letter else sink for letter in letters))
    delta.append(tuple(n for _ in letters))
    delta.append(tuple(sink for _ in letters))
    return Dfa(letters, tuple(delta), 0, frozenset([n]))


def reachable_states(a: Nfa) -> Set[int]:
    return reachable(a.initial, lambda p: (q for _, q in a.successors[p]))


def coreachable_states(a: Nfa) -> Set[int]:
    return reachable(a.final, lambda q: a.predecessors[q])


def useful_states(a: Nfa) -> Set[int]:
    return reachable_states(a) & coreachable_states(a)


def trim(a: Nfa) -> Nfa:
    """Restrict to reachable and co-reachable states, renumbered in order"""
    useful = sorted(useful_states(a))
    if len(useful) == a.state_count:
        return a
    if not useful:
        return Nfa.build(1, a.alphabet, [], [0], [])
    index = {q: i for i, q in enumerate(useful)}
    transitions = [(index[p], label, index[q]) for p, label, q in a.transitions
                   if p in index and q in index]
    return Nfa.build(len(useful), a.alphabet, transitions,
                     [index[q] for q in a.initial if q in index],
                     [index[q] for q in a.final if q in index],
                     index.get(a.entry), index.get(a.exit))


def universal_down(a: Nfa) -> bool:
    """L(a) = Σ* for a subword-closed L(a): some useful SCC's letters cover Σ"""
    useful = useful_states(a)
    if not useful:
        return False
    components = tarjan(sorted(useful), lambda p: (q for _, q in a.successors[p] if q in useful))
    component_of = {q: i for i, component in enumerate(components) for q in component}
    covered: Dict[int, Set[str]] = {}
    for p, label, q in a.transitions:
        if label != EPSILON and p in component_of and component_of.get(q) == component_of[p]:
            covered.setdefault(component_of[p], set()).add(label)
    needed = set(a.alphabet)
    return any(needed <= covered.get(i, set()) for i in range(len(components)))


def universal_up(a: Nfa) -> bool:
    """L(a) = Σ* for a superword-closed L(a): exactly when ε is accepted"""
    return not epsilon_closure(a, a.initial).isdisjoint(a.final)


def determinize(a: Nfa, max_states: Optional[int] = None) -> Dfa:
    """Total DFA by subset construction after epsilon closure; keeps the subsets"""
    if max_states is None:
        max_states = get_config().max_subset_states
    start = tuple(sorted(epsilon_closure(a, a.initial)))
    index: Dict[Tuple[int, ...], int] = {start: 0}
    subsets: List[Tuple[int, ...]] = [start]
    delta: List[Tuple[int, ...]] = []
    queue = deque([start])
    while queue:
        subset = queue.popleft()
        row = []
        for letter in a.alphabet:
            target = tuple(sorted(step(a, subset, letter)))
            if target not in index:
                if len(subsets) >= max_states:
                    raise StateBudgetExceeded("subset states", max_states)
                index[target] = len(subsets)
                subsets.append(target)
                queue.append(target)
            row.append(index[target])
        delta.append(tuple(row))
    final = frozenset(i for i, subset in enumerate(subsets) if not a.final.isdisjoint(subset))
    logger.debug("determinize: %d NFA states -> %d subset states", a.state_count, len(subsets))
    return Dfa(a.alphabet, tuple(delta), 0, final, tuple(frozenset(s) for s in subsets))


def _reachable_dfa_states(d: Dfa) -> List[int]:
    """States reachable from the initial one, in breadth-first order"""
    order = [d.initial]
    seen = {d.initial}
    i = 0
    while i < len(order):
        for q in d.delta[order[i]]:
            if q not in seen:
                seen.add(q)
                order.append(q)
        i += 1
    return order


def minimize(d: Dfa) -> Dfa:
    """Moore partition refinement over the reachable part, renumbered breadth-first"""
    states = _reachable_dfa_states(d)
    block = {q: int(q in d.final) for q in states}
    count = len(set(block.values()))
    while True:
        signatures: Dict[Tuple[int, ...], int] = {}
        refined = {}
        for q in states:
            signature = (block[q],) + tuple(block[t] for t in d.delta[q])
            refined[q] = signatures.setdefault(signature, len(signatures))
        block = refined
        if len(signatures) == count:
            break
        count = len(signatures)

    numbering: Dict[int, int] = {}
    for q in states:
        numbering.setdefault(block[q], len(numbering))
    representative: Dict[int, int] = {}
    for q in states:
        representative.setdefault(numbering[block[q]], q)
    delta = tuple(tuple(numbering[block[t]] for t in d.delta[representative[i]])
                  for i in range(len(numbering)))
    final = frozenset(numbering[block[q]] for q in states if q in d.final)
    # renumber breadth-first so equal languages give identical tables
    bfs = _reachable_dfa_states(Dfa(d.alphabet, delta, numbering[block[d.initial]], final))
    order = {q: i for i, q in enumerate(bfs)}
    return Dfa(d.alphabet, tuple(tuple(order[t] for t in delta[q]) for q in bfs), 0,
               frozenset(order[q] for q in final))


def complement(d: Dfa) -> Dfa:
    return Dfa(d.alphabet, d.delta, d.initial, frozenset(range(d.state_count)) - d.final)


def live_state_count(d: Dfa) -> int:
    """States from which some final state is reachable"""
    back: List[Set[int]] = [set() for _ in range(d.state_count)]
    for p, row in enumerate(d.delta):
        for q in row:
            back[q].add(p)
    return len(reachable(d.final, back.__getitem__))


def equivalent_dfas(d1: Dfa, d2: Dfa) -> Optional[Word]:
    """Shortest word accepted by exactly one of the two DFAs, None if they agree.

    Letters missing from one alphabet lead to a rejecting dead state there.
    """
    letters = tuple(dict.fromkeys((*d1.alphabet, *d2.alphabet)))

    def accepting(d: Dfa, q: Optional[int]) -> bool:
        return q is not None and q in d.final

    def move(d: Dfa, q: Optional[int], letter: str) -> Optional[int]:
        return None if q is None else d.step(q, letter)

    start = (d1.initial, d2.initial)
    parent: Dict[Tuple, Tuple] = {start: None}
    queue = deque([start])
    while queue:
        pair = queue.popleft()
        if accepting(d1, pair[0]) != accepting(d2, pair[1]):
            word = []
            while parent[pair] is not None:
                pair, letter = parent[pair]
                word.append(letter)
            return tuple(reversed(word))
        for letter in letters:
            nxt = (move(d1, pair[0], letter), move(d2, pair[1], letter))
            if nxt not in parent:
                parent[nxt] = (pair, letter)
                queue.append(nxt)
    return None
