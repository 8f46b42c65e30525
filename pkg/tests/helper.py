"""
Subclosure - Test Helpers
Brute-force oracles and hypothesis strategies shared by the test modules
"""

import itertools
import textwrap
from collections import deque
from typing import Iterator, List, Sequence, Set

from hypothesis import strategies as st

from src.core.automata import word_up_dfa
from src.core.generators import gen_random
from src.core.grammar_ops import intersect_dfa
from src.models.automata import EPSILON, Nfa
from src.models.formula import DnfFormula
from src.models.grammar import Grammar, Word, parse_grammar

AB = ("a", "b")


def grammar(text: str) -> Grammar:
    return parse_grammar(textwrap.dedent(text))


def words_upto(alphabet: Sequence[str], maxlen: int) -> Iterator[Word]:
    """Σ^{<=maxlen} in length-lexicographic order"""
    for length in range(maxlen + 1):
        yield from itertools.product(alphabet, repeat=length)


def is_subword(u: Sequence[str], w: Sequence[str]) -> bool:
    """u is a scattered subword of w"""
    remaining = iter(w)
    return all(letter in remaining for letter in u)


def subwords(w: Sequence[str]) -> Set[Word]:
    return {tuple(w[i] for i in chosen)
            for r in range(len(w) + 1) for chosen in itertools.combinations(range(len(w)), r)}


def length_lex(letters: Sequence[str]):
    index = {x: i for i, x in enumerate(letters)}
    return lambda word: (len(word), tuple(index[x] for x in word))


def in_downward_closure(g: Grammar, w: Sequence[str]) -> bool:
    """w is a subword of some word of L(g), decided by intersecting with ↑{w}"""
    return intersect_dfa(g, word_up_dfa(w, g.terminals)) is not None


def embeds_into(a: Nfa, w: Sequence[str]) -> bool:
    """Some word of L(a) has w as a subword: search over (state, matched prefix length)"""
    start = [(q, 0) for q in a.initial]
    seen = set(start)
    queue = deque(start)
    while queue:
        q, i = queue.popleft()
        if i == len(w) and q in a.final:
            return True
        for label, target in a.successors[q]:
            j = i + 1 if label != EPSILON and i < len(w) and w[i] == label else i
            if (target, j) not in seen:
                seen.add((target, j))
                queue.append((target, j))
    return False


def derives(g: Grammar, w: Sequence[str]) -> bool:
    """Leftmost derivation search, independent of the library's normal forms.

    Erasable symbols may be dropped when a rule is applied, so every kept
    symbol yields at least one letter and forms never grow past |w|.
    """
    w = tuple(w)
    nullable: Set[str] = set()
    changed = True
    while changed:
        changed = False
        for p in g.productions:
            if p.lhs not in nullable and all(s in nullable for s in p.rhs):
                nullable.add(p.lhs)
                changed = True
    if not w:
        return g.start in nullable

    def erasures(rhs):
        options = [((s,), ()) if s in nullable else ((s,),) for s in rhs]
        for choice in itertools.product(*options):
            yield tuple(itertools.chain.from_iterable(choice))

    start = (g.start,)
    seen = {start}
    stack = [start]
    while stack:
        form = stack.pop()
        i = next((k for k, s in enumerate(form) if g.is_nonterminal(s)), len(form))
        if form[:i] != w[:i]:
            continue
        if i == len(form):
            if form == w:
                return True
            continue
        for rhs in g.rules[form[i]]:
            for kept in erasures(rhs):
                successor = form[:i] + kept + form[i + 1:]
                if successor and len(successor) <= len(w) and successor not in seen:
                    seen.add(successor)
                    stack.append(successor)
    return False


def random_corpus(count: int, first_seed: int = 0) -> List[Grammar]:
    """Seeded reduced grammars over {a, b} with one to six nonterminals"""
    return [gen_random(seed, nonterminals=1 + seed % 6) for seed in range(first_seed, first_seed + count)]


@st.composite
def nfas(draw, max_states: int = 6, alphabet: Sequence[str] = AB) -> Nfa:
    n = draw(st.integers(1, max_states))
    labels = tuple(alphabet) + (EPSILON,)
    transitions = draw(st.sets(st.tuples(st.integers(0, n - 1), st.sampled_from(labels), st.integers(0, n - 1)),
                               max_size=3 * n))
    initial = draw(st.sets(st.integers(0, n - 1), min_size=1, max_size=2))
    final = draw(st.sets(st.integers(0, n - 1), max_size=n))
    return Nfa.build(n, alphabet, transitions, initial, final)


@st.composite
def dnf_formulas(draw, max_vars: int = 10, max_clauses: int = 5) -> DnfFormula:
    n = draw(st.integers(1, max_vars))
    clause = st.dictionaries(st.integers(0, n - 1), st.booleans(), max_size=n)
    clauses = draw(st.lists(clause, max_size=max_clauses))
    return DnfFormula.build(n, clauses)
