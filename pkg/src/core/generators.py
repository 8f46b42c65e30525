"""
Subclosure - Generators
Grammar and automaton families for tests, benchmarks and mutation corpora
"""

import logging
import random
from enum import Enum
from typing import List, Optional, Sequence, Tuple

from src.core.grammar_ops import reduce
from src.models.automata import Nfa
from src.models.errors import EmptyLanguageError, MutationError
from src.models.formula import DnfFormula
from src.models.grammar import Grammar, Production, Word

logger = logging.getLogger(__name__)

BINARY = ("0", "1")


class MutationScenario(str, Enum):
    """Single-rule edits"""
    ADD = "add"
    DELETE = "delete"
    MUTATE = "mutate"


def gen_pow2(n: int) -> Grammar:
    """Squaring chain X_n -> X_{n-1} X_{n-1}, ..., X_0 -> a for {a^(2^n)}"""
    if n < 0:
        raise ValueError("n must be non-negative")
    productions = [Production(f"X{k}", (f"X{k - 1}", f"X{k - 1}")) for k in range(n, 0, -1)]
    productions.append(Production("X0", ("a",)))
    return Grammar.build(f"X{n}", productions, ("a",))


def gen_lk(n: int) -> Grammar:
    """Grammar of size O(n) for L_k with k = 2^n.

    L_k holds the words of {0,1}^(2k+1) with two 0s exactly k letters apart.
    Primed nonterminals choose where the block 0 {0,1}^k 0 sits.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    productions: List[Production] = []
    for i in range(n, 0, -1):
        productions.append(Production(f"X{i}'", (f"X{i - 1}", f"X{i - 1}'")))
        productions.append(Production(f"X{i}'", (f"X{i - 1}'", f"X{i - 1}")))
    productions.append(Production("X0'", ("0", f"Y{n}", "0")))
    for i in range(n - 1, 0, -1):
        productions.append(Production(f"X{i}", (f"X{i - 1}", f"X{i - 1}")))
    productions += [Production("X0", ("0",)), Production("X0", ("1",))]
    for i in range(n, 0, -1):
        productions.append(Production(f"Y{i}", (f"Y{i - 1}", f"Y{i - 1}")))
    productions += [Production("Y0", ("0",)), Production("Y0", ("1",))]
    return Grammar.build(f"X{n}'", productions, BINARY)


def lk_predicate(word: Sequence[str], k: int) -> bool:
    """Membership in L_k"""
    if len(word) != 2 * k + 1:
        return False
    return any(word[j] == "0" and word[j + k + 1] == "0" for j in range(k))


def lk_distinguishing_suffix(w1: Sequence[str], w2: Sequence[str], n: int) -> Word:
    """Suffix v with exactly one of w1·v, w2·v in L_(2^n), for distinct w1, w2 in {0,1}^(2^n)"""
    k = 2 ** n
    if len(w1) != k or len(w2) != k or tuple(w1) == tuple(w2):
        raise ValueError("expected two distinct words of length 2^n")
    position = max(i for i in range(k) if w1[i] != w2[i])
    beta = k - position - 1
    alpha = position
    return ("1",) * (k - beta) + ("0",) + ("1",) * (k - alpha - 1)


def gen_blowup(n: int) -> Grammar:
    """A_0 -> a and A_k -> A_i A_j for all i, j < k; start A_n"""
    if n < 0:
        raise ValueError("n must be non-negative")
    productions = [Production(f"A{k}", (f"A{i}", f"A{j}"))
                   for k in range(n, 0, -1) for i in range(k) for j in range(k)]
    productions.append(Production("A0", ("a",)))
    return Grammar.build(f"A{n}", productions, ("a",))


def gen_dnf_nfa(f: DnfFormula) -> Nfa:
    """NFA over {0,1} for the satisfying assignments of f, one chain per clause"""
    transitions: List[Tuple[int, str, int]] = []
    final: List[int] = []
    count = 1
    for clause in f.clauses:
        fixed = dict(clause)
        previous = 0
        for var in range(f.var_count):
            state = count
            count += 1
            letters = ("1" if fixed[var] else "0",) if var in fixed else BINARY
            transitions += [(previous, letter, state) for letter in letters]
            previous = state
        final.append(previous)
    return Nfa.build(count, BINARY, transitions, [0], final)


def gen_cube_nfa(n: int) -> Nfa:
    """Chain NFA for {0,1}^n"""
    return Nfa.build(n + 1, BINARY, [(i, letter, i + 1) for i in range(n) for letter in BINARY], [0], [n])


def gen_random(seed: int, nonterminals: int = 4, terminals: Sequence[str] = ("a", "b"),
               max_alternatives: int = 3, max_rhs: int = 3, attempts: int = 1000) -> Grammar:
    """Seeded random grammar, reduced and with a nonempty language"""
    rng = random.Random(seed)
    names = ["S"] + [chr(ord("A") + i) for i in range(nonterminals - 1)]
    terminals = tuple(terminals)
    for _ in range(attempts):
        productions = []
        for lhs in names:
            for _ in range(rng.randint(1, max_alternatives)):
                length = rng.randint(0, max_rhs)
                rhs = tuple(rng.choice(terminals) if rng.random() < 0.55 else rng.choice(names)
                            for _ in range(length))
                productions.append(Production(lhs, rhs))
        try:
            return reduce(Grammar.build("S", productions, terminals, names))
        except EmptyLanguageError:
            continue
    raise RuntimeError(f"no productive grammar after {attempts} attempts (seed {seed})")


def mutate(g: Grammar, scenario: MutationScenario, seed: int) -> Grammar:
    """Seed-deterministic single-rule edit; the result is reduced"""
    scenario = MutationScenario(scenario)
    rng = random.Random(seed)
    productions = list(g.productions)
    symbols = list(g.nonterminals) + list(g.terminals)

    if scenario is MutationScenario.ADD:
        lhs = rng.choice(g.nonterminals)
        rhs = tuple(rng.choice(symbols) for _ in range(rng.randint(0, 3)))
        edited = Production(lhs, rhs)
        if edited in productions:
            raise MutationError(f"{edited} already exists")
        productions.append(edited)
    elif scenario is MutationScenario.DELETE:
        if not productions:
            raise MutationError("no production to delete")
        edited = productions.pop(rng.randrange(len(productions)))
    else:
        candidates = [i for i, p in enumerate(productions) if p.rhs]
        if not candidates or len(symbols) < 2:
            raise MutationError("no symbol to replace")
        index = rng.choice(candidates)
        original = productions[index]
        position = rng.randrange(len(original.rhs))
        replacement = rng.choice([s for s in symbols if s != original.rhs[position]])
        rhs = original.rhs[:position] + (replacement,) + original.rhs[position + 1:]
        edited = Production(original.lhs, rhs)
        if edited in productions:
            raise MutationError(f"{edited} already exists")
        productions[index] = edited

    try:
        result = reduce(Grammar.build(g.start, productions, g.terminals, g.nonterminals))
    except EmptyLanguageError:
        raise MutationError(f"{scenario.value} of {edited} empties the language")
    logger.debug("mutate(%s, seed %d): %s", scenario.value, seed, edited)
    return result


def mutation_corpus(g: Grammar, count: int, first_seed: int = 0,
                    scenarios: Optional[Sequence[MutationScenario]] = None) -> List[Tuple[int, MutationScenario, Grammar]]:
    """count successful mutations, cycling through scenarios and skipping failing seeds"""
    scenarios = list(scenarios or MutationScenario)
    corpus = []
    seed = first_seed
    while len(corpus) < count:
        scenario = scenarios[seed % len(scenarios)]
        try:
            corpus.append((seed, scenario, mutate(g, scenario, seed)))
        except MutationError:
            pass
        seed += 1
    return corpus
