import itertools

import pytest

from src.core.automata import close_up, determinize, equivalent_dfas, minimize, nfa_member, words_nfa
from src.core.closure import downward_nfa
from src.core.generators import (BINARY, MutationScenario, gen_blowup, gen_cube_nfa, gen_dnf_nfa, gen_lk,
                                 gen_pow2, gen_random, lk_distinguishing_suffix, lk_predicate, mutate,
                                 mutation_corpus)
from src.core.grammar_ops import bounded_language, member, reduce, size
from src.models.errors import MutationError
from src.models.formula import DnfFormula
from src.models.grammar import Production, format_grammar, parse_grammar
from tests.helper import grammar, words_upto


def w(text):
    return tuple(text)


def lk_formula(k: int) -> DnfFormula:
    """L_k as a DNF over 2k+1 positions: some pair j, j+k+1 is zero"""
    return DnfFormula.build(2 * k + 1, [{j: False, j + k + 1: False} for j in range(k)])


def minimal_dfa(nfa):
    return minimize(determinize(nfa))


def minimal_states(nfa) -> int:
    return minimal_dfa(nfa).state_count


class TestPow2:
    def test_language(self):
        assert bounded_language(gen_pow2(3), 9) == {("a",) * 8}

    def test_zero(self):
        assert gen_pow2(0).productions == (Production("X0", ("a",)),)

    @pytest.mark.parametrize("n", range(9))
    def test_size(self, n):
        assert size(gen_pow2(n)) == 2 * n + 1

    def test_negative(self):
        with pytest.raises(ValueError):
            gen_pow2(-1)


class TestLk:
    def test_predicate(self):
        assert lk_predicate(w("00000"), 2)
        assert not lk_predicate(w("01010"), 2)
        assert not lk_predicate(w("0000"), 2)

    def test_first_member_matches_predicate(self):
        g = gen_lk(1)
        for word in itertools.product(BINARY, repeat=5):
            assert member(g, word) == lk_predicate(word, 2)
        assert not member(g, w("0000"))
        assert not member(g, w("000000"))

    def test_second_member_lengths(self):
        words = bounded_language(gen_lk(2), 10)
        assert words == {v for v in itertools.product(BINARY, repeat=9) if lk_predicate(v, 4)}

    @pytest.mark.parametrize("n", [1, 2])
    def test_dnf_encoding_agrees(self, n):
        k = 2 ** n
        language = words_nfa(bounded_language(gen_lk(n), 2 * k + 1), BINARY)
        assert equivalent_dfas(minimal_dfa(gen_dnf_nfa(lk_formula(k))), minimal_dfa(language)) is None

    @pytest.mark.parametrize("n", [1, 2])
    def test_distinguishing_suffix(self, n):
        k = 2 ** n
        for w1, w2 in itertools.permutations(itertools.product(BINARY, repeat=k), 2):
            v = lk_distinguishing_suffix(w1, w2, n)
            assert lk_predicate(w1 + v, k) != lk_predicate(w2 + v, k)

    def test_suffix_needs_distinct_words(self):
        with pytest.raises(ValueError):
            lk_distinguishing_suffix(w("01"), w("01"), 1)

    @pytest.mark.parametrize("n", [1, pytest.param(2, marks=pytest.mark.slow)])
    def test_double_exponential_dfas(self, n):
        k = 2 ** n
        g = gen_lk(n)
        words = bounded_language(g, 2 * k + 1)
        language = words_nfa(words, BINARY)
        # words of full length are untouched by either closure
        for closure in (close_up(language), downward_nfa(g)):
            full = {v for v in itertools.product(BINARY, repeat=2 * k + 1) if nfa_member(closure, v)}
            assert full == words
        lower = 2 ** k
        assert minimal_states(language) >= lower
        assert minimal_states(close_up(language)) >= lower
        assert minimal_states(downward_nfa(g)) >= lower


class TestBlowup:
    def test_sizes(self):
        assert len(gen_blowup(0).productions) == 1
        assert len(gen_blowup(2).productions) == 6

    def test_language(self):
        assert bounded_language(gen_blowup(2), 5) == {w("aa"), w("aaa"), w("aaaa")}

    @pytest.mark.parametrize("n", range(4))
    def test_downward_closure(self, n):
        nfa = downward_nfa(gen_blowup(n))
        for i in range(2 ** n + 2):
            assert nfa_member(nfa, ("a",) * i) == (i <= 2 ** n)


class TestDnf:
    def test_example(self):
        nfa = gen_dnf_nfa(DnfFormula.parse("x0 & !x1 | x1"))
        accepted = {word for word in words_upto(BINARY, 3) if nfa_member(nfa, word)}
        assert accepted == {w("10"), w("01"), w("11")}

    def test_tautology(self):
        nfa = gen_dnf_nfa(DnfFormula.parse("x0 | !x0"))
        assert {word for word in words_upto(BINARY, 2) if nfa_member(nfa, word)} == {w("0"), w("1")}

    def test_empty_formula(self):
        nfa = gen_dnf_nfa(DnfFormula.parse("", 2))
        assert not any(nfa_member(nfa, word) for word in words_upto(BINARY, 3))

    def test_cube(self):
        nfa = gen_cube_nfa(3)
        for word in words_upto(BINARY, 4):
            assert nfa_member(nfa, word) == (len(word) == 3)


class TestFormula:
    def test_parse(self):
        f = DnfFormula.parse("x0 & !x1 | x1")
        assert f.var_count == 2
        assert f.clauses == (((0, True), (1, False)), ((1, True),))
        assert str(f) == "x0 & !x1 | x1"

    def test_negation_spellings(self):
        assert DnfFormula.parse("~x0") == DnfFormula.parse("¬x0") == DnfFormula.parse("!x0")

    def test_evaluate(self):
        f = DnfFormula.parse("x0 & !x1")
        assert f.evaluate((True, False))
        assert not f.evaluate((True, True))
        with pytest.raises(ValueError):
            f.evaluate((True,))

    def test_tautology(self):
        assert DnfFormula.parse("x0 | !x0").is_tautology()
        assert not DnfFormula.parse("x0 | x1").is_tautology()
        assert DnfFormula.parse("true", 3).is_tautology()

    def test_satisfying_assignments(self):
        assert list(DnfFormula.parse("x0 & x1").satisfying_assignments()) == [(True, True)]

    @pytest.mark.parametrize("text", ["x0 & !x0", "y1", "x0 & z1"])
    def test_bad_formulas(self, text):
        with pytest.raises(ValueError):
            DnfFormula.parse(text)

    def test_variable_out_of_range(self):
        with pytest.raises(ValueError):
            DnfFormula.build(1, [{3: True}])


class TestRandom:
    def test_deterministic(self):
        assert gen_random(7) == gen_random(7)

    def test_reduced_and_nonempty(self):
        for seed in range(30):
            g = gen_random(seed, nonterminals=1 + seed % 6, terminals=("a", "b", "c"))
            assert reduce(g) is g
            assert g.terminals == ("a", "b", "c")


class TestMutate:
    def test_delete(self):
        g = grammar("start: S\nS -> a | b")
        results = {mutate(g, MutationScenario.DELETE, seed).productions for seed in range(30)}
        assert results == {(Production("S", ("a",)),), (Production("S", ("b",)),)}

    def test_delete_last_rule(self):
        with pytest.raises(MutationError):
            mutate(grammar("start: S\nS -> a"), MutationScenario.DELETE, 0)

    def test_replace_symbol(self):
        g = grammar("start: S\nS -> a b")
        outcomes = []
        for seed in range(50):
            try:
                outcomes.append(mutate(g, MutationScenario.MUTATE, seed).rules["S"])
            except MutationError:
                outcomes.append(None)
        assert None in outcomes
        successes = {rhs for rhs in outcomes if rhs is not None}
        assert successes and successes <= {(w("bb"),), (w("aa"),)}

    def test_add(self, anbn):
        for seed in range(10):
            try:
                mutant = mutate(anbn, MutationScenario.ADD, seed)
            except MutationError:
                continue
            assert reduce(mutant) is mutant
            assert mutant.terminals == anbn.terminals
            assert set(parse_grammar(format_grammar(mutant)).productions) == set(mutant.productions)

    def test_seed_deterministic(self, anbn):
        assert mutate(anbn, "mutate", 3) == mutate(anbn, MutationScenario.MUTATE, 3)

    def test_corpus(self):
        base = parse_grammar(format_grammar(gen_random(11, nonterminals=4)))
        corpus = mutation_corpus(base, 25)
        assert len(corpus) == 25
        assert len({seed for seed, _, _ in corpus}) == 25
        assert {scenario for _, scenario, _ in corpus} <= set(MutationScenario)
