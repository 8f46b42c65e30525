import pytest

from src.models.errors import GrammarSyntaxError
from src.models.grammar import (Grammar, Production, format_grammar, format_word, fresh_symbol,
                                parse_grammar, parse_word)
from tests.helper import grammar


class TestParseGrammar:
    def test_epsilon_alternative(self):
        g = parse_grammar("start: S\nS -> a S |")
        assert g.productions == (Production("S", ("a", "S")), Production("S", ()))
        assert g.terminals == ("a",)
        assert g.nonterminals == ("S",)

    def test_worked_example(self, worked_example):
        assert worked_example.start == "S"
        assert set(worked_example.nonterminals) == {"S", "X", "Y", "U", "V", "Z"}
        assert worked_example.terminals == ("a", "b", "c")
        assert len(worked_example.productions) == 13

    def test_token_without_rule_is_terminal(self):
        g = parse_grammar("start: S\nS -> T")
        assert g.terminals == ("T",)
        assert not g.is_nonterminal("T")

    def test_terminals_line_fixes_order_and_adds_letters(self):
        g = parse_grammar("start: S\nterminals: c b a\nS -> a b")
        assert g.terminals == ("c", "b", "a")

    def test_comments_and_blank_lines(self):
        g = parse_grammar("# header\n\nstart: S\n# rule\nS -> a\n")
        assert g.productions == (Production("S", ("a",)),)

    def test_alternatives_on_several_lines(self):
        g = parse_grammar("start: S\nS -> a\nS -> b")
        assert g.rules["S"] == (("a",), ("b",))

    def test_duplicate_alternatives_are_merged(self):
        g = parse_grammar("start: S\nS -> a | a")
        assert len(g.productions) == 1

    def test_missing_start(self):
        with pytest.raises(GrammarSyntaxError):
            parse_grammar("S -> a")

    def test_empty_text(self):
        with pytest.raises(GrammarSyntaxError):
            parse_grammar("")

    def test_line_number_reported(self):
        with pytest.raises(GrammarSyntaxError) as caught:
            parse_grammar("start: S\nS a b")
        assert caught.value.line == 2
        assert "line 2" in str(caught.value)

    def test_undeclared_start(self):
        with pytest.raises(GrammarSyntaxError, match="undeclared start"):
            parse_grammar("start: S\nA -> a")

    def test_compound_left_hand_side(self):
        with pytest.raises(GrammarSyntaxError):
            parse_grammar("start: S\nS T -> a")

    def test_declared_terminal_with_rule(self):
        with pytest.raises(GrammarSyntaxError):
            parse_grammar("start: S\nterminals: A\nS -> A\nA -> a")


class TestFormatGrammar:
    def test_round_trip(self, worked_example):
        assert parse_grammar(format_grammar(worked_example)) == worked_example

    def test_round_trip_keeps_unused_terminals(self):
        g = parse_grammar("start: S\nterminals: a b c\nS -> a S |")
        assert parse_grammar(format_grammar(g)) == g

    def test_interleaved_rules_reparse(self):
        g = Grammar.build("S", [Production("S", ("A",)), Production("A", ("a",)), Production("S", ("b",))])
        again = parse_grammar(format_grammar(g))
        assert set(again.productions) == set(g.productions)
        assert again.start == g.start

    def test_save_and_load(self, tmp_path, anbn):
        path = anbn.save(tmp_path / "anbn.cfg")
        assert Grammar.load(path) == anbn


class TestGrammarModel:
    def test_unknown_symbol(self):
        with pytest.raises(ValueError):
            Grammar(("S",), ("a",), (Production("S", ("b",)),), "S")

    def test_start_must_be_nonterminal(self):
        with pytest.raises(ValueError):
            Grammar(("S",), ("a",), (Production("S", ("a",)),), "T")

    def test_duplicates_rejected(self):
        rule = Production("S", ("a",))
        with pytest.raises(ValueError):
            Grammar(("S",), ("a",), (rule, rule), "S")

    def test_symbol_in_both_sets(self):
        with pytest.raises(ValueError):
            Grammar(("S",), ("S",), (), "S")

    def test_with_terminals(self, anbn):
        wider = anbn.with_terminals(["b", "c"])
        assert wider.terminals == ("a", "b", "c")
        assert anbn.with_terminals(["a"]) is anbn

    def test_rules_grouped(self, worked_example):
        assert worked_example.rules["Z"] == (("c", "Z"), ("b", "c"))
        assert worked_example.rules["X"] == (("Z", "b", "Y"), ())

    def test_production_str(self):
        assert str(Production("S", ())) == "S -> ε"
        assert str(Production("S", ("a", "S"))) == "S -> a S"


def test_fresh_symbol():
    assert fresh_symbol("A_a", set()) == "A_a"
    assert fresh_symbol("A_a", {"A_a", "A_a'"}) == "A_a''"


class TestWords:
    def test_format(self):
        assert format_word(()) == "ε"
        assert format_word(("a", "b")) == "ab"
        assert format_word(("ab", "c")) == "ab·c"
        assert format_word((), empty="eps") == "eps"

    def test_parse(self):
        assert parse_word("ε") == ()
        assert parse_word("") == ()
        assert parse_word("abb") == ("a", "b", "b")
        assert parse_word("ab·c") == ("ab", "c")

    @pytest.mark.parametrize("word", [(), ("a",), ("a", "b", "a"), ("x1", "x2"), ("ab",), ("x1", "y")])
    @pytest.mark.parametrize("separator", ["·", " ", ","])
    def test_parse_inverts_format(self, word, separator):
        assert parse_word(format_word(word, separator), separator) == word

    def test_single_long_letter(self):
        assert format_word(("ab",)) == "ab·"
        assert parse_word("ab·") == ("ab",)
        assert parse_word("ab") == ("a", "b")


def test_helper_grammar_dedents():
    g = grammar("""\
        start: S
        S -> a
        """)
    assert g.productions == (Production("S", ("a",)),)
