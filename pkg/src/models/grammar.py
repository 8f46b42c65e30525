"""
Subclosure - Grammar Models
Context-free grammars, their text format, and words over token alphabets
"""

from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from src.models.errors import GrammarSyntaxError

Word = Tuple[str, ...]

EMPTY_WORD = "ε"
WORD_SEPARATOR = "·"


@dataclass(frozen=True, order=True)
class Production:
    """A single rule lhs -> rhs; an empty rhs is an epsilon rule"""
    lhs: str
    rhs: Tuple[str, ...] = ()

    def __str__(self):
        body = " ".join(self.rhs) if self.rhs else EMPTY_WORD
        return f"{self.lhs} -> {body}"


@dataclass(frozen=True)
class Grammar:
    """Immutable context-free grammar with ordered symbol sets"""
    nonterminals: Tuple[str, ...]
    terminals: Tuple[str, ...]
    productions: Tuple[Production, ...]
    start: str

    def __post_init__(self):
        nonterminals = set(self.nonterminals)
        terminals = set(self.terminals)
        if len(nonterminals) != len(self.nonterminals) or len(terminals) != len(self.terminals):
            raise ValueError("symbol lists must not repeat symbols")
        if nonterminals & terminals:
            raise ValueError(f"symbols used both as terminal and nonterminal: {sorted(nonterminals & terminals)}")
        if self.start not in nonterminals:
            raise ValueError(f"start symbol {self.start!r} is not a nonterminal")
        if len(set(self.productions)) != len(self.productions):
            raise ValueError("duplicate productions")
        for production in self.productions:
            if production.lhs not in nonterminals:
                raise ValueError(f"unknown left-hand side in {production}")
            for symbol in production.rhs:
                if symbol not in nonterminals and symbol not in terminals:
                    raise ValueError(f"unknown symbol {symbol!r} in {production}")

    @classmethod
    def build(cls, start: str, productions: Iterable[Production],
              terminals: Sequence[str] = (), nonterminals: Sequence[str] = ()) -> 'Grammar':
        """Assemble a grammar, classifying symbols and dropping duplicate rules.

        Nonterminals are the explicitly given ones, then every lhs in order of
        first appearance, then the start symbol if still missing. Terminals
        keep the given order; any other rhs symbol is appended as a terminal.
        """
        unique: Dict[Production, None] = {}
        for production in productions:
            unique.setdefault(production, None)
        rules = tuple(unique)

        nt_order: Dict[str, None] = dict.fromkeys(nonterminals)
        for production in rules:
            nt_order.setdefault(production.lhs, None)
        nt_order.setdefault(start, None)
        t_order: Dict[str, None] = dict.fromkeys(t for t in terminals if t not in nt_order)
        for production in rules:
            for symbol in production.rhs:
                if symbol not in nt_order:
                    t_order.setdefault(symbol, None)
        return cls(tuple(nt_order), tuple(t_order), rules, start)

    @cached_property
    def nonterminal_set(self) -> frozenset:
        return frozenset(self.nonterminals)

    @cached_property
    def terminal_set(self) -> frozenset:
        return frozenset(self.terminals)

    @cached_property
    def rules(self) -> Dict[str, Tuple[Tuple[str, ...], ...]]:
        """Right-hand sides grouped by left-hand side"""
        grouped: Dict[str, List[Tuple[str, ...]]] = {x: [] for x in self.nonterminals}
        for production in self.productions:
            grouped[production.lhs].append(production.rhs)
        return {x: tuple(rhss) for x, rhss in grouped.items()}

    def is_nonterminal(self, symbol: str) -> bool:
        return symbol in self.nonterminal_set

    def with_terminals(self, letters: Iterable[str]) -> 'Grammar':
        """Same grammar over an alphabet extended by letters"""
        extra = [x for x in letters if x not in self.terminal_set]
        if not extra:
            return self
        return Grammar(self.nonterminals, self.terminals + tuple(dict.fromkeys(extra)),
                       self.productions, self.start)

    def __str__(self):
        return format_grammar(self)

    def save(self, filepath: Path) -> Path:
        """Write the grammar in the grammar file format"""
        filepath = Path(filepath)
        filepath.write_text(format_grammar(self), encoding="utf-8")
        return filepath

    @classmethod
    def load(cls, filepath: Path) -> 'Grammar':
        """Read a grammar file"""
        return parse_grammar(Path(filepath).read_text(encoding="utf-8"))


@dataclass(frozen=True)
class SccDecomposition:
    """Strongly connected components of the dependency graph, sinks first"""
    components: Tuple[Tuple[str, ...], ...]
    component_of: Dict[str, int] = field(compare=False)

    def same_component(self, x: str, y: str) -> bool:
        return self.component_of[x] == self.component_of[y]

    def members(self, x: str) -> Tuple[str, ...]:
        return self.components[self.component_of[x]]


def fresh_symbol(base: str, taken) -> str:
    """base itself, or base with primes appended until unused"""
    name = base
    while name in taken:
        name += "'"
    return name


def _tokens(text: str) -> List[str]:
    return text.split()


def parse_grammar(text: str) -> Grammar:
    """Parse the grammar file format.

    A token is a nonterminal iff it appears as some left-hand side; an empty
    alternative denotes epsilon.
    """
    start: Optional[str] = None
    declared_terminals: List[str] = []
    productions: List[Production] = []
    rule_lines: Dict[str, int] = {}

    for number, raw_line in enumerate(text.splitlines(), start=1):
        line = raw_line.strip()
        if not line or line.startswith("#"):
            continue

        if start is None:
            key, sep, value = line.partition(":")
            if not sep or key.strip() != "start":
                raise GrammarSyntaxError("first line must be 'start: <symbol>'", number)
            tokens = _tokens(value)
            if len(tokens) != 1:
                raise GrammarSyntaxError("start line needs exactly one symbol", number)
            start = tokens[0]
            continue

        if "->" not in line:
            key, sep, value = line.partition(":")
            if sep and key.strip() == "terminals" and not productions:
                declared_terminals.extend(_tokens(value.replace("|", " ")))
                continue
            raise GrammarSyntaxError(f"expected '<lhs> -> alternatives', got {line!r}", number)

        lhs_text, _, body = line.partition("->")
        lhs_tokens = _tokens(lhs_text)
        if len(lhs_tokens) != 1 or "|" in lhs_text:
            raise GrammarSyntaxError("left-hand side must be a single symbol", number)
        lhs = lhs_tokens[0]
        rule_lines.setdefault(lhs, number)
        for alternative in body.split("|"):
            rhs = tuple(_tokens(alternative))
            if "->" in rhs:
                raise GrammarSyntaxError("'->' cannot be used as a symbol", number)
            productions.append(Production(lhs, rhs))

    if start is None:
        raise GrammarSyntaxError("missing 'start:' line")
    if start not in rule_lines:
        raise GrammarSyntaxError(f"undeclared start symbol {start!r} (no rule for it)")
    clash = [t for t in declared_terminals if t in rule_lines]
    if clash:
        raise GrammarSyntaxError(f"declared terminals have rules: {', '.join(clash)}")

    return Grammar.build(start, productions, declared_terminals)


def format_grammar(g: Grammar) -> str:
    """Render a grammar in the file format; the result re-parses to g"""
    lines = [f"start: {g.start}"]
    if g.terminals:
        lines.append("terminals: " + " ".join(g.terminals))
    run: List[Production] = []
    for production in g.productions + (None,):
        if run and (production is None or production.lhs != run[0].lhs):
            lines.append(f"{run[0].lhs} -> " + " | ".join(" ".join(p.rhs) for p in run))
            run = []
        if production is not None:
            run.append(production)
    return "\n".join(lines) + "\n"


def format_word(word: Sequence[str], separator: str = WORD_SEPARATOR, empty: str = EMPTY_WORD) -> str:
    """Space-free rendering of a word.

    Multi-character letters are joined by separator; a word made of one such
    letter keeps a trailing separator so that parse_word reads it back whole.
    """
    if not word:
        return empty
    if all(len(letter) == 1 for letter in word):
        return "".join(word)
    if len(word) == 1:
        return word[0] + separator
    return separator.join(word)


def parse_word(text: str, separator: str = WORD_SEPARATOR, empty: str = EMPTY_WORD) -> Word:
    """Inverse of format_word"""
    text = text.strip("\r\n") if separator.isspace() else text.strip()
    if text in ("", empty):
        return ()
    if separator in text:
        return tuple(part for part in text.split(separator) if part)
    return tuple(text)
