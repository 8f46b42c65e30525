"""
Subclosure - CLI Helpers
Input detection, output writing and word rendering shared by the commands
"""

import sys
from pathlib import Path
from typing import Optional, Sequence, Union

from src.models.automata import Nfa, parse_nfa
from src.models.grammar import Grammar, format_word, parse_grammar
from src.utils.resources import SAMPLE_PREFIX, get_sample_grammar_path

EXIT_OK = 0
EXIT_DIFFERENT = 1
EXIT_ERROR = 2


def read_text(path: Union[str, Path]) -> str:
    """File contents; '-' reads stdin and sample:NAME a bundled grammar"""
    if str(path) == "-":
        return sys.stdin.read()
    if str(path).startswith(SAMPLE_PREFIX):
        path = get_sample_grammar_path(str(path)[len(SAMPLE_PREFIX):])
    return Path(path).read_text(encoding="utf-8")


def load_grammar(path: Union[str, Path]) -> Grammar:
    return parse_grammar(read_text(path))


def load_nfa(path: Union[str, Path]) -> Nfa:
    return parse_nfa(read_text(path))


def load_language(path: Union[str, Path]) -> Union[Grammar, Nfa]:
    """Grammar or NFA, told apart by the first non-comment line"""
    text = read_text(path)
    for line in text.splitlines():
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        if stripped.startswith("nfa"):
            return parse_nfa(text)
        return parse_grammar(text)
    return parse_grammar(text)


def write_output(text: str, path: Optional[Union[str, Path]] = None):
    """Write to path, or to stdout when no path (or '-') is given"""
    if path is None or str(path) == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8")


class WordRenderingMixin:
    """Words rendered with the configured separator and empty-word symbol"""

    def render_word(self, word: Sequence[str]) -> str:
        return format_word(word, self.config.word_separator, self.config.empty_word)
