"""
Subclosure - Automaton Models
Epsilon-NFAs, total DFAs, the NFA text format and DOT export
"""

from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from src.models.errors import AlphabetError, NfaFormatError

EPSILON = ""
EPSILON_TOKEN = "eps"

Transition = Tuple[int, str, int]


@dataclass(frozen=True)
class Nfa:
    """Finite automaton with epsilon moves; states are 0..state_count-1"""
    state_count: int
    alphabet: Tuple[str, ...]
    transitions: FrozenSet[Transition]
    initial: FrozenSet[int]
    final: FrozenSet[int]
    entry: Optional[int] = None
    exit: Optional[int] = None

    def __post_init__(self):
        if self.state_count < 0:
            raise ValueError("state_count must be non-negative")
        if len(set(self.alphabet)) != len(self.alphabet):
            raise ValueError("alphabet must not repeat letters")
        if EPSILON in self.alphabet or EPSILON_TOKEN in self.alphabet:
            raise ValueError(f"{EPSILON_TOKEN!r} and the empty string cannot be letters")
        letters = set(self.alphabet)
        for p, label, q in self.transitions:
            if not (0 <= p < self.state_count and 0 <= q < self.state_count):
                raise ValueError(f"transition ({p}, {label!r}, {q}) leaves the state range")
            if label != EPSILON and label not in letters:
                raise ValueError(f"transition label {label!r} is not in the alphabet")
        for state in (*self.initial, *self.final, *(s for s in (self.entry, self.exit) if s is not None)):
            if not 0 <= state < self.state_count:
                raise ValueError(f"state {state} is out of range")

    @classmethod
    def build(cls, state_count: int, alphabet: Iterable[str], transitions: Iterable[Transition],
              initial: Iterable[int], final: Iterable[int],
              entry: Optional[int] = None, exit: Optional[int] = None) -> 'Nfa':
        return cls(state_count, tuple(dict.fromkeys(alphabet)), frozenset(transitions),
                   frozenset(initial), frozenset(final), entry, exit)

    @cached_property
    def successors(self) -> Tuple[Tuple[Tuple[str, int], ...], ...]:
        """Outgoing (label, target) pairs per state, sorted"""
        out: List[List[Tuple[str, int]]] = [[] for _ in range(self.state_count)]
        for p, label, q in self.transitions:
            out[p].append((label, q))
        return tuple(tuple(sorted(edges)) for edges in out)

    @cached_property
    def predecessors(self) -> Tuple[Tuple[int, ...], ...]:
        """Sources of incoming transitions per state, any label"""
        back: List[set] = [set() for _ in range(self.state_count)]
        for p, _, q in self.transitions:
            back[q].add(p)
        return tuple(tuple(sorted(sources)) for sources in back)

    @cached_property
    def letter_set(self) -> FrozenSet[str]:
        return frozenset(self.alphabet)

    def check_word(self, word: Sequence[str]):
        foreign = [x for x in word if x not in self.letter_set]
        if foreign:
            raise AlphabetError(f"letters {sorted(set(foreign))} are not in the alphabet {list(self.alphabet)}")

    def __str__(self):
        return format_nfa(self)

    def save(self, filepath: Path) -> Path:
        """Write the automaton in the NFA file format"""
        filepath = Path(filepath)
        filepath.write_text(format_nfa(self), encoding="utf-8")
        return filepath

    @classmethod
    def load(cls, filepath: Path) -> 'Nfa':
        return parse_nfa(Path(filepath).read_text(encoding="utf-8"))


@dataclass(frozen=True)
class Dfa:
    """Total deterministic automaton; delta[state][i] follows alphabet[i]"""
    alphabet: Tuple[str, ...]
    delta: Tuple[Tuple[int, ...], ...]
    initial: int
    final: FrozenSet[int]
    # subset of NFA states behind each DFA state, kept by determinize
    state_sets: Optional[Tuple[FrozenSet[int], ...]] = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        n = len(self.delta)
        if not 0 <= self.initial < n:
            raise ValueError("initial state out of range")
        for row in self.delta:
            if len(row) != len(self.alphabet):
                raise ValueError("transition table is not total")
            if any(not 0 <= q < n for q in row):
                raise ValueError("transition target out of range")
        if any(not 0 <= q < n for q in self.final):
            raise ValueError("final state out of range")

    @property
    def state_count(self) -> int:
        return len(self.delta)

    @cached_property
    def letter_index(self) -> Dict[str, int]:
        return {x: i for i, x in enumerate(self.alphabet)}

    def step(self, state: int, letter: str) -> Optional[int]:
        """Successor of state on letter, None for letters outside the alphabet"""
        i = self.letter_index.get(letter)
        return None if i is None else self.delta[state][i]

    def run(self, word: Sequence[str]) -> int:
        state = self.initial
        for letter in word:
            i = self.letter_index.get(letter)
            if i is None:
                raise AlphabetError(f"letter {letter!r} is not in the alphabet {list(self.alphabet)}")
            state = self.delta[state][i]
        return state

    def accepts(self, word: Sequence[str]) -> bool:
        return self.run(word) in self.final


def parse_nfa(text: str) -> Nfa:
    """Parse the NFA file format.

    Header ``nfa states:<n> alphabet:a,b`` followed by ``initial:``, ``final:``,
    ``trans: p label q`` and the optional ``entry:``/``exit:`` lines.
    """
    header_seen = False
    state_count = 0
    alphabet: List[str] = []
    initial: List[int] = []
    final: List[int] = []
    transitions: List[Transition] = []
    designated: Dict[str, int] = {}

    def states(value: str, number: int) -> List[int]:
        try:
            return [int(token) for token in value.split()]
        except ValueError:
            raise NfaFormatError(f"state indices must be integers: {value.strip()!r}", number)

    for number, raw_line in enumerate(text.splitlines(), start=1):
        line = raw_line.strip()
        if not line or line.startswith("#"):
            continue

        if not header_seen:
            tokens = line.split()
            if not tokens or tokens[0] != "nfa":
                raise NfaFormatError("first line must be 'nfa states:<n> alphabet:<letters>'", number)
            fields = {}
            for token in tokens[1:]:
                key, sep, value = token.partition(":")
                if not sep:
                    raise NfaFormatError(f"malformed header field {token!r}", number)
                fields[key] = value
            try:
                state_count = int(fields.get("states", ""))
            except ValueError:
                raise NfaFormatError("header needs 'states:<n>'", number)
            alphabet = [x for x in fields.get("alphabet", "").split(",") if x]
            header_seen = True
            continue

        key, sep, value = line.partition(":")
        key = key.strip()
        if not sep:
            raise NfaFormatError(f"expected '<field>: ...', got {line!r}", number)
        if key == "initial":
            initial.extend(states(value, number))
        elif key == "final":
            final.extend(states(value, number))
        elif key in ("entry", "exit"):
            found = states(value, number)
            if len(found) != 1:
                raise NfaFormatError(f"'{key}' takes exactly one state", number)
            designated[key] = found[0]
        elif key == "trans":
            parts = value.split()
            if len(parts) != 3:
                raise NfaFormatError("transition lines read 'trans: <p> <label|eps> <q>'", number)
            p, label, q = parts
            try:
                p_state, q_state = int(p), int(q)
            except ValueError:
                raise NfaFormatError("transition endpoints must be integers", number)
            transitions.append((p_state, EPSILON if label == EPSILON_TOKEN else label, q_state))
        else:
            raise NfaFormatError(f"unknown field {key!r}", number)

    if not header_seen:
        raise NfaFormatError("missing 'nfa' header")
    try:
        return Nfa.build(state_count, alphabet, transitions, initial, final,
                         designated.get("entry"), designated.get("exit"))
    except ValueError as e:
        raise NfaFormatError(str(e))


def format_nfa(a: Nfa) -> str:
    """Render an automaton in the NFA file format"""
    lines = [f"nfa states:{a.state_count} alphabet:{','.join(a.alphabet)}",
             "initial: " + " ".join(map(str, sorted(a.initial))),
             "final: " + " ".join(map(str, sorted(a.final)))]
    if a.entry is not None:
        lines.append(f"entry: {a.entry}")
    if a.exit is not None:
        lines.append(f"exit: {a.exit}")
    for p, label, q in sorted(a.transitions):
        lines.append(f"trans: {p} {label or EPSILON_TOKEN} {q}")
    return "\n".join(line.rstrip() for line in lines) + "\n"


def to_dot(a: Nfa, name: str = "closure") -> str:
    """Graphviz rendering with parallel edges merged into one label"""
    labels: Dict[Tuple[int, int], List[str]] = {}
    for p, label, q in sorted(a.transitions):
        labels.setdefault((p, q), []).append(label or "ε")
    lines = [f"digraph {name} {{", "  rankdir=LR;", '  node [shape=circle];']
    for state in range(a.state_count):
        shape = "doublecircle" if state in a.final else "circle"
        lines.append(f'  q{state} [shape={shape}, label="{state}"];')
    for i, state in enumerate(sorted(a.initial)):
        lines.append(f'  start{i} [shape=point]; start{i} -> q{state};')
    for (p, q), names in labels.items():
        text = ",".join(names).replace('"', '\\"')
        lines.append(f'  q{p} -> q{q} [label="{text}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
