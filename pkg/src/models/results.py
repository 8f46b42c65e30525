"""
Subclosure - Result Models
Verdicts of closure comparisons and reports of the inequivalence search
"""

from dataclasses import asdict, dataclass, field
from enum import Enum
from typing import Any, Dict, Optional

from src.models.grammar import Word, format_word


class Direction(str, Enum):
    """Which closure of a language is compared"""
    DOWN = "down"
    UP = "up"


class Side(str, Enum):
    """Which of two languages contains a separating word"""
    LEFT_ONLY = "left-only"
    RIGHT_ONLY = "right-only"

    def flipped(self) -> 'Side':
        return Side.RIGHT_ONLY if self is Side.LEFT_ONLY else Side.LEFT_ONLY


class VerdictKind(str, Enum):
    EQUAL = "equal"
    SEPARATED = "separated"


@dataclass(frozen=True)
class Verdict:
    """Outcome of a closure-equivalence check"""
    kind: VerdictKind
    witness: Optional[Word] = None
    side: Optional[Side] = None
    pairs_explored: int = 0

    def __post_init__(self):
        separated = self.kind is VerdictKind.SEPARATED
        if separated != (self.witness is not None) or separated != (self.side is not None):
            raise ValueError("a witness and side are given exactly for separated verdicts")

    @classmethod
    def equal(cls, pairs_explored: int = 0) -> 'Verdict':
        return cls(VerdictKind.EQUAL, pairs_explored=pairs_explored)

    @classmethod
    def separated(cls, witness: Word, side: Side, pairs_explored: int = 0) -> 'Verdict':
        return cls(VerdictKind.SEPARATED, tuple(witness), side, pairs_explored)

    @property
    def is_equal(self) -> bool:
        return self.kind is VerdictKind.EQUAL


@dataclass(frozen=True)
class InequivConfig:
    """Knobs of the refinement search"""
    max_depth: int = 3
    budget_seconds: Optional[float] = 30.0
    node_budget: Optional[int] = None
    scan_short_words: bool = True
    short_scan_max_len: int = 8
    parallel_tasks: int = 1

    def __post_init__(self):
        if self.max_depth < 0:
            raise ValueError("max_depth must be at least 0")
        if self.budget_seconds is not None and self.budget_seconds <= 0:
            raise ValueError("budget_seconds must be positive")
        if self.node_budget is not None and self.node_budget <= 0:
            raise ValueError("node_budget must be positive")
        if self.short_scan_max_len < 0:
            raise ValueError("short_scan_max_len must be at least 0")
        if self.parallel_tasks < 1:
            raise ValueError("parallel_tasks must be at least 1")

    @classmethod
    def from_config(cls, config, **overrides) -> 'InequivConfig':
        """Defaults from the inequiv section of a Config, then explicit overrides"""
        values = {
            'max_depth': config.get('inequiv.max_depth', 3),
            'budget_seconds': config.get('inequiv.budget_seconds', 30.0),
            'node_budget': config.get('equivalence.max_product_pairs'),
            'scan_short_words': config.get('inequiv.scan_short_words', True),
            'short_scan_max_len': config.get('inequiv.short_scan_max_len', 8),
            'parallel_tasks': config.get('inequiv.parallel_tasks', 1),
        }
        values.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**values)


class InequivStatus(str, Enum):
    INEQUIVALENT = "inequivalent"
    MAYBE_EQUAL = "maybe-equal"


class WitnessSource(str, Enum):
    """How a distinguishing word was obtained"""
    CLOSURE = "closure"
    EMPTY_TASK = "empty-task"
    SHORT_SCAN = "short-scan"


@dataclass
class InequivStats:
    """Counters collected while searching"""
    depth_reached: int = 0
    closure_checks: int = 0
    inconclusive_tasks: int = 0
    elapsed_seconds: float = 0.0
    exhausted: str = ""


@dataclass(frozen=True)
class InequivReport:
    """Verified distinguishing word, or the statistics of an unsuccessful search"""
    status: InequivStatus
    stats: InequivStats = field(default_factory=InequivStats)
    witness: Optional[Word] = None
    side: Optional[Side] = None
    source: Optional[WitnessSource] = None
    prefix: Optional[Word] = None

    @property
    def is_inequivalent(self) -> bool:
        return self.status is InequivStatus.INEQUIVALENT

    def to_dict(self) -> Dict[str, Any]:
        """Plain dictionary for printing"""
        data = asdict(self)
        data['status'] = self.status.value
        data['side'] = self.side.value if self.side else None
        data['source'] = self.source.value if self.source else None
        data['witness'] = format_word(self.witness) if self.witness is not None else None
        data['prefix'] = format_word(self.prefix) if self.prefix is not None else None
        return data
