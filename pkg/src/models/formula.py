"""
Subclosure - Formula Models
Propositional DNF formulas behind the hardness instances
"""

import itertools
import re
from dataclasses import dataclass
from typing import Dict, Iterable, Mapping, Optional, Sequence, Tuple

Clause = Tuple[Tuple[int, bool], ...]

_LITERAL = re.compile(r"^(?P<neg>[!~¬]?)\s*x(?P<var>\d+)$")


@dataclass(frozen=True)
class DnfFormula:
    """Disjunction of clauses; each clause maps variable index to polarity"""
    var_count: int
    clauses: Tuple[Clause, ...]

    def __post_init__(self):
        if self.var_count < 0:
            raise ValueError("var_count must be non-negative")
        for clause in self.clauses:
            seen: Dict[int, bool] = {}
            for var, polarity in clause:
                if not 0 <= var < self.var_count:
                    raise ValueError(f"variable x{var} outside 0..{self.var_count - 1}")
                if seen.setdefault(var, polarity) != polarity:
                    raise ValueError(f"clause assigns both polarities to x{var}")

    @classmethod
    def build(cls, var_count: int, clauses: Iterable[Mapping[int, bool]]) -> 'DnfFormula':
        return cls(var_count, tuple(tuple(sorted(c.items())) for c in clauses))

    def evaluate(self, assignment: Sequence[bool]) -> bool:
        if len(assignment) != self.var_count:
            raise ValueError(f"expected {self.var_count} values, got {len(assignment)}")
        return any(all(assignment[var] == polarity for var, polarity in clause)
                   for clause in self.clauses)

    def satisfying_assignments(self) -> Iterable[Tuple[bool, ...]]:
        """Truth-table rows that make the formula true, in binary counting order"""
        for row in itertools.product((False, True), repeat=self.var_count):
            if self.evaluate(row):
                yield row

    def is_tautology(self) -> bool:
        return all(self.evaluate(row) for row in itertools.product((False, True), repeat=self.var_count))

    @classmethod
    def parse(cls, text: str, var_count: Optional[int] = None) -> 'DnfFormula':
        """Read ``x0 & !x1 | x1``; an empty text is the empty disjunction"""
        clauses = []
        highest = -1
        for part in filter(None, (p.strip() for p in text.split("|"))):
            clause: Dict[int, bool] = {}
            for token in filter(None, (t.strip() for t in part.split("&"))):
                if token in ("T", "true"):
                    continue
                match = _LITERAL.match(token)
                if not match:
                    raise ValueError(f"bad literal {token!r}")
                var = int(match.group("var"))
                polarity = not match.group("neg")
                if clause.setdefault(var, polarity) != polarity:
                    raise ValueError(f"clause {part!r} contradicts itself on x{var}")
                highest = max(highest, var)
            clauses.append(clause)
        return cls.build(highest + 1 if var_count is None else var_count, clauses)

    def __str__(self):
        if not self.clauses:
            return ""
        return " | ".join(" & ".join(("" if pol else "!") + f"x{var}" for var, pol in clause) or "true"
                          for clause in self.clauses)
