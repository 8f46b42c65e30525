"""
Subclosure - Error Types
Exceptions raised by the grammar, automaton and closure layers
"""

from typing import List, Optional


class SubclosureError(Exception):
    """Base class for all errors raised by the toolkit"""


class GrammarSyntaxError(SubclosureError):
    """Grammar text does not follow the grammar file format"""

    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class NfaFormatError(SubclosureError):
    """NFA text does not follow the NFA file format"""

    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class EmptyLanguageError(SubclosureError):
    """The start symbol of a grammar derives no word"""


class AlphabetError(SubclosureError):
    """A word contains a letter outside the alphabet"""


class QnfViolationError(SubclosureError):
    """A grammar handed to the closure construction is not in simple QNF"""

    def __init__(self, violations: List[str]):
        self.violations = list(violations)
        shown = "; ".join(self.violations[:5])
        more = f" (+{len(self.violations) - 5} more)" if len(self.violations) > 5 else ""
        super().__init__(f"grammar is not in simple QNF: {shown}{more}")


class BudgetExceededError(SubclosureError):
    """A configured search or construction budget ran out"""

    def __init__(self, kind: str, limit):
        self.kind = kind
        self.limit = limit
        super().__init__(f"{kind} budget exceeded (limit {limit})")


class StateBudgetExceeded(BudgetExceededError):
    """Too many automaton states or product pairs"""


class TimeBudgetExceeded(BudgetExceededError):
    """Wall-clock budget ran out"""


class InconsistencyError(SubclosureError):
    """An internal precondition was violated"""


class MutationError(SubclosureError):
    """A seeded grammar edit cannot be applied"""
