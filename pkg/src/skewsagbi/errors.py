"""Exception types raised across the package."""

from __future__ import annotations


class SkewSagbiError(Exception):
    """Base class for every error raised by this package."""


class DiagramError(SkewSagbiError, ValueError):
    pass


class LengthMismatch(DiagramError):
    def __init__(self, n_lambda: int, n_mu: int):
        super().__init__(f"lambda has {n_lambda} entries but mu has {n_mu}")
        self.n_lambda = n_lambda
        self.n_mu = n_mu


class NotNonincreasing(DiagramError):
    def __init__(self, which: str, index: int):
        super().__init__(f"{which} is not nonincreasing at position {index}")
        self.which = which
        self.index = index


class MuExceedsLambda(DiagramError):
    def __init__(self, index: int):
        super().__init__(f"mu exceeds lambda in row {index}")
        self.index = index


class NonPositiveLambda(DiagramError):
    def __init__(self, index: int):
        super().__init__(f"lambda must be positive, row {index}")
        self.index = index


class EmptyInput(DiagramError):
    pass


class CellOutsideDiagram(DiagramError):
    def __init__(self, cell):
        super().__init__(f"cell {cell} is not in the diagram")
        self.cell = cell


class InvalidTVariable(SkewSagbiError, ValueError):
    def __init__(self, t):
        super().__init__(f"{t} is not a variable of R over this diagram")
        self.t = t


class InvariantBreach(SkewSagbiError, AssertionError):
    """A rule produced a variable outside R."""


class NonDecreasingStep(SkewSagbiError, AssertionError):
    """A reduction step failed to decrease the chi#tau order."""


class BudgetExceeded(SkewSagbiError):
    def __init__(self, count: int, budget: int):
        super().__init__(f"{count} monomials exceed the enumeration budget {budget}")
        self.count = count
        self.budget = budget


class NoCaseMatches(SkewSagbiError, AssertionError):
    pass


class UnknownOverlay(SkewSagbiError, ValueError):
    pass


class ParseError(SkewSagbiError, ValueError):
    pass
