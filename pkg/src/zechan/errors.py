"""Exception types shared across the package."""


class ValidationError(ValueError):
    """A value violates a structural invariant. Carries all violations."""

    def __init__(self, violations):
        self.violations = tuple(violations)
        super().__init__("; ".join(self.violations))


class FormatError(ValueError):
    """A document cannot be parsed into a toolkit value."""


class BudgetExceededError(RuntimeError):
    """An exhaustive search hit its configured budget before finishing."""
