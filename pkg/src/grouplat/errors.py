"""Exception types shared across the package.

The CLI maps these onto distinct exit codes, so keep the taxonomy stable:
parse problems, cap overruns, solubility refusals, and exhausted search
budgets are different failure modes and must stay distinguishable.
"""


class GroupParseError(ValueError):
    """Malformed permutation text, group file, or family spec string."""


class CapExceeded(RuntimeError):
    """A configured size cap was hit; the input is too large, not wrong."""


class OrderCapExceeded(CapExceeded):
    """Element enumeration passed the maximum group order."""


class LatticeCapExceeded(CapExceeded):
    """Subgroup enumeration passed the maximum subgroup count."""


class DegreeCapExceeded(CapExceeded):
    """Requested permutation degree above the configured limit."""


class NotSolubleError(ValueError):
    """Operation requires a soluble group and the input is not."""


class BudgetExhausted(RuntimeError):
    """A search ran out of its node budget; results so far are partial."""
