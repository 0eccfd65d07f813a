class EagleError(Exception):
    pass


class ContractError(EagleError, ValueError):
    """A caller broke a precondition (bad width, bad key, out-of-range value)."""


class FormatError(EagleError):
    """A serialized container or key file could not be parsed."""


class MalformedInput(EagleError, ValueError):
    """Input that no genuine encoder output could produce."""


class BudgetExceeded(ContractError):
    """An exhaustive run would exceed the enumeration budget."""
