"""Exception hierarchy shared across the package."""


class RelayDeployError(Exception):
    """Base class for all package errors."""


class DomainError(RelayDeployError, ValueError):
    """An argument lies outside the domain an operation is defined on."""


class DisconnectedGraphError(RelayDeployError):
    """A connected graph was required but the input has several components."""


class SpectralError(RelayDeployError):
    """The symmetric eigen-solver failed to converge."""

    def __init__(self, dimension: int, reason: str = "") -> None:
        self.dimension = dimension
        msg = f"eigen-solver did not converge on a {dimension}x{dimension} Laplacian"
        if reason:
            msg += f": {reason}"
        super().__init__(msg)


class ConfigurationError(RelayDeployError, ValueError):
    """A grid, layout or plan cannot be realised as configured."""


class CombinatorialBudgetError(RelayDeployError):
    """Exhaustive enumeration would exceed the allowed number of subsets."""
