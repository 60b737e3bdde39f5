"""Error hierarchy shared by all modules.

The CLI maps these to exit codes: validation problems exit with 2,
resource caps with 3.
"""


class CentralityError(Exception):
    """Base class for all influence-centrality errors."""
    exit_code = 1


class ValidationError(CentralityError):
    """Invalid input, configuration or parameters."""
    exit_code = 2


class SizeGuardError(ValidationError):
    """Instance too large for an exact enumeration oracle."""


class ResourceCapError(CentralityError):
    """Configured RR-set budget would be exceeded."""
    exit_code = 3


class SingularBasisError(CentralityError):
    """Layered-graph basis matrix is not invertible."""
