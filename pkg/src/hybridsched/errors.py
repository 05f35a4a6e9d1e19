"""Exception types shared across the package.

The CLI maps these onto exit codes: validation problems exit 2,
capability/feasibility problems exit 3, anything else raised from the
library exits 4.
"""


class HybridSchedError(Exception):
    """Base class for every error raised by this package."""


class ValidationError(HybridSchedError, ValueError):
    """Malformed input data or a violated value constraint."""


class CapabilityError(HybridSchedError):
    """A token count exceeds what a system can serve."""


class InfeasibleError(HybridSchedError):
    """No feasible policy or assignment exists for the given inputs."""


class OracleBoundError(ValidationError):
    """Instance too large for the exhaustive-search oracle."""
