"""Exception hierarchy shared by all cvpower modules.

The CLI maps these onto exit codes: validation-type errors exit 2,
integrity errors exit 3.
"""


class CvpError(Exception):
    """Base class for all cvpower errors."""


class InvalidInputError(CvpError):
    """Measurement data is malformed (non-finite phasor, wrong arity, bad unit tag)."""


class InvalidConfigError(CvpError):
    """Configuration value out of range (negative rho, undersampled grid, bad frequency)."""


class KclViolationError(InvalidInputError):
    """Three-wire analysis requested but the line currents do not sum to zero."""


class IntegrityError(CvpError):
    """Independently computed routes disagree beyond tolerance; results are untrustworthy."""


class InputDocumentError(CvpError):
    """Input document failed schema validation; the message names the offending field."""
