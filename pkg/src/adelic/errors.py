"""Exception types shared across the package.

``DomainError`` subclasses ``ValueError`` and marks inputs outside an
operation's documented domain; the remaining exceptions signal failed
numerical certificates rather than bad arguments.
"""


class DomainError(ValueError):
    """Input falls outside an operation's documented domain."""


class PrecisionError(RuntimeError):
    """A residue does not carry enough depth to decide the question."""


class LiftError(RuntimeError):
    """Grid refinement failed to make branch continuation unambiguous."""


class ProximityError(RuntimeError):
    """Two circle maps are not close enough for a controlled common lift."""


class PeriodCertificateError(RuntimeError):
    """No shift length up to the bound passes the sampled invariance check."""


class WindingError(RuntimeError):
    """A winding computation produced an inconsistent or non-integer answer."""


class TailError(RuntimeError):
    """Function tails have not settled at the requested radius."""


class HomotopyError(RuntimeError):
    """Interpolation refused: the endpoint invariants disagree."""


class ScaleError(RuntimeError):
    """The chosen block scale does not control the map's variation."""


class NotAProjectionError(RuntimeError):
    """Sampled values are not 0/1 within tolerance."""
