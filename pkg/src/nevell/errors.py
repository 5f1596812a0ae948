"""Exception hierarchy shared by all modules."""


class NevellError(Exception):
    """Base class for every error raised by this package."""


class DegenerateLattice(NevellError, ValueError):
    """Generators are zero or (numerically) collinear."""


class DegenerateInvariants(NevellError):
    """The discriminant vanished numerically; indicates an evaluation failure."""


class UnsupportedWeight(NevellError, ValueError):
    """Eisenstein weight is odd or below 4."""


class TooCloseToPole(NevellError, ValueError):
    """A direct-sum oracle was asked for a value too near a lattice point."""


class CharacterInconsistent(NevellError):
    """Probe points disagree on the translation sign of a primitive function."""


class ZeroSearchFailed(NevellError):
    """The zero search did not account for exactly two zeros per cell."""


class WitnessVerificationFailed(NevellError):
    """A square-root witness failed its pointwise re-verification."""
