"""Exception types shared across the laboratory."""


class TsplabError(Exception):
    """Base class for all errors raised by this package."""


class MissingField(TsplabError):
    """A required TSPLIB keyword (e.g. DIMENSION) is absent."""


class CountMismatch(TsplabError):
    """Coordinate or weight count disagrees with the declared dimension."""


class UnsupportedFormat(TsplabError):
    """Weight type / format outside the supported subset; named in the message."""


class NonSymmetric(TsplabError):
    """Explicit matrix asymmetric beyond tolerance."""


class NegativeDistance(TsplabError):
    """A distance entry is negative."""


class DimensionMismatch(TsplabError):
    """Tour length disagrees with the matrix dimension."""


class NoCoordinates(TsplabError):
    """Operation requires coordinates but the instance has none."""


class DegenerateInput(TsplabError):
    """All points collinear (or coincident); carries the two extreme indices."""

    def __init__(self, message: str, extremes: tuple[int, int]):
        super().__init__(message)
        self.extremes = extremes


class EmptyInput(TsplabError):
    """An input vector is empty."""


class NonFiniteInput(TsplabError):
    """An input vector contains NaN or infinity."""


class UnknownAlgorithm(TsplabError):
    """Algorithm id not in the registry / preset table."""


class NoSuchColumn(TsplabError):
    """Preset column name not recognized."""


class BudgetTooSmall(TsplabError):
    """Race budget cannot cover one full evaluation round."""


class MissingPlaceholder(TsplabError):
    """Prompt template lacks a required placeholder; names which."""


class EmptyField(TsplabError):
    """A refinement request field is empty."""


class AttemptOutOfRange(TsplabError):
    """Attempt index outside [1, max_attempts]."""


class ZeroBaseline(TsplabError):
    """Gap undefined: the baseline cost is zero or negative."""
