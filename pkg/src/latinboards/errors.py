"""Exception types shared across the package."""


class LatinBoardsError(Exception):
    """Base class for all package errors."""


class InvalidParameter(LatinBoardsError):
    """A construction parameter is out of range or unsupported."""


class UnsupportedSource(LatinBoardsError):
    """The requested (kind, point kind, subdivision) combination is not built in."""


class AmbiguousSeed(LatinBoardsError):
    """A kaleidoscopic seed sits on a mirror, so its orbit is smaller than the group."""


class NotInvariant(LatinBoardsError):
    """A transform does not map the point set onto itself."""


class UndefinedSIN(LatinBoardsError):
    """Intersection numbers need at least two lines."""


class NonSimpleDual(LatinBoardsError):
    """The dual would repeat a line, so it is not a simple design."""


class TooLarge(LatinBoardsError):
    """Input exceeds a search guard; pass force=True to override."""


class NotAnAction(LatinBoardsError):
    """A permutation does not map the given blocks to blocks."""


class NotUniform(LatinBoardsError):
    """Warp search requires all symmetric lines to have equal size."""


class SizeMismatch(LatinBoardsError):
    """Line size is not divisible by the requested intersection count k."""


class InvalidLabeling(LatinBoardsError):
    """Symbol count does not match the number of warp lines."""


class UnsupportedBoard(LatinBoardsError):
    """The operation needs a board shape this board does not have."""


class InvalidPartial(LatinBoardsError):
    """A partial assignment repeats a symbol beyond multiplicity k on a line."""


class UnknownEntry(LatinBoardsError):
    """No catalog entry with that name."""


class ConstructionBug(LatinBoardsError):
    """A catalog entry failed to reproduce its expected profile."""


class LoadError(LatinBoardsError):
    """A board or puzzle file is malformed or fails verification."""


class NoLayout(LatinBoardsError):
    """Rendering needs 2D layout coordinates that are not available."""
