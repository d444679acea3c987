"""Exception hierarchy shared by every module."""


class SubrepError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(SubrepError, ValueError):
    pass


class AlphabetError(SubrepError, ValueError):
    pass


class DeltaRangeError(SubrepError, ValueError):
    pass


class EmptyFactorError(SubrepError, ValueError):
    pass


class PositionError(SubrepError, IndexError):
    pass


class DuplicateRepeatError(SubrepError, ValueError):
    """Two repeats with the same (beg, period) key met in one set."""


class PairMismatchError(SubrepError, ValueError):
    """Runs passed as a pair do not share period and Lyndon root."""


class InternalInvariantError(SubrepError, RuntimeError):
    """A structural invariant of the sweep was violated (implementation bug)."""


class OracleSizeError(SubrepError, ValueError):
    pass
