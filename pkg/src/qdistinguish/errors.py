"""Exception hierarchy shared by all modules."""


class QDistinguishError(Exception):
    """Base class for library errors."""


class NoConvergence(QDistinguishError):
    pass


class DimensionMismatch(QDistinguishError, ValueError):
    pass


class DimensionTooLarge(QDistinguishError, ValueError):
    pass


class InvalidDimension(QDistinguishError, ValueError):
    pass


class InvalidState(QDistinguishError, ValueError):
    """A matrix failed density-matrix validation."""


class NotHermitian(InvalidState):
    pass


class NotPsd(InvalidState):
    pass


class TraceNotOne(InvalidState):
    pass


class InvalidSpectrum(QDistinguishError, ValueError):
    pass


class InvalidExponent(QDistinguishError, ValueError):
    pass


class IndexOutOfRange(QDistinguishError, ValueError):
    pass


class NotDiscriminable(QDistinguishError):
    pass


class EmptySet(QDistinguishError, ValueError):
    pass


class SetTooLarge(QDistinguishError, ValueError):
    pass


class UnsupportedMetric(QDistinguishError, ValueError):
    pass
