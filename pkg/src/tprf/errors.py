"""Exception hierarchy shared by the physics modules and the CLI."""


class TprfError(Exception):
    """Base class for every error raised by this package."""


class InvalidDimensionError(TprfError, ValueError):
    pass


class ShapeError(TprfError, ValueError):
    pass


class InvalidRateError(TprfError, ValueError):
    pass


class InvalidTimeError(TprfError, ValueError):
    pass


class NonUniqueSteadyStateError(TprfError, ArithmeticError):
    pass


class NotPhysicalError(TprfError, ArithmeticError):
    """A density matrix violated trace, Hermiticity or positivity tolerances."""


class AmbiguousGroupingError(TprfError, ValueError):
    pass


class StaleStateError(TprfError, ValueError):
    pass


class DegenerateNormalizationError(TprfError, ZeroDivisionError):
    pass


class GridError(TprfError, ValueError):
    pass


class ElasticContaminationError(TprfError, ValueError):
    pass


class KernelError(TprfError, ValueError):
    pass


class UnderdeterminedError(TprfError, ValueError):
    pass


class ConfigError(TprfError, ValueError):
    pass
