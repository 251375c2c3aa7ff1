"""Exception types raised by the numeric kernels."""


class MarketModelError(Exception):
    """Base class for numeric failures; the CLI maps these to exit code 2."""


class DegenerateEquilibrium(MarketModelError, ZeroDivisionError):
    pass


class InvalidSeed(MarketModelError, ValueError):
    pass


class ConvergenceFailure(MarketModelError):
    pass


class InsufficientPoints(MarketModelError, ValueError):
    pass
