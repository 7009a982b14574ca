"""Exception types shared across the package."""


class TAveragerError(Exception):
    """Base class for all package errors."""


class UnsupportedPreset(TAveragerError):
    pass


class WindowTooSmall(TAveragerError):
    pass


class BoundaryUndefined(TAveragerError):
    pass


class NotComparableDomain(TAveragerError):
    pass


class NotFiniteType(TAveragerError):
    pass


class NonAisle(TAveragerError):
    def __init__(self, msg, witness=None):
        super().__init__(msg)
        self.witness = witness


class BudgetExhausted(TAveragerError):
    pass


class DifferentTube(TAveragerError):
    pass


class NoExtension(TAveragerError):
    pass


class InvalidSetup(TAveragerError):
    def __init__(self, msg, witness=None):
        super().__init__(msg)
        self.witness = witness


class NotNonRegular(TAveragerError):
    pass


class ComponentMismatch(TAveragerError):
    pass


class UnknownBuiltin(TAveragerError):
    pass


class NotASymmetry(TAveragerError):
    def __init__(self, msg, witness=None):
        super().__init__(msg)
        self.witness = witness


class OrderCapExceeded(TAveragerError):
    pass


class ConfigError(TAveragerError):
    """Schema or reference error in a configuration file."""
