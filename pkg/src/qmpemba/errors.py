"""Exception hierarchy shared by all modules."""


class MpembaError(Exception):
    """Base class for every error raised by this package."""


class ConfigError(MpembaError, ValueError):
    """Invalid configuration or parameter value."""


class NumericalError(MpembaError, ArithmeticError):
    """A numerical precondition or postcondition failed."""


# superoperator core
class NonHermitianInput(NumericalError):
    pass


class NonlinearGenerator(NumericalError):
    pass


class NonRealEntry(NumericalError):
    pass


class DefectiveLiouvillian(NumericalError):
    """Liouvillian is not diagonalizable; perturb the parameters."""


# model
class NonPositiveTheta(ConfigError):
    pass


# dynamics
class NonUniqueSteadyState(NumericalError):
    pass


class NonPhysicalSteadyState(NumericalError):
    pass


class StepTooLarge(NumericalError):
    pass


# analysis
class InitialOrderViolated(NumericalError):
    pass


class DegenerateCurves(RuntimeWarning):
    """Warning: the total gap area between the two curves vanishes."""


class ZeroSlowMode(NumericalError):
    pass


class SlowModeUnpopulated(NumericalError):
    pass


class MismatchedDecomposition(NumericalError):
    pass
