"""Exception hierarchy shared by every stage of the pipeline."""


class OptomechError(Exception):
    """Base class for all errors raised by this package."""


class InvalidParam(OptomechError, ValueError):
    """One or more physical parameters violate their constraints.

    ``name``, ``value`` and ``constraint`` describe the first violation;
    ``violations`` holds every ``(name, value, constraint)`` triple found.
    """

    def __init__(self, name, value, constraint, violations=None):
        self.name = name
        self.value = value
        self.constraint = constraint
        self.violations = list(violations) if violations else [(name, value, constraint)]
        msg = "; ".join(f"{n}={v!r} violates {c}" for n, v, c in self.violations)
        super().__init__(msg)


class NumericalError(OptomechError):
    """Base class for failures of the numerical pipeline (as opposed to bad input)."""


class DenominatorSingular(NumericalError):
    """Steady-state denominator vanishes: the drive sits on the parametric threshold."""


class NoRealRoot(NumericalError):
    pass


class RootFindFailure(NumericalError):
    pass


class NonFinite(NumericalError):
    """Mean-field integration overflowed (the operating point is unstable)."""


class ConvergenceFailure(NumericalError):
    pass


class RouthDegenerate(NumericalError):
    """A pivot of the Routh array vanished, so the array verdict is undefined."""


class UnstableDrift(NumericalError):
    pass


class SingularSystem(NumericalError):
    pass


class NotSymplecticSpectrum(NumericalError):
    pass


class UnphysicalCM(NumericalError):
    """Reduced covariance matrix violates the determinant conditions of a quantum state."""


class ResidualTooLarge(NumericalError):
    pass
