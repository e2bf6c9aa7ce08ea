"""Exception types raised by the analysis routines."""

import numpy as np


class NotSymmetric(ValueError):
    pass


class NotPositiveDefinite(np.linalg.LinAlgError):
    pass


class Singular(np.linalg.LinAlgError):
    pass


class MassNotPositiveDefinite(NotPositiveDefinite):
    pass


class SingularBorderedSystem(Singular):
    """The bordered kinetostatic matrix of a leg cannot be inverted."""


class EmptyWorkspace(ValueError):
    pass


class OutOfWorkspace(ValueError):
    pass


class SingularPosture(ValueError):
    """Posture lies on (or within tolerance of) a singularity."""


class NonPositiveCompliance(ValueError):
    pass


class InvalidAlpha(ValueError):
    pass


class InvalidElementCount(ValueError):
    pass


class InconsistentTopology(ValueError):
    pass


class NoDynamicDOF(ValueError):
    pass


class ParseError(ValueError):
    pass


class ValidationError(ValueError):
    pass
