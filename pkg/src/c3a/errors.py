"""Exception hierarchy shared by all c3a modules."""


class C3AError(Exception):
    """Base class for every error raised by c3a."""


class DomainError(C3AError, ValueError):
    """Argument outside the domain an evaluator supports."""


class PoleError(DomainError):
    """Evaluation requested at a pole (e.g. Gamma at a nonpositive integer)."""


class NonConvergenceError(C3AError, ArithmeticError):
    """A series or iterative scheme did not reach its tolerance."""


class DegenerateGeometryError(C3AError, ValueError):
    """Momentum/direction configuration hits a degenerate (excluded) case."""


class SingularityProximityError(C3AError, ValueError):
    """A finite-difference stencil would come too close to a Coulomb singularity."""


class QuadratureError(NonConvergenceError):
    """Adaptive quadrature failed to meet its tolerance at the maximum order."""


class InsufficientSpanError(C3AError, ValueError):
    """Too few samples, or too narrow a range, for a decay fit."""


class MultiScreenOverlapError(C3AError, ValueError):
    """Two partition weights are simultaneously active at one point."""


class BandLimitError(C3AError, ValueError):
    """A function on the sphere is not resolved by the requested degree."""
