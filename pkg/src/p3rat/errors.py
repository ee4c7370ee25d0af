"""Exception types raised across the package.

Every error that signals a mathematical precondition violation (as opposed
to a plain programming bug) gets its own class so callers can react to the
specific failure mode.
"""


class P3ratError(Exception):
    """Base class for all package errors."""


class NonExactDivision(P3ratError):
    """Polynomial division left a nonzero remainder where exactness was required."""


class PoleHit(P3ratError):
    """A sample point coincides with a pole (or the fixed singular point x=0)."""


class DegreeMismatch(P3ratError):
    """Rational function does not tend to a finite limit at infinity."""


class DenominatorUnderflow(P3ratError):
    """|denominator(x)| fell below the certification threshold; x is numerically a pole."""


class ZeroDenominator(P3ratError):
    """A potential-chain denominator vanished identically."""


class DegenerateDenominator(P3ratError):
    """The Backlund-map denominator combination vanished identically."""


class NonConvergence(P3ratError):
    """Root iteration failed to reach the residual target within the iteration cap.

    The partially converged RootSet (with its converged flag cleared) is
    attached as the ``rootset`` attribute.
    """

    def __init__(self, message, rootset=None):
        super().__init__(message)
        self.rootset = rootset


class MultiplePole(P3ratError):
    """Root separation certificate failed; a pole may not be simple."""


class InvalidPlane(P3ratError):
    """Unknown plane tag for a coordinate transform."""


class ContourFailure(P3ratError):
    """No admissible decay contour for the moment integral at this Arg(x)."""


class SingularHankel(P3ratError):
    """Hankel determinant numerically zero; the linear system has no solution here."""


class BranchPoint(P3ratError):
    """Equilibrium square root degenerates (y0 at a corner point or zero)."""


class ZeroP0(P3ratError):
    """The double-root location p0 must be nonzero."""
