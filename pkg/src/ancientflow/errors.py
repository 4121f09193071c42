"""Exception types shared across the package."""


class FlowError(Exception):
    """Base class for all numerical-laboratory errors."""


class DomainError(FlowError, ValueError):
    """A precondition on an argument's mathematical domain was violated
    (e.g. a time that must be negative, an abscissa outside a slab)."""


class ConvexityLost(FlowError):
    """The discrete strict-convexity condition h + h'' > 0 failed."""


class StepRejected(FlowError):
    """A time step exceeded the stability bound, or repeated halving
    could not produce an acceptable step."""


class ExtinctionReached(FlowError):
    """The evolving curve shrank below the extinction floor.

    Carries the last valid time and the partial flow computed so far.
    """

    def __init__(self, time: float, flow=None):
        super().__init__(f"curve reached the extinction floor at t = {time}")
        self.time = time
        self.flow = flow


class InsufficientHistory(FlowError):
    """The flow does not extend far enough into the past for the
    requested rescaling."""


class IntegrationFailure(FlowError):
    """An ODE integration did not meet its error tolerance."""


class InsufficientProfile(FlowError):
    """A radial profile does not extend far enough for the requested
    blow-down scale."""


class OutOfSweep(FlowError):
    """A grid point was never crossed by the recorded flow."""


class StencilFailure(FlowError):
    """Finite-difference stencil spacing is below the resolution the
    recorded frames can support."""


class DegenerateGradient(FlowError):
    """|Du| fell below the floor where the level-set operator is
    evaluated (near the extinction point the equation is degenerate)."""


class NotSlabLike(FlowError):
    """A slab-specific diagnostic was requested for a flow whose
    blow-down is not a multiplicity-two plane."""


class InconclusiveSlab(FlowError):
    """A translator sample extends neither far enough to certify a slab
    nor past the horizon that certifies entireness."""
