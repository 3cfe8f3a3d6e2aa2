"""Exception hierarchy shared by the solver, design pipeline and CLI."""


class NsGateError(Exception):
    """Base class for all library errors."""


class NumericalError(NsGateError, RuntimeError):
    """A root scan or decomposition failed to produce a trustworthy answer."""


class EdgeDegeneracyError(NumericalError):
    """Group velocity requested where both sin(kL) and dG/dw vanish."""


class DegenerateCrossingError(NumericalError):
    """The boundary matrix has a two-dimensional (near-)null space."""

    def __init__(self, message, directions=None):
        super().__init__(message)
        self.directions = directions


class BandGapError(NsGateError):
    """The requested frequency lies inside a photonic band gap.

    ``lower_edge`` and ``upper_edge`` are the angular frequencies [rad/s]
    bounding the gap; ``band_below`` is the index of the band underneath.
    """

    def __init__(self, omega, lower_edge, upper_edge, band_below, stage=None):
        super().__init__(
            f"omega={omega:.6e} rad/s lies in the gap between band {band_below} "
            f"(top {lower_edge:.6e}) and band {band_below + 1} (bottom {upper_edge:.6e})"
        )
        self.omega = omega
        self.lower_edge = lower_edge
        self.upper_edge = upper_edge
        self.band_below = band_below
        self.stage = stage


class NoNonlinearityError(NsGateError, ValueError):
    """A Kerr-dependent quantity was requested for a linear medium."""


class StageError(NsGateError):
    """Wraps a failure inside the design pipeline with the stage name."""

    def __init__(self, stage, cause):
        super().__init__(f"stage '{stage}' failed: {cause}")
        self.stage = stage
        self.cause = cause
