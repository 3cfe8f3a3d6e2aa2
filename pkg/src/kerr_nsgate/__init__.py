"""Design and verification tools for a Kerr-nonlinear photonic-crystal NS gate."""

from .bands import (
    BandTable,
    CrystalSpec,
    DispersionPoint,
    GapInterval,
    band_edges,
    band_scan,
    dispersion_rhs,
    group_velocity,
    layer_wavevectors,
    solve_k,
    solve_omega,
)
from .design import DesignInput, NsGateDesign, design_ns_gate
from .errors import (
    BandGapError,
    DegenerateCrossingError,
    EdgeDegeneracyError,
    NoNonlinearityError,
    NsGateError,
    NumericalError,
    StageError,
)
from .fields import boundary_matrix, energy_fractions, field_at, null_vector
from .fock import (
    DualRailQubit,
    FockVector,
    apply_beamsplitter,
    apply_kerr_phase,
    apply_ns_gate,
    csf_network,
    operator_identity_residual,
    verify_csf_truth_table,
)
from .physics import CODATA, ROUNDED, Material, PhysicalConstants, PulseSpec

__version__ = "0.1.0"


def gaas_design_input() -> DesignInput:
    """The GaAs/GaAlAs MQW example: air / MQW stack, 847 nm, n2 = 1.2e-4 cm^2/W."""
    from .cli import load_config

    return load_config().design_input()
