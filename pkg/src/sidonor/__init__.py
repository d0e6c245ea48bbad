"""Gate-controlled donor hyperfine shifts and two-donor spin spectra for
Kane-type silicon quantum-computing structures."""

__version__ = "0.1.0"

from .constants import (
    DEFAULT_CONSTANTS,
    DEFAULT_MATERIAL,
    MaterialParams,
    PhysicalConstants,
    hyperfine_constant_A0,
    residual_delta_E,
)
from .electrostatics import (
    FieldCoefficients,
    GateGeometry,
    disc_field_coeffs,
    disc_potential,
    field_coeffs,
    strip_field_coeffs,
    strip_potential,
    taylor_check,
)
from .error_budget import (
    ErrorBudgetReport,
    PlacementError,
    admissible_voltage_error,
    dz_for_target,
    find_nulling_parameters,
    relative_hic_error,
    strip_sensitivity_derivatives,
)
from .hyperfine import (
    HicShiftBreakdown,
    HydrogenicState,
    hic_shift,
    matrix_element_2s1s,
    second_order_shift,
    voltage_polynomial,
)
from .jacobi import BACKEND as JACOBI_BACKEND
from .jacobi import ConvergenceError, eigensolve_block
from .spectrum import (
    AnticrossingReport,
    SpectrumSweep,
    Track,
    TransferTrace,
    adiabatic_transfer_trace,
    eq19_gap,
    eq19_gap_dimensionless,
    find_anticrossings,
    spin_transfer_reports,
    sweep_spectrum,
)
from .spin_hamiltonian import (
    BASIS,
    BLOCKS,
    MU_OVER_BETA,
    BasisState,
    SpinParams,
    block_decompose,
    build_hamiltonian,
)

__all__ = [
    "AnticrossingReport",
    "BASIS",
    "BLOCKS",
    "BasisState",
    "ConvergenceError",
    "DEFAULT_CONSTANTS",
    "DEFAULT_MATERIAL",
    "ErrorBudgetReport",
    "FieldCoefficients",
    "GateGeometry",
    "HicShiftBreakdown",
    "HydrogenicState",
    "JACOBI_BACKEND",
    "MU_OVER_BETA",
    "MaterialParams",
    "PhysicalConstants",
    "PlacementError",
    "SpectrumSweep",
    "SpinParams",
    "Track",
    "TransferTrace",
    "adiabatic_transfer_trace",
    "admissible_voltage_error",
    "block_decompose",
    "build_hamiltonian",
    "disc_field_coeffs",
    "disc_potential",
    "dz_for_target",
    "eigensolve_block",
    "eq19_gap",
    "eq19_gap_dimensionless",
    "field_coeffs",
    "find_anticrossings",
    "find_nulling_parameters",
    "hic_shift",
    "hyperfine_constant_A0",
    "matrix_element_2s1s",
    "relative_hic_error",
    "residual_delta_E",
    "second_order_shift",
    "spin_transfer_reports",
    "strip_field_coeffs",
    "strip_potential",
    "strip_sensitivity_derivatives",
    "sweep_spectrum",
    "taylor_check",
    "voltage_polynomial",
]
