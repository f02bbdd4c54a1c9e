"""Densities, differential-operator representations, block matrices and contraction."""
from .contraction import ContractionFamily, ContractionReport, contraction_limit
from .density import DensityElement, Laurent, VectorField, density_action, density_basis, witt_field
from .diffop import DiffOp, diffop_commutator
from .matrix2x2 import matrix2x2_check
from .representation import (
    MODES,
    CalibrationResult,
    RepresentationReport,
    calibrate_rep,
    rep_operators,
    verify_representation,
)

__all__ = [
    "CalibrationResult", "ContractionFamily", "ContractionReport", "DensityElement", "DiffOp",
    "Laurent", "MODES", "RepresentationReport", "VectorField", "calibrate_rep",
    "contraction_limit", "density_action", "density_basis", "diffop_commutator",
    "matrix2x2_check", "rep_operators", "verify_representation", "witt_field",
]
