"""Transfer matrices, scattering amplitudes and the generalized unitarity relation in 1D."""

from .identities import IdentityReport, full_report
from .potential import (
    DeltaPotential,
    GridPotential,
    LayerPotential,
    check_faddeev,
    classify_symmetry,
    evaluate,
)
from .scattering import (
    ScatterAmplitudes,
    ScatteringMatrix,
    amplitudes_from_transfer,
    d_value,
    jost_coefficients,
    smatrix_from_amplitudes,
    transfer_from_amplitudes,
)
from .spectral import PotentialTemplate, SpectralPoint, Target, design_cpa, find_points
from .symmetry import Transform, transform_amplitudes, transform_transfer
from .transfer import (
    IntegratorConfig,
    TransferMatrix,
    analytic_transfer,
    compose,
    transfer_at,
    transfer_delta,
    transfer_layer,
    transfer_numeric,
)

__version__ = "0.1.0"
