"""Conditional steering of three-qubit states under projective measurements."""

__version__ = "0.1.0"

from .channels import KrausPair, amp_damp_all, amp_damp_kraus, depolarize
from .conditioning import BlochDirection, ConditionalOutcome, condition, measure, projector
from .errors import NumericalError, ValidationError
from .estimator import ConditionalSteeringDetector, NegativityTransformer, SteeringCriteria
from .qmat import (
    DensityMatrix,
    eig_hermitian,
    frobenius_norm,
    kron,
    partial_trace,
    partial_transpose,
    spectral_norm,
    trace_norm,
)
from .states import (
    GhzSymmetricParams,
    PsiParams,
    biseparable,
    ghz_minus,
    ghz_plus,
    ghz_symmetric,
    noisy_ghz,
    psi_pure,
)
from .steering import (
    CanonicalForm,
    PauliTensor,
    SteeringReport,
    canonical_form,
    horodecki_M,
    pauli_tensor,
    s1,
    s2,
    steering_report,
)
from .tripartite import (
    Cut,
    MeasurementSetting,
    ScanVerdict,
    Witness,
    conditional_steering_scan,
    default_grid,
    facet15_L2,
    genuine_steering_ghz_symmetric,
    ghz_distillable,
    mermin_L1,
    negativity,
    scan_settings,
)
