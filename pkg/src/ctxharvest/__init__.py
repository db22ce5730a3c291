"""Contextuality and Wigner-negativity harvesting by qutrit detector pairs.

Two localized three-level detectors couple to the vacuum of a massless scalar
field through Gaussian switching and spherical smearing.  This package
computes their order-lambda^2 joint state, the contextual fraction of its
statistics over the 40 two-qutrit displacement-operator contexts (by linear
programming against the 81 deterministic assignments), and the discrete
Wigner negativity of the reduced single-detector state.
"""

from .contextuality import (
    AssignmentMatrix,
    CFResult,
    EmpiricalModel,
    assignment_matrix,
    contextual_fraction,
    empirical_model,
)
from .gf3 import Context, enumerate_contexts, is_isotropic, symplectic_form
from .hwops import (
    clock,
    context_projector,
    context_projectors,
    phase_point_operator,
    phase_point_operators,
    shift,
    weyl,
)
from .kernels import (
    DetectorConfig,
    KernelSet,
    QuadratureError,
    backend_name,
    compute_kernels,
    faddeeva,
    spherical_j0,
    spherical_j1,
)
from .states import (
    DetectorState,
    ReducedState,
    assemble_state,
    reduce,
    spacelike_ok,
    state_from_json,
    state_to_json,
)
from .sweep import (
    SweepSpec,
    SweepRow,
    dynamics_comparison,
    run_sweep,
    scaling_check,
)
from .wigner import WignerProfile, reduced_inequalities, wigner_profile

__version__ = "0.1.0"
