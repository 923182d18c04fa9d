"""Separability and entanglement of pure bipartite states from 2x2 minors."""

from .chsh import (
    ChshResult,
    MeasurementSetting,
    chsh_expectation,
    chsh_max_closed,
    chsh_operator,
    chsh_optimize,
    submatrix_chsh,
)
from .criteria import (
    Factorization,
    QuadSelector,
    SeparabilityVerdict,
    chi,
    factorize,
    is_separable,
    q_sum,
    reduced_criterion,
    s_sum,
    submatrix_G,
    submatrix_Q,
    submatrix_S,
)
from .entanglement import (
    EntanglementReport,
    e_param,
    e_total,
    e_upper_bound,
    generate_maxent,
    maxent_check,
    row_gram,
    verify_2xm_identity,
)
from .errors import (
    ConvergenceError,
    DimensionError,
    InvalidStateError,
    MinorsepError,
    NotSeparableError,
    StateParseError,
)
from .ppt import (
    PartialTransposeSpectrum,
    closed_form_spectrum_2xm,
    cubic_spectrum_3x3,
    density_matrix,
    partial_transpose,
    ppt_spectrum,
    ppt_verdict,
    trace_checks,
)
from .state import (
    ReducedMatrix,
    StateMatrix,
    normalize,
    parse_state,
    random_product_state,
    random_state,
    reduce,
    serialize_state,
    zero_flag,
)
from .eigen import hermitian_spectrum

__version__ = "0.1.0"
