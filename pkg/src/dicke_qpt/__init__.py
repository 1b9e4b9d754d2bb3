"""Generalized Dicke model: normal/superradiant transition in closed form, checked by exact diagonalization."""
from .errors import DickeError, InvalidParameters, NumericalFailure
from .model import DickeParams, SqueezeMap, canonicalize, inverse_squeeze_map, squeeze_map
from .normal import (
    Branch,
    bogoliubov,
    coefficients_at,
    critical_lambda,
    critical_omega,
    dicke_coefficients,
    normal_gap_profile,
    v_roots,
)
from .superradiant import dressed_state, generic_rabi, s_transform_gap, superradiant_solution

__version__ = "0.1.0"
