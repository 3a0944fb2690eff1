"""k-nets of lines in the complex projective plane.

Exact work happens over a cyclotomic field Q(zeta_N); approximate work over
the complex numbers with explicit tolerances.
"""

from .construct import braid_net, hessian_net, pencil_net, singular_cubic_net, torus_net
from .cubic import Cubic, classify, is_algebraic
from .errors import (
    BackendError,
    CubicError,
    DegenerateError,
    FieldError,
    Inconclusive,
    InputError,
    NetError,
    NumericError,
    PlanetError,
    RealizationError,
)
from .field import ComplexField, CyclotomicField
from .geom import Line, Point
from .net import Net, euler_feasible, verify_net
from .quasigroup import group_identify, latin_from_net, normalize_to_loop
from .resonance import Arrangement, essential_component, os_h1_dim, q_blocks

__version__ = "0.1.0"

__all__ = [
    "Arrangement", "BackendError", "ComplexField", "Cubic", "CubicError", "CyclotomicField",
    "DegenerateError", "FieldError", "Inconclusive", "InputError", "Line", "Net", "NetError",
    "NumericError", "PlanetError", "Point", "RealizationError", "braid_net", "classify",
    "essential_component", "euler_feasible", "group_identify", "hessian_net", "is_algebraic",
    "latin_from_net", "normalize_to_loop", "os_h1_dim", "pencil_net", "q_blocks",
    "singular_cubic_net", "torus_net", "verify_net",
]
