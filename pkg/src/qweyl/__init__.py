"""qweyl: an exact engine for q-deformed phase-space algebras.

Laurent-polynomial scalars in s = q^(1/2), free-algebra rewriting with
diamond-lemma checking, a catalog of deformed oscillator / phase-space /
q-difference presentations, order-by-order h-series realization checks,
finite-dimensional representations, a q-difference operator calculus,
and the orthogonal quantum-group structural layer.
"""

from .coeff import GaussianRational, HSeries, Scalar, expand_q_to_h, hseries_divide, qint
from .errors import QweylError
from .freealg import Element, Morphism, Presentation
from .linalg import FMatrix, ScalarFraction
from .report import ENGINE_VERSION, Report, ReportItem

__version__ = ENGINE_VERSION

__all__ = [
    "GaussianRational",
    "Scalar",
    "HSeries",
    "qint",
    "expand_q_to_h",
    "hseries_divide",
    "Element",
    "Presentation",
    "Morphism",
    "ScalarFraction",
    "FMatrix",
    "Report",
    "ReportItem",
    "QweylError",
    "__version__",
]
