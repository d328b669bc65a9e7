"""WRT invariants of figure-eight Dehn fillings.

Quantum knot states on the torus, exact q-difference identities, slope
certification, Chern-Simons/torsion predictions and asymptotic fits.
"""

from .jones import KnotId
from .numerics import DEFAULT_PRECISION

__all__ = ["KnotId", "DEFAULT_PRECISION"]
__version__ = "0.1.0"
