"""Exact computations for compatible Hom-Lie triple systems.

Structure constants are rationals (int or Fraction) held in numpy object
arrays; every check is an exact equality over all basis tuples.
"""

__version__ = "0.1.0"

from .core import *  # noqa: E402,F401,F403
from .cochains import *  # noqa: E402,F401,F403
from .deformations import *  # noqa: E402,F401,F403
from .extensions import *  # noqa: E402,F401,F403
from .linalg import rational, format_rational, matrix, identity, zeros  # noqa: E402,F401
