"""gSQG saddle-collapse laboratory: special functions, kernel identities, bounds, angle dynamics and a periodic solver."""

from ._core import *  # noqa: F401,F403
from ._core import __doc__  # noqa: F401
