from ._minlab import *  # noqa: F401,F403
from ._minlab import __version__  # noqa: F401
