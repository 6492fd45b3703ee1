from ._weightbench import *  # noqa: F401,F403
from ._weightbench import version

__version__ = version()
