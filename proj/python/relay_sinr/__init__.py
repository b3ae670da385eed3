"""SINR distributions of dual-hop amplify-and-forward relays with interference."""

from ._relay_sinr import *  # noqa: F401,F403
from ._relay_sinr import __version__  # noqa: F401
