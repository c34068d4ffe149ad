"""Volumes of finitely presented groups and Hopf pairings on triangulated 3-manifolds."""

from ._core import *  # noqa: F401,F403
from ._core import GrpvolError, ParseError, InvalidInput, PreconditionError, ResourceLimitError, IoError  # noqa: F401
