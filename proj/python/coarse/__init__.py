"""Coarse-geometry lab: graph models, profiles, regular maps and inequality checks."""

from ._coarse import *  # noqa: F401,F403
from ._coarse import CoarseError, InputError, ParseError, ResourceError, NumericError  # noqa: F401
