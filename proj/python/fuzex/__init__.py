"""Information-theoretic fuzzy extractors for structured sources."""

from ._fuzex import *  # noqa: F401,F403
from ._fuzex import __doc__  # noqa: F401
