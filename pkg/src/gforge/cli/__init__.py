"""Interactive and batch front end."""

from .main import main
from .session import BUILTINS, Session

__all__ = ["BUILTINS", "Session", "main"]
