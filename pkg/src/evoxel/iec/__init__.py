"""Interactive evolution: session state machine and its HTTP surface."""

from .session import IecConfig, IecSession, SessionStore

__all__ = ["IecConfig", "IecSession", "SessionStore"]
