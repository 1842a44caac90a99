"""HTTP service wrapping the solver library."""

from .app import create_app

__all__ = ["create_app"]
