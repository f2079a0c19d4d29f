"""HTTP service exposing the toolkit."""

from .app import create_app

__all__ = ["create_app"]
