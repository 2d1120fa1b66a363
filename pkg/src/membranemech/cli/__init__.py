"""CLI entry point for membranemech."""

from .main import main

__all__ = ["main"]
