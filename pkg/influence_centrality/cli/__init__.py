"""CLI module."""

from .main import load_model, main

__all__ = ['load_model', 'main']
