"""CLI for ctxkit."""

__version__ = '0.1.0'
