"""Exact verification toolkit for presentations of Schur and rational Schur algebras."""

__version__ = "0.1.0"
