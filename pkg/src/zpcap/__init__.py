"""Exact computations with quantum Steenrod operations for A-infinity models."""
__version__ = "0.1.0"
