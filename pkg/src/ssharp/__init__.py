"""Instanton s-sharp invariants from cobordism presentations and complex curves."""

__version__ = "0.1.0"
