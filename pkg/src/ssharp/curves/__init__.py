"""Curve constructions, singular points and certificates."""
