"""Exact computations with strong congruences on toric monoids over F1^inf."""

__version__ = "0.1.0"
