"""Generators of power integral bases in sextic fields with a real quadratic subfield."""

__version__ = "0.1.0"
