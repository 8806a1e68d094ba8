"""Exact differential algebra over Q(t)(x) and a hypertranscendence checker."""

__version__ = "0.1.0"
