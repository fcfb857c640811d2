"""Exact-arithmetic spans, cospans, relations and corelations at desk scale."""

__version__ = "0.1.0"
