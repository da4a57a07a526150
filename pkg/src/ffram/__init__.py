"""Exact combinatorics around Satake parameters, geometric Satake and
geometric supercuspidality over function fields."""

__version__ = "0.1.0"
