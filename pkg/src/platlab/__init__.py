"""Milnor invariants and finite type invariants of plat-closed pure braids."""

__version__ = "0.1.0"
