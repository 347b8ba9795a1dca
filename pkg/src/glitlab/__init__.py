"""Igusa–Todorov functions, syzygies and Morita-ring constructions over GF(p)."""

__version__ = "0.1.0"
