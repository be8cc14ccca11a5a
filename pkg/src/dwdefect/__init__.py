"""Exact Dijkgraaf–Witten gauge theory with defects for finite groups."""

__version__ = "0.1.0"
