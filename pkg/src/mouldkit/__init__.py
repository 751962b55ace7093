"""Exact mould calculus: flexion operators, pal, the Dari/Delta structures
and the elliptic double shuffle pipeline."""

__version__ = "0.1.0"
