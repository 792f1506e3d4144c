"""Combinatorial and exact-geometric models of the pair of pants."""
__version__ = "0.1.0"
