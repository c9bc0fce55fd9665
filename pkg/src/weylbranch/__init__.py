"""Exact Weyl group orbits and their branching to maximal subalgebras."""

__version__ = "0.1.0"
