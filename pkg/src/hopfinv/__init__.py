"""Exact Hennings and Kuperberg invariants of lens spaces over ribbon Hopf algebras."""

from hopfinv.scalars import Cyc, root_of_unity

__all__ = ["Cyc", "root_of_unity"]
__version__ = "0.1.0"
