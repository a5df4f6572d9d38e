"""Persistent finite sets: weight-balanced trees and big-endian Patricia trees.

The two structures live in :mod:`setforge.wbtree` and :mod:`setforge.patricia`.
Well-formedness checkers are in :mod:`setforge.validity`, the sorted-tuple
reference model in :mod:`setforge.oracle`, and the property/differential
test driver in :mod:`setforge.harness`.
"""

from setforge.patricia import PatriciaSet
from setforge.wbtree import WBSet

__all__ = ["PatriciaSet", "WBSet"]
__version__ = "0.1.0"
