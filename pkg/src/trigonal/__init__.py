"""Exact computations around the moduli of trigonal curves.

Submodules: scalars/poly/forms/linalg (exact algebra), cubic and cover
(binary cubics, cubic algebras, trigonal data), bundle (vector bundles on
P^1 as linear matrices), graded and chow (Chern-class pipeline), and cli.
"""

__version__ = "0.1.0"
