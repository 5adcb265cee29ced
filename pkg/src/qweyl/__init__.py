"""Exact computer algebra for root-of-unity monomial algebras.

Structure theory of the n^2-dimensional algebras generated by h, x with
xh = q h x, h^n = s, x^n = a over exact base fields; normal-form arithmetic
in the quantum plane, quantum Weyl algebra, and their localizations at a
primitive n-th root of unity q; centre-prime classification; automorphism
groups.  See README.md for the CLI and the acceptance suite.
"""

__version__ = "0.1.0"

from .fields import make_field  # noqa: F401
