"""framelab: numerical experiments with finite-dimensional frames.

Frames in F^n, in direct sums of matrix algebras and in finite-dimensional
Hilbert modules, plus the determinant polynomials that cut the frame set out
of a span of translates.
"""

__version__ = "0.1.0"
