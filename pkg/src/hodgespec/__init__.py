"""hodgespec: exact Hodge-Laplacian spectra on flat Kahler tori.

The package computes, in exact rational arithmetic, the spectrum and
eigenspaces of the Laplacian on k-forms of a flat torus C^n/L, and
verifies the Hodge/Lefschetz decomposition statements and multiplicity
inequalities on any finite-dimensional Kahler spectral package.
"""

from .scalars import GaussianRational, Rational

__all__ = ["GaussianRational", "Rational"]
__version__ = "0.1.0"
