"""Signless rooted-forest formulas for matrix analysis.

Determinants, characteristic polynomials, diagonal minors, cofactors and
eigenvector components of arbitrary square matrices computed as sums of
arc-weight products over rooted spanning forests of a boundary-augmented
digraph, plus asymptotic spectra of sub-generators with exponentially small
entries. The heavy lifting lives in the compiled extension; this package just
re-exports it.
"""

from ._core import (
    ComputeError,
    InputError,
    char_poly,
    cofactor,
    determinant,
    eigenvector,
    forest_count,
    kirchhoff_char_poly,
    minor_det,
    numeric_eigenpairs,
    selftest,
    tropical_spectrum,
    validate_asymptotics,
    __version__,
)

__all__ = [
    "ComputeError",
    "InputError",
    "char_poly",
    "cofactor",
    "determinant",
    "eigenvector",
    "forest_count",
    "kirchhoff_char_poly",
    "minor_det",
    "numeric_eigenpairs",
    "selftest",
    "tropical_spectrum",
    "validate_asymptotics",
    "__version__",
]
