"""Exact computations in affine Schur algebras, the integral hyperalgebra of
the loop algebra of gl_n and their characteristic-p subalgebras."""

from .core import AlgebraContext, PeriodicMatrix, PeriodicVector, gbinom, vec_binom
from .rings import GF, QQ, ZZ

__all__ = ["AlgebraContext", "PeriodicMatrix", "PeriodicVector", "gbinom", "vec_binom",
           "GF", "QQ", "ZZ"]
