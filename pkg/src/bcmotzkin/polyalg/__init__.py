"""Exact Laurent-polynomial, rational-function and truncated-series algebra."""

from .expansion import local_laurent_expansion, residue
from .laurent import LaurentPoly
from .rational import RationalFn
from .series import TruncSeries

__all__ = ["LaurentPoly", "RationalFn", "TruncSeries", "local_laurent_expansion", "residue"]
