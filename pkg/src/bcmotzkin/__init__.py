"""Generalized Catalan and bc-Motzkin numbers, their Laplace transforms and
Eynard-Orantin differentials, computed exactly along independent routes."""

__version__ = "0.1.0"
