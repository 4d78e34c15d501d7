"""Exact-arithmetic toolkit for low-dimensional Lie superalgebras,
Lie super-bialgebras and Drinfel'd superdoubles."""

__version__ = "0.1.0"
