"""Finite-category engine for the semantic and the semantic lax descent
factorizations of a functor, and the monadicity checks built on them."""

__version__ = "0.1.0"
