"""Exact algebra for the chain of Hecke algebras H(m,1,n)."""

__version__ = "0.1.0"
