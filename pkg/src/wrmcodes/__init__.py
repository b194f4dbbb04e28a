"""Weighted Reed-Muller and affine variety codes: parameters, zero-count
bounds with multiplicity, and list decoders."""

__version__ = "0.1.0"
