"""Exact computer algebra for the ageing Lie algebra alt, its infinite extension W,
their central extensions, differential-operator representations, the 4x4 group
law and the associated canonical Appell systems."""

__version__ = "0.1.0"
