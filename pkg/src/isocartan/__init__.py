"""Cartan-type identities for curvature-adapted isoparametric hypersurfaces."""

__version__ = "0.1.0"
