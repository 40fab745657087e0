"""mforge: exact-arithmetic construction and verification of composition
algebras, quadratic and pseudo-quadratic spaces, Moufang sets, parametrized
Moufang polygons and foundations."""

__version__ = "0.1.0"
