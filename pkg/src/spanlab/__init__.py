"""spanlab: exact rational workbench for span shapes, twisted arrows,
homotopy limits, Lagrangian correspondence linear algebra, spine chain
complexes, cut grids, and simplicial cobordisms."""

__version__ = "0.1.0"
