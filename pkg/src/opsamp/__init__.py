"""Sampling-series derivatives for one-parameter operator groups.

Derivatives generated by a one-parameter group of isometries can be written
as absolutely convergent series of group translates with universal weights.
This package builds those weight tables, applies the resulting operators over
an abstract group contract, and instantiates the contract on the line, the
circle, the 2-sphere and Heisenberg-type actions, each with exact oracles.
"""

__version__ = "0.1.0"
