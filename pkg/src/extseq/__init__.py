"""Exact mod-2 computation engine.

Subpackages cover bit-packed GF(2) linear algebra, the mod-2 Steenrod
algebra and its finite subalgebras, Poincare-series bookkeeping for
graded algebras and Eilenberg-MacLane spaces, finitely presented
modules, minimal free resolutions with Ext charts, and spectral
sequence page machinery.
"""

__version__ = "0.1.0"
