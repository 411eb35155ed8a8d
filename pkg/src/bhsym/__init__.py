"""Symbolic and numeric verification of Lie point symmetries, similarity
reductions and exact solutions of the biharmonic heat equation
u_t = L^2 u on surfaces of revolution, where L = f' d_x + d_xx + e^{-2f} d_yy.

Submodules: ``exprcore`` (expression trees and zero testing), ``jet``
(derivative coordinates and prolongation), ``operator``, ``geometry``,
``symmetry``, ``reductions``, ``numeric``, ``discrepancies`` and ``cli``.
"""

__version__ = "0.1.0"
