"""Exact-arithmetic toolkit for the twist curves y^2 = x^3 +- d^2 x.

Point counts over prime fields (brute force and closed forms), the
residue censuses behind them, partial Euler products, and exact rational
point machinery, all cross-verified against brute-force oracles.
"""

__version__ = "0.1.0"
