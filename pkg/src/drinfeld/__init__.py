"""Exact computations on Drinfeld modular curves X_0(I) over F_q(T)."""

__version__ = "0.1.0"
