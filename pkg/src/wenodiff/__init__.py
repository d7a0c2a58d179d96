"""Sixth-order WENO schemes for degenerate parabolic and convection-diffusion equations."""

__version__ = "0.1.0"
