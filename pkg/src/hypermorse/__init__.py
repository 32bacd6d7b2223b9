"""Kernels for the magnetic Schrodinger operator on the hyperbolic half-plane
and the Morse-potential operator on the real line.

The package evaluates closed-form and integral representations of the
resolvent, wave-transmutation, and heat kernels of both operator families,
and ships a verification harness that checks the web of cross-representation
identities tying them together.
"""
from . import errors, geometry, harness, hkernels, mkernels, quad, specfun

__all__ = ["errors", "geometry", "harness", "hkernels", "mkernels", "quad", "specfun"]

__version__ = "0.1.0"
