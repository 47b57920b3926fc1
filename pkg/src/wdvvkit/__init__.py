"""Exact verification toolkit for WDVV equations, Frobenius manifolds and Lenard complexes."""
from wdvvkit.kernels import BACKEND as KERNEL_BACKEND

__version__ = "0.1.0"
__all__ = ["KERNEL_BACKEND", "__version__"]
