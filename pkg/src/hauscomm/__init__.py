"""hauscomm: generalized Hausdorff operators, their commutators, the function
space norms they act on, and empirical verification of the boundedness
inequalities that tie them together."""

from ._kernels import BACKEND as KERNEL_BACKEND

__version__ = "0.1.0"

__all__ = ["KERNEL_BACKEND", "__version__"]
