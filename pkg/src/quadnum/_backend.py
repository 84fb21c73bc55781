"""Kernel backend selection: compiled extension if built, numpy otherwise."""

try:
    from . import _kernels as kernels
except ImportError:  # extension not built on this install
    from . import _kernels_py as kernels

BACKEND = kernels.BACKEND
multiply_one = kernels.multiply_one
multiply_batch = kernels.multiply_batch
character_batch = kernels.character_batch
