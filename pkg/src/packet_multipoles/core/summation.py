"""Deterministic reductions over large sample arrays.

numpy's own ``sum`` is pairwise within a contiguous block; the block partials
are then combined with ``math.fsum`` (exactly rounded). The result does not
depend on how the work was split.
"""

import math

import numpy as np
from numpy.typing import NDArray

SLAB = 1 << 16


def compensated_sum(values: NDArray[np.floating] | NDArray[np.complexfloating]) -> complex | float:
    """Sum all elements of ``values``; complex input returns a complex."""
    flat = np.ravel(values)
    if np.iscomplexobj(flat):
        return complex(
            compensated_sum(flat.real),  # type: ignore[arg-type]
            compensated_sum(flat.imag),  # type: ignore[arg-type]
        )
    partials = [float(np.sum(flat[i : i + SLAB])) for i in range(0, flat.size, SLAB)]
    return math.fsum(partials)
