"""Pure state vectors over the vertex basis."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NotNormalized, OutOfRangeVertex

NORM_TOL = 1e-12


@dataclass(frozen=True)
class WalkState:
    """Complex amplitude vector with an enforced unit l2 norm.

    The underlying array is copied on construction and marked read-only;
    states can be shared freely.
    """

    amplitudes: np.ndarray

    def __post_init__(self):
        arr = np.array(self.amplitudes, dtype=np.complex128)
        if arr.ndim != 1 or arr.size == 0:
            raise ValueError("state must be a non-empty 1-D amplitude vector")
        norm = float(np.linalg.norm(arr))
        if abs(norm - 1.0) > NORM_TOL:
            raise NotNormalized(f"state norm is {norm!r}, expected 1 within {NORM_TOL}")
        arr.setflags(write=False)
        object.__setattr__(self, "amplitudes", arr)

    @property
    def dimension(self) -> int:
        return self.amplitudes.shape[0]


def basis_state(dimension: int, index: int) -> WalkState:
    """The computational basis vector |index> in `dimension` dimensions."""
    if not 0 <= index < dimension:
        raise OutOfRangeVertex(index, dimension)
    arr = np.zeros(dimension, dtype=np.complex128)
    arr[index] = 1.0
    return WalkState(arr)


def superposition_state(dimension: int, entries) -> WalkState:
    """State from sparse (index, amplitude) pairs; must already be normalized."""
    arr = np.zeros(dimension, dtype=np.complex128)
    for index, amplitude in entries:
        if not 0 <= index < dimension:
            raise OutOfRangeVertex(index, dimension)
        arr[index] += amplitude
    return WalkState(arr)
