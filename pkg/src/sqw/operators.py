"""Orthogonal reflections, their exponentials, and composed evolution operators.

A reflection induced by disjoint polygon vectors {|a_k>} is H = 2 P - I with
P = sum_k |a_k><a_k|.  H is unitary, Hermitian and involutive, so the local
unitary exp(i t H) is exactly cos(t) I + i sin(t) H.  One walk step applies an
ordered list of such local unitaries.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionCapExceeded, DimensionMismatch, EmptyFactorList, \
    NotNormalized, OutOfRangeVertex, OverlappingPolygons, ZeroAmplitude
from .graphs import Tessellation, validate_tessellation
from .state import WalkState

NORM_TOL = 1e-12
DENSE_CAP = 4096


@dataclass(frozen=True)
class OrthogonalReflection:
    """The operator 2 sum_k |a_k><a_k| - I, stored by its sparse polygon vectors.

    `polygon_vectors` holds one (support indices, amplitudes) pair per polygon;
    supports are pairwise disjoint, amplitudes nonzero and unit-norm.  Basis
    vectors outside every support are eigenvectors with eigenvalue -1.
    """

    dimension: int
    polygon_vectors: tuple[tuple[tuple[int, ...], tuple[complex, ...]], ...]
    _idx: np.ndarray = field(init=False, repr=False, compare=False)
    _amp: np.ndarray = field(init=False, repr=False, compare=False)
    _starts: np.ndarray = field(init=False, repr=False, compare=False)
    _scatter: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        seen = set()
        idx, amp, starts, scatter = [], [], [], []
        for p, (support, amplitudes) in enumerate(self.polygon_vectors):
            if len(support) != len(amplitudes) or len(support) == 0:
                raise ValueError("each polygon vector needs one amplitude per support vertex")
            starts.append(len(idx))
            norm2 = 0.0
            for v, a in zip(support, amplitudes):
                if not 0 <= v < self.dimension:
                    raise OutOfRangeVertex(v, self.dimension)
                if v in seen:
                    raise OverlappingPolygons(v)
                seen.add(v)
                if a == 0:
                    raise ZeroAmplitude(v)
                idx.append(v)
                amp.append(a)
                scatter.append(p)
                norm2 += abs(a) ** 2
            if abs(norm2 - 1.0) > NORM_TOL:
                raise NotNormalized(f"polygon vector {p} has squared norm {norm2!r}")
        object.__setattr__(self, "_idx", np.asarray(idx, dtype=np.intp))
        object.__setattr__(self, "_amp", np.asarray(amp, dtype=np.complex128))
        object.__setattr__(self, "_starts", np.asarray(starts, dtype=np.intp))
        object.__setattr__(self, "_scatter", np.asarray(scatter, dtype=np.intp))

    @classmethod
    def from_polygons(cls, dimension: int, polygons) -> OrthogonalReflection:
        vectors = tuple((p.vertices, p.amplitudes) for p in polygons)
        return cls(dimension, vectors)

    def overlaps(self, psi: np.ndarray) -> np.ndarray:
        """<a_k|psi> for every polygon vector, in order."""
        if len(self._starts) == 0:
            return np.zeros(0, dtype=np.complex128)
        return np.add.reduceat(np.conj(self._amp) * psi[self._idx], self._starts)

    def apply(self, psi: np.ndarray) -> np.ndarray:
        """H psi = 2 sum_k <a_k|psi> |a_k> - psi on a raw array (1-D or columns)."""
        out = -psi
        if len(self._starts) == 0:
            return out
        amp = self._amp if psi.ndim == 1 else self._amp[:, None]
        ov = np.add.reduceat(np.conj(amp) * psi[self._idx], self._starts, axis=0)
        out[self._idx] += 2.0 * ov[self._scatter] * amp
        return out


@dataclass(frozen=True)
class LocalUnitary:
    """exp(i theta H) = cos(theta) I + i sin(theta) H for a reflection H."""

    theta: float
    reflection: OrthogonalReflection

    @property
    def dimension(self) -> int:
        return self.reflection.dimension

    def apply(self, psi: np.ndarray) -> np.ndarray:
        c, s = math.cos(self.theta), math.sin(self.theta)
        return c * psi + 1j * s * self.reflection.apply(psi)


@dataclass(frozen=True)
class EvolutionOperator:
    """Ordered product of local unitaries; the first factor acts first."""

    factors: tuple[LocalUnitary, ...]

    def __post_init__(self):
        if not self.factors:
            raise EmptyFactorList("an evolution operator needs at least one factor")
        dims = {f.dimension for f in self.factors}
        if len(dims) != 1:
            raise DimensionMismatch(self.factors[0].dimension, sorted(dims))

    @property
    def dimension(self) -> int:
        return self.factors[0].dimension

    def step_array(self, psi: np.ndarray) -> np.ndarray:
        for f in self.factors:
            psi = f.apply(psi)
        return psi

    def step(self, state: WalkState) -> WalkState:
        _check_dim(self.dimension, state)
        return WalkState(self.step_array(state.amplitudes))


def _check_dim(expected: int, state: WalkState) -> None:
    if state.dimension != expected:
        raise DimensionMismatch(expected, state.dimension)


def reflection_from_tessellation(t: Tessellation) -> OrthogonalReflection:
    """Embed a valid tessellation's polygon vectors as an orthogonal reflection."""
    validate_tessellation(t.parent, t)
    return OrthogonalReflection.from_polygons(t.parent.vertex_count, t.polygons)


def apply_reflection(h: OrthogonalReflection, state: WalkState) -> WalkState:
    _check_dim(h.dimension, state)
    return WalkState(h.apply(state.amplitudes))


def apply_exp(u: LocalUnitary, state: WalkState) -> WalkState:
    """Apply exp(i theta H); exact because H is an involution."""
    _check_dim(u.dimension, state)
    return WalkState(u.apply(state.amplitudes))


def grover_phase_apply(theta: float, h: OrthogonalReflection, state: WalkState) -> WalkState:
    """Apply I - (1 - e^{2 i theta}) sum_k |a_k><a_k|.

    Equals e^{i theta} exp(i theta H) applied to the same state: the selective
    phase form of the local unitary, differing only by a global phase.
    """
    _check_dim(h.dimension, state)
    psi = state.amplitudes
    out = psi.copy()
    if len(h._starts):
        ov = h.overlaps(psi)
        out[h._idx] -= (1.0 - cmath.exp(2j * theta)) * ov[h._scatter] * h._amp
    return WalkState(out)


def compose(factors) -> EvolutionOperator:
    """Build an evolution operator from (angle, reflection) pairs.

    The first pair acts first on the state (rightmost in operator notation).
    """
    factors = [LocalUnitary(float(theta), h) for theta, h in factors]
    return EvolutionOperator(tuple(factors))


def dense_matrix(u: EvolutionOperator, cap: int = DENSE_CAP) -> np.ndarray:
    """Materialize one step as a dense matrix; column j is step(|j>)."""
    n = u.dimension
    if n > cap:
        raise DimensionCapExceeded(n, cap)
    return u.step_array(np.eye(n, dtype=np.complex128))
