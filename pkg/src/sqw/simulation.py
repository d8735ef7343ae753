"""State-vector trajectories, probability distributions, and moments."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, LabelMismatch, WavefrontWrapped
from .operators import EvolutionOperator
from .state import WalkState, basis_state, superposition_state

__all__ = [
    "WalkState", "basis_state", "superposition_state",
    "ProbabilityDistribution", "MomentSummary",
    "evolve", "evolve_final", "distribution", "moments", "wrap_check",
    "ring_labels", "distribution_to_tsv", "moments_to_tsv",
]

PROB_TOL = 1e-10
WRAP_TOL = 1e-12


@dataclass(frozen=True)
class ProbabilityDistribution:
    """Per-vertex probabilities with signed position labels."""

    probabilities: np.ndarray
    position_labels: np.ndarray

    def __post_init__(self):
        p = np.array(self.probabilities, dtype=np.float64)
        labels = np.array(self.position_labels, dtype=np.int64)
        if p.shape != labels.shape or p.ndim != 1:
            raise LabelMismatch("need one integer label per probability")
        if np.any(p < 0):
            raise ValueError("probabilities must be non-negative")
        total = float(p.sum())
        if abs(total - 1.0) > PROB_TOL:
            raise ValueError(f"probabilities sum to {total!r}, not 1")
        p.setflags(write=False)
        labels.setflags(write=False)
        object.__setattr__(self, "probabilities", p)
        object.__setattr__(self, "position_labels", labels)


@dataclass(frozen=True)
class MomentSummary:
    """Mean, raw second moment, and standard deviation at one time step."""

    mean: float
    second_moment: float
    sigma: float
    step: int
    higher: tuple[float, ...] = ()

    def __post_init__(self):
        if self.second_moment < self.mean ** 2 - 1e-9:
            raise ValueError("second moment below squared mean")


def ring_labels(size: int) -> np.ndarray:
    """Signed line coordinates for ring indices: i for i < N/2, else i - N."""
    i = np.arange(size, dtype=np.int64)
    return np.where(i < size // 2, i, i - size)


def evolve(u: EvolutionOperator, psi0: WalkState, steps: int) -> list[WalkState]:
    """Trajectory [psi0, U psi0, ..., U^steps psi0]."""
    if steps < 0:
        raise ValueError(f"steps must be >= 0, got {steps}")
    if psi0.dimension != u.dimension:
        raise DimensionMismatch(u.dimension, psi0.dimension)
    trajectory = [psi0]
    current = psi0.amplitudes
    for _ in range(steps):
        current = u.step_array(current)
        trajectory.append(WalkState(current))
    return trajectory


def evolve_final(u: EvolutionOperator, psi0: WalkState, steps: int) -> WalkState:
    """U^steps psi0 without storing the trajectory (streaming mode)."""
    if steps < 0:
        raise ValueError(f"steps must be >= 0, got {steps}")
    if psi0.dimension != u.dimension:
        raise DimensionMismatch(u.dimension, psi0.dimension)
    current = psi0.amplitudes
    for _ in range(steps):
        current = u.step_array(current)
    return WalkState(current) if steps else psi0


def distribution(psi: WalkState, labeling) -> ProbabilityDistribution:
    """|amplitude|^2 per vertex, tagged with the given position labels."""
    labels = np.asarray(labeling, dtype=np.int64)
    if labels.shape != (psi.dimension,):
        raise LabelMismatch(f"expected {psi.dimension} labels, got shape {labels.shape}")
    return ProbabilityDistribution(np.abs(psi.amplitudes) ** 2, labels)


def moments(d: ProbabilityDistribution, max_order: int = 2, step: int = 0) -> MomentSummary:
    """Raw moments <x^n> for n <= max_order plus sigma from the first two."""
    if max_order < 2:
        raise ValueError(f"max_order must be >= 2, got {max_order}")
    x = d.position_labels.astype(np.float64)
    raw = [float(np.sum(d.probabilities * x ** n)) for n in range(1, max_order + 1)]
    mean, x2 = raw[0], raw[1]
    sigma = float(np.sqrt(max(0.0, x2 - mean ** 2)))
    return MomentSummary(mean, x2, sigma, step, tuple(raw[2:]))


def wrap_check(trajectory, guard_band: int, origin: int = 0, tol: float = WRAP_TOL) -> None:
    """Certify that a ring trajectory never reached the antipode of `origin`.

    Checks that the probability within `guard_band` sites of the antipodal
    point stays below `tol` at every step; when it does, the finite ring
    reproduces the infinite line exactly.  Raises WavefrontWrapped otherwise.
    """
    states = list(trajectory)
    if not states:
        return
    n = states[0].dimension
    antipode = (origin + n // 2) % n
    window = [(antipode + off) % n for off in range(-guard_band, guard_band + 1)]
    window = sorted(set(window))
    for step, state in enumerate(states):
        mass = float(np.sum(np.abs(state.amplitudes[window]) ** 2))
        if mass > tol:
            raise WavefrontWrapped(step, mass)


def distribution_to_tsv(d: ProbabilityDistribution, drop_zeros: bool = False) -> str:
    """TSV with columns `position`, `probability`, sorted by position."""
    order = np.argsort(d.position_labels, kind="stable")
    lines = ["position\tprobability"]
    for i in order:
        p = float(d.probabilities[i])
        if drop_zeros and p == 0.0:
            continue
        lines.append(f"{int(d.position_labels[i])}\t{p:.17g}")
    return "\n".join(lines) + "\n"


def moments_to_tsv(summaries) -> str:
    """TSV with columns `t`, `mean`, `x2`, `sigma`, one row per summary."""
    lines = ["t\tmean\tx2\tsigma"]
    for m in summaries:
        lines.append(f"{m.step}\t{m.mean:.17g}\t{m.second_moment:.17g}\t{m.sigma:.17g}")
    return "\n".join(lines) + "\n"
