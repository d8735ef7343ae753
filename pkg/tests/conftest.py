"""Shared builders and independent dense oracles for the test suite."""

from __future__ import annotations

import numpy as np

from sqw import OrthogonalReflection, build_graph


def path_graph(n):
    return build_graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n):
    return build_graph(n, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n):
    return build_graph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def hub_fragment():
    """Degree-5 hub joined to a degree-3 hub, all other edges pendant."""
    return build_graph(8, [(0, 1), (0, 2), (0, 3), (0, 4), (0, 5), (1, 6), (1, 7)])


def dense_reflection(h: OrthogonalReflection) -> np.ndarray:
    """Independent dense oracle: 2 sum |v><v| - I from explicit outer products."""
    out = -np.eye(h.dimension, dtype=np.complex128)
    for support, amplitudes in h.polygon_vectors:
        v = np.zeros(h.dimension, dtype=np.complex128)
        v[list(support)] = amplitudes
        out += 2.0 * np.outer(v, np.conj(v))
    return out


def random_reflection(rng, dimension, cover_all=True) -> OrthogonalReflection:
    """Reflection from a random partition with random unit amplitudes."""
    order = rng.permutation(dimension)
    cut = dimension if cover_all else int(rng.integers(1, dimension + 1))
    covered, vectors = order[:cut], []
    pos = 0
    while pos < len(covered):
        size = int(rng.integers(1, min(4, len(covered) - pos) + 1))
        support = sorted(int(v) for v in covered[pos:pos + size])
        amps = rng.standard_normal(size) + 1j * rng.standard_normal(size)
        while np.any(np.abs(amps) < 1e-3):  # keep the nonzero-support condition honest
            amps = rng.standard_normal(size) + 1j * rng.standard_normal(size)
        amps = amps / np.linalg.norm(amps)
        vectors.append((tuple(support), tuple(complex(a) for a in amps)))
        pos += size
    return OrthogonalReflection(dimension, tuple(vectors))


def random_state_array(rng, dimension) -> np.ndarray:
    raw = rng.standard_normal(dimension) + 1j * rng.standard_normal(dimension)
    return raw / np.linalg.norm(raw)
