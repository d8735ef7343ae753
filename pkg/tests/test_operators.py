import cmath
import math

import numpy as np
import pytest

from sqw import (
    OrthogonalReflection,
    Tessellation,
    apply_exp,
    apply_reflection,
    basis_state,
    compose,
    dense_matrix,
    grover_phase_apply,
    line_tessellations,
    reflection_from_tessellation,
    uniform_polygon,
)
from sqw.errors import (
    DimensionCapExceeded,
    DimensionMismatch,
    EmptyFactorList,
    NotNormalized,
    OverlappingPolygons,
)
from sqw.operators import LocalUnitary
from sqw.state import WalkState

from conftest import dense_reflection, random_reflection, random_state_array
from conftest import path_graph


def ring4_reflections():
    t0, t1 = line_tessellations(4, math.pi / 2, math.pi / 2)
    return reflection_from_tessellation(t0), reflection_from_tessellation(t1)


class TestReflectionConstruction:
    def test_all_singletons_is_identity(self):
        g = path_graph(3)
        t = Tessellation(tuple(uniform_polygon({v}) for v in range(3)), g)
        h = reflection_from_tessellation(t)
        assert np.allclose(dense_reflection(h), np.eye(3))

    def test_ring4_pauli_x_blocks(self):
        h0, _ = ring4_reflections()
        x = np.array([[0, 1], [1, 0]])
        expected = np.kron(np.eye(2), x)
        assert np.max(np.abs(dense_reflection(h0) - expected)) < 1e-15

    def test_unsupported_vertex_gets_minus_one(self):
        h = OrthogonalReflection(3, (((0, 1), tuple(uniform_polygon({0, 1}).amplitudes)),))
        out = apply_reflection(h, basis_state(3, 2))
        assert np.allclose(out.amplitudes, [0, 0, -1])

    def test_overlapping_supports_rejected(self):
        amp = (1 / math.sqrt(2),) * 2
        with pytest.raises(OverlappingPolygons):
            OrthogonalReflection(3, (((0, 1), amp), ((1, 2), amp)))

    def test_non_unit_vector_rejected(self):
        with pytest.raises(NotNormalized):
            OrthogonalReflection(2, (((0, 1), (1.0, 1.0)),))


class TestApplyReflection:
    def test_singletons_fix_everything(self):
        g = path_graph(3)
        t = Tessellation(tuple(uniform_polygon({v}) for v in range(3)), g)
        h = reflection_from_tessellation(t)
        rng = np.random.default_rng(1)
        psi = WalkState(random_state_array(rng, 3))
        assert np.allclose(apply_reflection(h, psi).amplitudes, psi.amplitudes)

    def test_x_block_swaps(self):
        h0, _ = ring4_reflections()
        out = apply_reflection(h0, basis_state(4, 0))
        assert np.max(np.abs(out.amplitudes - [0, 1, 0, 0])) < 1e-12

    def test_polygon_vector_is_plus_one_eigenvector(self):
        t0, _ = line_tessellations(6, 1.2, 2.1, 0.4, 0.0)
        h = reflection_from_tessellation(t0)
        p = t0.polygons[0]
        vec = np.zeros(6, dtype=complex)
        vec[list(p.vertices)] = p.amplitudes
        out = apply_reflection(h, WalkState(vec))
        assert np.max(np.abs(out.amplitudes - vec)) < 1e-12

    def test_dimension_mismatch(self):
        h0, _ = ring4_reflections()
        with pytest.raises(DimensionMismatch):
            apply_reflection(h0, basis_state(6, 0))

    def test_involution_and_hermiticity_random(self):
        rng = np.random.default_rng(2)
        for _ in range(50):
            dim = int(rng.integers(2, 24))
            h = random_reflection(rng, dim, cover_all=bool(rng.integers(2)))
            mat = dense_reflection(h)
            assert np.max(np.abs(mat @ mat - np.eye(dim))) < 1e-12
            assert np.max(np.abs(mat - mat.conj().T)) < 1e-12
            for j in range(dim):
                e = basis_state(dim, j)
                twice = apply_reflection(h, apply_reflection(h, e))
                assert np.max(np.abs(twice.amplitudes - e.amplitudes)) < 1e-12


class TestApplyExp:
    def test_zero_angle(self):
        h0, _ = ring4_reflections()
        psi = basis_state(4, 1)
        out = apply_exp(LocalUnitary(0.0, h0), psi)
        assert np.allclose(out.amplitudes, psi.amplitudes)

    def test_half_pi_gives_i_h(self):
        h0, _ = ring4_reflections()
        rng = np.random.default_rng(3)
        psi = WalkState(random_state_array(rng, 4))
        out = apply_exp(LocalUnitary(math.pi / 2, h0), psi)
        expected = 1j * apply_reflection(h0, psi).amplitudes
        assert np.max(np.abs(out.amplitudes - expected)) < 1e-12

    def test_quarter_pi_on_basis(self):
        h0, _ = ring4_reflections()
        out = apply_exp(LocalUnitary(math.pi / 4, h0), basis_state(4, 0))
        expected = np.array([1, 1j, 0, 0]) / math.sqrt(2)
        assert np.max(np.abs(out.amplitudes - expected)) < 1e-12

    def test_inverse(self):
        rng = np.random.default_rng(4)
        for _ in range(25):
            dim = int(rng.integers(2, 20))
            h = random_reflection(rng, dim)
            theta = float(rng.uniform(-math.pi, math.pi))
            psi = WalkState(random_state_array(rng, dim))
            back = apply_exp(LocalUnitary(-theta, h), apply_exp(LocalUnitary(theta, h), psi))
            assert np.max(np.abs(back.amplitudes - psi.amplitudes)) < 1e-12


class TestGroverPhase:
    def test_zero_angle_identity(self):
        h0, _ = ring4_reflections()
        psi = basis_state(4, 2)
        out = grover_phase_apply(0.0, h0, psi)
        assert np.allclose(out.amplitudes, psi.amplitudes)

    def test_half_pi_is_minus_h(self):
        h0, _ = ring4_reflections()
        rng = np.random.default_rng(5)
        psi = WalkState(random_state_array(rng, 4))
        out = grover_phase_apply(math.pi / 2, h0, psi)
        expected = -apply_reflection(h0, psi).amplitudes
        assert np.max(np.abs(out.amplitudes - expected)) < 1e-12

    def test_matches_scaled_exponential(self):
        rng = np.random.default_rng(6)
        for _ in range(50):
            dim = int(rng.integers(2, 20))
            h = random_reflection(rng, dim, cover_all=bool(rng.integers(2)))
            theta = float(rng.uniform(-math.pi, math.pi))
            psi = WalkState(random_state_array(rng, dim))
            got = grover_phase_apply(theta, h, psi).amplitudes
            expected = cmath.exp(1j * theta) * apply_exp(LocalUnitary(theta, h), psi).amplitudes
            assert np.max(np.abs(got - expected)) < 1e-12


class TestCompose:
    def test_standard_sqw_recovery(self):
        h0, h1 = ring4_reflections()
        u = compose([(-math.pi / 2, h0), (math.pi / 2, h1)])
        product = dense_reflection(h1) @ dense_reflection(h0)
        assert np.max(np.abs(dense_matrix(u) - product)) < 1e-12

    def test_single_factor(self):
        h0, _ = ring4_reflections()
        u = compose([(0.3, h0)])
        psi = basis_state(4, 0)
        assert np.allclose(u.step(psi).amplitudes,
                           apply_exp(LocalUnitary(0.3, h0), psi).amplitudes)

    def test_three_factors(self):
        h0, h1 = ring4_reflections()
        u = compose([(0.2, h0), (0.4, h1), (0.6, h0)])
        m = dense_matrix(u)
        assert np.max(np.abs(m.conj().T @ m - np.eye(4))) < 1e-10

    def test_empty_rejected(self):
        with pytest.raises(EmptyFactorList):
            compose([])

    def test_dimension_mismatch(self):
        h0, _ = ring4_reflections()
        t0, _ = line_tessellations(6, 1.0, 1.0)
        other = reflection_from_tessellation(t0)
        with pytest.raises(DimensionMismatch):
            compose([(0.1, h0), (0.1, other)])


class TestDenseMatrix:
    def test_identity_factors(self):
        h0, _ = ring4_reflections()
        u = compose([(0.0, h0)])
        assert np.allclose(dense_matrix(u), np.eye(4))

    def test_ring4_standard_product(self):
        h0, h1 = ring4_reflections()
        u = compose([(-math.pi / 2, h0), (math.pi / 2, h1)])
        x = np.array([[0, 1], [1, 0]], dtype=complex)
        h0_mat = np.kron(np.eye(2), x)
        h1_mat = np.zeros((4, 4), dtype=complex)
        h1_mat[1, 2] = h1_mat[2, 1] = h1_mat[0, 3] = h1_mat[3, 0] = 1
        assert np.max(np.abs(dense_matrix(u) - h1_mat @ h0_mat)) < 1e-12

    def test_unitarity(self):
        rng = np.random.default_rng(7)
        for _ in range(10):
            dim = int(rng.integers(2, 32))
            factors = [(float(rng.uniform(-2, 2)), random_reflection(rng, dim))
                       for _ in range(int(rng.integers(1, 4)))]
            m = dense_matrix(compose(factors))
            assert np.max(np.abs(m.conj().T @ m - np.eye(dim))) < 1e-10

    def test_cap(self):
        h0, _ = ring4_reflections()
        with pytest.raises(DimensionCapExceeded):
            dense_matrix(compose([(0.1, h0)]), cap=2)


class TestNormPreservation:
    def test_step_preserves_norm(self):
        rng = np.random.default_rng(8)
        for _ in range(25):
            dim = 2 * int(rng.integers(2, 16))
            t0, t1 = line_tessellations(dim, float(rng.uniform(0.1, 3.0)),
                                        float(rng.uniform(0.1, 3.0)))
            u = compose([(float(rng.uniform(-3, 3)), reflection_from_tessellation(t0)),
                         (float(rng.uniform(-3, 3)), reflection_from_tessellation(t1))])
            psi = random_state_array(rng, dim)
            out = u.step_array(psi)
            assert abs(np.linalg.norm(out) - 1.0) < 1e-12
