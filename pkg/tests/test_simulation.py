import math

import numpy as np
import pytest

from sqw import (
    basis_state,
    closed_form_sigma2,
    compose,
    distribution,
    distribution_to_tsv,
    evolve,
    evolve_final,
    line_tessellations,
    moments,
    moments_to_tsv,
    reflection_from_tessellation,
    ring_labels,
    superposition_state,
    wrap_check,
)
from sqw.errors import DimensionMismatch, LabelMismatch, WavefrontWrapped
from sqw.simulation import ProbabilityDistribution, WalkState

from conftest import random_state_array


def line_operator(n, theta, alpha=math.pi / 2, beta=math.pi / 2, phi0=0.0, phi1=0.0,
                  theta1=None):
    t0, t1 = line_tessellations(n, alpha, beta, phi0, phi1)
    return compose([(theta, reflection_from_tessellation(t0)),
                    (theta if theta1 is None else theta1,
                     reflection_from_tessellation(t1))])


class TestEvolve:
    def test_zero_steps(self):
        u = line_operator(8, 0.7)
        psi0 = basis_state(8, 0)
        traj = evolve(u, psi0, 0)
        assert len(traj) == 1 and traj[0] is psi0

    def test_identity_evolution_constant(self):
        u = line_operator(8, 0.0)
        psi0 = basis_state(8, 3)
        traj = evolve(u, psi0, 5)
        for state in traj:
            assert np.allclose(state.amplitudes, psi0.amplitudes)

    def test_norm_one_along_trajectory(self):
        u = line_operator(32, 1.1, 0.9, 2.2, 0.3, -0.4)
        rng = np.random.default_rng(9)
        traj = evolve(u, WalkState(random_state_array(rng, 32)), 40)
        assert len(traj) == 41
        for state in traj:
            assert abs(np.linalg.norm(state.amplitudes) - 1.0) < 1e-12

    def test_probability_conservation(self):
        u = line_operator(64, math.pi / 4)
        traj = evolve(u, basis_state(64, 0), 15)
        for state in traj:
            total = float(np.sum(np.abs(state.amplitudes) ** 2))
            assert abs(total - 1.0) < 1e-10

    def test_dimension_mismatch(self):
        u = line_operator(8, 0.5)
        with pytest.raises(DimensionMismatch):
            evolve(u, basis_state(6, 0), 1)

    def test_final_matches_trajectory(self):
        u = line_operator(16, 0.8)
        psi0 = basis_state(16, 1)
        assert np.allclose(evolve_final(u, psi0, 7).amplitudes,
                           evolve(u, psi0, 7)[-1].amplitudes)

    def test_two_peaked_spread_profile(self):
        # 60 steps at theta=pi/4 from (|0>+|1>)/sqrt(2): symmetric twin fronts
        n, t = 256, 60
        u = line_operator(n, math.pi / 4)
        psi0 = superposition_state(n, [(0, 2 ** -0.5), (1, 2 ** -0.5)])
        final = evolve(u, psi0, t)[-1]
        labels = ring_labels(n)
        p = np.abs(final.amplitudes) ** 2
        top = sorted(int(labels[i]) for i in np.argsort(p)[-4:])
        assert top[0] < -60 and top[-1] > 60  # peaks sit near the two fronts
        center_mass = p[np.abs(labels) <= t // 4].sum()
        assert center_mass < 0.25  # valley between the peaks


class TestDistribution:
    def test_point_mass(self):
        d = distribution(basis_state(4, 0), ring_labels(4))
        assert np.allclose(d.probabilities, [1, 0, 0, 0])

    def test_phases_drop(self):
        psi = superposition_state(2, [(0, 2 ** -0.5), (1, 1j * 2 ** -0.5)])
        d = distribution(psi, [0, 1])
        assert np.allclose(d.probabilities, [0.5, 0.5])

    def test_sums_to_one(self):
        rng = np.random.default_rng(10)
        psi = WalkState(random_state_array(rng, 37))
        d = distribution(psi, np.arange(37))
        assert abs(d.probabilities.sum() - 1.0) < 1e-10

    def test_label_mismatch(self):
        with pytest.raises(LabelMismatch):
            distribution(basis_state(4, 0), [0, 1, 2])


class TestMoments:
    def test_point_mass_zeroes(self):
        d = distribution(basis_state(5, 0), [0, 1, 2, -2, -1])
        m = moments(d, max_order=4)
        assert m.mean == 0 and m.second_moment == 0 and m.sigma == 0
        assert m.higher == (0, 0)

    def test_uniform_two_sites(self):
        d = ProbabilityDistribution(np.array([0.5, 0.5]), np.array([-1, 1]))
        m = moments(d)
        assert m.mean == 0 and m.second_moment == 1 and m.sigma == 1

    def test_sigma_ratio_matches_closed_form(self):
        # theta=pi/4, alpha=beta=pi/2, origin start: variance rate ~ 0.8284
        n, t = 256, 60
        u = line_operator(n, math.pi / 4)
        final = evolve_final(u, basis_state(n, 0), t)
        m = moments(distribution(final, ring_labels(n)), step=t)
        expected = closed_form_sigma2(math.pi / 4, math.pi / 2, 1)
        assert abs(m.sigma ** 2 / t ** 2 - expected) / expected < 0.05

    def test_max_order_validation(self):
        d = distribution(basis_state(2, 0), [0, 1])
        with pytest.raises(ValueError):
            moments(d, max_order=1)


class TestWrapCheck:
    def test_large_ring_passes(self):
        t = 20
        n = 4 * t + 8
        u = line_operator(n, math.pi / 4)
        traj = evolve(u, basis_state(n, 0), t)
        wrap_check(traj, guard_band=1)

    def test_small_ring_wraps(self):
        t = 24
        n = t  # far too small: the front reaches the antipode
        u = line_operator(n, math.pi / 4)
        traj = evolve(u, basis_state(n, 0), t)
        with pytest.raises(WavefrontWrapped):
            wrap_check(traj, guard_band=1)

    def test_identity_evolution_any_ring(self):
        for n in (4, 6, 8):
            u = line_operator(n, 0.0)
            traj = evolve(u, basis_state(n, 0), 10)
            wrap_check(traj, guard_band=1)


class TestParitySymmetry:
    @pytest.mark.parametrize("theta", [math.pi / 4, 0.9])
    def test_even_step_reflection_symmetry(self, theta):
        # uniform pair tessellations commute with x -> 1-x; the symmetric
        # initial state keeps the distribution mirror-symmetric at even steps
        n, t = 128, 24
        u = line_operator(n, theta)
        psi0 = superposition_state(n, [(0, 2 ** -0.5), (1, 2 ** -0.5)])
        traj = evolve(u, psi0, t)
        labels = ring_labels(n)
        slot = {int(x): i for i, x in enumerate(labels)}
        for s in range(0, t + 1, 2):
            p = np.abs(traj[s].amplitudes) ** 2
            for x in range(-n // 2 + 2, n // 2):
                assert abs(p[slot[x]] - p[slot[1 - x]]) < 1e-10


class TestLabelsAndTsv:
    def test_ring_labels(self):
        assert list(ring_labels(6)) == [0, 1, 2, -3, -2, -1]

    def test_distribution_tsv(self):
        d = distribution(basis_state(4, 1), ring_labels(4))
        text = distribution_to_tsv(d)
        assert text.splitlines()[0] == "position\tprobability"
        assert "1\t1" in text
        assert len(text.splitlines()) == 5
        assert len(distribution_to_tsv(d, drop_zeros=True).splitlines()) == 2

    def test_moments_tsv(self):
        d = distribution(basis_state(2, 0), [0, 1])
        text = moments_to_tsv([moments(d, step=3)])
        assert text.splitlines()[0] == "t\tmean\tx2\tsigma"
        assert text.splitlines()[1].startswith("3\t")
