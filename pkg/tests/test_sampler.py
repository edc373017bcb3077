"""Random samplers: determinism, structural validity, and moment agreement."""

import numpy as np
import pytest

from iselab.families import BINARY, COMPLETE_BINARY, PLANE_0PM1, PLANE_PM1, increments
from iselab.genfun import exact_moment
from iselab.sampler import (
    SeedSpec,
    dyck_moment,
    empirical_dyck_moment,
    empirical_moment,
    max_label,
    rescaled_density,
    sample_binary,
    sample_dyck_path,
    sample_plane,
    sample_tree,
    tree_moment,
)
from iselab.trees import vertical_profile


class TestSeedSpec:
    def test_stream_derivation(self):
        base = SeedSpec(42)
        assert base.stream_id == 0
        child = base.stream(7)
        assert child == SeedSpec(42, 7)

    def test_rejects_out_of_range(self):
        with pytest.raises(ValueError):
            SeedSpec(-1)
        with pytest.raises(ValueError):
            SeedSpec(2**64)
        with pytest.raises(ValueError):
            SeedSpec(0, -3)

    def test_generators_differ_across_streams(self):
        a = SeedSpec(5).generator().integers(0, 2**63, 8)
        b = SeedSpec(5, 1).generator().integers(0, 2**63, 8)
        assert not np.array_equal(a, b)


class TestTreeSamplers:
    def test_binary_deterministic(self):
        t1 = sample_binary(200, SeedSpec(3))
        t2 = sample_binary(200, SeedSpec(3))
        assert np.array_equal(t1.parent, t2.parent)
        assert np.array_equal(t1.label, t2.label)

    def test_binary_valid(self):
        for seed in range(5):
            t = sample_binary(50, SeedSpec(seed))
            assert t.n_nodes == 50
            t.validate()

    @pytest.mark.parametrize("family", [PLANE_PM1, PLANE_0PM1])
    def test_plane_valid(self, family):
        for seed in range(5):
            t = sample_plane(40, family, SeedSpec(seed))
            assert t.size == 40
            assert t.n_nodes == 41
            t.validate()

    def test_plane_increment_membership(self):
        t = sample_plane(300, PLANE_0PM1, SeedSpec(11))
        steps = {int(t.label[v] - t.label[t.parent[v]]) for v in range(1, t.n_nodes)}
        assert steps <= set(increments(PLANE_0PM1))

    def test_plane_size_zero(self):
        t = sample_plane(0, PLANE_PM1, SeedSpec(0))
        assert t.n_nodes == 1
        t.validate()

    def test_dispatch(self):
        assert sample_tree(BINARY, 9, SeedSpec(1)).size == 9
        assert sample_tree(PLANE_PM1, 9, SeedSpec(1)).size == 9
        with pytest.raises(ValueError, match="no sampler"):
            sample_tree(COMPLETE_BINARY, 9, SeedSpec(1))

    def test_generator_seed_advances(self):
        rng = SeedSpec(2).generator()
        t1 = sample_binary(30, rng)
        t2 = sample_binary(30, rng)
        assert not np.array_equal(t1.label, t2.label)

    def test_bool_seed_rejected(self):
        with pytest.raises(TypeError):
            sample_binary(5, True)

    def test_max_label(self):
        t = sample_binary(100, SeedSpec(8))
        assert max_label(t) == int(np.abs(t.label).max())


class TestDensityAndMoments:
    def test_density_integrates_to_one(self):
        t = sample_binary(400, SeedSpec(17))
        prof = vertical_profile(t)
        xs = np.linspace(-3.0, 3.0, 4001)
        ys = [rescaled_density(prof, BINARY, float(x)) for x in xs]
        assert np.trapezoid(ys, xs) == pytest.approx(1.0, abs=1e-6)

    def test_density_peak_value(self):
        # Both two-node binary trees put one node at label 0, so the
        # rescaled density at 0 is 1 / (gamma * 2^(3/4)).
        t = sample_binary(2, SeedSpec(0))
        prof = vertical_profile(t)
        want = 1.0 / (BINARY.gamma * 2**0.75)
        assert rescaled_density(prof, BINARY, 0.0) == pytest.approx(want, rel=1e-12)

    def test_density_vanishes_far_out(self):
        t = sample_binary(64, SeedSpec(1))
        assert rescaled_density(vertical_profile(t), BINARY, 50.0) == 0.0

    def test_tree_moment_matches_exact_at_tiny_size(self):
        # Size-2 binary trees all share sum label^2 = 1, so the sampled
        # normalized moment is deterministic and equals the exact one.
        t = sample_binary(2, SeedSpec(9))
        want = exact_moment(BINARY, (2,), 2).normalized
        assert tree_moment(t, (2,), BINARY) == pytest.approx(want, rel=1e-14)

    def test_empirical_moment_near_exact(self):
        n = 8
        trees = [sample_tree(BINARY, n, SeedSpec(100, i)) for i in range(600)]
        est = empirical_moment(trees, (2,), BINARY)
        want = exact_moment(BINARY, (2,), n).normalized
        assert est.stderr > 0
        assert abs(est.mean - want) <= 4 * est.stderr

    def test_empirical_moment_needs_two(self):
        with pytest.raises(ValueError, match="2 samples"):
            empirical_moment([sample_binary(4, SeedSpec(0))], (2,), BINARY)


class TestDyckPaths:
    def test_path_shape(self):
        w = sample_dyck_path(64, SeedSpec(4))
        assert len(w) == 128
        assert w[0] == 1
        assert w[-1] == 0
        assert w.min() >= 0
        steps = np.diff(np.concatenate([[0], w]))
        assert set(np.unique(steps)) <= {-1, 1}

    def test_deterministic(self):
        assert np.array_equal(sample_dyck_path(32, SeedSpec(6)), sample_dyck_path(32, SeedSpec(6)))

    def test_rejects_empty(self):
        with pytest.raises(ValueError):
            sample_dyck_path(0, SeedSpec(0))

    def test_dyck_moment_hand_value(self):
        # n = 1 forces the path (1, 0): first moment (2n)^(-3/2) * 1.
        w = sample_dyck_path(1, SeedSpec(0))
        assert dyck_moment(w, (1,)) == pytest.approx(2.0**-1.5, rel=1e-15)

    def test_empirical_dyck_moment_deterministic(self):
        a = empirical_dyck_moment(128, (1,), 50, SeedSpec(33))
        b = empirical_dyck_moment(128, (1,), 50, SeedSpec(33))
        assert a == b
        assert a.stderr > 0
