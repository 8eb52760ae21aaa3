import numpy as np
import pytest

from vsabench.errors import DegenerateInputError, InvalidArgumentError
from vsabench.hv import cosine_similarity
from vsabench.lsh import new_projector, project, project_batch


def unit_pair_with_cosine(rng, m, rho):
    """Two unit vectors with cosine exactly rho (Gram-Schmidt construction)."""
    f1 = rng.standard_normal(m)
    f1 /= np.linalg.norm(f1)
    g = rng.standard_normal(m)
    g -= np.dot(g, f1) * f1
    g /= np.linalg.norm(g)
    f2 = rho * f1 + np.sqrt(1.0 - rho**2) * g
    return f1, f2


class TestNewProjector:
    def test_row_norms(self):
        p = new_projector(m=100, n=50, seed=0)
        np.testing.assert_allclose(np.linalg.norm(p.rows, axis=1), 1.0, atol=1e-9)

    def test_determinism(self):
        a = new_projector(m=100, n=50, seed=13)
        b = new_projector(m=100, n=50, seed=13)
        np.testing.assert_array_equal(a.rows, b.rows)

    def test_rows_near_orthogonal_high_dim(self):
        # Monte-Carlo oracle: random unit rows in dim 4096 are near-orthogonal.
        p = new_projector(m=4096, n=32, seed=1)
        for i in range(p.n):
            for j in range(i + 1, p.n):
                assert abs(np.dot(p.rows[i], p.rows[j])) < 0.2

    def test_zero_dims_rejected(self):
        with pytest.raises(InvalidArgumentError):
            new_projector(m=0, n=5, seed=0)
        with pytest.raises(InvalidArgumentError):
            new_projector(m=5, n=0, seed=0)


class TestProject:
    def test_output_range(self):
        p = new_projector(m=256, n=64, seed=2)
        rng = np.random.default_rng(3)
        for _ in range(20):
            h = project(p, rng.standard_normal(256))
            assert np.all(h >= -1.0) and np.all(h <= 1.0)

    def test_scale_invariance(self):
        p = new_projector(m=128, n=32, seed=4)
        f = np.random.default_rng(5).standard_normal(128)
        np.testing.assert_allclose(project(p, f), project(p, 3.0 * f), atol=1e-12)
        # power-of-two scaling is lossless, so equality is exact there
        np.testing.assert_array_equal(project(p, f), project(p, 4.0 * f))

    def test_sign_quantization(self):
        p = new_projector(m=128, n=32, seed=6)
        f = np.random.default_rng(7).standard_normal(128)
        h = project(p, f, quantize="sign")
        assert set(np.unique(h)) <= {-1.0, 1.0}

    def test_length_mismatch(self):
        p = new_projector(m=10, n=4, seed=0)
        with pytest.raises(InvalidArgumentError):
            project(p, np.ones(11))

    def test_zero_feature_rejected(self):
        p = new_projector(m=10, n=4, seed=0)
        with pytest.raises(DegenerateInputError):
            project(p, np.zeros(10))

    def test_similarity_preservation(self):
        # JL-style oracle: feature pairs with cosine 0.8 stay within +-0.1 after projection
        p = new_projector(m=2048, n=1024, seed=8)
        rng = np.random.default_rng(9)
        within = 0
        for _ in range(100):
            f1, f2 = unit_pair_with_cosine(rng, 2048, 0.8)
            c = cosine_similarity(project(p, f1), project(p, f2))
            within += int(abs(c - 0.8) <= 0.1)
        assert within >= 95


class TestProjectBatch:
    def test_empty(self):
        p = new_projector(m=16, n=8, seed=0)
        assert project_batch(p, []) == []

    def test_single_matches_project(self):
        p = new_projector(m=16, n=8, seed=0)
        f = np.random.default_rng(1).standard_normal(16)
        np.testing.assert_array_equal(project_batch(p, [f])[0], project(p, f))

    def test_batch_matches_elementwise_bitwise(self):
        p = new_projector(m=32, n=16, seed=2)
        rng = np.random.default_rng(3)
        fs = [rng.standard_normal(32) for _ in range(10)]
        batch = project_batch(p, fs)
        for f, h in zip(fs, batch):
            np.testing.assert_array_equal(h, project(p, f))

    def test_error_carries_patch_index(self):
        p = new_projector(m=8, n=4, seed=0)
        fs = [np.ones(8), np.zeros(8)]
        with pytest.raises(DegenerateInputError, match="patch 1"):
            project_batch(p, fs)
