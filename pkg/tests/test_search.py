import numpy as np
import pytest

from sdsets.certificate import build_certificate, verify_certificate
from sdsets.configurations import FLOAT, PointConfiguration, known_configuration, profile
from sdsets.extremal_search import penalty, refine, sample_targets, search


def perturbed_hexagon(seed=1, scale=1e-2):
    rng = np.random.default_rng(seed)
    X = np.array(known_configuration("hexagon_lines", 2).points)
    X = X + rng.uniform(-scale, scale, X.shape)
    X /= np.linalg.norm(X, axis=1, keepdims=True)
    return PointConfiguration(2, FLOAT, tuple(map(tuple, X)), 1e-9)


def max_target_error(cfg, targets):
    G = np.array(cfg.points) @ np.array(cfg.points).T
    iu = np.triu_indices(cfg.m, 1)
    return np.max(np.min(np.abs(G[iu][:, None] - np.array(targets)), axis=1))


class TestRefine:
    @pytest.mark.parametrize("seed", [1, 2, 3])
    def test_perturbed_hexagon(self, seed):
        out = refine(perturbed_hexagon(seed), [-0.5, 0.5], max_iterations=500)
        assert max_target_error(out, [-0.5, 0.5]) < 1e-6

    def test_stationary(self):
        cfg = known_configuration("hexagon_lines", 2)
        out = refine(cfg, [-0.5, 0.5])
        assert np.max(np.abs(np.array(out.points) - np.array(cfg.points))) <= 1e-12

    def test_monotone(self):
        cfg = perturbed_hexagon(4, 5e-2)
        values = [penalty(refine(cfg, [-0.5, 0.5], max_iterations=k), [-0.5, 0.5]) for k in range(0, 60, 3)]
        assert all(b <= a for a, b in zip(values, values[1:]))
        assert values[-1] < values[0]

    @pytest.mark.parametrize("targets", [[0.5, 0.4], [0.2, 0.2], [-0.5, 1.0], []])
    def test_bad_targets(self, targets):
        with pytest.raises(ValueError):
            refine(known_configuration("hexagon_lines", 2), targets)

    def test_exact_mode_rejected(self):
        with pytest.raises(ValueError):
            refine(known_configuration("orthonormal", 3), [0.0])


class TestTargets:
    def test_sum_zero_and_separated(self):
        rng = np.random.Generator(np.random.Philox(0))
        for s in range(1, 6):
            for _ in range(20):
                t = sample_targets(s, rng)
                assert t.size == s and abs(t.sum()) < 1e-12
                assert np.all(np.abs(t) < 0.95)
                assert s == 1 or np.all(np.diff(t) >= 0.05)


class TestSearch:
    def test_hexagon_found(self):
        r = search(2, 2, 3, seed=42, restarts=8)
        assert r.penalty < 1e-12 and r.achieved_s == 2
        vals = profile(r.best).values
        assert abs(vals[1] - 0.5) < 1e-6 and abs(vals[0] + 0.5) < 1e-6

    def test_orthonormal_triple(self):
        r = search(3, 1, 3, seed=1, restarts=4, targets=[0.0])
        assert r.penalty < 1e-12 and r.achieved_s == 1
        G = np.array(r.best.points) @ np.array(r.best.points).T
        assert np.allclose(G, np.eye(3), atol=1e-6)

    def test_above_bound_not_reached(self):
        r = search(2, 2, 4, seed=0, restarts=8)
        assert r.target_bound == 3 and r.m == 4
        assert r.penalty > 1e-6 and not r.converged
        assert any("exceeds" in note for note in r.notes)

    def test_deterministic(self):
        a = search(3, 2, 5, seed=7, restarts=3)
        b = search(3, 2, 5, seed=7, restarts=3)
        assert a.best.points == b.best.points and a.penalty == b.penalty and a.iterations == b.iterations

    def test_threads_match_sequential(self, monkeypatch):
        seq = search(3, 2, 5, seed=5, restarts=4, threads=1)
        monkeypatch.setenv("SDSETS_SEARCH_THREADS", "3")
        par = search(3, 2, 5, seed=5, restarts=4)
        assert seq.best.points == par.best.points and seq.penalty == par.penalty

    def test_result_invariants(self):
        r = search(3, 2, 6, seed=0, restarts=4)
        assert r.best.tolerance == 1e-7
        PointConfiguration(r.best.n, FLOAT, r.best.points, 1e-7)
        assert r.penalty >= 0
        if r.converged and r.achieved_s == 2:
            rep = verify_certificate(build_certificate(r.best))
            assert rep.bound_status in ("attained", "strict")

    @pytest.mark.parametrize(
        "kwargs",
        [dict(n=1, s=1, m_goal=3), dict(n=2, s=0, m_goal=3), dict(n=2, s=1, m_goal=1),
         dict(n=2, s=2, m_goal=3, targets=[-0.5, 0.4]), dict(n=2, s=2, m_goal=3, targets=[0.0])],
    )
    def test_bad_arguments(self, kwargs):
        with pytest.raises(ValueError):
            search(**kwargs)
